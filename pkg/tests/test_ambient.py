import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nkcp3 import ambient
from nkcp3.ambient import AmbientVector, SpherePoint, herm_inner, left_mul, norm, random_sphere_point, real_inner


def vec(*z):
    return np.array(z, dtype=np.complex128)


class TestLeftMul:
    def test_j_on_first_basis_vector(self):
        assert np.allclose(left_mul("j", vec(1, 0, 0, 0)), vec(0, 1, 0, 0))

    def test_k_on_first_basis_vector(self):
        assert np.allclose(left_mul("k", vec(1, 0, 0, 0)), vec(0, 1j, 0, 0))

    def test_j_squared_is_minus_one(self, rng):
        v = ambient.random_ambient(rng)
        assert np.allclose(left_mul("j", left_mul("j", v)), -v, atol=1e-14)

    def test_unknown_unit_rejected(self):
        with pytest.raises(ValueError):
            left_mul("q", vec(1, 0, 0, 0))

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_unit_relations(self, seed):
        v = ambient.random_ambient(np.random.default_rng(seed))
        assert np.allclose(left_mul("i", left_mul("j", v)), left_mul("k", v), atol=1e-14)
        assert np.allclose(left_mul("j", left_mul("k", v)), left_mul("i", v), atol=1e-14)
        assert np.allclose(left_mul("k", left_mul("i", v)), left_mul("j", v), atol=1e-14)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6), st.sampled_from("ijk"))
    def test_left_mul_orthogonal(self, seed, unit):
        r = np.random.default_rng(seed)
        u, v = ambient.random_ambient(r), ambient.random_ambient(r)
        assert abs(real_inner(left_mul(unit, u), left_mul(unit, v)) - real_inner(u, v)) < 1e-13


class TestInnerProducts:
    def test_real_imaginary_parts_orthogonal(self):
        assert real_inner(vec(1, 0, 0, 0), vec(1j, 0, 0, 0)) == 0.0

    def test_unit_norm_point(self):
        q = random_sphere_point(3)
        assert abs(real_inner(q.v, q.v) - 1.0) < 1e-12

    def test_herm_of_point_with_i_point(self):
        q = random_sphere_point(5)
        assert abs(herm_inner(q.v, 1j * q.v) + 1j) < 1e-12

    def test_herm_diagonal_real(self, rng):
        u = ambient.random_ambient(rng)
        h = herm_inner(u, u)
        assert abs(h.imag) < 1e-14 and abs(h.real - norm(u) ** 2) < 1e-12

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_real_part_is_real_inner(self, seed):
        r = np.random.default_rng(seed)
        u, v = ambient.random_ambient(r), ambient.random_ambient(r)
        assert abs(herm_inner(u, v).real - real_inner(u, v)) < 1e-13
        assert abs(herm_inner(u, v).imag - real_inner(u, 1j * v)) < 1e-13

    def test_herm_antilinear_second_slot(self, rng):
        u, v = ambient.random_ambient(rng), ambient.random_ambient(rng)
        assert abs(herm_inner(u, 1j * v) + 1j * herm_inner(u, v)) < 1e-13


class TestRandomSpherePoint:
    def test_deterministic(self):
        assert np.array_equal(random_sphere_point(11).v, random_sphere_point(11).v)

    def test_unit_norm(self):
        for seed in range(20):
            assert abs(norm(random_sphere_point(seed).v) - 1.0) < 1e-12

    def test_distinct_across_seeds(self):
        points = [random_sphere_point(s).v for s in range(100)]
        worst = 1.0
        for i in range(len(points) - 1):
            worst = min(worst, norm(points[i] - points[i + 1]))
        assert worst > 1e-3


class TestValidation:
    def test_sphere_point_rejects_non_unit(self):
        with pytest.raises(ValueError):
            SpherePoint(vec(1, 1, 0, 0))

    def test_ambient_vector_rejects_nan(self):
        with pytest.raises(ValueError):
            AmbientVector(vec(np.nan, 0, 0, 0))

    def test_shape_check(self):
        with pytest.raises(ValueError):
            ambient.as_cvec([1.0, 2.0])

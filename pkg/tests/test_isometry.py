import numpy as np
import pytest
import scipy.linalg

from nkcp3 import hopf, isometry
from nkcp3.ambient import SpherePoint
from nkcp3.isometry import (
    IsometryElement,
    J_MAT,
    UnitaryMatrix,
    induced_map,
    is_sp2,
    is_su4,
    isometry_residual,
    pushforward,
    random_sp2,
    random_sp2_algebra,
    random_su4_not_sp2,
    structure_transport,
)

from conftest import sphere_point


class TestMembership:
    def test_identity(self):
        assert is_su4(np.eye(4)) and is_sp2(np.eye(4))

    def test_exponential_of_algebra_element(self, rng):
        for _ in range(5):
            s = rng.uniform(0.1, 2.0)
            X = random_sp2_algebra(rng)
            assert is_sp2(scipy.linalg.expm(s * X))

    def test_diagonal_su4_not_sp2(self):
        phi = 0.7
        D = np.diag([np.exp(1j * phi)] * 3 + [np.exp(-3j * phi)])
        assert is_su4(D) and not is_sp2(D)

    def test_j_matrix_convention(self):
        # matrix form matches the ambient quaternion action
        from nkcp3.ambient import left_mul

        v = np.array([1.0 + 2j, -0.5j, 3.0, 1j])
        assert np.allclose(J_MAT @ np.conj(v), left_mul("j", v))

    def test_group_closure(self, rng):
        for _ in range(10):
            A = random_sp2(rng).A.m
            B = random_sp2(rng).A.m
            assert is_sp2(A @ B)
            assert is_sp2(A.conj().T)

    def test_unitary_validation(self):
        with pytest.raises(ValueError):
            UnitaryMatrix(np.diag([2.0, 1.0, 1.0, 1.0]).astype(complex))


class TestAction:
    def test_identity_element(self, rng):
        q = sphere_point(90)
        el = IsometryElement(UnitaryMatrix(np.eye(4, dtype=complex)), 0)
        assert np.allclose(induced_map(el, q).v, q.v)
        X = hopf.random_horizontal(q, rng)
        assert np.allclose(pushforward(el, X).vec, X.vec)

    def test_conjugation_preserves_horizontality(self, rng):
        q = sphere_point(91)
        el = IsometryElement(UnitaryMatrix(np.eye(4, dtype=complex)), 1)
        X = hopf.random_d12(q, rng)
        out = pushforward(el, X)
        assert np.allclose(out.base.v, np.conj(q.v))

    def test_well_defined_across_gauge(self, rng):
        q = sphere_point(92)
        el = IsometryElement(random_sp2(rng).A, 1)
        qg = SpherePoint(np.exp(1.3j) * q.v)
        assert hopf.same_point(induced_map(el, qg), induced_map(el, q))

    def test_composition_law(self, rng):
        e1 = random_sp2(rng)
        e2 = IsometryElement(random_sp2(rng).A, 1)
        q = sphere_point(93)
        comp = e1.compose(e2)
        assert comp.eps == 1
        p1 = induced_map(e1, induced_map(e2, q))
        assert hopf.same_point(p1, induced_map(comp, q))


class TestIsometries:
    def test_sp2_preserves_family(self, rng):
        el = random_sp2(rng)
        for a in (0.5, 2.0, 3.0):
            assert isometry_residual(el, a, 8, seed=11) < 1e-9

    def test_su4_only_fubini_study(self, rng):
        el = random_su4_not_sp2(rng)
        assert isometry_residual(el, 1.0, 8, seed=12) < 1e-9
        assert isometry_residual(el, 2.0, 8, seed=13) > 1e-2

    def test_structure_transport_identity_component(self, rng):
        el = random_sp2(rng)
        st = structure_transport(el, 2.0, 8, seed=14)
        assert st["P_residual"] < 1e-8
        assert st["J_sign"] == 1 and st["J_residual"] < 1e-8

    def test_structure_transport_conjugation_component(self, rng):
        el = IsometryElement(random_sp2(rng).A, 1)
        assert isometry_residual(el, 2.0, 8, seed=15) < 1e-9
        st = structure_transport(el, 2.0, 8, seed=16)
        assert st["P_residual"] < 1e-8
        assert st["J_sign"] == -1 and st["J_residual"] < 1e-8

    def test_identity_element_transport(self):
        el = IsometryElement(UnitaryMatrix(np.eye(4, dtype=complex)), 0)
        st = structure_transport(el, 2.0, 4, seed=17)
        assert st["P_residual"] < 1e-14 and st["J_residual"] < 1e-14

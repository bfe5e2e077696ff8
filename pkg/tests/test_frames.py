import numpy as np
import pytest

from nkcp3 import hopf, kernels
from nkcp3.ambient import SpherePoint, norm
from nkcp3.connection import ConnectionConfig, nabla1_curve
from nkcp3.frames import (
    contact_frame,
    default_contact_frame,
    frame_vector_field,
    normalized_frame,
    phi_apply,
    psi_apply,
    sigma,
)
from nkcp3.hopf import TangentRep, g1

from conftest import sphere_point

CFG = ConnectionConfig()
E1 = SpherePoint(np.array([1, 0, 0, 0], dtype=complex))


def base_frame():
    U = TangentRep(E1, np.array([0, 1, 0, 0], dtype=complex))
    chi = TangentRep(E1, np.array([0, 0, 1, 0], dtype=complex))
    return contact_frame(E1, U, chi)


def random_frame(seed):
    q = sphere_point(seed)
    r = np.random.default_rng(seed + 90001)
    U = hopf.random_d12(q, r)
    U = TangentRep(q, U.vec / norm(U.vec))
    chi = hopf.random_d24(q, r)
    chi = TangentRep(q, chi.vec / norm(chi.vec))
    return contact_frame(q, U, chi)


class TestConstruction:
    def test_base_configuration_vectors(self):
        fr = base_frame()
        assert np.allclose(fr.E[0].vec, [0, 1j, 0, 0])  # V = J1 U
        assert np.allclose(fr.E[3].vec, [0, 0, 1j, 0])  # E4 = J1 chi
        # E5, E6 are pinned by the covariant-derivative calibration below
        assert np.allclose(fr.E[4].vec, [0, 0, 0, -1j])
        assert np.allclose(fr.E[5].vec, [0, 0, 0, -1])

    def test_gram_matrix_identity(self):
        for seed in (21, 22, 23):
            fr = random_frame(seed)
            gram = np.array([[g1(x, y) for y in fr.E] for x in fr.E])
            assert np.abs(gram - np.eye(6)).max() < 1e-9

    def test_rejects_misplaced_seed_vectors(self):
        chi = TangentRep(E1, np.array([0, 0, 1, 0], dtype=complex))
        with pytest.raises(ValueError):
            contact_frame(E1, chi, chi)  # U seed is not rank-2

    def test_rejects_non_unit(self):
        U = TangentRep(E1, np.array([0, 2, 0, 0], dtype=complex))
        chi = TangentRep(E1, np.array([0, 0, 1, 0], dtype=complex))
        with pytest.raises(ValueError):
            contact_frame(E1, U, chi)

    def test_default_frame_deterministic(self):
        q = sphere_point(31)
        f1 = default_contact_frame(q)
        f2 = default_contact_frame(q)
        assert all(np.array_equal(a.vec, b.vec) for a, b in zip(f1.E, f2.E))


class TestNormalizedFrame:
    def test_a_equal_one_unchanged(self):
        fr = random_frame(33)
        fr1 = normalized_frame(fr, 1.0)
        assert all(np.allclose(a.vec, b.vec) for a, b in zip(fr.E, fr1.E))

    def test_scaling_at_two(self):
        fr = random_frame(34)
        fr2 = normalized_frame(fr, 2.0)
        for i in range(2, 6):
            assert np.allclose(fr2.E[i].vec, fr.E[i].vec / np.sqrt(2))
        for i in range(2):
            assert np.allclose(fr2.E[i].vec, fr.E[i].vec)

    @pytest.mark.parametrize("a", [0.5, 2.0, 3.0])
    def test_gram_under_ga(self, a):
        fr = normalized_frame(random_frame(35), a)
        gram = np.array([[hopf.metric(a, x, y) for y in fr.E] for x in fr.E])
        assert np.abs(gram - np.eye(6)).max() < 1e-9


class TestPhiPsiAlgebra:
    def test_phi_kills_rank2(self):
        fr = random_frame(41)
        assert norm(phi_apply(fr, fr.E[0]).vec) < 1e-12
        assert norm(phi_apply(fr, fr.E[1]).vec) < 1e-12

    def test_squares(self, rng):
        fr = random_frame(42)
        X = hopf.random_horizontal(fr.base, rng)
        uX, vX = g1(X, fr.E[1]), g1(X, fr.E[0])
        expected = -X.vec + uX * fr.E[1].vec + vX * fr.E[0].vec
        assert norm(phi_apply(fr, phi_apply(fr, X)).vec - expected) < 1e-12
        assert norm(psi_apply(fr, psi_apply(fr, X)).vec - expected) < 1e-12

    def test_skew_and_anticommutation(self, rng):
        fr = random_frame(43)
        X = hopf.random_horizontal(fr.base, rng)
        Y = hopf.random_horizontal(fr.base, rng)
        assert abs(g1(X, phi_apply(fr, Y)) + g1(phi_apply(fr, X), Y)) < 1e-12
        assert norm(phi_apply(fr, hopf.apply_J1(X)).vec + hopf.apply_J1(phi_apply(fr, X)).vec) < 1e-12

    def test_quaternion_relations_on_rank4(self, rng):
        fr = random_frame(44)
        chi = hopf.random_d24(fr.base, rng)
        assert norm(hopf.apply_J1(psi_apply(fr, chi)).vec - phi_apply(fr, chi).vec) < 1e-13
        assert norm(psi_apply(fr, phi_apply(fr, chi)).vec - hopf.apply_J1(chi).vec) < 1e-13
        assert norm(phi_apply(fr, hopf.apply_J1(chi)).vec - psi_apply(fr, chi).vec) < 1e-13


class TestCovariantCalibration:
    """The sign of Phi is the unique one fitting the derivative identities."""

    def test_structure_equations(self, rng):
        fr = random_frame(51)
        q = fr.base
        for _ in range(6):
            X = hopf.random_horizontal(q, rng)
            s = sigma(X, fr, CFG)
            dU = nabla1_curve(q.v, X.vec, frame_vector_field(fr, 1), CFG)
            dV = nabla1_curve(q.v, X.vec, frame_vector_field(fr, 0), CFG)
            assert norm(dU + psi_apply(fr, X).vec - s * fr.E[0].vec) < 1e-6
            assert norm(dV + phi_apply(fr, X).vec + s * fr.E[1].vec) < 1e-6

    def test_no_other_sign_candidate_fits(self, rng):
        """Among the four unit left-multiplication candidates +-L_u, +-L_iu for
        the pair (Psi, Phi), only (-L_u, -L_iu) satisfies the structure
        equations; this is the calibration evidence."""
        fr = random_frame(52)
        q = fr.base
        c = fr.u_coeff
        X = hopf.random_horizontal(q, rng)
        dU = nabla1_curve(q.v, X.vec, frame_vector_field(fr, 1), CFG)
        s = sigma(X, fr, CFG)
        x24 = hopf.split_distributions(X).d24.vec

        def L(coef):
            return coef * kernels.jmul(x24)

        residuals = {
            "minus_u": norm(dU + (-L(c)) - s * fr.E[0].vec),
            "plus_u": norm(dU + L(c) - s * fr.E[0].vec),
            "minus_iu": norm(dU + (-L(1j * c)) - s * fr.E[0].vec),
            "plus_iu": norm(dU + L(1j * c) - s * fr.E[0].vec),
        }
        assert residuals["minus_u"] < 1e-6
        assert min(residuals["plus_u"], residuals["minus_iu"], residuals["plus_iu"]) > 1e-2

    def test_sigma_linearity_and_reproducibility(self, rng):
        fr = random_frame(53)
        X = hopf.random_horizontal(fr.base, rng)
        s1 = sigma(X, fr, CFG)
        s2 = sigma(TangentRep(fr.base, 2.0 * X.vec), fr, CFG)
        assert abs(s2 - 2.0 * s1) < 1e-9
        assert sigma(X, fr, CFG) == s1

    def test_sigma_finite_at_base_configuration(self):
        fr = base_frame()
        val = sigma(fr.E[2], fr, CFG)
        assert np.isfinite(val)
        # the canonical transport of U has vanishing rotation one-form here
        assert abs(val) < 1e-8


class TestFrameDerivativeTable:
    def test_zeta_orthogonality_relations(self, rng):
        fr = random_frame(61)
        q = fr.base
        for i in range(6):
            zeta = nabla1_curve(q.v, fr.E[i].vec, frame_vector_field(fr, 2), CFG)
            zrep = TangentRep(q, zeta)
            assert abs(g1(zrep, fr.E[0]) - (-1.0 if i == 4 else 0.0)) < 1e-5
            assert abs(g1(zrep, fr.E[1]) - (-1.0 if i == 5 else 0.0)) < 1e-5
            assert abs(g1(zrep, fr.E[2])) < 1e-5

    def test_rank4_leg_derivatives(self, rng):
        fr = random_frame(62)
        q = fr.base
        sg = [sigma(fr.E[i], fr, CFG) for i in range(6)]
        for i in range(6):
            zeta = nabla1_curve(q.v, fr.E[i].vec, frame_vector_field(fr, 2), CFG)
            zrep = TangentRep(q, zeta)
            d4 = nabla1_curve(q.v, fr.E[i].vec, frame_vector_field(fr, 3), CFG)
            d5 = nabla1_curve(q.v, fr.E[i].vec, frame_vector_field(fr, 4), CFG)
            d6 = nabla1_curve(q.v, fr.E[i].vec, frame_vector_field(fr, 5), CFG)
            del3 = 1.0 if i == 2 else 0.0
            del4 = 1.0 if i == 3 else 0.0
            assert norm(d4 - 1j * zeta) < 1e-5
            expect5 = del3 * fr.E[0].vec - del4 * fr.E[1].vec - sg[i] * fr.E[5].vec + phi_apply(fr, zrep).vec
            expect6 = del3 * fr.E[1].vec + del4 * fr.E[0].vec + sg[i] * fr.E[4].vec + psi_apply(fr, zrep).vec
            assert norm(d5 - expect5) < 1e-5
            assert norm(d6 - expect6) < 1e-5

"""Isometries of the metric family through the unitary group of C^4.

SU(4) acts on S^7 and descends to CP^3; together with componentwise
conjugation this exhausts the Fubini-Study isometries.  For a != 1 the
surviving subgroup is the quaternionic unitary group: matrices commuting
with the antilinear map j(z1,z2,z3,z4) = (-conj z2, conj z1, -conj z4,
conj z3) (the same convention as the ambient quaternion algebra, which is
why membership is tested through j-commutation rather than a symplectic
form).  Elements carry a Z_2 flag: (A, eps) acts by p -> A eps(p) with
eps(p) = conj(p) on the nontrivial component.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import kernels
from .ambient import SpherePoint, norm, random_ambient
from .hopf import TangentRep, apply_J, apply_P, metric, random_horizontal

__all__ = [
    "UnitaryMatrix",
    "IsometryElement",
    "J_MAT",
    "is_su4",
    "is_sp2",
    "induced_map",
    "pushforward",
    "isometry_residual",
    "structure_transport",
    "random_sp2",
    "random_su4_not_sp2",
    "random_sp2_algebra",
]

# Matrix of the antilinear j-map: j(v) = J_MAT @ conj(v).
J_MAT = np.array(
    [
        [0, -1, 0, 0],
        [1, 0, 0, 0],
        [0, 0, 0, -1],
        [0, 0, 1, 0],
    ],
    dtype=np.complex128,
)

UNITARY_TOL = 1e-10
MEMBERSHIP_TOL = 1e-9


@dataclass(frozen=True)
class UnitaryMatrix:
    m: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.m, dtype=np.complex128)
        if m.shape != (4, 4):
            raise ValueError("expected a 4x4 complex matrix")
        object.__setattr__(self, "m", m)
        if np.abs(m.conj().T @ m - np.eye(4)).max() > UNITARY_TOL:
            raise ValueError("matrix is not unitary")


@dataclass(frozen=True)
class IsometryElement:
    """(A, eps): apply conjugation when eps = 1, then the matrix A."""

    A: UnitaryMatrix
    eps: int = 0

    def __post_init__(self):
        if self.eps not in (0, 1):
            raise ValueError("eps must be 0 or 1")

    def compose(self, other: "IsometryElement") -> "IsometryElement":
        """(A, eps) o (B, nu) = (A eps(B), eps + nu)."""
        B = other.A.m.conj() if self.eps == 1 else other.A.m
        return IsometryElement(UnitaryMatrix(self.A.m @ B), (self.eps + other.eps) % 2)


def is_su4(A) -> bool:
    m = A.m if isinstance(A, UnitaryMatrix) else np.asarray(A, dtype=np.complex128)
    unit = np.abs(m.conj().T @ m - np.eye(4)).max()
    det = abs(np.linalg.det(m) - 1.0)
    return bool(unit < MEMBERSHIP_TOL and det < MEMBERSHIP_TOL)


def sp2_commutation_residual(A) -> float:
    """Max-entry residual of A j = j A as real-linear maps (A J = J conj(A))."""
    m = A.m if isinstance(A, UnitaryMatrix) else np.asarray(A, dtype=np.complex128)
    return float(np.abs(m @ J_MAT - J_MAT @ m.conj()).max())


def is_sp2(A) -> bool:
    return is_su4(A) and sp2_commutation_residual(A) < MEMBERSHIP_TOL


def _act(el: IsometryElement, v: np.ndarray) -> np.ndarray:
    w = np.conj(v) if el.eps == 1 else v
    return el.A.m @ w


def induced_map(el: IsometryElement, q: SpherePoint) -> SpherePoint:
    return SpherePoint(_act(el, q.v))


def pushforward(el: IsometryElement, t: TangentRep) -> TangentRep:
    """Differential of the induced map on tangent lifts.

    The action maps fibres to fibres, so the image vector is horizontal up
    to rounding; a violation beyond tolerance marks a matrix that is not
    fibration-compatible and is reported as an error.
    """
    q2 = _act(el, t.q)
    v2 = _act(el, t.vec)
    residual = abs(kernels.herm(v2, q2))
    if residual > 1e-8 * max(1.0, norm(v2)):
        raise ValueError(f"pushforward broke horizontality (residual {residual:.3e})")
    return TangentRep(SpherePoint(q2), kernels.horizontalize(q2, v2))


def isometry_residual(el: IsometryElement, a, n_samples: int = 25, seed: int = 0) -> float:
    """Max deviation of g_a under pushforward over seeded sample pairs."""
    worst = 0.0
    for k in range(n_samples):
        rng = np.random.default_rng((seed, k))
        q = SpherePoint(_normalize(random_ambient(rng)))
        X = random_horizontal(q, rng)
        Y = random_horizontal(q, rng)
        before = metric(a, X, Y)
        after = metric(a, pushforward(el, X), pushforward(el, Y))
        worst = max(worst, abs(after - before))
    return worst


def structure_transport(el: IsometryElement, a, n_samples: int = 25, seed: int = 0) -> dict:
    """How the map transports P and J: residuals and the sign J -> sign * J."""
    p_res = 0.0
    j_plus = 0.0
    j_minus = 0.0
    for k in range(n_samples):
        rng = np.random.default_rng((seed, k, 7))
        q = SpherePoint(_normalize(random_ambient(rng)))
        X = random_horizontal(q, rng)
        push_px = pushforward(el, apply_P(X))
        p_push = apply_P(pushforward(el, X))
        p_res = max(p_res, norm(push_px.vec - p_push.vec))
        push_jx = pushforward(el, apply_J(X))
        j_push = apply_J(pushforward(el, X))
        j_plus = max(j_plus, norm(push_jx.vec - j_push.vec))
        j_minus = max(j_minus, norm(push_jx.vec + j_push.vec))
    sign = 1 if j_plus <= j_minus else -1
    return {
        "P_residual": p_res,
        "J_sign": sign,
        "J_residual": min(j_plus, j_minus),
    }


def _normalize(v: np.ndarray) -> np.ndarray:
    return v / norm(v)


def random_sp2_algebra(rng: np.random.Generator) -> np.ndarray:
    """Random element of the quaternionic unitary Lie algebra (skew-Hermitian,
    j-commuting, automatically traceless)."""
    x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    s = 0.5 * (x - x.conj().T)
    return 0.5 * (s - J_MAT @ s.conj() @ J_MAT)


def random_sp2(rng: np.random.Generator) -> IsometryElement:
    A = scipy.linalg.expm(random_sp2_algebra(rng))
    return IsometryElement(UnitaryMatrix(A), 0)


def random_su4_not_sp2(rng: np.random.Generator, min_defect: float = 0.1) -> IsometryElement:
    """Random special-unitary element kept away from the quaternionic subgroup."""
    while True:
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        s = 0.5 * (x - x.conj().T)
        s = s - (np.trace(s) / 4.0) * np.eye(4)
        A = scipy.linalg.expm(s)
        if sp2_commutation_residual(A) > min_defect:
            return IsometryElement(UnitaryMatrix(A), 0)

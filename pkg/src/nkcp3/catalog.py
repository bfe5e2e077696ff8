"""The five explicit Lagrangian immersions of nearly Kähler CP^3.

Each entry provides a 3-parameter chart into S^7 whose Hopf projection is
the submanifold, an analytic Jacobian, an admissible-sample generator that
stays clear of chart degeneracies, and the exact constants the submanifold
is expected to reproduce (angle, second-fundamental-form entries, induced
curvature, mean curvature).

Charts and their degeneracies:
  rp3     spherical coordinates on the real slice; poles sin t = 0, sin u = 0
  chiang  t-poles sin t = 0 and the sphere-chart poles of (u, v)
  s2xs1   sphere poles sin u = 0
  berger  section poles of the 3-sphere fibration, u near 0 or pi
  ehl     sin(alpha) = 0, where the generator matrix loses its beta-dependence
"""

import zlib
from dataclasses import dataclass, field
from typing import Callable, Dict

import numpy as np
import scipy.linalg
import scipy.optimize

from . import kernels
from .ambient import SpherePoint, norm

__all__ = [
    "Immersion",
    "CatalogEntry",
    "rp3",
    "chiang",
    "s2xs1",
    "berger",
    "ehl",
    "all_entries",
    "entry_by_name",
    "sample_admissible",
    "m_matrix",
    "m_matrix_partials",
    "exp_m",
    "exp_m_partials",
    "EHL_ANGLE",
]

RANK_TOL = 1e-6

SQ3 = np.sqrt(3.0)
SQ5 = np.sqrt(5.0)
SQ6 = np.sqrt(6.0)
SQ15 = np.sqrt(15.0)

EHL_ANGLE = float(np.arctan(7.0 / np.sqrt(76.0 + 15.0 * SQ15)))


@dataclass(frozen=True)
class Immersion:
    """Differentiable chart from a 3-parameter box into S^7."""

    name: str
    chart: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray]
    domain: tuple
    rank_tol: float = RANK_TOL

    def point(self, u) -> SpherePoint:
        return SpherePoint(self.chart(np.asarray(u, dtype=float)))

    def horizontal_jacobian(self, u) -> np.ndarray:
        """Chart Jacobian columns horizontalized at the chart point, (4, 3)."""
        u = np.asarray(u, dtype=float)
        q = self.chart(u)
        jac = self.jacobian(u)
        cols = [kernels.horizontalize(q, jac[:, i]) for i in range(jac.shape[1])]
        return np.stack(cols, axis=1)

    def min_singular_value(self, u) -> float:
        hj = self.horizontal_jacobian(u)
        real = np.concatenate([hj.real, hj.imag], axis=0)
        return float(np.linalg.svd(real, compute_uv=False)[-1])


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    immersion: Immersion
    expected: Dict[str, object]
    extras: Dict[str, Callable] = field(default_factory=dict)


def sample_admissible(entry, n: int, seed: int = 0):
    """Deterministic admissible parameter samples (rank-checked) for an entry."""
    imm = entry.immersion if isinstance(entry, CatalogEntry) else entry
    rng = np.random.default_rng([seed, zlib.crc32(imm.name.encode())])
    lo = np.array([d[0] for d in imm.domain])
    hi = np.array([d[1] for d in imm.domain])
    out = []
    attempts = 0
    while len(out) < n:
        attempts += 1
        if attempts > 100 * n:
            raise RuntimeError(f"could not draw {n} admissible samples for {imm.name}")
        u = lo + (hi - lo) * rng.random(3)
        if imm.min_singular_value(u) > imm.rank_tol:
            out.append(u)
    return out


# -- real projective space ----------------------------------------------------


def _rp3_chart(u):
    t, a, b = u
    st, ct = np.sin(t), np.cos(t)
    sa, ca = np.sin(a), np.cos(a)
    return np.array([ct, st * ca, st * sa * np.cos(b), st * sa * np.sin(b)], dtype=np.complex128)


def _rp3_jacobian(u):
    t, a, b = u
    st, ct = np.sin(t), np.cos(t)
    sa, ca = np.sin(a), np.cos(a)
    sb, cb = np.sin(b), np.cos(b)
    d_t = np.array([-st, ct * ca, ct * sa * cb, ct * sa * sb])
    d_a = np.array([0.0, -st * sa, st * ca * cb, st * ca * sb])
    d_b = np.array([0.0, 0.0, -st * sa * sb, st * sa * cb])
    return np.stack([d_t, d_a, d_b], axis=1).astype(np.complex128)


def rp3() -> CatalogEntry:
    """Totally geodesic real slice: spherical coordinates on the real 3-sphere."""
    imm = Immersion(
        name="rp3",
        chart=_rp3_chart,
        jacobian=_rp3_jacobian,
        domain=((0.35, np.pi - 0.35), (0.35, np.pi - 0.35), (0.0, 2.0 * np.pi)),
    )
    return CatalogEntry("rp3", imm, expected={"theta": 0.0, "totally_geodesic": True})


# -- the horizontal-lifted Veronese orbit --------------------------------------

# Chart components are sums coeff(alpha) * trig(t) over the basis
#   T1 = sin^2 t cos t, T2 = sin^3 t, T3 = sin t cos^2 t, T4 = cos t, T5 = cos 3t.


def _chiang_trig(t):
    s, c = np.sin(t), np.cos(t)
    T = np.array([s * s * c, s**3, s * c * c, c, np.cos(3 * t)])
    dT = np.array([2 * s * c * c - s**3, 3 * s * s * c, c**3 - 2 * s * s * c, -s, -3 * np.sin(3 * t)])
    return T, dT


def _chiang_coeffs(al):
    a1, a2, a3 = al
    # rows: (component, T-index) -> coefficient and alpha-gradient
    re = {
        (0, 0): (2 * a1 * a2, (2 * a2, 2 * a1, 0.0)),
        (0, 1): (a3 * (2 * a2**2 + a3**2 - 1), (0.0, 4 * a2 * a3, 2 * a2**2 + 3 * a3**2 - 1)),
        (1, 0): (2 * a2 * a3, (0.0, 2 * a3, 2 * a2)),
        (1, 1): (-a1 * a3**2, (-(a3**2), 0.0, -2 * a1 * a3)),
        (1, 2): (a1, (1.0, 0.0, 0.0)),
        (2, 0): (-3 * a3**2 / SQ3, (0.0, 0.0, -6 * a3 / SQ3)),
        (2, 3): (0.75 / SQ3, (0.0, 0.0, 0.0)),
        (2, 4): (0.25 / SQ3, (0.0, 0.0, 0.0)),
        (3, 1): ((3 * a2 - 4 * a2**3 - 3 * a2 * a3**2) / SQ3, (0.0, (3 - 12 * a2**2 - 3 * a3**2) / SQ3, -6 * a2 * a3 / SQ3)),
    }
    im = {
        (0, 0): (2 * a1 * a3, (2 * a3, 0.0, 2 * a1)),
        (0, 1): (a2 * a3**2, (0.0, a3**2, 2 * a2 * a3)),
        (0, 2): (-a2, (0.0, -1.0, 0.0)),
        (1, 0): (2 * a2**2 + a3**2 - 1, (0.0, 4 * a2, 2 * a3)),
        (1, 1): (-2 * a1 * a2 * a3, (-2 * a2 * a3, -2 * a1 * a3, -2 * a1 * a2)),
        (2, 1): (-a1 * (4 * a2**2 + a3**2 - 1) / SQ3, ((1 - 4 * a2**2 - a3**2) / SQ3, -8 * a1 * a2 / SQ3, -2 * a1 * a3 / SQ3)),
        (3, 1): (a3**3 / SQ3, (0.0, 0.0, 3 * a3**2 / SQ3)),
        (3, 2): (-3 * a3 / SQ3, (0.0, 0.0, -3 / SQ3)),
    }
    return re, im


def _chiang_ta(w):
    """Chart and partials in the raw parameters (t, a1, a2, a3)."""
    t, al = w[0], w[1:]
    T, dT = _chiang_trig(t)
    re, im = _chiang_coeffs(al)
    F = np.zeros(4, dtype=np.complex128)
    d_t = np.zeros(4, dtype=np.complex128)
    d_al = np.zeros((4, 3), dtype=np.complex128)
    for table, unit in ((re, SQ3), (im, 1j * SQ3)):
        for (m, k), (coef, grad) in table.items():
            F[m] += unit * coef * T[k]
            d_t[m] += unit * coef * dT[k]
            for j in range(3):
                d_al[m, j] += unit * grad[j] * T[k]
    return F, d_t, d_al


def _sphere2(u, v):
    al = np.array([np.sin(u) * np.cos(v), np.sin(u) * np.sin(v), np.cos(u)])
    d_u = np.array([np.cos(u) * np.cos(v), np.cos(u) * np.sin(v), -np.sin(u)])
    d_v = np.array([-np.sin(u) * np.sin(v), np.sin(u) * np.cos(v), 0.0])
    return al, d_u, d_v


def _chiang_chart(p):
    t, u, v = p
    al, _, _ = _sphere2(u, v)
    F, _, _ = _chiang_ta(np.array([t, *al]))
    return F


def _chiang_jacobian(p):
    t, u, v = p
    al, d_u, d_v = _sphere2(u, v)
    _, d_t, d_al = _chiang_ta(np.array([t, *al]))
    return np.stack([d_t, d_al @ d_u, d_al @ d_v], axis=1)


def chiang() -> CatalogEntry:
    """Horizontal lift of the degree-three rational curve; projects onto the
    Lagrangian that lies over the Veronese surface."""
    imm = Immersion(
        name="chiang",
        chart=_chiang_chart,
        jacobian=_chiang_jacobian,
        domain=((0.35, np.pi - 0.35), (0.35, np.pi - 0.35), (0.0, 2.0 * np.pi)),
    )
    return CatalogEntry("chiang", imm, expected={"theta": 0.0, "B_zero": True})


# -- the product of a two-sphere and a circle ----------------------------------


# Component order follows the package's quaternion-slot convention
# (z1, z2 | z3, z4); the construction's base point and circle direction are
# only Lagrangian with the last two coordinates in this order.
def _s2xs1_pieces(u, v):
    ev = np.exp(1j * v)
    p0 = np.array([(3 + SQ3) * np.cos(u), SQ6 * 1j * ev * np.sin(u), (3 + SQ3) * ev * np.sin(u), SQ6 * 1j * np.cos(u)]) / 6.0
    f = np.array([(3 - SQ3) * np.cos(u), SQ6 * 1j * ev * np.sin(u), -(3 - SQ3) * ev * np.sin(u), -SQ6 * 1j * np.cos(u)]) / 6.0
    p0_u = np.array([-(3 + SQ3) * np.sin(u), SQ6 * 1j * ev * np.cos(u), (3 + SQ3) * ev * np.cos(u), -SQ6 * 1j * np.sin(u)]) / 6.0
    f_u = np.array([-(3 - SQ3) * np.sin(u), SQ6 * 1j * ev * np.cos(u), -(3 - SQ3) * ev * np.cos(u), SQ6 * 1j * np.sin(u)]) / 6.0
    p0_v = np.array([0.0, -SQ6 * ev * np.sin(u), (3 + SQ3) * 1j * ev * np.sin(u), 0.0]) / 6.0
    f_v = np.array([0.0, -SQ6 * ev * np.sin(u), -(3 - SQ3) * 1j * ev * np.sin(u), 0.0]) / 6.0
    return p0, f, p0_u, f_u, p0_v, f_v


def _s2xs1_chart(p):
    t, u, v = p
    p0, f, *_ = _s2xs1_pieces(u, v)
    return p0 + np.exp(1j * t) * f


def _s2xs1_jacobian(p):
    t, u, v = p
    p0, f, p0_u, f_u, p0_v, f_v = _s2xs1_pieces(u, v)
    et = np.exp(1j * t)
    return np.stack([1j * et * f, p0_u + et * f_u, p0_v + et * f_v], axis=1)


def s2xs1() -> CatalogEntry:
    imm = Immersion(
        name="s2xs1",
        chart=_s2xs1_chart,
        jacobian=_s2xs1_jacobian,
        domain=((0.0, 2.0 * np.pi), (0.35, np.pi - 0.35), (0.0, 2.0 * np.pi)),
    )
    return CatalogEntry(
        "s2xs1",
        imm,
        expected={"theta": np.pi / 4.0, "h111": 1.0},
        extras={"pieces": _s2xs1_pieces},
    )


# -- the Berger sphere ----------------------------------------------------------

_BERGER_SCALE = np.sqrt(2.0 / 3.0)


def _berger_zw(u, v):
    return np.cos(u / 2.0), np.sin(u / 2.0) * np.exp(1j * v)


def _berger_chart(p):
    t, u, v = p
    z, w = _berger_zw(u, v)
    return _BERGER_SCALE * np.array([z, w, np.exp(1j * t) / np.sqrt(2.0), 0.0])


def _berger_jacobian(p):
    t, u, v = p
    z, w = _berger_zw(u, v)
    d_t = _BERGER_SCALE * np.array([0.0, 0.0, 1j * np.exp(1j * t) / np.sqrt(2.0), 0.0])
    d_u = _BERGER_SCALE * np.array([-np.sin(u / 2.0) / 2.0, np.cos(u / 2.0) * np.exp(1j * v) / 2.0, 0.0, 0.0])
    d_v = _BERGER_SCALE * np.array([0.0, 1j * w, 0.0, 0.0])
    return np.stack([d_t, d_u, d_v], axis=1)


def _berger_frame_fields(p):
    """The analytic fields E1 = d_t F - (1/3) i F, E2 = dF(X2), E3 = dF(X3)."""
    t, u, v = p
    z, w = _berger_zw(u, v)
    F = _berger_chart(p)
    d_t = _BERGER_SCALE * np.array([0.0, 0.0, 1j * np.exp(1j * t) / np.sqrt(2.0), 0.0])
    e1 = d_t - (1j / 3.0) * F
    e2 = _BERGER_SCALE * np.array([-np.conj(w), np.conj(z), 0.0, 0.0])
    e3 = _BERGER_SCALE * np.array([-1j * np.conj(w), 1j * np.conj(z), 0.0, 0.0])
    return e1, e2, e3


def berger() -> CatalogEntry:
    imm = Immersion(
        name="berger",
        chart=_berger_chart,
        jacobian=_berger_jacobian,
        domain=((0.0, 2.0 * np.pi), (0.5, np.pi - 0.5), (0.0, 2.0 * np.pi)),
    )
    return CatalogEntry(
        "berger",
        imm,
        expected={
            "theta": np.pi / 4.0,
            "h111": -0.5,
            "g2_squared_lengths": (4.0 / 9.0, 8.0 / 9.0, 8.0 / 9.0),
        },
        extras={"frame_fields": _berger_frame_fields},
    )


# -- the exceptional homogeneous Lagrangian -------------------------------------


def _fbeta(beta):
    return 1.0 + np.exp(2j * beta) * SQ15


def m_matrix(alpha: float, beta: float) -> np.ndarray:
    """Generator matrix of the exceptional orbit; skew-Hermitian, j-commuting,
    eigenvalues +-i and +-3i."""
    ca, sa = np.cos(alpha), np.sin(alpha)
    eb, ebm = np.exp(1j * beta), np.exp(-1j * beta)
    fp, fm = _fbeta(beta), _fbeta(-beta)
    m = np.array(
        [
            [-7j * ca, ebm * fp * sa, -(5 + fm) * 1j * eb * sa / SQ3, 2 * SQ5 * ca],
            [-eb * fm * sa, 7j * ca, -2 * SQ5 * ca, (fp + 5) * 1j * ebm * sa / SQ3],
            [-1j * ebm * (5 + fp) * sa / SQ3, 2 * SQ5 * ca, -1j * ca, eb * (fm - 6) * sa],
            [-2 * SQ5 * ca, 1j * eb * (fm + 5) * sa / SQ3, -ebm * (fp - 6) * sa, 1j * ca],
        ],
        dtype=np.complex128,
    )
    return m / 3.0


def m_matrix_partials(alpha: float, beta: float):
    """(M, dM/dalpha, dM/dbeta), all analytic."""
    ca, sa = np.cos(alpha), np.sin(alpha)
    eb, ebm = np.exp(1j * beta), np.exp(-1j * beta)
    fp, fm = _fbeta(beta), _fbeta(-beta)
    dfp = 2j * SQ15 * np.exp(2j * beta)
    dfm = -2j * SQ15 * np.exp(-2j * beta)

    def build(ca_, sa_):
        return np.array(
            [
                [-7j * ca_, ebm * fp * sa_, -(5 + fm) * 1j * eb * sa_ / SQ3, 2 * SQ5 * ca_],
                [-eb * fm * sa_, 7j * ca_, -2 * SQ5 * ca_, (fp + 5) * 1j * ebm * sa_ / SQ3],
                [-1j * ebm * (5 + fp) * sa_ / SQ3, 2 * SQ5 * ca_, -1j * ca_, eb * (fm - 6) * sa_],
                [-2 * SQ5 * ca_, 1j * eb * (fm + 5) * sa_ / SQ3, -ebm * (fp - 6) * sa_, 1j * ca_],
            ],
            dtype=np.complex128,
        ) / 3.0

    m = build(ca, sa)
    # every entry is linear in cos(alpha) or sin(alpha)
    d_alpha = build(-sa, ca)
    d_beta = np.array(
        [
            [0.0, ebm * (dfp - 1j * fp) * sa, -1j * eb * (dfm + 1j * (5 + fm)) * sa / SQ3, 0.0],
            [-eb * (dfm + 1j * fm) * sa, 0.0, 0.0, 1j * ebm * (dfp - 1j * (fp + 5)) * sa / SQ3],
            [-1j * ebm * (dfp - 1j * (5 + fp)) * sa / SQ3, 0.0, 0.0, eb * (dfm + 1j * (fm - 6)) * sa],
            [0.0, 1j * eb * (dfm + 1j * (fm + 5)) * sa / SQ3, -ebm * (dfp - 1j * (fp - 6)) * sa, 0.0],
        ],
        dtype=np.complex128,
    ) / 3.0
    return m, d_alpha, d_beta


def exp_m(t: float, alpha: float, beta: float) -> np.ndarray:
    """Closed-form exponential exp(t M); valid because the spectrum is {±i, ±3i}."""
    m = m_matrix(alpha, beta)
    return _exp_from_m(t, m)


def _exp_from_m(t, m):
    m2 = m @ m
    eye = np.eye(4)
    st, ct = np.sin(t), np.cos(t)
    s3, c3 = np.sin(3 * t), np.cos(3 * t)
    return ((m2 + 9 * eye) @ (st * m + ct * eye) - (m2 + eye) / 3.0 @ (s3 * m + 3 * c3 * eye)) / 8.0


def exp_m_partials(t, alpha, beta):
    """(exp, d/dt, d/dalpha, d/dbeta) of the closed-form exponential."""
    m, m_a, m_b = m_matrix_partials(alpha, beta)
    m2 = m @ m
    eye = np.eye(4)
    st, ct = np.sin(t), np.cos(t)
    s3, c3 = np.sin(3 * t), np.cos(3 * t)
    e = ((m2 + 9 * eye) @ (st * m + ct * eye) - (m2 + eye) / 3.0 @ (s3 * m + 3 * c3 * eye)) / 8.0
    d_t = m @ e

    def d_param(dm):
        dm2 = dm @ m + m @ dm
        return (
            dm2 @ (st * m + ct * eye)
            + (m2 + 9 * eye) @ (st * dm)
            - dm2 / 3.0 @ (s3 * m + 3 * c3 * eye)
            - (m2 + eye) / 3.0 @ (s3 * dm)
        ) / 8.0

    return e, d_t, d_param(m_a), d_param(m_b)


_EHL_P0 = np.array([1.0, 0.0, 0.0, 0.0], dtype=np.complex128)


def _ehl_chart(p):
    t, alpha, beta = p
    return exp_m(t, alpha, beta) @ _EHL_P0


def _ehl_jacobian(p):
    t, alpha, beta = p
    _, d_t, d_a, d_b = exp_m_partials(t, alpha, beta)
    return np.stack([d_t @ _EHL_P0, d_a @ _EHL_P0, d_b @ _EHL_P0], axis=1)


def ehl() -> CatalogEntry:
    """The exceptional homogeneous orbit, with its catalog of exact constants."""
    imm = Immersion(
        name="ehl",
        chart=_ehl_chart,
        jacobian=_ehl_jacobian,
        domain=((0.0, 2.0 * np.pi), (0.45, np.pi - 0.45), (0.0, 2.0 * np.pi)),
    )
    expected = {
        "theta": EHL_ANGLE,
        "sec_12": 0.09 * (6.0 * SQ15 - 11.0),
        "sec_13": -0.09 * (6.0 * SQ15 + 11.0),
        "sec_23": 2.07,
        "ric_diag": (-99.0 / 50.0, 27.0 / 50.0 * (SQ15 + 2.0), -27.0 / 50.0 * (SQ15 - 2.0)),
        "H_fs": (224.0 / 61.0) * np.sqrt(2.0 / 5.0),
    }
    return CatalogEntry("ehl", imm, expected=expected, extras={"exp_m": exp_m, "m_matrix": m_matrix})


def orbit_recovery_residual(g: np.ndarray, target: np.ndarray, seed: int = 0) -> float:
    """How well g . target is matched by some chart point of the exceptional orbit.

    Minimizes the projective misalignment 1 - |<F(u), g target>| over chart
    parameters, multi-start from a coarse deterministic grid.
    """
    y = g @ target
    y = y / norm(y)

    def cost(u):
        f = _ehl_chart(u)
        return 1.0 - abs(kernels.herm(f, y))

    best = None
    grid = np.linspace(0.3, 2.0 * np.pi - 0.3, 6)
    for t0 in grid:
        for a0 in np.linspace(0.5, np.pi - 0.5, 4):
            for b0 in grid[::2]:
                u0 = np.array([t0, a0, b0])
                if cost(u0) < (best[0] if best else np.inf):
                    best = (cost(u0), u0)
    res = scipy.optimize.minimize(cost, best[1], method="Nelder-Mead",
                                  options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000})
    return float(res.fun)


def all_entries():
    return [rp3(), chiang(), s2xs1(), berger(), ehl()]


def entry_by_name(name: str) -> CatalogEntry:
    for e in all_entries():
        if e.name == name:
            return e
    raise KeyError(f"unknown catalog entry {name!r}")

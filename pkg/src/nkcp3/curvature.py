"""Curvature of the metric family: closed forms and finite-difference oracles.

Sign conventions: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z -
nabla_[X,Y] Z and sec(X,Y) = g(R(X,Y)Y, X), fixed so that the a = 1 case
reproduces the Fubini-Study tensor

    R(X,Y)Z = (X ^ Y)Z + (J1 X ^ J1 Y)Z + 2 g(X, J1 Y) J1 Z

verbatim (holomorphic sectional curvature 4).  The numeric oracle is a
direct nested derivative of the g_a connection on commuting coordinate
fields of a normalized linear chart; a second, independent oracle mode
recombines the Fubini-Study tensor with covariant derivatives and squares
of the difference tensor.
"""

from dataclasses import dataclass
from typing import List

import numpy as np

from . import kernels
from .ambient import norm
from .connection import (
    DEFAULT_CFG,
    ConnectionConfig,
    D_a,
    FrameChart,
    _aligned_vec,
    nabla1_curve,
)
from .hopf import MetricParam, TangentRep, align_to

__all__ = [
    "wedge_a",
    "riemann_closed",
    "riemann_numeric",
    "FDResult",
    "ricci",
    "scalar",
    "ricci_eigenvalues",
    "sectional",
    "sectional_from_tensor",
]


def _param(a) -> float:
    return a.a if isinstance(a, MetricParam) else float(a)


def _wedge(a: float, q, x, y, z) -> np.ndarray:
    return kernels.metric(a, q, y, z) * x - kernels.metric(a, q, x, z) * y


def wedge_a(a, X: TangentRep, Y: TangentRep, Z: TangentRep) -> TangentRep:
    """(X wedge_a Y) Z = g_a(Y,Z) X - g_a(X,Z) Y at the common base."""
    a = _param(a)
    Y = align_to(Y, X.base)
    Z = align_to(Z, X.base)
    return TangentRep(X.base, _wedge(a, X.q, X.vec, Y.vec, Z.vec))


def riemann_closed(a, X: TangentRep, Y: TangentRep, Z: TangentRep) -> TangentRep:
    """Closed-form Riemann tensor of g_a in terms of J1, J, P and g_a-wedges."""
    a = _param(a)
    Y = align_to(Y, X.base)
    Z = align_to(Z, X.base)
    q = X.q
    x, y, z = X.vec, Y.vec, Z.vec
    jx, jy, jz = (kernels.apply_j(q, v) for v in (x, y, z))

    out = (a - 1.0) * (a + 2.0) / a**2 * _wedge(a, q, x, y, z)
    out = out + (1.0 / a) * (
        _wedge(a, q, x, y, z)
        + _wedge(a, q, 1j * x, 1j * y, z)
        + 2.0 * kernels.metric(a, q, x, 1j * y) * (1j * z)
    )
    out = out + (1.0 - a) / a**2 * (
        _wedge(a, q, x, y, z) + _wedge(a, q, jx, jy, z) + 2.0 * kernels.metric(a, q, x, jy) * jz
    )
    pz = kernels.apply_p(q, z)
    w_pz = _wedge(a, q, x, y, pz)
    w_z = _wedge(a, q, x, y, z)
    out = out + (1.0 - a) / a * (
        w_pz + kernels.apply_p(q, w_z) - (a + 2.0) / a * kernels.apply_p(q, w_pz)
    )
    return TangentRep(X.base, out)


@dataclass(frozen=True)
class FDResult:
    """Finite-difference curvature value with a stability diagnostic."""

    value: TangentRep
    richardson_disagreement: float
    unstable: bool


def _hor_const(y0):
    def field(q):
        return kernels.horizontalize(q, y0)

    return field


def riemann_numeric(
    a,
    X: TangentRep,
    Y: TangentRep,
    Z: TangentRep,
    cfg: ConnectionConfig = DEFAULT_CFG,
    mode: str = "direct",
    instability_tol: float = 1e-4,
) -> FDResult:
    """Curvature by finite differences.

    mode="direct": nested covariant derivatives of the g_a connection on a
    two-parameter chart whose coordinate fields extend X and Y (their bracket
    vanishes).  mode="difference-tensor": the independent decomposition into
    the Fubini-Study tensor plus first derivatives and squares of D_a.
    """
    a = _param(a)
    Y = align_to(Y, X.base)
    Z = align_to(Z, X.base)
    if mode == "difference-tensor":
        value = _riemann_decomposed(a, X, Y, Z, cfg)
        return FDResult(value, 0.0, False)
    if mode != "direct":
        raise ValueError(f"unknown curvature mode {mode!r}")

    q0 = X.q
    fc = FrameChart(q0, [X.vec, Y.vec])
    z0 = Z.vec

    def ztilde(u):
        return kernels.horizontalize(fc.point(u), z0)

    def inner(i, u, h):
        """nabla^a of the Z-extension along coordinate direction i at chart point u."""
        qu = fc.point(u)
        e = np.zeros(2)
        e[i] = 1.0

        def val(t):
            up = u + t * e
            return _aligned_vec(qu, fc.point(up), ztilde(up))

        d = (val(h) - val(-h)) / (2.0 * h)
        d = kernels.horizontalize(qu, d)
        from .ambient import SpherePoint

        base = SpherePoint(qu)
        dvec = D_a(a, TangentRep(base, fc.coord_vec(i, u)), TangentRep(base, ztilde(u)), cfg).vec
        return d + dvec

    def outer(j, i, h):
        """nabla^a_{dj} of the field u -> inner(i, u) evaluated at 0."""
        e = np.zeros(2)
        e[j] = 1.0

        def val(t):
            u = t * e
            return _aligned_vec(q0, fc.point(u), inner(i, u, h))

        d = (val(h) - val(-h)) / (2.0 * h)
        d = kernels.horizontalize(q0, d)
        w0 = inner(i, np.zeros(2), h)
        dvec = D_a(a, TangentRep(X.base, fc.coord_vec(j, np.zeros(2))), TangentRep(X.base, w0), cfg).vec
        return d + dvec

    def full(h):
        return outer(0, 1, h) - outer(1, 0, h)

    h = cfg.fd_step
    v1 = full(h)
    if cfg.richardson:
        v2 = full(h / 2.0)
        value = (4.0 * v2 - v1) / 3.0
        disagreement = norm(v2 - v1)
    else:
        value = v1
        disagreement = 0.0
    unstable = disagreement > 10.0 * instability_tol
    return FDResult(TangentRep(X.base, value), disagreement, unstable)


def _riemann_decomposed(a, X, Y, Z, cfg) -> TangentRep:
    """Fubini-Study tensor plus difference-tensor derivative and square terms."""
    q0 = X.q
    base = X.base
    r_fs = riemann_closed(1.0, X, Y, Z).vec

    def nabla_a_D(xrep: TangentRep, yrep: TangentRep, zrep: TangentRep) -> np.ndarray:
        """(nabla^a_X D_a)(Y, Z) with horizontally-constant extensions of Y, Z."""
        y0, z0 = yrep.vec, zrep.vec

        def dfield(q):
            from .ambient import SpherePoint

            b = SpherePoint(q)
            yq = TangentRep(b, kernels.horizontalize(q, y0))
            zq = TangentRep(b, kernels.horizontalize(q, z0))
            return D_a(a, yq, zq, cfg).vec

        d1 = nabla1_curve(q0, xrep.vec, dfield, cfg)
        dyz = D_a(a, yrep, zrep, cfg).vec
        first = d1 + D_a(a, xrep, TangentRep(base, dyz), cfg).vec
        # the extensions feel the connection through D_a(X, .) only
        dxy = D_a(a, xrep, yrep, cfg).vec
        dxz = D_a(a, xrep, zrep, cfg).vec
        second = D_a(a, TangentRep(base, dxy), zrep, cfg).vec
        third = D_a(a, yrep, TangentRep(base, dxz), cfg).vec
        return first - second - third

    term_d = nabla_a_D(X, Y, Z) - nabla_a_D(Y, X, Z)
    dyz = D_a(a, Y, Z, cfg)
    dxz = D_a(a, X, Z, cfg)
    term_q = D_a(a, X, dyz, cfg).vec - D_a(a, Y, dxz, cfg).vec
    return TangentRep(base, r_fs + term_d - term_q)


def ricci(a, X: TangentRep, Y: TangentRep) -> float:
    """Closed-form Ricci tensor of g_a."""
    a = _param(a)
    Y = align_to(Y, X.base)
    x12, x24 = kernels.split(X.q, X.vec)
    lam12 = 4.0 * (1.0 + 1.0 / a**2)
    lam24 = 4.0 * (3.0 * a - 1.0) / a**2
    return lam12 * kernels.metric(a, X.q, x12, Y.vec) + lam24 * kernels.metric(a, X.q, x24, Y.vec)


def ricci_eigenvalues(a):
    """Ricci eigenvalues on the rank-2 and rank-4 distributions."""
    a = _param(a)
    return 4.0 * (1.0 + 1.0 / a**2), 4.0 * (3.0 * a - 1.0) / a**2


def scalar(a) -> float:
    """Scalar curvature 8 (a^2 + 6a - 1) / a^2."""
    a = _param(a)
    return 8.0 * (a**2 + 6.0 * a - 1.0) / a**2


def sectional(a, X: TangentRep, Y: TangentRep) -> float:
    """Closed-form sectional curvature of the plane spanned by g_a-orthonormal X, Y."""
    a = _param(a)
    Y = align_to(Y, X.base)
    q = X.q
    x, y = X.vec, Y.vec
    gxx = kernels.metric(a, q, x, x)
    gyy = kernels.metric(a, q, y, y)
    gxy = kernels.metric(a, q, x, y)
    gram_residual = max(abs(gxx - 1.0), abs(gyy - 1.0), abs(gxy))
    if gram_residual > 1e-8:
        raise ValueError(f"inputs are not g_a-orthonormal (Gram residual {gram_residual:.3e})")

    g_xj1y = kernels.metric(a, q, x, 1j * y)
    g_xjy = kernels.metric(a, q, x, kernels.apply_j(q, y))
    py = kernels.apply_p(q, y)
    px = kernels.apply_p(q, x)
    g_ypy = kernels.metric(a, q, y, py)
    g_xpx = kernels.metric(a, q, px, x)
    g_xpy = kernels.metric(a, q, x, py)
    out = (a**2 + a - 1.0) / a**2
    out += 3.0 / a * g_xj1y**2
    out += 3.0 * (1.0 - a) / a**2 * g_xjy**2
    out += (1.0 - a) / a * (g_ypy + g_xpx - (a + 2.0) / a * (g_ypy * g_xpx - g_xpy**2))
    return out


def sectional_from_tensor(a, X: TangentRep, Y: TangentRep) -> float:
    """g_a(R(X,Y)Y, X) from the closed-form tensor; consistency oracle for sectional()."""
    a = _param(a)
    Y = align_to(Y, X.base)
    r = riemann_closed(a, X, Y, Y)
    return kernels.metric(a, X.q, r.vec, X.vec)


def gram_schmidt_ga(a, q, vectors: List[np.ndarray]) -> List[np.ndarray]:
    """g_a-orthonormalize raw horizontal vectors at the lift q."""
    a = _param(a)
    out: List[np.ndarray] = []
    for v in vectors:
        w = v.copy()
        for b in out:
            w = w - kernels.metric(a, q, w, b) * b
        n = np.sqrt(kernels.metric(a, q, w, w))
        if n < 1e-12:
            raise ValueError("vectors are linearly dependent")
        out.append(w / n)
    return out

"""Levi-Civita connections of the metric family and the tensor G.

The primitive is the Fubini-Study connection computed through the
Riemannian submersion: differentiate the lifted field flatly in R^8 along
a curve whose lift is phase-aligned (fibre-horizontal at the footpoint),
project tangent to S^7, then remove the fibre direction.  The connection
of g_a is never solved for independently: it is the primitive plus the
closed-form difference tensor

    D_a(X, Y) = (a-1)/a * P24 G(J1 X, Y),

where G is the a-independent skew part of the covariant derivative of the
almost complex structure J.  A Koszul-formula oracle (pure scalar finite
differences on a coordinate chart) is provided so the closed form can be
cross-checked against something that shares none of its code path.
"""

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from . import kernels
from .ambient import SpherePoint, norm
from .hopf import MetricParam, TangentRep, align_to

__all__ = [
    "ConnectionConfig",
    "VectorFieldAlongMap",
    "FrameChart",
    "nabla1_curve",
    "nabla1",
    "nabla_a",
    "nabla1_J",
    "G_tensor",
    "D_a",
    "G_a_plus",
    "nabla_a_J_fd",
    "nabla_a_J1",
    "nabla_a_J1_fd",
    "koszul_nabla_a",
]


@dataclass(frozen=True)
class ConnectionConfig:
    """Finite-difference policy: step and Richardson extrapolation."""

    fd_step: float = 1e-5
    richardson: bool = True

    def __post_init__(self):
        if not self.fd_step > 0:
            raise ValueError("finite-difference step must be positive")


DEFAULT_CFG = ConnectionConfig()

# First-order identities are trusted to 1e-5, twice-differentiated ones to 1e-4.
FIRST_ORDER_TOL = 1e-5
SECOND_ORDER_TOL = 1e-4


def _aligned_vec(q_to: np.ndarray, q_from: np.ndarray, v_from: np.ndarray) -> np.ndarray:
    """Rephase a vector at q_from into the gauge whose lift is closest to q_to."""
    h = kernels.herm(q_from, q_to)
    ph = h / abs(h)
    return np.conj(ph) * v_from


def _central(values: Callable[[float], np.ndarray], h: float, richardson: bool) -> np.ndarray:
    def diff(step):
        return (values(step) - values(-step)) / (2.0 * step)

    d1 = diff(h)
    if not richardson:
        return d1
    d2 = diff(h / 2.0)
    return (4.0 * d2 - d1) / 3.0


def nabla1_curve(q0: np.ndarray, xvec: np.ndarray, field_at_point, cfg: ConnectionConfig = DEFAULT_CFG) -> np.ndarray:
    """Fubini-Study covariant derivative along the great circle with velocity xvec.

    ``field_at_point`` maps a lift q (a (4,)-array on S^7) to the horizontal
    vector of the field at q.  Returns the horizontal lift of the derivative
    at q0, as a raw array.
    """
    s = norm(xvec)
    if s < 1e-14:
        return np.zeros(4, dtype=np.complex128)
    u = xvec / s

    def value(t):
        q = np.cos(s * t) * q0 + np.sin(s * t) * u
        return _aligned_vec(q0, q, field_at_point(q))

    d = _central(value, cfg.fd_step, cfg.richardson)
    return kernels.horizontalize(q0, d)


@dataclass(frozen=True)
class VectorFieldAlongMap:
    """A chart into S^7 together with a tangent field along its projection.

    ``chart`` maps a k-parameter array to a SpherePoint, ``field`` maps the
    same parameters to a TangentRep based at chart(u).  ``jacobian`` (analytic,
    (4, k) complex) is optional; central differences with ``fd_step`` are used
    when it is absent.
    """

    chart: Callable[[np.ndarray], SpherePoint]
    field: Callable[[np.ndarray], TangentRep]
    jacobian: Optional[Callable[[np.ndarray], np.ndarray]] = None
    fd_step: float = 1e-6

    def chart_jacobian(self, at: np.ndarray) -> np.ndarray:
        at = np.asarray(at, dtype=float)
        if self.jacobian is not None:
            return np.asarray(self.jacobian(at), dtype=np.complex128)
        k = at.size
        cols = []
        h = self.fd_step
        for i in range(k):
            e = np.zeros(k)
            e[i] = 1.0
            cols.append((self.chart(at + h * e).v - self.chart(at - h * e).v) / (2.0 * h))
        return np.stack(cols, axis=1)


def _c2r(v: np.ndarray) -> np.ndarray:
    return np.concatenate([v.real, v.imag])


def parameter_direction(Y: VectorFieldAlongMap, at: np.ndarray, xvec: np.ndarray, q0: np.ndarray):
    """Solve for the parameter velocity whose horizontalized push-forward is xvec."""
    jac = Y.chart_jacobian(at)
    cols = [kernels.horizontalize(q0, jac[:, i]) for i in range(jac.shape[1])]
    M = np.stack([_c2r(c) for c in cols], axis=1)
    delta, *_ = np.linalg.lstsq(M, _c2r(xvec), rcond=None)
    residual = norm(sum(d * c for d, c in zip(delta, cols)) - xvec)
    if residual > 1e-6 * max(1.0, norm(xvec)):
        raise ValueError(f"direction is not tangent to the chart image (residual {residual:.3e})")
    return delta


def nabla1(X: TangentRep, Y: VectorFieldAlongMap, at, cfg: ConnectionConfig = DEFAULT_CFG) -> TangentRep:
    """Fubini-Study covariant derivative of the field Y in the direction X at ``at``."""
    at = np.asarray(at, dtype=float)
    q0 = Y.chart(at)
    Xa = align_to(X, q0)
    delta = parameter_direction(Y, at, Xa.vec, q0.v)

    def value(t):
        rep = Y.field(at + t * delta)
        return _aligned_vec(q0.v, rep.q, rep.vec)

    d = _central(value, cfg.fd_step, cfg.richardson)
    return TangentRep(q0, kernels.horizontalize(q0.v, d))


# -- the tensor G and the closed-form difference tensors ----------------------


def _hor_const_field(y0: np.ndarray):
    def field(q):
        return kernels.horizontalize(q, y0)

    return field


def nabla1_J(X: TangentRep, Y: TangentRep, cfg: ConnectionConfig = DEFAULT_CFG) -> TangentRep:
    """(nabla^1_X J) Y, extending Y by horizontalizing its constant ambient vector."""
    Y = align_to(Y, X.base)
    q0 = X.q
    y0 = Y.vec

    def jfield(q):
        return kernels.apply_j(q, kernels.horizontalize(q, y0))

    d_jy = nabla1_curve(q0, X.vec, jfield, cfg)
    d_y = nabla1_curve(q0, X.vec, _hor_const_field(y0), cfg)
    return TangentRep(X.base, d_jy - kernels.apply_j(q0, d_y))


def G_tensor(X: TangentRep, Y: TangentRep, cfg: ConnectionConfig = DEFAULT_CFG) -> TangentRep:
    """Skew part of the covariant derivative of J; independent of the metric scale."""
    gxy = nabla1_J(X, Y, cfg)
    gyx = nabla1_J(Y, align_to(X, Y.base), cfg)
    return TangentRep(X.base, 0.5 * (gxy.vec - align_to(gyx, X.base).vec))


def _d24_part(q: np.ndarray, w: np.ndarray) -> np.ndarray:
    return kernels.split(q, w)[1]


def D_a(a, X: TangentRep, Y: TangentRep, cfg: ConnectionConfig = DEFAULT_CFG) -> TangentRep:
    """Difference tensor between the g_a and Fubini-Study connections (closed form)."""
    a = a.a if isinstance(a, MetricParam) else float(a)
    Y = align_to(Y, X.base)
    g = G_tensor(TangentRep(X.base, 1j * X.vec), Y, cfg)
    return TangentRep(X.base, (a - 1.0) / a * _d24_part(X.q, g.vec))


def G_a_plus(a, X: TangentRep, Y: TangentRep, cfg: ConnectionConfig = DEFAULT_CFG) -> TangentRep:
    """Symmetric part of the covariant derivative of J for g_a (closed form).

    Equals (2-a)/a * P24 J1 G(J1 X, Y); the extra J1 relative to the
    difference-tensor formula is what makes G_a^+ = sym(nabla^1 J) - 2 J D_a
    close identically (checked against finite differences for every a).
    """
    a = a.a if isinstance(a, MetricParam) else float(a)
    Y = align_to(Y, X.base)
    g = G_tensor(TangentRep(X.base, 1j * X.vec), Y, cfg)
    return TangentRep(X.base, (2.0 - a) / a * _d24_part(X.q, 1j * g.vec))


def nabla_a(a, X: TangentRep, Y: VectorFieldAlongMap, at, cfg: ConnectionConfig = DEFAULT_CFG) -> TangentRep:
    """Covariant derivative of g_a: the primitive plus the difference tensor."""
    base = nabla1(X, Y, at, cfg)
    at = np.asarray(at, dtype=float)
    y_here = align_to(Y.field(at), base.base)
    x_here = align_to(X, base.base)
    d = D_a(a, x_here, y_here, cfg)
    return TangentRep(base.base, base.vec + d.vec)


def nabla_a_J_fd(a, X: TangentRep, Y: TangentRep, cfg: ConnectionConfig = DEFAULT_CFG) -> TangentRep:
    """(nabla^a_X J) Y by finite differences; the oracle side of the closed forms."""
    a = a.a if isinstance(a, MetricParam) else float(a)
    Y = align_to(Y, X.base)
    base = nabla1_J(X, Y, cfg).vec
    JY = TangentRep(X.base, kernels.apply_j(X.q, Y.vec))
    corr = D_a(a, X, JY, cfg).vec - kernels.apply_j(X.q, D_a(a, X, Y, cfg).vec)
    return TangentRep(X.base, base + corr)


def nabla_a_J1(a, X: TangentRep, Y: TangentRep, cfg: ConnectionConfig = DEFAULT_CFG) -> TangentRep:
    """(nabla^a J1)(X, Y) in closed form: 2 (a-1)/a G(P12 X, P24 Y)."""
    a = a.a if isinstance(a, MetricParam) else float(a)
    Y = align_to(Y, X.base)
    x12, _ = kernels.split(X.q, X.vec)
    _, y24 = kernels.split(X.q, Y.vec)
    g = G_tensor(TangentRep(X.base, x12), TangentRep(X.base, y24), cfg)
    return TangentRep(X.base, 2.0 * (a - 1.0) / a * g.vec)


def nabla_a_J1_fd(a, X: TangentRep, Y: TangentRep, cfg: ConnectionConfig = DEFAULT_CFG) -> TangentRep:
    """(nabla^a_X J1) Y by finite differences."""
    a = a.a if isinstance(a, MetricParam) else float(a)
    Y = align_to(Y, X.base)
    q0 = X.q
    y0 = Y.vec

    def j1field(q):
        return 1j * kernels.horizontalize(q, y0)

    d_j1y = nabla1_curve(q0, X.vec, j1field, cfg)
    d_y = nabla1_curve(q0, X.vec, _hor_const_field(y0), cfg)
    base = d_j1y - 1j * d_y
    J1Y = TangentRep(X.base, 1j * Y.vec)
    corr = D_a(a, X, J1Y, cfg).vec - 1j * D_a(a, X, Y, cfg).vec
    return TangentRep(X.base, base + corr)


# -- normalized linear charts and the Koszul oracle ---------------------------


class FrameChart:
    """Chart u -> normalize(q0 + sum u_i b_i) with horizontal velocities b_i at 0.

    Every chart point is already phase-aligned with q0 because the b_i are
    horizontal.  Coordinate vector fields (push-forwards of the parameter
    directions, horizontalized) commute, which the curvature and torsion
    finite differences rely on.
    """

    def __init__(self, q0: np.ndarray, basis):
        self.q0 = np.asarray(q0, dtype=np.complex128)
        self.basis = [np.asarray(b, dtype=np.complex128) for b in basis]

    @property
    def dim(self) -> int:
        return len(self.basis)

    def point(self, u) -> np.ndarray:
        w = self.q0 + sum(ui * bi for ui, bi in zip(u, self.basis))
        return w / norm(w)

    def sphere_point(self, u) -> SpherePoint:
        return SpherePoint(self.point(u))

    def coord_vec(self, i: int, u) -> np.ndarray:
        """Horizontal lift of the i-th coordinate field at parameter u."""
        w = self.q0 + sum(ui * bi for ui, bi in zip(u, self.basis))
        n = norm(w)
        dw = self.basis[i] / n - w * (kernels.rinner(w, self.basis[i]) / n**3)
        return kernels.horizontalize(w / n, dw)

    def coord_field(self, i: int) -> VectorFieldAlongMap:
        return VectorFieldAlongMap(
            chart=lambda u: SpherePoint(self.point(u)),
            field=lambda u: TangentRep(SpherePoint(self.point(u)), self.coord_vec(i, u)),
        )


def koszul_nabla_a(a, fc: FrameChart, i: int, j: int, cfg: ConnectionConfig = DEFAULT_CFG) -> TangentRep:
    """nabla^a of coordinate fields via the Koszul formula, from scalar FDs only.

    Coordinate fields commute, so 2 g_a(nabla_i Y_j, Y_k) reduces to three
    directional derivatives of metric coefficients.  Independent of both the
    submersion primitive and the closed-form difference tensor.
    """
    a = a.a if isinstance(a, MetricParam) else float(a)
    dim = fc.dim
    h = cfg.fd_step

    def gpair(m, n, u):
        return kernels.metric(a, fc.point(u), fc.coord_vec(m, u), fc.coord_vec(n, u))

    def dscalar(m, n, direction):
        e = np.zeros(dim)
        e[direction] = 1.0

        def val(t):
            return np.array([gpair(m, n, t * e)])

        return _central(val, h, cfg.richardson)[0]

    zero = np.zeros(dim)
    rhs = np.array([dscalar(j, k, i) + dscalar(i, k, j) - dscalar(i, j, k) for k in range(dim)])
    gram = np.array([[gpair(m, n, zero) for n in range(dim)] for m in range(dim)])
    coeffs = np.linalg.solve(gram, rhs / 2.0)
    vec = sum(c * fc.coord_vec(k, zero) for k, c in enumerate(coeffs))
    return TangentRep(SpherePoint(fc.point(zero)), vec)

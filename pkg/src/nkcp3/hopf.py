"""Hopf-fibration model of CP^3 and the structures J1, J, P, g_a.

Tangent vectors of CP^3 are carried as lifted representatives: a pair
(q, v) with q in S^7 and v horizontal at q (orthogonal to q and iq), up
to the gauge (q, v) ~ (e^(i t) q, e^(i t) v).  At a lift q the rank-2
distribution is spanned by jq and kq, the rank-4 one is its horizontal
orthogonal complement.  The metric family is

    g_a = g_1 on D12, a * g_1 on D24, 0 across,

with g_1 the Fubini-Study metric (the round metric on horizontal lifts).
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .ambient import SpherePoint, norm, random_ambient

__all__ = [
    "TangentRep",
    "MetricParam",
    "DistributionSplit",
    "GaugeError",
    "horizontalize",
    "same_point",
    "gauge_transport",
    "align_to",
    "split_distributions",
    "apply_J1",
    "apply_J",
    "apply_P",
    "metric",
    "g1",
    "random_horizontal",
    "random_d12",
    "random_d24",
]

HORIZONTAL_TOL = 1e-10
SAME_POINT_TOL = 1e-10


class GaugeError(ValueError):
    """Raised when two lifts do not lie on one Hopf fibre."""


@dataclass(frozen=True)
class TangentRep:
    """Tangent vector of CP^3 as (lift point, horizontal vector at the lift)."""

    base: SpherePoint
    vec: np.ndarray

    def __post_init__(self):
        vec = np.asarray(self.vec, dtype=np.complex128)
        object.__setattr__(self, "vec", vec)
        if not np.all(np.isfinite(vec.view(np.float64))):
            raise ValueError("tangent vector has non-finite components")
        h = kernels.herm(vec, self.base.v)
        if abs(h) > HORIZONTAL_TOL * max(1.0, norm(vec)):
            raise ValueError(f"vector is not horizontal at its lift (residual {abs(h):.3e})")

    @property
    def q(self) -> np.ndarray:
        return self.base.v


def rep(q: np.ndarray, vec: np.ndarray) -> TangentRep:
    """Wrap raw arrays; horizontality is still validated."""
    return TangentRep(SpherePoint(q), vec)


@dataclass(frozen=True)
class MetricParam:
    """Scale of the metric family; a = 1 is Fubini-Study, a = 2 nearly Kähler."""

    a: float

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("metric parameter must be positive")


@dataclass(frozen=True)
class DistributionSplit:
    d12: TangentRep
    d24: TangentRep


def horizontalize(q: SpherePoint, w) -> TangentRep:
    """Remove the radial and fibre components of w at q."""
    return TangentRep(q, kernels.horizontalize(q.v, np.asarray(w, dtype=np.complex128)))


def _fibre_phase(q1: np.ndarray, q2: np.ndarray):
    """Return (phase, residual): q2 ~ phase * q1 with the given misfit."""
    h = kernels.herm(q2, q1)
    mag = abs(h)
    if mag < 1e-12:
        return 1.0 + 0j, 2.0
    ph = h / mag
    residual = norm(q2 - ph * q1)
    return ph, residual


def same_point(q1: SpherePoint, q2: SpherePoint) -> bool:
    """True iff the two lifts project to one point of CP^3."""
    _, residual = _fibre_phase(q1.v, q2.v)
    return residual < SAME_POINT_TOL


def gauge_transport(t: TangentRep, theta: float) -> TangentRep:
    """Transport (q, v) to (e^(i theta) q, e^(i theta) v); same base vector."""
    ph = np.exp(1j * theta)
    return TangentRep(SpherePoint(ph * t.q), ph * t.vec)


def align_to(t: TangentRep, q: SpherePoint) -> TangentRep:
    """Rephase t onto the lift q of the same fibre.

    Raises GaugeError when the base points sit on different fibres; this is
    the guard that keeps binary operations from silently mixing fibres.
    """
    ph, residual = _fibre_phase(q.v, t.q)
    if residual > SAME_POINT_TOL:
        raise GaugeError(f"lifts lie on different fibres (residual {residual:.3e})")
    # t.q == ph * q.v, so multiply by conj(ph) to land on q.
    return TangentRep(q, np.conj(ph) * t.vec)


def split_distributions(t: TangentRep) -> DistributionSplit:
    d12, d24 = kernels.split(t.q, t.vec)
    return DistributionSplit(TangentRep(t.base, d12), TangentRep(t.base, d24))


def apply_J1(t: TangentRep) -> TangentRep:
    """Kähler structure: multiplication by i on horizontal lifts."""
    return TangentRep(t.base, 1j * t.vec)


def apply_J(t: TangentRep) -> TangentRep:
    """Almost complex structure equal to -J1 on D12 and +J1 on D24."""
    return TangentRep(t.base, kernels.apply_j(t.q, t.vec))


def apply_P(t: TangentRep) -> TangentRep:
    """Almost product structure with eigenvalue -1 on D12 and +1 on D24."""
    return TangentRep(t.base, kernels.apply_p(t.q, t.vec))


def metric(a, X: TangentRep, Y: TangentRep) -> float:
    """g_a(X, Y); Y is gauge-aligned onto X's lift first."""
    a = a.a if isinstance(a, MetricParam) else float(a)
    Y = align_to(Y, X.base)
    return kernels.metric(a, X.q, X.vec, Y.vec)


def g1(X: TangentRep, Y: TangentRep) -> float:
    return metric(1.0, X, Y)


def random_horizontal(q: SpherePoint, rng: np.random.Generator) -> TangentRep:
    return horizontalize(q, random_ambient(rng))


def random_d12(q: SpherePoint, rng: np.random.Generator) -> TangentRep:
    t = random_horizontal(q, rng)
    return split_distributions(t).d12


def random_d24(q: SpherePoint, rng: np.random.Generator) -> TangentRep:
    t = random_horizontal(q, rng)
    return split_distributions(t).d24

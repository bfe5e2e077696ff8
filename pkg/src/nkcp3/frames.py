"""Contact frames on CP^3 and the endomorphisms Phi, Psi.

For a unit section U of the rank-2 distribution with lift c*(jq) the frame is

    E1 = J1 U,  E2 = U,  E3 = chi,  E4 = J1 chi,  E5 = Phi chi,  E6 = Psi chi,

with chi a unit section of the rank-4 distribution.  On lifted rank-4
vectors the endomorphisms act by left quaternion multiplication,

    Phi v = -(i c) (j v),        Psi v = -c (j v),

and both kill the rank-2 directions.  The signs are the unique calibration
(among the four left-multiplication candidates) under which the covariant
derivatives of U and J1 U take the contact-structure form

    nabla^1_X U = -Psi X + sigma(X) V,   nabla^1_X V = -Phi X - sigma(X) U,

for the canonical frame-field extension used throughout: U is transported
with a constant jq/kq coefficient and chi by projecting its ambient vector
onto the rank-4 bundle.  With this calibration Psi = Phi J1 = -J1 Phi and
(id, J1, Psi, Phi) multiply exactly like the quaternions (1, i, j, k).
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .ambient import SpherePoint, norm
from .connection import DEFAULT_CFG, ConnectionConfig, nabla1_curve
from .hopf import MetricParam, TangentRep, align_to, g1, split_distributions

__all__ = [
    "ContactFrame",
    "contact_frame",
    "default_contact_frame",
    "normalized_frame",
    "sigma",
    "phi_apply",
    "psi_apply",
    "frame_vector_field",
]

UNIT_TOL = 1e-9
PLACEMENT_TOL = 1e-9


@dataclass(frozen=True)
class ContactFrame:
    """Orthonormal frame E1..E6 adapted to the two distributions.

    ``u_coeff`` is the complex coefficient c of the U-lift c*(jq); ``chi``
    the lift of E3; ``a`` the metric parameter the frame is orthonormal for.
    """

    base: SpherePoint
    E: tuple
    u_coeff: complex
    chi: np.ndarray
    a: float = 1.0

    def __iter__(self):
        return iter(self.E)


def _phi_raw(q: np.ndarray, c: complex, v: np.ndarray) -> np.ndarray:
    _, v24 = kernels.split(q, v)
    return -(1j * c) * kernels.jmul(v24)


def _psi_raw(q: np.ndarray, c: complex, v: np.ndarray) -> np.ndarray:
    _, v24 = kernels.split(q, v)
    return -c * kernels.jmul(v24)


def contact_frame(q: SpherePoint, U_lift: TangentRep, chi_lift: TangentRep) -> ContactFrame:
    """Build the contact frame from a rank-2 direction U and rank-4 direction chi."""
    U_lift = align_to(U_lift, q)
    chi_lift = align_to(chi_lift, q)
    for t, where in ((U_lift, "d12"), (chi_lift, "d24")):
        s = split_distributions(t)
        off = s.d24 if where == "d12" else s.d12
        if norm(off.vec) > PLACEMENT_TOL:
            raise ValueError(f"frame seed is not a {where} vector (off-part {norm(off.vec):.3e})")
        if abs(g1(t, t) - 1.0) > UNIT_TOL:
            raise ValueError("frame seed is not unit length for the Fubini-Study metric")

    c = kernels.d12_coeff(q.v, U_lift.vec)
    chi = chi_lift.vec
    vecs = (
        1j * U_lift.vec,
        U_lift.vec,
        chi,
        1j * chi,
        _phi_raw(q.v, c, chi),
        _psi_raw(q.v, c, chi),
    )
    return ContactFrame(q, tuple(TangentRep(q, v) for v in vecs), complex(c), chi)


def default_contact_frame(q: SpherePoint) -> ContactFrame:
    """Deterministic frame at q: U lifts to jq, chi to the largest-pivot d24 leg."""
    jq = kernels.jmul(q.v)
    U = TangentRep(q, jq)
    best = None
    for m in range(4):
        e = np.zeros(4, dtype=np.complex128)
        e[m] = 1.0
        cand = kernels.split(q.v, kernels.horizontalize(q.v, e))[1]
        n = norm(cand)
        if best is None or n > best[0]:
            best = (n, cand)
    chi = TangentRep(q, best[1] / best[0])
    return contact_frame(q, U, chi)


def normalized_frame(frame: ContactFrame, a) -> ContactFrame:
    """Rescale E3..E6 by 1/sqrt(a) so the frame is g_a-orthonormal."""
    a = a.a if isinstance(a, MetricParam) else float(a)
    s = 1.0 / np.sqrt(a)
    E = frame.E
    scaled = E[:2] + tuple(TangentRep(frame.base, s * t.vec) for t in E[2:])
    return ContactFrame(frame.base, scaled, frame.u_coeff, s * frame.chi, a=a)


def phi_apply(frame: ContactFrame, t: TangentRep) -> TangentRep:
    t = align_to(t, frame.base)
    return TangentRep(frame.base, _phi_raw(frame.base.v, frame.u_coeff, t.vec))


def psi_apply(frame: ContactFrame, t: TangentRep) -> TangentRep:
    t = align_to(t, frame.base)
    return TangentRep(frame.base, _psi_raw(frame.base.v, frame.u_coeff, t.vec))


def frame_vector_field(frame: ContactFrame, k: int):
    """The k-th frame vector (0-based) as a field of lifts q' -> vec.

    Extension rule: U keeps its jq'/kq' coefficient, chi is the normalized
    rank-4 projection of its ambient vector; E5, E6 are rebuilt from both.
    The g_a normalization factor of the frame is preserved.
    """
    c = frame.u_coeff
    chi0 = frame.chi

    def field(q: np.ndarray) -> np.ndarray:
        if k == 0:
            return 1j * (c * kernels.jmul(q))
        if k == 1:
            return c * kernels.jmul(q)
        chi = kernels.split(q, kernels.horizontalize(q, chi0))[1]
        chi = chi * (norm(chi0) / norm(chi))
        if k == 2:
            return chi
        if k == 3:
            return 1j * chi
        if k == 4:
            return _phi_raw(q, c, chi)
        if k == 5:
            return _psi_raw(q, c, chi)
        raise IndexError(k)

    return field


def sigma(X: TangentRep, frame: ContactFrame, cfg: ConnectionConfig = DEFAULT_CFG) -> float:
    """One-form sigma(X) = g1(nabla^1_X U, V) for the frame's U-field."""
    X = align_to(X, frame.base)
    du = nabla1_curve(frame.base.v, X.vec, frame_vector_field(frame, 1), cfg)
    V = frame.E[0]
    return kernels.metric(1.0, frame.base.v, du, V.vec)

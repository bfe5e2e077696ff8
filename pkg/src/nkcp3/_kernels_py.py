"""Pure-numpy kernel twin.

Hot primitives on points and vectors of R^8 = C^4 = H^2, stored as
(4,)-complex128 arrays.  Quaternion slots are (z1, z2) and (z3, z4) with
h = z1 + z2*j and LEFT multiplication, so

    i . v = 1j * v            (componentwise),
    j . (z1, z2, z3, z4) = (-conj z2, conj z1, -conj z4, conj z3),
    k = i . j.

The Cython module ``_kernels_cy`` mirrors these signatures one to one;
``nkcp3.kernels`` selects a backend at import time.
"""

import numpy as np

BACKEND = "python"


def jmul(v):
    c = np.conj(v)
    out = np.empty(4, dtype=np.complex128)
    out[0] = -c[1]
    out[1] = c[0]
    out[2] = -c[3]
    out[3] = c[2]
    return out


def kmul(v):
    return 1j * jmul(v)


def herm(u, v):
    """Hermitian inner product sum_m u_m * conj(v_m)."""
    return complex(np.vdot(v, u))


def rinner(u, v):
    """Euclidean inner product of the underlying R^8 vectors."""
    return herm(u, v).real


def horizontalize(q, w):
    """Project w orthogonally to span_R{q, iq} (one complex projection)."""
    return w - herm(w, q) * q


def d12_coeff(q, w):
    """Complex coefficient c with d12-part of w equal to c * (j.q)."""
    return herm(w, jmul(q))


def split(q, w):
    """Split a horizontal w at q into (d12, d24) parts."""
    jq = jmul(q)
    d12 = herm(w, jq) * jq
    return d12, w - d12


def apply_p(q, w):
    jq = jmul(q)
    return w - 2.0 * (herm(w, jq) * jq)


def apply_j(q, w):
    jq = jmul(q)
    return 1j * w - 2j * (herm(w, jq) * jq)


def metric(a, q, x, y):
    """g_a of two horizontal vectors sharing the lift q."""
    jq = jmul(q)
    c12 = (herm(x, jq) * np.conj(herm(y, jq))).real
    return (1.0 - a) * c12 + a * rinner(x, y)

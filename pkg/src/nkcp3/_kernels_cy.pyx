# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython kernel twin of ``_kernels_py``; same signatures, same conventions."""

import numpy as np

BACKEND = "cython"


def jmul(v):
    cdef double complex[:] vv = v
    out = np.empty(4, dtype=np.complex128)
    cdef double complex[:] oo = out
    oo[0] = -vv[1].conjugate()
    oo[1] = vv[0].conjugate()
    oo[2] = -vv[3].conjugate()
    oo[3] = vv[2].conjugate()
    return out


def kmul(v):
    cdef double complex[:] vv = v
    out = np.empty(4, dtype=np.complex128)
    cdef double complex[:] oo = out
    cdef double complex i = 1j
    oo[0] = -i * vv[1].conjugate()
    oo[1] = i * vv[0].conjugate()
    oo[2] = -i * vv[3].conjugate()
    oo[3] = i * vv[2].conjugate()
    return out


cdef inline double complex _herm(double complex[:] u, double complex[:] v):
    cdef double complex acc = 0
    cdef int m
    for m in range(4):
        acc = acc + u[m] * v[m].conjugate()
    return acc


def herm(u, v):
    cdef double complex[:] uu = u
    cdef double complex[:] vv = v
    return complex(_herm(uu, vv))


def rinner(u, v):
    cdef double complex[:] uu = u
    cdef double complex[:] vv = v
    return _herm(uu, vv).real


def horizontalize(q, w):
    cdef double complex[:] qq = q
    cdef double complex[:] ww = w
    cdef double complex h = _herm(ww, qq)
    out = np.empty(4, dtype=np.complex128)
    cdef double complex[:] oo = out
    cdef int m
    for m in range(4):
        oo[m] = ww[m] - h * qq[m]
    return out


cdef inline void _jq(double complex[:] q, double complex* jq):
    jq[0] = -q[1].conjugate()
    jq[1] = q[0].conjugate()
    jq[2] = -q[3].conjugate()
    jq[3] = q[2].conjugate()


cdef inline double complex _herm_jq(double complex[:] w, double complex* jq):
    cdef double complex acc = 0
    cdef int m
    for m in range(4):
        acc = acc + w[m] * jq[m].conjugate()
    return acc


def d12_coeff(q, w):
    cdef double complex[:] qq = q
    cdef double complex[:] ww = w
    cdef double complex jq[4]
    _jq(qq, jq)
    return complex(_herm_jq(ww, jq))


def split(q, w):
    cdef double complex[:] qq = q
    cdef double complex[:] ww = w
    cdef double complex jq[4]
    _jq(qq, jq)
    cdef double complex c = _herm_jq(ww, jq)
    d12 = np.empty(4, dtype=np.complex128)
    d24 = np.empty(4, dtype=np.complex128)
    cdef double complex[:] a = d12
    cdef double complex[:] b = d24
    cdef int m
    for m in range(4):
        a[m] = c * jq[m]
        b[m] = ww[m] - a[m]
    return d12, d24


def apply_p(q, w):
    cdef double complex[:] qq = q
    cdef double complex[:] ww = w
    cdef double complex jq[4]
    _jq(qq, jq)
    cdef double complex c = _herm_jq(ww, jq)
    out = np.empty(4, dtype=np.complex128)
    cdef double complex[:] oo = out
    cdef int m
    for m in range(4):
        oo[m] = ww[m] - 2.0 * (c * jq[m])
    return out


def apply_j(q, w):
    cdef double complex[:] qq = q
    cdef double complex[:] ww = w
    cdef double complex jq[4]
    _jq(qq, jq)
    cdef double complex c = _herm_jq(ww, jq)
    cdef double complex i = 1j
    out = np.empty(4, dtype=np.complex128)
    cdef double complex[:] oo = out
    cdef int m
    for m in range(4):
        oo[m] = i * ww[m] - 2.0 * i * (c * jq[m])
    return out


def metric(double a, q, x, y):
    cdef double complex[:] qq = q
    cdef double complex[:] xx = x
    cdef double complex[:] yy = y
    cdef double complex jq[4]
    _jq(qq, jq)
    cdef double complex cx = _herm_jq(xx, jq)
    cdef double complex cy = _herm_jq(yy, jq)
    cdef double c12 = (cx * cy.conjugate()).real
    return (1.0 - a) * c12 + a * _herm(xx, yy).real

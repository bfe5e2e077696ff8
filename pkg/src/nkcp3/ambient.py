"""Quaternionic and complex linear algebra on R^8 = C^4 = H^2.

Vectors are (4,)-complex128 arrays.  The two quaternion slots are
(z1, z2) and (z3, z4) with h = z1 + z2*j, acted on by LEFT multiplication:
``i`` multiplies every complex component by 1j, ``j`` sends
(z1, z2, z3, z4) to (-conj z2, conj z1, -conj z4, conj z3), and k = i∘j.
This convention makes e^(-i t) j e^(i t) = e^(-2 i t) j, which the whole
distribution calculus downstream relies on.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels

__all__ = [
    "AmbientVector",
    "SpherePoint",
    "as_cvec",
    "left_mul",
    "real_inner",
    "herm_inner",
    "norm",
    "random_sphere_point",
    "random_ambient",
]

SPHERE_NORM_TOL = 1e-12


def as_cvec(values) -> np.ndarray:
    """Coerce input to a (4,)-complex128 array (copying if needed)."""
    v = np.asarray(values, dtype=np.complex128)
    if v.shape != (4,):
        raise ValueError(f"ambient vector must have 4 complex components, got shape {v.shape}")
    return v


@dataclass(frozen=True)
class AmbientVector:
    """A vector of R^8 in its C^4 presentation."""

    z: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "z", as_cvec(self.z))
        if not np.all(np.isfinite(self.z.view(np.float64))):
            raise ValueError("ambient vector has non-finite components")


@dataclass(frozen=True)
class SpherePoint:
    """A unit-norm point of S^7, the total space of the Hopf fibration."""

    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "v", as_cvec(self.v))
        n = norm(self.v)
        if abs(n - 1.0) > SPHERE_NORM_TOL:
            raise ValueError(f"sphere point norm deviates from 1 by {abs(n - 1.0):.3e}")


def left_mul(unit: str, v) -> np.ndarray:
    """Left quaternion multiplication by one of the units 'i', 'j', 'k'."""
    v = np.asarray(v, dtype=np.complex128)
    if unit == "i":
        return 1j * v
    if unit == "j":
        return kernels.jmul(v)
    if unit == "k":
        return kernels.kmul(v)
    raise ValueError(f"unknown quaternion unit {unit!r}")


def real_inner(u, v) -> float:
    """Euclidean inner product of the underlying R^8 vectors."""
    return kernels.rinner(np.asarray(u, dtype=np.complex128), np.asarray(v, dtype=np.complex128))


def herm_inner(u, v) -> complex:
    """Hermitian inner product sum_m u_m conj(v_m); its real part is real_inner."""
    return kernels.herm(np.asarray(u, dtype=np.complex128), np.asarray(v, dtype=np.complex128))


def norm(v) -> float:
    return float(np.sqrt(real_inner(v, v)))


def random_ambient(rng: np.random.Generator) -> np.ndarray:
    """Standard 8-real Gaussian sample viewed as a C^4 vector."""
    x = rng.standard_normal(8)
    return x[:4] + 1j * x[4:]


def random_sphere_point(seed: int) -> SpherePoint:
    """Deterministic uniformly distributed point of S^7 for a fixed seed."""
    rng = np.random.default_rng(seed)
    v = random_ambient(rng)
    return SpherePoint(v / norm(v))

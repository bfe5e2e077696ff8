"""Numerical geometry of the homogeneous metrics g_a on CP^3.

The package models CP^3 through the Hopf fibration S^7 -> CP^3, computes
the structures J1, J, P, the metric family g_a, the Levi-Civita
connections and curvature tensors, membership tests for the isometry
groups, and a catalog of five explicit Lagrangian submanifolds of the
nearly Kähler case a = 2, together with a CLI harness that re-verifies
every identity and constant the construction is supposed to satisfy.
"""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]

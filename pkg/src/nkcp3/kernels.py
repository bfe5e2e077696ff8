"""Kernel backend selection.

Prefers the compiled core when available; falls back to the pure-numpy
twin.  Override with NKCP3_KERNELS=py or NKCP3_KERNELS=cy.
"""

import os

_choice = os.environ.get("NKCP3_KERNELS", "auto")

if _choice == "py":
    from . import _kernels_py as _impl
elif _choice == "cy":
    from . import _kernels_cy as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _kernels_cy as _impl  # type: ignore[no-redef]
    except ImportError:
        from . import _kernels_py as _impl  # type: ignore[no-redef]

BACKEND = _impl.BACKEND

jmul = _impl.jmul
kmul = _impl.kmul
herm = _impl.herm
rinner = _impl.rinner
horizontalize = _impl.horizontalize
d12_coeff = _impl.d12_coeff
split = _impl.split
apply_p = _impl.apply_p
apply_j = _impl.apply_j
metric = _impl.metric

import importlib

import numpy as np
import pytest

from nkcp3 import _kernels_py

try:
    from nkcp3 import _kernels_cy
except ImportError:
    _kernels_cy = None

needs_ext = pytest.mark.skipif(_kernels_cy is None, reason="compiled kernels not built")


def random_pair(seed):
    r = np.random.default_rng(seed)
    q = r.standard_normal(8)
    q = (q[:4] + 1j * q[4:]).astype(np.complex128)
    q = q / np.sqrt(_kernels_py.rinner(q, q))
    w = r.standard_normal(8)
    w = (w[:4] + 1j * w[4:]).astype(np.complex128)
    return q, _kernels_py.horizontalize(q, w)


@needs_ext
@pytest.mark.parametrize("seed", range(10))
def test_backends_agree(seed):
    q, w = random_pair(seed)
    r = np.random.default_rng(seed + 1)
    v = (r.standard_normal(4) + 1j * r.standard_normal(4)).astype(np.complex128)
    assert np.allclose(_kernels_py.jmul(v), _kernels_cy.jmul(v), atol=1e-15)
    assert np.allclose(_kernels_py.kmul(v), _kernels_cy.kmul(v), atol=1e-15)
    assert abs(_kernels_py.herm(v, w) - _kernels_cy.herm(v, w)) < 1e-14
    assert abs(_kernels_py.rinner(v, w) - _kernels_cy.rinner(v, w)) < 1e-14
    assert np.allclose(_kernels_py.horizontalize(q, v), _kernels_cy.horizontalize(q, v), atol=1e-14)
    assert abs(_kernels_py.d12_coeff(q, w) - _kernels_cy.d12_coeff(q, w)) < 1e-14
    a12, a24 = _kernels_py.split(q, w)
    b12, b24 = _kernels_cy.split(q, w)
    assert np.allclose(a12, b12, atol=1e-14) and np.allclose(a24, b24, atol=1e-14)
    assert np.allclose(_kernels_py.apply_p(q, w), _kernels_cy.apply_p(q, w), atol=1e-14)
    assert np.allclose(_kernels_py.apply_j(q, w), _kernels_cy.apply_j(q, w), atol=1e-14)
    for a in (0.5, 1.0, 2.0, 3.0):
        assert abs(_kernels_py.metric(a, q, w, v) - _kernels_cy.metric(a, q, w, v)) < 1e-13


def test_dispatch_module_exposes_backend():
    from nkcp3 import kernels

    assert kernels.BACKEND in ("python", "cython")


def test_env_override_selects_python(monkeypatch):
    monkeypatch.setenv("NKCP3_KERNELS", "py")
    import nkcp3.kernels as kmod

    fresh = importlib.reload(kmod)
    assert fresh.BACKEND == "python"
    monkeypatch.delenv("NKCP3_KERNELS")
    importlib.reload(kmod)

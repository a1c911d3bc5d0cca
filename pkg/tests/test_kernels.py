import numpy as np
import pytest

from helpers import crandn
from sdoflab import kernels
from sdoflab.kernels import fallback

try:
    from sdoflab.kernels import _native
except ImportError:
    _native = None

needs_native = pytest.mark.skipif(_native is None, reason="compiled kernel not built")


def _reference(e):
    n = e.shape[0]
    if n == 0 or e.shape[1] == 0:
        return 0.0
    sign, logdet = np.linalg.slogdet(np.eye(n) + e @ e.conj().T)
    assert sign.real > 0
    return logdet / np.log(2.0)


shapes = [(1, 1), (2, 3), (4, 2), (5, 5), (8, 12), (16, 24), (3, 0), (0, 4)]


@pytest.mark.parametrize("shape", shapes)
def test_fallback_matches_slogdet(shape):
    gen = np.random.default_rng(hash(shape) % 2**32)
    e = crandn(gen, *shape)
    assert fallback.logdet_eye_plus_gram(e) == pytest.approx(_reference(e), abs=1e-9)


@needs_native
@pytest.mark.parametrize("shape", shapes)
def test_native_matches_fallback(shape):
    gen = np.random.default_rng(hash(shape) % 2**32)
    e = crandn(gen, *shape)
    a = _native.logdet_eye_plus_gram(e)
    b = fallback.logdet_eye_plus_gram(e)
    assert a == pytest.approx(b, abs=1e-10)


@needs_native
def test_backends_agree_at_high_dynamic_range(gen=np.random.default_rng(5)):
    # power levels up to 1e10 stress the Gram conditioning
    for scale in (1.0, 1e3, 1e5):
        e = scale * crandn(gen, 6, 8)
        a = _native.logdet_eye_plus_gram(e)
        b = fallback.logdet_eye_plus_gram(e)
        assert a == pytest.approx(b, rel=1e-12)


def test_selected_backend_is_exported():
    assert kernels.BACKEND in {"native", "fallback"}
    gen = np.random.default_rng(1)
    e = crandn(gen, 4, 4)
    assert kernels.logdet_eye_plus_gram(e) == pytest.approx(_reference(e), abs=1e-9)


def test_real_input_accepted():
    e = np.array([[1.0, 0.0], [0.0, 2.0]])
    assert kernels.logdet_eye_plus_gram(e) == pytest.approx(np.log2(2.0) + np.log2(5.0))

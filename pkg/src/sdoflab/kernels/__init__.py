"""Rate-evaluation kernels with a compiled core and a pure-NumPy fallback.

The compiled extension (``sdoflab.kernels._native``) is selected at import
time when present; otherwise the NumPy implementation in ``fallback`` is
used with identical semantics.  Set ``SDOFLAB_KERNEL=fallback`` to force
the pure path or ``SDOFLAB_KERNEL=native`` to fail loudly when the
extension is missing; the default is ``auto``.
"""

import importlib
import os

from . import fallback

_CHOICE = os.environ.get("SDOFLAB_KERNEL", "auto").lower()
if _CHOICE not in {"auto", "native", "fallback"}:
    raise ImportError(
        f"SDOFLAB_KERNEL must be 'auto', 'native' or 'fallback', got {_CHOICE!r}"
    )

_impl = None
if _CHOICE in {"auto", "native"}:
    try:
        _impl = importlib.import_module("._native", __name__)
    except ImportError:
        _impl = None
    if _CHOICE == "native" and _impl is None:
        raise ImportError("SDOFLAB_KERNEL=native but the compiled kernel is not built")

if _impl is not None:
    BACKEND = "native"
    logdet_eye_plus_gram = _impl.logdet_eye_plus_gram
else:
    BACKEND = "fallback"
    logdet_eye_plus_gram = fallback.logdet_eye_plus_gram

__all__ = ["BACKEND", "logdet_eye_plus_gram", "fallback"]

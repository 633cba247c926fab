"""Kernel selection: compiled Cython kernels with a pure-Python fallback.

Set CARTANKIT_PURE_PYTHON=1 to force the fallback (used by the benchmark and
by CI to exercise both paths).
"""

from __future__ import annotations

import os

from . import _poly_py

if os.environ.get("CARTANKIT_PURE_PYTHON"):
    _impl = _poly_py
    COMPILED = False
else:
    try:
        from . import _poly_cy as _impl  # type: ignore[attr-defined]
        COMPILED = True
    except ImportError:
        _impl = _poly_py
        COMPILED = False

mono_mul = _impl.mono_mul
poly_add = _impl.poly_add
poly_iadd_scaled = _impl.poly_iadd_scaled
poly_mul = _impl.poly_mul
poly_substitute = _impl.poly_substitute
poly_eval = _impl.poly_eval

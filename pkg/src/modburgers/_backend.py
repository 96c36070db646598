"""Select the compiled kernels when available, else the numpy fallback."""

from __future__ import annotations

import os
from types import ModuleType

from . import _pykernels


def _load_compiled() -> ModuleType | None:
    try:
        from . import _ckernels
    except ImportError:
        return None
    return _ckernels


_compiled = None if os.environ.get("MODBURGERS_PURE_PYTHON") else _load_compiled()

kernels: ModuleType = _compiled if _compiled is not None else _pykernels
BACKEND: str = "cython" if _compiled is not None else "python"


def get_backend(name: str) -> ModuleType:
    """Return a specific kernel module by name (``"cython"`` or ``"python"``)."""
    if name == "python":
        return _pykernels
    if name == "cython":
        mod = _load_compiled()
        if mod is None:
            raise ImportError("compiled kernels are not built")
        return mod
    raise ValueError(f"unknown backend {name!r}")

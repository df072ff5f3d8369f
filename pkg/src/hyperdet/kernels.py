"""Kernel backend selection: compiled extension if present, numpy otherwise.

Set HYPERDET_KERNEL=python or =compiled to force a backend (the latter raises
if the extension was not built).
"""
from __future__ import annotations

import os

from . import _kernels_py

_forced = os.environ.get("HYPERDET_KERNEL", "").strip().lower()

if _forced == "python":
    _impl = _kernels_py
    BACKEND = "python"
else:
    try:
        from . import _kernelcore as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        if _forced == "compiled":
            raise
        _impl = _kernels_py
        BACKEND = "python"

batch_det = _impl.batch_det
batch_det_grad = _impl.batch_det_grad


def backend_name() -> str:
    return BACKEND

"""Kernel selection: compiled extension when present, pure Python otherwise.

Set PERCOLAB_PURE=1 to force the fallback (used by the benchmark and the
parity tests).
"""

from __future__ import annotations

import os

from . import _ufcore_py

_FORCE_PURE = os.environ.get("PERCOLAB_PURE", "") not in ("", "0")

try:
    from . import _ufcore  # type: ignore[attr-defined]
except ImportError:
    _ufcore = None

if _ufcore is not None and not _FORCE_PURE:
    BACKEND = "compiled"
    uf_labels = _ufcore.uf_labels
else:
    BACKEND = "pure"
    uf_labels = _ufcore_py.uf_labels


def available_backends() -> dict:
    """Map backend name -> uf_labels implementation, for benchmarks/tests."""
    out = {"pure": _ufcore_py.uf_labels}
    if _ufcore is not None:
        out["compiled"] = _ufcore.uf_labels
    return out

"""Hot GF(2) kernels with a compiled core and a pure-Python fallback.

The compiled ``_core`` extension is used when it imports; setting the
environment variable ``STABLOC_PURE=1`` forces the fallback.  Both expose:

``rank_packed(rows)``
    GF(2) rank of a packed ``(m, W)`` uint64 row array.
``first_rank_drop(rows, n, k, target, budget)``
    First k-subset (lexicographic) whose column zeroing drops the rank.
``span_supported(rows, n, k, target, budget)``
    Accumulated span of row-space vectors supported in some k-subset.
"""

from __future__ import annotations

import os
from types import ModuleType

from . import _pure

FOUND, EXHAUSTED, NOT_FOUND = _pure.FOUND, _pure.EXHAUSTED, _pure.NOT_FOUND

try:
    from . import _core as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS: dict[str, ModuleType] = {"pure": _pure}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

if _compiled is not None and os.environ.get("STABLOC_PURE", "") in ("", "0"):
    default_backend = "compiled"
else:
    default_backend = "pure"


def get_backend(name: str | None = None) -> ModuleType:
    """Return the kernel module called ``name`` (default: the import-time choice)."""
    name = name or default_backend
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown or unavailable kernel backend {name!r}; available: {sorted(BACKENDS)}"
        ) from None

"""Kernel backend selection.

The hot kernels exist twice: a compiled Cython extension
(``algoweb._core``) and a pure-Python fallback (``algoweb._pycore``).  The
compiled one is used when importable; set ``ALGOWEB_BACKEND=python`` or
``ALGOWEB_BACKEND=compiled`` to force a choice.  Both produce bit-identical
results; the difference is speed (see ``algoweb-backbench``).
"""

from __future__ import annotations

import os

_choice = os.environ.get("ALGOWEB_BACKEND", "auto").strip().lower() or "auto"
if _choice not in ("auto", "compiled", "python"):
    raise ImportError(
        f"ALGOWEB_BACKEND={_choice!r} not understood "
        "(expected 'auto', 'compiled' or 'python')"
    )

_impl = None
if _choice in ("auto", "compiled"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        if _choice == "compiled":
            raise ImportError(
                "ALGOWEB_BACKEND=compiled but the algoweb._core extension "
                "is not built; reinstall or use ALGOWEB_BACKEND=python"
            ) from None
if _impl is None:
    from . import _pycore as _impl  # type: ignore[no-redef]

BACKEND_NAME: str = _impl.BACKEND_NAME

Rng = _impl.Rng
mix64 = _impl.mix64
derive_seed = _impl.derive_seed
bfs_reach = _impl.bfs_reach
prim_mst = _impl.prim_mst
kruskal_mst = _impl.kruskal_mst
count_components = _impl.count_components
components_sweep = _impl.components_sweep
estimate_threshold = _impl.estimate_threshold


def backend_name() -> str:
    """Name of the active kernel backend ('compiled' or 'python')."""
    return BACKEND_NAME

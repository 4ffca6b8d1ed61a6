"""Backend selection for the hot loops.

The compiled extension is used when it imports; otherwise the numpy
fallback. Both expose ``abscos_matrix``, ``brandes`` and ``subset_search``
with identical results.
"""

from types import ModuleType

from . import _fallback

try:
    from . import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS: dict[str, ModuleType] = {"python": _fallback}
if _compiled is not None:
    BACKENDS["compiled"] = _compiled

DEFAULT_BACKEND = "compiled" if _compiled is not None else "python"


def get(name: str | None = None) -> ModuleType:
    if name is None:
        name = DEFAULT_BACKEND
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {sorted(BACKENDS)}") from None

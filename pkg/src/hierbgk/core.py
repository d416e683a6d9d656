"""Selects the velocity-kernel backend at import time.

The compiled core is preferred when the extension built; the numpy fallback
is always available.  Set HIERBGK_CORE=python (or =compiled) to force one,
or call `set_backend` from code (the benchmark script does).
"""

import os

from hierbgk import _core_np

try:
    from hierbgk import _core_c
except ImportError:
    _core_c = None

_BACKENDS = {"python": _core_np}
if _core_c is not None:
    _BACKENDS["compiled"] = _core_c

_env = os.environ.get("HIERBGK_CORE", "").strip().lower()
if _env and _env not in _BACKENDS:
    raise ImportError(
        f"HIERBGK_CORE={_env!r} not available; choices: {sorted(_BACKENDS)}"
    )
_active_name = _env or ("compiled" if "compiled" in _BACKENDS else "python")


def available_backends():
    return sorted(_BACKENDS)


def backend_name() -> str:
    return _active_name


def get_backend(name=None):
    return _BACKENDS[name or _active_name]


def set_backend(name: str) -> None:
    global _active_name
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}; choices: {sorted(_BACKENDS)}")
    _active_name = name


def active():
    return _BACKENDS[_active_name]

"""Selection of the dense eigensolver kernel backend.

Two interchangeable kernel sets exist: numba-jitted scalar loops
(:mod:`pseudospec._kernels_numba`) and vectorized pure-numpy twins
(:mod:`pseudospec._kernels_numpy`).  The active set is resolved, in order of
precedence:

1. a programmatic override installed with :func:`set_backend`,
2. the ``PSEUDOSPEC_BACKEND`` environment variable (``"numba"`` or
   ``"numpy"``), read at each resolution so shells can switch per run,
3. automatic: ``"numba"`` when numba is importable, else ``"numpy"``.
"""
from __future__ import annotations

import os

from . import _kernels_numba, _kernels_numpy

__all__ = ["BACKENDS", "available_backends", "current_backend", "get_kernels", "set_backend"]

BACKENDS = ("numba", "numpy")

_ENV_VAR = "PSEUDOSPEC_BACKEND"
_override: str | None = None


def available_backends() -> tuple[str, ...]:
    """Backends usable in this environment."""
    return BACKENDS if _kernels_numba.HAS_NUMBA else ("numpy",)


def set_backend(name: str | None) -> None:
    """Force a backend (``"numba"`` / ``"numpy"``), or ``None`` to re-enable
    the environment-variable/automatic resolution."""
    global _override
    if name is None:
        _override = None
        return
    _check_name(str(name))
    _override = str(name)


def current_backend() -> str:
    """Name of the backend that :func:`get_kernels` would return."""
    if _override is not None:
        return _override
    env = os.environ.get(_ENV_VAR, "").strip().lower()
    if env:
        _check_name(env)
        return env
    return "numba" if _kernels_numba.HAS_NUMBA else "numpy"


def get_kernels():
    """The active kernel module."""
    return _kernels_numba if current_backend() == "numba" else _kernels_numpy


def _check_name(name: str) -> None:
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}; known: {', '.join(BACKENDS)}")
    if name == "numba" and not _kernels_numba.HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not installed")

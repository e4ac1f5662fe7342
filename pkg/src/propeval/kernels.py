"""Backend dispatch for the hot numeric kernels.

Two interchangeable implementations exist: numba @njit loops
(_kernels_nb.py) and pure numpy (_kernels_np.py). The active backend is
chosen lazily, on first kernel call, from the PROPEVAL_BACKEND environment
variable:

    PROPEVAL_BACKEND=numba   force numba (falls back to numpy with a
                             warning if numba cannot be imported)
    PROPEVAL_BACKEND=numpy   force the pure-numpy path
    unset                    numba when importable, else numpy

`set_backend()` switches explicitly; tests and the kernel benchmark use it
to compare both paths in one process.
"""

from __future__ import annotations

import os
import warnings
from types import ModuleType

from . import _kernels_np

_BACKENDS = ("numba", "numpy")
_active_name: str | None = None
_active_mod: ModuleType | None = None


def _load(name: str) -> ModuleType:
    if name == "numpy":
        return _kernels_np
    try:
        from . import _kernels_nb
    except ImportError:
        warnings.warn(
            "numba backend requested but numba is not importable; "
            "falling back to numpy kernels",
            RuntimeWarning,
            stacklevel=3,
        )
        return _kernels_np
    return _kernels_nb


def set_backend(name: str) -> None:
    """Select the kernel backend explicitly ('numba' or 'numpy')."""
    if name not in _BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; expected one of {_BACKENDS}")
    global _active_name, _active_mod
    _active_mod = _load(name)
    _active_name = "numpy" if _active_mod is _kernels_np else "numba"


def active_backend() -> str:
    """Name of the backend in use ('numba' or 'numpy')."""
    if _active_name is None:
        env = os.environ.get("PROPEVAL_BACKEND")
        if env is not None and env not in _BACKENDS:
            raise ValueError(
                f"PROPEVAL_BACKEND={env!r} not understood; expected one of {_BACKENDS}"
            )
        set_backend(env or "numba")
    return _active_name  # type: ignore[return-value]


def _mod() -> ModuleType:
    active_backend()
    return _active_mod  # type: ignore[return-value]


def merge_sorted_intervals(starts, ends):
    return _mod().merge_sorted_intervals(starts, ends)


def pair_overlap_sums(pred_starts, pred_ends, gold_starts, gold_ends):
    return _mod().pair_overlap_sums(pred_starts, pred_ends, gold_starts, gold_ends)


def vote_counts(length, starts, ends):
    return _mod().vote_counts(length, starts, ends)


def runs_at_least(counts, threshold):
    return _mod().runs_at_least(counts, threshold)

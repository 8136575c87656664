"""Kernel backend selection.

``PBS_SCHED_BACKEND`` picks the implementation at import time: ``numba``
(default when numba imports) or ``numpy``.  Both give identical output.
"""
import os

from . import _kernels_numpy

BACKEND = os.environ.get("PBS_SCHED_BACKEND", "numba").strip().lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"PBS_SCHED_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")

if BACKEND == "numba":
    try:
        from . import _kernels_numba as kernels
    except ImportError:  # numba not installed
        BACKEND = "numpy"
        kernels = _kernels_numpy
else:
    kernels = _kernels_numpy


def get_kernels(name=None):
    """Return the kernel module for ``name`` (default: the active backend)."""
    if name is None:
        return kernels
    if name == "numpy":
        return _kernels_numpy
    if name == "numba":
        from . import _kernels_numba
        return _kernels_numba
    raise ValueError(f"unknown backend {name!r}")

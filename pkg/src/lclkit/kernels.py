"""Brute-force coloring kernel with a compiled core and a numpy fallback.

The compiled extension (``lclkit._oracle_kernel``, built from Cython) is
used when it imports; otherwise the numpy implementation in
``lclkit._kernels_py`` takes over.  Setting ``LCLKIT_PURE_PYTHON=1`` forces
the fallback.  Both return identical results: the first satisfying coloring
in odometer order and the number of colorings enumerated up to it.
"""

from __future__ import annotations

import os

import numpy as np

from lclkit import _kernels_py

SIGMA, PI, PROPER = _kernels_py.SIGMA, _kernels_py.PI, _kernels_py.PROPER
ROOT, ANCHOR = _kernels_py.ROOT, _kernels_py.ANCHOR
FAMILIES = {"sigma": SIGMA, "pi": PI, "proper": PROPER}

try:
    if os.environ.get("LCLKIT_PURE_PYTHON"):
        raise ImportError("pure-Python backend forced")
    from lclkit._oracle_kernel import first_solution as _compiled_first_solution
except ImportError:
    _compiled_first_solution = None

BACKEND = "cython" if _compiled_first_solution is not None else "python"


def available_backends() -> list[str]:
    return ["cython", "python"] if _compiled_first_solution is not None else ["python"]


def first_solution(family, k, left, right, nbr, flags, levels, limit=None, backend=None):
    """Return ``(coloring or None, examined)`` for the given rule family."""
    backend = backend or BACKEND
    args = (
        int(family),
        int(k),
        np.ascontiguousarray(left, dtype=np.int32),
        np.ascontiguousarray(right, dtype=np.int32),
        np.ascontiguousarray(nbr, dtype=np.int32),
        np.ascontiguousarray(flags, dtype=np.int8),
        np.ascontiguousarray(levels, dtype=np.int8),
    )
    if backend == "cython":
        if _compiled_first_solution is None:
            raise RuntimeError("compiled kernel is not built")
        return _compiled_first_solution(*args, limit)
    if backend == "python":
        return _kernels_py.first_solution(*args, limit)
    raise ValueError(f"unknown backend {backend!r}")

"""Backend selection for the hot enumeration loops.

The compiled extension ``linset._ckernels`` is used when importable; the
NumPy module ``linset._kernels_py`` is the fallback. Set
``LINSET_PURE_PYTHON=1`` to force the fallback.
"""

from __future__ import annotations

import os

from . import _kernels_py

_backend = _kernels_py
BACKEND = "python"

if os.environ.get("LINSET_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ckernels as _backend  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on the build
        pass


def available_backends() -> dict:
    out = {"python": _kernels_py}
    try:
        from . import _ckernels

        out["cython"] = _ckernels
    except ImportError:  # pragma: no cover
        pass
    return out


def combination_keys(basis, scalars, tables):
    return _backend.combination_keys(basis, scalars, tables.add, tables.mul, tables.inv, tables.N)


def lines_through(points, tables):
    return _backend.lines_through(points, tables.add, tables.mul, tables.inv, tables.neg, tables.N)


def count_reduced(sizes, gcd, monic):
    return _backend.count_reduced(sizes, gcd, monic)

"""Backend selection for the jet kernels.

The compiled extension is used when it imports; otherwise, or when the
environment variable ``STARLOOP_KERNELS=python`` is set, the numpy
implementation is used.  Both backends share one contract and are checked
against each other in the test suite.
"""

import os

import numpy as np

from . import _kernels_py

try:
    if os.environ.get("STARLOOP_KERNELS", "").lower() == "python":
        raise ImportError("compiled kernels disabled by STARLOOP_KERNELS")
    from . import _jetcore
except ImportError:
    _jetcore = None

BACKEND = "cython" if _jetcore is not None else "python"

check_invertible = _kernels_py.check_invertible


def _c(x):
    return np.ascontiguousarray(x, dtype=complex)


def jet_mul(a, b, order, backend=None):
    """Truncated noncommutative Cauchy product of two jet stacks."""
    if (backend or BACKEND) == "cython":
        return _jetcore.jet_mul(_c(a), _c(b), order)
    return _kernels_py.jet_mul(a, b, order)


def jet_inv(a, order, inv0, backend=None):
    if (backend or BACKEND) == "cython":
        return _jetcore.jet_inv(_c(a), order, _c(inv0))
    return _kernels_py.jet_inv(a, order, inv0)


def available_backends():
    return ("python", "cython") if _jetcore is not None else ("python",)

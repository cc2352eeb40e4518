"""Hot numeric kernels: direct grid convolution and ordered matrix-chain application.

Both kernels exist twice: a numba-compiled version and a pure-numpy fallback.
The numpy path is selected when the environment variable
``CHERNOFF_LAB_NO_NUMBA`` is set to anything but ``0``/empty, or when numba
is not importable.  ``USING_NUMBA`` reports which path is active.

``benchmarks/bench_kernels.py`` times the two paths against each other.
"""

from __future__ import annotations

import os

import numpy as np

_env = os.environ.get("CHERNOFF_LAB_NO_NUMBA", "").strip()
_numba_disabled = _env not in ("", "0")

USING_NUMBA = False

if not _numba_disabled:
    try:
        from numba import njit, prange

        USING_NUMBA = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        USING_NUMBA = False


def _conv_full_numpy(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.convolve(a, b)


def _apply_chain_numpy(mats: np.ndarray, idx: np.ndarray, x: np.ndarray) -> np.ndarray:
    y = x.copy()
    for i in range(idx.shape[0] - 1, -1, -1):
        y = mats[idx[i]] @ y
    return y


if USING_NUMBA:

    @njit(parallel=True, cache=True)
    def _conv_full_numba(a, b):  # pragma: no cover - exercised via conv_full
        n = a.shape[0]
        m = b.shape[0]
        out = np.empty(n + m - 1)
        for p in prange(n + m - 1):
            lo = p - m + 1
            if lo < 0:
                lo = 0
            hi = p
            if hi > n - 1:
                hi = n - 1
            s = 0.0
            for k in range(lo, hi + 1):
                s += a[k] * b[p - k]
            out[p] = s
        return out

    @njit(cache=True)
    def _apply_chain_numba(mats, idx, x):  # pragma: no cover - exercised via apply_chain
        y = x.copy()
        for i in range(idx.shape[0] - 1, -1, -1):
            y = mats[idx[i]] @ y
        return y


def conv_full(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Full discrete convolution of two 1-D float64 arrays (length n+m-1)."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    if USING_NUMBA:
        return _conv_full_numba(a, b)
    return _conv_full_numpy(a, b)


def apply_chain(mats: np.ndarray, idx: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Apply the matrix chain mats[idx[0]] @ ... @ mats[idx[-1]] @ x.

    Factors act on ``x`` right to left: ``idx[-1]`` first.  ``mats`` is a
    (k, d, d) complex stack of the distinct factors, ``idx`` maps chain
    position to stack slot.
    """
    mats = np.ascontiguousarray(mats, dtype=np.complex128)
    idx = np.ascontiguousarray(idx, dtype=np.int64)
    x = np.ascontiguousarray(x, dtype=np.complex128)
    if USING_NUMBA:
        return _apply_chain_numba(mats, idx, x)
    return _apply_chain_numpy(mats, idx, x)

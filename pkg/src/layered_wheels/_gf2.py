"""Packed-word GF(2) elimination kernel.

Rows are stored as little-endian 64-bit words (bit j of word w = column
64*w + j).  Two interchangeable implementations are provided: a numba
@njit kernel (default) and a vectorized pure-numpy fallback.  Set
LAYERED_WHEELS_PURE_NUMPY=1 to force the numpy path, e.g. on platforms
where numba is unavailable or for benchmarking (see benchmarks/bench_gf2.py).
"""

from __future__ import annotations

import os

import numpy as np

_WORD = 64
_FORCE_NUMPY = os.environ.get("LAYERED_WHEELS_PURE_NUMPY", "") not in ("", "0")

try:  # pragma: no cover - import guard
    if _FORCE_NUMPY:
        raise ImportError("pure-numpy path forced by env flag")
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    _HAVE_NUMBA = False


def pack_rows(row_bits: list[int], ncols: int) -> np.ndarray:
    """Pack python-int row bitmasks into a (nrows, nwords) uint64 array."""
    nwords = max(1, (ncols + _WORD - 1) // _WORD)
    out = np.zeros((len(row_bits), nwords), dtype=np.uint64)
    mask = (1 << _WORD) - 1
    for i, bits in enumerate(row_bits):
        w = 0
        while bits:
            out[i, w] = bits & mask
            bits >>= _WORD
            w += 1
    return out


def _rank_words_numpy(words: np.ndarray, ncols: int) -> int:
    """Forward elimination on packed rows, vectorized over rows per pivot."""
    m = words.copy()
    nrows = m.shape[0]
    rank = 0
    for col in range(ncols):
        if rank == nrows:
            break
        w, b = divmod(col, _WORD)
        colbits = (m[rank:, w] >> np.uint64(b)) & np.uint64(1)
        nz = np.nonzero(colbits)[0]
        if nz.size == 0:
            continue
        p = rank + int(nz[0])
        if p != rank:
            m[[rank, p]] = m[[p, rank]]
        below = rank + 1 + np.nonzero((m[rank + 1 :, w] >> np.uint64(b)) & np.uint64(1))[0]
        if below.size:
            m[below] ^= m[rank]
        rank += 1
    return rank


if _HAVE_NUMBA:

    @njit(cache=True)
    def _rank_words_jit(m, ncols):  # pragma: no cover - executed under numba
        nrows = m.shape[0]
        nwords = m.shape[1]
        rank = 0
        for col in range(ncols):
            if rank == nrows:
                break
            w = col >> 6
            bit = np.uint64(1) << np.uint64(col & 63)
            pivot = -1
            for r in range(rank, nrows):
                if m[r, w] & bit:
                    pivot = r
                    break
            if pivot < 0:
                continue
            if pivot != rank:
                for j in range(nwords):
                    tmp = m[rank, j]
                    m[rank, j] = m[pivot, j]
                    m[pivot, j] = tmp
            for r in range(rank + 1, nrows):
                if m[r, w] & bit:
                    for j in range(nwords):
                        m[r, j] ^= m[rank, j]
            rank += 1
        return rank


def kernel_name() -> str:
    """Identify the active elimination kernel ("numba" or "numpy")."""
    return "numba" if _HAVE_NUMBA else "numpy"


def rank_words(words: np.ndarray, ncols: int) -> int:
    """GF(2) rank of packed rows; the input array is not modified."""
    if words.shape[0] == 0 or ncols == 0:
        return 0
    if _HAVE_NUMBA:
        return int(_rank_words_jit(words.copy(), ncols))
    return _rank_words_numpy(words, ncols)


def rank_of_rows(row_bits: list[int], ncols: int) -> int:
    """GF(2) rank of rows given as python-int bitmasks."""
    if not row_bits or ncols == 0:
        return 0
    return rank_words(pack_rows(row_bits, ncols), ncols)

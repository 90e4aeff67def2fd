"""Bitmask subsets of group elements.

A subset of a group of order n is a Python int whose bit i is set iff
element i belongs to the subset.  Plain int arithmetic gives word-parallel
set algebra (union ``|``, intersection ``&``, subset ``a & ~b == 0``), and
ints hash cheaply, which the lattice dedup relies on.  Conversions to and
from numpy index arrays happen only at the vectorised boundaries.
"""

from __future__ import annotations

import numpy as np

_BIT = [1 << i for i in range(512)]


def mask_from_indices(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << int(i)
    return m


def mask_from_array(arr: np.ndarray) -> int:
    if arr.size == 0:
        return 0
    n = int(arr.max()) + 1
    buf = np.zeros(n, dtype=bool)
    buf[arr] = True
    return int.from_bytes(np.packbits(buf, bitorder="little").tobytes(), "little")


def indices_of(mask: int, n: int) -> np.ndarray:
    """Element indices of ``mask`` as a sorted int64 array."""
    nbytes = (n + 7) // 8
    raw = np.frombuffer(mask.to_bytes(nbytes, "little"), dtype=np.uint8)
    bits = np.unpackbits(raw, bitorder="little")[:n]
    return np.flatnonzero(bits)


def popcount(mask: int) -> int:
    return mask.bit_count()


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_to_words(mask: int, nwords: int) -> np.ndarray:
    raw = mask.to_bytes(nwords * 8, "little")
    return np.frombuffer(raw, dtype=np.uint64).copy()


def words_matrix(masks, n: int) -> np.ndarray:
    """Stack masks into an (L, W) uint64 matrix for vectorised subset scans."""
    nwords = (n + 63) // 64
    out = np.empty((len(masks), nwords), dtype=np.uint64)
    for i, m in enumerate(masks):
        out[i] = mask_to_words(m, nwords)
    return out


def subset_scan(words: np.ndarray, mask: int, n: int) -> np.ndarray:
    """Boolean vector: rows of ``words`` that are subsets of ``mask``."""
    w = mask_to_words(mask, words.shape[1])
    return ((words & w) == words).all(axis=1)


def superset_scan(words: np.ndarray, mask: int, n: int) -> np.ndarray:
    """Boolean vector: rows of ``words`` that contain ``mask``."""
    w = mask_to_words(mask, words.shape[1])
    return ((words & w) == w).all(axis=1)

"""Word-packed vertex set helpers shared by both compute backends.

Vertex sets are stored as little-endian arrays of uint64 words: vertex v
lives in word v >> 6 at bit v & 63.
"""

import numpy as np

_ONE = np.uint64(1)
_SIX = np.uint64(6)
_SIXTY_THREE = np.uint64(63)


def word_count(n: int) -> int:
    """Number of 64-bit words needed for n vertices (at least one)."""
    return max(1, (n + 63) >> 6)


def mask_from_ids(ids, n: int) -> np.ndarray:
    """Pack an iterable of vertex ids into a word array."""
    words = np.zeros(word_count(n), dtype=np.uint64)
    for v in ids:
        words[v >> 6] |= _ONE << np.uint64(v & 63)
    return words


def ids_from_mask(words: np.ndarray) -> list:
    """Unpack a word array into a sorted list of vertex ids."""
    out = []
    for w, word in enumerate(words):
        word = int(word)
        base = w << 6
        while word:
            low = word & -word
            out.append(base + low.bit_length() - 1)
            word ^= low
    return out


def full_mask(n: int) -> np.ndarray:
    """Word array with bits 0..n-1 set."""
    words = np.zeros(word_count(n), dtype=np.uint64)
    full, rem = divmod(n, 64)
    words[:full] = np.uint64(0xFFFFFFFFFFFFFFFF)
    if rem:
        words[full] = (_ONE << np.uint64(rem)) - _ONE
    return words


def popcount(words: np.ndarray) -> int:
    """Total number of set bits."""
    return int(np.bitwise_count(words).sum())


def has_bit(words: np.ndarray, v: int) -> bool:
    return bool((words[v >> 6] >> np.uint64(v & 63)) & _ONE)

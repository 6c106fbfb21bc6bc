"""Pure-numpy fallback for the search kernels.

Same contract as `_kernels_numba`; used when the env var SECURESET_BACKEND
is set to "numpy" or when numba is unavailable.
"""

import numpy as np

_U1 = np.uint64(1)


def witness_search(nbhd, s_words, att_words, members, prune):
    """See `_kernels_numba.witness_search`; identical semantics."""
    m = int(members.shape[0])
    w = int(s_words.shape[0])

    cov = np.zeros((m + 2, w), dtype=np.uint64)
    xs = np.zeros((m + 2, w), dtype=np.uint64)
    atts = np.zeros(m + 2, dtype=np.int64)
    defs = np.zeros(m + 2, dtype=np.int64)
    pos = np.zeros(m + 2, dtype=np.int64)
    sp = 1

    # Static per-member attacker rows; the bound only subtracts coverage.
    att_rows = nbhd[members] & att_words if m else np.zeros((0, w), np.uint64)
    mem_word = (members >> 6).astype(np.int64) if m else members
    mem_bit = (members & 63).astype(np.uint64) if m else members

    while sp > 0:
        sp -= 1
        p = int(pos[sp])
        if atts[sp] > defs[sp]:
            return 1, xs[sp].copy()
        if p >= m:
            continue

        row = cov[sp]
        if prune:
            free = np.bitwise_count(att_rows[p:] & ~row).sum(axis=1).astype(np.int64)
            uncovered = (row[mem_word[p:]] >> mem_bit[p:]) & _U1 == 0
            vals = free - uncovered
            surplus = int(atts[sp] - defs[sp]) + int(vals[vals > 0].sum())
            if surplus <= 0:
                continue

        v = int(members[p])
        covered_all = not np.any(nbhd[v] & ~row)
        if prune and covered_all:
            pos[sp] = p + 1
            sp += 1
            continue

        pos[sp] = p + 1
        sp += 1
        base = sp - 1
        new = cov[base] | nbhd[v]
        delta = new & ~cov[base]
        cov[sp] = new
        xs[sp] = xs[base]
        xs[sp, v >> 6] |= _U1 << np.uint64(v & 63)
        atts[sp] = atts[base] + int(np.bitwise_count(delta & att_words).sum())
        defs[sp] = defs[base] + int(np.bitwise_count(delta & s_words).sum())
        pos[sp] = p + 1
        sp += 1

    return 0, np.zeros(w, dtype=np.uint64)

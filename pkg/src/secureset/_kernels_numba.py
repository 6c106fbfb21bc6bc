"""JIT-compiled search kernels.

Same contract as `_kernels_numpy`; selected via `secureset.backend`.
"""

import numpy as np
from numba import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_U1 = np.uint64(1)
_U2 = np.uint64(2)
_U4 = np.uint64(4)
_U56 = np.uint64(56)
_U63 = np.uint64(63)


@njit(cache=True, inline="always")
def _popcnt(x):
    x = x - ((x >> _U1) & _M1)
    x = (x & _M2) + ((x >> _U2) & _M2)
    x = (x + (x >> _U4)) & _M4
    return np.int64((x * _H01) >> _U56)


@njit(cache=True)
def witness_search(nbhd, s_words, att_words, members, prune):
    """Depth-first search for a subset of S with more attackers than defenders.

    nbhd: (n, w) closed-neighborhood bit rows; s_words / att_words: packed S
    and V \\ S; members: the vertices of S in decision order.  With prune=False
    the search enumerates every nonempty subset of `members` in lexicographic
    order of the decision sequence and reports the first insecure one; with
    prune=True subtrees whose optimistic attacker surplus cannot become
    positive are cut, and decisions that add no new coverage skip their
    include branch.

    Returns (found, x_words): found is 1 with the witness subset packed in
    x_words, or 0 with zeros.
    """
    m = members.shape[0]
    w = s_words.shape[0]

    cov = np.zeros((m + 2, w), dtype=np.uint64)
    xs = np.zeros((m + 2, w), dtype=np.uint64)
    atts = np.zeros(m + 2, dtype=np.int64)
    defs = np.zeros(m + 2, dtype=np.int64)
    pos = np.zeros(m + 2, dtype=np.int64)
    sp = 1  # root frame: empty subset, nothing covered

    while sp > 0:
        sp -= 1
        p = pos[sp]
        if atts[sp] > defs[sp]:
            return 1, xs[sp].copy()
        if p >= m:
            continue

        if prune:
            surplus = atts[sp] - defs[sp]
            best = np.int64(0)
            for i in range(p, m):
                v = members[i]
                cnt = np.int64(0)
                for j in range(w):
                    cnt += _popcnt(nbhd[v, j] & att_words[j] & ~cov[sp, j])
                if (cov[sp, v >> 6] >> np.uint64(v & _U63)) & _U1 == 0:
                    cnt -= 1  # including v covers v itself, a defender
                if cnt > 0:
                    best += cnt
            if surplus + best <= 0:
                continue

        v = members[p]
        covered_all = True
        for j in range(w):
            if nbhd[v, j] & ~cov[sp, j] != 0:
                covered_all = False
                break
        if prune and covered_all:
            # Including v changes no count; the exclude branch suffices.
            pos[sp] = p + 1
            sp += 1
            continue

        # Exclude branch reuses the popped frame.
        pos[sp] = p + 1
        sp += 1
        # Include branch on top, so it is explored first.
        base = sp - 1
        da = np.int64(0)
        dd = np.int64(0)
        for j in range(w):
            old = cov[base, j]
            new = old | nbhd[v, j]
            delta = new & ~old
            da += _popcnt(delta & att_words[j])
            dd += _popcnt(delta & s_words[j])
            cov[sp, j] = new
            xs[sp, j] = xs[base, j]
        xs[sp, v >> 6] |= _U1 << np.uint64(v & _U63)
        atts[sp] = atts[base] + da
        defs[sp] = defs[base] + dd
        pos[sp] = p + 1
        sp += 1

    return 0, np.zeros(w, dtype=np.uint64)

"""Decision procedure for all eight problem variants.

Candidates are generated by constraint propagation instead of raw subset
enumeration: necessary vertices are fixed in, forbidden vertices out, and
complementary pairs are two-colored component by component (chained pairs
force alternation, so each undetermined component contributes one binary
choice).  Remaining free vertices are enumerated by increasing candidate
size, so the first secure candidate found is minimum-size and, within that
size, lexicographically first.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from math import comb
from typing import Iterator, List, Optional, Tuple

import numpy as np

from ._bitops import full_mask, mask_from_ids
from .errors import BudgetError, InputError
from .graph import Graph
from .instance import Instance, Solution
from .security import find_attack_witness

DEFAULT_CANDIDATE_BUDGET = 1 << 26


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a solve run: the solution (if any) and search statistics."""

    solution: Optional[Solution]
    candidates_examined: int
    variant: str
    note: str = ""


class _Propagation:
    """Forced in/out assignment plus the undetermined pair components."""

    def __init__(self, fixed_in, fixed_out, free_components, free_vertices, feasible):
        self.fixed_in = fixed_in
        self.fixed_out = fixed_out
        self.free_components = free_components  # list of (side_a, side_b) vertex sets
        self.free_vertices = free_vertices  # sorted, unconstrained vertices
        self.feasible = feasible


def _propagate(inst: Instance) -> _Propagation:
    """Two-color the pair-constraint graph around the forced vertices."""
    forced = {}
    for v in inst.necessary:
        forced[v] = True
    for v in inst.forbidden:
        forced[v] = False

    adj = {}
    in_pairs = set()
    for a, b in inst.pairs:
        if a == b:
            # Exactly one member of (a, a) simply forces a into the solution.
            if forced.get(a) is False:
                return _Propagation(set(), set(), [], [], False)
            forced[a] = True
            continue
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
        in_pairs.update((a, b))

    fixed_in = {v for v, val in forced.items() if val}
    fixed_out = {v for v, val in forced.items() if not val}
    seen = set()
    free_components = []
    for start in sorted(in_pairs):
        if start in seen:
            continue
        comp = {}
        queue = [(start, True)]
        comp[start] = True
        while queue:
            v, color = queue.pop()
            for u in adj[v]:
                if u in comp:
                    if comp[u] == color:
                        return _Propagation(set(), set(), [], [], False)
                else:
                    comp[u] = not color
                    queue.append((u, not color))
        seen.update(comp)

        anchor = None
        for v, color in comp.items():
            if v in forced:
                want = forced[v]
                if anchor is None:
                    anchor = want == color
                elif anchor != (want == color):
                    return _Propagation(set(), set(), [], [], False)
        side_true = sorted(v for v, c in comp.items() if c)
        side_false = sorted(v for v, c in comp.items() if not c)
        if anchor is None:
            free_components.append((side_true, side_false))
        elif anchor:
            fixed_in.update(side_true)
            fixed_out.update(side_false)
        else:
            fixed_in.update(side_false)
            fixed_out.update(side_true)

    constrained = fixed_in | fixed_out | in_pairs
    free_vertices = sorted(v for v in range(inst.graph.n) if v not in constrained)
    return _Propagation(fixed_in, fixed_out, free_components, free_vertices, True)


def _count_candidates(inst: Instance, prop: _Propagation) -> int:
    """Exact number of candidates the enumeration would visit.

    Counts by dynamic programming over the component side sizes so that the
    count itself stays polynomial even when the choice space is astronomic.
    """
    nf = len(prop.free_vertices)
    ways = {len(prop.fixed_in): 1}  # fixed-size -> number of choice combos
    for side_a, side_b in prop.free_components:
        nxt = {}
        for base, cnt in ways.items():
            for side in (side_a, side_b):
                key = base + len(side)
                nxt[key] = nxt.get(key, 0) + cnt
        ways = nxt
    sizes = [inst.k] if inst.exact else range(1, inst.k + 1)
    total = 0
    for base, cnt in ways.items():
        for m in sizes:
            r = m - base
            if 0 <= r <= nf:
                total += cnt * comb(nf, r)
    return total


def _candidate_streams(
    prop: _Propagation, m: int
) -> List[Iterator[Tuple[int, ...]]]:
    """Per-choice generators of size-m candidates, each in ascending order."""
    streams = []
    free = prop.free_vertices
    for choice in itertools.product((0, 1), repeat=len(prop.free_components)):
        fixed = set(prop.fixed_in)
        for comp, side in zip(prop.free_components, choice):
            fixed.update(comp[side])
        r = m - len(fixed)
        if r < 0 or r > len(free):
            continue
        fixed_tuple = tuple(sorted(fixed))

        def stream(fixed_tuple=fixed_tuple, r=r):
            if r == 0:
                yield fixed_tuple
                return
            for extra in itertools.combinations(free, r):
                yield tuple(sorted(fixed_tuple + extra))

        streams.append(stream())
    return streams


def solve(inst: Instance, max_candidates: int = DEFAULT_CANDIDATE_BUDGET) -> SolveReport:
    """Find the minimum-size (then lexicographically first) qualifying secure set.

    Returns a report whose solution is None when no qualifying set exists.
    Instances whose candidate space exceeds `max_candidates` are refused
    with a BudgetError rather than searched unboundedly.
    """
    variant = inst.variant()
    if len(inst.necessary) > inst.k:
        return SolveReport(
            None,
            0,
            variant,
            note=f"{len(inst.necessary)} necessary vertices cannot fit in k={inst.k}",
        )
    prop = _propagate(inst)
    if not prop.feasible:
        return SolveReport(None, 0, variant, note="pair constraints are contradictory")

    n_comp = len(prop.free_components)
    if 2 ** n_comp > max_candidates:
        raise BudgetError(
            f"2^{n_comp} pair choices exceed the budget of {max_candidates}"
        )
    total = _count_candidates(inst, prop)
    if total > max_candidates:
        raise BudgetError(
            f"{total} candidates exceed the budget of {max_candidates}"
        )

    g = inst.graph
    masks = g.closed_masks
    all_words = full_mask(g.n)
    examined = 0
    sizes = [inst.k] if inst.exact else range(1, inst.k + 1)
    for m in sizes:
        streams = _candidate_streams(prop, m)
        if not streams:
            continue
        merged = streams[0] if len(streams) == 1 else heapq.merge(*streams)
        previous = None
        for cand in merged:
            if cand == previous:  # identical candidates from distinct choices
                continue
            previous = cand
            examined += 1
            if _secure_candidate(g, masks, all_words, cand):
                return SolveReport(Solution(frozenset(cand)), examined, variant)
    return SolveReport(None, examined, variant)


def _secure_candidate(g: Graph, masks, all_words, cand: Tuple[int, ...]) -> bool:
    """Alliance-first security check of one candidate tuple."""
    members = np.array(cand, dtype=np.int64)
    s_words = mask_from_ids(cand, g.n)
    att_words = ~s_words & all_words
    rows = masks[members]
    defs = np.bitwise_count(rows & s_words).sum(axis=1)
    atts = np.bitwise_count(rows & att_words).sum(axis=1)
    if (atts > defs).any():
        return False
    return find_attack_witness(g, frozenset(cand)) is None


def min_nonempty_secure_set(g: Graph) -> Solution:
    """Smallest non-empty secure set (always exists: the full vertex set)."""
    if g.n == 0:
        raise InputError("the graph has no vertices")
    report = solve(Instance(g, k=g.n))
    assert report.solution is not None
    return report.solution

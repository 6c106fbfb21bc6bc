"""Deciding whether a vertex set is secure, with attack witnesses.

A set S is secure when every subset X of S has at least as many defenders
(members of N[X] in S) as attackers (members of N[X] outside S).  An
AttackWitness is a subset violating that balance, certifying insecurity.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Tuple

import numpy as np

from . import backend
from ._bitops import full_mask, ids_from_mask, mask_from_ids, popcount
from .errors import BudgetError, InputError
from .graph import Graph, closed_neighborhood

# Hard cap on |S| for the literal all-subsets enumeration; beyond it the
# caller must use the pruned search.
EXHAUSTIVE_SUBSET_CAP = 25

# Injective assignment of attackers to the defenders that repel them.
RepelMatching = Mapping[int, int]


@dataclass(frozen=True)
class AttackWitness:
    """A subset of S with strictly more attackers than defenders."""

    subset: frozenset
    defenders: int
    attackers: int

    def __post_init__(self):
        if self.defenders >= self.attackers:
            raise InputError("a witness needs more attackers than defenders")


def attack_balance(g: Graph, s: Iterable[int], x: Iterable[int]) -> Tuple[int, int]:
    """(defenders, attackers) of subset x within candidate s, exactly."""
    s = g.check_vertex_set(s)
    x = g.check_vertex_set(x)
    if not x <= s:
        raise InputError(f"subset contains non-members {sorted(x - s)}")
    cov = closed_neighborhood(g, x)
    return len(cov & s), len(cov - s)


def _masks_for(g: Graph, s: frozenset):
    s_words = mask_from_ids(s, g.n)
    att_words = ~s_words & full_mask(g.n)
    return s_words, att_words


def _singleton_witness(g: Graph, s: frozenset) -> Optional[AttackWitness]:
    """Fast vectorized scan of all single-vertex subsets."""
    members = np.fromiter(sorted(s), dtype=np.int64, count=len(s))
    s_words, att_words = _masks_for(g, s)
    rows = g.closed_masks[members]
    defs = np.bitwise_count(rows & s_words).sum(axis=1)
    atts = np.bitwise_count(rows & att_words).sum(axis=1)
    bad = np.nonzero(atts > defs)[0]
    if bad.size == 0:
        return None
    i = int(bad[0])
    return AttackWitness(frozenset([int(members[i])]), int(defs[i]), int(atts[i]))


def find_attack_witness(g: Graph, s: Iterable[int]) -> Optional[AttackWitness]:
    """A witness that s is insecure, or None iff s is secure.

    Singleton subsets are scanned first; the remaining subsets are searched
    by branch and bound over the members of s, pruning subtrees where even
    crediting every undecided member with its best-case attacker gain cannot
    produce a deficit.  Members are decided in order of decreasing attacker
    degree, which empirically tightens the bound early.
    """
    s = g.check_vertex_set(s)
    if not s:
        return None
    hit = _singleton_witness(g, s)
    if hit is not None:
        return hit
    s_words, att_words = _masks_for(g, s)
    att_deg = {
        v: popcount(g.closed_masks[v] & att_words) for v in s
    }
    members = sorted(s, key=lambda v: (-att_deg[v], v))
    members = np.array(members, dtype=np.int64)
    found, x_words = backend.witness_search(
        g.closed_masks, s_words, att_words, members, True
    )
    if not found:
        return None
    subset = frozenset(ids_from_mask(x_words))
    defenders, attackers = attack_balance(g, s, subset)
    return AttackWitness(subset, defenders, attackers)


def exhaustive_witness_oracle(g: Graph, s: Iterable[int]) -> Optional[AttackWitness]:
    """Literal enumeration of all subsets of s in lexicographic order.

    Returns the first insecure subset under the ascending-id member order,
    or None.  Refuses sets larger than EXHAUSTIVE_SUBSET_CAP.
    """
    s = g.check_vertex_set(s)
    if len(s) > EXHAUSTIVE_SUBSET_CAP:
        raise BudgetError(
            f"|S|={len(s)} exceeds the exhaustive cap of {EXHAUSTIVE_SUBSET_CAP}; "
            "use find_attack_witness"
        )
    if not s:
        return None
    s_words, att_words = _masks_for(g, s)
    members = np.array(sorted(s), dtype=np.int64)
    found, x_words = backend.witness_search(
        g.closed_masks, s_words, att_words, members, False
    )
    if not found:
        return None
    subset = frozenset(ids_from_mask(x_words))
    defenders, attackers = attack_balance(g, s, subset)
    return AttackWitness(subset, defenders, attackers)


def is_secure(g: Graph, s: Iterable[int]) -> bool:
    """True iff no subset of s is a successful attack (empty s is secure)."""
    return find_attack_witness(g, s) is None


def is_defensive_alliance(g: Graph, s: Iterable[int]) -> bool:
    """Security restricted to single-vertex subsets; rejects empty s."""
    s = g.check_vertex_set(s)
    if not s:
        raise InputError("a defensive alliance must be non-empty")
    return _singleton_witness(g, s) is None


def verify_matching(
    g: Graph, s: Iterable[int], x: Iterable[int], matching: RepelMatching
) -> bool:
    """Check that `matching` repels every attack on x.

    Valid when it is injective, assigns every attacker in N[x] \\ s a
    defender, and every assigned defender lies in N[x] ∩ s.  Ids outside
    N[x] are rejected as input errors.
    """
    s = g.check_vertex_set(s)
    x = g.check_vertex_set(x)
    if not x <= s:
        raise InputError(f"subset contains non-members {sorted(x - s)}")
    cov = closed_neighborhood(g, x)
    attackers = cov - s
    defenders = cov & s
    for a, d in matching.items():
        g._check_vertex(a)
        g._check_vertex(d)
        if a not in cov or d not in cov:
            raise InputError(f"matching mentions {a}->{d} outside N[X]")
    if set(matching.keys()) != attackers:
        return False
    images = list(matching.values())
    if len(set(images)) != len(images):
        return False
    return all(d in defenders for d in images)

"""Exists-forall quantified Boolean formulas with a 3-DNF matrix.

A formula is true when some assignment of the existential block makes the
disjunction of terms hold under every assignment of the universal block.
Literals are signed variable ids (negative = complemented), mirroring the
QDIMACS convention of 0-terminated literal lines.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from .errors import BudgetError, InputError, ParseError

# Exhaustive evaluation refuses formulas with more total variables than this.
EVAL_VARIABLE_CAP = 24

Assignment = Dict[int, bool]


@dataclass(frozen=True)
class QSat2Formula:
    existential: Tuple[int, ...]
    universal: Tuple[int, ...]
    terms: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        evars, uvars = set(self.existential), set(self.universal)
        if len(evars) != len(self.existential) or len(uvars) != len(self.universal):
            raise InputError("repeated variable inside a quantifier block")
        both = evars & uvars
        if both:
            raise InputError(f"variables {sorted(both)} appear in both blocks")
        if not self.terms:
            raise InputError("formula has no terms")
        for t in self.terms:
            if not 1 <= len(t) <= 3:
                raise InputError(f"term {t} must have 1..3 literals")
            for lit in t:
                if lit == 0 or abs(lit) not in evars | uvars:
                    raise InputError(f"literal {lit} uses an undeclared variable")

    @property
    def n_x(self) -> int:
        return len(self.existential)

    @property
    def n_y(self) -> int:
        return len(self.universal)

    @property
    def n_t(self) -> int:
        return len(self.terms)

    def existential_literals(self, term: Tuple[int, ...]) -> Tuple[int, ...]:
        evars = set(self.existential)
        return tuple(lit for lit in term if abs(lit) in evars)

    def universal_literals(self, term: Tuple[int, ...]) -> Tuple[int, ...]:
        uvars = set(self.universal)
        return tuple(lit for lit in term if abs(lit) in uvars)


@dataclass(frozen=True)
class TriviallyTrue:
    witness: Tuple[Tuple[int, bool], ...]

    def witness_assignment(self) -> Assignment:
        return dict(self.witness)


@dataclass(frozen=True)
class TriviallyFalse:
    pass


@dataclass(frozen=True)
class Normalized:
    formula: QSat2Formula


def normalize(f: QSat2Formula):
    """Drop unsatisfiable terms, then classify.

    Terms containing a variable and its complement can never hold and are
    removed.  No terms left means the formula is false outright; a remaining
    term with no universal literal makes it true outright (set that term's
    existential literals accordingly); otherwise the cleaned formula is
    returned.  Idempotent.
    """
    kept = []
    for t in f.terms:
        if any(-lit in t for lit in t):
            continue
        kept.append(t)
    if not kept:
        return TriviallyFalse()
    for t in kept:
        if not f.universal_literals(t):
            assign = {v: False for v in f.existential}
            for lit in f.existential_literals(t):
                assign[abs(lit)] = lit > 0
            return TriviallyTrue(tuple(sorted(assign.items())))
    if len(kept) == len(f.terms):
        return Normalized(f)
    return Normalized(QSat2Formula(f.existential, f.universal, tuple(kept)))


def term_satisfied(term: Tuple[int, ...], assignment: Assignment) -> bool:
    """True iff every literal of the term holds under the assignment."""
    for lit in term:
        try:
            value = assignment[abs(lit)]
        except KeyError:
            raise InputError(f"variable {abs(lit)} unassigned") from None
        if value != (lit > 0):
            return False
    return True


def _term_masks(f: QSat2Formula, variables: Tuple[int, ...], term) -> Tuple[int, int]:
    """(positive, negative) bit masks of the term restricted to `variables`."""
    index = {v: i for i, v in enumerate(variables)}
    pos = neg = 0
    for lit in term:
        i = index.get(abs(lit))
        if i is None:
            continue
        if lit > 0:
            pos |= 1 << i
        else:
            neg |= 1 << i
    return pos, neg


def eval_qsat2(
    f: QSat2Formula, cap: int = EVAL_VARIABLE_CAP
) -> Tuple[bool, Optional[Assignment]]:
    """Exhaustive truth of the formula over the full assignment table.

    Returns (truth, witness); the witness is the lexicographically first
    existential assignment (False before True, block order) whose every
    universal extension satisfies some term.
    """
    if f.n_x + f.n_y > cap:
        raise BudgetError(
            f"{f.n_x + f.n_y} variables exceed the evaluation cap of {cap}"
        )
    ex_masks = [_term_masks(f, f.existential, t) for t in f.terms]
    un_masks = [_term_masks(f, f.universal, t) for t in f.terms]

    n_y = f.n_y
    all_j = np.arange(1 << n_y, dtype=np.uint64)
    # Per-term boolean vector over all universal assignments.
    term_sat_j = [
        ((all_j & np.uint64(pos)) == np.uint64(pos)) & ((all_j & np.uint64(neg)) == 0)
        for pos, neg in un_masks
    ]

    for bits in itertools.product((False, True), repeat=f.n_x):
        i_mask = 0
        for i, b in enumerate(bits):
            if b:
                i_mask |= 1 << i
        covered = np.zeros(1 << n_y, dtype=bool)
        for t_idx, (pos, neg) in enumerate(ex_masks):
            if (i_mask & pos) == pos and (i_mask & neg) == 0:
                covered |= term_sat_j[t_idx]
                if covered.all():
                    break
        if covered.all():
            witness = {v: bits[i] for i, v in enumerate(f.existential)}
            return True, witness
    return False, None


def parse_qdnf(text: str) -> QSat2Formula:
    """Parse the qdnf format: header, one `e` line, one `a` line, term lines."""
    nvars = nterms = None
    existential = None
    universal = None
    terms = []

    def block(parts, lineno):
        if parts[-1] != "0":
            raise ParseError("quantifier line must end with 0", lineno)
        try:
            ids = [int(t) for t in parts[1:-1]]
        except ValueError:
            raise ParseError(f"non-integer variable in {parts!r}", lineno) from None
        for v in ids:
            if v <= 0 or (nvars is not None and v > nvars):
                raise ParseError(f"variable {v} out of range 1..{nvars}", lineno)
        return tuple(ids)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if nvars is not None:
                raise ParseError("duplicate header line", lineno)
            if len(parts) != 4 or parts[1] != "qdnf":
                raise ParseError(
                    f"malformed header {line!r}, expected 'p qdnf <nvars> <nterms>'",
                    lineno,
                )
            try:
                nvars, nterms = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer counts in header", lineno) from None
            continue
        if nvars is None:
            raise ParseError("line before the 'p qdnf' header", lineno)
        if parts[0] == "e":
            if existential is not None:
                raise ParseError("duplicate 'e' line", lineno)
            if universal is not None:
                raise ParseError("'e' line must precede the 'a' line", lineno)
            existential = block(parts, lineno)
        elif parts[0] == "a":
            if existential is None:
                raise ParseError("'a' line before the 'e' line", lineno)
            if universal is not None:
                raise ParseError("duplicate 'a' line", lineno)
            universal = block(parts, lineno)
        else:
            if universal is None:
                raise ParseError("term line before quantifier lines", lineno)
            if parts[-1] != "0":
                raise ParseError("term line must end with 0", lineno)
            try:
                lits = [int(t) for t in parts[:-1]]
            except ValueError:
                raise ParseError(f"non-integer literal in {line!r}", lineno) from None
            if not lits:
                raise ParseError("empty term", lineno)
            # Duplicate literals carry no information; collapse them.
            lits = list(dict.fromkeys(lits))
            if len(lits) > 3:
                raise ParseError(f"term has {len(lits)} literals, 3 allowed", lineno)
            for lit in lits:
                if lit == 0 or abs(lit) > nvars:
                    raise ParseError(f"literal {lit} out of range", lineno)
            terms.append(tuple(lits))

    if nvars is None:
        raise ParseError("missing 'p qdnf' header")
    if existential is None:
        raise ParseError("missing 'e' line")
    if universal is None:
        raise ParseError("missing 'a' line")
    if not terms:
        raise ParseError("formula has no terms")
    if len(terms) != nterms:
        raise ParseError(f"header declares {nterms} terms but {len(terms)} found")
    if len(existential) + len(universal) != nvars:
        raise ParseError(
            f"header declares {nvars} variables but "
            f"{len(existential) + len(universal)} are quantified"
        )
    try:
        return QSat2Formula(existential, universal, tuple(terms))
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def serialize_qdnf(f: QSat2Formula) -> str:
    lines = [f"p qdnf {f.n_x + f.n_y} {f.n_t}"]
    lines.append("e " + " ".join(str(v) for v in f.existential) + " 0")
    lines.append("a " + " ".join(str(v) for v in f.universal) + " 0")
    for t in f.terms:
        lines.append(" ".join(str(lit) for lit in t) + " 0")
    return "\n".join(lines) + "\n"


def format_witness(f: QSat2Formula, assignment: Assignment) -> str:
    """Witness line of signed existential literals, e.g. `v -1 2 3`."""
    lits = []
    for v in f.existential:
        try:
            lits.append(str(v if assignment[v] else -v))
        except KeyError:
            raise InputError(f"witness does not assign variable {v}") from None
    return "v " + " ".join(lits) + "\n" if lits else "v\n"


def parse_witness(text: str) -> Assignment:
    """Parse a `v <signed literals>` witness line into an assignment."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "v":
            raise ParseError(f"expected a 'v' line, got {line!r}", lineno)
        out = {}
        for tok in parts[1:]:
            try:
                lit = int(tok)
            except ValueError:
                raise ParseError(f"non-integer literal {tok!r}", lineno) from None
            if lit == 0:
                raise ParseError("literal 0 not allowed in a witness", lineno)
            if abs(lit) in out:
                raise ParseError(f"variable {abs(lit)} assigned twice", lineno)
            out[abs(lit)] = lit > 0
        return out
    raise ParseError("no 'v' line found")

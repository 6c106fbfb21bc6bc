"""Problem instances and the line-oriented instance / solution file formats."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import InputError, ParseError
from .graph import Graph

VARIANT_RANK = {"": 0, "F": 1, "FN": 2, "FNC": 3}


@dataclass(frozen=True)
class Instance:
    """A graph with a size bound and optional solution constraints.

    `forbidden` vertices may never be in a solution, `necessary` vertices must
    be in every solution, and each pair in `pairs` must contribute exactly one
    member.  With `exact` set, solutions must have size exactly k instead of
    at most k.  A vertex may appear both in a pair and in forbidden/necessary;
    the solver resolves such overlaps.
    """

    graph: Graph
    k: int
    exact: bool = False
    forbidden: frozenset = frozenset()
    necessary: frozenset = frozenset()
    pairs: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        g = self.graph
        if not 1 <= self.k <= g.n:
            raise InputError(f"k={self.k} outside 1..{g.n}")
        object.__setattr__(self, "forbidden", g.check_vertex_set(self.forbidden))
        object.__setattr__(self, "necessary", g.check_vertex_set(self.necessary))
        clash = self.forbidden & self.necessary
        if clash:
            raise InputError(
                f"vertices {sorted(clash)} are both forbidden and necessary; "
                "the instance is vacuously negative"
            )
        pairs = []
        for a, b in self.pairs:
            g._check_vertex(a)
            g._check_vertex(b)
            pairs.append((a, b))
        object.__setattr__(self, "pairs", tuple(pairs))

    def constraint_letters(self) -> str:
        """Minimal variant letters covering this instance's constraints."""
        if self.pairs:
            return "FNC"
        if self.necessary:
            return "FN"
        if self.forbidden:
            return "F"
        return ""

    def variant(self) -> str:
        """Human-readable variant descriptor, e.g. "ESS^FNC" or "SS"."""
        base = "ESS" if self.exact else "SS"
        letters = self.constraint_letters()
        return f"{base}^{letters}" if letters else base


@dataclass(frozen=True)
class Solution:
    """A candidate or confirmed solution vertex set."""

    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        if not self.members:
            raise InputError("a solution must be non-empty")


def parse_instance(text: str) -> Instance:
    """Parse the instance format.

    The first non-comment line must be the `p ss <n> <m>` header; all other
    directive lines may appear in any order after it.
    """
    n = m = None
    header_line = None
    edges = []
    edge_seen = set()
    k = None
    exact = False
    forbidden = set()
    necessary = set()
    pairs = []
    names = {}

    def vertex(tok: str, lineno: int) -> int:
        try:
            v = int(tok)
        except ValueError:
            raise ParseError(f"expected a vertex id, got {tok!r}", lineno) from None
        if not 1 <= v <= n:
            raise ParseError(f"vertex id {v} out of range 1..{n}", lineno)
        return v - 1

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "p":
            if header_line is not None:
                raise ParseError("duplicate header line", lineno)
            if len(parts) != 4 or parts[1] != "ss":
                raise ParseError(f"malformed header {line!r}, expected 'p ss <n> <m>'", lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"non-integer counts in header {line!r}", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("negative counts in header", lineno)
            header_line = lineno
            continue
        if header_line is None:
            raise ParseError(f"directive {tag!r} before the 'p ss' header", lineno)
        if tag == "e":
            if len(parts) != 3:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            u, v = vertex(parts[1], lineno), vertex(parts[2], lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u + 1}", lineno)
            key = (min(u, v), max(u, v))
            if key in edge_seen:
                raise ParseError(f"duplicate edge {u + 1} {v + 1}", lineno)
            edge_seen.add(key)
            edges.append(key)
        elif tag == "k":
            if k is not None:
                raise ParseError("duplicate k line", lineno)
            if len(parts) != 2:
                raise ParseError(f"malformed k line {line!r}", lineno)
            try:
                k = int(parts[1])
            except ValueError:
                raise ParseError(f"non-integer k {parts[1]!r}", lineno) from None
            if not 1 <= k <= n:
                raise ParseError(f"k={k} outside 1..{n}", lineno)
        elif tag == "exact":
            exact = True
        elif tag == "forbid":
            if len(parts) != 2:
                raise ParseError(f"malformed forbid line {line!r}", lineno)
            forbidden.add(vertex(parts[1], lineno))
        elif tag == "need":
            if len(parts) != 2:
                raise ParseError(f"malformed need line {line!r}", lineno)
            necessary.add(vertex(parts[1], lineno))
        elif tag == "comp":
            if len(parts) != 3:
                raise ParseError(f"malformed comp line {line!r}", lineno)
            pairs.append((vertex(parts[1], lineno), vertex(parts[2], lineno)))
        elif tag == "name":
            if len(parts) != 3:
                raise ParseError(f"malformed name line {line!r}", lineno)
            v = vertex(parts[1], lineno)
            if v in names:
                raise ParseError(f"duplicate name for vertex {v + 1}", lineno)
            names[v] = parts[2]
        else:
            raise ParseError(f"unknown directive {tag!r}", lineno)

    if header_line is None:
        raise ParseError("missing 'p ss <n> <m>' header")
    if len(edges) != m:
        raise ParseError(f"header declares {m} edges but {len(edges)} 'e' lines found")
    if k is None:
        raise ParseError("missing 'k' line")

    labels = [names.get(v, str(v + 1)) for v in range(n)]
    try:
        graph = Graph(n, edges, labels)
        return Instance(graph, k, exact, frozenset(forbidden), frozenset(necessary), tuple(pairs))
    except InputError as exc:
        raise ParseError(str(exc)) from exc


def serialize_instance(inst: Instance) -> str:
    """Canonical text form; `parse_instance` inverts it exactly."""
    g = inst.graph
    lines = [f"p ss {g.n} {g.edge_count}"]
    for u, v in g.edge_list():
        lines.append(f"e {u + 1} {v + 1}")
    lines.append(f"k {inst.k}")
    if inst.exact:
        lines.append("exact")
    for v in sorted(inst.forbidden):
        lines.append(f"forbid {v + 1}")
    for v in sorted(inst.necessary):
        lines.append(f"need {v + 1}")
    for a, b in inst.pairs:
        lines.append(f"comp {a + 1} {b + 1}")
    for v in range(g.n):
        if g.labels[v] != str(v + 1):
            lines.append(f"name {v + 1} {g.labels[v]}")
    return "\n".join(lines) + "\n"


def parse_solution(text: str, n: Optional[int] = None) -> Optional[frozenset]:
    """Parse a solution file: `s <v1> <v2> ...` or `s NONE` (None result)."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] != "s":
            raise ParseError(f"expected an 's' line, got {line!r}", lineno)
        if len(parts) == 2 and parts[1] == "NONE":
            return None
        try:
            ids = [int(t) for t in parts[1:]]
        except ValueError:
            raise ParseError(f"non-integer vertex id in {line!r}", lineno) from None
        out = set()
        for v in ids:
            if v < 1 or (n is not None and v > n):
                raise ParseError(f"vertex id {v} out of range", lineno)
            out.add(v - 1)
        return frozenset(out)
    raise ParseError("no 's' line found")


def serialize_solution(members: Optional[frozenset]) -> str:
    if members is None:
        return "s NONE\n"
    ids = " ".join(str(v + 1) for v in sorted(members))
    return f"s {ids}\n" if ids else "s\n"

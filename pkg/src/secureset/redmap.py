"""Provenance maps linking a reduction's output vertices to its input.

Each output vertex is either `("orig", input_id)` or
`("gadget", family, indices)`.  Gadget families form a closed vocabulary per
reduction kind; where an index denotes an input vertex it is 0-based in
memory and 1-based in files, like every other vertex reference.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Tuple

from .errors import InputError, ParseError

KINDS = (
    "qsat2-essfnc",
    "essfnc-essfn",
    "essfn-essf",
    "essf-ssf",
    "drop-forbidden",
    "embed",
)

FAMILIES = {
    "qsat2-essfnc": frozenset(
        (
            "X", "Xbar", "Y", "Ybar", "Ytri", "Ybartri", "Yptri", "Ybox",
            "H", "T", "Tbar", "Tbarbox", "Tbartri",
            "Tp", "Tbarp", "Tpbox", "Tbarpbox",
        )
    ),
    "essfnc-essfn": frozenset(("tri", "xab", "C_open", "D_open", "C_box", "D_box")),
    "essfn-essf": frozenset(("C_open", "C_box")),
    "essf-ssf": frozenset(("A_open", "A_box", "W", "F_box")),
    "drop-forbidden": frozenset(("f",)),
    "embed": frozenset(),
}

# Index positions that hold an input vertex id (0-based in memory).
_VERTEX_POSITIONS: Dict[Tuple[str, str], Tuple[int, ...]] = {
    ("essfnc-essfn", "xab"): (1,),
    ("essfnc-essfn", "C_open"): (1,),
    ("essfnc-essfn", "D_open"): (1,),
    ("essfnc-essfn", "C_box"): (1,),
    ("essfnc-essfn", "D_box"): (1,),
    ("essfn-essf", "C_open"): (0,),
    ("essfn-essf", "C_box"): (0,),
    ("essf-ssf", "A_open"): (0,),
    ("essf-ssf", "A_box"): (0,),
    ("drop-forbidden", "f"): (0,),
}


@dataclass(frozen=True)
class ReductionMap:
    kind: str
    input_summary: Tuple[Tuple[str, int], ...]
    provenance: Tuple[Tuple, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InputError(f"unknown reduction kind {self.kind!r}")
        seen_orig = set()
        for out_id, entry in enumerate(self.provenance):
            if entry[0] == "orig":
                if entry[1] in seen_orig:
                    raise InputError(
                        f"input vertex {entry[1]} mapped twice (output {out_id})"
                    )
                seen_orig.add(entry[1])
            elif entry[0] == "gadget":
                family = entry[1]
                if family not in FAMILIES[self.kind]:
                    raise InputError(
                        f"family {family!r} not in the {self.kind} vocabulary"
                    )
            else:
                raise InputError(f"bad provenance tag {entry[0]!r}")

    @property
    def n_out(self) -> int:
        return len(self.provenance)

    def summary(self) -> Dict[str, int]:
        return dict(self.input_summary)

    def orig_to_out(self) -> Dict[int, int]:
        return {
            entry[1]: out_id
            for out_id, entry in enumerate(self.provenance)
            if entry[0] == "orig"
        }

    def gadgets(self, family: str):
        """(output_id, indices) pairs of one gadget family, in id order."""
        for out_id, entry in enumerate(self.provenance):
            if entry[0] == "gadget" and entry[1] == family:
                yield out_id, entry[2]


def make_summary(**counts) -> Tuple[Tuple[str, int], ...]:
    return tuple(sorted(counts.items()))


def serialize_map(rmap: ReductionMap) -> str:
    summary = " ".join(f"{k}={v}" for k, v in rmap.input_summary)
    header = f"p ssmap {rmap.kind} {rmap.n_out}"
    lines = [f"{header} {summary}".rstrip()]
    for out_id, entry in enumerate(rmap.provenance):
        if entry[0] == "orig":
            lines.append(f"v {out_id + 1} orig {entry[1] + 1}")
        else:
            family, indices = entry[1], list(entry[2])
            for pos in _VERTEX_POSITIONS.get((rmap.kind, family), ()):
                indices[pos] += 1
            idx = " ".join(str(i) for i in indices)
            lines.append(f"v {out_id + 1} gadget {family} {idx}".rstrip())
    return "\n".join(lines) + "\n"


def parse_map(text: str) -> ReductionMap:
    kind = None
    n_out = None
    summary = {}
    entries = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if kind is not None:
                raise ParseError("duplicate header line", lineno)
            if len(parts) < 4 or parts[1] != "ssmap":
                raise ParseError(f"malformed header {line!r}", lineno)
            kind = parts[2]
            if kind not in KINDS:
                raise ParseError(f"unknown reduction kind {kind!r}", lineno)
            try:
                n_out = int(parts[3])
            except ValueError:
                raise ParseError("non-integer vertex count", lineno) from None
            for tok in parts[4:]:
                key, _, val = tok.partition("=")
                try:
                    summary[key] = int(val)
                except ValueError:
                    raise ParseError(f"malformed summary token {tok!r}", lineno) from None
            continue
        if kind is None:
            raise ParseError("line before the 'p ssmap' header", lineno)
        if parts[0] != "v":
            raise ParseError(f"unknown directive {parts[0]!r}", lineno)
        if len(parts) < 4:
            raise ParseError(f"malformed vertex line {line!r}", lineno)
        try:
            out_id = int(parts[1]) - 1
        except ValueError:
            raise ParseError("non-integer vertex id", lineno) from None
        if not 0 <= out_id < n_out:
            raise ParseError(f"vertex id {parts[1]} out of range", lineno)
        if out_id in entries:
            raise ParseError(f"vertex {parts[1]} mapped twice", lineno)
        if parts[2] == "orig":
            try:
                entries[out_id] = ("orig", int(parts[3]) - 1)
            except ValueError:
                raise ParseError("non-integer input id", lineno) from None
        elif parts[2] == "gadget":
            family = parts[3]
            if family not in FAMILIES[kind]:
                raise ParseError(f"family {family!r} not valid for {kind}", lineno)
            try:
                indices = [int(t) for t in parts[4:]]
            except ValueError:
                raise ParseError("non-integer gadget index", lineno) from None
            for pos in _VERTEX_POSITIONS.get((kind, family), ()):
                indices[pos] -= 1
            entries[out_id] = ("gadget", family, tuple(indices))
        else:
            raise ParseError(f"bad provenance tag {parts[2]!r}", lineno)

    if kind is None:
        raise ParseError("missing 'p ssmap' header")
    missing = [v + 1 for v in range(n_out) if v not in entries]
    if missing:
        raise ParseError(f"vertices {missing[:5]} have no provenance line")
    prov = tuple(entries[v] for v in range(n_out))
    try:
        return ReductionMap(kind, make_summary(**summary), prov)
    except InputError as exc:
        raise ParseError(str(exc)) from exc

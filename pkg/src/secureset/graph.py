"""Simple undirected graphs with labeled vertices."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from ._bitops import mask_from_ids, word_count
from .errors import InputError


class Graph:
    """Immutable simple graph over dense vertex ids 0..n-1.

    Every vertex carries a unique, non-empty label (default: its 1-indexed
    decimal id, matching the external file format).  Adjacency is symmetric
    and loop-free by construction; attempts to add a self-loop or a duplicate
    edge are rejected rather than repaired.
    """

    __slots__ = ("n", "labels", "adj", "_masks", "_label_to_id")

    def __init__(
        self,
        n: int,
        edges: Iterable[Tuple[int, int]] = (),
        labels: Optional[Sequence[str]] = None,
    ):
        if n < 0:
            raise InputError("vertex count must be non-negative")
        self.n = n
        if labels is None:
            labels = [str(v + 1) for v in range(n)]
        else:
            labels = list(labels)
            if len(labels) != n:
                raise InputError(f"expected {n} labels, got {len(labels)}")
        for lab in labels:
            if not lab or any(c.isspace() for c in lab):
                raise InputError(f"label {lab!r} is empty or contains whitespace")
        self._label_to_id = {}
        for v, lab in enumerate(labels):
            if lab in self._label_to_id:
                raise InputError(f"duplicate label {lab!r}")
            self._label_to_id[lab] = v
        self.labels = tuple(labels)

        adj = [set() for _ in range(n)]
        for u, v in edges:
            self._check_vertex(u)
            self._check_vertex(v)
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise InputError(f"duplicate edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(s) for s in adj)
        self._masks = None

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.n:
            raise InputError(f"vertex id {v!r} out of range 0..{self.n - 1}")

    def neighbors(self, v: int) -> frozenset:
        self._check_vertex(v)
        return self.adj[v]

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return len(self.adj[v])

    def id_of(self, label: str) -> int:
        """Vertex id for a label; raises InputError for unknown labels."""
        try:
            return self._label_to_id[label]
        except KeyError:
            raise InputError(f"no vertex labeled {label!r}") from None

    def edge_list(self) -> list:
        """Edges as sorted (u, v) pairs with u < v."""
        return sorted((u, v) for u in range(self.n) for v in self.adj[u] if u < v)

    @property
    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    @property
    def closed_masks(self) -> np.ndarray:
        """(n, w) uint64 rows packing each closed neighborhood N[v]."""
        if self._masks is None:
            w = word_count(self.n)
            masks = np.zeros((max(self.n, 1), w), dtype=np.uint64)
            for v in range(self.n):
                masks[v] = mask_from_ids(self.adj[v] | {v}, self.n)
            self._masks = masks
        return self._masks

    def check_vertex_set(self, xs: Iterable[int]) -> frozenset:
        xs = frozenset(xs)
        for v in xs:
            self._check_vertex(v)
        return xs

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.labels == other.labels
            and self.adj == other.adj
        )

    def __hash__(self):
        return hash((self.n, self.labels, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


def closed_neighborhood(g: Graph, xs: Iterable[int]) -> frozenset:
    """Union of closed neighborhoods N[v] over v in xs (monotone in xs)."""
    xs = g.check_vertex_set(xs)
    out = set(xs)
    for v in xs:
        out |= g.adj[v]
    return frozenset(out)

"""The reduction chain between the problem variants, with solution transport.

Five constructions are provided: formula -> exact FNC instance, then the
constraint-elimination steps FNC -> FN -> F, the exact -> at-most step, and
the forbidden-vertex elimination that lands on the plain problem.  Each
returns the output instance together with a ReductionMap, which is all that
`lift_solution` / `project_solution` need to carry solutions forward and
backward.  Gadget vertex labels are deterministic and human-readable so that
constructed graphs can be inspected directly.
"""

from __future__ import annotations

from typing import Dict, Iterable, Optional, Set, Tuple

from .errors import InputError
from .graph import Graph
from .instance import VARIANT_RANK, Instance
from .qbf import Assignment, QSat2Formula, Normalized, normalize
from .redmap import ReductionMap, make_summary


class _GraphBuilder:
    """Accumulates vertices (label + provenance) and edges, then builds."""

    def __init__(self):
        self.labels = []
        self.prov = []
        self.edges = set()

    def vertex(self, label: str, entry) -> int:
        self.labels.append(label)
        self.prov.append(entry)
        return len(self.labels) - 1

    def copy_graph(self, g: Graph) -> None:
        for v in range(g.n):
            self.vertex(g.labels[v], ("orig", v))
        self.edges.update(g.edge_list())

    def edge(self, u: int, v: int) -> None:
        key = (u, v) if u < v else (v, u)
        assert u != v and key not in self.edges, f"construction bug: edge {key}"
        self.edges.add(key)

    def clique(self, vertices) -> None:
        vs = sorted(vertices)
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                self.edge(u, v)

    def graph(self) -> Graph:
        return Graph(len(self.labels), sorted(self.edges), self.labels)


# ---------------------------------------------------------------------------
# formula -> exact secure set with forbidden/necessary/complementary vertices


def reduce_qsat2_to_essfnc(f: QSat2Formula) -> Tuple[Instance, ReductionMap]:
    """Encode an exists-forall 3-DNF formula as an exact FNC instance.

    Requires a normalized formula: no term may contain complementary
    literals, and every term must contain a universal literal.  Truth of the
    formula coincides with existence of a qualifying secure set of size
    exactly k in the output.
    """
    res = normalize(f)
    if not (isinstance(res, Normalized) and res.formula == f):
        raise InputError("formula must be normalized first (see normalize())")

    n_x, n_y, n_t = f.n_x, f.n_y, f.n_t
    b = _GraphBuilder()

    xs, xbars = [], []
    for i, var in enumerate(f.existential, start=1):
        xs.append(b.vertex(f"x{i}", ("gadget", "X", (i, var))))
    for i, var in enumerate(f.existential, start=1):
        xbars.append(b.vertex(f"x{i}_bar", ("gadget", "Xbar", (i, var))))
    ys, ybars = [], []
    for i, var in enumerate(f.universal, start=1):
        ys.append(b.vertex(f"y{i}", ("gadget", "Y", (i, var))))
    for i, var in enumerate(f.universal, start=1):
        ybars.append(b.vertex(f"y{i}_bar", ("gadget", "Ybar", (i, var))))

    ytri = [
        [b.vertex(f"y{i}_{j}_tri", ("gadget", "Ytri", (i, j))) for j in range(1, n_t + 1)]
        for i in range(1, n_y + 1)
    ]
    ybartri = [
        [b.vertex(f"y{i}_{j}_bar_tri", ("gadget", "Ybartri", (i, j))) for j in range(1, n_t + 1)]
        for i in range(1, n_y + 1)
    ]
    yptri = [b.vertex(f"yp{j}_tri", ("gadget", "Yptri", (j,))) for j in range(1, n_t)]
    ybox = [
        [b.vertex(f"y{i}_{j}_box", ("gadget", "Ybox", (i, j))) for j in range(1, n_t + 2)]
        for i in range(1, n_y + 1)
    ]
    d1 = b.vertex("d1_box", ("gadget", "H", (1,)))
    d2 = b.vertex("d2_box", ("gadget", "H", (2,)))
    tbar_box_hub = b.vertex("t_bar_box", ("gadget", "H", (3,)))

    lx = [f.existential_literals(t) for t in f.terms]
    ly = [f.universal_literals(t) for t in f.terms]
    ts = [b.vertex(f"t{i}", ("gadget", "T", (i,))) for i in range(1, n_t + 1)]
    tbars = [
        b.vertex(f"t{i}_bar", ("gadget", "Tbar", (i, *sorted(lx[i - 1]))))
        for i in range(1, n_t + 1)
    ]
    tbarbox = [b.vertex(f"t{i}_bar_box", ("gadget", "Tbarbox", (i,))) for i in range(1, n_t + 1)]
    tbartri = [b.vertex(f"t{i}_bar_tri", ("gadget", "Tbartri", (i,))) for i in range(1, n_t + 1)]
    tps = [b.vertex(f"t{i}_p", ("gadget", "Tp", (i,))) for i in range(1, n_t + 1)]
    tbarps = [
        b.vertex(f"t{i}_p_bar", ("gadget", "Tbarp", (i, *sorted(ly[i - 1]))))
        for i in range(1, n_t + 1)
    ]
    tpbox = [b.vertex(f"t{i}_p_box", ("gadget", "Tpbox", (i,))) for i in range(1, n_t + 1)]
    tbarpbox = [
        b.vertex(f"t{i}_p_bar_box", ("gadget", "Tbarpbox", (i,))) for i in range(1, n_t + 1)
    ]

    ex_pos = {var: i for i, var in enumerate(f.existential)}
    un_pos = {var: i for i, var in enumerate(f.universal)}

    def complement_vertex(lit: int) -> int:
        """Vertex of the complemented literal: falsifying lit selects it."""
        var = abs(lit)
        if var in ex_pos:
            return xbars[ex_pos[var]] if lit > 0 else xs[ex_pos[var]]
        return ybars[un_pos[var]] if lit > 0 else ys[un_pos[var]]

    for i in range(n_t):
        b.edge(tbars[i], tbar_box_hub)
        b.edge(tbars[i], tbartri[i])
        b.edge(tps[i], tpbox[i])
        b.edge(tbarps[i], tbarpbox[i])
        for yv in ys + ybars:
            b.edge(tps[i], yv)
        for lit in lx[i]:
            cv = complement_vertex(lit)
            b.edge(cv, tbarbox[i])
            b.edge(cv, tbars[i])
        for lit in ly[i]:
            b.edge(complement_vertex(lit), tbarps[i])
        if len(lx[i]) <= 1:
            b.edge(d1, tbars[i])
        if len(lx[i]) == 0:
            b.edge(d2, tbars[i])

    for i in range(n_y):
        for j in range(n_t):
            b.edge(ys[i], ytri[i][j])
            b.edge(ybars[i], ybartri[i][j])
        for j in range(n_t + 1):
            b.edge(ys[i], ybox[i][j])
            b.edge(ybars[i], ybox[i][j])
    for u in yptri:
        for yv in ys + ybars:
            b.edge(u, yv)

    necessary = set(ys + ybars + yptri + tbartri)
    for row in ytri + ybartri:
        necessary.update(row)
    forbidden = set(tbarbox + tpbox + tbarpbox) | {d1, d2, tbar_box_hub}
    for row in ybox:
        forbidden.update(row)
    pairs = [(xs[i], xbars[i]) for i in range(n_x)]
    for i in range(n_t):
        pairs += [(ts[i], tbars[i]), (tbars[i], tps[i]), (tps[i], tbarps[i])]

    k = len(necessary) + n_x + 2 * n_t
    graph = b.graph()
    assert graph.n == 2 * n_x + 2 * n_y + 3 * n_y * n_t + n_y + 9 * n_t + 2
    assert len(necessary) == 2 * n_y + 2 * n_y * n_t + 2 * n_t - 1
    assert len(forbidden) == n_y * (n_t + 1) + 3 * n_t + 3
    assert len(pairs) == n_x + 3 * n_t

    inst = Instance(graph, k, True, frozenset(forbidden), frozenset(necessary), tuple(pairs))
    rmap = ReductionMap(
        "qsat2-essfnc", make_summary(nx=n_x, ny=n_y, nt=n_t, exact=1), tuple(b.prov)
    )
    return inst, rmap


# ---------------------------------------------------------------------------
# eliminating complementary pairs

def reduce_essfnc_to_essfn(inst: Instance) -> Tuple[Instance, ReductionMap]:
    """Replace each complementary pair with an exactly-one gadget.

    Per pair (a, b), a necessary hinge vertex adjacent to fresh pivots for a
    and b enforces picking a side, and half-forbidden cliques inflate each
    side so that picking both overshoots the exact size bound.
    """
    if not inst.exact:
        raise InputError("pair elimination is defined for exact instances")
    g = inst.graph
    n = g.n
    b = _GraphBuilder()
    b.copy_graph(g)
    forbidden = set(inst.forbidden)
    necessary = set(inst.necessary)

    for p, (x_a, x_b) in enumerate(inst.pairs):
        if x_a == x_b:
            raise InputError(
                f"pair {p} has identical endpoints; resolve it before reducing"
            )
        hinge = b.vertex(f"tri@p{p}", ("gadget", "tri", (p,)))
        for x in (x_a, x_b):
            lab = g.labels[x]
            pivot = b.vertex(f"{lab}@p{p}", ("gadget", "xab", (p, x)))
            c_open = [
                b.vertex(f"{lab}_{j}@p{p}", ("gadget", "C_open", (p, x, j)))
                for j in range(1, n + 2)
            ]
            d_open = [
                b.vertex(f"{lab}_{j}@p{p}", ("gadget", "D_open", (p, x, j)))
                for j in range(n + 2, n + 5)
            ]
            c_box = [
                b.vertex(f"{lab}_{j}_box@p{p}", ("gadget", "C_box", (p, x, j)))
                for j in range(1, n + 2)
            ]
            d_box = [
                b.vertex(f"{lab}_{j}_box@p{p}", ("gadget", "D_box", (p, x, j)))
                for j in range(n + 2, n + 5)
            ]
            b.edge(hinge, pivot)
            for u in c_open:
                b.edge(x, u)
            for u in d_open:
                b.edge(pivot, u)
            b.clique(c_open + d_open + c_box + d_box)
            forbidden.update(c_box + d_box)
        necessary.add(hinge)

    k_out = inst.k + len(inst.pairs) * (n + 6)
    graph = b.graph()
    assert graph.n == n + len(inst.pairs) * (4 * n + 19)
    out = Instance(graph, k_out, True, frozenset(forbidden), frozenset(necessary), ())
    rmap = ReductionMap(
        "essfnc-essfn",
        make_summary(n=n, k=inst.k, pairs=len(inst.pairs), exact=1),
        tuple(b.prov),
    )
    return out, rmap


# ---------------------------------------------------------------------------
# eliminating necessary vertices

def reduce_essfn_to_essf(inst: Instance) -> Tuple[Instance, ReductionMap]:
    """Drop the necessary set by re-weighting ordinary vertices.

    Every unconstrained vertex gains a half-forbidden clique that it drags
    into any solution, so the exact size bound k' is only reachable when all
    the formerly-necessary vertices (which gain nothing) are used.
    """
    if not inst.exact:
        raise InputError("necessary-elimination is defined for exact instances")
    if inst.pairs:
        raise InputError("eliminate complementary pairs before necessary vertices")
    g = inst.graph
    n = g.n
    n_nec = len(inst.necessary)
    if inst.k < n_nec:
        raise InputError(
            f"k={inst.k} below {n_nec} necessary vertices: trivially negative"
        )
    plain = sorted(set(range(n)) - inst.forbidden - inst.necessary)
    if inst.k > n_nec + len(plain):
        raise InputError(
            f"k={inst.k} exceeds the {n_nec + len(plain)} admissible vertices: "
            "trivially negative"
        )

    b = _GraphBuilder()
    b.copy_graph(g)
    forbidden = set(inst.forbidden)
    for v in plain:
        lab = g.labels[v]
        c_open = [
            b.vertex(f"c{j}@{lab}", ("gadget", "C_open", (v, j)))
            for j in range(1, n + 2)
        ]
        c_box = [
            b.vertex(f"c{j}_box@{lab}", ("gadget", "C_box", (v, j)))
            for j in range(1, n + 2)
        ]
        for u in c_open:
            b.edge(v, u)
        b.clique(c_open + c_box)
        forbidden.update(c_box)

    k_out = n_nec + (inst.k - n_nec) * (n + 2)
    graph = b.graph()
    assert graph.n == n + len(plain) * 2 * (n + 1)
    out = Instance(graph, k_out, True, frozenset(forbidden), frozenset(), ())
    rmap = ReductionMap(
        "essfn-essf",
        make_summary(n=n, k=inst.k, necessary=n_nec, exact=1),
        tuple(b.prov),
    )
    return out, rmap


# ---------------------------------------------------------------------------
# exact size -> at-most size

def reduce_essf_to_ssf(inst: Instance) -> Tuple[Instance, ReductionMap]:
    """Turn an exact-size instance into an at-most instance.

    Each vertex gains an all-or-none clique amplifier, and a global clique of
    anchors, fillers and forbidden pressure vertices forces every non-empty
    secure set to contain the fillers plus exactly k amplified vertices, so
    minimum solutions hit the at-most bound k' exactly.
    """
    if not inst.exact:
        raise InputError("the exact-to-at-most step needs an exact instance")
    if inst.pairs or inst.necessary:
        raise InputError("eliminate pairs and necessary vertices first")
    g = inst.graph
    n, k = g.n, inst.k
    b = _GraphBuilder()
    b.copy_graph(g)
    forbidden = set(inst.forbidden)

    anchors = []
    for v in range(n):
        lab = g.labels[v]
        a_open = [
            b.vertex(f"a{j}@{lab}", ("gadget", "A_open", (v, j)))
            for j in range(n + 2)
        ]
        a_box = [
            b.vertex(f"a{j}_box@{lab}", ("gadget", "A_box", (v, j)))
            for j in range(n + 2)
        ]
        for u in a_open[1:]:
            b.edge(v, u)
        b.clique(a_open + a_box)
        forbidden.update(a_box)
        anchors.append(a_open[0])
    fillers = [b.vertex(f"w{i}", ("gadget", "W", (i,))) for i in range(1, n + 1)]
    pressure = [b.vertex(f"f{i}_box", ("gadget", "F_box", (i,))) for i in range(1, k + 1)]
    forbidden.update(pressure)
    b.clique(anchors + fillers + pressure)

    k_out = k * (n + 3) + n
    graph = b.graph()
    assert graph.n == 2 * n * (n + 2) + 2 * n + k
    out = Instance(graph, k_out, False, frozenset(forbidden), frozenset(), ())
    rmap = ReductionMap(
        "essf-ssf", make_summary(n=n, k=k, exact=1), tuple(b.prov)
    )
    return out, rmap


# ---------------------------------------------------------------------------
# eliminating forbidden vertices

def eliminate_forbidden(inst: Instance) -> Tuple[Instance, ReductionMap]:
    """Drop the forbidden set by over-inflating each forbidden neighborhood.

    A clique of 2k fresh vertices attached to a forbidden vertex pushes its
    closed neighborhood past 2k+1, so no solution of size at most (or
    exactly) k can touch it; solutions are unchanged as sets.
    """
    if inst.pairs or inst.necessary:
        raise InputError("eliminate pairs and necessary vertices first")
    g = inst.graph
    n, k = g.n, inst.k
    b = _GraphBuilder()
    b.copy_graph(g)
    for fv in sorted(inst.forbidden):
        lab = g.labels[fv]
        fan = [
            b.vertex(f"f{i}@{lab}", ("gadget", "f", (fv, i)))
            for i in range(1, 2 * k + 1)
        ]
        for u in fan:
            b.edge(fv, u)
        b.clique(fan)

    graph = b.graph()
    assert graph.n == n + 2 * k * len(inst.forbidden)
    out = Instance(graph, k, inst.exact, frozenset(), frozenset(), ())
    rmap = ReductionMap(
        "drop-forbidden",
        make_summary(n=n, k=k, forbidden=len(inst.forbidden), exact=int(inst.exact)),
        tuple(b.prov),
    )
    return out, rmap


# ---------------------------------------------------------------------------
# trivial embeddings between variants

def embed_trivial(inst: Instance, target: str) -> Instance:
    """Read an instance as one of a more general variant (F -> FN -> FNC).

    The instance data is unchanged; only narrowing (e.g. FN -> F when
    necessary vertices are present) is refused.  Idempotent.
    """
    letters = target.strip().upper()
    if letters in ("", "PLAIN"):
        letters = ""
    if letters not in VARIANT_RANK:
        raise InputError(f"unknown target variant {target!r}")
    current = inst.constraint_letters()
    if VARIANT_RANK[letters] < VARIANT_RANK[current]:
        raise InputError(
            f"cannot narrow a {current or 'plain'} instance to {letters or 'plain'}"
        )
    return inst


def identity_map(inst: Instance) -> ReductionMap:
    """Provenance of an embedding: every vertex is its own origin."""
    prov = tuple(("orig", v) for v in range(inst.graph.n))
    return ReductionMap(
        "embed",
        make_summary(n=inst.graph.n, k=inst.k, exact=int(inst.exact)),
        prov,
    )


# ---------------------------------------------------------------------------
# solution transport

def _require(cond: bool, message: str) -> None:
    if not cond:
        raise InputError(message)


def _as_vertex_set(solution: Iterable[int], n_in: int) -> Set[int]:
    s = {int(v) for v in solution}
    for v in s:
        _require(0 <= v < n_in, f"input vertex {v} out of range")
    _require(bool(s), "the input solution is empty")
    return s


def lift_solution(rmap: ReductionMap, input_solution):
    """Transport a solution of the input across the reduction.

    For formula maps the input is an existential assignment; for all other
    kinds it is a vertex set of the input instance.  The lifted set always
    has the size the construction promises and is returned as a frozenset of
    output vertex ids.
    """
    if rmap.kind == "qsat2-essfnc":
        return _lift_qsat2(rmap, input_solution)
    info = rmap.summary()
    n_in, k = info["n"], info["k"]
    s = _as_vertex_set(input_solution, n_in)
    if info.get("exact", 0):
        _require(len(s) == k, f"exact input solutions must have size {k}, got {len(s)}")
    else:
        _require(len(s) <= k, f"input solution exceeds the size bound {k}")
    to_out = rmap.orig_to_out()
    lifted = {to_out[v] for v in s}

    if rmap.kind == "essfnc-essfn":
        by_pair: Dict[int, Dict[int, Set[int]]] = {}
        hinges = {idx[0]: out for out, idx in rmap.gadgets("tri")}
        for fam in ("xab", "C_open", "D_open"):
            for out, idx in rmap.gadgets(fam):
                by_pair.setdefault(idx[0], {}).setdefault(idx[1], set()).add(out)
        for p, hinge in hinges.items():
            sides = by_pair.get(p, {})
            chosen = [x for x in sides if x in s]
            _require(
                len(chosen) == 1,
                f"pair {p} needs exactly one endpoint in the solution, got {len(chosen)}",
            )
            lifted.add(hinge)
            lifted.update(sides[chosen[0]])
        expected = k + len(hinges) * (n_in + 6)
    elif rmap.kind == "essfn-essf":
        blocks: Dict[int, Set[int]] = {}
        for out, idx in rmap.gadgets("C_open"):
            blocks.setdefault(idx[0], set()).add(out)
        in_plain = [v for v in s if v in blocks]
        _require(
            len(in_plain) == k - info["necessary"],
            "the input solution must contain every necessary vertex",
        )
        for v in in_plain:
            lifted.update(blocks[v])
        expected = info["necessary"] + (k - info["necessary"]) * (n_in + 2)
    elif rmap.kind == "essf-ssf":
        blocks = {}
        for out, idx in rmap.gadgets("A_open"):
            blocks.setdefault(idx[0], set()).add(out)
        for v in s:
            lifted.update(blocks[v])
        lifted.update(out for out, _ in rmap.gadgets("W"))
        expected = k * (n_in + 3) + n_in
    elif rmap.kind == "drop-forbidden":
        banned = {idx[0] for _, idx in rmap.gadgets("f")}
        _require(not s & banned, "the input solution touches a forbidden vertex")
        expected = len(s)
    elif rmap.kind == "embed":
        expected = len(s)
    else:  # pragma: no cover
        raise InputError(f"cannot lift across kind {rmap.kind!r}")

    assert len(lifted) == expected, "lifted size disagrees with the construction"
    return frozenset(lifted)


def project_solution(rmap: ReductionMap, output_solution: Iterable[int]):
    """Restrict an output solution to the input: vertex set or assignment."""
    s = {int(v) for v in output_solution}
    for v in s:
        _require(0 <= v < rmap.n_out, f"output vertex {v} out of range")
    if rmap.kind == "qsat2-essfnc":
        assignment: Assignment = {}
        for out, idx in rmap.gadgets("X"):
            assignment[idx[1]] = out in s
        return assignment
    back = {out: v for v, out in rmap.orig_to_out().items()}
    return frozenset(back[v] for v in s if v in back)


def _lift_qsat2(rmap: ReductionMap, assignment: Assignment) -> frozenset:
    info = rmap.summary()
    n_y = info["ny"]
    x_by_var = {idx[1]: out for out, idx in rmap.gadgets("X")}
    xbar_by_var = {idx[1]: out for out, idx in rmap.gadgets("Xbar")}
    _require(
        set(assignment) == set(x_by_var),
        f"assignment must cover exactly the existential variables {sorted(x_by_var)}",
    )
    terms = {}
    for out, idx in rmap.gadgets("Tbar"):
        terms[idx[0]] = {"tbar": out, "lx": idx[1:]}
    for out, idx in rmap.gadgets("Tbarp"):
        terms[idx[0]]["tbarp"] = out
        terms[idx[0]]["ly"] = idx[1:]
    for out, idx in rmap.gadgets("T"):
        terms[idx[0]]["t"] = out
    for out, idx in rmap.gadgets("Tp"):
        terms[idx[0]]["tp"] = out

    if n_y <= 20:
        universe = sorted({abs(lit) for t in terms.values() for lit in t["ly"]})
        _verify_universal_closure(assignment, terms, universe)

    lifted = set()
    for fam in ("Y", "Ybar", "Ytri", "Ybartri", "Yptri", "Tbartri"):
        lifted.update(out for out, _ in rmap.gadgets(fam))
    for var, value in assignment.items():
        lifted.add(x_by_var[var] if value else xbar_by_var[var])
    for data in terms.values():
        holds = all(assignment[abs(lit)] == (lit > 0) for lit in data["lx"])
        if holds:
            lifted.update((data["t"], data["tp"]))
        else:
            lifted.update((data["tbar"], data["tbarp"]))

    n_tri = sum(1 for _ in rmap.gadgets("Ytri")) + sum(1 for _ in rmap.gadgets("Ybartri"))
    k = (
        2 * info["ny"] + n_tri + (info["nt"] - 1) + info["nt"]
        + info["nx"] + 2 * info["nt"]
    )
    assert len(lifted) == k, "lifted size disagrees with the construction"
    return frozenset(lifted)


def _verify_universal_closure(assignment, terms, universe) -> None:
    """Refuse witnesses that some universal extension defeats."""
    import itertools

    for bits in itertools.product((False, True), repeat=len(universe)):
        j = dict(zip(universe, bits))
        ok = False
        for data in terms.values():
            if all(assignment[abs(l)] == (l > 0) for l in data["lx"]) and all(
                j[abs(l)] == (l > 0) for l in data["ly"]
            ):
                ok = True
                break
        if not ok:
            raise InputError(
                "the assignment is not a witness: a universal extension "
                "falsifies every term"
            )

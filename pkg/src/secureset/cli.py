"""Command-line interface.

Exit status: 0 = positive answer / success, 1 = negative answer,
2 = usage or input error, 3 = resource budget refusal.  All diagnostics go
to stderr; stdout is line-oriented and stable.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import qbf, reductions
from .errors import BudgetError, InputError, SecureSetError
from .instance import (
    Instance,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from .redmap import parse_map, serialize_map
from .security import (
    EXHAUSTIVE_SUBSET_CAP,
    exhaustive_witness_oracle,
    find_attack_witness,
    is_defensive_alliance,
)
from .solver import DEFAULT_CANDIDATE_BUDGET, solve

REDUCE_KINDS = (
    "qsat2-essfnc",
    "essfnc-essfn",
    "essfn-essf",
    "essf-ssf",
    "drop-forbidden",
    "embed",
)

DEFAULT_CHAIN_VERTEX_BUDGET = 100_000


def _witness_line(witness) -> str:
    ids = " ".join(str(v + 1) for v in sorted(witness.subset))
    return f"w {ids} | defenders={witness.defenders} attackers={witness.attackers}"


def _cmd_check(args) -> int:
    inst = parse_instance(Path(args.instance).read_text())
    members = parse_solution(Path(args.solution).read_text(), inst.graph.n)
    if members is None:
        raise InputError("the solution file says 's NONE'; nothing to check")
    g = inst.graph
    if len(members) <= args.max_subset:
        witness = exhaustive_witness_oracle(g, members)
    else:
        witness = find_attack_witness(g, members)
    if witness is None:
        print("SECURE")
        return 0
    print("INSECURE")
    print(_witness_line(witness))
    return 1


def _cmd_alliance(args) -> int:
    inst = parse_instance(Path(args.instance).read_text())
    members = parse_solution(Path(args.solution).read_text(), inst.graph.n)
    if members is None:
        raise InputError("the solution file says 's NONE'; nothing to check")
    if is_defensive_alliance(inst.graph, members):
        print("ALLIANCE")
        return 0
    print("NOT ALLIANCE")
    return 1


def _cmd_solve(args) -> int:
    inst = parse_instance(Path(args.instance).read_text())
    report = solve(inst, max_candidates=args.max_candidates)
    print(f"candidates examined: {report.candidates_examined}", file=sys.stderr)
    if report.note:
        print(report.note, file=sys.stderr)
    if report.solution is None:
        print("s NONE")
        return 1
    print(serialize_solution(report.solution.members), end="")
    return 0


def _cmd_qbf_eval(args) -> int:
    formula = qbf.parse_qdnf(Path(args.formula).read_text())
    truth, witness = qbf.eval_qsat2(formula, cap=args.max_variables)
    if truth:
        print("TRUE")
        print(qbf.format_witness(formula, witness), end="")
        return 0
    print("FALSE")
    return 1


def _run_reduction(kind: str, inst: Instance, target: str):
    if kind == "essfnc-essfn":
        return reductions.reduce_essfnc_to_essfn(inst)
    if kind == "essfn-essf":
        return reductions.reduce_essfn_to_essf(inst)
    if kind == "essf-ssf":
        return reductions.reduce_essf_to_ssf(inst)
    if kind == "drop-forbidden":
        return reductions.eliminate_forbidden(inst)
    if kind == "embed":
        out = reductions.embed_trivial(inst, target)
        return out, reductions.identity_map(inst)
    raise InputError(f"unknown reduction kind {kind!r}")


def _cmd_reduce(args) -> int:
    if args.kind == "qsat2-essfnc":
        formula = qbf.parse_qdnf(Path(args.input).read_text())
        out, rmap = reductions.reduce_qsat2_to_essfnc(formula)
    else:
        inst = parse_instance(Path(args.input).read_text())
        out, rmap = _run_reduction(args.kind, inst, args.target)
    Path(args.output).write_text(serialize_instance(out))
    Path(args.map).write_text(serialize_map(rmap))
    print(
        f"wrote {args.output} (n={out.graph.n}, k={out.k}) and {args.map}",
        file=sys.stderr,
    )
    return 0


def _cmd_lift(args) -> int:
    rmap = parse_map(Path(args.map).read_text())
    text = Path(args.input).read_text()
    if rmap.kind == "qsat2-essfnc":
        solution = qbf.parse_witness(text)
    else:
        solution = parse_solution(text)
        if solution is None:
            raise InputError("cannot lift 's NONE'")
    lifted = reductions.lift_solution(rmap, solution)
    Path(args.output).write_text(serialize_solution(lifted))
    return 0


def _cmd_project(args) -> int:
    rmap = parse_map(Path(args.map).read_text())
    solution = parse_solution(Path(args.input).read_text(), rmap.n_out)
    if solution is None:
        raise InputError("cannot project 's NONE'")
    projected = reductions.project_solution(rmap, solution)
    if rmap.kind == "qsat2-essfnc":
        lits = " ".join(
            str(var if value else -var) for var, value in sorted(projected.items())
        )
        Path(args.output).write_text(f"v {lits}\n" if lits else "v\n")
    else:
        Path(args.output).write_text(serialize_solution(projected))
    return 0


def _chain_stage_size(kind: str, inst: Instance) -> int:
    """Closed-form vertex count of the next stage's output."""
    n, k = inst.graph.n, inst.k
    if kind == "essfnc-essfn":
        return n + len(inst.pairs) * (4 * n + 19)
    if kind == "essfn-essf":
        plain = n - len(inst.forbidden) - len(inst.necessary)
        return n + plain * 2 * (n + 1)
    if kind == "essf-ssf":
        return 2 * n * (n + 2) + 2 * n + k
    if kind == "drop-forbidden":
        return n + 2 * k * len(inst.forbidden)
    raise InputError(f"unknown chain stage {kind!r}")


def _cmd_chain(args) -> int:
    formula = qbf.parse_qdnf(Path(args.formula).read_text())
    res = qbf.normalize(formula)
    if isinstance(res, qbf.TriviallyFalse):
        print("TRIVIALLY FALSE")
        return 1
    if isinstance(res, qbf.TriviallyTrue):
        print("TRIVIALLY TRUE")
        print(qbf.format_witness(formula, res.witness_assignment()), end="")
        return 0
    formula = res.formula

    outdir = Path(args.output_dir)
    outdir.mkdir(parents=True, exist_ok=True)
    first_size = (
        2 * formula.n_x + 2 * formula.n_y + 3 * formula.n_y * formula.n_t
        + formula.n_y + 9 * formula.n_t + 2
    )
    if first_size > args.max_vertices:
        raise BudgetError(
            f"stage 1 would have {first_size} vertices, over the budget of "
            f"{args.max_vertices} (--max-vertices)"
        )
    inst, rmap = reductions.reduce_qsat2_to_essfnc(formula)
    stages = [("stage1-essfnc", inst, rmap)]
    plan = (
        ("essfnc-essfn", "stage2-essfn"),
        ("essfn-essf", "stage3-essf"),
        ("essf-ssf", "stage4-ssf"),
        ("drop-forbidden", "stage5-ss"),
    )
    refusal = None
    for kind, name in plan:
        next_size = _chain_stage_size(kind, inst)
        if next_size > args.max_vertices:
            refusal = (
                f"{name} would have {next_size} vertices, over the budget of "
                f"{args.max_vertices} (--max-vertices); stopping here"
            )
            break
        inst, rmap = _run_reduction(kind, inst, "")
        stages.append((name, inst, rmap))

    for name, stage_inst, stage_map in stages:
        (outdir / f"{name}.ss").write_text(serialize_instance(stage_inst))
        (outdir / f"{name}.map").write_text(serialize_map(stage_map))
        print(f"{name}: n={stage_inst.graph.n} k={stage_inst.k}")
    if refusal is not None:
        raise BudgetError(refusal)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="secureset",
        description="Secure sets in graphs: checking, solving, and reductions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="is a vertex set secure in the instance's graph")
    p.add_argument("instance")
    p.add_argument("solution")
    p.add_argument(
        "--max-subset",
        type=int,
        default=EXHAUSTIVE_SUBSET_CAP,
        help="largest |S| checked by literal subset enumeration",
    )
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("alliance", help="is a vertex set a defensive alliance")
    p.add_argument("instance")
    p.add_argument("solution")
    p.set_defaults(func=_cmd_alliance)

    p = sub.add_parser("solve", help="find a qualifying secure set")
    p.add_argument("instance")
    p.add_argument(
        "--max-candidates",
        type=int,
        default=DEFAULT_CANDIDATE_BUDGET,
        help="refuse instances with more candidates than this",
    )
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("qbf-eval", help="evaluate an exists-forall DNF formula")
    p.add_argument("formula")
    p.add_argument(
        "--max-variables",
        type=int,
        default=qbf.EVAL_VARIABLE_CAP,
        help="refuse formulas with more variables than this",
    )
    p.set_defaults(func=_cmd_qbf_eval)

    p = sub.add_parser("reduce", help="run one reduction, writing instance and map")
    p.add_argument("kind", choices=REDUCE_KINDS)
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--map", required=True, help="provenance map output path")
    p.add_argument(
        "--target",
        default="fnc",
        help="target variant letters for 'embed' (f, fn or fnc)",
    )
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("lift", help="transport an input solution to the output")
    p.add_argument("map")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_lift)

    p = sub.add_parser("project", help="restrict an output solution to the input")
    p.add_argument("map")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=_cmd_project)

    p = sub.add_parser(
        "chain", help="compose all reductions from a formula down to the plain problem"
    )
    p.add_argument("formula")
    p.add_argument("output_dir")
    p.add_argument(
        "--max-vertices",
        type=int,
        default=DEFAULT_CHAIN_VERTEX_BUDGET,
        help="refuse stages whose graph would exceed this many vertices",
    )
    p.set_defaults(func=_cmd_chain)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 3
    except (SecureSetError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Secure sets in graphs: verification, solving, QBF evaluation, reductions."""

from .backend import active_backend
from .errors import BudgetError, InputError, ParseError, SecureSetError
from .graph import Graph, closed_neighborhood
from .instance import (
    Instance,
    Solution,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
)
from .qbf import (
    Normalized,
    QSat2Formula,
    TriviallyFalse,
    TriviallyTrue,
    eval_qsat2,
    normalize,
    parse_qdnf,
    serialize_qdnf,
    term_satisfied,
)
from .redmap import ReductionMap, parse_map, serialize_map
from .reductions import (
    eliminate_forbidden,
    embed_trivial,
    lift_solution,
    project_solution,
    reduce_essf_to_ssf,
    reduce_essfn_to_essf,
    reduce_essfnc_to_essfn,
    reduce_qsat2_to_essfnc,
)
from .security import (
    AttackWitness,
    attack_balance,
    exhaustive_witness_oracle,
    find_attack_witness,
    is_defensive_alliance,
    is_secure,
    verify_matching,
)
from .solver import SolveReport, min_nonempty_secure_set, solve

__version__ = "0.1.0"

__all__ = [
    "AttackWitness",
    "BudgetError",
    "Graph",
    "InputError",
    "Instance",
    "Normalized",
    "ParseError",
    "QSat2Formula",
    "ReductionMap",
    "SecureSetError",
    "Solution",
    "SolveReport",
    "TriviallyFalse",
    "TriviallyTrue",
    "active_backend",
    "attack_balance",
    "closed_neighborhood",
    "eliminate_forbidden",
    "embed_trivial",
    "eval_qsat2",
    "exhaustive_witness_oracle",
    "find_attack_witness",
    "is_defensive_alliance",
    "is_secure",
    "lift_solution",
    "min_nonempty_secure_set",
    "normalize",
    "parse_instance",
    "parse_map",
    "parse_qdnf",
    "parse_solution",
    "project_solution",
    "reduce_essf_to_ssf",
    "reduce_essfn_to_essf",
    "reduce_essfnc_to_essfn",
    "reduce_qsat2_to_essfnc",
    "serialize_instance",
    "serialize_map",
    "serialize_qdnf",
    "serialize_solution",
    "solve",
    "term_satisfied",
    "verify_matching",
]

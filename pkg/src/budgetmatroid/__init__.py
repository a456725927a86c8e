"""Budgeted matroid independent set: an efficient approximation scheme with
exact rational arithmetic, plus desk-scale verification oracles."""

from .errors import (
    BudgetMatroidError,
    InternalInvariantError,
    PreconditionError,
    ScaleCapError,
    ValidationError,
)
from .families import FamilySpec, construct
from .generate import GenSpec, generate_instance
from .instance import BmiInstance, make_instance, parse_instance, serialize_instance
from .lp import (
    FractionalPoint,
    LpOutcome,
    SeparationResult,
    lp_upper_bound,
    round_integral,
    separate,
    solve_lp,
)
from .matroid import (
    AxiomReport,
    Matroid,
    check_axioms,
    contract,
    exchange_witness,
    extend_to_independent,
    min_weight_basis,
    rank,
    restrict,
    truncate,
    union,
)
from .oracle import ExactResult, brute_force_opt, knapsack_dp
from .scheme import (
    EpsParam,
    RepresentativeSet,
    RunReport,
    approximate,
    find_rep,
    is_replacement,
    is_substitution,
    profit_class,
    run_for_alpha,
    verify_representative,
)

__all__ = [
    "AxiomReport",
    "BmiInstance",
    "BudgetMatroidError",
    "EpsParam",
    "ExactResult",
    "FamilySpec",
    "FractionalPoint",
    "GenSpec",
    "InternalInvariantError",
    "LpOutcome",
    "Matroid",
    "PreconditionError",
    "RepresentativeSet",
    "RunReport",
    "ScaleCapError",
    "SeparationResult",
    "ValidationError",
    "approximate",
    "brute_force_opt",
    "check_axioms",
    "construct",
    "contract",
    "exchange_witness",
    "extend_to_independent",
    "find_rep",
    "generate_instance",
    "is_replacement",
    "is_substitution",
    "knapsack_dp",
    "lp_upper_bound",
    "make_instance",
    "min_weight_basis",
    "parse_instance",
    "profit_class",
    "rank",
    "restrict",
    "round_integral",
    "run_for_alpha",
    "separate",
    "serialize_instance",
    "solve_lp",
    "truncate",
    "union",
    "verify_representative",
]

__version__ = "0.1.0"

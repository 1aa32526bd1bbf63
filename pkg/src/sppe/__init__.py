"""Exact second-price pacing equilibria for markets with few goods.

The solver walks the cells of the highest-bid space, turns each cell and
second-price witness choice into an exact rational feasibility program,
and recovers an equilibrium from the first feasible one.  A standalone
verifier re-checks the equilibrium conditions from scratch, and good-type
aggregation extends the solver to many goods of few distinct kinds.
"""

from .equilibrium import Equilibrium, Provenance
from .errors import (
    DimensionMismatch,
    GoodsLimitExceeded,
    InconsistentState,
    InstanceTooLarge,
    InternalInconsistency,
    NegativeValuation,
    NoEquilibriumFound,
    NonPositiveBudget,
    ShapeMismatch,
    SppeError,
    UnknownWitness,
)
from .geometry import (
    CONST_TERM,
    CellDerivation,
    CellState,
    CoordinateAxis,
    RatioAxis,
    build_axes,
    check_consistency,
    derive_cell,
    enumerate_states,
    state_count,
    state_index,
    state_of_point,
)
from .lp import (
    DUMMY_WITNESS,
    FeasibilityOutcome,
    FeasibilitySystem,
    LinearConstraint,
    build_system,
    solve_feasibility,
)
from .model import (
    Instance,
    PreprocessReport,
    TypePartition,
    expand_equilibrium,
    make_instance,
    partition_good_types,
    preprocess,
    validate_instance,
)
from .rationals import Rat, rat_str, to_rat
from .solver import (
    RunStats,
    SolveConfig,
    WitnessSets,
    WitnessTuple,
    enumerate_witness_tuples,
    recover,
    solve,
    solve_by_types,
    solve_by_types_with_stats,
    solve_with_stats,
    witness_sets,
)
from .verifier import VerificationReport, grid_oracle, verify_equilibrium

__version__ = "0.1.0"

__all__ = [
    "CONST_TERM",
    "DUMMY_WITNESS",
    "CellDerivation",
    "CellState",
    "CoordinateAxis",
    "DimensionMismatch",
    "Equilibrium",
    "FeasibilityOutcome",
    "FeasibilitySystem",
    "GoodsLimitExceeded",
    "InconsistentState",
    "Instance",
    "InstanceTooLarge",
    "InternalInconsistency",
    "LinearConstraint",
    "NegativeValuation",
    "NoEquilibriumFound",
    "NonPositiveBudget",
    "PreprocessReport",
    "Provenance",
    "Rat",
    "RatioAxis",
    "RunStats",
    "ShapeMismatch",
    "SolveConfig",
    "SppeError",
    "TypePartition",
    "UnknownWitness",
    "VerificationReport",
    "WitnessSets",
    "WitnessTuple",
    "build_axes",
    "build_system",
    "check_consistency",
    "derive_cell",
    "enumerate_states",
    "enumerate_witness_tuples",
    "expand_equilibrium",
    "grid_oracle",
    "make_instance",
    "partition_good_types",
    "preprocess",
    "rat_str",
    "recover",
    "solve",
    "solve_by_types",
    "solve_by_types_with_stats",
    "solve_feasibility",
    "solve_with_stats",
    "state_count",
    "state_index",
    "state_of_point",
    "to_rat",
    "validate_instance",
    "verify_equilibrium",
    "witness_sets",
]

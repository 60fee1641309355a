"""Nonlocal games built from the two-qubit Pauli group.

Exact classical values by exhaustive search, perfect entangled strategies by
direct simulation, and a verification suite covering every quantitative claim.
"""

__version__ = "0.1.0"

from .errors import ConsistencyError, InputError, PauliGamesError
from .games import (
    AMS_VARIABLE_OPS,
    MS_VARIABLE_OPS,
    PROCEDURES,
    Equation,
    GameSpec,
    PairDistribution,
    answer_parity,
    build_ams_game,
    build_game,
    build_ms_game,
    build_psams_game,
    exact_pair_distribution,
    payoff,
    sample_question_pair,
)
from .pauli import (
    CommutingTriple,
    IncidenceReport,
    OperatorMagicSquare,
    PauliOp,
    SignedPauli,
    commutes,
    enumerate_commuting_triples,
    enumerate_magic_squares,
    incidence_stats,
    multiply,
    op_from_label,
)
from .quantum import (
    EntangledStrategyDescriptor,
    ProjectorFamily,
    bell_state,
    conditional_win_probability,
    entangled_win_probability,
    joint_outcome_probabilities,
    perfect_strategy,
    projector_family,
    sample_entangled_round,
    validate_family,
)
from .solver import (
    ConsistencyProfile,
    DeterministicStrategy,
    LosingPair,
    SweepEntry,
    SyncAgreementReport,
    ValueReport,
    best_response_value,
    check_sweep_affine,
    consistency_profile,
    evaluate_pair,
    explicit_best_response_value,
    find_optimal_witness,
    load_strategy,
    losing_pairs,
    max_satisfiable_assignment,
    max_sync_agreement_over_optima,
    ms_double_enumeration_value,
    psams_value_sweep,
    save_strategy,
    solve_classical_value,
    solve_symmetric_value,
    strategy_component_values,
    verify_strategy_file,
)

__all__ = [
    "__version__",
    "PauliGamesError",
    "InputError",
    "ConsistencyError",
    "PauliOp",
    "SignedPauli",
    "CommutingTriple",
    "OperatorMagicSquare",
    "IncidenceReport",
    "op_from_label",
    "commutes",
    "multiply",
    "enumerate_commuting_triples",
    "enumerate_magic_squares",
    "incidence_stats",
    "Equation",
    "GameSpec",
    "PairDistribution",
    "AMS_VARIABLE_OPS",
    "MS_VARIABLE_OPS",
    "PROCEDURES",
    "answer_parity",
    "build_ms_game",
    "build_ams_game",
    "build_psams_game",
    "build_game",
    "payoff",
    "exact_pair_distribution",
    "sample_question_pair",
    "DeterministicStrategy",
    "LosingPair",
    "ValueReport",
    "ConsistencyProfile",
    "SyncAgreementReport",
    "SweepEntry",
    "evaluate_pair",
    "losing_pairs",
    "best_response_value",
    "explicit_best_response_value",
    "solve_classical_value",
    "solve_symmetric_value",
    "max_sync_agreement_over_optima",
    "find_optimal_witness",
    "max_satisfiable_assignment",
    "consistency_profile",
    "strategy_component_values",
    "psams_value_sweep",
    "check_sweep_affine",
    "ms_double_enumeration_value",
    "save_strategy",
    "load_strategy",
    "verify_strategy_file",
    "bell_state",
    "ProjectorFamily",
    "EntangledStrategyDescriptor",
    "projector_family",
    "validate_family",
    "perfect_strategy",
    "joint_outcome_probabilities",
    "conditional_win_probability",
    "entangled_win_probability",
    "sample_entangled_round",
]

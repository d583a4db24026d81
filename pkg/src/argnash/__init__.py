"""Normal-form games as three-level argumentation frameworks.

The pipeline: validate a game, compile it into an extended argumentation
framework (arguments, attacks, attacks-on-attacks), enumerate preferred and
stable extensions, read the pure equilibria off the extensions, and explain
the verdicts interactively.
"""

from .build import (
    ArgumentCounts,
    AttackSets,
    Cluster,
    GameArgument,
    GameFramework,
    PreferenceArgument,
    ValuationArgument,
    argument_counts,
    assemble_framework,
    build_attacks,
    build_game_arguments,
    build_preference_arguments,
    build_valuation_arguments,
    check_eaf_condition,
    parse_argument_id,
)
from .eaf import (
    EAFramework,
    Extension,
    FrameworkTooLargeError,
    UnknownArgumentError,
    brute_force_cap,
    defeats,
    enumerate_extensions_bruteforce,
    is_acceptable,
    is_admissible,
    is_conflict_free,
    is_stable,
    reinstatement_defeats,
)
from .explain import (
    ClaimKind,
    DialogueError,
    DialogueState,
    ExplanationNode,
    ExplanationRefusal,
    Move,
    MoveType,
    Reply,
    dialogue_step,
    explain_nash,
    explain_not_nash,
    legal_moves,
    new_session,
)
from .game import (
    Game,
    GameValidationError,
    PartialProfile,
    Profile,
    nash_equilibria_bruteforce,
    remove,
    validate_game,
)
from .solve import (
    CandidateCapError,
    CrossValidationReport,
    InternalConsistencyError,
    SolvedGame,
    SolveReport,
    StableClass,
    cross_validate,
    enumerate_preferred_structured,
    nash_from_framework,
    solve_game,
    stable_from_preferred,
)

__all__ = [
    "ArgumentCounts",
    "AttackSets",
    "CandidateCapError",
    "ClaimKind",
    "Cluster",
    "CrossValidationReport",
    "DialogueError",
    "DialogueState",
    "EAFramework",
    "ExplanationNode",
    "ExplanationRefusal",
    "Extension",
    "FrameworkTooLargeError",
    "Game",
    "GameArgument",
    "GameFramework",
    "GameValidationError",
    "InternalConsistencyError",
    "Move",
    "MoveType",
    "PartialProfile",
    "PreferenceArgument",
    "Profile",
    "Reply",
    "SolveReport",
    "SolvedGame",
    "StableClass",
    "UnknownArgumentError",
    "ValuationArgument",
    "argument_counts",
    "assemble_framework",
    "brute_force_cap",
    "build_attacks",
    "build_game_arguments",
    "build_preference_arguments",
    "build_valuation_arguments",
    "check_eaf_condition",
    "cross_validate",
    "defeats",
    "dialogue_step",
    "enumerate_extensions_bruteforce",
    "enumerate_preferred_structured",
    "explain_nash",
    "explain_not_nash",
    "is_acceptable",
    "is_admissible",
    "is_conflict_free",
    "is_stable",
    "legal_moves",
    "nash_equilibria_bruteforce",
    "nash_from_framework",
    "new_session",
    "parse_argument_id",
    "reinstatement_defeats",
    "remove",
    "solve_game",
    "stable_from_preferred",
    "validate_game",
]

__version__ = "0.1.0"

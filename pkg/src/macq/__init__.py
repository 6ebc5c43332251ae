"""Conflict resolution on a shared channel: simulate, analyze, bound.

n stations share a slotted broadcast channel; exactly d of them are live and
each must transmit alone once.  Per round a strategy schedules a subset and
learns silence, a single sender's identity, or a collision.  This package
provides the channel semantics, two classic deterministic strategies,
adaptive adversaries, decision-tree construction and normalization, an exact
minimax solver for small instances, counting bounds, and a report that puts
them side by side.
"""

from .adversary import (
    KnowledgeState,
    exact_answer,
    greedy_adversary,
    greedy_answer,
    initial_state,
    make_exact_adversary,
    refine,
)
from .bounds import (
    GrowthFactor,
    binomial,
    claimed_bound_analytic,
    claimed_bound_combinatorial,
    info_lower_bound,
    path_count_bound,
)
from .channel import (
    COLLISION,
    Feedback,
    FeedbackTag,
    GameConfig,
    SILENCE,
    StationSet,
    Transcript,
    evaluate_query,
    feedback_consistent,
    format_station_set,
    single,
    transcript_from_doc,
    transcript_to_doc,
    transmitted_set,
)
from .engine import (
    GameResult,
    default_round_cap,
    game_result_to_doc,
    run_adversarial,
    run_fixed,
    worst_case_rounds,
)
from .errors import (
    AdversaryInconsistent,
    AmbiguousLeaf,
    BudgetExceeded,
    CapExceeded,
    DomainError,
    Inconsistent,
    InvalidQuery,
    MacqError,
)
from .oracle import (
    DEFAULT_ORACLE_CAP,
    OracleState,
    canonicalize,
    exact_optimal_rounds,
    optimal_strategy,
    optimal_strategy_tree,
)
from .qtree import (
    NormalFormReport,
    QNode,
    QTree,
    build_tree,
    check_normal_form,
    edge_color,
    export_graph,
    leaf_count,
    max_depth,
    normalize,
    normalized_strategy,
    tree_strategy,
)
from .report import (
    CSV_HEADER,
    FLAG_CLAIM_EXCEEDS_OPT,
    FLAG_LB_VIOLATION,
    ReportRow,
    generate_report,
    report_to_csv,
)
from .strategies import (
    LINEAR_SCAN,
    STRATEGIES,
    TREE_SPLIT,
    Strategy,
    get_strategy,
    linear_scan,
    scripted,
    tree_split,
    worst_case_formula_estimate,
)

__version__ = "0.1.0"

__all__ = [
    "AdversaryInconsistent",
    "AmbiguousLeaf",
    "BudgetExceeded",
    "CapExceeded",
    "COLLISION",
    "CSV_HEADER",
    "DEFAULT_ORACLE_CAP",
    "FLAG_CLAIM_EXCEEDS_OPT",
    "FLAG_LB_VIOLATION",
    "DomainError",
    "Feedback",
    "FeedbackTag",
    "GameConfig",
    "GameResult",
    "GrowthFactor",
    "Inconsistent",
    "InvalidQuery",
    "KnowledgeState",
    "LINEAR_SCAN",
    "MacqError",
    "NormalFormReport",
    "OracleState",
    "QNode",
    "QTree",
    "ReportRow",
    "SILENCE",
    "STRATEGIES",
    "StationSet",
    "Strategy",
    "TREE_SPLIT",
    "Transcript",
    "binomial",
    "build_tree",
    "canonicalize",
    "check_normal_form",
    "claimed_bound_analytic",
    "claimed_bound_combinatorial",
    "default_round_cap",
    "edge_color",
    "evaluate_query",
    "exact_answer",
    "exact_optimal_rounds",
    "export_graph",
    "feedback_consistent",
    "format_station_set",
    "game_result_to_doc",
    "generate_report",
    "get_strategy",
    "greedy_adversary",
    "greedy_answer",
    "info_lower_bound",
    "initial_state",
    "leaf_count",
    "linear_scan",
    "make_exact_adversary",
    "max_depth",
    "normalize",
    "normalized_strategy",
    "optimal_strategy",
    "optimal_strategy_tree",
    "path_count_bound",
    "refine",
    "report_to_csv",
    "run_adversarial",
    "run_fixed",
    "scripted",
    "single",
    "transcript_from_doc",
    "transcript_to_doc",
    "transmitted_set",
    "tree_split",
    "tree_strategy",
    "worst_case_formula_estimate",
    "worst_case_rounds",
]

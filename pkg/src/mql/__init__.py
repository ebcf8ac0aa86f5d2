"""Majority search with k-queries: questioners, adversaries and an exact game solver."""

from .core import (
    NO,
    NO_MAJORITY,
    UNKNOWN,
    YES,
    Answer,
    Coloring,
    InconsistentAnswers,
    InfeasibleInstance,
    MajorityError,
    Model,
    Query,
    QuestionerError,
    Transcript,
    Verdict,
    VerdictKind,
    ground_truth,
    honest_answer,
    is_consistent,
)
from .knowledge import (
    KnowledgeSet,
    PairingGraph,
    build_pairing_graph,
    full_knowledge,
    knowledge_of,
    majority_by_matching,
    refine,
    structural_verdict,
    verdict,
)
from .questioners import (
    QUESTIONERS,
    run_majority3,
    run_majority3_with_gap,
    run_pair_bins,
    run_pairing_bins,
)
from .adversaries import ExactAdversary, GreedyPairingAdversary, HonestOracle, PartitionAdversary
from .solver import GameValue, Solver, existence_table, solve, worst_case_count

__version__ = "0.1.0"

__all__ = [
    "NO",
    "NO_MAJORITY",
    "UNKNOWN",
    "YES",
    "Answer",
    "Coloring",
    "InconsistentAnswers",
    "InfeasibleInstance",
    "MajorityError",
    "Model",
    "Query",
    "QuestionerError",
    "Transcript",
    "Verdict",
    "VerdictKind",
    "ground_truth",
    "honest_answer",
    "is_consistent",
    "KnowledgeSet",
    "PairingGraph",
    "build_pairing_graph",
    "full_knowledge",
    "knowledge_of",
    "majority_by_matching",
    "refine",
    "structural_verdict",
    "verdict",
    "QUESTIONERS",
    "run_majority3",
    "run_majority3_with_gap",
    "run_pair_bins",
    "run_pairing_bins",
    "ExactAdversary",
    "GreedyPairingAdversary",
    "HonestOracle",
    "PartitionAdversary",
    "GameValue",
    "Solver",
    "existence_table",
    "solve",
    "worst_case_count",
]

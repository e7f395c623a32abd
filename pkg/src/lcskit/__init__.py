"""Solver toolkit for the multiple-string longest common subsequence
problem: beam search with a portfolio of scoring heuristics, a string-set
similarity classifier, hyper-heuristic dispatch, instance generation, and
a benchmark harness."""

from .beam import BeamNode, BeamState, Solution, SolveStats, beam_search, expand, select_best
from .bench import (
    RunRecord,
    Scenario,
    SolverConfig,
    average_lengths,
    friedman_ranks,
    parse_report,
    report,
    run_bench,
)
from .classifier import (
    Label,
    S2dConfig,
    ScfConfig,
    SetType,
    default_ei,
    s2d_classify,
    s2d_scf_config,
    scf_run,
)
from .datagen import GenConfig, derive_seed, generate_set
from .exact import BudgetExceededError, exact_lcs_pair, exact_lcs_small, lct_length
from .heuristics import (
    HeuristicKind,
    HeuristicParams,
    ScoreContext,
    compute_k,
    score_bs_ex,
    score_gcov,
    score_k_analytic,
)
from .hyper import (
    Dispatch,
    TeHhConfig,
    TeResult,
    UbHhConfig,
    te_hh_solve,
    ub_hh_select,
    ub_hh_solve,
    ubs,
)
from .probability import ProbTable, build_prob_table, lookup, prob_table_for
from .strings import (
    Alphabet,
    InstanceFormatError,
    OccTable,
    StringSet,
    SuccTable,
    build_tables,
    is_common_subsequence,
    parse_instance,
    upper_bound,
    write_instance,
)

__version__ = "0.1.0"

"""Strategic-voting welfare experiments under scoring rules."""

__version__ = "0.1.0"

from .core import Profile, Ranking, kendall_tau, rank_of, validate_profile
from .cultures import CultureSpec, RngStream, culture_from_name, sample_profile
from .experiments import ExperimentRecord, SweepConfig, run_cell, run_sweep, write_csv
from .manipulation import (
    ManipulationResult,
    achievable_winners,
    brute_force_manipulation,
    can_make_winner,
    optimal_manipulation,
)
from .rules import RULES, RuleSpec, ScoringVector, elect, make_scoring_vector, rule_from_name, tally
from .welfare import WelfareTriple, borda_welfare, nash_welfare, rawls_welfare, welfare_triple

__all__ = [
    "Profile",
    "Ranking",
    "kendall_tau",
    "rank_of",
    "validate_profile",
    "CultureSpec",
    "RngStream",
    "culture_from_name",
    "sample_profile",
    "ExperimentRecord",
    "SweepConfig",
    "run_cell",
    "run_sweep",
    "write_csv",
    "ManipulationResult",
    "achievable_winners",
    "brute_force_manipulation",
    "can_make_winner",
    "optimal_manipulation",
    "RULES",
    "RuleSpec",
    "ScoringVector",
    "elect",
    "make_scoring_vector",
    "rule_from_name",
    "tally",
    "WelfareTriple",
    "borda_welfare",
    "nash_welfare",
    "rawls_welfare",
    "welfare_triple",
]

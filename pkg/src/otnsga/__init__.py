"""NSGA-II and OTNSGA-II multi-objective optimization.

OTNSGA-II starts from an orthogonal-design population and prunes each
generation with k-means clustering. Everything here minimizes.
"""

from .bench import CampaignSummary, ConfigError, parse_config, run_campaign, run_single, write_reports
from .config import InitParams, PruneParams, RunConfig, RunReport, VariationParams
from .core import Bounds, Dominance, Individual, Population, ProblemSpec, dominates, evaluate
from .metrics import IndicatorReport, gd, igd, indicator_report, sp
from .nsga2 import (
    crowding_distance_assignment,
    environmental_selection,
    fast_nondominated_sort,
    run_nsga2,
    sort_population,
)
from .orthogonal import OrthogonalArray, construct_orthogonal_array, orthogonal_initialize, soc_crossover
from .problems import PROBLEM_NAMES, make_problem, sample_true_front
from .pruning import kmeans, prune_population, retention_count, run_otnsga2

__all__ = [
    "Bounds", "CampaignSummary", "ConfigError", "Dominance", "IndicatorReport", "Individual", "InitParams",
    "OrthogonalArray", "PROBLEM_NAMES", "Population", "ProblemSpec", "PruneParams", "RunConfig", "RunReport",
    "VariationParams", "construct_orthogonal_array", "crowding_distance_assignment", "dominates",
    "environmental_selection", "evaluate", "fast_nondominated_sort", "gd", "igd", "indicator_report", "kmeans",
    "make_problem", "orthogonal_initialize", "parse_config", "prune_population", "retention_count", "run_campaign",
    "run_nsga2", "run_otnsga2", "run_single", "soc_crossover", "sort_population", "sp", "write_reports",
]

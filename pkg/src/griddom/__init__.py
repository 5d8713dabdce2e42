"""Near-optimal (k-distance) dominating sets on grid graphs."""
from .construct import (
    BoundsReport,
    ConstructionResult,
    bounds,
    construct,
    construct_best,
    gamma_formula,
    ratio_trend,
    verify_k_domination,
)
from .diagonal import DiagonalParams, Orientation, diagonalize, orphans, project, residue
from .greedy import GreedyConfig, TieBreak, adversarial_pattern, greedy_dominate
from .grid import GridSpec, manhattan_distance
from .io import SetDocument
from .oracle import cross_check_power, exact_gamma_k, exact_min_dominating
from .sim import SimConfig, run

__version__ = "0.1.0"

"""Optimal teaching of linear behavior-cloning learners by extreme-ray covering."""

from .core import (
    EPS_TIE,
    DemonstrationSet,
    DifferenceVector,
    TeachingInstance,
    WeightWitness,
    check_realizability,
    difference_vectors,
    induced_actions,
)
from .lp import LinearProgram, LpOutcome, Status, solve
from .cones import (
    EPS_RAY,
    Ray,
    RaySet,
    dedupe_rays,
    extreme_ray_test,
    in_primal_cone,
    minimal_extreme,
)
from .setcover import CoverInstance, CoverSolution, exact_cover, greedy_cover
from .tie import (
    Counterexample,
    Method,
    TeachingResult,
    brute_force_min_teaching,
    build_coverage_sets,
    optimal_teach,
    verify_teaching_set,
)
from .environments import (
    DiamondBoard,
    SetCoverSpec,
    gen_diamond,
    gen_polygon_tower,
    gen_random_realizable,
    polygon_tower_optimal,
    reduce_set_cover,
)
from . import errors

__version__ = "0.1.0"

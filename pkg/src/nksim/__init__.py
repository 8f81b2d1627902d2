"""Seeded, reproducible weighted-NK fitness landscape simulation.

Core pieces: `Landscape` (epistasis structure, contribution tables, locus
weights), adaptive-walk strategies over it, an exhaustive oracle for small
landscapes, and a Monte Carlo experiment runner with derived per-simulation
random streams. Hot loops run through numba kernels by default; set
``NKSIM_BACKEND=python`` for the pure-Python path.
"""

__version__ = "0.1.0"

from .experiment import (ExperimentConfig, FIXED_PER_RUN, KSummary, PER_SIMULATION,
                         aggregate, collect_samples, derive_stream, resolve_weights,
                         run_experiment, weights_label)
from .landscape import (ITDC_BETAS, Landscape, PATTERN_ADJACENT, PATTERN_RANDOM,
                        PATTERNS, as_genotype, build_epistasis_map, equal_weights,
                        generate_fitness_tables, genotype_to_int, int_to_genotype,
                        itdc_weights, make_weight_vector, neighbors, random_genotype,
                        table_index)
from .oracle import (LandscapeCensus, census, enumerate_fitness,
                     mean_local_optimum_fitness, sample_census_stats)
from .rng import Stream, derive_seed
from .search import (FIRST_IMPROVEMENT, LONG_JUMP, STEEPEST_ASCENT, SearchStrategy,
                     WalkTrace, adaptive_walk, is_local_optimum, long_jump_walk,
                     steepest_ascent_walk)

__all__ = [
    "ExperimentConfig", "FIXED_PER_RUN", "KSummary", "PER_SIMULATION", "aggregate",
    "collect_samples", "derive_stream", "resolve_weights", "run_experiment",
    "weights_label", "ITDC_BETAS", "Landscape", "PATTERN_ADJACENT", "PATTERN_RANDOM",
    "PATTERNS", "as_genotype", "build_epistasis_map", "equal_weights",
    "generate_fitness_tables", "genotype_to_int", "int_to_genotype", "itdc_weights",
    "make_weight_vector", "neighbors", "random_genotype", "table_index",
    "LandscapeCensus", "census", "enumerate_fitness", "mean_local_optimum_fitness",
    "sample_census_stats", "Stream", "derive_seed", "FIRST_IMPROVEMENT", "LONG_JUMP",
    "STEEPEST_ASCENT", "SearchStrategy", "WalkTrace", "adaptive_walk",
    "is_local_optimum", "long_jump_walk", "steepest_ascent_walk", "__version__",
]

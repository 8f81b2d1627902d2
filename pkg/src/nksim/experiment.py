"""Monte Carlo study runner: for each epistasis level, many independent
seeded walks from random starts, reduced to per-K summary statistics.

Every simulation owns three derived streams (landscape, start, walk), each
seeded by mixing (master_seed, purpose, k, run, sim). Batches may execute in
parallel; the reduction always runs in ascending (run, sim) order, so
schedules cannot change a single bit of the output.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .landscape import (ITDC_BETAS, Landscape, PATTERNS, equal_weights, itdc_weights,
                        make_weight_vector, random_genotype)
from .rng import MASK64, Stream, derive_seed
from .search import LONG_JUMP, SearchStrategy, adaptive_walk, resolve_budget

PER_SIMULATION = "per_simulation"
FIXED_PER_RUN = "fixed_per_run"
LANDSCAPE_MODES = (PER_SIMULATION, FIXED_PER_RUN)

PURPOSES = {
    "landscape": kernels.PURPOSE_LANDSCAPE,
    "start": kernels.PURPOSE_START,
    "walk": kernels.PURPOSE_WALK,
}


def derive_stream(master_seed: int, k: int, run_index: int, sim_index: int,
                  purpose: str) -> Stream:
    """Independent stream for one simulation role; identical tuples give
    identical streams, distinct tuples give distinct ones."""
    try:
        code = PURPOSES[purpose]
    except KeyError:
        raise ValueError(f"unknown stream purpose {purpose!r}") from None
    return Stream(derive_seed(master_seed, code, k, run_index, sim_index))


def resolve_weights(weights, n: int) -> np.ndarray:
    """Map a weights spec ('equal' | 'itdc' | beta sequence) to a weight vector."""
    if isinstance(weights, str):
        if weights == "equal":
            return equal_weights(n)
        if weights == "itdc":
            if n != len(ITDC_BETAS):
                raise ValueError(f"itdc weights define {len(ITDC_BETAS)} loci, not n = {n}")
            return itdc_weights()
        raise ValueError(f"unknown weights spec {weights!r}")
    phi = make_weight_vector(weights)
    if phi.shape[0] != n:
        raise ValueError(f"got {phi.shape[0]} betas for n = {n} loci")
    return phi


def weights_label(weights) -> str:
    """Stable echo label for a weights spec."""
    if isinstance(weights, str):
        return weights
    return ",".join(f"{float(b):g}" for b in weights)


@dataclass(frozen=True)
class ExperimentConfig:
    """Full parameterization of one study; defaults are the reference
    protocol (n=5, K=0..4, 5 runs x 10,000 sims, itdc weights,
    first-improvement walks on fresh random-pattern landscapes)."""

    n: int = 5
    k_values: tuple[int, ...] = (0, 1, 2, 3, 4)
    runs: int = 5
    sims_per_run: int = 10_000
    weights: str | tuple = "itdc"
    pattern: str = "random"
    landscape_mode: str = PER_SIMULATION
    strategy: SearchStrategy = field(default_factory=SearchStrategy)
    master_seed: int = 42

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not self.k_values:
            raise ValueError("k_values must not be empty")
        for kv in self.k_values:
            if not 0 <= kv <= self.n - 1:
                raise ValueError(f"k = {kv} outside [0, n-1] = [0, {self.n - 1}]")
        if self.runs < 1 or self.sims_per_run < 1:
            raise ValueError("runs and sims_per_run must be >= 1")
        if self.pattern not in PATTERNS:
            raise ValueError(f"unknown pattern {self.pattern!r}")
        if self.landscape_mode not in LANDSCAPE_MODES:
            raise ValueError(f"unknown landscape mode {self.landscape_mode!r}")
        resolve_weights(self.weights, self.n)  # fail fast on bad specs

    @property
    def simulations_per_k(self) -> int:
        return self.runs * self.sims_per_run


@dataclass(frozen=True)
class KSummary:
    """Aggregated endpoint statistics for one K value."""

    k: int
    mean_fitness: float
    stddev: float
    stderr: float
    mean_moves: float
    simulations: int


def aggregate(fitnesses, move_counts, k: int) -> KSummary:
    """Single-pass Welford reduction (population stddev) in array order."""
    count = len(fitnesses)
    if count == 0 or len(move_counts) != count:
        raise ValueError("aggregate needs matching non-empty sample arrays")
    mean = 0.0
    m2 = 0.0
    mean_moves = 0.0
    for i in range(count):
        x = float(fitnesses[i])
        d = x - mean
        mean += d / (i + 1)
        m2 += d * (x - mean)
        mean_moves += (float(move_counts[i]) - mean_moves) / (i + 1)
    stddev = float(np.sqrt(m2 / count))
    return KSummary(k=k, mean_fitness=mean, stddev=stddev,
                    stderr=stddev / float(np.sqrt(count)), mean_moves=mean_moves,
                    simulations=count)


def _strategy_codes(strategy: SearchStrategy, n: int) -> tuple[int, int, int]:
    """Validated (code, width, budget) for a strategy on an n-locus landscape."""
    code = kernels.STRATEGY_CODES[strategy.kind]
    budget = resolve_budget(strategy, n)
    width = strategy.jump_width
    if strategy.kind == LONG_JUMP and not 2 <= width <= n:
        raise ValueError(f"jump_width must be in [2, n] = [2, {n}], got {width}")
    return code, width, budget


def _run_cell_python(config: ExperimentConfig, phi, kv: int, run_idx: int):
    _strategy_codes(config.strategy, config.n)  # validate up front
    sims = config.sims_per_run
    fit = np.empty(sims, dtype=np.float64)
    moves = np.empty(sims, dtype=np.int64)
    land = None
    if config.landscape_mode == FIXED_PER_RUN:
        land = Landscape.generate(config.n, kv, phi, config.pattern,
                                  derive_stream(config.master_seed, kv, run_idx, 0, "landscape"))
    for sim in range(sims):
        if config.landscape_mode == PER_SIMULATION:
            land = Landscape.generate(config.n, kv, phi, config.pattern,
                                      derive_stream(config.master_seed, kv, run_idx, sim, "landscape"))
        start = random_genotype(config.n,
                                derive_stream(config.master_seed, kv, run_idx, sim, "start"))
        walk_rng = derive_stream(config.master_seed, kv, run_idx, sim, "walk")
        trace = adaptive_walk(land, start, config.strategy, walk_rng)
        fit[sim] = trace.fitnesses[-1]
        moves[sim] = trace.moves
    return fit, moves


def _run_cell_numba(config: ExperimentConfig, phi, kv: int, run_idx: int):
    strat_code, width, budget = _strategy_codes(config.strategy, config.n)
    sims = config.sims_per_run
    fit = np.empty(sims, dtype=np.float64)
    moves = np.empty(sims, dtype=np.int64)
    kernels.run_batch(config.n, kv, kernels.PATTERN_CODES[config.pattern], phi,
                      np.uint64(config.master_seed & MASK64), run_idx, sims,
                      kernels.MODE_CODES[config.landscape_mode], strat_code, width,
                      budget, fit, moves)
    return fit, moves


def _worker_count(threads: int | None) -> int:
    if threads is None:
        return 1
    if threads == 0:
        return os.cpu_count() or 1
    if threads < 0:
        raise ValueError("threads must be >= 0")
    return threads


def collect_samples(config: ExperimentConfig, threads: int | None = None,
                    backend: str | None = None) -> dict[int, tuple[np.ndarray, np.ndarray]]:
    """Per-K endpoint fitness and move-count arrays, ordered (run, sim)
    ascending regardless of the execution schedule."""
    phi = resolve_weights(config.weights, config.n)
    run_cell = (_run_cell_numba if kernels.resolve_backend(backend) == "numba"
                else _run_cell_python)
    jobs = [(kv, run) for kv in config.k_values for run in range(config.runs)]
    workers = _worker_count(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            cells = list(pool.map(lambda j: run_cell(config, phi, j[0], j[1]), jobs))
    else:
        cells = [run_cell(config, phi, kv, run) for kv, run in jobs]
    by_job = dict(zip(jobs, cells))
    out = {}
    for kv in config.k_values:
        fit = np.concatenate([by_job[(kv, run)][0] for run in range(config.runs)])
        moves = np.concatenate([by_job[(kv, run)][1] for run in range(config.runs)])
        out[kv] = (fit, moves)
    return out


def run_experiment(config: ExperimentConfig, threads: int | None = None,
                   backend: str | None = None) -> list[KSummary]:
    """Execute the full study; one KSummary per configured K, in order."""
    samples = collect_samples(config, threads=threads, backend=backend)
    return [aggregate(samples[kv][0], samples[kv][1], kv) for kv in config.k_values]

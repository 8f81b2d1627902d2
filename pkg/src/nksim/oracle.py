"""Exhaustive ground truth for small landscapes: full enumeration, local
optima, steepest-ascent basins, and sampled census statistics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .landscape import Landscape, PATTERNS, _check_nk, int_to_genotype
from .rng import Stream

MAX_ENUMERATE_N = 24
MAX_CENSUS_N = 20


@dataclass(frozen=True)
class LandscapeCensus:
    """Complete local-optima inventory of one landscape.

    Basins attribute every genotype to the optimum reached by deterministic
    steepest ascent (lowest flipped locus on ties), so the census is a
    function of the landscape alone.
    """

    n: int
    optima: np.ndarray          # (m,) int64 genotype ints, ascending
    optima_fitness: np.ndarray  # (m,) float64
    basin_sizes: np.ndarray     # (m,) int64, summing to 2**n

    @property
    def global_optimum(self) -> tuple[int, float]:
        i = int(np.argmax(self.optima_fitness))
        return int(self.optima[i]), float(self.optima_fitness[i])


def enumerate_fitness(landscape: Landscape, backend: str | None = None) -> np.ndarray:
    """Fitness of all 2**n genotypes, indexed by genotype integer.

    Genotype ints pack locus 0 as the most significant bit, so ascending
    index order is ascending genotype order.
    """
    if landscape.n > MAX_ENUMERATE_N:
        raise ValueError(f"n = {landscape.n} exceeds enumeration limit {MAX_ENUMERATE_N}")
    if kernels.resolve_backend(backend) == "numba":
        return kernels.full_fitness(landscape.partners, landscape.tables, landscape.weights)
    size = 1 << landscape.n
    out = np.empty(size, dtype=np.float64)
    for g in range(size):
        out[g] = landscape.fitness(int_to_genotype(g, landscape.n))
    return out


def _census_python(fitness: np.ndarray, n: int):
    size = 1 << n
    succ = np.empty(size, dtype=np.int64)
    for g in range(size):
        best_f = fitness[g]
        best = -1
        for loc in range(n):
            nb = g ^ (1 << (n - 1 - loc))
            if fitness[nb] > best_f:
                best_f = fitness[nb]
                best = nb
        succ[g] = g if best < 0 else best
    optima = np.flatnonzero(succ == np.arange(size)).astype(np.int64)
    slot = {int(g): i for i, g in enumerate(optima)}
    counts = np.zeros(optima.shape[0], dtype=np.int64)
    for g in range(size):
        node = g
        while succ[node] != node:
            node = succ[node]
        counts[slot[int(node)]] += 1
    return optima, counts


def census(landscape: Landscape, backend: str | None = None) -> LandscapeCensus:
    """Exhaustive census: every local optimum with its basin size."""
    if landscape.n > MAX_CENSUS_N:
        raise ValueError(f"n = {landscape.n} exceeds census limit {MAX_CENSUS_N}")
    fitness = enumerate_fitness(landscape, backend=backend)
    if kernels.resolve_backend(backend) == "numba":
        optima, counts = kernels.census_from_fitness(fitness, landscape.n)
    else:
        optima, counts = _census_python(fitness, landscape.n)
    return LandscapeCensus(n=landscape.n, optima=optima,
                           optima_fitness=fitness[optima], basin_sizes=counts)


def _sequential_mean(values) -> float:
    total = 0.0
    for v in values:
        total += v
    return total / len(values)


def sample_census_stats(n: int, k: int, weights, pattern: str, samples: int,
                        rng: Stream, backend: str | None = None) -> dict:
    """Census statistics over `samples` fresh landscapes drawn from `rng`.

    Returns per-quantity (mean, stderr) pairs for the local-optima count,
    the mean local-optimum fitness, and the global-optimum fitness.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    _check_nk(n, k)
    if n > MAX_CENSUS_N:
        raise ValueError(f"n = {n} exceeds census limit {MAX_CENSUS_N}")
    if pattern not in PATTERNS:
        raise ValueError(f"unknown epistasis pattern {pattern!r}")
    phi = np.asarray(weights, dtype=np.float64)
    counts = np.empty(samples, dtype=np.int64)
    opt_means = np.empty(samples, dtype=np.float64)
    globals_ = np.empty(samples, dtype=np.float64)
    if kernels.resolve_backend(backend) == "numba":
        state = np.array(rng.state(), dtype=np.uint64)
        code = kernels.PATTERN_CODES[pattern]
        kernels.census_sample_batch(n, k, code, phi, state, counts, opt_means, globals_)
        rng.set_state(state)
    else:
        for s in range(samples):
            land = Landscape.generate(n, k, phi, pattern, rng)
            c = census(land, backend="python")
            counts[s] = c.optima.shape[0]
            opt_means[s] = _sequential_mean(c.optima_fitness)
            globals_[s] = c.global_optimum[1]
    out = {"samples": samples}
    for name, arr in (("local_optima", counts.astype(np.float64)),
                      ("local_optimum_fitness", opt_means),
                      ("global_optimum_fitness", globals_)):
        mean = float(np.mean(arr))
        stderr = float(np.std(arr) / np.sqrt(samples))
        out[f"mean_{name}"] = mean
        out[f"stderr_{name}"] = stderr
    return out


def mean_local_optimum_fitness(n: int, k: int, weights, pattern: str, samples: int,
                               rng: Stream, backend: str | None = None) -> tuple[float, float]:
    """Mean local-optimum fitness over sampled landscapes, with its stderr."""
    stats = sample_census_stats(n, k, weights, pattern, samples, rng, backend=backend)
    return stats["mean_local_optimum_fitness"], stats["stderr_local_optimum_fitness"]

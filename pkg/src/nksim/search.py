"""Adaptive walks over a landscape: first-improvement local search,
steepest ascent, and long jumps. Every walk returns a full trace."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .landscape import Landscape, as_genotype
from .rng import Stream

FIRST_IMPROVEMENT = "first_improvement"
STEEPEST_ASCENT = "steepest_ascent"
LONG_JUMP = "long_jump"
STRATEGY_KINDS = (FIRST_IMPROVEMENT, STEEPEST_ASCENT, LONG_JUMP)

# Default evaluation budget is DEFAULT_BUDGET_FACTOR * n: never binding for
# local search at small n, caps long-jump runs.
DEFAULT_BUDGET_FACTOR = 100


@dataclass(frozen=True)
class SearchStrategy:
    """Walk configuration: kind, jump width (long jumps only), budget cap.

    ``max_evaluations = 0`` means the default budget of 100 * n.
    """

    kind: str = FIRST_IMPROVEMENT
    jump_width: int = 0
    max_evaluations: int = 0

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.max_evaluations < 0:
            raise ValueError("max_evaluations must be >= 0 (0 = default)")


@dataclass(frozen=True)
class WalkTrace:
    """Visited genotypes and fitness values, in acceptance order.

    Local-search traces end at a certified 1-mutant local optimum unless the
    evaluation budget ran out first; long-jump traces stop on budget and are
    never certified.
    """

    genotypes: np.ndarray  # (steps, n) int64
    fitnesses: np.ndarray  # (steps,) float64
    terminated_at_local_optimum: bool
    evaluations_used: int

    @property
    def moves(self) -> int:
        return self.fitnesses.shape[0] - 1

    @property
    def endpoint(self) -> np.ndarray:
        return self.genotypes[-1]

    @property
    def endpoint_fitness(self) -> float:
        return float(self.fitnesses[-1])


def resolve_budget(strategy: SearchStrategy, n: int) -> int:
    budget = strategy.max_evaluations or DEFAULT_BUDGET_FACTOR * n
    if strategy.kind == LONG_JUMP:
        if budget < 1:
            raise ValueError("long-jump budget must be >= 1")
    elif budget < n:
        raise ValueError(f"budget {budget} cannot certify a local optimum (need >= {n})")
    return budget


def adaptive_walk(landscape: Landscape, start, strategy: SearchStrategy | None = None,
                  rng: Stream | None = None) -> WalkTrace:
    """Run one walk from `start` under `strategy` (first-improvement default).

    First-improvement examines the n one-bit neighbors in a fresh uniformly
    random order each step and moves to the first strictly fitter one,
    repeating until no neighbor improves (a 1-mutant local optimum) or the
    budget runs out.
    """
    if strategy is None:
        strategy = SearchStrategy()
    if strategy.kind == FIRST_IMPROVEMENT:
        if rng is None:
            raise ValueError("first-improvement walks need a random stream")
        return _first_improvement(landscape, start, strategy, rng)
    if strategy.kind == STEEPEST_ASCENT:
        return _steepest_ascent(landscape, start, strategy)
    return long_jump_walk(landscape, start, strategy, rng)


def _first_improvement(landscape, start, strategy, rng) -> WalkTrace:
    n = landscape.n
    budget = resolve_budget(strategy, n)
    bits = as_genotype(start, n)
    f = landscape.fitness(bits)
    genotypes = [bits.copy()]
    fitnesses = [f]
    evals = 0
    order = np.empty(n, dtype=np.int64)
    while True:
        order[:] = np.arange(n)
        rng.shuffle(order)
        moved = False
        for t in range(n):
            if evals == budget:
                return _trace(genotypes, fitnesses, False, evals)
            loc = order[t]
            bits[loc] ^= 1
            fy = landscape.fitness(bits)
            evals += 1
            if fy > f:
                f = fy
                genotypes.append(bits.copy())
                fitnesses.append(f)
                moved = True
                break
            bits[loc] ^= 1
        if not moved:
            return _trace(genotypes, fitnesses, True, evals)


def steepest_ascent_walk(landscape: Landscape, start, rng: Stream | None = None,
                         max_evaluations: int = 0) -> WalkTrace:
    """Deterministic ascent: move to the fittest strictly improving neighbor,
    ties broken by the lowest flipped locus. The stream argument is accepted
    for interface symmetry and never consumed."""
    strategy = SearchStrategy(kind=STEEPEST_ASCENT, max_evaluations=max_evaluations)
    return _steepest_ascent(landscape, start, strategy)


def _steepest_ascent(landscape, start, strategy) -> WalkTrace:
    n = landscape.n
    budget = resolve_budget(strategy, n)
    bits = as_genotype(start, n)
    f = landscape.fitness(bits)
    genotypes = [bits.copy()]
    fitnesses = [f]
    evals = 0
    while True:
        if budget - evals < n:
            return _trace(genotypes, fitnesses, False, evals)
        best_f = f
        best_loc = -1
        for loc in range(n):
            bits[loc] ^= 1
            fy = landscape.fitness(bits)
            evals += 1
            bits[loc] ^= 1
            if fy > best_f:  # strict: first maximum keeps the lowest locus
                best_f = fy
                best_loc = loc
        if best_loc < 0:
            return _trace(genotypes, fitnesses, True, evals)
        bits[best_loc] ^= 1
        f = best_f
        genotypes.append(bits.copy())
        fitnesses.append(f)


def long_jump_walk(landscape: Landscape, start, strategy: SearchStrategy,
                   rng: Stream | None = None) -> WalkTrace:
    """Ratchet over distant proposals: flip `jump_width` distinct uniformly
    chosen loci, keep the move only if strictly fitter, stop on budget.

    The trace records accepted points only and is never certified as a
    1-mutant local optimum.
    """
    if rng is None:
        raise ValueError("long-jump walks need a random stream")
    n = landscape.n
    width = strategy.jump_width
    if not 2 <= width <= n:
        raise ValueError(f"jump_width must be in [2, n] = [2, {n}], got {width}")
    budget = resolve_budget(strategy, n)
    bits = as_genotype(start, n)
    f = landscape.fitness(bits)
    genotypes = [bits.copy()]
    fitnesses = [f]
    evals = 0
    while evals < budget:
        loci = rng.choose_distinct(width, n)
        for j in loci:
            bits[j] ^= 1
        fy = landscape.fitness(bits)
        evals += 1
        if fy > f:
            f = fy
            genotypes.append(bits.copy())
            fitnesses.append(f)
        else:
            for j in loci:
                bits[j] ^= 1
    return _trace(genotypes, fitnesses, False, evals)


def is_local_optimum(landscape: Landscape, genotype) -> bool:
    """True iff no 1-mutant neighbor is strictly fitter."""
    bits = as_genotype(genotype, landscape.n)
    f = landscape.fitness(bits)
    for loc in range(landscape.n):
        bits[loc] ^= 1
        fy = landscape.fitness(bits)
        bits[loc] ^= 1
        if fy > f:
            return False
    return True


def _trace(genotypes, fitnesses, terminated, evals) -> WalkTrace:
    g = np.asarray(genotypes, dtype=np.int64)
    f = np.asarray(fitnesses, dtype=np.float64)
    g.flags.writeable = False
    f.flags.writeable = False
    return WalkTrace(genotypes=g, fitnesses=f,
                     terminated_at_local_optimum=terminated, evaluations_used=evals)

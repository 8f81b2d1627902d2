"""Weighted NK fitness landscapes over binary capability strings.

A landscape couples ``n`` binary loci. Locus ``i`` contributes a value looked
up in a private table of ``2**(k+1)`` uniform draws, indexed by its own bit
and the bits of its ``k`` epistatic partners; overall fitness is the
weight-vector dot product of the ``n`` looked-up contributions. With equal
weights this reduces to the plain mean of the contributions.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .rng import Stream

PATTERN_RANDOM = "random"
PATTERN_ADJACENT = "adjacent"
PATTERNS = (PATTERN_RANDOM, PATTERN_ADJACENT)

# Empirical path weights for the five IT-enabled dynamic capabilities
# (sensing, learning, coordinating, integrating, reconfiguring); normalize
# with make_weight_vector to obtain the "itdc" weight preset.
ITDC_BETAS = (0.226, 0.249, 0.212, 0.212, 0.245)

WEIGHT_SUM_TOL = 1e-12


def make_weight_vector(betas) -> np.ndarray:
    """Normalize positive path coefficients into weights summing to 1.

    Args:
        betas: sequence of strictly positive coefficients, one per locus.

    Returns:
        float64 array ``phi`` with ``phi[i] = betas[i] / sum(betas)``.
    """
    arr = np.asarray(betas, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("betas must be a non-empty 1-D sequence")
    if not np.all(arr > 0.0):
        raise ValueError("all betas must be strictly positive")
    phi = arr / float(np.sum(arr))
    phi.flags.writeable = False
    return phi


def equal_weights(n: int) -> np.ndarray:
    """Weight vector 1/n per locus (the unweighted NK mean)."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    return make_weight_vector(np.ones(n))


def itdc_weights() -> np.ndarray:
    """The five-capability weight preset (normalized ITDC_BETAS)."""
    return make_weight_vector(ITDC_BETAS)


def _check_nk(n: int, k: int) -> None:
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must be in [0, n-1] = [0, {n - 1}], got {k}")


def build_epistasis_map(n: int, k: int, pattern: str, rng: Stream) -> np.ndarray:
    """Assign each locus its k epistatic partners.

    `random` draws k distinct partners uniformly from the other loci;
    `adjacent` takes the k cyclically following loci. Rows are sorted
    ascending. The random pattern consumes exactly k bounded draws per
    locus, in locus order.
    """
    _check_nk(n, k)
    partners = np.empty((n, k), dtype=np.int64)
    if pattern == PATTERN_ADJACENT:
        for i in range(n):
            partners[i] = sorted((i + d) % n for d in range(1, k + 1))
    elif pattern == PATTERN_RANDOM:
        for i in range(n):
            picks = rng.choose_distinct(k, n - 1)
            partners[i] = sorted(v if v < i else v + 1 for v in picks)
    else:
        raise ValueError(f"unknown epistasis pattern {pattern!r}")
    return partners


def generate_fitness_tables(n: int, k: int, rng: Stream) -> np.ndarray:
    """Draw the ``n * 2**(k+1)`` uniform contribution entries.

    Entries are consumed from the stream locus-major, then row-index order,
    so identically seeded streams give entry-for-entry identical tables.
    """
    _check_nk(n, k)
    rows = 1 << (k + 1)
    tables = np.empty((n, rows), dtype=np.float64)
    for i in range(n):
        for r in range(rows):
            tables[i, r] = rng.random()
    return tables


def table_index(genotype, locus: int, epistasis: np.ndarray) -> int:
    """Row index of a locus's contribution: own bit is the most significant,
    followed by the partner bits in ascending locus order."""
    idx = int(genotype[locus])
    for j in epistasis[locus]:
        idx = (idx << 1) | int(genotype[j])
    return idx


def neighbors(genotype) -> np.ndarray:
    """All Hamming-1 variants, ordered by ascending flipped locus."""
    bits = np.asarray(genotype, dtype=np.int64)
    n = bits.shape[0]
    out = np.repeat(bits[None, :], n, axis=0)
    idx = np.arange(n)
    out[idx, idx] ^= 1
    return out


def random_genotype(n: int, rng: Stream) -> np.ndarray:
    """Uniform genotype: one bounded bit draw per locus, in locus order."""
    if n <= 0:
        raise ValueError(f"n must be positive, got {n}")
    return np.array([rng.below(2) for _ in range(n)], dtype=np.int64)


def genotype_to_int(genotype) -> int:
    """Pack bits into an integer, locus 0 as the most significant bit."""
    value = 0
    for b in genotype:
        value = (value << 1) | int(b)
    return value


def int_to_genotype(value: int, n: int) -> np.ndarray:
    """Inverse of genotype_to_int."""
    return np.array([(value >> (n - 1 - i)) & 1 for i in range(n)], dtype=np.int64)


def as_genotype(obj, n: int) -> np.ndarray:
    """Validate and copy an external bit sequence into a genotype array."""
    bits = np.asarray(obj, dtype=np.int64).copy()
    if bits.ndim != 1 or bits.shape[0] != n:
        raise ValueError(f"genotype must be a length-{n} bit sequence")
    if not np.all((bits == 0) | (bits == 1)):
        raise ValueError("genotype entries must be 0 or 1")
    return bits


@dataclass(frozen=True)
class Landscape:
    """Immutable NK landscape: structure, tables, and locus weights.

    Attributes:
        n: number of loci.
        k: epistatic partners per locus.
        partners: (n, k) int64 array, each row sorted ascending, no self.
        tables: (n, 2**(k+1)) float64 contribution entries in [0, 1).
        weights: (n,) float64 weights, strictly positive, summing to 1.
    """

    n: int
    k: int
    partners: np.ndarray
    tables: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        _check_nk(self.n, self.k)
        partners = np.ascontiguousarray(self.partners, dtype=np.int64)
        tables = np.ascontiguousarray(self.tables, dtype=np.float64)
        weights = np.ascontiguousarray(self.weights, dtype=np.float64)
        if partners.shape != (self.n, self.k):
            raise ValueError(f"partners must have shape {(self.n, self.k)}")
        for i in range(self.n):
            row = partners[i]
            if np.any(row == i) or np.any(row < 0) or np.any(row >= self.n):
                raise ValueError(f"invalid partner indices for locus {i}")
            if len(set(row.tolist())) != self.k or np.any(np.diff(row) < 0):
                raise ValueError(f"partners of locus {i} must be distinct and ascending")
        if tables.shape != (self.n, 1 << (self.k + 1)):
            raise ValueError(f"tables must have shape {(self.n, 1 << (self.k + 1))}")
        if np.any(tables < 0.0) or np.any(tables >= 1.0):
            raise ValueError("table entries must lie in [0, 1)")
        if weights.shape != (self.n,):
            raise ValueError(f"weights must have shape ({self.n},)")
        if not np.all(weights > 0.0) or abs(float(np.sum(weights)) - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError("weights must be strictly positive and sum to 1")
        for name, arr in (("partners", partners), ("tables", tables), ("weights", weights)):
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)

    @classmethod
    def generate(cls, n: int, k: int, weights, pattern: str = PATTERN_RANDOM,
                 rng: Stream | None = None) -> "Landscape":
        """Draw a fresh landscape from a stream.

        Consumes the stream in a fixed order: epistasis map first, then
        tables, so a seed fully determines the landscape.
        """
        if rng is None:
            raise ValueError("a random stream is required")
        partners = build_epistasis_map(n, k, pattern, rng)
        tables = generate_fitness_tables(n, k, rng)
        return cls(n=n, k=k, partners=partners, tables=tables,
                   weights=np.asarray(weights, dtype=np.float64))

    def fitness(self, genotype) -> float:
        """Weighted fitness of a genotype, in [0, 1).

        Accumulates ``weights[i] * tables[i, row]`` in ascending locus order
        (the summation order is part of the reproducibility contract).
        """
        if len(genotype) != self.n:
            raise ValueError(f"genotype length {len(genotype)} != n = {self.n}")
        total = 0.0
        for i in range(self.n):
            total += self.weights[i] * self.tables[i, table_index(genotype, i, self.partners)]
        return total

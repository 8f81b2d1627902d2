"""Landscape construction, evaluation, and invariant tests."""

import numpy as np
import pytest

from nksim import (ITDC_BETAS, Landscape, Stream, build_epistasis_map, equal_weights,
                   generate_fitness_tables, genotype_to_int, int_to_genotype,
                   itdc_weights, make_weight_vector, neighbors, random_genotype,
                   table_index)
from nksim.landscape import as_genotype


# --- weight vectors ---------------------------------------------------------

def test_itdc_weights_normalized():
    phi = itdc_weights()
    assert abs(float(np.sum(phi)) - 1.0) <= 1e-12
    total = 0.226 + 0.249 + 0.212 + 0.212 + 0.245
    assert abs(total - 1.144) < 1e-12
    expected = [b / total for b in ITDC_BETAS]
    assert np.allclose(phi, expected, rtol=0, atol=1e-15)
    # the derived values themselves
    assert np.allclose(phi, [0.19755, 0.21766, 0.18531, 0.18531, 0.21416], atol=5e-6)


def test_equal_weights_reduce_to_mean_weighting():
    assert np.array_equal(equal_weights(5), np.full(5, 0.2))


def test_make_weight_vector_examples():
    assert np.array_equal(make_weight_vector((3, 1)), np.array([0.75, 0.25]))
    phi = make_weight_vector((1, 1, 1, 1, 1))
    assert np.array_equal(phi, np.full(5, 0.2))


def test_make_weight_vector_rejects_bad_betas():
    with pytest.raises(ValueError):
        make_weight_vector(())
    with pytest.raises(ValueError):
        make_weight_vector((0.5, 0.0))
    with pytest.raises(ValueError):
        make_weight_vector((0.5, -0.1))


# --- epistasis maps ---------------------------------------------------------

def test_k0_gives_empty_partner_lists():
    for pattern in ("random", "adjacent"):
        partners = build_epistasis_map(5, 0, pattern, Stream(1))
        assert partners.shape == (5, 0)


def test_k_max_lists_all_other_loci():
    for pattern in ("random", "adjacent"):
        partners = build_epistasis_map(5, 4, pattern, Stream(2))
        for i in range(5):
            assert sorted(partners[i]) == [j for j in range(5) if j != i]


def test_adjacent_pattern_is_cyclic():
    partners = build_epistasis_map(5, 2, "adjacent", Stream(3))
    expected = [[1, 2], [2, 3], [3, 4], [0, 4], [0, 1]]
    assert partners.tolist() == expected


def test_random_pattern_rows_valid():
    for seed in range(25):
        n, k = 7, 3
        partners = build_epistasis_map(n, k, "random", Stream(seed))
        for i in range(n):
            row = partners[i].tolist()
            assert len(set(row)) == k
            assert i not in row
            assert row == sorted(row)
            assert all(0 <= v < n for v in row)


def test_epistasis_map_domain_errors():
    with pytest.raises(ValueError):
        build_epistasis_map(5, 5, "random", Stream(0))
    with pytest.raises(ValueError):
        build_epistasis_map(0, 0, "random", Stream(0))
    with pytest.raises(ValueError):
        build_epistasis_map(5, -1, "random", Stream(0))
    with pytest.raises(ValueError):
        build_epistasis_map(5, 2, "ring", Stream(0))


# --- fitness tables ---------------------------------------------------------

@pytest.mark.parametrize("n,k,total", [(5, 4, 160), (5, 0, 10), (3, 1, 12)])
def test_table_entry_counts(n, k, total):
    tables = generate_fitness_tables(n, k, Stream(11))
    assert tables.size == total
    assert tables.shape == (n, 1 << (k + 1))
    assert np.all(tables >= 0.0) and np.all(tables < 1.0)


def test_tables_reproducible_from_seed():
    a = generate_fitness_tables(5, 2, Stream(123))
    b = generate_fitness_tables(5, 2, Stream(123))
    assert np.array_equal(a, b)


# --- table_index ------------------------------------------------------------

def test_table_index_examples():
    own_only = np.empty((3, 0), dtype=np.int64)
    assert table_index([1, 1, 1], 0, own_only) == 1
    partners = np.array([[1, 2], [0, 2], [0, 1]])
    assert table_index([1, 0, 1], 0, partners) == 0b101
    assert table_index([0, 0, 0], 1, partners) == 0
    assert table_index([0, 0, 0], 0, own_only) == 0


@pytest.mark.parametrize("k", [0, 1, 2, 4, 6])
def test_table_index_bijection(k):
    n = k + 2
    partners = build_epistasis_map(n, k, "random", Stream(k))
    locus = 0
    relevant = [locus] + partners[locus].tolist()
    seen = set()
    bits = random_genotype(n, Stream(99))
    for pattern in range(1 << (k + 1)):
        for pos, j in enumerate(relevant):
            bits[j] = (pattern >> (k - pos)) & 1
        seen.add(table_index(bits, locus, partners))
    assert seen == set(range(1 << (k + 1)))


# --- evaluation -------------------------------------------------------------

def test_constant_tables_give_constant_fitness():
    tables = np.full((4, 4), 0.5)
    partners = build_epistasis_map(4, 1, "adjacent", Stream(0))
    land = Landscape(n=4, k=1, partners=partners, tables=tables,
                     weights=make_weight_vector((0.4, 0.3, 0.2, 0.1)))
    for seed in range(10):
        g = random_genotype(4, Stream(seed))
        assert abs(land.fitness(g) - 0.5) < 1e-12


def test_hand_evaluated_two_locus_landscape(two_locus_independent):
    land = two_locus_independent
    assert abs(land.fitness([1, 1]) - 0.7) < 1e-12
    assert abs(land.fitness([0, 0]) - 0.3) < 1e-12
    assert abs(land.fitness([1, 0]) - 0.6) < 1e-12
    assert abs(land.fitness([0, 1]) - 0.4) < 1e-12


def test_fitness_rejects_length_mismatch(two_locus_independent):
    with pytest.raises(ValueError):
        two_locus_independent.fitness([0, 1, 1])


def test_fitness_in_unit_interval_and_equal_weight_mean():
    for seed in range(20):
        rng = Stream(seed)
        land = Landscape.generate(6, 2, equal_weights(6), "random", rng)
        g = random_genotype(6, Stream(seed + 1000))
        f = land.fitness(g)
        assert 0.0 <= f < 1.0
        contribs = [land.tables[i, table_index(g, i, land.partners)] for i in range(6)]
        assert abs(f - np.mean(contribs)) <= 1e-12


def test_k0_flip_changes_exactly_one_contribution():
    land = Landscape.generate(5, 0, itdc_weights(), "random", Stream(8))
    g = random_genotype(5, Stream(9))
    before = [land.tables[i, table_index(g, i, land.partners)] for i in range(5)]
    for j in range(5):
        g[j] ^= 1
        after = [land.tables[i, table_index(g, i, land.partners)] for i in range(5)]
        g[j] ^= 1
        changed = [i for i in range(5) if before[i] != after[i]]
        assert changed == [j]


def test_same_seed_same_landscape():
    a = Landscape.generate(5, 3, itdc_weights(), "random", Stream(321))
    b = Landscape.generate(5, 3, itdc_weights(), "random", Stream(321))
    assert np.array_equal(a.partners, b.partners)
    assert np.array_equal(a.tables, b.tables)


def test_landscape_is_immutable():
    land = Landscape.generate(4, 1, equal_weights(4), "random", Stream(6))
    with pytest.raises(ValueError):
        land.tables[0, 0] = 0.9
    with pytest.raises(ValueError):
        land.partners[0, 0] = 2
    with pytest.raises(ValueError):
        land.weights[0] = 0.5


def test_landscape_validation():
    ok = dict(n=3, k=1, partners=np.array([[1], [2], [0]]),
              tables=np.random.default_rng(0).random((3, 4)),
              weights=equal_weights(3))
    Landscape(**ok)
    bad = dict(ok, partners=np.array([[0], [2], [0]]))  # self-partner
    with pytest.raises(ValueError):
        Landscape(**bad)
    bad = dict(ok, tables=np.full((3, 4), 1.0))  # entries must stay below 1
    with pytest.raises(ValueError):
        Landscape(**bad)
    bad = dict(ok, tables=np.random.default_rng(0).random((3, 2)))
    with pytest.raises(ValueError):
        Landscape(**bad)
    bad = dict(ok, weights=np.array([0.5, 0.5, 0.5]))
    with pytest.raises(ValueError):
        Landscape(**bad)
    with pytest.raises(ValueError):
        Landscape(**dict(ok, k=3))


# --- genotype helpers -------------------------------------------------------

def test_neighbors_examples():
    assert neighbors([0, 0, 1]).tolist() == [[1, 0, 1], [0, 1, 1], [0, 0, 0]]
    assert neighbors([0]).tolist() == [[1]]
    zero5 = neighbors([0, 0, 0, 0, 0])
    assert zero5.shape == (5, 5)
    assert np.array_equal(zero5.sum(axis=1), np.ones(5, dtype=np.int64))


def test_genotype_int_roundtrip():
    for n in (1, 3, 5, 8):
        for value in range(1 << n):
            assert genotype_to_int(int_to_genotype(value, n)) == value
    assert genotype_to_int([0, 0, 1]) == 1  # locus 0 is the most significant bit
    assert genotype_to_int([1, 0, 0]) == 4


def test_random_genotype_uniform_bits():
    rng = Stream(55)
    draws = np.array([random_genotype(5, rng) for _ in range(4000)])
    assert set(np.unique(draws)) == {0, 1}
    freq = draws.mean(axis=0)
    assert np.all(np.abs(freq - 0.5) < 0.05)


def test_as_genotype_validation():
    assert np.array_equal(as_genotype([0, 1, 0], 3), np.array([0, 1, 0]))
    with pytest.raises(ValueError):
        as_genotype([0, 1], 3)
    with pytest.raises(ValueError):
        as_genotype([0, 1, 2], 3)

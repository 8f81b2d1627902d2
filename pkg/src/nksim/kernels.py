"""numba-accelerated twins of the hot inner loops.

Same algorithms as `rng`, `landscape`, `search`, and `oracle`, rewritten
against raw numpy arrays and uint64 state vectors so the Monte Carlo runs
compile to machine code. Stream consumption order matches the pure-Python
implementations draw for draw; the test suite pins both paths to identical
bits.

Backend selection: ``NKSIM_BACKEND=python`` (or a per-call override) routes
the package around these kernels entirely. Without numba installed the
decorator degrades to a passthrough so the module stays importable.
"""

import os
import warnings

import numpy as np

try:
    from numba import njit

    NUMBA_AVAILABLE = True
except ImportError:  # pragma: no cover - exercised only without numba
    NUMBA_AVAILABLE = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def decorate(func):
            return func

        return decorate


_VALID_BACKENDS = ("numba", "python")


def resolve_backend(override: str | None = None) -> str:
    """Active backend name: explicit override > NKSIM_BACKEND env > auto."""
    choice = (override or os.environ.get("NKSIM_BACKEND", "auto")).strip().lower() or "auto"
    if choice == "auto":
        return "numba" if NUMBA_AVAILABLE else "python"
    if choice not in _VALID_BACKENDS:
        raise ValueError(f"unknown backend {choice!r}; expected 'numba' or 'python'")
    if choice == "numba" and not NUMBA_AVAILABLE:
        warnings.warn("numba requested but not importable; using the python backend")
        return "python"
    return choice


MASK64 = (1 << 64) - 1

# Stream purpose tags mixed into derived seeds (see experiment.derive_stream).
PURPOSE_LANDSCAPE = 1
PURPOSE_START = 2
PURPOSE_WALK = 3

# Wire codes shared between experiment.py and run_batch.
PATTERN_CODES = {"random": 0, "adjacent": 1}
MODE_CODES = {"per_simulation": 0, "fixed_per_run": 1}
STRATEGY_CODES = {"first_improvement": 0, "steepest_ascent": 1, "long_jump": 2}

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U5 = np.uint64(5)
_U7 = np.uint64(7)
_U9 = np.uint64(9)
_U11 = np.uint64(11)
_U17 = np.uint64(17)
_U27 = np.uint64(27)
_U30 = np.uint64(30)
_U31 = np.uint64(31)
_U45 = np.uint64(45)
_U64 = np.uint64(64)
_UZERO = np.uint64(0)
_INV53 = 1.1102230246251565e-16  # 2**-53

_JIT = dict(cache=True, nogil=True)


@njit(**_JIT)
def mix64(z):
    z = (z ^ (z >> _U30)) * _MIX1
    z = (z ^ (z >> _U27)) * _MIX2
    return z ^ (z >> _U31)


@njit(**_JIT)
def _rotl(x, k):
    return (x << k) | (x >> (_U64 - k))


@njit(**_JIT)
def derive_seed4(master, w0, w1, w2, w3):
    h = mix64(master)
    h = mix64(h ^ (np.uint64(w0) + _GOLDEN))
    h = mix64(h ^ (np.uint64(w1) + _GOLDEN))
    h = mix64(h ^ (np.uint64(w2) + _GOLDEN))
    h = mix64(h ^ (np.uint64(w3) + _GOLDEN))
    return h


@njit(**_JIT)
def stream_init(seed, state):
    s = seed
    for i in range(4):
        s = s + _GOLDEN
        state[i] = mix64(s)


@njit(**_JIT)
def next_u64(state):
    s0 = state[0]
    s1 = state[1]
    s2 = state[2]
    s3 = state[3]
    out = _rotl(s1 * _U5, _U7) * _U9
    t = s1 << _U17
    s2 ^= s0
    s3 ^= s1
    s1 ^= s2
    s0 ^= s3
    s2 ^= t
    s3 = _rotl(s3, _U45)
    state[0] = s0
    state[1] = s1
    state[2] = s2
    state[3] = s3
    return out


@njit(**_JIT)
def next_double(state):
    return (next_u64(state) >> _U11) * _INV53


@njit(**_JIT)
def next_below(state, n):
    un = np.uint64(n)
    threshold = (_UZERO - un) % un
    while True:
        u = next_u64(state)
        if u >= threshold:
            return np.int64(u % un)


@njit(**_JIT)
def fill_doubles(state, out):
    for i in range(out.shape[0]):
        out[i] = next_double(state)


@njit(**_JIT)
def _choose_distinct_into(pool, count, m, state):
    # Partial Fisher-Yates over a fresh identity pool; result in pool[:count].
    for v in range(m):
        pool[v] = v
    for j in range(count):
        r = j + next_below(state, m - j)
        tmp = pool[j]
        pool[j] = pool[r]
        pool[r] = tmp


@njit(**_JIT)
def build_partners(partners, pattern_code, state, pool):
    n = partners.shape[0]
    k = partners.shape[1]
    for i in range(n):
        if pattern_code == 0:  # random
            _choose_distinct_into(pool, k, n - 1, state)
            for j in range(k):
                v = pool[j]
                partners[i, j] = v if v < i else v + 1
        else:  # adjacent (cyclic)
            for d in range(1, k + 1):
                partners[i, d - 1] = (i + d) % n
        partners[i].sort()


@njit(**_JIT)
def fill_tables(tables, state):
    n = tables.shape[0]
    rows = tables.shape[1]
    for i in range(n):
        for r in range(rows):
            tables[i, r] = next_double(state)


@njit(**_JIT)
def eval_fitness(bits, partners, tables, weights):
    n = partners.shape[0]
    k = partners.shape[1]
    total = 0.0
    for i in range(n):
        idx = bits[i]
        for t in range(k):
            idx = (idx << 1) | bits[partners[i, t]]
        total += weights[i] * tables[i, idx]
    return total


@njit(**_JIT)
def random_bits(bits, state):
    for i in range(bits.shape[0]):
        bits[i] = next_below(state, 2)


@njit(**_JIT)
def walk_first_improvement(bits, partners, tables, weights, state, budget, order):
    n = bits.shape[0]
    f = eval_fitness(bits, partners, tables, weights)
    moves = 0
    evals = 0
    while True:
        for v in range(n):
            order[v] = v
        for i in range(n - 1, 0, -1):
            j = next_below(state, i + 1)
            tmp = order[i]
            order[i] = order[j]
            order[j] = tmp
        moved = False
        for t in range(n):
            if evals == budget:
                return f, moves, evals, False
            loc = order[t]
            bits[loc] ^= 1
            fy = eval_fitness(bits, partners, tables, weights)
            evals += 1
            if fy > f:
                f = fy
                moves += 1
                moved = True
                break
            bits[loc] ^= 1
        if not moved:
            return f, moves, evals, True


@njit(**_JIT)
def walk_steepest(bits, partners, tables, weights, budget):
    n = bits.shape[0]
    f = eval_fitness(bits, partners, tables, weights)
    moves = 0
    evals = 0
    while True:
        if budget - evals < n:
            return f, moves, evals, False
        best_f = f
        best_loc = -1
        for loc in range(n):
            bits[loc] ^= 1
            fy = eval_fitness(bits, partners, tables, weights)
            evals += 1
            bits[loc] ^= 1
            if fy > best_f:
                best_f = fy
                best_loc = loc
        if best_loc < 0:
            return f, moves, evals, True
        bits[best_loc] ^= 1
        f = best_f
        moves += 1


@njit(**_JIT)
def walk_long_jump(bits, partners, tables, weights, state, width, budget, pool):
    n = bits.shape[0]
    f = eval_fitness(bits, partners, tables, weights)
    moves = 0
    evals = 0
    while evals < budget:
        _choose_distinct_into(pool, width, n, state)
        for j in range(width):
            bits[pool[j]] ^= 1
        fy = eval_fitness(bits, partners, tables, weights)
        evals += 1
        if fy > f:
            f = fy
            moves += 1
        else:
            for j in range(width):
                bits[pool[j]] ^= 1
    return f, moves, evals, False


@njit(**_JIT)
def run_batch(n, kv, pattern_code, weights, master, run_idx, sims, mode_code,
              strat_code, width, budget, out_fit, out_moves):
    """All simulations of one (k, run) cell; fills per-sim endpoint arrays."""
    state = np.empty(4, dtype=np.uint64)
    partners = np.empty((n, kv), dtype=np.int64)
    tables = np.empty((n, 1 << (kv + 1)), dtype=np.float64)
    bits = np.empty(n, dtype=np.int64)
    order = np.empty(n, dtype=np.int64)
    pool = np.empty(n, dtype=np.int64)
    if mode_code == 1:  # one landscape shared by the whole run
        stream_init(derive_seed4(master, PURPOSE_LANDSCAPE, kv, run_idx, 0), state)
        build_partners(partners, pattern_code, state, pool)
        fill_tables(tables, state)
    for sim in range(sims):
        if mode_code == 0:  # fresh landscape per simulation
            stream_init(derive_seed4(master, PURPOSE_LANDSCAPE, kv, run_idx, sim), state)
            build_partners(partners, pattern_code, state, pool)
            fill_tables(tables, state)
        stream_init(derive_seed4(master, PURPOSE_START, kv, run_idx, sim), state)
        random_bits(bits, state)
        stream_init(derive_seed4(master, PURPOSE_WALK, kv, run_idx, sim), state)
        if strat_code == 0:
            f, moves, _, _ = walk_first_improvement(bits, partners, tables, weights,
                                                    state, budget, order)
        elif strat_code == 1:
            f, moves, _, _ = walk_steepest(bits, partners, tables, weights, budget)
        else:
            f, moves, _, _ = walk_long_jump(bits, partners, tables, weights,
                                            state, width, budget, pool)
        out_fit[sim] = f
        out_moves[sim] = moves


@njit(**_JIT)
def full_fitness(partners, tables, weights):
    """Fitness of every genotype, indexed by its integer value (locus 0 = MSB)."""
    n = partners.shape[0]
    size = 1 << n
    out = np.empty(size, dtype=np.float64)
    bits = np.empty(n, dtype=np.int64)
    for g in range(size):
        for i in range(n):
            bits[i] = (g >> (n - 1 - i)) & 1
        out[g] = eval_fitness(bits, partners, tables, weights)
    return out


@njit(**_JIT)
def census_from_fitness(fitness, n):
    """Local optima (ascending genotype ints) and steepest-ascent basin sizes."""
    size = 1 << n
    succ = np.empty(size, dtype=np.int64)
    n_opt = 0
    for g in range(size):
        best_f = fitness[g]
        best = -1
        for loc in range(n):
            nb = g ^ (1 << (n - 1 - loc))
            if fitness[nb] > best_f:  # strict: first maximum keeps lowest locus
                best_f = fitness[nb]
                best = nb
        if best < 0:
            succ[g] = g
            n_opt += 1
        else:
            succ[g] = best
    optima = np.empty(n_opt, dtype=np.int64)
    slot = np.full(size, -1, dtype=np.int64)
    c = 0
    for g in range(size):
        if succ[g] == g:
            optima[c] = g
            slot[g] = c
            c += 1
    counts = np.zeros(n_opt, dtype=np.int64)
    for g in range(size):
        node = g
        while succ[node] != node:
            node = succ[node]
        counts[slot[node]] += 1
    return optima, counts


@njit(**_JIT)
def census_sample_batch(n, kv, pattern_code, weights, state,
                        out_counts, out_opt_mean, out_global):
    """Census stats over fresh landscapes drawn sequentially from one stream."""
    samples = out_counts.shape[0]
    partners = np.empty((n, kv), dtype=np.int64)
    tables = np.empty((n, 1 << (kv + 1)), dtype=np.float64)
    pool = np.empty(n, dtype=np.int64)
    for s in range(samples):
        build_partners(partners, pattern_code, state, pool)
        fill_tables(tables, state)
        fitness = full_fitness(partners, tables, weights)
        optima, _ = census_from_fitness(fitness, n)
        total = 0.0
        best = 0.0
        for j in range(optima.shape[0]):
            fo = fitness[optima[j]]
            total += fo
            if fo > best:
                best = fo
        out_counts[s] = optima.shape[0]
        out_opt_mean[s] = total / optima.shape[0]
        out_global[s] = best


@njit(**_JIT)
def all_derived_seeds(master, purposes, kvals, runs, sims):
    """Every derived stream seed of an experiment, for collision checks."""
    total = purposes.shape[0] * kvals.shape[0] * runs * sims
    out = np.empty(total, dtype=np.uint64)
    pos = 0
    for p in range(purposes.shape[0]):
        for ki in range(kvals.shape[0]):
            for run in range(runs):
                for sim in range(sims):
                    out[pos] = derive_seed4(master, purposes[p], kvals[ki], run, sim)
                    pos += 1
    return out


def new_state(seed: int) -> np.ndarray:
    """Fresh xoshiro256** state array for a 64-bit seed (python-side helper)."""
    state = np.empty(4, dtype=np.uint64)
    stream_init(np.uint64(seed & MASK64), state)
    return state

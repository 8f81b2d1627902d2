"""Deterministic 64-bit random streams.

Everything random in this package flows through explicit `Stream` objects;
nothing touches global RNG state. The generator contract, fixed so that runs
reproduce bit-for-bit across machines and backends:

* algorithm: xoshiro256** (state = four 64-bit words);
* seeding: four successive splitmix64 outputs, starting from the 64-bit
  seed, fill the state;
* doubles: top 53 bits of a word, ``(word >> 11) * 2**-53``, in [0, 1);
* bounded integers: rejection below the divisibility threshold
  ``2**64 % n``, so each value in range is exactly equally likely;
* shuffles: Fisher-Yates from the top index down;
* distinct-index draws: partial Fisher-Yates over a fresh identity pool.

Seeds for derived streams come from `derive_seed`, which chains the
splitmix64 finalizer over the identifying words (purpose, k, run, sim).
`kernels` implements the same algorithms on uint64 arrays for the numba
backend; the test suite pins both to shared golden vectors.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """splitmix64 finalizer: bijective avalanche of a 64-bit word."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def splitmix64(state: int) -> tuple[int, int]:
    """Advance a splitmix64 state by one step; returns (new_state, output)."""
    state = (state + GOLDEN) & MASK64
    return state, mix64(state)


def derive_seed(master_seed: int, *words: int) -> int:
    """Mix a master seed with identifying integers into one 64-bit seed.

    Chains the splitmix64 finalizer over the words, so distinct tuples give
    (for any practical domain size) distinct seeds.
    """
    h = mix64(master_seed)
    for w in words:
        h = mix64(h ^ ((w + GOLDEN) & MASK64))
    return h


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Stream:
    """One xoshiro256** random stream, owned by exactly one consumer."""

    __slots__ = ("_s0", "_s1", "_s2", "_s3")

    def __init__(self, seed: int):
        state = seed & MASK64
        state, self._s0 = splitmix64(state)
        state, self._s1 = splitmix64(state)
        state, self._s2 = splitmix64(state)
        state, self._s3 = splitmix64(state)

    def u64(self) -> int:
        """Next raw 64-bit word."""
        s0, s1, s2, s3 = self._s0, self._s1, self._s2, self._s3
        out = (_rotl((s1 * 5) & MASK64, 7) * 9) & MASK64
        t = (s1 << 17) & MASK64
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = _rotl(s3, 45)
        self._s0, self._s1, self._s2, self._s3 = s0, s1, s2, s3
        return out

    def random(self) -> float:
        """Uniform double in [0, 1)."""
        return (self.u64() >> 11) * 1.1102230246251565e-16  # 2**-53

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), unbiased via threshold rejection."""
        if n <= 0:
            raise ValueError(f"bound must be positive, got {n}")
        threshold = (1 << 64) % n
        while True:
            u = self.u64()
            if u >= threshold:
                return u % n

    def shuffle(self, arr) -> None:
        """In-place Fisher-Yates shuffle of a mutable sequence."""
        for i in range(len(arr) - 1, 0, -1):
            j = self.below(i + 1)
            arr[i], arr[j] = arr[j], arr[i]

    def choose_distinct(self, count: int, m: int) -> list[int]:
        """Draw `count` distinct integers from [0, m) by partial Fisher-Yates.

        Order of the result is the draw order (not sorted).
        """
        if not 0 <= count <= m:
            raise ValueError(f"cannot draw {count} distinct values from {m}")
        pool = list(range(m))
        for j in range(count):
            r = j + self.below(m - j)
            pool[j], pool[r] = pool[r], pool[j]
        return pool[:count]

    def state(self) -> tuple[int, int, int, int]:
        """Current state words (for tests and backend handoff)."""
        return (self._s0, self._s1, self._s2, self._s3)

    def set_state(self, words) -> None:
        """Restore state words previously obtained from `state()`."""
        self._s0, self._s1, self._s2, self._s3 = (int(w) & MASK64 for w in words)

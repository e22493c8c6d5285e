import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rhwave import ConfigError, build_sieve, mu
from rhwave.mobius import BYTES_PER_ENTRY, MAX_SIEVE_LIMIT

from oracles import eratosthenes_mu, prime_factors, trial_division_mu

# sum_{n <= 1e6} mu(n), from a one-off trial-division run over every n <= 1e6
MERTENS_1E6 = 212


@pytest.mark.parametrize("n, expected", [(1, 1), (4, 0), (6, 1), (30, -1)])
def test_definition_cases(table, n, expected):
    assert mu(table, n) == expected


@pytest.mark.parametrize("n, expected", [(1, 1), (49, 0), (70, -1)])
def test_small_table_lookups(n, expected):
    assert mu(build_sieve(100), n) == expected


def test_matches_trial_division_to_1e4(small_table):
    for n in range(1, 10**4 + 1):
        assert small_table[n] == trial_division_mu(n), n


def test_squarefree_parity(small_table):
    for n in range(2, 10**4 + 1):
        f = prime_factors(n)
        if len(set(f)) == len(f):
            assert small_table[n] == (-1) ** len(f)


def test_mertens_prefix_matches_oracle(small_table):
    oracle = np.cumsum([trial_division_mu(n) for n in range(1, 10**4 + 1)])
    for n in range(1, 10**4 + 1):
        assert small_table.mertens(n) == oracle[n - 1]
        assert abs(oracle[n - 1]) <= n


def test_mertens_1e6(table):
    assert table.mertens(10**6) == MERTENS_1E6


def test_full_table_matches_eratosthenes(table):
    assert np.array_equal(table.values[1:].astype(np.int64), eratosthenes_mu(10**6)[1:])


def test_prime_values(small_table):
    ref = eratosthenes_mu(10**4)
    primes = [p for p in range(2, 10**4) if all(p % q for q in range(2, math.isqrt(p) + 1))]
    assert all(small_table[p] == -1 for p in primes)
    assert all(ref[p] == -1 for p in primes)


@settings(max_examples=1000, deadline=None)
@given(st.integers(1, 1000), st.integers(1, 1000))
def test_multiplicative_on_coprime_pairs(a, b):
    t = _shared_table()
    if math.gcd(a, b) == 1:
        assert mu(t, a * b) == mu(t, a) * mu(t, b)


_cache = {}


def _shared_table():
    if "t" not in _cache:
        _cache["t"] = build_sieve(10**6)
    return _cache["t"]


def test_prefix_stability(small_table, table):
    assert np.array_equal(small_table.values[1:], table.values[1 : 10**4 + 1])


def test_deterministic():
    assert np.array_equal(build_sieve(5000).values, build_sieve(5000).values)


@pytest.mark.parametrize("limit", [0, -3])
def test_rejects_nonpositive_limit(limit):
    with pytest.raises(ConfigError):
        build_sieve(limit)


def test_rejects_limit_above_ceiling_with_sizing():
    with pytest.raises(ConfigError, match="GiB"):
        build_sieve(MAX_SIEVE_LIMIT + 1)


def test_custom_ceiling():
    with pytest.raises(ConfigError):
        build_sieve(1000, ceiling=999)


@pytest.mark.parametrize("n", [0, 101, -1])
def test_out_of_range_names_range(n):
    with pytest.raises(IndexError, match="100"):
        mu(build_sieve(100), n)


def test_memory_per_entry(small_table):
    assert BYTES_PER_ENTRY == 1
    assert small_table.nbytes >= 10**4
    assert set(np.unique(small_table.values[1:])) <= {-1, 0, 1}


def test_random_spot_checks(table):
    rng = random.Random(3)
    for n in rng.sample(range(1, 10**6 + 1), 300):
        assert table[n] == trial_division_mu(n)

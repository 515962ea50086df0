import numpy as np
import pytest
from hypothesis import given, strategies as st

from aprimes.arith import crt_k, iroot, is_prime, is_prime_power, strip_factor
from aprimes.errors import DomainError, RangeError
from aprimes.sieve import primes_up_to


def eratosthenes(n):
    flags = [True] * (n + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(n**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = [False] * len(flags[i * i :: i])
    return flags


def test_is_prime_matches_sieve_to_1e6():
    flags = eratosthenes(10**6)
    assert [n for n in range(10**6 + 1) if is_prime(n)] == [n for n, f in enumerate(flags) if f]


@pytest.mark.parametrize("n, expected", [
    (29, True), (1, False), (0, False), (2, True),
    # oracle: sympy.isprime at build time
    (25 * 10**12 + 31, False),
    (25 * 10**12 + 13, True),
    (2**61 - 1, True),
    (2**63 - 25, True),
    # strong pseudoprimes to the first few bases
    (3215031751, False),
    (3825123056546413051, False),
])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_range():
    assert is_prime(2**63) is False
    with pytest.raises(RangeError):
        is_prime(2**63 + 1)
    with pytest.raises(RangeError):
        is_prime(-1)


def test_numpy_sieve_agrees_with_miller_rabin():
    primes = primes_up_to(200_000)
    assert primes.tolist() == [n for n in range(200_001) if is_prime(n)]


@pytest.mark.parametrize("n, base, expected", [(30, 3, (1, 10)), (28, 2, (2, 7)), (7, 2, (0, 7)), (1, 3, (0, 1))])
def test_strip_factor_examples(n, base, expected):
    assert tuple(strip_factor(n, base)) == expected


@given(st.integers(min_value=1, max_value=2**64), st.sampled_from([2, 3]))
def test_strip_factor_round_trip(n, base):
    e, c = strip_factor(n, base)
    assert base**e * c == n and c % base != 0


def test_strip_factor_rejects_bad_input():
    with pytest.raises(DomainError):
        strip_factor(0, 2)
    with pytest.raises(DomainError):
        strip_factor(10, 5)


@pytest.mark.parametrize("n, expected", [(25, (5, 2)), (7, (7, 1)), (12, None), (36, None), (2**62, (2, 62))])
def test_is_prime_power_examples(n, expected):
    assert is_prime_power(n) == expected


def test_is_prime_power_exhaustive_small():
    primes = primes_up_to(1000).tolist()
    for q in primes:
        for mu in range(1, 9):
            assert is_prime_power(q**mu) == (q, mu)
    for q, q2 in zip(primes, primes[1:]):
        assert is_prime_power(q * q2) is None
        assert is_prime_power(q**3 * q2**2) is None


def test_is_prime_power_domain():
    with pytest.raises(DomainError):
        is_prime_power(1)


@given(st.integers(min_value=0, max_value=2**70), st.integers(min_value=1, max_value=12))
def test_iroot_is_floor(n, k):
    r = iroot(n, k)
    assert r**k <= n < (r + 1) ** k


def test_crt_k_brute_force():
    for beta in range(1, 4):
        for gamma in range(2, 6):
            m = 3**beta * 2**gamma
            brute = [k for k in range(1, m) if k % 3**beta == 3**beta - 1 and k % 2**gamma == 1]
            assert brute == [crt_k(beta, gamma)]


@pytest.mark.parametrize("beta, gamma, k", [(1, 2, 5), (2, 2, 17), (1, 3, 17)])
def test_crt_k_examples(beta, gamma, k):
    assert crt_k(beta, gamma) == k


def test_crt_k_congruences_wide():
    for beta in range(1, 21):
        for gamma in range(2, 41):
            k = crt_k(beta, gamma)
            assert (k + 1) % 3**beta == 0 and (k - 1) % 2**gamma == 0
            assert 0 < k < 3**beta * 2**gamma


@pytest.mark.parametrize("beta, gamma", [(0, 2), (1, 1)])
def test_crt_k_domain(beta, gamma):
    with pytest.raises(DomainError):
        crt_k(beta, gamma)

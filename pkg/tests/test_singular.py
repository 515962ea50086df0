import math
from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from aprimes.errors import DomainError
from aprimes.family import FamilyKey, LinearSystem, forms_for_family, resultant_product
from aprimes.sieve import primes_up_to
from aprimes.singular import (
    count_roots,
    exceptional_primes,
    hr_upper_bound,
    s_a_constant,
    singular_series,
    tail_bound,
)

FAMILY = forms_for_family((1, 1, 2))
PRIMES_200 = primes_up_to(200).tolist()


def brute_roots(system, l):
    return sum(1 for n in range(l) if math.prod(f(n) for f in system) % l == 0)


def brute_series(system, limit):
    R = len(system)
    out = Fraction(1)
    for l in primes_up_to(limit).tolist():
        out *= Fraction(l - brute_roots(system, l), l) * Fraction(l, l - 1) ** R
    return out


@pytest.mark.parametrize("system, l, expected", [
    (FAMILY, 2, 1), (FAMILY, 3, 1), (FAMILY, 5, 3), (LinearSystem([(1, 0)]), 7, 1),
])
def test_count_roots_examples(system, l, expected):
    assert count_roots(system, l) == expected


primitive_form = st.tuples(st.integers(1, 500), st.integers(-500, 500)).filter(lambda ab: gcd(*ab) == 1)


@settings(max_examples=100, deadline=None)
@given(st.lists(primitive_form, min_size=1, max_size=5))
def test_count_roots_matches_scan(forms):
    system = LinearSystem(forms)
    for l in PRIMES_200:
        rho = count_roots(system, l)
        assert rho == brute_roots(system, l)
        assert 0 <= rho <= min(len(system), l)


def test_rho_is_family_independent():
    keys = [FamilyKey(1, b, c) for b in range(1, 7) for c in range(2, 11)]
    keys += [FamilyKey(a, b, 1) for b in range(1, 7) for a in range(2, 11)]
    primes = primes_up_to(1000).tolist()
    for key in keys:
        system = forms_for_family(key)
        assert [count_roots(system, l) for l in primes] == [1, 1] + [3] * (len(primes) - 2)
        assert exceptional_primes(system) == {2, 3}


def test_four_form_systems_have_four_roots_off_t():
    base = forms_for_family((1, 1, 2))
    for f in [(24, 11), (18, 5), (36, 11), (48, 21), (8, 5)]:
        system = base.extend(f)
        T = resultant_product(system)
        assert T != 0
        for l in primes_up_to(500).tolist():
            if l >= 5 and T % l:
                assert count_roots(system, l) == 4


def test_series_small_limit_is_exact():
    assert s_a_constant(5).value == pytest.approx(7.03125, rel=1e-15)
    assert singular_series(FAMILY, 5).value == pytest.approx(7.03125, rel=1e-15)


@pytest.mark.parametrize("forms", [[(12, 5), (2, 1), (3, 1)], [(1, 0), (1, 2)], [(1, 0), (1, 2), (1, 6)], [(7, 3), (5, -2)]])
def test_series_matches_exact_rational_product(forms):
    system = LinearSystem(forms)
    res = singular_series(system, 3000)
    assert res.value == pytest.approx(float(brute_series(system, 3000)), rel=1e-13)


def test_single_form_is_two():
    assert singular_series(LinearSystem([(2, 1)]), 10**5).value == pytest.approx(2.0, rel=1e-14)


def test_twin_prime_constant():
    # 2 * C2 with C2 = 0.6601618158...
    res = singular_series(LinearSystem([(1, 0), (1, 2)]), 10**6)
    lo, hi = res.interval
    assert lo <= 2 * 0.66016181584686957 <= hi


def test_vanishing_series():
    assert singular_series(LinearSystem([(1, 0), (1, 1)]), 100).value == 0.0  # n(n+1) always even
    with pytest.raises(DomainError):
        singular_series(LinearSystem([(2, 1), (2, 1)]), 100)


def test_consistency_and_nesting():
    prev = None
    for P in [10**4, 10**5, 10**6]:
        a, b = s_a_constant(P), singular_series(FAMILY, P)
        assert abs(a.value - b.value) <= a.value * (a.tail_bound + b.tail_bound)
        lo, hi = a.interval
        if prev is not None:
            assert prev[0] <= a.value <= prev[1]
            assert lo <= prev[1]
        prev = (lo, hi)


def test_series_identical_across_families():
    values = {singular_series(forms_for_family(k), 10**5).value for k in [(1, 1, 2), (2, 1, 1), (1, 3, 5), (7, 2, 1)]}
    assert len(values) == 1


def test_tail_bound_covers_direct_tail():
    # the factors between 1e4 and 1e6 must lie inside the bound declared at 1e4
    inner = s_a_constant(10**6).value / s_a_constant(10**4).value
    assert 1 - tail_bound(3, 10**4) <= inner <= 1


def test_hr_upper_bound():
    s = s_a_constant(10**6)
    v = hr_upper_bound(FAMILY, 1e6, series=s)
    assert v == pytest.approx(48 * s.value * 1e6 / math.log(1e6) ** 3, rel=1e-14)
    assert 24 * 5.71649719 == pytest.approx(137.1959, abs=1e-4)
    with pytest.raises(DomainError):
        hr_upper_bound(LinearSystem([(2, 1), (2, 1)]), 1e6, 1000)
    with pytest.raises(DomainError):
        hr_upper_bound(FAMILY, 2, 1000)


def test_hr_bound_exceeds_family_count():
    from aprimes.enumeration import family_members
    for key in [(1, 1, 2), (2, 1, 1)]:
        system = forms_for_family(key)
        count = len(family_members(10**6, key))
        # forms are bounded by p(n) <= x, so n ranges up to x / leading coefficient
        assert count <= hr_upper_bound(system, 10**6 / system[0].a, 10**5)


def test_series_json():
    res = s_a_constant(100)
    assert '"prime_limit": 100' in res.to_json()


def test_prime_limit_validation():
    with pytest.raises(DomainError):
        s_a_constant(4)
    with pytest.raises(DomainError):
        singular_series(FAMILY, 3)

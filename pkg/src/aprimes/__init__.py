"""Primes p whose neighbours p - 1 and p + 1 have a single prime factor above 3.

A is the set of primes p = 2 (mod 3) with p + 1 = 2^a 3^b q and p - 1 = 2^c r
for primes q, r coprime to 6. The package counts A up to a limit, evaluates the
Hardy-Littlewood constant attached to it and builds maximal subsets B whose
members share no prime above 3 in p(p - 1)(p + 1).
"""
from .arith import crt_k, is_prime, is_prime_power, strip_factor
from .bset import BState, CollisionStats, build_b, collision_stats, verify_pairwise
from .density import CountRecord, build_table, li3, main_term
from .enumeration import (
    AbarMember,
    AMember,
    count_a_families,
    count_a_sieve,
    count_abar_minus_a,
    family_members,
    member_a,
    member_abar,
)
from .errors import (
    ConfigurationError,
    DomainError,
    PrecisionError,
    RangeError,
    RunInterrupted,
    UsageError,
)
from .family import (
    FamilyKey,
    LinearForm,
    LinearSystem,
    e_product,
    forms_for_family,
    resultant,
    resultant_product,
    validate_key,
)
from .singular import SingularSeriesResult, count_roots, hr_upper_bound, s_a_constant, singular_series

__version__ = "0.1.0"

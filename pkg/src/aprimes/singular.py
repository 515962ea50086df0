"""Hardy-Littlewood singular series for systems of linear forms.

The Euler product is split in two. Small primes (below ``EXACT_BELOW``) and
every prime dividing a leading coefficient or a resultant are multiplied
exactly with mpmath. The remaining primes all have rho = R, their log
factors are evaluated in float64 without cancellation and summed with
``math.fsum``. The tail past ``prime_limit`` is bounded analytically.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import mpmath
import numpy as np

from .errors import DomainError
from .family import LinearSystem, e_product, pairwise_resultants
from .sieve import primes_up_to

EXACT_BELOW = 1000
_FLOAT_SLACK = 1e-14  # covers float64 log evaluation and fsum rounding


@dataclass(frozen=True)
class SingularSeriesResult:
    value: float
    prime_limit: int
    tail_bound: float  # relative

    @property
    def interval(self) -> tuple[float, float]:
        return self.value * (1 - self.tail_bound), self.value * (1 + self.tail_bound)

    def to_json(self) -> str:
        return json.dumps({"value": self.value, "prime_limit": self.prime_limit,
                           "tail_bound": self.tail_bound}, sort_keys=True)


def count_roots(system: LinearSystem, l: int) -> int:
    """Number of residues n mod l at which some form vanishes."""
    roots = set()
    for f in system:
        if f.a % l:
            roots.add(-f.b * pow(f.a, -1, l) % l)
        elif f.b % l == 0:
            return l
    return len(roots)


def _prime_factors(n: int, limit: int = 10**7) -> set[int]:
    """Prime factors of |n| by trial division; raises if a cofactor is left over."""
    n = abs(n)
    out = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
        if d > limit:
            raise DomainError(f"cannot fully factor resultant cofactor {n}")
    if n > 1:
        out.add(n)
    return out


def exceptional_primes(system: LinearSystem) -> set[int]:
    """Primes dividing a leading coefficient or a pairwise resultant."""
    out = set()
    for f in system:
        out |= _prime_factors(f.a)
    for res in pairwise_resultants(system):
        out |= _prime_factors(res)
    return out


def tail_constant(R: int, prime_limit: int) -> float:
    """C with |log factor(p)| <= C / p**2 for every prime p > prime_limit with rho(p) = R.

    From log(1 - R/p) - R log(1 - 1/p) = -sum_{k>=2} (R**k - R) / (k p**k).
    """
    if prime_limit <= 2 * R:
        raise DomainError(f"prime_limit must exceed 2R = {2 * R}")
    return (R * R - R) / 2 + R**3 / (3 * prime_limit * (1 - R / prime_limit))


def tail_bound(R: int, prime_limit: int) -> float:
    """Relative error bound from dropping the primes above ``prime_limit``.

    Uses sum over odd n > P of 1/n**2 <= 1/(2(P - 1)). Every dropped factor is
    below 1, so the true value sits in [value * exp(-T), value].
    """
    t = tail_constant(R, prime_limit) / (2 * (prime_limit - 1))
    return math.expm1(t) + _FLOAT_SLACK


def _factor(rho: int, R: int, p: int) -> Fraction:
    return Fraction(p - rho, p) * Fraction(p, p - 1) ** R


def _generic_log_terms(R: int, primes: np.ndarray) -> np.ndarray:
    """log((1 - R/p)(1 - 1/p)**-R) for primes with rho = R, cancellation-free.

    With d = p - 1 the factor is 1 + c(d)/d**R where
    c(d) = (d + 1 - R)(d + 1)**(R - 1) - d**R has degree R - 1.
    """
    # coefficients of c(d), lowest degree first
    c = [0] * (R + 1)
    for j in range(R):
        c[j + 1] += comb(R - 1, j)
        c[j] += (1 - R) * comb(R - 1, j)
    c[R] -= 1
    assert c[R] == 0
    t = 1.0 / (primes.astype(np.float64) - 1.0)
    ratio = np.zeros_like(t)
    for j in range(R):  # c_j d**j / d**R = c_j t**(R - j)
        ratio += c[j] * t ** (R - j)
    return np.log1p(ratio)


def singular_series(system: LinearSystem, prime_limit: int = 10**8) -> SingularSeriesResult:
    """Truncated Euler product over primes <= prime_limit with a certified tail.

    Exceptional primes above ``prime_limit`` are still included exactly, so
    the tail only ever covers primes where rho = R.
    """
    if prime_limit < 5:
        raise DomainError(f"prime_limit must be >= 5, got {prime_limit}")
    if e_product(system) == 0:
        raise DomainError("proportional forms: the singular series diverges")
    R = len(system)
    bad = exceptional_primes(system)
    exact_primes = sorted(set(primes_up_to(min(prime_limit, EXACT_BELOW)).tolist()) | bad)
    with mpmath.workdps(40):
        head = mpmath.mpf(1)
        for l in exact_primes:
            rho = count_roots(system, l)
            if rho == l:
                return SingularSeriesResult(0.0, prime_limit, 0.0)
            f = _factor(rho, R, l)
            head *= mpmath.mpf(f.numerator) / f.denominator
        body = 0.0
        if prime_limit > EXACT_BELOW:
            primes = primes_up_to(prime_limit)
            primes = primes[primes > EXACT_BELOW]
            if bad:
                primes = primes[~np.isin(primes, sorted(bad))]
            body = math.fsum(_generic_log_terms(R, primes).tolist())
        value = float(head * mpmath.exp(body))
    return SingularSeriesResult(value, prime_limit, tail_bound(R, max(prime_limit, 2 * R + 1)))


def s_a_constant(prime_limit: int = 10**8) -> SingularSeriesResult:
    """9 * prod_{5 <= p <= P} (1 - 3/p)(1 - 1/p)**-3, the constant for A.

    Independent of :func:`singular_series`: each factor is written as
    1 + (1 - 3p)/(p - 1)**3 and the logs are summed directly.
    """
    if prime_limit < 5:
        raise DomainError(f"prime_limit must be >= 5, got {prime_limit}")
    primes = primes_up_to(prime_limit)
    p = primes[primes >= 5].astype(np.float64)
    logs = np.log1p((1.0 - 3.0 * p) / (p - 1.0) ** 3)
    with mpmath.workdps(30):
        value = float(9 * mpmath.exp(math.fsum(logs.tolist())))
    return SingularSeriesResult(value, prime_limit, tail_bound(3, max(prime_limit, 7)))


def hr_upper_bound(system: LinearSystem, x: float, prime_limit: int = 10**8,
                   series: SingularSeriesResult | None = None) -> float:
    """Main term 2**R R! S x / (log x)**R of the Halberstam-Richert upper bound."""
    if x < 3:
        raise DomainError(f"x must be >= 3, got {x}")
    if e_product(system) == 0:
        raise DomainError("E = 0: two forms are proportional")
    R = len(system)
    s = (series or singular_series(system, prime_limit)).value
    return 2**R * factorial(R) * s * x / math.log(x) ** R

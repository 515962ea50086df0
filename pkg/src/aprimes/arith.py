"""Exact integer primitives: primality, factor stripping, prime powers, CRT."""
from __future__ import annotations

from typing import NamedTuple

from .errors import DomainError, RangeError

MAX_PRIMALITY = 2**63

# Deterministic for every n < 3.3e24 (Sorenson & Webster), so all of 64 bits.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class StrippedFactorization(NamedTuple):
    exponent: int
    cofactor: int


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid on ``0 <= n <= 2**63``."""
    if n < 0 or n > MAX_PRIMALITY:
        raise RangeError(f"is_prime supports 0 <= n <= 2**63, got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    if n < 53 * 53:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def strip_factor(n: int, base: int) -> StrippedFactorization:
    """Split ``n = base**e * c`` with ``base`` not dividing ``c``."""
    if base not in (2, 3):
        raise DomainError(f"base must be 2 or 3, got {base}")
    if n < 1:
        raise DomainError(f"n must be positive, got {n}")
    if base == 2:
        e = (n & -n).bit_length() - 1
        return StrippedFactorization(e, n >> e)
    e = 0
    while n % 3 == 0:
        n //= 3
        e += 1
    return StrippedFactorization(e, n)


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a non-negative integer, exactly."""
    if n < 0 or k < 1:
        raise DomainError("iroot needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    if n.bit_length() <= 1000:
        x = int(round(n ** (1.0 / k)))
    else:
        x = 1 << -(-n.bit_length() // k)
    # float seed can be off by a few units near 2**63; walk to the exact floor
    while x ** k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def is_prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(q, mu)`` with ``n == q**mu`` and ``q`` prime, or ``None``.

    Exponents are tried from the largest possible downward; the first exact
    root found determines the answer, since for ``n = q**e`` no exponent above
    ``e`` has an exact root.
    """
    if n <= 1:
        raise DomainError(f"is_prime_power needs n >= 2, got {n}")
    for mu in range(n.bit_length() - 1, 0, -1):
        q = iroot(n, mu)
        if q >= 2 and q ** mu == n:
            return (q, mu) if is_prime(q) else None
    return None


def crt_k(beta: int, gamma: int) -> int:
    """Unique ``0 < k < 3**beta * 2**gamma`` with ``k = -1 (3**beta)``, ``k = 1 (2**gamma)``."""
    if beta < 1 or gamma < 2:
        raise DomainError(f"crt_k needs beta >= 1 and gamma >= 2, got ({beta}, {gamma})")
    m3, m2 = 3**beta, 2**gamma
    # k = 1 + m2 * t with m2 * t = -2 (mod m3)
    t = (-2 * pow(m2, -1, m3)) % m3
    return 1 + m2 * t

"""Exponent triples (alpha, beta, gamma) and their systems of linear forms.

Every p in A lies in exactly one family A^{alpha,beta,gamma}, and inside a
family p, q and r are values of linear polynomials in a single integer n.
Two shapes occur: gamma == 1 (then p = 2^a 3^b n - 1 and q = n) and
alpha == 1 (then p = 3^b 2^c n + k with k fixed by a CRT condition).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd, prod
from typing import Iterator, Sequence

from .arith import crt_k
from .errors import DomainError, RangeError

MAX_COEFFICIENT = 2**63


def validate_key(alpha: int, beta: int, gamma: int) -> bool:
    """True iff a family with these exponents can be nonempty."""
    if min(alpha, beta, gamma) < 1:
        raise DomainError(f"exponents must be >= 1, got ({alpha}, {beta}, {gamma})")
    return min(alpha, gamma) == 1 and max(alpha, gamma) >= 2


@dataclass(frozen=True, order=True)
class FamilyKey:
    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        if not validate_key(self.alpha, self.beta, self.gamma):
            raise DomainError(f"{tuple(self)} violates beta>=1, min(alpha,gamma)=1, max(alpha,gamma)>=2")

    def __iter__(self):
        return iter((self.alpha, self.beta, self.gamma))

    @property
    def modulus(self) -> int:
        """Leading coefficient of p(n)."""
        return 2 ** max(self.alpha, self.gamma) * 3**self.beta


@dataclass(frozen=True)
class LinearForm:
    """The polynomial ``a*n + b``."""

    a: int
    b: int

    def __post_init__(self):
        if self.a <= 0:
            raise DomainError(f"leading coefficient must be positive, got {self.a}")

    def __call__(self, n):
        return self.a * n + self.b

    @property
    def primitive(self) -> bool:
        return gcd(self.a, self.b) == 1

    def __str__(self):
        sign = "+" if self.b >= 0 else "-"
        return f"{self.a}n {sign} {abs(self.b)}"


@dataclass(frozen=True)
class LinearSystem:
    forms: tuple[LinearForm, ...]

    def __init__(self, forms: Sequence[LinearForm | tuple[int, int]]):
        forms = tuple(f if isinstance(f, LinearForm) else LinearForm(*f) for f in forms)
        if not forms:
            raise DomainError("a linear system needs at least one form")
        object.__setattr__(self, "forms", forms)

    @property
    def r(self) -> int:
        return len(self.forms)

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __getitem__(self, i):
        return self.forms[i]

    def __call__(self, n):
        return tuple(f(n) for f in self.forms)

    def extend(self, form: LinearForm | tuple[int, int]) -> "LinearSystem":
        return LinearSystem(self.forms + (form,))


def forms_for_family(key: FamilyKey | tuple[int, int, int]) -> LinearSystem:
    """The forms (p, q, r) parameterizing A^{alpha,beta,gamma}, in that order."""
    if not isinstance(key, FamilyKey):
        key = FamilyKey(*key)
    alpha, beta, gamma = key
    if key.modulus > MAX_COEFFICIENT:
        raise RangeError(f"family {tuple(key)} has modulus above 2**63")
    if gamma == 1:
        m = 2**alpha * 3**beta
        return LinearSystem([(m, -1), (1, 0), (m // 2, -1)])
    m3, m2 = 3**beta, 2**gamma
    k = crt_k(beta, gamma)
    return LinearSystem([(m3 * m2, k), (m2 // 2, (k + 1) // (2 * m3)), (m3, (k - 1) // m2)])


def iter_family_keys(max_modulus: int) -> Iterator[FamilyKey]:
    """All valid keys whose p-form has leading coefficient ``<= max_modulus``."""
    beta = 1
    while 3**beta * 4 <= max_modulus:
        e = 2
        while 3**beta * 2**e <= max_modulus:
            yield FamilyKey(1, beta, e)  # alpha = 1
            yield FamilyKey(e, beta, 1)  # gamma = 1
            e += 1
        beta += 1


def resultant(f: LinearForm, g: LinearForm) -> int:
    return f.a * g.b - g.a * f.b


def pairwise_resultants(system: LinearSystem) -> list[int]:
    return [resultant(f, g) for f, g in combinations(system.forms, 2)]


def e_product(system: LinearSystem) -> int:
    """Product of the leading coefficients and of all pairwise resultants."""
    return prod(f.a for f in system) * prod(pairwise_resultants(system))


def resultant_product(system: LinearSystem) -> int:
    """Product of the six pairwise resultants of a four-form system (p, q, r, f)."""
    if len(system) != 4:
        raise DomainError(f"resultant_product needs exactly 4 forms, got {len(system)}")
    return prod(pairwise_resultants(system))


def n_range(system: LinearSystem, x: int) -> range:
    """Values of n >= 0 with p(n) <= x, where p is the first form."""
    p = system[0]
    if x < p.b:
        return range(0)
    return range(0, (x - p.b) // p.a + 1)

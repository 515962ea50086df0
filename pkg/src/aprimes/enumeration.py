"""Enumeration and counting of A and Abar up to a limit.

Two independent routes produce |A_{<=x}|:

* :func:`count_a_sieve` walks the primes p <= x segment by segment, strips
  the 2s and 3s from p + 1 and p - 1 and looks the cofactors up in a packed
  prime bitmap. Segments can run on a thread pool and be checkpointed.
* :func:`count_a_families` walks every exponent family and tests the three
  linear forms p(n), q(n), r(n) against a plain sieve.
"""
from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from math import isqrt
from pathlib import Path
from typing import Iterable

import numpy as np

from .arith import is_prime, is_prime_power, strip_factor
from .errors import ConfigurationError, DomainError, RangeError, RunInterrupted
from .family import FamilyKey, forms_for_family, iter_family_keys, validate_key
from .sieve import OddPrimeBitmap, primes_up_to, segment_primes

DEFAULT_SEGMENT = 1 << 26
MAX_LIMIT = 2**62
CHECKPOINT_VERSION = 1
_U64 = np.uint64


@dataclass(frozen=True, order=True)
class AMember:
    p: int
    alpha: int
    beta: int
    gamma: int
    q: int
    r: int

    @property
    def key(self) -> FamilyKey:
        return FamilyKey(self.alpha, self.beta, self.gamma)

    @property
    def triple(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)

    def validate(self) -> bool:
        """Recheck every defining property by direct arithmetic."""
        p, q, r = self.p, self.q, self.r
        return (
            p % 3 == 2
            and p + 1 == 2**self.alpha * 3**self.beta * q
            and p - 1 == 2**self.gamma * r
            and q % 2 and q % 3 and r % 2 and r % 3
            and validate_key(self.alpha, self.beta, self.gamma)
            and is_prime(p) and is_prime(q) and is_prime(r)
        )


@dataclass(frozen=True, order=True)
class AbarMember:
    p: int
    alpha: int
    beta: int
    gamma: int
    mu: int
    nu: int
    q: int
    r: int

    def validate(self) -> bool:
        p, q, r = self.p, self.q, self.r
        return (
            p % 3 == 2
            and p + 1 == 2**self.alpha * 3**self.beta * q**self.mu
            and p - 1 == 2**self.gamma * r**self.nu
            and q >= 5 and r >= 5
            and is_prime(p) and is_prime(q) and is_prime(r)
        )


def member_a(p: int) -> AMember | None:
    """Witness (alpha, beta, gamma, q, r) for p in A, else None. p must be prime."""
    if p < 5 or p % 3 != 2:
        return None
    alpha, u = strip_factor(p + 1, 2)
    beta, q = strip_factor(u, 3)
    gamma, r = strip_factor(p - 1, 2)
    # p - 1 = 1 (mod 3), so r carries no factor 3
    if q < 5 or r < 5 or not is_prime(q) or not is_prime(r):
        return None
    return AMember(p, alpha, beta, gamma, q, r)


def member_abar(p: int) -> AbarMember | None:
    """Witness for p in Abar (prime-power cofactors allowed), else None."""
    if p < 5 or p % 3 != 2:
        return None
    alpha, u = strip_factor(p + 1, 2)
    beta, cq = strip_factor(u, 3)
    gamma, cr = strip_factor(p - 1, 2)
    if cq < 5 or cr < 5:
        return None
    qq, rr = is_prime_power(cq), is_prime_power(cr)
    if qq is None or rr is None:
        return None
    return AbarMember(p, alpha, beta, gamma, qq[1], rr[1], qq[0], rr[0])


# ---------------------------------------------------------------- vectorized core


def _strip2(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    low = v & -v
    e = np.frexp(low.astype(np.float64))[1] - 1
    return e.astype(np.int64), v >> e


def _strip3(v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    v = v.copy()
    e = np.zeros(v.shape, dtype=np.int64)
    hit = np.flatnonzero(v % 3 == 0)
    while hit.size:
        v[hit] //= 3
        e[hit] += 1
        hit = hit[v[hit] % 3 == 0]
    return e, v


def _split(primes: np.ndarray):
    """(p, alpha, beta, gamma, q-cofactor, r-cofactor) for the p = 2 (mod 3), p >= 5."""
    p = primes[(primes % 3 == 2) & (primes >= 5)]
    alpha, u = _strip2(p + 1)
    beta, cq = _strip3(u)
    gamma, cr = _strip2(p - 1)
    return p, alpha, beta, gamma, cq, cr


def _mix(z: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer; uint64 arithmetic wraps by design
    z = (z + _U64(0x9E3779B97F4A7C15)).astype(_U64)
    z = (z ^ (z >> _U64(30))) * _U64(0xBF58476D1CE4E5B9)
    z = (z ^ (z >> _U64(27))) * _U64(0x94D049BB133111EB)
    return z ^ (z >> _U64(31))


def member_digest(p, alpha, beta, gamma) -> int:
    """Order-independent 64-bit checksum of a batch of members (sum of hashes)."""
    p = np.asarray(p, dtype=np.int64).astype(_U64)
    key = (np.asarray(alpha, dtype=np.int64) << 16 | np.asarray(beta, dtype=np.int64) << 8
           | np.asarray(gamma, dtype=np.int64)).astype(_U64)
    with np.errstate(over="ignore"):
        h = _mix(_mix(p) ^ key)
        return int(np.sum(h, dtype=_U64))


def combine_digests(*digests: int) -> int:
    return sum(digests) % 2**64


@dataclass
class SegmentResult:
    index: int
    count: int
    digest: int
    members: np.ndarray | None = None  # shape (k, 6): p, alpha, beta, gamma, q, r


def _scan_segment(index, lo, hi, base, bitmap, keep_members) -> SegmentResult:
    p, alpha, beta, gamma, q, r = _split(segment_primes(lo, hi, base))
    ok = bitmap.contains(q) & bitmap.contains(r)
    cols = [a[ok] for a in (p, alpha, beta, gamma, q, r)]
    digest = member_digest(*cols[:4])
    members = np.stack(cols, axis=1) if keep_members else None
    return SegmentResult(index, int(ok.sum()), digest, members)


# ---------------------------------------------------------------- checkpoints


@dataclass
class EnumerationCheckpoint:
    limit: int
    segment_size: int
    completed_segments: set[int] = field(default_factory=set)
    partial_count: int = 0
    digest: int = 0

    def to_json(self) -> str:
        return json.dumps({
            "version": CHECKPOINT_VERSION,
            "limit": self.limit,
            "segment_size": self.segment_size,
            "completed_segments": sorted(self.completed_segments),
            "partial_count": self.partial_count,
            "digest": f"{self.digest:016x}",
        }, sort_keys=True)

    @classmethod
    def load(cls, path) -> "EnumerationCheckpoint":
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, ValueError) as exc:
            raise ConfigurationError(f"unreadable checkpoint {path}: {exc}") from exc
        if data.get("version") != CHECKPOINT_VERSION:
            raise ConfigurationError(f"checkpoint version {data.get('version')!r} not supported")
        return cls(
            limit=int(data["limit"]),
            segment_size=int(data["segment_size"]),
            completed_segments=set(map(int, data["completed_segments"])),
            partial_count=int(data["partial_count"]),
            digest=int(data["digest"], 16),
        )

    def save(self, path) -> None:
        atomic_write(path, self.to_json() + "\n")


def atomic_write(path, text: str) -> None:
    """Write through a temp file in the same directory, then rename over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# ---------------------------------------------------------------- counting


@dataclass
class SieveResult:
    limit: int
    count: int
    digest: int
    members: list[AMember] | None = None

    @property
    def digest_hex(self) -> str:
        return f"{self.digest:016x}"


def _check_limit(x: int) -> None:
    if x < 2:
        raise DomainError(f"limit must be >= 2, got {x}")
    if x > MAX_LIMIT:
        raise RangeError(f"limit above 2**62 is not supported, got {x}")


def count_a_sieve(
    x: int,
    segment_size: int = DEFAULT_SEGMENT,
    checkpoint: str | os.PathLike | None = None,
    *,
    threads: int = 1,
    members: bool = False,
    max_segments: int | None = None,
    verify: bool = False,
) -> SieveResult:
    """Exact |A_{<=x}| from a segmented prime scan.

    With ``checkpoint`` set, progress is saved after every segment and an
    existing file is resumed. ``max_segments`` caps how many new segments run
    in this call; if that leaves work undone, :class:`RunInterrupted` is raised
    after the checkpoint is written.
    """
    _check_limit(x)
    if segment_size < 2 or threads < 1:
        raise DomainError("segment_size must be >= 2 and threads >= 1")
    if members and checkpoint is not None:
        raise ConfigurationError("member streaming cannot be combined with a checkpoint")

    n_segments = -(-(x + 1) // segment_size)
    state = EnumerationCheckpoint(x, segment_size)
    if checkpoint is not None and Path(checkpoint).exists():
        state = EnumerationCheckpoint.load(checkpoint)
        if (state.limit, state.segment_size) != (x, segment_size):
            raise ConfigurationError(
                f"checkpoint is for limit={state.limit}, segment_size={state.segment_size}; "
                f"run asked for limit={x}, segment_size={segment_size}"
            )
    pending = [i for i in range(n_segments) if i not in state.completed_segments]
    if max_segments is not None:
        pending = pending[:max_segments]

    base = primes_up_to(isqrt(x) + 1)
    bitmap = OddPrimeBitmap(max(x // 2, 3))

    def work(i):
        lo, hi = i * segment_size, min((i + 1) * segment_size, x + 1)
        return _scan_segment(i, lo, hi, base, bitmap, members or verify)

    collected = []
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for res in pool.map(work, pending):  # yields in segment order
            state.completed_segments.add(res.index)
            state.partial_count += res.count
            state.digest = combine_digests(state.digest, res.digest)
            if res.members is not None:
                collected.append(res.members)
            if checkpoint is not None:
                state.save(checkpoint)

    if len(state.completed_segments) < n_segments:
        raise RunInterrupted(len(state.completed_segments), n_segments)

    out = None
    if collected:
        rows = np.concatenate(collected).tolist()
        out = [AMember(*row) for row in rows]
        if verify:
            bad = [m for m in out if not m.validate()]
            if bad:
                raise AssertionError(f"{len(bad)} members failed re-validation, first {bad[0]}")
        if not members:
            out = None
    return SieveResult(x, state.partial_count, state.digest, out)


def family_members(x: int, key: FamilyKey | tuple[int, int, int] | None = None) -> list[AMember]:
    """Members of A up to x found by evaluating family forms, sorted by p.

    With ``key`` given only that family is enumerated.
    """
    _check_limit(x)
    prime = np.zeros(x + 1, dtype=bool)
    prime[primes_up_to(x)] = True
    keys = [FamilyKey(*key)] if key is not None else iter_family_keys(x + 1)
    found = []
    for k in keys:
        system = forms_for_family(k)
        (ap, bp), (aq, bq), (ar, br) = ((f.a, f.b) for f in system)
        if x < bp:
            continue
        n = np.arange((x - bp) // ap + 1, dtype=np.int64)
        p, q, r = ap * n + bp, aq * n + bq, ar * n + br
        ok = (p >= 5) & (q >= 5) & (r >= 5)
        n, p, q, r = n[ok], p[ok], q[ok], r[ok]
        ok = prime[p] & prime[q] & prime[r]
        for pi, qi, ri in zip(p[ok].tolist(), q[ok].tolist(), r[ok].tolist()):
            found.append(AMember(pi, k.alpha, k.beta, k.gamma, qi, ri))
    found.sort()
    return found


def count_a_families(x: int) -> int:
    """Exact |A_{<=x}| as a sum of per-family counts."""
    return len(family_members(x))


def count_abar_minus_a(x: int) -> tuple[int, list[AbarMember]]:
    """Primes p <= x in Abar but not in A, i.e. with mu >= 2 or nu >= 2."""
    _check_limit(x)
    primes = primes_up_to(x)
    prime = np.zeros(x + 1, dtype=bool)
    prime[primes] = True
    p, _, _, _, cq, cr = _split(primes)
    is_q, is_r = prime[cq], prime[cr]
    maybe = (is_q | _maybe_power(cq)) & (is_r | _maybe_power(cr)) & ~(is_q & is_r)
    found = []
    for pi in p[maybe].tolist():
        m = member_abar(pi)
        if m is not None and (m.mu > 1 or m.nu > 1):
            found.append(m)
    return len(found), found


def _maybe_power(c: np.ndarray) -> np.ndarray:
    """Cheap float screen for perfect powers >= 25; exact check happens later."""
    out = np.zeros(c.shape, dtype=bool)
    cf = c.astype(np.float64)
    big = c >= 25
    for mu in range(2, 64):
        if not (cf >= 5.0**mu).any():
            break
        root = np.rint(cf ** (1.0 / mu))
        out |= big & (np.abs(root**mu - cf) <= 1e-9 * cf + 0.5)
    return out


# ---------------------------------------------------------------- member files

MEMBER_FIELDS = ("p", "alpha", "beta", "gamma", "q", "r")


def members_csv(members: Iterable[AMember]) -> str:
    lines = [",".join(MEMBER_FIELDS)]
    lines += [f"{m.p},{m.alpha},{m.beta},{m.gamma},{m.q},{m.r}" for m in members]
    return "\n".join(lines) + "\n"


def read_members_csv(path) -> list[AMember]:
    with open(path, newline="") as fh:
        return [AMember(**{k: int(v) for k, v in row.items()}) for row in csv.DictReader(fh)]

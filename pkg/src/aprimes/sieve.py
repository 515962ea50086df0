"""Sieves of Eratosthenes over odd numbers (numpy-backed)."""
from __future__ import annotations

from math import isqrt

import numpy as np


def primes_up_to(n: int) -> np.ndarray:
    """All primes ``<= n`` as an int64 array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    # odd[i] stands for 2*i + 1
    odd = np.ones(n // 2 + 1 if n % 2 else n // 2, dtype=bool)
    odd[0] = False
    for i in range(1, (isqrt(n) - 1) // 2 + 1):
        if odd[i]:
            p = 2 * i + 1
            odd[p * p // 2 :: p] = False
    primes = 2 * np.flatnonzero(odd).astype(np.int64) + 1
    return np.concatenate(([2], primes)).astype(np.int64)


def _odd_mask(lo: int, hi: int, base: np.ndarray) -> tuple[int, np.ndarray]:
    """Primality mask of the odd numbers in ``[lo, hi)``; returns (first odd, mask)."""
    first = lo | 1
    size = max(0, (hi - first + 1) // 2)
    mask = np.ones(size, dtype=bool)
    if size == 0:
        return first, mask
    for p in base.tolist():
        if p == 2:
            continue
        pp = p * p
        if pp >= hi:
            break
        start = max(pp, -(-lo // p) * p)
        if start % 2 == 0:
            start += p
        if start < hi:
            mask[(start - first) // 2 :: p] = False
    if first == 1:
        mask[0] = False
    return first, mask


def segment_primes(lo: int, hi: int, base: np.ndarray) -> np.ndarray:
    """Primes in ``[lo, hi)``. ``base`` must hold every prime up to ``isqrt(hi - 1)``."""
    first, mask = _odd_mask(lo, hi, base)
    out = first + 2 * np.flatnonzero(mask).astype(np.int64)
    if lo <= 2 < hi:
        out = np.concatenate(([2], out)).astype(np.int64)
    return out


class OddPrimeBitmap:
    """Packed primality bits for the odd numbers up to ``limit``.

    One bit per odd integer, so ``limit / 16`` bytes. Lookups are vectorized.
    """

    def __init__(self, limit: int, block: int = 1 << 25):
        self.limit = max(limit, 1)
        base = primes_up_to(isqrt(self.limit) + 1)
        nbits = self.limit // 2 + 1
        chunks = []
        block -= block % 16  # keeps every chunk a whole number of bytes
        for lo in range(0, nbits, block // 2):
            hi_bits = min(lo + block // 2, nbits)
            _, mask = _odd_mask(2 * lo, 2 * hi_bits, base)
            chunks.append(np.packbits(mask[: hi_bits - lo]))
        self.bits = np.concatenate(chunks) if chunks else np.zeros(0, dtype=np.uint8)

    def contains(self, values: np.ndarray) -> np.ndarray:
        """Vectorized primality for integer ``values <= limit``; 2 counts as prime."""
        values = np.asarray(values, dtype=np.int64)
        if values.size and int(values.max()) > self.limit:
            raise ValueError(f"bitmap covers values up to {self.limit}")
        out = values == 2
        odd = (values & 1) == 1
        idx = values[odd] >> 1
        bit = (self.bits[idx >> 3] >> (7 - (idx & 7)).astype(np.uint8)) & 1
        out[odd] = bit.astype(bool)
        return out

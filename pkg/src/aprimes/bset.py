"""Greedy maximal subsets B of A and the collision statistics behind them.

For p in A the prime factors above 3 of p(p - 1)(p + 1) are exactly p, q, r,
so two members are compatible iff their triples are disjoint.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .enumeration import AMember
from .errors import UsageError

COLLISION_CASES = ("r=r'", "q=r'", "p=r'", "r=q'", "q=q'", "p=q'")


@dataclass
class BState:
    chosen: list[AMember] = field(default_factory=list)
    consumed: set[int] = field(default_factory=set)
    rejected: int = 0

    def __len__(self):
        return len(self.chosen)

    def conflicts(self, m: AMember) -> bool:
        return not self.consumed.isdisjoint(m.triple)


def build_b(members: Iterable[AMember], descending: bool = False) -> BState:
    """Greedy scan: keep a member iff none of p, q, r was used by an earlier pick.

    The stream must be strictly ascending in p (strictly descending with
    ``descending=True``).
    """
    state = BState()
    last = None
    for m in members:
        if last is not None and (m.p >= last if descending else m.p <= last):
            order = "descending" if descending else "ascending"
            raise UsageError(f"member stream not strictly {order}: {m.p} after {last}")
        last = m.p
        if state.conflicts(m):
            state.rejected += 1
        else:
            state.chosen.append(m)
            state.consumed.update(m.triple)
    return state


def verify_pairwise(state: BState) -> bool:
    """Independent O(n) recheck that no prime above 3 is shared by two chosen members."""
    seen: set[int] = set()
    for m in state.chosen:
        t = set(m.triple)
        if len(t) != 3 or not seen.isdisjoint(t):
            return False
        seen |= t
    return True


def unexplained_rejections(state: BState, members: Iterable[AMember]) -> list[AMember]:
    """Members outside B that could be added without conflict (empty iff B is maximal)."""
    chosen = {m.p for m in state.chosen}
    return [m for m in members if m.p not in chosen and not state.conflicts(m)]


@dataclass(frozen=True)
class CollisionStats:
    counts: tuple[int, int, int, int, int, int]
    flagged: frozenset[int] = frozenset()

    def as_dict(self) -> dict[str, int]:
        return dict(zip(COLLISION_CASES, self.counts))

    def to_json(self) -> str:
        return json.dumps({"cases": self.as_dict(), "flagged": len(self.flagged)}, sort_keys=True)


def collision_stats(members: Sequence[AMember]) -> CollisionStats:
    """Per case, count the p having some strictly larger p' with that equality.

    ``flagged`` is the set S of all p hit by at least one case.
    """
    largest_q: dict[int, int] = {}
    largest_r: dict[int, int] = {}
    for m in members:
        largest_q[m.q] = max(largest_q.get(m.q, 0), m.p)
        largest_r[m.r] = max(largest_r.get(m.r, 0), m.p)
    counts = [0] * 6
    flagged = set()
    for m in members:
        hits = (
            largest_r.get(m.r, 0) > m.p,
            largest_r.get(m.q, 0) > m.p,
            largest_r.get(m.p, 0) > m.p,
            largest_q.get(m.r, 0) > m.p,
            largest_q.get(m.q, 0) > m.p,
            largest_q.get(m.p, 0) > m.p,
        )
        for i, h in enumerate(hits):
            counts[i] += h
        if any(hits):
            flagged.add(m.p)
    return CollisionStats(tuple(counts), frozenset(flagged))

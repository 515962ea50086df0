import pytest

from aprimes import count_a_sieve
from aprimes.bset import (
    BState,
    build_b,
    collision_stats,
    unexplained_rejections,
    verify_pairwise,
)
from aprimes.enumeration import AMember, member_a
from aprimes.errors import UsageError

M29, M41, M59 = member_a(29), member_a(41), member_a(59)


def test_witnesses_used_below():
    assert (M41.q, M41.r) == (7, 5)
    assert (M59.q, M59.r) == (5, 29)


def test_build_b_examples():
    state = build_b([M29, M41])
    assert state.chosen == [M29] and state.rejected == 1
    state = build_b([M29, M59])
    assert state.chosen == [M29] and state.rejected == 1
    assert build_b([]).chosen == []


def test_build_b_rejects_unsorted():
    with pytest.raises(UsageError):
        build_b([M41, M29])
    with pytest.raises(UsageError):
        build_b([M29, M29])
    with pytest.raises(UsageError):
        build_b([M29, M41], descending=True)


def test_verify_pairwise():
    assert verify_pairwise(BState([M29], {29, 5, 7}))
    assert not verify_pairwise(BState([M29, M59]))
    assert verify_pairwise(BState())


def test_b_at_1e6(members_1e6):
    state = build_b(members_1e6)
    assert verify_pairwise(state)
    assert unexplained_rejections(state, members_1e6) == []
    assert len(state.consumed) == 3 * len(state)
    assert len(state) + state.rejected == len(members_1e6)


def test_b_ratio_grows():
    ratios = []
    for x in [10**4, 10**5, 10**6]:
        members = count_a_sieve(x, members=True).members
        ratios.append(len(build_b(members)) / len(members))
    assert ratios == sorted(ratios) and all(r <= 1 for r in ratios)


def test_collision_examples():
    assert collision_stats([M29, M41]).counts == (0, 1, 0, 1, 0, 0)
    assert collision_stats([M29]).counts == (0,) * 6
    assert collision_stats([M29, member_a(227)]).counts == (0,) * 6  # 227: q=19, r=113


def brute_collisions(members):
    counts = [0] * 6
    for i, m in enumerate(members):
        later = members[i + 1:]
        cases = [
            any(m.r == n.r for n in later), any(m.q == n.r for n in later), any(m.p == n.r for n in later),
            any(m.r == n.q for n in later), any(m.q == n.q for n in later), any(m.p == n.q for n in later),
        ]
        for j, c in enumerate(cases):
            counts[j] += c
    return tuple(counts)


def test_collision_stats_match_pairwise_scan():
    members = count_a_sieve(3 * 10**4, members=True).members
    stats = collision_stats(members)
    assert stats.counts == brute_collisions(members)
    assert all(c <= len(members) for c in stats.counts)


def test_descending_greedy_excludes_only_flagged(members_1e6):
    # A \ B is contained in S when B is built from the largest p down
    stats = collision_stats(members_1e6)
    state = build_b(reversed(members_1e6), descending=True)
    assert verify_pairwise(state)
    assert unexplained_rejections(state, members_1e6) == []
    chosen = {m.p for m in state.chosen}
    assert {m.p for m in members_1e6} - chosen <= stats.flagged


def test_ascending_greedy_excludes_later_colliders(members_1e6):
    # mirror image: every rejected p collides with some smaller chosen p
    state = build_b(members_1e6)
    chosen = state.chosen
    for m in members_1e6:
        if m in state.chosen:
            continue
        assert any(c.p < m.p and set(c.triple) & set(m.triple) for c in chosen)


def test_collision_json():
    assert '"q=r\'": 1' in collision_stats([M29, M41]).to_json()

"""
Maximal pairwise-coprime subsets
================================

B keeps members of A whose values p(p - 1)(p + 1) share no prime above 3.
A greedy scan gives a maximal B; the fraction |B| / |A| creeps up with x.
"""

from aprimes import build_b, collision_stats, count_a_sieve, verify_pairwise

for x in (10**4, 10**5, 10**6):
    members = count_a_sieve(x, members=True).members
    asc = build_b(members)
    desc = build_b(reversed(members), descending=True)
    assert verify_pairwise(asc) and verify_pairwise(desc)
    print(f"x={x:.0e}  |A|={len(members):5d}  |B| ascending={len(asc):5d}  descending={len(desc):5d}"
          f"  ratio={len(asc) / len(members):.3f}")

# %%
# The six ways a member p can share a prime with a larger member p'.
stats = collision_stats(members)
for case, n in stats.as_dict().items():
    print(f"{case:6s} {n}")
print("flagged:", len(stats.flagged), "of", len(members))

"""
Counting A and comparing with the predictors
============================================

Count the primes in A up to a few limits and set the counts against
x / (log x)^3 and Li_3(x). The last two rows use published counts, which are
far beyond desk scale.
"""

from aprimes import build_table, count_a_sieve, li3, s_a_constant
from aprimes.density import main_term, table_text

limits = [10**4, 10**6, 10**8]
counts = [count_a_sieve(x).count for x in limits]
limits += [10**10, 10**12]
counts += [3393108, 183047288]

print(table_text(build_table(limits, counts)))

# %%
# The conjectured main term is (S_A / 2) x / (log x)^3. Convergence is slow,
# and at 10^8 the prediction still undershoots by a wide margin.
s_a = s_a_constant(10**7).value
for x, c in zip(limits, counts):
    print(f"x={x:.0e}  count={c:>10}  main term={main_term(x, s_a):14.1f}  li3-scaled={s_a / 2 * li3(x):14.1f}")

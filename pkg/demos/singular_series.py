"""
The singular series of an exponent family
=========================================

Every exponent family gives three linear forms p(n), q(n), r(n). The number
of roots rho(l) of their product is 1 at l = 2, 3 and 3 beyond, so all
families share one singular series, the constant S_A ~ 5.7165.
"""

from aprimes import count_roots, forms_for_family, s_a_constant, singular_series
from aprimes.family import e_product

for key in [(1, 1, 2), (2, 1, 1), (1, 3, 5), (4, 2, 1)]:
    system = forms_for_family(key)
    forms = ", ".join(str(f) for f in system)
    rho = [count_roots(system, l) for l in (2, 3, 5, 7, 11)]
    print(f"{key}: {forms:40s} E={e_product(system):>12}  rho={rho}")

# %%
# Truncating the Euler product at P leaves a relative error below the
# reported tail bound. The value is monotone decreasing in P.
for P in (10**4, 10**5, 10**6, 10**7):
    res = s_a_constant(P)
    lo, hi = res.interval
    print(f"P={P:.0e}  S_A={res.value:.10f}  in [{lo:.10f}, {hi:.10f}]")

# %%
# The general route (rho counted per prime) agrees with the closed form.
print(singular_series(forms_for_family((2, 1, 1)), 10**6).value, s_a_constant(10**6).value)

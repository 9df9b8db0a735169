"""
Total variation across the cutoff
=================================

Distance to uniform after t steps, computed exactly from the spectrum, set
beside the L2 bound and the two closed-form bounds that straddle t = n.
"""

# %%
# Exact curve for n = 3
# ---------------------
# Here every non-trivial eigenvalue is 1/2 or 0, and the distance halves each step.

from invwalk.spectral import exact_tv, exact_tv_fraction, pre_cutoff_l2_sum, uppertail_c0, uppertail_constant
from invwalk.walk_sim import cutoff_profile, exact_evolution, tv_to_uniform

for t in range(1, 6):
    print(t, exact_tv_fraction(3, t), tv_to_uniform(exact_evolution(3, t)))

# %%
# Profile table for n = 7
# -----------------------
# Lower bounds come from counting how few states lie within t inversions;
# upper bounds come from the eigenvalue sum.  Both are clipped at 1.

print(f"{'t':>3} {'exact':>10} {'l2':>10} {'upper':>10} {'lower':>10}")
for row in cutoff_profile(7, 14):
    cells = [row.d_exact, row.d_l2_upper, row.d_paper_upper, row.d_paper_lower]
    print(f"{row.t:>3} " + " ".join(f"{c:10.3g}" if c is not None else f"{'-':>10}" for c in cells))

# %%
# Constants
# ---------

print("C0 =", uppertail_c0(), " C =", uppertail_constant())
res = pre_cutoff_l2_sum(7)
print("L2 sum one step before n:", float(res.exact), "estimate:", float(res.estimate))

# %%
# Shape at larger n
# -----------------
# For n = 60 only the bounds are available.  The window between them is a
# handful of steps wide around t = n.

for row in cutoff_profile(60, 70, t_min=45):
    print(row.t, row.d_paper_lower, row.d_paper_upper)
print("exact, n=6, t=6:", exact_tv(6, 6))

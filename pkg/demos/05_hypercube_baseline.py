"""
Single-edge baseline
====================

Flipping one pair at a time (with a lazy coin) is the hypercube walk on m
coordinates, which mixes only after about (m/2) ln m steps.  Compare this to
the n steps the inversion walk needs.
"""

# %%

import numpy as np

from invwalk.walk_sim import default_hypercube_times, hypercube_cutoff_time, hypercube_profile

m = 15
times = default_hypercube_times(m)
print("cutoff time", hypercube_cutoff_time(m))
for row in hypercube_profile(m, 50000, times, seed=1):
    print(f"t={row.t:>3}  empirical {row.statistic:.4f}  exact {row.exact:.4f}  (noise ~{row.bias_bound:.3f})")

# %%
# Same walk, bigger cube
# ----------------------
# For m = C(12, 2) = 66 coordinates the states no longer fit in 62 bits, so
# track only the exact weight law.

from invwalk.walk_sim import hypercube_weight_tv

m = 66
centre = hypercube_cutoff_time(m)
for f in np.linspace(0.25, 2.0, 8):
    t = int(round(f * centre))
    print(f"{f:.2f} x cutoff: t={t:>4}  d={hypercube_weight_tv(m, t):.4f}")

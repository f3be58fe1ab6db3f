"""
Chart identities on sphere octants
==================================

Sampled checks of the maps used when blowing up a sphere inside a
hemisphere, and of the product blow-down square.
"""

# %%
import numpy as np

from cornerblowup import charts

rng = np.random.default_rng(0)
eta, mu = charts.sample_pair_octant(rng, n=3, n2=2, k=1, k2=1, size=1000, eps=1e-6)
phi, psi = charts.psi_map(eta, mu)
print("Upsilon(Psi) - id:", np.abs(charts.upsilon(phi, psi) - np.hstack([eta, mu])).max())

# %%
# A worked point: |eta| = 0.6, so phi = eta/0.6 and psi = (0.6, mu).
print(charts.psi_map([0.36, 0.48], [0.8]))

# %%
# beta_MP . zeta against beta_MQ . (Upsilon x id), t = 0 included.
x = charts.sample_octant(rng, 3, 1, 1000)
y = charts.sample_octant(rng, 3, 2, 1000)
t = rng.exponential(size=1000)
t[:100] = 0
lhs = charts.beta_mp(*charts.zeta(x, y, t))
rhs = charts.beta_mq(*charts.upsilon_times_id(x, y, t))
print("square defect:", np.abs(lhs - rhs).max())

# %%
x2, y2, t2 = charts.b_left_inverse(*charts.b_map(x, y, t))
print("left inverse defect:", max(np.abs(x2 - x).max(), np.abs(y2 - y).max(), np.abs(t2 - t).max()))

"""
Robust order over a moment envelope
===================================

When the mean is only known to lie in [a, b] and the variance is capped at
d2, the worst case sits at the corner (b, d2) and the minimax order is the
single-moment rule evaluated there.
"""

from scarfkit import MomentEnvelope, PriceParams, extended_scarf, scarf_rule
from scarfkit.newsvendor import feasible_region_sup_check, rectangle_sup_check

params = PriceParams(p=5.0, c=3.0, q=0.5)
env = MomentEnvelope(a=40.0, b=60.0, d2=225.0)

sol = extended_scarf(params, env)
print(f"envelope order  {sol.x_star:.4f} using m = {sol.m}, s2 = {sol.s2}")
print(f"corner rule     {scarf_rule(params, env.b, env.d2).x_star:.4f}")

# the bound on a 100 x 100 grid of the rectangle peaks at the corner
check = rectangle_sup_check(params, sol.x_star, env, 100)
print(f"grid maximum at {check.max_point}, corner dominates: {check.corner_dominates}")

# the same order judged over means and variances a law on [0, inf) can have
region = feasible_region_sup_check(params, sol.x_star, env, 100)
print(f"feasible-region maximum {region.max_value:.4f} at {region.max_point}")

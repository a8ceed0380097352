"""
Ordering with only a mean and a variance
========================================

A retailer knows the demand mean and variance but not its law.  The minimax
order protects against the least favourable demand with those two moments.
"""

import numpy as np

from scarfkit import PriceParams, minimize_L, scarf_L, scarf_rule
from scarfkit.dist import make_discrete
from scarfkit.newsvendor import classical_optimal, profit

# selling price, purchase cost, salvage value
params = PriceParams(p=4.0, c=2.0, q=1.0)
m, s2 = 100.0, 400.0

sol = scarf_rule(params, m, s2)
print(f"minimax order      {sol.x_star:.4f}")
print(f"worst-case cost    {sol.value:.4f}")
print(f"least favourable   {sol.worst_dist}")

# the closed form agrees with a direct numerical minimization of the bound
x_num, v_num = minimize_L(params, m, s2)
print(f"numerical argmin   {x_num:.10f}  (gap {abs(x_num - sol.x_star):.1e})")

# the order moves away from the mean with the standard deviation, not the variance
for s in (5.0, 10.0, 20.0, 40.0):
    print(f"  s = {s:5.1f}  x* = {scarf_rule(params, m, s * s).x_star:8.3f}")

# a known demand law with the same two moments does better, as it must
demand = make_discrete([80.0, 120.0], [0.5, 0.5])
x_cl = classical_optimal(params, demand)
print(f"classical order    {x_cl:.4f} on a law with mean {demand.mean:g} and variance {demand.variance:g}")
print(f"profit, classical  {profit(params, x_cl, demand):.4f}")
print(f"profit, minimax    {profit(params, sol.x_star, demand):.4f}")

# the bound is a convex function of the order
xs = np.linspace(60, 140, 9)
print("L(x):", np.round([scarf_L(params, x, m, s2) for x in xs], 3))

"""
Three distances between discrete laws
=====================================

Kolmogorov compares CDF heights, Levy allows a horizontal shift as well, and
Prokhorov moves mass between nearby atoms.  Levy never exceeds the other two.
"""

from scarfkit import kolmogorov, levy, prokhorov, prokhorov_bruteforce
from scarfkit.dist import make_discrete, point_mass

mu = make_discrete([0.0, 1.0, 2.0], [0.2, 0.5, 0.3])
lam = make_discrete([0.1, 1.2, 3.0], [0.3, 0.4, 0.3])

for name, fn in (("kolmogorov", kolmogorov), ("levy", levy), ("prokhorov", prokhorov)):
    print(f"{name:11s} {fn(mu, lam).value:.6f}")

# the fast flow computation and subset enumeration give the same float; it is
# the exact deficit of the stored binary weights, hence not quite 0.4
fast, slow = prokhorov(mu, lam).value, prokhorov_bruteforce(mu, lam).value
print(f"flow {fast!r} == brute force {slow!r}: {fast == slow}")

# the coupling in the certificate moves all but eps of the mass within eps
res = prokhorov(mu, lam)
print("coupling\n", res.certificate["coupling"].round(4))

# shifting a point mass: Kolmogorov jumps to 1, Levy and Prokhorov follow the shift
for t in (0.01, 0.25, 0.5, 2.0):
    a, b = point_mass(0.0), point_mass(t)
    print(f"t = {t:4}: dK = {kolmogorov(a, b).value:.2f}  dL = {levy(a, b).value:.2f}  dP = {prokhorov(a, b).value:.2f}")

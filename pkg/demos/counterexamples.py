"""
When moment classes stop being well behaved
===========================================

Two sequences.  The first stays inside a Kolmogorov ball yet pushes mass off
to infinity, so the ball is not tight.  The second keeps its first absolute
moment fixed while its weak limit has a smaller one, so a class defined by a
lower bound on that moment is not closed.
"""

import numpy as np

from scarfkit import kolmogorov, levy
from scarfkit.dist import abs_moment, make_discrete, point_mass
from scarfkit.momentsets import (
    MomentClassSpec,
    ball_escape_sequence,
    mean_leak_sequence,
    member_Pabrc,
    tail_mass,
    tightness_report,
)

base = make_discrete([-1.0, 0.0, 2.0], [0.3, 0.4, 0.3])
r = 0.25
seq = [ball_escape_sequence(base, r, n) for n in range(1, 101)]
print("max Kolmogorov distance to the base:", max(kolmogorov(d, base).value for d in seq))
for R in (10, 50):
    print(f"mass beyond {R}: n = {R + 1} carries {tail_mass(seq[R], 0.0, R):.2f}")
rep = tightness_report(seq, 0.1, radius_cap=50.0)
print(f"judged against radius 50: uniform = {rep.uniform}, first leaking member (index, mass) = {rep.witness}")
print("covering radii grow without bound:", rep.member_radii[::20])

a = 1.0
limit = point_mass(a / 2)
for n in (1, 10, 100, 1000, 10**6):
    d = mean_leak_sequence(a, n)
    print(f"n = {n:>7}: E|X| = {abs_moment(d, 0.0, 1):.12f}  Levy to limit = {levy(d, limit).value:.2e}")

spec = MomentClassSpec(x0=0.0, a=a, b=2 * a, r=1.0, moment_cap=10.0)
print("sequence members in the class:", all(member_Pabrc(mean_leak_sequence(a, n), spec) for n in range(1, 4)))
print("limit in the class:", member_Pabrc(limit, spec))
print("limit first moment:", np.round(abs_moment(limit, 0.0, 1), 3))

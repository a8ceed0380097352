"""Moment-constrained classes of distributions and tightness diagnostics.

The classes are indexed by a base point ``x0`` and bounds on absolute moments
about it:

* ``P_b``            first absolute moment at most ``b``;
* ``P_{a,b}``        first absolute moment in ``[a, b]``;
* ``P_{a,b}^{r,c}``  additionally the ``(1 + r)``-th absolute moment at most ``c``.

The unbounded unions (finite first moment, finite ``(1 + r)``-th moment) are
countable unions of these and get no predicate of their own.

Besides membership tests the module provides the explicit tail radii that
certify uniform tightness of the bounded classes, and two sequence
constructions that show what goes wrong without those bounds: a sequence in
a Kolmogorov ball that escapes to infinity, and a sequence in ``P_{a,b}``
whose weak limit falls out of the class.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .dist import (
    DiscreteDistribution,
    DistributionError,
    abs_moment,
    cdf_values,
    make_discrete,
)

MEMBERSHIP_TOL = 1e-12
GRID_ATOM_TOL = 1e-9


@dataclass(frozen=True)
class MomentClassSpec:
    x0: float
    a: float
    b: float
    r: float
    moment_cap: float

    def __post_init__(self):
        # a == b is allowed so that a collapsed mean interval still converts
        if not (0 <= self.a <= self.b) or self.b <= 0:
            raise DistributionError(f"need 0 <= a <= b, b > 0, got a={self.a!r}, b={self.b!r}")
        if self.r <= 0 or self.moment_cap <= 0:
            raise DistributionError("r and moment_cap must be positive")


@dataclass(frozen=True)
class TightnessReport:
    epsilon: float
    radius: float
    uniform: bool
    witness: Optional[tuple[int, float]] = None
    member_radii: tuple[float, ...] = ()


def member_Pb(dist: DiscreteDistribution, x0: float, b: float) -> bool:
    return abs_moment(dist, x0, 1) <= b + MEMBERSHIP_TOL


def member_Pab(dist: DiscreteDistribution, x0: float, a: float, b: float) -> bool:
    m1 = abs_moment(dist, x0, 1)
    return a - MEMBERSHIP_TOL <= m1 <= b + MEMBERSHIP_TOL


def member_Pabrc(dist: DiscreteDistribution, spec: MomentClassSpec) -> bool:
    return member_Pab(dist, spec.x0, spec.a, spec.b) and (
        abs_moment(dist, spec.x0, 1 + spec.r) <= spec.moment_cap + MEMBERSHIP_TOL
    )


def uniform_tail_radius(b: float, epsilon: float) -> float:
    """Radius ``2b/eps``: by Markov, every member of ``P_b`` has at most
    ``eps/2`` mass farther than this from ``x0``."""
    if not (0 < epsilon < 1):
        raise DistributionError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if b <= 0:
        raise DistributionError("b must be positive")
    return 2.0 * b / epsilon


def moment_tail_radius(moment_cap: float, r: float, epsilon: float) -> float:
    """Radius k with ``int_{|x-x0|>=k} |x-x0| dlam <= cap / k^r = eps`` for
    every lam whose ``(1 + r)``-th absolute moment is at most ``cap``."""
    if epsilon <= 0:
        raise DistributionError(f"epsilon must be positive, got {epsilon!r}")
    return (moment_cap / epsilon) ** (1.0 / r)


def tail_mass(dist: DiscreteDistribution, x0: float, radius: float) -> float:
    """Mass strictly outside the closed ball ``[x0 - radius, x0 + radius]``."""
    return float(dist.weights[np.abs(dist.support - x0) > radius].sum())


def tail_first_moment(dist: DiscreteDistribution, x0: float, radius: float) -> float:
    d = np.abs(dist.support - x0)
    mask = d >= radius
    return float(np.dot(dist.weights[mask], d[mask]))


def covering_radius(dist: DiscreteDistribution, x0: float, epsilon: float) -> float:
    """Smallest R with mass >= 1 - eps on ``[x0 - R, x0 + R]``."""
    d = np.abs(dist.support - x0)
    order = np.argsort(d, kind="stable")
    inside = np.cumsum(dist.weights[order])
    k = int(np.searchsorted(inside, 1.0 - epsilon - MEMBERSHIP_TOL, side="left"))
    return float(d[order][min(k, d.size - 1)])


def tightness_report(
    family: Sequence[DiscreteDistribution],
    epsilon: float,
    x0: float = 0.0,
    radius_cap: Optional[float] = None,
) -> TightnessReport:
    """Common covering radius of a finite family at level ``epsilon``.

    A finite family is always tight, so without ``radius_cap`` the report is
    uniform and the interesting output is how ``radius`` grows along a
    generated sequence.  With ``radius_cap`` the family is judged against that
    fixed ball and the first member leaking more than ``epsilon`` is returned
    as the witness.
    """
    if len(family) == 0:
        raise DistributionError("family must be nonempty")
    radii = tuple(covering_radius(d, x0, epsilon) for d in family)
    radius = max(radii)
    if radius_cap is None:
        return TightnessReport(epsilon, radius, True, None, radii)
    for idx, d in enumerate(family):
        leak = tail_mass(d, x0, radius_cap)
        if leak > epsilon + MEMBERSHIP_TOL:
            return TightnessReport(epsilon, radius_cap, False, (idx, leak), radii)
    return TightnessReport(epsilon, radius_cap, True, None, radii)


def level_points(base: DiscreteDistribution, rparam: float) -> tuple[float, float]:
    """``(sup{x : F(x) < r}, inf{x : F(x) >= 1 - r})`` for a discrete base.

    ``F < r`` holds exactly on the half-line left of the first atom where the
    CDF reaches ``r``, so both quantities are atoms found by a jump scan.
    """
    cum = np.cumsum(base.weights)
    cum[-1] = 1.0
    i = int(np.searchsorted(cum, rparam, side="left"))
    j = int(np.searchsorted(cum, 1.0 - rparam, side="left"))
    return float(base.support[i]), float(base.support[j])


def ball_escape_sequence(base: DiscreteDistribution, rparam: float, n: int) -> DiscreteDistribution:
    """n-th member of a sequence within Kolmogorov distance ``rparam`` of
    ``base`` that pushes mass ``rparam`` out to each of ``-n`` and ``n``.

    The CDF is 0 below ``-n``, ``r`` on ``[-n, a_r)``, the base CDF on
    ``[a_r, b_r)``, ``1 - r`` on ``[b_r, n)`` and 1 from ``n`` on.  As atoms:
    ``r`` at ``-n``, whatever jump the base CDF makes from ``r`` at ``a_r``,
    the base atoms strictly between, the jump up to ``1 - r`` at ``b_r`` and
    ``r`` at ``n``.  For ``n <= max(|a_r|, |b_r|)`` the base is returned.
    """
    if not (0 < rparam < 0.5):
        raise DistributionError(f"rparam must lie in (0, 1/2), got {rparam!r}")
    a_r, b_r = level_points(base, rparam)
    if n <= max(abs(a_r), abs(b_r)):
        return base

    s, w = base.support, base.weights
    points = [-float(n)]
    masses = [rparam]
    if a_r < b_r:
        f_at_a = float(w[s <= a_r].sum())
        points.append(a_r)
        masses.append(f_at_a - rparam)
        inner = (s > a_r) & (s < b_r)
        points.extend(s[inner].tolist())
        masses.extend(w[inner].tolist())
        below_b = float(w[s < b_r].sum())
    else:
        below_b = rparam
    points.append(b_r)
    masses.append((1.0 - rparam) - below_b)
    points.append(float(n))
    masses.append(rparam)
    # jump masses can be -1e-17 when the base CDF hits a level exactly
    masses = [max(m, 0.0) for m in masses]
    return make_discrete(points, masses)


def mean_leak_sequence(a: float, n: int) -> DiscreteDistribution:
    """Two atoms, ``n a / (2n - 1)`` with weight ``1 - 1/(2n)`` and ``n a`` with
    weight ``1/(2n)``; first absolute moment ``a`` for every ``n``, weak limit
    the point mass at ``a / 2``."""
    if a <= 0:
        raise DistributionError("a must be positive")
    if n < 1:
        raise DistributionError("n must be a positive integer")
    lo = n * a / (2 * n - 1)
    return make_discrete([lo, n * a], [1.0 - 1.0 / (2 * n), 1.0 / (2 * n)])


def weak_convergence_probe(
    seq: Callable[[int], DiscreteDistribution],
    limit: DiscreteDistribution,
    grid: Sequence[float],
    n: int,
) -> float:
    """max over continuity points of the limit of ``|F_{seq(n)} - F_limit|``.

    Grid points within 1e-9 of an atom of ``limit`` are dropped first.
    """
    g = np.asarray(grid, dtype=np.float64)
    near = np.min(np.abs(g[:, None] - limit.support[None, :]), axis=1) <= GRID_ATOM_TOL
    g = g[~near]
    if g.size == 0:
        raise DistributionError("no grid points left after removing atoms of the limit")
    gap = np.abs(cdf_values(seq(n), g) - cdf_values(limit, g))
    return float(gap.max())


def random_member_Pb(rng: np.random.Generator, b: float, x0: float = 0.0, max_atoms: int = 8) -> DiscreteDistribution:
    """Random member of ``P_b`` with heavy-ish, asymmetric spread."""
    k = int(rng.integers(1, max_atoms + 1))
    offsets = rng.standard_cauchy(k) * rng.uniform(0.1, 10.0)
    w = rng.dirichlet(np.ones(k))
    m1 = float(np.dot(w, np.abs(offsets)))
    if m1 > 0:
        offsets *= rng.uniform(0.0, 1.0) * b / m1
    return make_discrete(x0 + offsets, w)


def random_member_moment(
    rng: np.random.Generator, moment_cap: float, r: float, x0: float = 0.0, max_atoms: int = 8
) -> DiscreteDistribution:
    """Random distribution with ``(1 + r)``-th absolute moment at most the cap."""
    k = int(rng.integers(1, max_atoms + 1))
    offsets = rng.standard_cauchy(k) * rng.uniform(0.1, 10.0)
    w = rng.dirichlet(np.ones(k))
    mom = float(np.dot(w, np.abs(offsets) ** (1 + r)))
    if mom > 0:
        offsets *= (rng.uniform(0.0, 1.0) * moment_cap / mom) ** (1.0 / (1 + r))
    return make_discrete(x0 + offsets, w)


def moment_class_from_envelope(a: float, b: float, d2: float) -> MomentClassSpec:
    """The class with ``x0 = 0``, ``r = 1`` and raw second-moment cap ``d2 + b^2``."""
    return MomentClassSpec(x0=0.0, a=a, b=b, r=1.0, moment_cap=d2 + b * b)


prop3_sequence = ball_escape_sequence
prop5_sequence = mean_leak_sequence

__all__ = [
    "MomentClassSpec",
    "TightnessReport",
    "member_Pb",
    "member_Pab",
    "member_Pabrc",
    "uniform_tail_radius",
    "moment_tail_radius",
    "tail_mass",
    "tail_first_moment",
    "covering_radius",
    "tightness_report",
    "level_points",
    "ball_escape_sequence",
    "mean_leak_sequence",
    "prop3_sequence",
    "prop5_sequence",
    "weak_convergence_probe",
    "random_member_Pb",
    "random_member_moment",
    "moment_class_from_envelope",
]


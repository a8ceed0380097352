"""Kolmogorov, Lévy and Prokhorov distances between discrete distributions.

The CDFs are step functions with finitely many jumps, so each distance is
one of finitely many candidates.  Kolmogorov and Prokhorov are computed
exactly; Lévy is bracketed by bisection and then snapped to the exact
candidate (a CDF level difference or an atom distance) inside the bracket.

Prokhorov fattening
-------------------
The textbook definition fattens a set with an *open* neighbourhood,
``A^eps = {x : |x - y| < eps for some y in A}``.  For finitely supported
measures the infimum over eps is attained on the *closed* version
``|x - y| <= eps``, and the two only differ at ties inside the finite
candidate set.  Both :func:`prokhorov` and :func:`prokhorov_bruteforce` use the
closed predicate so that they agree exactly.

Via Strassen's theorem, ``d_P(mu, lam) <= eps`` iff some coupling puts at most
``eps`` mass on pairs more than ``eps`` apart.  That is a bipartite flow
problem: atoms of ``mu`` on the left, atoms of ``lam`` on the right, an edge
wherever ``|x_i - y_j| <= eps``.  On the real line each left atom sees a
contiguous window of right atoms whose endpoints move monotonically, so the
maximum flow is found by a single left-to-right greedy sweep.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from .dist import DiscreteDistribution, DistributionError, cdf_values

LEVY_WIDTH = 1e-12
FEAS_TOL = 1e-12
BRUTEFORCE_MAX_ATOMS = 15


@dataclass(frozen=True)
class MetricResult:
    value: float
    certificate: Optional[Any] = field(default=None, compare=False)

    def __float__(self):
        return float(self.value)


def kolmogorov(mu: DiscreteDistribution, lam: DiscreteDistribution) -> MetricResult:
    """sup_x |F_mu(x) - F_lam(x)|, evaluated at every jump and its left limit."""
    pts = np.union1d(mu.support, lam.support)
    right = np.abs(cdf_values(mu, pts) - cdf_values(lam, pts))
    left = np.abs(cdf_values(mu, pts, left=True) - cdf_values(lam, pts, left=True))
    gaps = np.maximum(right, left)
    k = int(np.argmax(gaps))
    return MetricResult(float(min(gaps[k], 1.0)), certificate={"x": float(pts[k])})


def _step(support: np.ndarray, cum: np.ndarray, xs: np.ndarray, left: bool) -> np.ndarray:
    k = np.searchsorted(support, xs, side="left" if left else "right")
    return cum[k]


def _levy_violation(mu: DiscreteDistribution, lam: DiscreteDistribution, eps: float) -> Optional[float]:
    """Return a point x violating the Lévy band at ``eps``, or None if feasible.

    The shifted CDFs ``F_mu(x - eps)`` and ``F_mu(x + eps)`` are evaluated as
    step functions over the shifted supports themselves so every comparison
    uses the same rounded breakpoints.
    """
    cmu = np.minimum(np.concatenate(([0.0], np.cumsum(mu.weights))), 1.0)
    clam = np.minimum(np.concatenate(([0.0], np.cumsum(lam.weights))), 1.0)
    lo_shift = mu.support + eps  # jumps of x -> F_mu(x - eps)
    hi_shift = mu.support - eps  # jumps of x -> F_mu(x + eps)
    xs = np.concatenate((lo_shift, hi_shift, lam.support))
    for left in (False, True):
        f_lo = _step(lo_shift, cmu, xs, left)
        f_hi = _step(hi_shift, cmu, xs, left)
        f_lam = _step(lam.support, clam, xs, left)
        bad = (f_lo - eps > f_lam + FEAS_TOL) | (f_lam > f_hi + eps + FEAS_TOL)
        if bad.any():
            return float(xs[int(np.argmax(bad))])
    return None


def levy(mu: DiscreteDistribution, lam: DiscreteDistribution) -> MetricResult:
    """Lévy distance by bisection on eps over [0, 1] to width 1e-12.

    The returned value is the smallest feasible level difference or atom
    distance in the final bracket, or its feasible end if none qualifies; the
    certificate records the infeasible end and a point where the band fails.
    """
    if _levy_violation(mu, lam, 0.0) is None:
        return MetricResult(0.0)
    lo, hi = 0.0, 1.0
    witness = _levy_violation(mu, lam, lo)
    while hi - lo > LEVY_WIDTH:
        mid = 0.5 * (lo + hi)
        x = _levy_violation(mu, lam, mid)
        if x is None:
            hi = mid
        else:
            lo, witness = mid, x
    # the exact answer is a CDF level difference or an atom distance; take
    # the smallest feasible one in the final bracket.  The bracket is widened
    # upward by the feasibility slack, which can accept eps just below the
    # true value.
    cmu = np.minimum(np.concatenate(([0.0], np.cumsum(mu.weights))), 1.0)
    clam = np.minimum(np.concatenate(([0.0], np.cumsum(lam.weights))), 1.0)
    levels = (cmu[:, None] - clam[None, :]).ravel()
    cands = np.concatenate((levels, -levels, np.abs(mu.support[:, None] - lam.support[None, :]).ravel()))
    for eps in np.unique(cands[(cands > lo) & (cands <= hi + 2 * FEAS_TOL)]):
        if _levy_violation(mu, lam, float(eps)) is None:
            hi = float(eps)
            break
    return MetricResult(hi, certificate={"infeasible_eps": lo, "violation_x": witness})


def _windows(xs: np.ndarray, ys: np.ndarray, eps: float) -> tuple[np.ndarray, np.ndarray]:
    """Half-open index ranges [start, stop) of ys with |x - y| <= eps.

    searchsorted on ``x -/+ eps`` can disagree with the rounded distance by an
    ulp, so the bounds are nudged until they match the distance predicate
    exactly.  Rounded differences are monotone in y, so the set stays
    contiguous and both bounds stay nondecreasing in x.
    """
    start = np.searchsorted(ys, xs - eps, side="left")
    stop = np.searchsorted(ys, xs + eps, side="right")
    m = ys.size
    for i, x in enumerate(xs):
        a, b = int(start[i]), int(stop[i])
        while a > 0 and abs(x - ys[a - 1]) <= eps:
            a -= 1
        while a < m and x - ys[a] > eps:
            a += 1
        while b < m and abs(ys[b] - x) <= eps:
            b += 1
        while b > a and ys[b - 1] - x > eps:
            b -= 1
        start[i], stop[i] = a, max(a, b)
    return start, stop


def _greedy_flow(mu: DiscreteDistribution, lam: DiscreteDistribution, eps: float, want_plan: bool = False):
    """Maximum flow through the closed eps-neighbourhood graph.

    Each mu atom, taken left to right, fills the leftmost lam atoms that still
    have capacity inside its window.  Window endpoints are nondecreasing, so a
    lam atom skipped by one mu atom is useless to every later one.
    """
    start, stop = _windows(mu.support, lam.support, eps)
    cap = lam.weights.copy()
    plan = np.zeros((len(mu), len(lam))) if want_plan else None
    total = 0.0
    p = 0
    for i, supply in enumerate(mu.weights):
        j = max(p, int(start[i]))
        end = int(stop[i])
        while supply > 0 and j < end:
            sent = min(supply, cap[j])
            cap[j] -= sent
            supply -= sent
            total += sent
            if plan is not None:
                plan[i, j] += sent
            if cap[j] <= 0:
                j += 1
        # everything left of j is exhausted or out of reach for later atoms
        p = j
    return total, plan


def strassen_flow(mu: DiscreteDistribution, lam: DiscreteDistribution, eps: float) -> float:
    """Maximum mass a coupling can place on pairs within distance eps."""
    return _greedy_flow(mu, lam, eps)[0]


def _cut_deficit(mu: DiscreteDistribution, lam: DiscreteDistribution, eps: float) -> float:
    """max over A of mu(A) - lam(A^eps), summed exactly over the maximizing set.

    Windows are monotone, so a maximizing A is a union of index-contiguous
    blocks of mu atoms.  A dynamic program over blocks locates it in floating
    point; the value is then recomputed with ``math.fsum`` so that it is the
    correctly rounded deficit of that set, independent of summation order.
    """
    start, stop = _windows(mu.support, lam.support, eps)
    n = len(mu)
    cm = np.concatenate(([0.0], np.cumsum(mu.weights)))
    cl = np.concatenate(([0.0], np.cumsum(lam.weights)))
    best = np.zeros(n + 1)
    choice = np.full(n + 1, -1)  # first atom of the block ending at j, or -1 if j is skipped
    for j in range(1, n + 1):
        i = np.arange(1, j + 1)
        vals = best[i - 1] + (cm[j] - cm[i - 1]) - (cl[stop[j - 1]] - cl[start[i - 1]])
        k = int(np.argmax(vals))
        if vals[k] > best[j - 1]:
            best[j], choice[j] = vals[k], k + 1
        else:
            best[j] = best[j - 1]
    in_a = np.zeros(n, dtype=bool)
    j = n
    while j > 0:
        if choice[j] < 0:
            j -= 1
        else:
            in_a[choice[j] - 1 : j] = True
            j = choice[j] - 1
    if not in_a.any():
        return 0.0
    reach = np.zeros(len(lam), dtype=bool)
    for i in np.flatnonzero(in_a):
        reach[start[i] : stop[i]] = True
    return max(0.0, math.fsum(np.concatenate((mu.weights[in_a], -lam.weights[reach]))))


def _coupling(mu: DiscreteDistribution, lam: DiscreteDistribution, eps: float) -> np.ndarray:
    total, plan = _greedy_flow(mu, lam, eps, want_plan=True)
    rows = np.maximum(mu.weights - plan.sum(axis=1), 0.0)
    cols = np.maximum(lam.weights - plan.sum(axis=0), 0.0)
    deficit = rows.sum()
    if deficit > 0 and cols.sum() > 0:
        plan = plan + np.outer(rows, cols) / cols.sum()
    return plan


def _distances(mu: DiscreteDistribution, lam: DiscreteDistribution) -> np.ndarray:
    d = np.abs(mu.support[:, None] - lam.support[None, :]).ravel()
    return np.unique(np.concatenate(([0.0], d)))


def prokhorov(mu: DiscreteDistribution, lam: DiscreteDistribution) -> MetricResult:
    """Exact Prokhorov distance with the closed fattening.

    With ``g(eps) = 1 - flow(eps)`` nonincreasing and constant between
    consecutive pairwise distances ``delta_k``, the answer is
    ``min_k max(delta_k, g(delta_k))``.  Binary search finds the first
    distance that is itself feasible; the deficit at the distance just below
    it is the only other candidate that can beat it.
    """
    deltas = _distances(mu, lam)

    def deficit(k):
        return max(0.0, 1.0 - strassen_flow(mu, lam, float(deltas[k])))

    lo, hi = 0, len(deltas) - 1
    if deltas[hi] + FEAS_TOL < deficit(hi):
        raise AssertionError("complete neighbourhood graph must carry unit flow")
    while lo < hi:
        mid = (lo + hi) // 2
        if deltas[mid] + FEAS_TOL >= deficit(mid):
            hi = mid
        else:
            lo = mid + 1
    best = float(deltas[lo])
    if lo > 0:
        # both directions agree exactly in real arithmetic; stored weights sum
        # to 1 only up to an ulp, so take the larger one as the brute force does
        eps = float(deltas[lo - 1])
        best = min(best, max(_cut_deficit(mu, lam, eps), _cut_deficit(lam, mu, eps)))
    best = min(best, 1.0)
    return MetricResult(best, certificate={"epsilon": best, "coupling": _coupling(mu, lam, best)})


def _subset_deficits(src: DiscreteDistribution, dst: DiscreteDistribution, eps_list, exact: bool = False) -> np.ndarray:
    """For each eps: max over A within supp(src) of src(A) - dst(A^eps).

    With ``exact`` every subset within 1e-12 of the floating-point maximum is
    re-summed with ``math.fsum`` and the largest correctly rounded value kept.
    """
    n = len(src)
    subsets = np.array(list(itertools.product((False, True), repeat=n)), dtype=bool)
    src_mass = subsets.astype(float) @ src.weights
    dist = np.abs(src.support[:, None] - dst.support[None, :])
    out = np.empty(len(eps_list))
    for k, eps in enumerate(eps_list):
        reach = (subsets.astype(np.int64) @ (dist <= eps).astype(np.int64)) > 0
        vals = src_mass - reach.astype(float) @ dst.weights
        out[k] = float(np.max(vals))
        if exact:
            near = np.flatnonzero(vals >= out[k] - 1e-12)
            out[k] = max(
                math.fsum(np.concatenate((src.weights[subsets[a]], -dst.weights[reach[a]]))) for a in near
            )
    return out


def prokhorov_bruteforce(mu: DiscreteDistribution, lam: DiscreteDistribution) -> MetricResult:
    """Prokhorov distance by enumerating every subset of both supports.

    Independent of the flow formulation: candidate deficits and feasibility
    are both read off the defining inequality ``mu(A) <= lam(A^eps) + eps``
    (and the same with the arguments swapped) over all atom subsets.
    """
    if len(mu) > BRUTEFORCE_MAX_ATOMS or len(lam) > BRUTEFORCE_MAX_ATOMS:
        raise DistributionError(f"brute force limited to {BRUTEFORCE_MAX_ATOMS} atoms per support")
    deltas = _distances(mu, lam)
    deficits = np.maximum(_subset_deficits(mu, lam, deltas, exact=True), _subset_deficits(lam, mu, deltas, exact=True))
    candidates = np.unique(np.concatenate((deltas, np.clip(deficits, 0.0, None), [1.0])))
    candidates = candidates[candidates <= 1.0]
    worst = np.maximum(_subset_deficits(mu, lam, candidates), _subset_deficits(lam, mu, candidates))
    feasible = worst <= candidates + FEAS_TOL
    k = int(np.argmax(feasible))
    return MetricResult(float(candidates[k]), certificate={"candidates": int(candidates.size)})

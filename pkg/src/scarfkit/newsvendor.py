"""Single-period newsvendor: classical fractile rule and its minimax variants.

Prices: selling price ``p``, unit cost ``c``, salvage value ``q`` with
``p > c > q >= 0``.  For order quantity ``x`` and demand law ``mu``

    profit(x, mu) = p E min(x, W) + q E max(x - W, 0) - c x
                  = (p - q) mean(mu) - cost(x, mu)
    cost(x, mu)   = (c - q) x + (p - q) E max(W - x, 0).

When only the mean ``m`` and variance ``s2`` of the demand are known, the
worst expected shortfall is ``(sqrt(s2 + (x - m)^2) - (x - m)) / 2``,
attained by a two-point law, so the worst-case cost is

    L(x, m, s2) = (c - q) x + (p - q)/2 * (sqrt(s2 + (x - m)^2) - (x - m)).

Minimizing ``L`` in ``x`` gives Scarf's order quantity

    x* = m + (s/2) * (sqrt((p - c)/(c - q)) - sqrt((c - q)/(p - c))),

with ``s = sqrt(s2)`` the standard deviation.  This is what the stationarity
condition of ``L`` yields; a variant printed with ``s2/2`` in place of ``s/2``
circulates in the literature and is *not* the minimizer (compare against
:func:`minimize_L`).  The same holds for the mean-interval extension, whose
quantity is ``b + (d/2) * (...)``.

With the mean only known to lie in ``[a, b]`` and the variance at most
``d2``, ``L`` is nondecreasing in both ``m`` and ``s2``, so the worst case
over that rectangle sits at the corner ``(b, d2)`` and the robust order is
Scarf's rule evaluated there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dist import (
    DiscreteDistribution,
    DistributionError,
    expected_excess,
    expected_shortfall,
    make_discrete,
    point_mass,
    quantile,
)
from .momentsets import MomentClassSpec, moment_class_from_envelope

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
GSS_WIDTH = 1e-10
MOMENT_TOL = 1e-10
GRID_TIE_TOL = 1e-12


@dataclass(frozen=True)
class PriceParams:
    p: float
    c: float
    q: float

    def __post_init__(self):
        if not all(math.isfinite(v) for v in (self.p, self.c, self.q)):
            raise DistributionError("prices must be finite")
        if not (self.p > self.c > self.q >= 0):
            raise DistributionError(
                f"price ordering violated: need p > c > q >= 0, got p={self.p}, c={self.c}, q={self.q}"
            )

    @property
    def fractile(self) -> float:
        return (self.p - self.c) / (self.p - self.q)

    @property
    def skew(self) -> float:
        """sqrt((p-c)/(c-q)) - sqrt((c-q)/(p-c)); zero for symmetric margins."""
        over, under = self.p - self.c, self.c - self.q
        return math.sqrt(over / under) - math.sqrt(under / over)


@dataclass(frozen=True)
class MomentEnvelope:
    a: float
    b: float
    d2: float

    def __post_init__(self):
        if not (0 < self.a <= self.b):
            raise DistributionError(f"need 0 < a <= b, got a={self.a}, b={self.b}")
        if self.d2 < 0:
            raise DistributionError(f"variance cap must be nonnegative, got {self.d2}")

    def moment_class(self) -> MomentClassSpec:
        return moment_class_from_envelope(self.a, self.b, self.d2)


@dataclass(frozen=True)
class ScarfSolution:
    x_star: float
    value: float
    worst_dist: DiscreteDistribution
    clamped: bool
    support_warning: bool
    m: float
    s2: float


def _check_demand(dist: DiscreteDistribution) -> None:
    if dist.support[0] < 0:
        raise DistributionError(f"demand must be nonnegative, found atom at {dist.support[0]}")


def profit(params: PriceParams, x: float, dist: DiscreteDistribution, check_support: bool = True) -> float:
    if x < 0:
        raise DistributionError("order quantity must be nonnegative")
    if check_support:
        _check_demand(dist)
    sold = float(np.dot(dist.weights, np.minimum(x, dist.support)))
    return params.p * sold + params.q * expected_shortfall(dist, x) - params.c * x


def cost_P(params: PriceParams, x: float, dist: DiscreteDistribution, check_support: bool = True) -> float:
    if x < 0:
        raise DistributionError("order quantity must be nonnegative")
    if check_support:
        _check_demand(dist)
    return (params.c - params.q) * x + (params.p - params.q) * expected_excess(dist, x)


def classical_optimal(params: PriceParams, dist: DiscreteDistribution) -> float:
    """Smallest x >= 0 with F(x) >= (p - c)/(p - q)."""
    _check_demand(dist)
    return quantile(dist, params.fractile)


def excess_upper_bound(x: float, m: float, s2: float) -> float:
    """Largest E max(W - x, 0) over laws with mean m and variance s2."""
    if s2 < 0:
        raise DistributionError("variance must be nonnegative")
    t = x - m
    return 0.5 * (math.sqrt(s2 + t * t) - t)


def two_point_lower_atom(x: float, m: float, s2: float) -> float:
    """Lower atom ``x - sqrt(s2 + (x - m)^2)`` of the worst-case law at x."""
    return x - math.sqrt(s2 + (x - m) ** 2)


def worst_case_two_point(x: float, m: float, s2: float) -> DiscreteDistribution:
    """Law with mean m, variance s2 maximizing E max(W - x, 0).

    Atoms ``x -/+ D`` with ``D = sqrt(s2 + (x - m)^2)``.  The lower atom may be
    negative; use :func:`two_point_lower_atom` to detect that.
    """
    if s2 < 0:
        raise DistributionError("variance must be nonnegative")
    if s2 == 0:
        return point_mass(m)
    D = math.sqrt(s2 + (x - m) ** 2)
    shift = (m - x) / D
    return make_discrete([x - D, x + D], [0.5 * (1.0 - shift), 0.5 * (1.0 + shift)])


def scarf_L(params: PriceParams, x: float, m: float, s2: float) -> float:
    return (params.c - params.q) * x + (params.p - params.q) * excess_upper_bound(x, m, s2)


def scarf_rule(params: PriceParams, m: float, s2: float) -> ScarfSolution:
    if s2 < 0:
        raise DistributionError("variance must be nonnegative")
    x = m + 0.5 * math.sqrt(s2) * params.skew
    clamped = x < 0
    if clamped:
        x = 0.0
    return ScarfSolution(
        x_star=x,
        value=scarf_L(params, x, m, s2),
        worst_dist=worst_case_two_point(x, m, s2),
        clamped=clamped,
        support_warning=s2 > 0 and two_point_lower_atom(x, m, s2) < 0,
        m=m,
        s2=s2,
    )


def extended_scarf(params: PriceParams, env: MomentEnvelope) -> ScarfSolution:
    """Robust order when the mean lies in [a, b] and the variance is at most d2."""
    return scarf_rule(params, env.b, env.d2)


def golden_section(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    width: float = GSS_WIDTH,
    diff: Optional[Callable[[float, float], float]] = None,
) -> float:
    """Golden-section search for the minimizer of a convex f on [lo, hi].

    ``diff(u, v)`` may supply ``f(u) - f(v)`` computed without cancellation;
    only its sign is used.  Returns the midpoint of the final bracket.
    """
    if diff is None:
        def diff(u, v):
            return f(u) - f(v)

    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    while b - a > width:
        if diff(c, d) < 0:
            b, d = d, c
            c = b - INV_PHI * (b - a)
        else:
            a, c = c, d
            d = a + INV_PHI * (b - a)
        if not (a <= c <= d <= b):
            # rounding on a bracket a few ulps wide
            break
    return 0.5 * (a + b)


def _L_diff(params: PriceParams, m: float, s2: float) -> Callable[[float, float], float]:
    """L(u) - L(v) as (u - v) times a secant slope with no cancellation."""
    k = params.c - params.q
    h = 0.5 * (params.p - params.q)

    def diff(u, v):
        tu, tv = u - m, v - m
        ru, rv = math.sqrt(s2 + tu * tu), math.sqrt(s2 + tv * tv)
        denom = ru + rv
        ratio = (tu + tv) / denom if denom > 0 else 0.0
        return (u - v) * (k + h * (ratio - 1.0))

    return diff


def minimize_L(params: PriceParams, m: float, s2: float) -> tuple[float, float]:
    """Numerical argmin of ``L(., m, s2)`` over x >= 0, independent of the closed form."""
    if s2 < 0:
        raise DistributionError("variance must be nonnegative")
    ratio = math.sqrt((params.p - params.c) / (params.c - params.q))
    hi = max(m, 0.0) + 10.0 * (math.sqrt(s2) + 1.0) * max(ratio, 1.0)

    def L(x):
        return scarf_L(params, x, m, s2)

    diff = _L_diff(params, m, s2)
    x = golden_section(L, 0.0, hi, diff=diff)
    if diff(hi, x) <= 0:
        raise RuntimeError(f"minimizer not interior: L({hi}) <= L({x})")
    if x > 10 * GSS_WIDTH and diff(0.0, x) < 0:
        raise RuntimeError(f"minimizer not interior: L(0) < L({x})")
    return x, L(x)


@dataclass(frozen=True)
class SupCheck:
    max_point: tuple[float, float]
    max_value: float
    corner_value: float
    corner_dominates: bool


def _sup_over(params: PriceParams, x: float, ms: np.ndarray, s2s: np.ndarray, corner: tuple[float, float]) -> SupCheck:
    t = x - ms
    vals = (params.c - params.q) * x + 0.5 * (params.p - params.q) * (np.sqrt(s2s + t * t) - t)
    # first index attaining the max: ties go to the smallest grid index
    k = int(np.argmax(vals))
    corner_val = scarf_L(params, x, *corner)
    return SupCheck(
        max_point=(float(ms.flat[k]), float(s2s.flat[k])),
        max_value=float(vals.flat[k]),
        corner_value=corner_val,
        corner_dominates=bool(np.all(corner_val >= vals - GRID_TIE_TOL)),
    )


def rectangle_sup_check(params: PriceParams, x: float, env: MomentEnvelope, grid_n: int) -> SupCheck:
    """Grid maximum of L(x, ., .) over [a, b] x [0, d2] against the corner (b, d2)."""
    if grid_n < 2:
        raise DistributionError("grid_n must be at least 2")
    M, S = np.meshgrid(np.linspace(env.a, env.b, grid_n), np.linspace(0.0, env.d2, grid_n), indexing="ij")
    return _sup_over(params, x, M, S, (env.b, env.d2))


def feasible_region_sup_check(params: PriceParams, x: float, env: MomentEnvelope, grid_n: int) -> SupCheck:
    """Same as :func:`rectangle_sup_check` over the moment-feasible region.

    A raw second-moment cap ``d2 + b^2`` with mean ``m`` allows any variance up
    to ``d2 + b^2 - m^2``, which exceeds ``d2`` whenever ``m < b``.
    """
    if grid_n < 2:
        raise DistributionError("grid_n must be at least 2")
    ms = np.linspace(env.a, env.b, grid_n)
    frac = np.linspace(0.0, 1.0, grid_n)
    M = np.repeat(ms[:, None], grid_n, axis=1)
    S = (env.d2 + env.b ** 2 - ms ** 2)[:, None] * frac[None, :]
    return _sup_over(params, x, M, S, (env.b, env.d2))


def _two_point_family(m: float, s2: float, w1) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Two-point laws with mean m, variance s2 and lower atom(s) w1 in [0, m)."""
    w1 = np.asarray(w1, dtype=np.float64)
    u = m - w1
    w2 = m + s2 / u
    p_up = u / (w2 - w1)
    return w1, w2, p_up


def _moment_tol(m: float, s2: float) -> tuple[float, float]:
    return MOMENT_TOL * max(1.0, abs(m)), MOMENT_TOL * max(1.0, m * m, s2)


@dataclass(frozen=True)
class SweepResult:
    best_dist: DiscreteDistribution
    best_cost: float
    best_w1: float
    grid_step: float


def two_point_sweep_oracle(params: PriceParams, x: float, m: float, s2: float, grid_n: int) -> SweepResult:
    """Largest cost over two-point laws with mean m and variance s2 on [0, inf).

    The lower atom ``w1`` sweeps ``grid_n`` points of ``[0, m)``; the upper atom
    and its weight are then forced by the two moment constraints.
    """
    if grid_n < 10:
        raise DistributionError("grid_n must be at least 10")
    if s2 <= 0 or m <= 0:
        raise DistributionError("need m > 0 and s2 > 0")
    step = m / grid_n
    w1, w2, p_up = _two_point_family(m, s2, np.arange(grid_n) * step)
    p_lo = 1.0 - p_up
    mean = p_lo * w1 + p_up * w2
    var = p_lo * (w1 - mean) ** 2 + p_up * (w2 - mean) ** 2
    tol_m, tol_v = _moment_tol(m, s2)
    if np.any(np.abs(mean - m) > tol_m) or np.any(np.abs(var - s2) > tol_v):
        raise AssertionError("two-point family member failed its moment check")
    excess = p_lo * np.maximum(w1 - x, 0.0) + p_up * np.maximum(w2 - x, 0.0)
    costs = (params.c - params.q) * x + (params.p - params.q) * excess
    k = int(np.argmax(costs))
    best = make_discrete([w1[k], w2[k]], [p_lo[k], p_up[k]])
    return SweepResult(best, float(costs[k]), float(w1[k]), step)


def random_member(rng: np.random.Generator, m: float, s2: float, max_components: int = 4) -> DiscreteDistribution:
    """Random law on [0, inf) with mean m and variance s2.

    A Dirichlet mixture of two-point family members; mixing laws that share
    mean and variance keeps both.
    """
    k = int(rng.integers(1, max_components + 1))
    w1, w2, p_up = _two_point_family(m, s2, rng.uniform(0.0, m, size=k))
    alpha = rng.dirichlet(np.ones(k))
    pts = np.concatenate((w1, w2))
    wts = np.concatenate((alpha * (1.0 - p_up), alpha * p_up))
    return make_discrete(pts, wts)


def random_member_oracle(
    params: PriceParams,
    x: float,
    m: float,
    s2: float,
    trials: int,
    seed: int,
    max_components: int = 4,
) -> float:
    """max over random members mu of F(m, s2) of cost(x, mu) - L(x, m, s2).

    Members are drawn exactly as in :func:`random_member`; the costs are
    evaluated in one vectorized pass over all trials.
    """
    if trials < 1:
        raise DistributionError("trials must be positive")
    if m <= 0 or s2 <= 0:
        raise DistributionError("need m > 0 and s2 > 0")
    rng = np.random.default_rng(seed)
    K = max_components
    counts = rng.integers(1, K + 1, size=trials)
    active = np.arange(K)[None, :] < counts[:, None]
    w1, w2, p_up = _two_point_family(m, s2, rng.uniform(0.0, m, size=(trials, K)))
    raw = rng.gamma(1.0, size=(trials, K)) * active
    alpha = raw / raw.sum(axis=1, keepdims=True)

    lo_w, hi_w = alpha * (1.0 - p_up), alpha * p_up
    mean = (lo_w * w1 + hi_w * w2).sum(axis=1)
    var = (lo_w * (w1 - mean[:, None]) ** 2 + hi_w * (w2 - mean[:, None]) ** 2).sum(axis=1)
    tol_m, tol_v = _moment_tol(m, s2)
    if np.any(np.abs(mean - m) > tol_m) or np.any(np.abs(var - s2) > tol_v):
        raise AssertionError("random member failed its moment check")

    excess = (lo_w * np.maximum(w1 - x, 0.0) + hi_w * np.maximum(w2 - x, 0.0)).sum(axis=1)
    costs = (params.c - params.q) * x + (params.p - params.q) * excess
    return float(np.max(costs) - scarf_L(params, x, m, s2))


__all__ = [
    "PriceParams",
    "MomentEnvelope",
    "ScarfSolution",
    "SupCheck",
    "SweepResult",
    "profit",
    "cost_P",
    "classical_optimal",
    "excess_upper_bound",
    "two_point_lower_atom",
    "worst_case_two_point",
    "scarf_L",
    "scarf_rule",
    "extended_scarf",
    "golden_section",
    "minimize_L",
    "rectangle_sup_check",
    "feasible_region_sup_check",
    "two_point_sweep_oracle",
    "random_member",
    "random_member_oracle",
]

"""Seeded oracle suites cross-checking every closed form against brute force."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .dist import DiscreteDistribution, make_discrete
from .metrics import LEVY_WIDTH, kolmogorov, levy, prokhorov, prokhorov_bruteforce
from .newsvendor import (
    MomentEnvelope,
    PriceParams,
    cost_P,
    extended_scarf,
    minimize_L,
    random_member_oracle,
    rectangle_sup_check,
    scarf_L,
    scarf_rule,
    two_point_lower_atom,
    two_point_sweep_oracle,
    worst_case_two_point,
)

SUITES = ("scarf", "metrics", "envelope")


@dataclass
class Check:
    name: str
    discrepancy: float
    tolerance: float
    passed: bool
    samples: int

    def to_dict(self) -> dict:
        return asdict(self)


def _check(name, discrepancy, tolerance, samples, scale=1.0) -> Check:
    tol = tolerance * scale
    return Check(name, float(discrepancy), tol, bool(scale >= 0 and discrepancy <= tol), int(samples))


def random_prices(rng: np.random.Generator) -> PriceParams:
    p = rng.uniform(1.0, 10.0)
    c = p * rng.uniform(0.05, 0.95)
    q = c * rng.uniform(0.0, 0.95)
    return PriceParams(float(p), float(c), float(q))


def random_discrete(rng: np.random.Generator, max_atoms: int = 6, spread: float = 2.0, lattice: bool = False) -> DiscreteDistribution:
    """Small random distribution; ``lattice`` snaps atoms to a coarse grid so ties occur."""
    k = int(rng.integers(1, max_atoms + 1))
    pts = rng.uniform(-spread, spread, size=k)
    if lattice:
        pts = np.round(pts * 4) / 4
    return make_discrete(pts, rng.dirichlet(np.ones(k)))


def random_scarf_draw(rng: np.random.Generator):
    """Prices, mean in [1, 100] and standard deviation in [0, m/2]."""
    params = random_prices(rng)
    m = float(rng.uniform(1.0, 100.0))
    s = float(rng.uniform(0.0, m / 2))
    return params, m, s * s


def random_attainable_point(rng: np.random.Generator):
    """(params, x, m, s2) where the worst-case two-point law stays on [0, inf)."""
    while True:
        params = random_prices(rng)
        m = float(rng.uniform(1.0, 20.0))
        s2 = float((m * rng.uniform(0.1, 0.5)) ** 2)
        x = float(rng.uniform(0.0, 2.0 * m))
        if two_point_lower_atom(x, m, s2) >= 0:
            return params, x, m, s2


def random_envelope(rng: np.random.Generator) -> MomentEnvelope:
    a = float(rng.uniform(1.0, 50.0))
    b = a + float(rng.uniform(0.0, 50.0))
    d2 = float(rng.uniform(0.0, b / 2) ** 2)
    return MomentEnvelope(a, b, d2)


def suite_scarf(seed: int, trials: int, grid_n: int, scale: float = 1.0) -> list[Check]:
    rng = np.random.default_rng([seed, 1])
    dx = dv = attain = 0.0
    for _ in range(trials):
        params, m, s2 = random_scarf_draw(rng)
        sol = scarf_rule(params, m, s2)
        x, v = minimize_L(params, m, s2)
        dx = max(dx, abs(sol.x_star - x))
        dv = max(dv, abs(sol.value - v))
        xr = float(rng.uniform(0.0, 2.0 * m))
        L = scarf_L(params, xr, m, s2)
        cost = cost_P(params, xr, worst_case_two_point(xr, m, s2), check_support=False)
        attain = max(attain, abs(cost - L) / max(1.0, abs(L)))
    checks = [
        _check("closed_form_vs_argmin_x", dx, 1e-8, trials, scale),
        _check("closed_form_vs_argmin_value", dv, 1e-9, trials, scale),
        _check("two_point_attainment_relative", attain, 1e-12, trials, scale),
    ]

    over = under = 0.0
    n_points = 20
    for _ in range(n_points):
        params, x, m, s2 = random_attainable_point(rng)
        res = two_point_sweep_oracle(params, x, m, s2, grid_n)
        L = scarf_L(params, x, m, s2)
        over = max(over, res.best_cost - L)
        under = max(under, L - res.best_cost)
    checks.append(_check("two_point_sweep_never_exceeds_bound", max(over, 0.0), 1e-9, n_points, scale))
    checks.append(_check("two_point_sweep_attains_bound", max(under, 0.0), 1e-5, n_points, scale))

    viol = -math.inf
    n_oracle = 5
    for k in range(n_oracle):
        params, x, m, s2 = random_attainable_point(rng)
        viol = max(viol, random_member_oracle(params, x, m, s2, trials, seed=seed * 1000 + k))
    checks.append(_check("random_member_bound", max(viol, 0.0), 1e-9, n_oracle * trials, scale))
    return checks


def suite_metrics(seed: int, pairs: int, scale: float = 1.0) -> list[Check]:
    rng = np.random.default_rng([seed, 2])
    gap = 0.0
    for k in range(pairs):
        lattice = k % 2 == 0
        mu, lam = random_discrete(rng, lattice=lattice), random_discrete(rng, lattice=lattice)
        gap = max(gap, abs(prokhorov(mu, lam).value - prokhorov_bruteforce(mu, lam).value))
    # both sides return correctly rounded deficits, so agreement is bitwise
    checks = [_check("prokhorov_vs_bruteforce", gap, 0.0, pairs, scale)]

    lk = lp = 0.0
    n_order = 5 * pairs
    for i in range(n_order):
        mu, lam = random_discrete(rng), random_discrete(rng)
        dl = levy(mu, lam).value
        lk = max(lk, dl - kolmogorov(mu, lam).value)
        if i < pairs:
            lp = max(lp, dl - prokhorov(mu, lam).value)
    # Lévy and Kolmogorov values come from the same cumulative sums, so the
    # ordering holds exactly; Prokhorov deficits are summed differently
    checks.append(_check("levy_le_kolmogorov", max(lk, 0.0), 0.0, n_order, scale))
    checks.append(_check("levy_le_prokhorov", max(lp, 0.0), LEVY_WIDTH, pairs, scale))
    return checks


def suite_envelope(seed: int, trials: int, grid_n: int = 100, scale: float = 1.0) -> list[Check]:
    rng = np.random.default_rng([seed, 3])
    excess = 0.0
    n_rect = 20
    for _ in range(n_rect):
        params, env = random_prices(rng), random_envelope(rng)
        x = float(rng.uniform(0.0, 2.0 * env.b))
        res = rectangle_sup_check(params, x, env, grid_n)
        excess = max(excess, res.max_value - res.corner_value)
    checks = [_check("rectangle_corner_dominates", max(excess, 0.0), 1e-12, n_rect, scale)]

    dx = chain = 0.0
    n_ext = min(trials, 100)
    for _ in range(n_ext):
        params, env = random_prices(rng), random_envelope(rng)
        sol = extended_scarf(params, env)
        x, _v = minimize_L(params, env.b, env.d2)
        dx = max(dx, abs(sol.x_star - x))
        L = scarf_L(params, sol.x_star, env.b, env.d2)
        cost = cost_P(params, sol.x_star, worst_case_two_point(sol.x_star, env.b, env.d2), check_support=False)
        chain = max(chain, abs(sol.value - L), abs(L - cost))
    checks.append(_check("extended_vs_argmin_x", dx, 1e-8, n_ext, scale))
    checks.append(_check("extended_value_chain", chain, 1e-10, n_ext, scale))
    return checks


def run(suite: str, seed: int = 0, trials: int = 10_000, grid_n: int = 10_001, pairs: int = 200, scale: float = 1.0) -> list[Check]:
    if suite == "all":
        names = SUITES
    elif suite in SUITES:
        names = (suite,)
    else:
        raise ValueError(f"unknown suite {suite!r}")
    checks: list[Check] = []
    for name in names:
        if name == "scarf":
            checks += suite_scarf(seed, trials, grid_n, scale)
        elif name == "metrics":
            checks += suite_metrics(seed, pairs, scale)
        else:
            checks += suite_envelope(seed, trials, 100, scale)
    return checks

"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

The lines are also collected in ``RESULTS`` and repeated in the terminal
summary by ``conftest.py``.
"""

import json
import time

import numpy as np

from scarfkit.cli import main
from scarfkit.dist import abs_moment, dump, make_discrete, point_mass
from scarfkit.metrics import kolmogorov, levy, prokhorov, prokhorov_bruteforce
from scarfkit.momentsets import (
    MomentClassSpec,
    ball_escape_sequence,
    mean_leak_sequence,
    member_Pabrc,
    moment_tail_radius,
    random_member_moment,
    random_member_Pb,
    tail_first_moment,
    tail_mass,
    uniform_tail_radius,
    weak_convergence_probe,
)
from scarfkit.newsvendor import (
    classical_optimal,
    extended_scarf,
    minimize_L,
    profit,
    random_member_oracle,
    rectangle_sup_check,
    scarf_L,
    scarf_rule,
    two_point_sweep_oracle,
)
from scarfkit.verify import random_attainable_point, random_discrete, random_envelope, random_prices, random_scarf_draw

RESULTS = []


def below(bound):
    """Largest float under ``bound``, turning a strict ``<`` into ``<=``."""
    return float(np.nextafter(bound, -np.inf))


def report(number, title, measured, elapsed, budget):
    """``measured`` maps a check name to (value, bound); a check passes when value <= bound."""
    parts = []
    ok = elapsed < budget
    for name, (value, bound) in measured.items():
        good = bool(value <= bound)
        ok &= good
        parts.append(f"{name}={value:.3g}<={bound:.3g}" + ("" if good else " !"))
    line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} [{'; '.join(parts)}; {elapsed:.2f}s<{budget}s]"
    print(line)
    RESULTS.append(line)
    assert ok, line


def test_criterion_1_scarf_closed_form():
    rng = np.random.default_rng(101)
    t0 = time.perf_counter()
    dx = dv = 0.0
    for _ in range(100):
        params, m, s2 = random_scarf_draw(rng)
        sol = scarf_rule(params, m, s2)
        x, v = minimize_L(params, m, s2)
        dx = max(dx, abs(sol.x_star - x))
        dv = max(dv, abs(sol.value - v))
    elapsed = time.perf_counter() - t0
    report(1, "closed-form order vs numerical argmin", {"max|dx|": (dx, 1e-8), "max|dvalue|": (dv, 1e-9)}, elapsed, 1)


def test_criterion_2_bound_is_tight():
    rng = np.random.default_rng(102)
    t0 = time.perf_counter()
    under = over = 0.0
    violation = -np.inf
    for k in range(20):
        params, x, m, s2 = random_attainable_point(rng)
        L = scarf_L(params, x, m, s2)
        best = two_point_sweep_oracle(params, x, m, s2, 10_000).best_cost
        under = max(under, L - best)
        over = max(over, best - L)
        violation = max(violation, random_member_oracle(params, x, m, s2, 10_000, seed=1000 + k))
    elapsed = time.perf_counter() - t0
    report(
        2,
        "two-point sweep and random members against the bound",
        {"sweep_gap": (under, 1e-5), "sweep_excess": (over, 1e-9), "random_violation": (violation, 1e-9)},
        elapsed,
        10,
    )


def test_criterion_3_corner_reduction():
    rng = np.random.default_rng(103)
    t0 = time.perf_counter()
    not_dominated = 0
    corner_excess = dx = 0.0
    for _ in range(20):
        params, env = random_prices(rng), random_envelope(rng)
        x = float(rng.uniform(0.0, 2.0 * env.b))
        res = rectangle_sup_check(params, x, env, 100)
        not_dominated += not res.corner_dominates
        corner_excess = max(corner_excess, res.max_value - res.corner_value)
        sol = extended_scarf(params, env)
        dx = max(dx, abs(sol.x_star - minimize_L(params, env.b, env.d2)[0]))
    elapsed = time.perf_counter() - t0
    report(
        3,
        "rectangle supremum at the (b, d2) corner",
        {"cases_not_dominated": (not_dominated, 0), "grid_over_corner": (max(corner_excess, 0.0), 1e-12), "extended_vs_argmin": (dx, 1e-8)},
        elapsed,
        5,
    )


def test_criterion_4_mean_leak():
    t0 = time.perf_counter()
    moment_err = probe_worst = 0.0
    member_hits = 0
    for a in (0.5, 1.0, 3.0):
        for n in [*range(1, 1001), 10**6]:
            moment_err = max(moment_err, abs(abs_moment(mean_leak_sequence(a, n), 0.0, 1) - a))
        grid = np.linspace(0.0, 2.0 * a, 100)
        limit = point_mass(a / 2)
        for n in (1000, 2000, 10_000, 10**6):
            probe_worst = max(probe_worst, weak_convergence_probe(lambda k: mean_leak_sequence(a, k), limit, grid, n))
        for b, cap in ((a, 10.0), (2 * a, 100.0), (10 * a, 1e6)):
            member_hits += member_Pabrc(limit, MomentClassSpec(0.0, a, b, 1.0, cap))
    elapsed = time.perf_counter() - t0
    report(
        4,
        "mean-leak sequence keeps its moment, converges weakly, limit leaves the class",
        {"moment_err": (moment_err, 1e-12), "probe_n>=1000": (probe_worst, below(1e-3)), "limit_memberships": (member_hits, 0)},
        elapsed,
        1,
    )


def test_criterion_5_ball_escape():
    rng = np.random.default_rng(105)
    bases = {"delta0": point_mass(0.0), "random5": make_discrete(rng.uniform(-3, 3, 5), rng.dirichlet(np.ones(5)))}
    assert len(bases["random5"]) == 5
    t0 = time.perf_counter()
    worst_excess = -np.inf
    missing = 0
    for base in bases.values():
        for r in (0.1, 0.25, 0.4):
            seq = [ball_escape_sequence(base, r, n) for n in range(1, 201)]
            worst_excess = max(worst_excess, max(kolmogorov(d, base).value - r for d in seq))
            for R in (10, 50, 100):
                best = max(float(d.weights[np.abs(d.support) >= R].sum()) for d in seq)
                missing += best < 2 * r - 1e-12
    elapsed = time.perf_counter() - t0
    report(
        5,
        "Kolmogorov ball sequence stays in the ball and escapes every radius",
        {"max(dK - r)": (worst_excess, 0.0), "radii_without_witness": (missing, 0)},
        elapsed,
        2,
    )


def test_criterion_6_metrics():
    rng = np.random.default_rng(106)
    t0 = time.perf_counter()
    mismatches = 0
    for k in range(200):
        lattice = k % 2 == 0
        mu, lam = random_discrete(rng, lattice=lattice), random_discrete(rng, lattice=lattice)
        mismatches += prokhorov(mu, lam).value != prokhorov_bruteforce(mu, lam).value
    order = -np.inf
    for _ in range(1000):
        mu, lam = random_discrete(rng), random_discrete(rng)
        order = max(order, levy(mu, lam).value - kolmogorov(mu, lam).value)
    axiom = 0.0
    separation = 0
    for k in range(200):
        lattice = k % 2 == 0
        a, b, c = (random_discrete(rng, lattice=lattice) for _ in range(3))
        for metric in (kolmogorov, levy, prokhorov):
            ab, ba = metric(a, b).value, metric(b, a).value
            bc, ac = metric(b, c).value, metric(a, c).value
            axiom = max(axiom, metric(a, a).value, abs(ab - ba), ac - ab - bc, -ab)
            separation += (ab == 0) != (a == b)
    levy_pts = max(abs(levy(point_mass(0.0), point_mass(t)).value - min(t, 1.0)) for t in (0.25, 0.5, 2.0))
    elapsed = time.perf_counter() - t0
    report(
        6,
        "Prokhorov vs brute force, Levy <= Kolmogorov, metric axioms, point masses",
        {
            "prokhorov_mismatches": (mismatches, 0),
            "max(dL - dK)": (order, 0.0),
            "axiom_violation": (axiom, 1e-10),
            "separation_failures": (separation, 0),
            "levy_point_masses": (levy_pts, 1e-9),
        },
        elapsed,
        10,
    )


def near_extremal(rng, radius, budget, power):
    """Atoms at 0 and at t near ``radius`` with ``E|X|^power = u * budget`` for u in (1/2, 1).

    At t = radius with u = 1 the tail bound is attained, so these members
    press against it far harder than generic random ones.
    """
    t = radius * rng.uniform(0.5, 1.5)
    w = min(rng.uniform(0.5, 1.0) * budget / t**power, 1.0)
    return make_discrete([0.0, t], [1.0 - w, w])


def test_criterion_7_tail_radii():
    rng = np.random.default_rng(107)
    t0 = time.perf_counter()
    b, cap = 5.0, 10.0
    mass_excess = moment_excess = -np.inf
    for eps in (0.1, 0.5):
        R = uniform_tail_radius(b, eps)
        k = moment_tail_radius(cap, 1.0, eps)
        for i in range(1000):
            d = random_member_Pb(rng, b) if i % 2 else near_extremal(rng, R, b, 1)
            assert abs_moment(d, 0.0, 1) <= b + 1e-12
            # closed-ball complement plus the boundary: the stronger of the two readings
            mass = max(tail_mass(d, 0.0, R), float(d.weights[np.abs(d.support) >= R].sum()))
            mass_excess = max(mass_excess, mass - eps / 2)
            e = random_member_moment(rng, cap, 1.0) if i % 2 else near_extremal(rng, k, cap, 2)
            assert abs_moment(e, 0.0, 2) <= cap + 1e-12
            moment_excess = max(moment_excess, tail_first_moment(e, 0.0, k) - eps)
    elapsed = time.perf_counter() - t0
    report(
        7,
        "uniform and moment tail radii certify tightness",
        {"max(mass - eps/2)": (mass_excess, 0.0), "max(tail - eps)": (moment_excess, below(0.0))},
        elapsed,
        2,
    )


def grid_profit(params, demand, xs):
    """Expected profit on a grid, written out directly from sales, salvage and cost."""
    w, pw = demand.support, demand.weights
    sold = np.minimum(xs[:, None], w[None, :]) @ pw
    left = np.maximum(xs[:, None] - w[None, :], 0.0) @ pw
    return params.p * sold + params.q * left - params.c * xs


def test_criterion_8_classical_rule():
    rng = np.random.default_rng(108)
    t0 = time.perf_counter()
    shortfall = -np.inf
    for _ in range(100):
        params = random_prices(rng)
        k = int(rng.integers(1, 9))
        demand = make_discrete(rng.uniform(0, 100, k), rng.dirichlet(np.ones(k)))
        x = classical_optimal(params, demand)
        xs = np.linspace(0.0, 1.1 * demand.support[-1], 10_000)
        grid = grid_profit(params, demand, xs)
        assert abs(grid[-1] - profit(params, xs[-1], demand)) <= 1e-9
        shortfall = max(shortfall, grid.max() - profit(params, x, demand))
    elapsed = time.perf_counter() - t0
    report(8, "critical-fractile order beats a 10^4-point grid", {"max(grid - rule)": (shortfall, 1e-9)}, elapsed, 5)


def test_criterion_9_cli(tmp_path, capsys):
    dump(point_mass(0.0), tmp_path / "zero.json")
    dump(make_discrete([1, 4], [0.6, 0.4]), tmp_path / "demand.json")
    zero, demand = str(tmp_path / "zero.json"), str(tmp_path / "demand.json")

    def call(*argv):
        code = main(list(argv))
        out = capsys.readouterr().out
        return code, out

    t0 = time.perf_counter()
    echo_failures = 0
    runs = {
        "scarf": (["scarf", "--p", "4", "--c", "2", "--q", "1", "--mean", "10", "--s2", "4"], {"p": 4.0, "mean": 10.0, "s2": 4.0}),
        "classical": (["classical", "--p", "3", "--c", "2", "--q", "1", "--demand", demand], {"demand": demand, "q": 1.0}),
        "metrics": (["metrics", zero, demand, "--all"], {"file_a": zero, "file_b": demand}),
        "counterexample": (["counterexample", "prop3", "--base", zero, "--r", "0.25", "--n", "5"], {"r": 0.25, "n": "5"}),
        "verify": (["verify", "--suite", "all", "--seed", "0"], {"suite": "all", "seed": 0}),
    }
    codes = {}
    for name, (argv, expected) in runs.items():
        code, out = call(*argv)
        codes[name] = code
        params = json.loads(out)["params"]
        echo_failures += any(params.get(key) != value for key, value in expected.items())
    bad_prices, _ = call("scarf", "--p", "1", "--c", "2", "--q", "0", "--mean", "1", "--s2", "1")
    missing, _ = call("classical", "--p", "3", "--c", "2", "--q", "1", "--demand", str(tmp_path / "absent.json"))
    elapsed = time.perf_counter() - t0
    report(
        9,
        "CLI JSON contract and exit codes",
        {
            "nonzero_success_codes": (sum(c != 0 for c in codes.values()), 0),
            "echo_failures": (echo_failures, 0),
            "|bad_prices_exit - 1|": (abs(bad_prices - 1), 0),
            "|missing_file_exit - 2|": (abs(missing - 2), 0),
        },
        elapsed,
        30,
    )

import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scarfkit.dist import (
    DiscreteDistribution,
    DistributionError,
    abs_moment,
    cdf,
    cdf_left,
    cdf_values,
    dump,
    expected_excess,
    load,
    make_discrete,
    mix,
    moments,
    point_mass,
    quantile,
)
from scarfkit.momentsets import mean_leak_sequence
from scarfkit.newsvendor import worst_case_two_point

from conftest import discrete


def test_point_mass():
    d = make_discrete([0], [1])
    assert d.support.tolist() == [0.0] and d.weights.tolist() == [1.0]


def test_two_point_kept_as_given():
    d = make_discrete([1, 2], [0.5, 0.5])
    assert d.support.tolist() == [1.0, 2.0] and d.weights.tolist() == [0.5, 0.5]


def test_duplicates_merge():
    assert make_discrete([1, 1], [0.5, 0.5]) == point_mass(1)


def test_unsorted_zero_weight_and_renormalization():
    d = make_discrete([3, 1, 2], [2, 2, 0])
    assert d.support.tolist() == [1.0, 3.0]
    assert d.weights.tolist() == [0.5, 0.5]


@pytest.mark.parametrize(
    "points, weights",
    [([], []), ([0, 1], [0, 0]), ([np.nan], [1]), ([0], [np.inf]), ([0, 1], [1]), ([0], [-1])],
)
def test_construction_errors(points, weights):
    with pytest.raises(DistributionError):
        make_discrete(points, weights)


def test_direct_constructor_enforces_invariants():
    with pytest.raises(DistributionError):
        DiscreteDistribution(np.array([1.0, 0.0]), np.array([0.5, 0.5]))
    with pytest.raises(DistributionError):
        DiscreteDistribution(np.array([0.0, 1.0]), np.array([0.5, 0.4]))


def test_immutable():
    d = make_discrete([0, 1], [0.5, 0.5])
    with pytest.raises(ValueError):
        d.support[0] = 3.0


def test_cdf_examples():
    assert cdf(point_mass(0), -1) == 0
    assert cdf(point_mass(0), 0) == 1
    assert cdf(make_discrete([1, 3], [0.25, 0.75]), 2) == 0.25


def test_quantile_examples():
    d = make_discrete([1, 3], [0.25, 0.75])
    assert quantile(point_mass(5), 0.5) == 5
    assert quantile(d, 0.25) == 1
    assert quantile(d, 0.26) == 3
    assert quantile(d, 1.0) == 3


@pytest.mark.parametrize("tau", [0.0, -0.1, 1.01])
def test_quantile_domain(tau):
    with pytest.raises(DistributionError):
        quantile(point_mass(0), tau)


def test_moments_examples():
    m, s = 3.0, 1.5
    assert moments(make_discrete([m - s, m + s], [0.5, 0.5])) == pytest.approx((m, s * s), abs=1e-12)
    assert moments(point_mass(7.25)) == (7.25, 0.0)
    assert moments(mean_leak_sequence(1.5, 2))[0] == pytest.approx(1.5, abs=1e-12)


def test_abs_moment_examples():
    assert abs_moment(point_mass(0), 0, 3.7) == 0
    assert abs_moment(make_discrete([-1, 1], [0.5, 0.5]), 0, 2) == 1
    for n in (1, 2, 17, 1000):
        assert abs_moment(mean_leak_sequence(2.0, n), 0, 1) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(DistributionError):
        abs_moment(point_mass(0), 0, 0.5)


def test_expected_excess_examples():
    assert expected_excess(point_mass(5), 3) == 2
    m, s = 4.0, 2.0
    assert expected_excess(make_discrete([m - s, m + s], [0.5, 0.5]), m) == s / 2
    d = make_discrete([0, 2, 9], [0.2, 0.3, 0.5])
    assert expected_excess(d, 9) == 0 and expected_excess(d, 12) == 0


def test_mix_examples(rng):
    assert mix([point_mass(0), point_mass(2)], [0.5, 0.5]) == make_discrete([0, 2], [0.5, 0.5])
    for _ in range(50):
        comps = [make_discrete(rng.normal(size=3), rng.uniform(0.1, 1, 3)) for _ in range(4)]
        alpha = rng.dirichlet(np.ones(4))
        want = sum(a * moments(c)[0] for a, c in zip(alpha, comps))
        assert moments(mix(comps, alpha))[0] == pytest.approx(want, abs=1e-12)
    with pytest.raises(DistributionError):
        mix([point_mass(0)], [0.5, 0.5])


def test_mixture_of_attainers_keeps_moments(rng):
    m, s2 = 6.0, 2.5
    for _ in range(100):
        xs = rng.uniform(0, 12, size=3)
        comps = [worst_case_two_point(x, m, s2) for x in xs]
        mean, var = moments(mix(comps, rng.dirichlet(np.ones(3))))
        assert mean == pytest.approx(m, abs=1e-10)
        assert var == pytest.approx(s2, abs=1e-10)


@given(discrete())
def test_right_continuity_at_atoms(d):
    gaps = np.diff(d.support, prepend=-np.inf)
    for x, w, gap in zip(d.support, d.weights, gaps):
        assert cdf(d, x) - cdf_left(d, x) == pytest.approx(w, abs=1e-12)
        # x - 1e-12 must fall strictly between this atom and the previous one
        if gap > 1e-12 and abs(x) < 1e3:
            assert cdf(d, x) - cdf(d, x - 1e-12) == pytest.approx(w, abs=1e-12)


@given(discrete(), st.floats(0.001, 1.0), st.floats(-6, 6))
def test_quantile_galois(d, tau, x):
    cum = np.cumsum(d.weights)
    if np.min(np.abs(cum - tau)) < 1e-9:
        return
    assert (quantile(d, tau) <= x) == (cdf(d, x) >= tau)


@given(discrete())
def test_variance_matches_centered_moment(d):
    mean, var = moments(d)
    assert var >= 0
    assert var == pytest.approx(abs_moment(d, mean, 2), abs=1e-9)


@given(discrete(), st.floats(-6, 6))
def test_put_call_parity(d, x):
    mean = moments(d)[0]
    put = float(np.dot(d.weights, np.maximum(x - d.support, 0)))
    assert expected_excess(d, x) + x - mean == pytest.approx(put, abs=1e-12)


@given(discrete(), st.floats(-6, 6), st.floats(0, 3))
def test_excess_nonincreasing_convex(d, x, h):
    e0, e1, e2 = (expected_excess(d, x + k * h) for k in range(3))
    assert e1 <= e0 + 1e-12
    assert e1 <= 0.5 * (e0 + e2) + 1e-12


def test_cdf_values_matches_scalar(rng):
    d = make_discrete(rng.normal(size=7), rng.uniform(0.1, 1, 7))
    xs = np.concatenate((d.support, rng.normal(size=20)))
    assert np.allclose(cdf_values(d, xs), [cdf(d, x) for x in xs], atol=1e-15)
    assert np.allclose(cdf_values(d, xs, left=True), [cdf_left(d, x) for x in xs], atol=1e-15)


@settings(max_examples=50)
@given(discrete(max_atoms=10))
def test_json_round_trip_is_bit_identical(tmp_path_factory, d):
    path = tmp_path_factory.mktemp("rt") / "d.json"
    dump(d, path)
    back = load(path)
    assert back.support.tobytes() == d.support.tobytes()
    assert back.weights.tobytes() == d.weights.tobytes()


def test_load_rejects_bad_documents(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2]")
    with pytest.raises(DistributionError):
        load(bad)
    bad.write_text(json.dumps({"support": [1]}))
    with pytest.raises(DistributionError):
        load(bad)
    bad.write_text("{not json")
    with pytest.raises(ValueError):
        load(bad)

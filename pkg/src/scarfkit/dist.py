"""Finitely supported probability distributions on the real line.

A :class:`DiscreteDistribution` is an immutable pair of arrays: a strictly
increasing support and positive weights summing to one.  Everything else in
the package (metrics, moment classes, newsvendor costs) is computed exactly
over these atoms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

WEIGHT_TOL = 1e-9
# sums this close to 1 are left alone so stored weights round-trip bit for bit
RENORM_SLACK = 64 * np.finfo(np.float64).eps
VARIANCE_CLAMP = 1e-12


class DistributionError(ValueError):
    """Invalid input to a distribution constructor or query."""


@dataclass(frozen=True, eq=False)
class DiscreteDistribution:
    support: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.support, dtype=np.float64)
        w = np.asarray(self.weights, dtype=np.float64)
        if s.ndim != 1 or s.shape != w.shape or s.size == 0:
            raise DistributionError("support and weights must be nonempty 1-D arrays of equal length")
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(w))):
            raise DistributionError("support and weights must be finite")
        if np.any(np.diff(s) <= 0):
            raise DistributionError("support must be strictly increasing")
        if np.any(w <= 0):
            raise DistributionError("weights must be positive")
        if abs(w.sum() - 1.0) > WEIGHT_TOL:
            raise DistributionError(f"weights sum to {w.sum()!r}, not 1")
        s.setflags(write=False)
        w.setflags(write=False)
        object.__setattr__(self, "support", s)
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return self.support.size

    def __eq__(self, other):
        if not isinstance(other, DiscreteDistribution):
            return NotImplemented
        return np.array_equal(self.support, other.support) and np.array_equal(self.weights, other.weights)

    def __hash__(self):
        return hash((self.support.tobytes(), self.weights.tobytes()))

    def __repr__(self):
        atoms = ", ".join(f"{x:g}: {w:g}" for x, w in zip(self.support, self.weights))
        return f"DiscreteDistribution({{{atoms}}})"

    @property
    def mean(self) -> float:
        return moments(self)[0]

    @property
    def variance(self) -> float:
        return moments(self)[1]

    def to_dict(self) -> dict:
        return {"support": self.support.tolist(), "weights": self.weights.tolist()}

    @classmethod
    def from_dict(cls, data: dict) -> "DiscreteDistribution":
        try:
            return make_discrete(data["support"], data["weights"])
        except (KeyError, TypeError) as exc:
            raise DistributionError(f"malformed distribution document: {exc}") from exc


def make_discrete(points: Sequence[float], weights: Sequence[float]) -> DiscreteDistribution:
    """Build a distribution from possibly unsorted, duplicated atoms.

    Duplicate points are merged by adding their weights, zero-weight atoms are
    dropped, and the remaining weights are renormalized to sum to one.
    """
    x = np.asarray(points, dtype=np.float64).ravel()
    w = np.asarray(weights, dtype=np.float64).ravel()
    if x.size == 0 or x.size != w.size:
        raise DistributionError("points and weights must be nonempty and of equal length")
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(w))):
        raise DistributionError("points and weights must be finite")
    if np.any(w < 0):
        raise DistributionError("weights must be nonnegative")
    total = w.sum()
    if total <= 0:
        raise DistributionError("weights must have a positive sum")

    keep = w > 0
    x, w = x[keep], w[keep]
    uniq, inverse = np.unique(x, return_inverse=True)
    merged = np.zeros(uniq.size)
    np.add.at(merged, inverse, w)
    total = merged.sum()
    if abs(total - 1.0) > RENORM_SLACK:
        merged = merged / total
    return DiscreteDistribution(uniq, merged)


def point_mass(x: float) -> DiscreteDistribution:
    return make_discrete([x], [1.0])


def cdf(dist: DiscreteDistribution, x: float) -> float:
    """F(x) = total weight of atoms <= x (right-continuous)."""
    k = np.searchsorted(dist.support, x, side="right")
    return float(dist.weights[:k].sum())


def cdf_left(dist: DiscreteDistribution, x: float) -> float:
    """Left limit F(x-) = total weight of atoms < x."""
    k = np.searchsorted(dist.support, x, side="left")
    return float(dist.weights[:k].sum())


def cdf_values(dist: DiscreteDistribution, xs, left: bool = False) -> np.ndarray:
    """Vectorized :func:`cdf` (or its left limit) at many points."""
    cum = np.concatenate(([0.0], np.cumsum(dist.weights)))
    k = np.searchsorted(dist.support, np.asarray(xs, dtype=np.float64), side="left" if left else "right")
    out = cum[k]
    # the running sum can overshoot 1 by an ulp
    return np.minimum(out, 1.0)


def quantile(dist: DiscreteDistribution, tau: float) -> float:
    """Smallest atom x with F(x) >= tau, for tau in (0, 1]."""
    if not (0.0 < tau <= 1.0):
        raise DistributionError(f"quantile level must lie in (0, 1], got {tau!r}")
    cum = np.cumsum(dist.weights)
    cum[-1] = 1.0
    k = int(np.searchsorted(cum, tau, side="left"))
    return float(dist.support[min(k, len(dist) - 1)])


def moments(dist: DiscreteDistribution) -> tuple[float, float]:
    """Return (mean, variance); variance is computed about the mean."""
    mean = float(np.dot(dist.weights, dist.support))
    var = float(np.dot(dist.weights, (dist.support - mean) ** 2))
    if -VARIANCE_CLAMP < var < 0:
        var = 0.0
    return mean, var


def abs_moment(dist: DiscreteDistribution, x0: float, order: float) -> float:
    if order < 1:
        raise DistributionError(f"moment order must be >= 1, got {order!r}")
    return float(np.dot(dist.weights, np.abs(dist.support - x0) ** order))


def expected_excess(dist: DiscreteDistribution, x: float) -> float:
    """E max(W - x, 0)."""
    return float(np.dot(dist.weights, np.maximum(dist.support - x, 0.0)))


def expected_shortfall(dist: DiscreteDistribution, x: float) -> float:
    """E max(x - W, 0)."""
    return float(np.dot(dist.weights, np.maximum(x - dist.support, 0.0)))


def mix(dists: Sequence[DiscreteDistribution], weights: Sequence[float]) -> DiscreteDistribution:
    if len(dists) == 0 or len(dists) != len(weights):
        raise DistributionError("need one mixing weight per component")
    alpha = np.asarray(weights, dtype=np.float64)
    if np.any(alpha < 0) or abs(alpha.sum() - 1.0) > WEIGHT_TOL:
        raise DistributionError("mixing weights must be nonnegative and sum to 1")
    points = np.concatenate([d.support for d in dists])
    w = np.concatenate([a * d.weights for a, d in zip(alpha, dists)])
    return make_discrete(points, w)


def load(path) -> DiscreteDistribution:
    """Read a ``{"support": [...], "weights": [...]}`` JSON file.

    I/O and JSON syntax problems propagate as ``OSError`` / ``ValueError``;
    a well-formed document with invalid content raises ``DistributionError``.
    """
    with open(Path(path), encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise DistributionError("distribution file must hold a JSON object")
    return DiscreteDistribution.from_dict(data)


def dump(dist: DiscreteDistribution, path) -> None:
    with open(Path(path), "w", encoding="utf-8") as fh:
        json.dump(dist.to_dict(), fh)

"""Minimax newsvendor rules over moment classes, with probability metrics and
tightness diagnostics for finitely supported distributions on the line."""

from .dist import (
    DiscreteDistribution,
    DistributionError,
    abs_moment,
    cdf,
    expected_excess,
    make_discrete,
    mix,
    moments,
    point_mass,
    quantile,
)
from .metrics import MetricResult, kolmogorov, levy, prokhorov, prokhorov_bruteforce
from .momentsets import (
    MomentClassSpec,
    TightnessReport,
    ball_escape_sequence,
    mean_leak_sequence,
    member_Pabrc,
    member_Pb,
    moment_tail_radius,
    prop3_sequence,
    prop5_sequence,
    tightness_report,
    uniform_tail_radius,
    weak_convergence_probe,
)
from .newsvendor import (
    MomentEnvelope,
    PriceParams,
    ScarfSolution,
    classical_optimal,
    cost_P,
    excess_upper_bound,
    extended_scarf,
    minimize_L,
    profit,
    scarf_L,
    scarf_rule,
    worst_case_two_point,
)

__version__ = "0.1.0"

__all__ = [
    "DiscreteDistribution",
    "DistributionError",
    "abs_moment",
    "cdf",
    "expected_excess",
    "make_discrete",
    "mix",
    "moments",
    "point_mass",
    "quantile",
    "MetricResult",
    "kolmogorov",
    "levy",
    "prokhorov",
    "prokhorov_bruteforce",
    "MomentClassSpec",
    "TightnessReport",
    "ball_escape_sequence",
    "mean_leak_sequence",
    "member_Pabrc",
    "member_Pb",
    "moment_tail_radius",
    "prop3_sequence",
    "prop5_sequence",
    "tightness_report",
    "uniform_tail_radius",
    "weak_convergence_probe",
    "MomentEnvelope",
    "PriceParams",
    "ScarfSolution",
    "classical_optimal",
    "cost_P",
    "excess_upper_bound",
    "extended_scarf",
    "minimize_L",
    "profit",
    "scarf_L",
    "scarf_rule",
    "worst_case_two_point",
]

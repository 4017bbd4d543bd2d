"""Real-line layer: interval sets, Lebesgue-Stieltjes measures, outer measures."""

from __future__ import annotations

from .cdf import (
    CDFSpec,
    PiecewiseLinearMap,
    classify_cdf,
    discrete,
    dirac,
    eval_cdf,
    eval_left_limit,
    exponential,
    from_density_pieces,
    integrate_stieltjes,
    lebesgue,
    measure_set,
    pushforward_monotone,
    quantile,
    quantile_pushforward_check,
    tail_integral,
    uniform,
    upper_inverse,
)
from .functions import ExpPoly, PiecewiseFunction
from .intervals import INF, Interval, IntervalSet
from .outer import Premeasure, caratheodory_measurable, compact_regularity_check, outer_measure

__all__ = [
    "CDFSpec",
    "ExpPoly",
    "INF",
    "Interval",
    "IntervalSet",
    "PiecewiseFunction",
    "PiecewiseLinearMap",
    "Premeasure",
    "caratheodory_measurable",
    "classify_cdf",
    "compact_regularity_check",
    "dirac",
    "discrete",
    "eval_cdf",
    "eval_left_limit",
    "exponential",
    "from_density_pieces",
    "integrate_stieltjes",
    "lebesgue",
    "measure_set",
    "outer_measure",
    "pushforward_monotone",
    "quantile",
    "quantile_pushforward_check",
    "tail_integral",
    "uniform",
    "upper_inverse",
]

"""Exact majorization checks and stochastic-operator witnesses for step functions.

Rationals are returned as ``fractions.Fraction``; inputs may be ints,
Fractions or ``"p/q"`` strings. An infinite total measure is ``float("inf")``
or ``"inf"``.
"""

from ._majo import (
    MajoError,
    StepFunction,
    apply_matrix,
    classify_matrix,
    cross_check,
    distribution,
    ds_witness,
    ess_sup,
    hinge_integral,
    integral,
    l1_distance,
    lift,
    majorize,
    partial_integral,
    rearrangement,
    small_set_modulus,
    weak_majorize,
)

__all__ = [
    "MajoError",
    "StepFunction",
    "apply_matrix",
    "classify_matrix",
    "cross_check",
    "distribution",
    "ds_witness",
    "ess_sup",
    "hinge_integral",
    "integral",
    "l1_distance",
    "lift",
    "majorize",
    "partial_integral",
    "rearrangement",
    "small_set_modulus",
    "weak_majorize",
]

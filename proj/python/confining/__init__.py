"""Python access to the confining-potential numerics."""

from ._core import (
    classify_power,
    cli,
    counterexample_potential,
    critical_coeff,
    dist,
    hardy_quotient,
    iterlog,
    iterlog_threshold,
    reach,
    xk_from_s,
)

__all__ = [
    "classify_power",
    "cli",
    "counterexample_potential",
    "critical_coeff",
    "dist",
    "hardy_quotient",
    "iterlog",
    "iterlog_threshold",
    "reach",
    "xk_from_s",
]

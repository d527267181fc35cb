"""Sine-kernel gap probabilities, arc Toeplitz determinants and their asymptotics."""

from .asym import (
    AsymptoticBreakdown,
    TransitionParams,
    TwoGapGeometry,
    one_arc_toeplitz_asymptotic,
    one_gap_asymptotic,
    transition_asymptotic,
    transition_params,
    two_arc_toeplitz_asymptotic,
    two_gap_geometry,
    two_gap_oscillation,
)
from .fredholm import conditional_ratio, log_gap_probability, sine_kernel
from .sets import ArcSet, IntervalSet
from .toeplitz import log_toeplitz_det_szego

__version__ = "0.1.0"

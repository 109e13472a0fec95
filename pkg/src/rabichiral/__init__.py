"""Ground-state bounds for the quantum Rabi model via a chiral JC decomposition."""

from .model import ModelParams, validate
from .jc_spectrum import jc_ground, chiral_ground
from .crossings import classify, crossing_map
from .chiral import e_low_total, diff_estimate, select_epsilon
from .fc_numerics import fc_ground, ground_state, truncation_rule

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "validate",
    "jc_ground",
    "chiral_ground",
    "classify",
    "crossing_map",
    "e_low_total",
    "diff_estimate",
    "select_epsilon",
    "fc_ground",
    "ground_state",
    "truncation_rule",
]

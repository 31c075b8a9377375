"""Exact arithmetic for characterized subgroups of the circle defined by arithmetic-type sequences."""

from .circle import CirclePoint, frac, norm, scale_norm
from .digits import DigitExpansion, from_digits, supp, supp_q, to_digits
from .membership import Status, check_conditions, decide, orbit_norms, sufficient_divergent
from .sequences import (
    Affine,
    BaseOnly,
    Constant,
    Explicit,
    Full,
    GapThird,
    MultiplierSchedule,
    Periodic,
    RatioStream,
    classify,
)

__version__ = "0.1.0"

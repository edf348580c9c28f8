"""Rogers-Ramanujan-Gordon partitions at k=3: moves bijection and series checks."""

from rrgmoves.partition import (
    MultiplicityTooHigh,
    OverlapError,
    PairSingletonForm,
    Partition,
    check_difference,
    check_modulus,
    decompose,
    recompose,
)

__all__ = [
    "MultiplicityTooHigh",
    "OverlapError",
    "PairSingletonForm",
    "Partition",
    "check_difference",
    "check_modulus",
    "decompose",
    "recompose",
]

__version__ = "0.1.0"

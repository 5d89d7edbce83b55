"""Nonvanishing certificates and regularity verdicts."""

from .examples import cohen_example_operators, example_operators
from .nonvanishing import (
    INCONCLUSIVE,
    INTERVAL,
    NONVANISHING,
    SAMPLING,
    SOS_PLUS_CONSTANT,
    ZERO_FOUND,
    Certificate,
    nonvanishing,
    zero_tolerance,
)
from .verdict import (
    CONSTANT_COEFFICIENT,
    MIXED,
    MULTIPLICATION,
    NOT_REGULAR,
    REGULAR,
    UNKNOWN,
    ChainLink,
    Verdict,
    check_chain,
    classify,
    replay_chain,
    verdict,
)

__all__ = [
    "CONSTANT_COEFFICIENT", "INCONCLUSIVE", "INTERVAL", "MIXED", "MULTIPLICATION", "NONVANISHING",
    "NOT_REGULAR", "REGULAR", "SAMPLING", "SOS_PLUS_CONSTANT", "UNKNOWN", "ZERO_FOUND",
    "Certificate", "ChainLink", "Verdict", "check_chain", "classify", "cohen_example_operators",
    "example_operators", "nonvanishing", "replay_chain", "verdict", "zero_tolerance",
]

"""Election control under Kemeny, Young and Dodgson: exact winner
determination, brute-force control solvers, hardness reductions as
checkable instance transformations, an ASP encoding and a PrefLib harness."""

from .control import ControlInstance, ControlOutcome, solve_control, verify_witness
from .election import Election, Vote, pairwise_matrix
from .errors import (ConfigurationError, InvalidInput, InvariantViolation, ResourceLimit,
                     VoteControlError)
from .rules import RULES, is_winner, winners

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError", "ControlInstance", "ControlOutcome", "Election", "InvalidInput",
    "InvariantViolation", "RULES", "ResourceLimit", "Vote", "VoteControlError",
    "is_winner", "pairwise_matrix", "solve_control", "verify_witness", "winners",
]

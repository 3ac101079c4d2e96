from .core import (
    INFINITE,
    Ideal,
    colon_dim,
    colon_oracle,
    colon_piece,
    ideal_power,
    membership,
    quotient_length,
    ring_length,
)
from .determinantal import DeterminantalSpec, abc_label, abc_monomials, dsequence_checks, rees_resolution, solve_weights
from .sympow import LengthReport, epsilon_table, section5_spec, symbolic_power

__all__ = [
    "INFINITE",
    "Ideal",
    "colon_dim",
    "colon_oracle",
    "colon_piece",
    "ideal_power",
    "membership",
    "quotient_length",
    "ring_length",
    "DeterminantalSpec",
    "abc_label",
    "abc_monomials",
    "dsequence_checks",
    "rees_resolution",
    "solve_weights",
    "LengthReport",
    "epsilon_table",
    "section5_spec",
    "symbolic_power",
]

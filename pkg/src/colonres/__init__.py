"""Exact computation of colon ideals a : Q through free resolutions."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    ColonresError,
    DecompositionError,
    InputError,
    LiftError,
    NotAComplexError,
    ScheduleExhausted,
    VerificationError,
)
from .ringcore import QQ, Field, Polynomial, WeightedRing  # noqa: E402
from .complexes import ChainComplex, GradedFreeModule, ModuleMap, koszul_complex, verify_exactness  # noqa: E402
from .startransform import StarTransformRecord, star_transform  # noqa: E402
from .ideals import (  # noqa: E402
    DeterminantalSpec,
    Ideal,
    LengthReport,
    colon_oracle,
    epsilon_table,
    quotient_length,
    rees_resolution,
    symbolic_power,
)

__all__ = [
    "__version__",
    "ColonresError",
    "DecompositionError",
    "InputError",
    "LiftError",
    "NotAComplexError",
    "ScheduleExhausted",
    "VerificationError",
    "QQ",
    "Field",
    "Polynomial",
    "WeightedRing",
    "ChainComplex",
    "GradedFreeModule",
    "ModuleMap",
    "koszul_complex",
    "verify_exactness",
    "StarTransformRecord",
    "star_transform",
    "DeterminantalSpec",
    "Ideal",
    "LengthReport",
    "colon_oracle",
    "epsilon_table",
    "quotient_length",
    "rees_resolution",
    "symbolic_power",
]

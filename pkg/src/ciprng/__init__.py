"""Chaotic-iterations pseudo-random number generation driven by ISAAC and XORshift."""

__version__ = "0.1.0"

from .core import BitState, ci_run, ci_step, negation, pack_bits  # noqa: E402
from .errors import (  # noqa: E402
    CapacityError,
    CiprngError,
    InsufficientDataError,
    InvalidKeyError,
    ParameterError,
)
from .generators import Isaac, Xorshift32  # noqa: E402
from .prng import CiPrng, CiPrngParams, SeedKey  # noqa: E402

__all__ = [
    "BitState", "ci_run", "ci_step", "negation", "pack_bits",
    "CapacityError", "CiprngError", "InsufficientDataError", "InvalidKeyError", "ParameterError",
    "Isaac", "Xorshift32", "CiPrng", "CiPrngParams", "SeedKey",
]

"""Invariants of links and tied links from the two-parameter algebra of braids and ties."""

from .coeff import Frac, MPoly, Scalar, canonical_render, substitute
from .invariants import InvariantValue, TraceEngine, homflypt_equal, specialize, trace, upsilon
from .omega import omega_exponents, omega_fast, skein_check
from .tiedbraid import TiedBraidWord, linking_data, parse, tie_all

__all__ = [
    "Frac",
    "InvariantValue",
    "MPoly",
    "Scalar",
    "TiedBraidWord",
    "TraceEngine",
    "canonical_render",
    "homflypt_equal",
    "linking_data",
    "omega_exponents",
    "omega_fast",
    "parse",
    "skein_check",
    "specialize",
    "substitute",
    "tie_all",
    "trace",
    "upsilon",
]

"""Exact local invariants of Drinfeld modules over k((pi))."""

from .coeff_ring import CoeffElem, CoeffRing
from .drinfeld import DrinfeldModule, height
from .errors import DrinfeldError
from .finite_field import GF, FFElem, FiniteField
from .local_field import LocalElem, LocalField
from .lognorm import NEG_INF, LogNorm
from .twisted import TwistedPoly, moore_det, tau_interpolate

__all__ = [
    "CoeffElem", "CoeffRing", "DrinfeldModule", "DrinfeldError", "FFElem", "FiniteField",
    "GF", "LocalElem", "LocalField", "LogNorm", "NEG_INF", "TwistedPoly", "height",
    "moore_det", "tau_interpolate",
]

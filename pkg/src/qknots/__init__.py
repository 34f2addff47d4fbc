"""Quantum knot invariants of prime knot censuses and statistics comparing them.

Invariants: Jones (``J``), Alexander (``A``), the sl3 vector-representation
polynomial (``A2``), the sl2 3-dimensional-representation polynomial
(``B1``), Khovanov homology (``K``) and its ``t = 1`` specialization (``KT1``).
"""

from .knotdata import Diagram, KnotTable, PDError, load_census, parse_pd
from .laurent import BiLaurentPoly, LaurentPoly
from .bracket import jones
from .alexander import alexander
from .rmatrix import a2, b1, jones_rmatrix
from .khovanov import khovanov
from .cli import evaluate_invariant

__version__ = "0.1.0"

__all__ = [
    "Diagram",
    "KnotTable",
    "PDError",
    "load_census",
    "parse_pd",
    "LaurentPoly",
    "BiLaurentPoly",
    "jones",
    "jones_rmatrix",
    "alexander",
    "a2",
    "b1",
    "khovanov",
    "evaluate_invariant",
]

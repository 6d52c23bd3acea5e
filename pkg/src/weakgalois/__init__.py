"""Exact linear algebra for weak Hopf algebras, weak entwining structures and their Galois theory."""

from .exactlin import QQ, Field, LinMap, QuotientSpace, Shape, Subspace
from .report import HypothesisFailed, Report, TheoremViolation
from .structures import FinAlgebra, FinCoalgebra, LeftComodule, RightComodule, RightModule
from .weak_entwining import ACoring, InvertibleWeakEntwining, WeakEntwiningLL, WeakEntwiningRR
from .weak_hopf import WeakBialgebra, WeakHopf

__all__ = [
    "QQ",
    "Field",
    "LinMap",
    "QuotientSpace",
    "Shape",
    "Subspace",
    "HypothesisFailed",
    "Report",
    "TheoremViolation",
    "FinAlgebra",
    "FinCoalgebra",
    "LeftComodule",
    "RightComodule",
    "RightModule",
    "ACoring",
    "InvertibleWeakEntwining",
    "WeakEntwiningLL",
    "WeakEntwiningRR",
    "WeakBialgebra",
    "WeakHopf",
]

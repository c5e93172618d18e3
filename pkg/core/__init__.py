"""Core bracket functionality.

This package contains the domain and application layers:
- cyclic_words: free-group words, cyclic normal forms and class quotients
- moebius: PSL(2,R) isometries, axes and crossing geometry
- surface_model: certified surface models and built-in families
- intersections: intersection points as double cosets of crossing axes
- brackets: exact chains, Goldman and TWG brackets
- poisson_algebra: PBW elements, deformed Poisson and enveloping algebras
- results: verification reports
- bracket_service: application service used by the CLI
- verify: verification checks, scans and the claim runner
"""

from .brackets import ChainHat, ChainTilde, ChainUnder, goldman_bracket, twg_bracket
from .cyclic_words import ClassTilde, ClassUnder, CyclicWord, parse_class
from .errors import DomainError, GoldmanError, UnstableEnumerationError, VerificationFailedError
from .intersections import IntersectionEngine, IntersectionPoint, IntersectionSet
from .poisson_algebra import EnvelopingAlgebra, PBWElement, PoissonAlgebra
from .protocols import IntersectionSourceProtocol, LoggerProtocol, NullLogger
from .results import CheckReport, Verdict
from .surface_model import SurfaceModel, one_holed_torus, pants

__all__ = [
    # Words and classes
    "ClassTilde",
    "ClassUnder",
    "CyclicWord",
    "parse_class",
    # Surfaces and intersections
    "IntersectionEngine",
    "IntersectionPoint",
    "IntersectionSet",
    "SurfaceModel",
    "one_holed_torus",
    "pants",
    # Brackets and algebras
    "ChainHat",
    "ChainTilde",
    "ChainUnder",
    "EnvelopingAlgebra",
    "PBWElement",
    "PoissonAlgebra",
    "goldman_bracket",
    "twg_bracket",
    # Reports and errors
    "CheckReport",
    "DomainError",
    "GoldmanError",
    "UnstableEnumerationError",
    "Verdict",
    "VerificationFailedError",
    # Protocols
    "IntersectionSourceProtocol",
    "LoggerProtocol",
    "NullLogger",
]

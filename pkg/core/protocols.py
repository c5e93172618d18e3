"""Protocol definitions for dependency abstraction.

Defines interfaces for injected collaborators so that:
- engines and checks can be driven by fakes in tests
- run logging stays optional for library callers
"""

from pathlib import Path
from typing import Protocol, runtime_checkable

from core.cyclic_words import CyclicWord


@runtime_checkable
class LoggerProtocol(Protocol):
    """Protocol for run logging.

    Implementations:
    - GoldmanLogger (production)
    - NullLogger / mock loggers (tests)
    """

    def log(self, message: str) -> None:
        """Log a message."""
        ...

    def setup_file_handler(self, path: Path) -> None:
        """Set up file handler for logging."""
        ...


@runtime_checkable
class IntersectionSourceProtocol(Protocol):
    """Anything that lists (alpha, beta)-intersection points.

    Implementations:
    - IntersectionEngine (geodesic backend)
    - table-driven fakes (tests)
    """

    def enumerate(self, alpha: CyclicWord, beta: CyclicWord):
        """Return an IntersectionSet for the pair."""
        ...


class NullLogger:
    """Null object for the run logger: discards everything."""

    def log(self, message: str) -> None:
        pass

    def setup_file_handler(self, path: Path) -> None:
        pass

"""Exception hierarchy for the Goldman / TWG toolkit.

The CLI maps the three roots to exit codes:
- DomainError -> 1
- UnstableEnumerationError -> 2
- VerificationFailedError -> 3
"""


class GoldmanError(Exception):
    """Base class for every error raised by this package."""


class DomainError(GoldmanError, ValueError):
    """Input outside the mathematical domain of an operation."""


class WordParseError(DomainError):
    """A word string could not be parsed."""

    def __init__(self, token: str, reason: str = "malformed token"):
        self.token = token
        super().__init__(f"{reason}: {token!r}")


class RankMismatchError(DomainError):
    """A word or chain uses generators outside the model's rank."""


class NotHyperbolicError(DomainError):
    """An operation that needs a hyperbolic isometry got something else."""


class AxesDoNotCrossError(DomainError):
    """Crossing data requested for axes that are disjoint, asymptotic or equal."""


class SurfaceConstructionError(DomainError):
    """A surface model failed validation or its discreteness certificate."""


class ForeignPointError(DomainError):
    """An intersection point was used with a pair of classes it does not belong to."""


class CoincidentPositionsError(DomainError):
    """Two intersection points collided along the axis under strict monitoring."""


class ConfigError(DomainError):
    """Configuration value or environment override is malformed."""


class UnstableEnumerationError(GoldmanError):
    """Double-coset enumeration did not stabilize at the configured depth."""

    def __init__(self, depth: int, detail: str = ""):
        self.depth = depth
        message = f"unstable at depth {depth}"
        if detail:
            message = f"{message}: {detail}"
        super().__init__(message)


class VerificationFailedError(GoldmanError):
    """At least one verification check produced a failed verdict."""

"""Verification results - structured, immutable reports.

Provides frozen data classes for check verdicts, annihilator scans and
power-collision scans. Every class serializes with to_dict().
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Verdict(Enum):
    """Report vocabulary.

    Exact or exhaustive checks pass or fail; sampled checks of statements that
    quantify over all classes can only be consistent with the evidence.
    """

    PASSED = "passed"
    FAILED = "failed"
    CONSISTENT = "consistent with sampled evidence"

    @property
    def ok(self) -> bool:
        return self is not Verdict.FAILED


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one verification claim.

    Attributes:
        claim: Claim id (e.g. "cosh-product")
        verdict: Verdict for the claim
        worst_residual: Largest numeric residual seen, 0.0 for exact checks
        sample_size: Number of inputs actually checked
        skipped: Inputs skipped as enumeration-unstable
        failures: One line per failing input
        details: Extra machine-readable data (parameters, counts)
    """

    claim: str
    verdict: Verdict
    worst_residual: float = 0.0
    sample_size: int = 0
    skipped: int = 0
    failures: tuple[str, ...] = field(default_factory=tuple)
    details: tuple[tuple[str, Any], ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return self.verdict.ok

    @classmethod
    def from_failures(
        cls,
        claim: str,
        failures: list[str],
        *,
        sampled: bool = False,
        worst_residual: float = 0.0,
        sample_size: int = 0,
        skipped: int = 0,
        details: dict[str, Any] | None = None,
    ) -> "CheckReport":
        """Build a report; no failures gives PASSED, or CONSISTENT when sampled."""
        if failures:
            verdict = Verdict.FAILED
        else:
            verdict = Verdict.CONSISTENT if sampled else Verdict.PASSED
        return cls(
            claim=claim,
            verdict=verdict,
            worst_residual=worst_residual,
            sample_size=sample_size,
            skipped=skipped,
            failures=tuple(failures),
            details=tuple(sorted((details or {}).items())),
        )

    def to_dict(self) -> dict[str, Any]:
        """Convert to dictionary for JSON serialization."""
        return {
            "claim": self.claim,
            "verdict": self.verdict.value,
            "worst_residual": self.worst_residual,
            "sample_size": self.sample_size,
            "skipped": self.skipped,
            "failures": list(self.failures),
            "details": dict(self.details),
        }


@dataclass(frozen=True)
class AnnihilatorRecord:
    """Bracket of alpha^m against beta for one flavor, recorded as zero or not.

    Attributes:
        alpha: Simple class from the model list
        flavor: One of "tt", "tu", "ut", "uu"
        zero_up_to: Largest m checked with a zero bracket before a witness
        witness_m: Least m with a nonzero bracket, None if all were zero
    """

    alpha: str
    flavor: str
    zero_up_to: int
    witness_m: int | None = None

    @property
    def annihilates(self) -> bool:
        return self.witness_m is None

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "flavor": self.flavor,
            "verdict": "annihilates sample"
            if self.annihilates
            else f"essential witness at m0 = {self.witness_m}",
            "zero_up_to": self.zero_up_to,
            "witness_m": self.witness_m,
        }


@dataclass(frozen=True)
class AnnihilatorReport:
    beta: str
    m_max: int
    records: tuple[AnnihilatorRecord, ...] = field(default_factory=tuple)

    @property
    def annihilates(self) -> bool:
        return all(record.annihilates for record in self.records)

    @property
    def verdict(self) -> str:
        if self.annihilates:
            return "annihilates sample"
        first = min(r.witness_m for r in self.records if r.witness_m is not None)
        return f"essential witness at m0 = {first}"

    def to_dict(self) -> dict[str, Any]:
        return {
            "beta": self.beta,
            "m_max": self.m_max,
            "verdict": self.verdict,
            "evidence": Verdict.CONSISTENT.value,
            "records": [record.to_dict() for record in self.records],
        }


@dataclass(frozen=True)
class CollisionReport:
    """Power-collision scan for one (alpha, beta, point) and one target.

    Attributes:
        mode: fixed-zero, fixed-infty, tilde-power-zero, tilde-power-infty,
            or a star pair such as zero-infty for the two-point scans
        target: Text form of the target class, or the rule that defines it
        hits: Values of m in [1, m_max] that hit the target
        bound: Largest number of hits allowed
        angles: Named angle data logged with the scan
        alternative: Some other point R of (alpha, beta) has a larger angle than P;
            reported with the scan, never used to relax the bound
    """

    mode: str
    alpha: str
    beta: str
    conjugator: str
    target: str
    m_max: int
    hits: tuple[int, ...] = field(default_factory=tuple)
    bound: int = 2
    angles: tuple[tuple[str, float], ...] = field(default_factory=tuple)
    alternative: bool = False

    @property
    def count(self) -> int:
        return len(self.hits)

    @property
    def within_bound(self) -> bool:
        return self.count <= self.bound

    def to_dict(self) -> dict[str, Any]:
        return {
            "mode": self.mode,
            "alpha": self.alpha,
            "beta": self.beta,
            "conjugator": self.conjugator,
            "target": self.target,
            "m_max": self.m_max,
            "count": self.count,
            "bound": self.bound,
            "hits": list(self.hits),
            "angles": dict(self.angles),
            "alternative": self.alternative,
            "within_bound": self.within_bound,
        }

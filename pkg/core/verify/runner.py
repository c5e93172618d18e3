"""Claim registry and the parallel verification runner.

Layer: Application
Dependencies: concurrent.futures (thread pool), core.verify checks
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Sequence
from concurrent.futures import ThreadPoolExecutor

from core.errors import DomainError, UnstableEnumerationError
from core.results import CheckReport, Verdict
from core.verify.algebra import (
    check_goldman_axioms,
    check_grading,
    check_poisson_axioms,
    check_twg_consistency,
    check_uea_confluence,
)
from core.verify.context import VerifyContext
from core.verify.geometry import (
    check_cosh_sample,
    check_family_invariance,
    check_key_lemma,
    check_length_angle,
    check_pants_exclusion,
    check_reversibility,
)
from core.verify.scans import check_annihilators, check_power_collisions

logger = logging.getLogger(__name__)

ClaimCheck = Callable[[VerifyContext], CheckReport]

CLAIMS: dict[str, ClaimCheck] = {
    "annihilator": check_annihilators,
    "cosh-product": check_cosh_sample,
    "family-invariance": check_family_invariance,
    "goldman-lie-axioms": check_goldman_axioms,
    "key-lemma": check_key_lemma,
    "length-angle": check_length_angle,
    "pants-exclusion": check_pants_exclusion,
    "poisson-axioms": check_poisson_axioms,
    "power-collisions": check_power_collisions,
    "reversibility": check_reversibility,
    "twg-consistency": check_twg_consistency,
    "uea-confluence": check_uea_confluence,
    "z2-grading": check_grading,
}


def resolve_claims(
    selection: str | Sequence[str], registry: dict[str, ClaimCheck] | None = None
) -> list[str]:
    """'all', a single claim id, or a list of ids; unknown ids are a DomainError."""
    registry = CLAIMS if registry is None else registry
    if isinstance(selection, str):
        selection = sorted(registry) if selection == "all" else [selection]
    unknown = [claim for claim in selection if claim not in registry]
    if unknown:
        known = ", ".join(sorted(registry))
        raise DomainError(f"unknown claim {unknown[0]!r}; expected 'all' or one of {known}")
    return sorted(set(selection))


class VerificationRunner:
    """Runs claims as independent jobs and merges reports by claim id.

    Usage:
        runner = VerificationRunner(context, max_workers=4)
        reports = runner.run("all")
    """

    def __init__(
        self,
        context: VerifyContext,
        max_workers: int = 4,
        claims: dict[str, ClaimCheck] | None = None,
    ):
        self.context = context
        self.max_workers = max(1, max_workers)
        self.claims = claims if claims is not None else CLAIMS

    def _run_one(self, claim: str) -> CheckReport:
        self.context.log(f"[VerificationRunner] start {claim}")
        try:
            report = self.claims[claim](self.context)
        except (UnstableEnumerationError, DomainError) as exc:
            logger.warning(f"[VerificationRunner] {claim} aborted: {type(exc).__name__}: {exc}")
            report = CheckReport(
                claim, Verdict.FAILED, failures=(f"{type(exc).__name__}: {exc}",)
            )
        self.context.log(
            f"[VerificationRunner] {claim}: {report.verdict.value} "
            f"(samples {report.sample_size}, skipped {report.skipped})"
        )
        return report

    def run(self, selection: str | Sequence[str] = "all") -> list[CheckReport]:
        names = resolve_claims(selection, self.claims)
        if self.max_workers == 1 or len(names) == 1:
            reports = [self._run_one(name) for name in names]
        else:
            with ThreadPoolExecutor(max_workers=self.max_workers) as pool:
                reports = list(pool.map(self._run_one, names))
        failed = [r.claim for r in reports if not r.passed]
        logger.info(
            f"[VerificationRunner] {len(reports)} claims, {len(failed)} failed"
            + (f": {', '.join(failed)}" if failed else "")
        )
        return sorted(reports, key=lambda r: r.claim)

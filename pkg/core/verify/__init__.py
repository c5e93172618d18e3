"""Verification harness: checks, scans and the claim runner."""

from .context import VerifyContext
from .geometry import (
    check_length_angle_identity,
    essentiality_check,
    pants_counterexample,
    reversibility_crosscheck,
    torus_negative_scan,
)
from .runner import CLAIMS, VerificationRunner, resolve_claims
from .scans import annihilator_scan, scan_cross_collisions, scan_power_collisions

__all__ = [
    "CLAIMS",
    "VerificationRunner",
    "VerifyContext",
    "annihilator_scan",
    "check_length_angle_identity",
    "essentiality_check",
    "pants_counterexample",
    "resolve_claims",
    "reversibility_crosscheck",
    "scan_cross_collisions",
    "scan_power_collisions",
    "torus_negative_scan",
]

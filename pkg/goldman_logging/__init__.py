"""Logging utilities for bracket computations.

Provides the run logger used by the verification harness.
"""

from .goldman_logger import GoldmanLogger

__all__ = ["GoldmanLogger"]

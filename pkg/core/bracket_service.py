"""Bracket Service - Application layer entry point for surface queries.

This module provides BracketService which orchestrates:
- Surface construction and certification
- Intersection enumeration, Goldman and TWG brackets
- Poisson and enveloping algebra computations
- Verification runs and annihilator scans

Layer: Application
Depends on: Domain layer (brackets, intersections, poisson_algebra), core.verify
"""

from __future__ import annotations

import random
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from core.brackets import ChainHat, goldman_bracket, parse_chain, twg_bracket
from core.cyclic_words import parse_class
from core.errors import DomainError
from core.intersections import IntersectionEngine, IntersectionSet
from core.poisson_algebra import (
    EnvelopingAlgebra,
    Factor,
    PBWElement,
    PoissonAlgebra,
    parse_factor,
    parse_polynomial,
)
from core.protocols import LoggerProtocol, NullLogger
from core.results import AnnihilatorReport, CheckReport
from core.surface_model import Certificate, SurfaceModel, certify
from core.verify import VerificationRunner, VerifyContext, annihilator_scan


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"k must be a rational number, got {text!r}") from None


class BracketService:
    """Application service for bracket queries on one surface model.

    Designed for dependency injection: the engine and the run logger can be
    replaced in tests.

    Usage:
        service = BracketServiceFactory.create("torus1:u=4")
        chain = service.goldman("a", "b")
        reports = service.verify("all")
    """

    def __init__(
        self,
        model: SurfaceModel,
        engine: IntersectionEngine,
        logger: LoggerProtocol | None = None,
        verify_config: dict[str, Any] | None = None,
        certificate_config: dict[str, Any] | None = None,
        max_workers: int = 4,
    ):
        self.model = model
        self.engine = engine
        self.logger = logger or NullLogger()
        self.verify_config = dict(verify_config or {})
        self.certificate_config = dict(certificate_config or {})
        self.max_workers = max_workers
        self._poisson: dict[Fraction, PoissonAlgebra] = {}
        self._enveloping: EnvelopingAlgebra | None = None

    # --- surface -----------------------------------------------------------

    def surface_info(self) -> dict[str, Any]:
        info = self.model.to_dict()
        info["depth"] = self.engine.depth
        return info

    def certify(self, max_word_length: int | None = None) -> Certificate:
        """Re-run the word-scan certificate, optionally with a longer scan."""
        length = max_word_length or self.certificate_config.get("max_word_length", 6)
        return certify(
            self.model.generator_images,
            length,
            self.certificate_config.get("min_translation_length", 0.05),
            self.engine.tolerance,
        )

    # --- brackets ----------------------------------------------------------

    def chain(self, text: str) -> ChainHat:
        return parse_chain(text, self.model.rank)

    def intersect(self, alpha: str, beta: str) -> IntersectionSet:
        return self.engine.enumerate(
            parse_class(alpha, self.model.rank), parse_class(beta, self.model.rank)
        )

    def goldman(self, x: str, y: str) -> ChainHat:
        result = goldman_bracket(self.model, self.chain(x), self.chain(y), self.engine)
        self.logger.log(f"[BracketService] goldman [{x}, {y}] = {result!r}")
        return result

    def twg(self, flavor: str, x: str, y: str):
        result = twg_bracket(self.model, flavor, self.chain(x), self.chain(y), self.engine)
        self.logger.log(f"[BracketService] twg {flavor} [{x}, {y}] = {result!r}")
        return result

    # --- algebras ----------------------------------------------------------

    def poisson_algebra(self, k: Fraction | str = 0) -> PoissonAlgebra:
        value = parse_rational(k) if isinstance(k, str) else Fraction(k)
        if value not in self._poisson:
            self._poisson[value] = PoissonAlgebra(self.model, value, self.engine)
        return self._poisson[value]

    def poisson(self, x: str, y: str, k: Fraction | str = 0) -> PBWElement:
        algebra = self.poisson_algebra(k)
        return algebra.bracket(
            parse_polynomial(x, self.model.rank), parse_polynomial(y, self.model.rank)
        )

    @property
    def enveloping(self) -> EnvelopingAlgebra:
        if self._enveloping is None:
            self._enveloping = EnvelopingAlgebra(self.model, self.engine)
        return self._enveloping

    def uea_normal_form(self, word: str, seed: int | None = None) -> PBWElement:
        """Normal form of a product of factors 'T(a)*U(b)*...' in the enveloping algebra."""
        sign = 1
        factors: list[Factor] = []
        for part in word.split("*"):
            factor_sign, factor = parse_factor(part, self.model.rank)
            sign *= factor_sign
            factors.append(factor)
        rng = random.Random(seed) if seed is not None else None
        return self.enveloping.normal_form(factors, rng) * sign

    # --- verification ------------------------------------------------------

    def context(self, seed: int | None = None, m_max: int | None = None) -> VerifyContext:
        config = dict(self.verify_config)
        if seed is not None:
            config["seed"] = seed
        if m_max is not None:
            config["m_max"] = m_max
            config["annihilator_m_max"] = min(m_max, config.get("annihilator_m_max", 5))
        ctx = VerifyContext.from_config(
            self.model,
            config,
            depth=self.engine.depth,
            numerics={"tolerance": self.engine.tolerance},
            enumeration={
                "position_tolerance": self.engine.position_tolerance,
                "strict_positions": self.engine.strict_positions,
            },
            run_logger=self.logger,
        )
        ctx.prime_engine(self.engine)
        return ctx

    def verify(
        self,
        selection: str | Sequence[str] = "all",
        seed: int | None = None,
        m_max: int | None = None,
    ) -> list[CheckReport]:
        runner = VerificationRunner(self.context(seed, m_max), max_workers=self.max_workers)
        return runner.run(selection)

    def annihilator_scan(self, beta: str, m_max: int = 5) -> AnnihilatorReport:
        return annihilator_scan(self.model, self.chain(beta), m_max=m_max, engine=self.engine)


class BracketServiceFactory:
    """Factory for creating BracketService with default dependencies.

    Simplifies service creation for the CLI.
    """

    @staticmethod
    def create(
        surface: str | None = None,
        config: dict[str, Any] | None = None,
        logger: LoggerProtocol | None = None,
    ) -> BracketService:
        """Create a BracketService for a surface spec.

        Args:
            surface: Surface spec or YAML path (default: surfaces.default from config)
            config: Configuration dict with env overrides applied (default: config.yaml)
            logger: Run logger (default: NullLogger)

        Returns:
            Configured BracketService
        """
        from config import (
            apply_env_overrides,
            get_certificate_config,
            get_enumeration_config,
            get_numeric_config,
            get_surface_config,
            get_verify_config,
            load_config,
        )
        from surfaces import create_default_registry

        config = config if config is not None else apply_env_overrides(load_config())
        numerics = get_numeric_config(config)
        enumeration = get_enumeration_config(config)
        verify_config = get_verify_config(config)
        spec = surface or get_surface_config(config)["default"]
        model = create_default_registry(config).build(spec)
        engine = IntersectionEngine(
            model,
            enumeration["depth"],
            tol=numerics["tolerance"],
            position_tolerance=enumeration["position_tolerance"],
            strict_positions=enumeration["strict_positions"],
            run_logger=logger,
        )
        return BracketService(
            model,
            engine,
            logger=logger,
            verify_config=verify_config,
            certificate_config=get_certificate_config(config),
            max_workers=verify_config["max_workers"],
        )

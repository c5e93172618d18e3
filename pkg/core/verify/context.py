"""Shared inputs for verification checks: models, engines, seeds and sample sizes."""

from __future__ import annotations

import random
import threading
from dataclasses import dataclass, field
from typing import Any

from core.cyclic_words import CyclicWord, enumerate_classes
from core.intersections import DEFAULT_DEPTH, DEFAULT_POSITION_TOLERANCE, IntersectionEngine
from core.moebius import DEFAULT_TOLERANCE
from core.protocols import LoggerProtocol, NullLogger
from core.surface_model import SurfaceModel, one_holed_torus, pants

DEFAULT_SAMPLES: dict[str, int] = {
    "cosh_pairs": 100,
    "length_angle_pairs": 20,
    "random_triples": 25,
    "poisson_triples": 15,
    "uea_trials": 20,
    "associativity_triples": 10,
    "collision_pairs": 6,
    "family_pairs": 10,
}


@dataclass
class VerifyContext:
    """Everything a claim needs; engines are created once per model and shared."""

    model: SurfaceModel
    depth: int = DEFAULT_DEPTH
    tolerance: float = DEFAULT_TOLERANCE
    position_tolerance: float = DEFAULT_POSITION_TOLERANCE
    strict_positions: bool = False
    seed: int = 20240501
    m_max: int = 8
    annihilator_m_max: int = 5
    family_grid: tuple[float, ...] = (3.5, 4.0, 5.0)
    residual_tolerance: float = 1e-8
    reversibility_length: int = 8
    conjugator_length: int = 5
    samples: dict[str, int] = field(default_factory=lambda: dict(DEFAULT_SAMPLES))
    run_logger: LoggerProtocol = field(default_factory=NullLogger)
    _engines: dict[str, IntersectionEngine] = field(default_factory=dict, repr=False)
    _references: dict[str, SurfaceModel] = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @classmethod
    def from_config(
        cls,
        model: SurfaceModel,
        verify_config: dict[str, Any],
        *,
        depth: int = DEFAULT_DEPTH,
        numerics: dict[str, Any] | None = None,
        enumeration: dict[str, Any] | None = None,
        run_logger: LoggerProtocol | None = None,
    ) -> VerifyContext:
        """Context from the verify section plus the numerics and enumeration sections."""
        numerics = numerics or {}
        enumeration = enumeration or {}
        samples = dict(DEFAULT_SAMPLES)
        samples.update(verify_config.get("samples", {}))
        return cls(
            model=model,
            depth=depth,
            tolerance=float(numerics.get("tolerance", DEFAULT_TOLERANCE)),
            position_tolerance=float(
                enumeration.get("position_tolerance", DEFAULT_POSITION_TOLERANCE)
            ),
            strict_positions=bool(enumeration.get("strict_positions", False)),
            seed=int(verify_config.get("seed", 20240501)),
            m_max=int(verify_config.get("m_max", 8)),
            annihilator_m_max=int(verify_config.get("annihilator_m_max", 5)),
            family_grid=tuple(float(u) for u in verify_config.get("family_grid", (3.5, 4.0, 5.0))),
            residual_tolerance=float(verify_config.get("residual_tolerance", 1e-8)),
            reversibility_length=int(verify_config.get("reversibility_length", 8)),
            conjugator_length=int(verify_config.get("conjugator_length", 5)),
            samples=samples,
            run_logger=run_logger or NullLogger(),
        )

    def rng(self, claim: str) -> random.Random:
        """Independent deterministic stream per claim."""
        return random.Random(f"{self.seed}:{claim}")

    def engine(self, model: SurfaceModel | None = None) -> IntersectionEngine:
        model = model or self.model
        key = f"{model.spec}@{self.depth}"
        with self._lock:
            if key not in self._engines:
                self._engines[key] = IntersectionEngine(
                    model,
                    self.depth,
                    tol=self.tolerance,
                    position_tolerance=self.position_tolerance,
                    strict_positions=self.strict_positions,
                    run_logger=self.run_logger,
                )
            return self._engines[key]

    def prime_engine(self, engine: IntersectionEngine) -> None:
        """Share an already configured engine for its model and depth."""
        with self._lock:
            self._engines[f"{engine.model.spec}@{engine.depth}"] = engine

    def reference(self, name: str) -> SurfaceModel:
        """The context model when it belongs to the family, else the family default."""
        if self.model.name == name:
            return self.model
        builders = {"torus1": lambda: one_holed_torus(4.0), "pants": lambda: pants()}
        with self._lock:
            if name not in self._references:
                self._references[name] = builders[name]()
            return self._references[name]

    def log(self, message: str) -> None:
        self.run_logger.log(message)


def sample_classes(
    rng: random.Random, rank: int, max_length: int, count: int, *, min_length: int = 1
) -> list[CyclicWord]:
    pool = [
        w
        for w in enumerate_classes(rank, max_length, include_trivial=False)
        if len(w) >= min_length
    ]
    if count >= len(pool):
        return pool
    return rng.sample(pool, count)

"""Concrete hyperbolic surfaces with free fundamental group.

Layer: Domain
Dependencies: core.moebius, core.cyclic_words

A SurfaceModel is a homomorphism from the free group of rank n to PSL(2,R)
together with topology metadata and the outcome of the purely-hyperbolic
word-scan certificate. It stands for one point of the Teichmüller space; the
built-in families vary a single real parameter.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

from core.cyclic_words import (
    CyclicWord,
    GroupWord,
    enumerate_reduced_words,
    format_word,
    iota,
    parse_class,
    primitive_root,
)
from core.errors import DomainError, RankMismatchError, SurfaceConstructionError
from core.moebius import (
    DEFAULT_TOLERANCE,
    Isometry,
    IsometryType,
    classify,
    translation_length,
)

logger = logging.getLogger(__name__)

DEFAULT_CERT_LENGTH = 6
DEFAULT_MIN_TRANSLATION = 0.05


@dataclass(frozen=True)
class Topology:
    genus: int
    boundary_count: int

    @property
    def euler_characteristic(self) -> int:
        return 2 - 2 * self.genus - self.boundary_count

    @property
    def free_rank(self) -> int:
        return 1 - self.euler_characteristic


@dataclass(frozen=True)
class Certificate:
    """Outcome of the bounded-length purely-hyperbolic scan."""

    passed: bool
    max_word_length: int
    min_translation_length: float
    words_checked: int
    shortest_length: float
    shortest_word: GroupWord
    violation: str | None = None
    schottky_intervals: tuple[tuple[float, float], ...] = ()

    def to_dict(self) -> dict[str, Any]:
        return {
            "passed": self.passed,
            "method": "purely-hyperbolic word scan (heuristic)",
            "max_word_length": self.max_word_length,
            "min_translation_length": self.min_translation_length,
            "words_checked": self.words_checked,
            "shortest_length": self.shortest_length,
            "shortest_word": format_word(self.shortest_word),
            "violation": self.violation,
            "schottky_intervals": [list(pair) for pair in self.schottky_intervals],
        }


@dataclass(frozen=True)
class SurfaceModel:
    """Marked hyperbolic structure on a surface with free fundamental group."""

    name: str
    rank: int
    generator_images: tuple[Isometry, ...]
    topology: Topology
    family_parameter: float
    certificate: Certificate
    excluded_from_twg_k: bool = False
    peripheral: tuple[CyclicWord, ...] = ()
    simple_classes: tuple[CyclicWord, ...] = ()
    orientation: int = -1
    parameters: tuple[tuple[str, float], ...] = field(default=())

    @cached_property
    def letter_images(self) -> tuple[Isometry, ...]:
        """Isometry per letter code: generator, inverse, generator, inverse, ..."""
        images: list[Isometry] = []
        for g in self.generator_images:
            images.extend((g, g.inverse()))
        return tuple(images)

    @property
    def spec(self) -> str:
        if not self.parameters:
            return self.name
        args = ",".join(f"{key}={value:g}" for key, value in self.parameters)
        return f"{self.name}:{args}"

    def is_peripheral(self, w: CyclicWord) -> bool:
        """True when w is a power of a peripheral class or of its inverse."""
        if w.is_trivial:
            return False
        root, _ = primitive_root(w)
        for boundary in self.peripheral:
            boundary_root, _ = primitive_root(boundary)
            if root in (boundary_root, iota(boundary_root)):
                return True
        return False

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "spec": self.spec,
            "rank": self.rank,
            "topology": {
                "genus": self.topology.genus,
                "boundary_count": self.topology.boundary_count,
                "euler_characteristic": self.topology.euler_characteristic,
            },
            "family_parameter": self.family_parameter,
            "orientation": self.orientation,
            "excluded_from_twg_k": self.excluded_from_twg_k,
            "generators": [
                [[g.a, g.b], [g.c, g.d]] for g in self.generator_images
            ],
            "peripheral": [str(w) for w in self.peripheral],
            "simple_classes": [str(w) for w in self.simple_classes],
            "certificate": self.certificate.to_dict(),
        }


# --- representation ----------------------------------------------------------


def _letter_table(generators: Sequence[Isometry]) -> list[Isometry]:
    table: list[Isometry] = []
    for g in generators:
        table.extend((g, g.inverse()))
    return table


def represent_word(model: SurfaceModel, letters: Sequence[int]) -> Isometry:
    table = model.letter_images
    limit = len(table)
    result = Isometry.identity()
    for code in letters:
        if code < 0 or code >= limit:
            raise RankMismatchError(f"letter code {code} outside rank {model.rank}")
        result = result.compose(table[code])
    return result


def represent(model: SurfaceModel, w: CyclicWord) -> Isometry:
    if w.rank != model.rank:
        raise RankMismatchError(f"word of rank {w.rank} on a rank-{model.rank} model")
    return represent_word(model, w.letters)


def geodesic_length(model: SurfaceModel, w: CyclicWord, tol: float = DEFAULT_TOLERANCE) -> float:
    if w.is_trivial:
        raise DomainError("the trivial class has no closed geodesic")
    return translation_length(represent(model, w), tol)


# --- certificate -------------------------------------------------------------


def certify(
    generators: Sequence[Isometry],
    max_word_length: int = DEFAULT_CERT_LENGTH,
    min_translation_length: float = DEFAULT_MIN_TRANSLATION,
    tol: float = DEFAULT_TOLERANCE,
) -> Certificate:
    """Scan every nontrivial reduced word up to max_word_length."""
    table = _letter_table(generators)
    images: dict[GroupWord, Isometry] = {(): Isometry.identity()}
    shortest = math.inf
    shortest_word: GroupWord = ()
    checked = 0
    for word in enumerate_reduced_words(len(generators), max_word_length)[1:]:
        g = images[word[:-1]].compose(table[word[-1]])
        images[word] = g
        checked += 1
        kind = classify(g, tol)
        if kind is not IsometryType.HYPERBOLIC:
            return Certificate(
                False, max_word_length, min_translation_length, checked, shortest,
                shortest_word, f"word {format_word(word)!r} is {kind.value}",
            )
        length = translation_length(g, tol)
        if length < shortest:
            shortest, shortest_word = length, word
        if length < min_translation_length:
            return Certificate(
                False, max_word_length, min_translation_length, checked, shortest,
                shortest_word,
                f"word {format_word(word)!r} has translation length {length:.6g}"
                f" < {min_translation_length:g}",
            )
    return Certificate(
        True, max_word_length, min_translation_length, checked, shortest, shortest_word
    )


def _require(certificate: Certificate, label: str) -> Certificate:
    if not certificate.passed:
        raise SurfaceConstructionError(f"{label}: certificate failed, {certificate.violation}")
    logger.debug(
        f"[SurfaceModel] {label}: certified {certificate.words_checked} words, "
        f"systole candidate {certificate.shortest_length:.6g}"
    )
    return certificate


# --- built-in families -------------------------------------------------------


def fricke_commutator_trace(u: float) -> float:
    """tr[A,B] for trA = u, trB = 4, trAB = 2u."""
    tr_a, tr_b, tr_ab = u, 4.0, 2.0 * u
    return tr_a**2 + tr_b**2 + tr_ab**2 - tr_a * tr_b * tr_ab - 2.0


def one_holed_torus(
    u: float,
    *,
    max_word_length: int = DEFAULT_CERT_LENGTH,
    min_translation_length: float = DEFAULT_MIN_TRANSLATION,
    tol: float = DEFAULT_TOLERANCE,
) -> SurfaceModel:
    """A = diag(lambda, 1/lambda) with trace u, B = [[2,1],[3,2]]."""
    label = f"torus1:u={u:g}"
    if not math.isfinite(u) or u <= 2.0:
        raise SurfaceConstructionError(f"{label}: u must exceed 2 for a hyperbolic generator")
    commutator = fricke_commutator_trace(u)
    if commutator >= -2.0:
        raise SurfaceConstructionError(
            f"{label}: tr[A,B] = {commutator:.6g} is not below -2 (no geodesic boundary)"
        )
    lam = (u + math.sqrt(u * u - 4.0)) / 2.0
    generators = (Isometry(lam, 0.0, 0.0, 1.0 / lam), Isometry(2.0, 1.0, 3.0, 2.0))
    certificate = _require(
        certify(generators, max_word_length, min_translation_length, tol), label
    )
    return SurfaceModel(
        name="torus1",
        rank=2,
        generator_images=generators,
        topology=Topology(genus=1, boundary_count=1),
        family_parameter=float(u),
        certificate=certificate,
        peripheral=(parse_class("a b A B"),),
        simple_classes=tuple(
            parse_class(text) for text in ("a", "b", "a b", "a B", "a b A B")
        ),
        parameters=(("u", float(u)),),
    )


def isometric_intervals(g: Isometry) -> tuple[tuple[float, float], tuple[float, float]]:
    """Boundary traces of the isometric circles of g and of g^-1."""
    if g.c == 0.0:
        raise SurfaceConstructionError("generator fixes infinity; no isometric circles")
    radius = 1.0 / abs(g.c)
    centre_g, centre_inv = -g.d / g.c, g.a / g.c
    return (
        (centre_g - radius, centre_g + radius),
        (centre_inv - radius, centre_inv + radius),
    )


def pants(
    u: float = 4.0,
    s: float = 6.0,
    *,
    max_word_length: int = DEFAULT_CERT_LENGTH,
    min_translation_length: float = DEFAULT_MIN_TRANSLATION,
    tol: float = DEFAULT_TOLERANCE,
) -> SurfaceModel:
    """Schottky pair A (axis -1 -> 1, trace u) and B = A conjugated by z -> z + s."""
    label = f"pants:u={u:g},s={s:g}"
    if not math.isfinite(u) or u <= 2.0:
        raise SurfaceConstructionError(f"{label}: u must exceed 2 for a hyperbolic generator")
    off = math.sqrt(u * u / 4.0 - 1.0)
    a_gen = Isometry(u / 2.0, off, off, u / 2.0)
    shift = Isometry(1.0, s, 0.0, 1.0)
    b_gen = shift.compose(a_gen).compose(shift.inverse())
    intervals = sorted(isometric_intervals(a_gen) + isometric_intervals(b_gen))
    for left, right in zip(intervals, intervals[1:], strict=False):
        if left[1] >= right[0]:
            raise SurfaceConstructionError(
                f"{label}: isometric intervals {left} and {right} overlap"
            )
    generators = (a_gen, b_gen)
    certificate = _require(
        certify(generators, max_word_length, min_translation_length, tol), label
    )
    certificate = Certificate(
        certificate.passed,
        certificate.max_word_length,
        certificate.min_translation_length,
        certificate.words_checked,
        certificate.shortest_length,
        certificate.shortest_word,
        schottky_intervals=tuple(intervals),
    )
    peripheral = tuple(parse_class(text) for text in ("a", "b", "B A"))
    return SurfaceModel(
        name="pants",
        rank=2,
        generator_images=generators,
        topology=Topology(genus=0, boundary_count=3),
        family_parameter=float(u),
        certificate=certificate,
        excluded_from_twg_k=True,
        peripheral=peripheral,
        simple_classes=peripheral,
        parameters=(("u", float(u)), ("s", float(s))),
    )


def from_generators(
    name: str,
    matrices: Sequence[Sequence[Sequence[float]]],
    topology: Topology,
    *,
    peripheral: Sequence[str] = (),
    simple_classes: Sequence[str] = (),
    orientation: int = -1,
    excluded_from_twg_k: bool = False,
    family_parameter: float = 0.0,
    max_word_length: int = DEFAULT_CERT_LENGTH,
    min_translation_length: float = DEFAULT_MIN_TRANSLATION,
    tol: float = DEFAULT_TOLERANCE,
) -> SurfaceModel:
    """Custom model from explicit generator matrices."""
    rank = len(matrices)
    if rank < 2:
        raise SurfaceConstructionError(f"{name}: rank must be at least 2, got {rank}")
    if topology.euler_characteristic >= 0:
        raise SurfaceConstructionError(f"{name}: Euler characteristic must be negative")
    if topology.free_rank != rank:
        raise SurfaceConstructionError(
            f"{name}: genus {topology.genus} with {topology.boundary_count} boundary"
            f" components has free rank {topology.free_rank}, got {rank} generators"
        )
    if orientation not in (1, -1):
        raise SurfaceConstructionError(f"{name}: orientation must be +1 or -1")
    generators = tuple(Isometry.from_array(m) for m in matrices)
    certificate = _require(
        certify(generators, max_word_length, min_translation_length, tol), name
    )
    return SurfaceModel(
        name=name,
        rank=rank,
        generator_images=generators,
        topology=topology,
        family_parameter=float(family_parameter),
        certificate=certificate,
        excluded_from_twg_k=excluded_from_twg_k or topology == Topology(0, 3),
        peripheral=tuple(parse_class(text, rank) for text in peripheral),
        simple_classes=tuple(parse_class(text, rank) for text in simple_classes),
        orientation=orientation,
    )

"""Exact chains over directed, unoriented and sign-twisted classes, and their brackets.

Layer: Domain
Dependencies: fractions (exact coefficients), core.intersections

ChainHat is keyed by canonical cyclic words, ChainTilde by ClassTilde, and
ChainUnder by ClassUnder normal forms with the sign folded into the
coefficient. All chains are immutable; arithmetic returns new chains.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from fractions import Fraction
from typing import Any, ClassVar, Generic, TypeVar

from core.cyclic_words import (
    ClassTilde,
    ClassUnder,
    CyclicWord,
    cyclically_reduce,
    invert,
    iota,
    multiply,
    parse_class,
    word_power,
)
from core.errors import DomainError, ForeignPointError, RankMismatchError, WordParseError
from core.intersections import IntersectionEngine, IntersectionPoint, engine_for
from core.protocols import IntersectionSourceProtocol
from core.surface_model import SurfaceModel

Coefficient = Fraction | int
KeyT = TypeVar("KeyT")


def format_coefficient(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


class _Chain(Generic[KeyT]):
    """Finite formal combination with exact rational coefficients."""

    kind: ClassVar[str] = "chain"
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Any, Coefficient] | Iterable[tuple[Any, Coefficient]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[KeyT, Fraction] = {}
        for raw_key, raw_coeff in items:
            normalized = self._normalize(raw_key, Fraction(raw_coeff))
            if normalized is None:
                continue
            key, coeff = normalized
            acc[key] = acc.get(key, Fraction(0)) + coeff
        self._terms: dict[KeyT, Fraction] = {k: c for k, c in acc.items() if c != 0}

    def _normalize(self, key: Any, coeff: Fraction) -> tuple[KeyT, Fraction] | None:
        return key, coeff

    @classmethod
    def of(cls, key: Any, coeff: Coefficient = 1):
        return cls([(key, coeff)])

    @classmethod
    def zero(cls):
        return cls()

    def items(self) -> list[tuple[KeyT, Fraction]]:
        return sorted(self._terms.items())

    def keys(self) -> list[KeyT]:
        return sorted(self._terms)

    def coefficient(self, key: KeyT) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator[tuple[KeyT, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def _same_kind(self, other: object) -> bool:
        return type(other) is type(self)

    def __add__(self, other):
        if not self._same_kind(other):
            return NotImplemented
        return type(self)(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other):
        if not self._same_kind(other):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return type(self)([(k, -c) for k, c in self._terms.items()])

    def __mul__(self, scalar: Coefficient):
        if not isinstance(scalar, Fraction | int):
            return NotImplemented
        return type(self)([(k, c * scalar) for k, c in self._terms.items()])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not self._same_kind(other):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{format_coefficient(c)}*[{k}]" for k, c in self.items()) or "0"
        return f"{type(self).__name__}({body})"

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "terms": [{"class": str(k), "coeff": format_coefficient(c)} for k, c in self.items()],
        }


class ChainHat(_Chain[CyclicWord]):
    """Element of K-hat-pi: combination of directed classes."""

    kind = "hat"

    def _normalize(self, key: Any, coeff: Fraction) -> tuple[CyclicWord, Fraction]:
        if not isinstance(key, CyclicWord):
            raise TypeError(f"ChainHat keys are CyclicWord, got {type(key).__name__}")
        return cyclically_reduce(key.letters, key.rank), coeff


class ChainTilde(_Chain[ClassTilde]):
    """Element of K-tilde-pi: w and iota(w) share a coefficient."""

    kind = "tilde"

    def _normalize(self, key: Any, coeff: Fraction) -> tuple[ClassTilde, Fraction]:
        if isinstance(key, ClassTilde):
            return key, coeff
        if isinstance(key, CyclicWord):
            return ClassTilde.of(key), coeff
        raise TypeError(f"ChainTilde keys are ClassTilde, got {type(key).__name__}")


class ChainUnder(_Chain[ClassUnder]):
    """Element of K-under-pi: w identified with -iota(w); the trivial class is zero."""

    kind = "under"

    def _normalize(self, key: Any, coeff: Fraction) -> tuple[ClassUnder, Fraction] | None:
        if isinstance(key, ClassUnder):
            word, coeff = key.representative, coeff * key.sign
        elif isinstance(key, CyclicWord):
            word = key
        else:
            raise TypeError(f"ChainUnder keys are ClassUnder, got {type(key).__name__}")
        normal = ClassUnder.of(word)
        if normal is None:
            return None
        return ClassUnder(normal.representative, 1), coeff * normal.sign


# --- involution and grading ---------------------------------------------------


def iota_chain(x: ChainHat) -> ChainHat:
    return ChainHat([(iota(w), c) for w, c in x])


def project_A0(x: ChainHat) -> ChainHat:
    return (x + iota_chain(x)) * Fraction(1, 2)


def project_A1(x: ChainHat) -> ChainHat:
    return (x - iota_chain(x)) * Fraction(1, 2)


def to_tilde(x: ChainHat) -> ChainTilde:
    return ChainTilde(list(x))


def to_under(x: ChainHat) -> ChainUnder:
    return ChainUnder(list(x))


def lift_tilde(x: ChainTilde) -> ChainHat:
    """Section of A0 -> K-tilde-pi: alpha-tilde maps to alpha + iota(alpha)."""
    terms: list[tuple[CyclicWord, Fraction]] = []
    for key, c in x:
        terms.extend(((key.representative, c), (iota(key.representative), c)))
    return ChainHat(terms)


def lift_under(x: ChainUnder) -> ChainHat:
    """Section of A1 -> K-under-pi: alpha-under maps to alpha - iota(alpha)."""
    terms: list[tuple[CyclicWord, Fraction]] = []
    for key, c in x:
        terms.extend(((key.representative, c), (iota(key.representative), -c)))
    return ChainHat(terms)


# --- star products ------------------------------------------------------------


def _check_point(alpha: CyclicWord, beta: CyclicWord, point: IntersectionPoint) -> None:
    if point.alpha != alpha or point.beta != beta:
        raise ForeignPointError(
            f"point with conjugator belongs to ({point.alpha}, {point.beta}), "
            f"not ({alpha}, {beta})"
        )


def loop_product(
    alpha: CyclicWord, beta: CyclicWord, point: IntersectionPoint, exponent: int
) -> CyclicWord:
    """Class of alpha * (g beta^exponent g^-1) for the conjugator g of the point."""
    g = point.conjugator
    word = multiply(alpha.letters, g, word_power(beta.letters, exponent), invert(g))
    return cyclically_reduce(word, alpha.rank)


def star_zero(
    model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord, point: IntersectionPoint
) -> CyclicWord:
    _check_rank(model, alpha, beta)
    _check_point(alpha, beta, point)
    return loop_product(alpha, beta, point, point.sign)


def star_infty(
    model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord, point: IntersectionPoint
) -> CyclicWord:
    _check_rank(model, alpha, beta)
    _check_point(alpha, beta, point)
    return loop_product(alpha, beta, point, -point.sign)


def _check_rank(model: SurfaceModel, *words: CyclicWord) -> None:
    for w in words:
        if w.rank != model.rank:
            raise RankMismatchError(f"class {w} has rank {w.rank}, model rank {model.rank}")


def _source(model: SurfaceModel, engine: IntersectionSourceProtocol | None):
    return engine if engine is not None else engine_for(model)


# --- Goldman bracket ----------------------------------------------------------


def goldman_bracket(
    model: SurfaceModel,
    x: ChainHat,
    y: ChainHat,
    engine: IntersectionEngine | IntersectionSourceProtocol | None = None,
) -> ChainHat:
    source = _source(model, engine)
    terms: list[tuple[CyclicWord, Fraction]] = []
    for alpha, a in x:
        if alpha.is_trivial:
            continue
        for beta, b in y:
            if beta.is_trivial:
                continue
            _check_rank(model, alpha, beta)
            for point in source.enumerate(alpha, beta):
                terms.append((loop_product(alpha, beta, point, 1), a * b * point.sign))
    return ChainHat(terms)


# --- TWG brackets --------------------------------------------------------------


def _star_pairs(source, alpha: CyclicWord, beta: CyclicWord):
    for point in source.enumerate(alpha, beta):
        yield (
            point.sign,
            loop_product(alpha, beta, point, point.sign),
            loop_product(alpha, beta, point, -point.sign),
        )


def _nontrivial_pairs(model: SurfaceModel, x, y):
    for key_x, a in x:
        alpha = key_x.representative
        if alpha.is_trivial:
            continue
        for key_y, b in y:
            beta = key_y.representative
            if beta.is_trivial:
                continue
            _check_rank(model, alpha, beta)
            yield alpha, beta, a * b


def twg_tilde_tilde(
    model: SurfaceModel, x: ChainTilde, y: ChainTilde, engine=None
) -> ChainTilde:
    """Sum over points of (alpha*beta)_0 - (alpha*beta)_inf, unoriented."""
    source = _source(model, engine)
    terms: list[tuple[CyclicWord, Fraction]] = []
    for alpha, beta, coeff in _nontrivial_pairs(model, x, y):
        for _, zero, infty in _star_pairs(source, alpha, beta):
            terms.extend(((zero, coeff), (infty, -coeff)))
    return ChainTilde(terms)


def twg_tilde_under(
    model: SurfaceModel, x: ChainTilde, y: ChainUnder, engine=None
) -> ChainUnder:
    """Sum over points of sign * ((alpha*beta)_0 + (alpha*beta)_inf), twisted."""
    source = _source(model, engine)
    terms: list[tuple[CyclicWord, Fraction]] = []
    for alpha, beta, coeff in _nontrivial_pairs(model, x, y):
        for sign, zero, infty in _star_pairs(source, alpha, beta):
            terms.extend(((zero, sign * coeff), (infty, sign * coeff)))
    return ChainUnder(terms)


def twg_under_tilde(
    model: SurfaceModel, x: ChainUnder, y: ChainTilde, engine=None
) -> ChainUnder:
    """Sum over points of (alpha*beta)_0 - (alpha*beta)_inf, twisted."""
    source = _source(model, engine)
    terms: list[tuple[CyclicWord, Fraction]] = []
    for alpha, beta, coeff in _nontrivial_pairs(model, x, y):
        for _, zero, infty in _star_pairs(source, alpha, beta):
            terms.extend(((zero, coeff), (infty, -coeff)))
    return ChainUnder(terms)


def twg_under_under(
    model: SurfaceModel, x: ChainUnder, y: ChainUnder, engine=None
) -> ChainTilde:
    """Sum over points of sign * ((alpha*beta)_0 + (alpha*beta)_inf), unoriented."""
    source = _source(model, engine)
    terms: list[tuple[CyclicWord, Fraction]] = []
    for alpha, beta, coeff in _nontrivial_pairs(model, x, y):
        for sign, zero, infty in _star_pairs(source, alpha, beta):
            terms.extend(((zero, sign * coeff), (infty, sign * coeff)))
    return ChainTilde(terms)


TWG_FLAVORS = ("tt", "tu", "ut", "uu")


def twg_bracket(model: SurfaceModel, flavor: str, x: ChainHat, y: ChainHat, engine=None):
    """Dispatch by flavor; hat arguments are pushed to the required quotient first."""
    if flavor == "tt":
        return twg_tilde_tilde(model, to_tilde(x), to_tilde(y), engine)
    if flavor == "tu":
        return twg_tilde_under(model, to_tilde(x), to_under(y), engine)
    if flavor == "ut":
        return twg_under_tilde(model, to_under(x), to_tilde(y), engine)
    if flavor == "uu":
        return twg_under_under(model, to_under(x), to_under(y), engine)
    raise DomainError(f"unknown TWG flavor {flavor!r}; expected one of {', '.join(TWG_FLAVORS)}")


def twg_via_goldman(model: SurfaceModel, flavor: str, x, y, engine=None):
    """The same brackets computed as half the quotient image of lifted Goldman brackets."""
    lift_x = lift_tilde(x) if flavor[0] == "t" else lift_under(x)
    lift_y = lift_tilde(y) if flavor[1] == "t" else lift_under(y)
    bracket = goldman_bracket(model, lift_x, lift_y, engine) * Fraction(1, 2)
    if flavor in ("tt", "uu"):
        return to_tilde(bracket)
    return to_under(bracket)


def parse_chain(text: str, rank: int = 2) -> ChainHat:
    """'a b + 2*a B - 1/2*b': terms joined by + or -, optional rational coefficient."""
    if not text.strip():
        raise WordParseError(text, "empty chain")
    terms: list[tuple[CyclicWord, Fraction]] = []
    for chunk in re.split(r"\s+(?=[+-]\s)", text.strip()):
        sign = 1
        body = chunk.strip()
        if body[:1] in "+-" and body[1:2].isspace():
            sign = -1 if body[0] == "-" else 1
            body = body[1:].strip()
        coeff_text, star, word_text = body.rpartition("*")
        try:
            coeff = Fraction(coeff_text.strip()) if star else Fraction(1)
        except ValueError:
            raise WordParseError(coeff_text, "malformed coefficient") from None
        terms.append((parse_class(word_text, rank), sign * coeff))
    return ChainHat(terms)

"""Deformed TWG bracket, its Poisson extension, and the enveloping-algebra normal form.

Layer: Domain
Dependencies: fractions (exact coefficients), core.brackets

Generators of the polynomial algebra are Factors: the tilde class of a word
(tier 0) or the under class of a nontrivial word (tier 1). Monomials are
sorted multisets of Factors, so the algebra is the symmetric algebra on the
direct sum K-tilde-pi + K-under-pi.
"""

from __future__ import annotations

import logging
import random
import re
import threading
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import Any

from core.brackets import (
    ChainHat,
    ChainTilde,
    ChainUnder,
    format_coefficient,
    goldman_bracket,
    lift_tilde,
    lift_under,
    twg_tilde_tilde,
    twg_tilde_under,
    twg_under_tilde,
    twg_under_under,
)
from core.cyclic_words import ClassTilde, ClassUnder, CyclicWord, parse_class
from core.errors import WordParseError
from core.intersections import engine_for
from core.surface_model import SurfaceModel

logger = logging.getLogger(__name__)


class Tier(IntEnum):
    TILDE = 0
    UNDER = 1


@dataclass(frozen=True, order=True)
class Factor:
    """Degree-one generator; word is the normal-form representative."""

    tier: Tier
    word: CyclicWord

    @classmethod
    def tilde(cls, w: CyclicWord) -> Factor:
        return cls(Tier.TILDE, ClassTilde.of(w).representative)

    @classmethod
    def under(cls, w: CyclicWord) -> tuple[int, Factor] | None:
        """Normalized under factor with its sign, or None for the trivial class."""
        normal = ClassUnder.of(w)
        if normal is None:
            return None
        return normal.sign, cls(Tier.UNDER, normal.representative)

    def __str__(self) -> str:
        prefix = "T" if self.tier is Tier.TILDE else "U"
        return f"{prefix}({self.word})"


@dataclass(frozen=True, order=True)
class PBWMonomial:
    """Commutative monomial: sorted tuple of factors, tilde factors first."""

    factors: tuple[Factor, ...] = ()

    @classmethod
    def of(cls, factors: Iterable[Factor]) -> PBWMonomial:
        return cls(tuple(sorted(factors)))

    @property
    def degree(self) -> int:
        return len(self.factors)

    @property
    def tilde_factors(self) -> tuple[Factor, ...]:
        return tuple(f for f in self.factors if f.tier is Tier.TILDE)

    @property
    def under_factors(self) -> tuple[Factor, ...]:
        return tuple(f for f in self.factors if f.tier is Tier.UNDER)

    def times(self, other: PBWMonomial) -> PBWMonomial:
        return PBWMonomial.of(self.factors + other.factors)

    def without(self, index: int) -> PBWMonomial:
        return PBWMonomial(self.factors[:index] + self.factors[index + 1 :])

    def sort_key(self) -> tuple[int, tuple[Factor, ...]]:
        return (self.degree, self.factors)

    def __str__(self) -> str:
        return "*".join(str(f) for f in self.factors) or "1"


class PBWElement:
    """Finite combination of monomials with rational coefficients."""

    __slots__ = ("_terms",)

    def __init__(
        self,
        terms: Mapping[PBWMonomial, Fraction | int]
        | Iterable[tuple[PBWMonomial, Fraction | int]] = (),
    ):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[PBWMonomial, Fraction] = {}
        for monomial, coeff in items:
            acc[monomial] = acc.get(monomial, Fraction(0)) + Fraction(coeff)
        self._terms = {m: c for m, c in acc.items() if c != 0}

    @classmethod
    def scalar(cls, value: Fraction | int) -> PBWElement:
        return cls([(PBWMonomial(), value)])

    @classmethod
    def of_factor(cls, factor: Factor, coeff: Fraction | int = 1) -> PBWElement:
        return cls([(PBWMonomial((factor,)), coeff)])

    @classmethod
    def of_factors(cls, factors: Sequence[Factor], coeff: Fraction | int = 1) -> PBWElement:
        return cls([(PBWMonomial.of(factors), coeff)])

    def items(self) -> list[tuple[PBWMonomial, Fraction]]:
        return sorted(self._terms.items(), key=lambda item: item[0].sort_key())

    def __iter__(self) -> Iterator[tuple[PBWMonomial, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> int:
        return max((m.degree for m in self._terms), default=0)

    def coefficient(self, monomial: PBWMonomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def __add__(self, other: PBWElement) -> PBWElement:
        if not isinstance(other, PBWElement):
            return NotImplemented
        return PBWElement(list(self._terms.items()) + list(other._terms.items()))

    def __sub__(self, other: PBWElement) -> PBWElement:
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> PBWElement:
        return PBWElement([(m, -c) for m, c in self._terms.items()])

    def __mul__(self, scalar: Fraction | int) -> PBWElement:
        if not isinstance(scalar, Fraction | int):
            return NotImplemented
        return PBWElement([(m, c * scalar) for m, c in self._terms.items()])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __repr__(self) -> str:
        return f"PBWElement({self})"

    def __str__(self) -> str:
        return " + ".join(f"{format_coefficient(c)}*{m}" for m, c in self.items()) or "0"

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": "pbw",
            "terms": [
                {"monomial": str(m), "coeff": format_coefficient(c)} for m, c in self.items()
            ],
        }


def from_chain(chain: ChainTilde | ChainUnder) -> PBWElement:
    """Degree-one element for a tilde or under chain."""
    tier = Tier.TILDE if isinstance(chain, ChainTilde) else Tier.UNDER
    return PBWElement(
        [(PBWMonomial((Factor(tier, key.representative),)), c) for key, c in chain]
    )


def split_hat(chain: ChainHat) -> PBWElement:
    """w = (w + iota w)/2 + (w - iota w)/2, read as half tilde plus half under."""
    terms: list[tuple[PBWMonomial, Fraction]] = []
    half = Fraction(1, 2)
    for w, c in chain:
        terms.append((PBWMonomial((Factor.tilde(w),)), c * half))
        under = Factor.under(w)
        if under is not None:
            sign, factor = under
            terms.append((PBWMonomial((factor,)), c * half * sign))
    return PBWElement(terms)


def lift_factor(factor: Factor) -> ChainHat:
    if factor.tier is Tier.TILDE:
        return lift_tilde(ChainTilde.of(factor.word))
    return lift_under(ChainUnder.of(factor.word))


# --- deformed bracket ---------------------------------------------------------


class PoissonAlgebra:
    """Polynomial algebra on K-tilde-pi + K-under-pi with the deformed TWG bracket.

    Basis brackets are cached per instance; the cache is guarded for use from
    a verification thread pool.
    """

    def __init__(self, model: SurfaceModel, k: Fraction | int = 0, engine=None):
        self.model = model
        self.k = Fraction(k)
        self._engine = engine if engine is not None else engine_for(model)
        self._cache: dict[tuple[Factor, Factor], PBWElement] = {}
        self._lock = threading.Lock()

    def _algebraic(self, alpha: CyclicWord, beta: CyclicWord) -> int:
        if alpha.is_trivial or beta.is_trivial:
            return 0
        return self._engine.enumerate(alpha, beta).algebraic_number

    def basis_bracket(self, x: Factor, y: Factor) -> PBWElement:
        key = (x, y)
        with self._lock:
            cached = self._cache.get(key)
        if cached is not None:
            return cached
        result = self._compute_basis_bracket(x, y)
        with self._lock:
            self._cache[key] = result
        return result

    def _compute_basis_bracket(self, x: Factor, y: Factor) -> PBWElement:
        alpha, beta = x.word, y.word
        model, engine = self.model, self._engine
        tilde_x, under_x = ChainTilde.of(alpha), ChainUnder.of(alpha)
        tilde_y, under_y = ChainTilde.of(beta), ChainUnder.of(beta)
        if x.tier is Tier.TILDE and y.tier is Tier.TILDE:
            main = from_chain(twg_tilde_tilde(model, tilde_x, tilde_y, engine))
            correction = (Factor.under(alpha), Factor.under(beta))
        elif x.tier is Tier.TILDE:
            main = from_chain(twg_tilde_under(model, tilde_x, under_y, engine))
            correction = (Factor.under(alpha), (1, Factor.tilde(beta)))
        elif y.tier is Tier.TILDE:
            main = from_chain(twg_under_tilde(model, under_x, tilde_y, engine))
            correction = ((1, Factor.tilde(alpha)), Factor.under(beta))
        else:
            main = from_chain(twg_under_under(model, under_x, under_y, engine))
            correction = ((1, Factor.tilde(alpha)), (1, Factor.tilde(beta)))

        left, right = correction
        if self.k == 0 or left is None or right is None:
            return main
        pairing = self._algebraic(alpha, beta)
        if pairing == 0:
            return main
        coeff = -self.k * pairing * left[0] * right[0]
        return main + PBWElement.of_factors((left[1], right[1]), coeff)

    def bracket(self, x: PBWElement, y: PBWElement) -> PBWElement:
        """Leibniz extension of the basis bracket in each argument."""
        terms: list[tuple[PBWMonomial, Fraction]] = []
        for mono_x, cx in x:
            for mono_y, cy in y:
                for i, fx in enumerate(mono_x.factors):
                    rest_x = mono_x.without(i)
                    for j, fy in enumerate(mono_y.factors):
                        rest = rest_x.times(mono_y.without(j))
                        for mono, c in self.basis_bracket(fx, fy):
                            terms.append((rest.times(mono), cx * cy * c))
        return PBWElement(terms)

    @staticmethod
    def multiply(x: PBWElement, y: PBWElement) -> PBWElement:
        return multiply(x, y)


def multiply(x: PBWElement, y: PBWElement) -> PBWElement:
    return PBWElement([(mx.times(my), cx * cy) for mx, cx in x for my, cy in y])


def deformed_bracket_basis(
    model: SurfaceModel, x: Factor, y: Factor, k: Fraction | int, engine=None
) -> PBWElement:
    return PoissonAlgebra(model, k, engine).basis_bracket(x, y)


def poisson_bracket(
    model: SurfaceModel, x: PBWElement, y: PBWElement, k: Fraction | int, engine=None
) -> PBWElement:
    return PoissonAlgebra(model, k, engine).bracket(x, y)


# --- enveloping algebra -------------------------------------------------------


class EnvelopingAlgebra:
    """Universal enveloping algebra of (K-tilde-pi + K-under-pi, undeformed TWG).

    Elements are stored in PBW form over sorted monomials. A word of factors
    is rewritten with xy = yx + [x, y] at a descent x > y until sorted.
    """

    def __init__(self, model: SurfaceModel, engine=None):
        self.model = model
        self._engine = engine if engine is not None else engine_for(model)
        self._brackets: dict[tuple[Factor, Factor], PBWElement] = {}
        self._normal_forms: dict[tuple[Factor, ...], PBWElement] = {}
        self._lock = threading.Lock()

    def factor_bracket(self, x: Factor, y: Factor) -> PBWElement:
        """Bracket of two factors through their hat lifts."""
        key = (x, y)
        with self._lock:
            cached = self._brackets.get(key)
        if cached is not None:
            return cached
        hat = goldman_bracket(self.model, lift_factor(x), lift_factor(y), self._engine)
        result = split_hat(hat)
        logger.debug(f"[EnvelopingAlgebra] [{x}, {y}] has {len(result)} terms")
        with self._lock:
            self._brackets[key] = result
        return result

    def normal_form(
        self, factors: Sequence[Factor], rng: random.Random | None = None
    ) -> PBWElement:
        """PBW normal form; rng picks the descent to rewrite, otherwise the leftmost."""
        memo = self._normal_forms if rng is None else {}
        return self._reduce(tuple(factors), rng, memo)

    def _reduce(
        self,
        word: tuple[Factor, ...],
        rng: random.Random | None,
        memo: dict[tuple[Factor, ...], PBWElement],
    ) -> PBWElement:
        if rng is None:
            with self._lock:
                cached = memo.get(word)
        else:
            cached = memo.get(word)
        if cached is not None:
            return cached
        descents = [i for i in range(len(word) - 1) if word[i] > word[i + 1]]
        if not descents:
            result = PBWElement([(PBWMonomial(word), 1)])
        else:
            i = rng.choice(descents) if rng is not None else descents[0]
            x, y = word[i], word[i + 1]
            head, tail = word[:i], word[i + 2 :]
            result = self._reduce(head + (y, x) + tail, rng, memo)
            for mono, c in self.factor_bracket(x, y):
                result = result + self._reduce(head + mono.factors + tail, rng, memo) * c
        if rng is None:
            with self._lock:
                memo[word] = result
        else:
            memo[word] = result
        return result

    def multiply(
        self, x: PBWElement, y: PBWElement, rng: random.Random | None = None
    ) -> PBWElement:
        out = PBWElement()
        for mx, cx in x:
            for my, cy in y:
                out = out + self.normal_form(mx.factors + my.factors, rng) * (cx * cy)
        return out

    def commutator(self, x: PBWElement, y: PBWElement) -> PBWElement:
        return self.multiply(x, y) - self.multiply(y, x)


def uea_normal_form(
    model: SurfaceModel, factors: Sequence[Factor], rng: random.Random | None = None
) -> PBWElement:
    return EnvelopingAlgebra(model).normal_form(factors, rng)


# --- text form ----------------------------------------------------------------

_FACTOR_RE = re.compile(r"^\s*([TU])\(([^()]*)\)\s*$")
_COEFF_RE = re.compile(r"^\s*-?\d+(/\d+)?\s*$")


def parse_factor(text: str, rank: int = 2) -> tuple[int, Factor]:
    """'T(a b)' or 'U(a B)'; returns the sign picked up by under normalization."""
    match = _FACTOR_RE.match(text)
    if match is None:
        raise WordParseError(text, "expected T(...) or U(...)")
    tier, body = match.groups()
    word = parse_class(body, rank)
    if tier == "T":
        return 1, Factor.tilde(word)
    under = Factor.under(word)
    if under is None:
        raise WordParseError(text, "the under class of the trivial loop is zero")
    return under


def parse_monomial(text: str, rank: int = 2) -> PBWElement:
    """'T(a)*U(a b)', optionally led by a rational coefficient such as '1/2*T(a)'."""
    coeff = Fraction(1)
    factors: list[Factor] = []
    if not text.strip():
        raise WordParseError(text, "empty monomial")
    for part in text.split("*"):
        if _COEFF_RE.match(part):
            coeff *= Fraction(part.strip())
            continue
        sign, factor = parse_factor(part, rank)
        coeff *= sign
        factors.append(factor)
    return PBWElement.of_factors(factors, coeff)


def parse_polynomial(text: str, rank: int = 2) -> PBWElement:
    """Sum of monomials separated by ' + '."""
    total = PBWElement()
    for chunk in text.split("+"):
        total = total + parse_monomial(chunk, rank)
    return total

"""Exact algebraic checks over rational chains and PBW elements.

Layer: Application
Dependencies: fractions via core.brackets / core.poisson_algebra

Samples are exhaustive over short classes plus seeded random draws; inputs
that hit the enumeration depth are skipped in the random part and fail the
check in the exhaustive part.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterable
from fractions import Fraction
from typing import TypeVar

from core.brackets import (
    TWG_FLAVORS,
    ChainHat,
    ChainTilde,
    ChainUnder,
    goldman_bracket,
    iota_chain,
    project_A0,
    project_A1,
    twg_tilde_tilde,
    twg_tilde_under,
    twg_under_tilde,
    twg_under_under,
    twg_via_goldman,
)
from core.cyclic_words import CyclicWord, enumerate_classes
from core.errors import UnstableEnumerationError
from core.poisson_algebra import (
    EnvelopingAlgebra,
    Factor,
    PBWElement,
    PoissonAlgebra,
    Tier,
    from_chain,
    multiply,
)
from core.results import CheckReport
from core.verify.context import VerifyContext, sample_classes

logger = logging.getLogger(__name__)

ItemT = TypeVar("ItemT")

POISSON_LEVELS = (Fraction(0), Fraction(1), Fraction(1, 2))


class _Tally:
    """Failure list plus sample and skip counters for one claim."""

    def __init__(self, ctx: VerifyContext, claim: str):
        self.ctx = ctx
        self.claim = claim
        self.failures: list[str] = []
        self.checked = 0
        self.skipped = 0

    def run(
        self, items: Iterable[ItemT], check: Callable[[ItemT], list[str]], *, exhaustive: bool
    ) -> None:
        for item in items:
            try:
                problems = check(item)
            except UnstableEnumerationError as exc:
                if exhaustive:
                    self.failures.append(f"{item}: {exc}")
                else:
                    self.skipped += 1
                    self.ctx.log(f"[{self.claim}] skipped {item}: {exc}")
                continue
            self.checked += 1
            self.failures.extend(problems)

    def report(self, *, sampled: bool, details: dict | None = None) -> CheckReport:
        return CheckReport.from_failures(
            self.claim, self.failures, sampled=sampled, sample_size=self.checked,
            skipped=self.skipped, details=details,
        )


def short_classes(ctx: VerifyContext, max_length: int = 2) -> list[CyclicWord]:
    return enumerate_classes(ctx.model.rank, max_length, include_trivial=False)


def random_triples(ctx: VerifyContext, claim: str, max_length: int = 3):
    rng = ctx.rng(claim)
    pool = sample_classes(rng, ctx.model.rank, max_length, 10**9)
    count = ctx.samples["random_triples"]
    return [tuple(rng.choice(pool) for _ in range(3)) for _ in range(count)]


# --- Goldman bracket ------------------------------------------------------------


def check_goldman_axioms(ctx: VerifyContext) -> CheckReport:
    """Antisymmetry and Jacobi, exactly over the rationals."""
    model, engine = ctx.model, ctx.engine()

    def bracket(x: ChainHat, y: ChainHat) -> ChainHat:
        return goldman_bracket(model, x, y, engine)

    def triple(words: tuple[CyclicWord, ...]) -> list[str]:
        x, y, z = (ChainHat.of(w) for w in words)
        problems = []
        for first, second in ((x, y), (y, z), (z, x)):
            if bracket(first, second) != -bracket(second, first):
                problems.append(f"antisymmetry fails on {tuple(map(str, words))}")
        jacobi = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        if jacobi:
            problems.append(f"Jacobi fails on {tuple(map(str, words))}: {jacobi!r}")
        return problems

    tally = _Tally(ctx, "goldman-lie-axioms")
    exhaustive = list(itertools.combinations_with_replacement(short_classes(ctx), 3))
    tally.run(exhaustive, triple, exhaustive=True)
    tally.run(random_triples(ctx, "goldman-lie-axioms"), triple, exhaustive=False)
    return tally.report(sampled=True, details={"exhaustive_triples": len(exhaustive)})


def check_grading(ctx: VerifyContext) -> CheckReport:
    """Even and odd parts bracket into the predicted components; iota is an automorphism."""
    model, engine = ctx.model, ctx.engine()

    def bracket(x: ChainHat, y: ChainHat) -> ChainHat:
        return goldman_bracket(model, x, y, engine)

    def pair(words: tuple[CyclicWord, CyclicWord]) -> list[str]:
        x, y = (ChainHat.of(w) for w in words)
        label = tuple(map(str, words))
        x0, x1, y0, y1 = project_A0(x), project_A1(x), project_A0(y), project_A1(y)
        problems = []
        if project_A1(bracket(x0, y0)):
            problems.append(f"[A0, A0] leaves A0 on {label}")
        if project_A0(bracket(x0, y1)):
            problems.append(f"[A0, A1] leaves A1 on {label}")
        if project_A1(bracket(x1, y1)):
            problems.append(f"[A1, A1] leaves A0 on {label}")
        if iota_chain(bracket(x, y)) != bracket(iota_chain(x), iota_chain(y)):
            problems.append(f"iota is not an automorphism on {label}")
        return problems

    tally = _Tally(ctx, "z2-grading")
    classes = short_classes(ctx)
    tally.run(list(itertools.product(classes, repeat=2)), pair, exhaustive=True)
    tally.run(
        [t[:2] for t in random_triples(ctx, "z2-grading")], pair, exhaustive=False
    )
    return tally.report(sampled=True)


def _quotient_argument(word: CyclicWord, tier: str) -> ChainTilde | ChainUnder:
    return ChainTilde.of(word) if tier == "t" else ChainUnder.of(word)


def check_twg_consistency(ctx: VerifyContext) -> CheckReport:
    """The four closed formulas equal half the quotient image of lifted Goldman brackets."""
    model, engine = ctx.model, ctx.engine()
    direct = {
        "tt": twg_tilde_tilde,
        "tu": twg_tilde_under,
        "ut": twg_under_tilde,
        "uu": twg_under_under,
    }

    def pair(words: tuple[CyclicWord, CyclicWord]) -> list[str]:
        problems = []
        for flavor in TWG_FLAVORS:
            x = _quotient_argument(words[0], flavor[0])
            y = _quotient_argument(words[1], flavor[1])
            formula = direct[flavor](model, x, y, engine)
            lifted = twg_via_goldman(model, flavor, x, y, engine)
            if formula != lifted:
                problems.append(
                    f"{flavor} on {tuple(map(str, words))}: {formula!r} != {lifted!r}"
                )
        return problems

    tally = _Tally(ctx, "twg-consistency")
    classes = short_classes(ctx)
    tally.run(list(itertools.product(classes, repeat=2)), pair, exhaustive=True)
    tally.run(
        [t[:2] for t in random_triples(ctx, "twg-consistency")], pair, exhaustive=False
    )
    return tally.report(sampled=True)


# --- Poisson algebra and enveloping algebra ------------------------------------


def _factor_pool(ctx: VerifyContext) -> list[Factor]:
    pool: list[Factor] = []
    for w in enumerate_classes(ctx.model.rank, 2, include_trivial=False):
        pool.append(Factor.tilde(w))
        under = Factor.under(w)
        if under is not None:
            pool.append(under[1])
    return sorted(set(pool))


def random_monomials(ctx: VerifyContext, claim: str, count: int, total_degree: int = 4):
    """Triples of monomials of degree 1 or 2 with bounded total degree."""
    rng = ctx.rng(claim)
    pool = _factor_pool(ctx)
    triples = []
    while len(triples) < count:
        degrees = [rng.choice((1, 2)) for _ in range(3)]
        if sum(degrees) > total_degree:
            continue
        triples.append(
            tuple(PBWElement.of_factors([rng.choice(pool) for _ in range(d)]) for d in degrees)
        )
    return triples


def check_poisson_axioms(ctx: VerifyContext) -> CheckReport:
    """Antisymmetry, Leibniz and Jacobi in S_k, and the k = 0 degree-one agreement."""
    model, engine = ctx.model, ctx.engine()
    tally = _Tally(ctx, "poisson-axioms")

    for k in POISSON_LEVELS:
        algebra = PoissonAlgebra(model, k, engine)
        br = algebra.bracket

        def triple(items: tuple[PBWElement, ...], k: Fraction = k, br=br) -> list[str]:
            x, y, z = items
            label = f"k={k} ({x}, {y}, {z})"
            problems = []
            if br(x, y) != -br(y, x):
                problems.append(f"antisymmetry fails for {label}")
            if br(x, multiply(y, z)) != multiply(br(x, y), z) + multiply(y, br(x, z)):
                problems.append(f"Leibniz fails for {label}")
            if br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y)):
                problems.append(f"Jacobi fails for {label}")
            return problems

        claim = f"poisson-axioms:{k}"
        tally.run(
            random_monomials(ctx, claim, ctx.samples["poisson_triples"]), triple, exhaustive=False
        )

    undeformed = PoissonAlgebra(model, 0, engine)
    enveloping = EnvelopingAlgebra(model, engine)
    pool = _factor_pool(ctx)

    def degree_one(pair: tuple[Factor, Factor]) -> list[str]:
        x, y = pair
        expected = _twg_of_factors(ctx, x, y)
        problems = []
        if undeformed.basis_bracket(x, y) != expected:
            problems.append(f"k=0 bracket of {x}, {y} differs from the TWG value")
        if enveloping.factor_bracket(x, y) != expected:
            problems.append(f"lifted bracket of {x}, {y} differs from the TWG value")
        return problems

    tally.run(list(itertools.product(pool, repeat=2)), degree_one, exhaustive=True)

    images = [PBWElement.of_factor(f) for f in pool]
    if len(set(images)) != len(pool) or any(not image for image in images):
        tally.failures.append("degree-one inclusion is not injective on the factor pool")
    return tally.report(
        sampled=True, details={"levels": [str(k) for k in POISSON_LEVELS], "pool": len(pool)}
    )


def _twg_of_factors(ctx: VerifyContext, x: Factor, y: Factor) -> PBWElement:
    model, engine = ctx.model, ctx.engine()
    first = ChainTilde.of(x.word) if x.tier is Tier.TILDE else ChainUnder.of(x.word)
    second = ChainTilde.of(y.word) if y.tier is Tier.TILDE else ChainUnder.of(y.word)
    flavor = ("t" if x.tier is Tier.TILDE else "u") + ("t" if y.tier is Tier.TILDE else "u")
    formula = {
        "tt": twg_tilde_tilde,
        "tu": twg_tilde_under,
        "ut": twg_under_tilde,
        "uu": twg_under_under,
    }[flavor]
    return from_chain(formula(model, first, second, engine))


def check_uea_confluence(ctx: VerifyContext) -> CheckReport:
    """Normal forms agree across rewrite orders; products associate; commutators are brackets."""
    model, engine = ctx.model, ctx.engine()
    enveloping = EnvelopingAlgebra(model, engine)
    rng = ctx.rng("uea-confluence")
    pool = _factor_pool(ctx)
    tally = _Tally(ctx, "uea-confluence")

    words = [
        (i, tuple(rng.choice(pool) for _ in range(3))) for i in range(ctx.samples["uea_trials"])
    ]

    def confluent(item: tuple[int, tuple[Factor, ...]]) -> list[str]:
        index, word = item
        left = enveloping.normal_form(word)
        right = enveloping.normal_form(word, ctx.rng(f"uea-confluence:{index}"))
        if left != right:
            return [f"rewrite orders disagree on {' '.join(map(str, word))}"]
        return []

    tally.run(words, confluent, exhaustive=False)

    triples = [
        tuple(PBWElement.of_factor(rng.choice(pool)) for _ in range(3))
        for _ in range(ctx.samples["associativity_triples"])
    ]

    def associative(items: tuple[PBWElement, ...]) -> list[str]:
        x, y, z = items
        mul = enveloping.multiply
        if mul(mul(x, y), z) != mul(x, mul(y, z)):
            return [f"products do not associate on ({x}, {y}, {z})"]
        return []

    tally.run(triples, associative, exhaustive=False)

    def commutator(pair: tuple[Factor, Factor]) -> list[str]:
        x, y = pair
        got = enveloping.commutator(PBWElement.of_factor(x), PBWElement.of_factor(y))
        if got != enveloping.factor_bracket(x, y):
            return [f"xy - yx differs from [{x}, {y}]"]
        return []

    pairs = [(rng.choice(pool), rng.choice(pool)) for _ in range(ctx.samples["uea_trials"])]
    tally.run(pairs, commutator, exhaustive=False)
    return tally.report(sampled=True)

"""Geometric and combinatorial checks: trace laws, length-angle identities,
reversibility, the key lemma and the essentiality scans.

Layer: Application
Dependencies: numpy (batched conjugation in the reversibility scan)
"""

from __future__ import annotations

import logging
import math

import numpy as np

from core.brackets import ChainUnder, star_infty, star_zero
from core.cyclic_words import (
    ClassRelation,
    ClassTilde,
    CyclicWord,
    classes_equal_tilde,
    classes_equal_under,
    enumerate_classes,
    enumerate_reduced_words,
    format_word,
    is_reversible,
    multiply,
    parse_class,
)
from core.errors import DomainError, UnstableEnumerationError
from core.intersections import ConjugatorBall, IntersectionPoint, engine_for
from core.moebius import (
    DEFAULT_TOLERANCE,
    axis,
    check_cosh_product,
    crossing_geometry,
    endpoints_interleave,
)
from core.results import CheckReport
from core.surface_model import (
    SurfaceModel,
    geodesic_length,
    one_holed_torus,
    pants,
    represent,
    represent_word,
)
from core.verify.context import VerifyContext, sample_classes

logger = logging.getLogger(__name__)


# --- length-angle identity --------------------------------------------------


def check_length_angle_identity(
    model: SurfaceModel,
    alpha: CyclicWord,
    beta: CyclicWord,
    point: IntersectionPoint,
    *,
    angle_offset: float = 0.0,
    tol: float = DEFAULT_TOLERANCE,
) -> tuple[float, float]:
    """Residuals of the cosh identities for the two loop products at a point.

    cosh(l_0/2)   = cosh(l_a/2)cosh(l_b/2) - sinh(l_a/2)sinh(l_b/2)cos(theta)
    cosh(l_inf/2) = cosh(l_a/2)cosh(l_b/2) + sinh(l_a/2)sinh(l_b/2)cos(theta)
    """
    half_a = geodesic_length(model, alpha, tol) / 2.0
    half_b = geodesic_length(model, beta, tol) / 2.0
    theta = point.angle + angle_offset
    even = math.cosh(half_a) * math.cosh(half_b)
    odd = math.sinh(half_a) * math.sinh(half_b) * math.cos(theta)
    length_zero = geodesic_length(model, star_zero(model, alpha, beta, point), tol)
    length_infty = geodesic_length(model, star_infty(model, alpha, beta, point), tol)
    return (
        abs(math.cosh(length_zero / 2.0) - (even - odd)),
        abs(math.cosh(length_infty / 2.0) - (even + odd)),
    )


def check_cosh_sample(ctx: VerifyContext) -> CheckReport:
    """Trace law for random crossing pairs, plus the right angle of the torus generators."""
    rng = ctx.rng("cosh-product")
    model = ctx.model
    words = enumerate_reduced_words(model.rank, 4)[1:]
    wanted = ctx.samples["cosh_pairs"]
    failures: list[str] = []
    worst = 0.0
    checked = 0
    attempts = 0
    while checked < wanted and attempts < 50 * wanted:
        attempts += 1
        first, second = rng.choice(words), rng.choice(words)
        # Commuting words share an axis.
        if multiply(first, second) == multiply(second, first):
            continue
        g, h = represent_word(model, first), represent_word(model, second)
        if not endpoints_interleave(axis(g, ctx.tolerance), axis(h, ctx.tolerance), ctx.tolerance):
            continue
        checked += 1
        residual = check_cosh_product(g, h, ctx.tolerance)
        worst = max(worst, residual)
        if residual >= ctx.residual_tolerance:
            failures.append(
                f"{format_word(first)} / {format_word(second)}: residual {residual:.3e}"
            )

    details: dict[str, object] = {"attempts": attempts}
    if model.name == "torus1":
        a_gen, b_gen = model.generator_images
        angle = crossing_geometry(axis(a_gen), axis(b_gen)).forward_angle
        details["generator_angle"] = angle
        if abs(angle - math.pi / 2.0) > 1e-9:
            failures.append(f"generator axes meet at {angle!r}, expected pi/2")
    if checked < wanted:
        failures.append(f"only {checked} crossing pairs found in {attempts} attempts")
    return CheckReport.from_failures(
        "cosh-product", failures, sampled=True, worst_residual=worst,
        sample_size=checked, details=details,
    )


def _length_angle_pairs(ctx: VerifyContext, claim: str) -> list[tuple[CyclicWord, CyclicWord]]:
    rng = ctx.rng(claim)
    pool = sample_classes(rng, ctx.model.rank, 4, 10**9)
    count = ctx.samples["length_angle_pairs"]
    return [(rng.choice(pool), rng.choice(pool)) for _ in range(count)]


def check_length_angle(ctx: VerifyContext) -> CheckReport:
    model, engine = ctx.model, ctx.engine()
    failures: list[str] = []
    worst = 0.0
    points = skipped = 0
    for alpha, beta in _length_angle_pairs(ctx, "length-angle"):
        try:
            found = engine.enumerate(alpha, beta)
        except UnstableEnumerationError as exc:
            skipped += 1
            ctx.log(f"[length-angle] skipped ({alpha}, {beta}): {exc}")
            continue
        for point in found:
            points += 1
            res = max(
                check_length_angle_identity(model, alpha, beta, point, tol=ctx.tolerance)
            )
            worst = max(worst, res)
            if res >= ctx.residual_tolerance:
                failures.append(
                    f"({alpha}, {beta}) at {format_word(point.conjugator)}: residual {res:.3e}"
                )
    return CheckReport.from_failures(
        "length-angle", failures, sampled=True, worst_residual=worst,
        sample_size=points, skipped=skipped,
    )


def family_models(model: SurfaceModel, grid: tuple[float, ...]) -> list[SurfaceModel]:
    """Models along the family parameter; custom models have no family."""
    params = dict(model.parameters)
    if model.name == "torus1":
        return [one_holed_torus(u) for u in grid]
    if model.name == "pants":
        return [pants(u, params.get("s", 6.0)) for u in grid]
    return [model]


def check_family_invariance(ctx: VerifyContext) -> CheckReport:
    """Same double cosets and signs across the family, identities hold on each member."""
    rng = ctx.rng("family-invariance")
    members = family_models(ctx.model, ctx.family_grid)
    pool = sample_classes(rng, ctx.model.rank, 3, 10**9)
    count = ctx.samples["family_pairs"]
    pairs = [(rng.choice(pool), rng.choice(pool)) for _ in range(count)]
    failures: list[str] = []
    worst = 0.0
    checked = skipped = 0
    for alpha, beta in pairs:
        try:
            found = [ctx.engine(member).enumerate(alpha, beta) for member in members]
        except UnstableEnumerationError as exc:
            skipped += 1
            ctx.log(f"[family-invariance] skipped ({alpha}, {beta}): {exc}")
            continue
        checked += 1
        signatures = {
            tuple((format_word(p.conjugator), p.sign) for p in points) for points in found
        }
        if len(signatures) != 1:
            failures.append(f"({alpha}, {beta}): intersection data changes along the family")
        for member, points in zip(members, found, strict=True):
            for point in points:
                res = max(
                    check_length_angle_identity(member, alpha, beta, point, tol=ctx.tolerance)
                )
                worst = max(worst, res)
                if res >= ctx.residual_tolerance:
                    failures.append(f"({alpha}, {beta}) on {member.spec}: residual {res:.3e}")
    return CheckReport.from_failures(
        "family-invariance", failures, sampled=True, worst_residual=worst,
        sample_size=checked, skipped=skipped,
        details={"members": [member.spec for member in members]},
    )


# --- reversibility ------------------------------------------------------------


def _matrix_reversible(model: SurfaceModel, w: CyclicWord, ball: ConjugatorBall) -> bool:
    """Some g in the ball with g phi(w) g^-1 = phi(w)^-1 in PSL(2,R)."""
    m = represent(model, w).as_array()
    target = np.linalg.inv(m)
    g = np.moveaxis(np.array([[ball.a, ball.b], [ball.c, ball.d]]), -1, 0)
    g_inv = np.moveaxis(np.array([[ball.d, -ball.b], [-ball.c, ball.a]]), -1, 0)
    conj = g @ m @ g_inv
    scale = np.maximum(1.0, np.max(np.abs(conj), axis=(1, 2)))
    same = np.max(np.abs(conj - target), axis=(1, 2)) / scale
    flipped = np.max(np.abs(conj + target), axis=(1, 2)) / scale
    return bool(np.any(np.minimum(same, flipped) < 1e-9))


def reversibility_crosscheck(
    model: SurfaceModel, max_length: int = 8, conjugator_length: int = 5, matrix_length: int = 4
) -> CheckReport:
    """Only the trivial class is conjugate to its inverse, by words and by matrices."""
    failures: list[str] = []
    classes = enumerate_classes(model.rank, max_length)
    for w in classes:
        if is_reversible(w) != w.is_trivial:
            failures.append(f"{w}: exact reversibility is {is_reversible(w)}")
    ball = ConjugatorBall(model, conjugator_length)
    scanned = 0
    for w in classes:
        if len(w) > matrix_length:
            continue
        scanned += 1
        if _matrix_reversible(model, w, ball) != is_reversible(w):
            failures.append(f"{w}: matrix scan disagrees with the word oracle")
    return CheckReport.from_failures(
        "reversibility", failures, sample_size=len(classes),
        details={
            "max_length": max_length,
            "conjugator_length": conjugator_length,
            "matrix_scanned": scanned,
        },
    )


def check_reversibility(ctx: VerifyContext) -> CheckReport:
    return reversibility_crosscheck(ctx.model, ctx.reversibility_length, ctx.conjugator_length)


# --- key lemma ----------------------------------------------------------------


def check_key_lemma(ctx: VerifyContext, max_length: int = 4) -> CheckReport:
    """Under images agree up to sign exactly when the unoriented classes agree."""
    classes = enumerate_classes(ctx.model.rank, max_length)
    under = {w: ChainUnder.of(w) for w in classes}
    failures: list[str] = []
    for v in classes:
        for w in classes:
            chains_match = under[v] == under[w] or under[v] == -under[w]
            tilde_match = ClassTilde.of(v) == ClassTilde.of(w)
            if chains_match != tilde_match:
                failures.append(f"({v}, {w}): under {chains_match}, tilde {tilde_match}")
            relation = classes_equal_under(v, w)
            if (relation is not ClassRelation.DISTINCT) != classes_equal_tilde(v, w):
                failures.append(f"({v}, {w}): relation {relation.value} disagrees")
    return CheckReport.from_failures(
        "key-lemma", failures, sample_size=len(classes) ** 2, details={"max_length": max_length}
    )


# --- essentiality -------------------------------------------------------------


def essentiality_check(
    model: SurfaceModel,
    beta: CyclicWord,
    simple_list: tuple[CyclicWord, ...] | None = None,
    engine=None,
) -> dict[str, int]:
    """Geometric intersection of beta with each simple class."""
    source = engine if engine is not None else engine_for(model)
    simple = model.simple_classes if simple_list is None else simple_list
    return {str(alpha): len(source.enumerate(beta, alpha)) for alpha in simple}


def pants_counterexample(model: SurfaceModel, engine=None) -> CheckReport:
    """A non-peripheral class disjoint from all three boundary classes."""
    if not model.excluded_from_twg_k:
        raise DomainError(f"{model.spec} is not of pair-of-pants type")
    failures: list[str] = []
    details: dict[str, object] = {}
    for text in ("a b", "a B", "A b"):
        beta = parse_class(text, model.rank)
        if model.is_peripheral(beta):
            continue
        counts = essentiality_check(model, beta, model.peripheral, engine)
        if all(count == 0 for count in counts.values()):
            details = {"witness": str(beta), "intersections": counts, "peripheral": False}
            break
    else:
        failures.append("no non-peripheral class disjoint from the boundary among candidates")
    return CheckReport.from_failures("pants-exclusion", failures, sample_size=1, details=details)


def torus_negative_scan(model: SurfaceModel, max_length: int = 3, engine=None) -> CheckReport:
    """No non-peripheral class meets neither generator."""
    generators = (parse_class("a", model.rank), parse_class("b", model.rank))
    failures: list[str] = []
    scanned = 0
    for w in enumerate_classes(model.rank, max_length, include_trivial=False):
        if model.is_peripheral(w):
            continue
        scanned += 1
        try:
            counts = essentiality_check(model, w, generators, engine)
        except UnstableEnumerationError as exc:
            failures.append(f"{w}: {exc}")
            continue
        if all(count == 0 for count in counts.values()):
            failures.append(f"{w} is non-peripheral but disjoint from both generators")
    return CheckReport.from_failures(
        "torus-negative-scan", failures, sample_size=scanned, details={"max_length": max_length}
    )


def check_pants_exclusion(ctx: VerifyContext) -> CheckReport:
    pants_model = ctx.reference("pants")
    torus_model = ctx.reference("torus1")
    exhibit = pants_counterexample(pants_model, ctx.engine(pants_model))
    negative = torus_negative_scan(torus_model, 3, ctx.engine(torus_model))
    return CheckReport.from_failures(
        "pants-exclusion",
        list(exhibit.failures) + list(negative.failures),
        sample_size=exhibit.sample_size + negative.sample_size,
        details={
            "pants": pants_model.spec,
            "torus": torus_model.spec,
            **dict(exhibit.details),
            "torus_scanned": negative.sample_size,
        },
    )

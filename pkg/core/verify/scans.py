"""Power-collision scans and the annihilator scan.

Layer: Application
Dependencies: core.brackets, core.intersections

An (alpha, beta)-intersection point P with conjugator g is also an
(alpha^m, beta)-intersection point: the engine lists it with the same
conjugator among the points of (alpha^m, beta).
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

from core.brackets import TWG_FLAVORS, ChainHat, loop_product, twg_bracket
from core.cyclic_words import ClassTilde, CyclicWord, format_word, power, primitive_root
from core.errors import DomainError, UnstableEnumerationError
from core.intersections import IntersectionEngine, IntersectionPoint, engine_for
from core.results import AnnihilatorRecord, AnnihilatorReport, CheckReport, CollisionReport
from core.surface_model import SurfaceModel, geodesic_length
from core.verify.context import VerifyContext, sample_classes

logger = logging.getLogger(__name__)

STARS = ("zero", "infty")

Crossing = tuple[CyclicWord, IntersectionPoint]


def power_point(
    engine: IntersectionEngine,
    alpha: CyclicWord,
    beta: CyclicWord,
    point: IntersectionPoint,
    m: int,
) -> IntersectionPoint:
    """P viewed as an (alpha^m, beta)-intersection point."""
    for candidate in engine.enumerate(power(alpha, m), beta):
        if candidate.conjugator == point.conjugator:
            return candidate
    raise DomainError(
        f"conjugator {format_word(point.conjugator)} is not a point of ({alpha}^{m}, {beta})"
    )


def power_star(
    engine: IntersectionEngine,
    alpha: CyclicWord,
    beta: CyclicWord,
    point: IntersectionPoint,
    m: int,
    star: str = "zero",
) -> ClassTilde:
    lifted = power_point(engine, alpha, beta, point, m)
    exponent = lifted.sign if star == "zero" else -lifted.sign
    return ClassTilde.of(loop_product(lifted.alpha, beta, lifted, exponent))


def _require_star(star: str) -> None:
    if star not in STARS:
        raise DomainError(f"unknown loop product {star!r}; expected zero or infty")


def same_location(
    first: IntersectionPoint, second: IntersectionPoint, period: float, tol: float
) -> bool:
    """Same point of the primitive geodesic alpha: positions agree modulo its length."""
    gap = abs(first.position - second.position) % period
    return min(gap, period - gap) < tol


def distinct_pairs(
    crossing: Sequence[Crossing], period: float, tol: float
) -> list[tuple[Crossing, Crossing]]:
    """Consecutive pairs after dropping repeats of an already listed location."""
    kept: list[Crossing] = []
    for item in crossing:
        if not any(same_location(item[1], other[1], period, tol) for other in kept):
            kept.append(item)
    return list(zip(kept, kept[1:], strict=False))


def primitive_pool(classes: Sequence[CyclicWord]) -> list[CyclicWord]:
    """Primitive classes, one per unoriented class."""
    seen: set[ClassTilde] = set()
    pool = []
    for w in classes:
        if primitive_root(w)[1] != 1 or ClassTilde.of(w) in seen:
            continue
        seen.add(ClassTilde.of(w))
        pool.append(w)
    return pool


def scan_power_collisions(
    model: SurfaceModel,
    alpha: CyclicWord,
    beta: CyclicWord,
    point: IntersectionPoint,
    class_target: CyclicWord | None,
    m_max: int = 8,
    *,
    star: str = "zero",
    engine: IntersectionEngine | None = None,
) -> CollisionReport:
    """Count m in [1, m_max] with (alpha^m *_P beta) equal to the target, unoriented.

    A fixed target allows at most two hits; class_target=None compares with
    alpha^m itself and allows at most one.
    """
    _require_star(star)
    source = engine or engine_for(model)
    hits: list[int] = []
    for m in range(1, m_max + 1):
        product = power_star(source, alpha, beta, point, m, star)
        target = ClassTilde.of(power(alpha, m) if class_target is None else class_target)
        if product == target:
            hits.append(m)
    return CollisionReport(
        mode=f"tilde-power-{star}" if class_target is None else f"fixed-{star}",
        alpha=str(alpha),
        beta=str(beta),
        conjugator=format_word(point.conjugator),
        target="alpha^m" if class_target is None else str(class_target),
        m_max=m_max,
        hits=tuple(hits),
        bound=1 if class_target is None else 2,
        angles=(("theta_P", point.angle),),
    )


def scan_cross_collisions(
    model: SurfaceModel,
    alpha: CyclicWord,
    first: Crossing,
    second: Crossing,
    m_max: int = 8,
    *,
    stars: tuple[str, str] = ("zero", "infty"),
    engine: IntersectionEngine | None = None,
) -> CollisionReport:
    """(alpha^m *_P beta1) against (alpha^m *_Q beta2) for a simple alpha and P != Q.

    Mixed stars allow one hit. Equal stars allow one hit unless some other
    (alpha, beta1)-point R has a larger angle than P; that alternative is
    evaluated from the enumerated angles and logged.
    """
    for star in stars:
        _require_star(star)
    if ClassTilde.of(alpha) not in {ClassTilde.of(w) for w in model.simple_classes}:
        raise DomainError(f"{alpha} is not in the simple list of {model.spec}")
    source = engine or engine_for(model)
    (beta1, p), (beta2, q) = first, second
    if same_location(p, q, geodesic_length(model, alpha), source.position_tolerance):
        raise DomainError(
            f"{beta1} at {format_word(p.conjugator)} and {beta2} at "
            f"{format_word(q.conjugator)} are the same point of {alpha}"
        )
    hits = [
        m
        for m in range(1, m_max + 1)
        if power_star(source, alpha, beta1, p, m, stars[0])
        == power_star(source, alpha, beta2, q, m, stars[1])
    ]
    angles: list[tuple[str, float]] = [("theta_P", p.angle), ("theta_Q", q.angle)]
    alternative = False
    if stars[0] == stars[1]:
        others = [r.angle for r in source.enumerate(alpha, beta1) if r.conjugator != p.conjugator]
        if others:
            angles.append(("max_theta_R", max(others)))
            alternative = max(others) > p.angle
        if len(hits) > 1:
            logger.info(
                f"[PowerScan] {len(hits)} hits for {alpha} with {beta1}, {beta2}; "
                f"angle alternative {'holds' if alternative else 'fails'}"
            )
    return CollisionReport(
        mode=f"{stars[0]}-{stars[1]}",
        alpha=str(alpha),
        beta=f"{beta1} | {beta2}",
        conjugator=f"{format_word(p.conjugator)} | {format_word(q.conjugator)}",
        target="cross",
        m_max=m_max,
        hits=tuple(hits),
        bound=1,
        angles=tuple(angles),
        alternative=alternative,
    )


def check_power_collisions(ctx: VerifyContext) -> CheckReport:
    """Collision bounds for fixed targets, alpha^m targets and cross scans."""
    model, engine = ctx.model, ctx.engine()
    rng = ctx.rng("power-collisions")
    failures: list[str] = []
    reports: list[CollisionReport] = []
    skipped = 0
    simple = [w for w in model.simple_classes if not model.is_peripheral(w)]
    pool = primitive_pool(sample_classes(rng, model.rank, 3, 10**9))
    for alpha in simple:
        candidates = [w for w in pool if ClassTilde.of(w) != ClassTilde.of(alpha)]
        betas = rng.sample(candidates, min(ctx.samples["collision_pairs"], len(candidates)))
        crossing: list[Crossing] = []
        for beta in betas:
            try:
                points = engine.enumerate(alpha, beta)
                for point in points:
                    crossing.append((beta, point))
                    for star in STARS:
                        target = power_star(engine, alpha, beta, point, 1, star).representative
                        reports.append(
                            scan_power_collisions(
                                model, alpha, beta, point, target, ctx.m_max,
                                star=star, engine=engine,
                            )
                        )
                        reports.append(
                            scan_power_collisions(
                                model, alpha, beta, point, None, ctx.m_max,
                                star=star, engine=engine,
                            )
                        )
            except UnstableEnumerationError as exc:
                skipped += 1
                ctx.log(f"[power-collisions] skipped ({alpha}, {beta}): {exc}")
        period = geodesic_length(model, alpha, ctx.tolerance)
        for (beta1, p), (beta2, q) in distinct_pairs(
            crossing, period, engine.position_tolerance
        ):
            for stars in (("zero", "infty"), ("zero", "zero"), ("infty", "infty")):
                try:
                    reports.append(
                        scan_cross_collisions(
                            model, alpha, (beta1, p), (beta2, q), ctx.m_max,
                            stars=stars, engine=engine,
                        )
                    )
                except UnstableEnumerationError as exc:
                    skipped += 1
                    ctx.log(f"[power-collisions] skipped cross scan: {exc}")

    for report in reports:
        if not report.within_bound:
            failures.append(
                f"{report.mode} {report.alpha} / {report.beta} at {report.conjugator}: "
                f"{report.count} hits {list(report.hits)} exceed {report.bound}"
                + (" (angle alternative holds)" if report.alternative else "")
            )
    for report in reports:
        ctx.log(f"[power-collisions] {report.mode} {report.alpha} {report.beta}: {report.count}")
    return CheckReport.from_failures(
        "power-collisions", failures, sampled=True, sample_size=len(reports), skipped=skipped,
        details={
            "m_max": ctx.m_max,
            "max_count": max((r.count for r in reports), default=0),
        },
    )


# --- annihilators ----------------------------------------------------------------


def annihilator_scan(
    model: SurfaceModel,
    beta: ChainHat,
    simple_list: Sequence[CyclicWord] | None = None,
    m_max: int = 5,
    *,
    engine: IntersectionEngine | None = None,
) -> AnnihilatorReport:
    """Zero pattern of [alpha^m, beta] in all four TWG flavors."""
    source = engine or engine_for(model)
    simple = model.simple_classes if simple_list is None else tuple(simple_list)
    records: list[AnnihilatorRecord] = []
    for alpha in simple:
        for flavor in TWG_FLAVORS:
            witness = None
            zero_up_to = 0
            for m in range(1, m_max + 1):
                bracket = twg_bracket(model, flavor, ChainHat.of(power(alpha, m)), beta, source)
                if bracket:
                    witness = m
                    break
                zero_up_to = m
            records.append(AnnihilatorRecord(str(alpha), flavor, zero_up_to, witness))
    label = " + ".join(f"{c}*[{w}]" for w, c in beta) or "0"
    report = AnnihilatorReport(label, m_max, tuple(records))
    logger.debug(f"[AnnihilatorScan] {label}: {report.verdict}")
    return report


def check_annihilators(ctx: VerifyContext) -> CheckReport:
    """Boundary class annihilates the simple list; a generator has a witness at m0 = 1."""
    model = ctx.reference("torus1")
    engine = ctx.engine(model)
    failures: list[str] = []
    boundary_class = next(w for w in model.simple_classes if model.is_peripheral(w))
    boundary = annihilator_scan(
        model, ChainHat.of(boundary_class), m_max=ctx.annihilator_m_max, engine=engine
    )
    if not boundary.annihilates:
        failures.append(f"boundary class: {boundary.verdict}")
    generator = model.simple_classes[1]
    witness = annihilator_scan(
        model, ChainHat.of(generator), (model.simple_classes[0],), ctx.annihilator_m_max,
        engine=engine,
    )
    if any(record.witness_m != 1 for record in witness.records):
        failures.append(f"generator {generator}: {witness.verdict}")
    return CheckReport.from_failures(
        "annihilator", failures, sampled=True,
        sample_size=len(boundary.records) + len(witness.records),
        details={"boundary": boundary.verdict, "generator": witness.verdict},
    )

"""Intersection points of closed geodesics as double cosets of crossing axes.

Layer: Domain
Dependencies: numpy (vectorized crossing test over the conjugator ball),
core.moebius, core.surface_model, core.cyclic_words

For classes alpha, beta with primitive roots u, v the engine walks every
reduced word g of length <= depth, keeps those for which g·A_v crosses A_u,
and groups them into double cosets <u> g <v> by exact word arithmetic.
Points of powers u^m, v^n are generated from the root-level points.
"""

from __future__ import annotations

import logging
import math
import threading
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache
from typing import Any

import numpy as np

from core.cyclic_words import (
    CyclicWord,
    GroupWord,
    enumerate_reduced_words,
    exponent_sums,
    format_word,
    invert,
    iota,
    multiply,
    primitive_root,
    word_power,
)
from core.errors import (
    CoincidentPositionsError,
    DomainError,
    RankMismatchError,
    UnstableEnumerationError,
)
from core.moebius import (
    DEFAULT_TOLERANCE,
    Axis,
    Isometry,
    axis,
    crossing_geometry,
    endpoints_interleave,
    normalizing_frame,
    translation_length,
)
from core.protocols import LoggerProtocol, NullLogger
from core.surface_model import SurfaceModel, represent

logger = logging.getLogger(__name__)

DEFAULT_DEPTH = 8
DEFAULT_POSITION_TOLERANCE = 1e-7


# --- single crossings --------------------------------------------------------


def axes_cross(first: Axis, second: Axis, tol: float = DEFAULT_TOLERANCE) -> bool:
    return endpoints_interleave(first, second, tol)


@dataclass(frozen=True)
class CrossingData:
    point: complex
    angle: float
    sign: int


def crossing_data(first: Axis, second: Axis, orientation: int = -1) -> CrossingData:
    """Crossing point, angle between forward directions, and orientation sign.

    The sign is +1 when (first, second) is positively oriented for the surface
    orientation, which is ``orientation`` times the complex orientation of H.
    """
    geometry = crossing_geometry(first, second)
    sign = orientation * geometry.standard_sign
    return CrossingData(geometry.point, geometry.forward_angle, sign)


def point_angle(forward_angle: float, sign: int) -> float:
    """Angle from beta to alpha, independent of the orientation of beta."""
    return math.pi - forward_angle if sign == 1 else forward_angle


# --- result values -----------------------------------------------------------


@dataclass(frozen=True)
class IntersectionPoint:
    """One (alpha, beta)-intersection point.

    The crossing is A_alpha ∩ g·A_beta for the conjugator g.
    """

    alpha: CyclicWord
    beta: CyclicWord
    conjugator: GroupWord
    position: float
    angle: float
    sign: int
    forward_angle: float
    location: complex

    def to_dict(self) -> dict[str, Any]:
        return {
            "conjugator": format_word(self.conjugator),
            "position": self.position,
            "angle": self.angle,
            "sign": self.sign,
            "point": [self.location.real, self.location.imag],
        }


@dataclass(frozen=True)
class IntersectionSet:
    """Intersection points of alpha and beta, sorted by conjugator in shortlex order."""

    alpha: CyclicWord
    beta: CyclicWord
    points: tuple[IntersectionPoint, ...]
    depth: int
    coinciding_axes: bool = False
    coincident_positions: int = 0

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[IntersectionPoint]:
        return iter(self.points)

    def __getitem__(self, index: int) -> IntersectionPoint:
        return self.points[index]

    @property
    def algebraic_number(self) -> int:
        return sum(point.sign for point in self.points)

    def to_dict(self) -> dict[str, Any]:
        return {
            "alpha": str(self.alpha),
            "beta": str(self.beta),
            "depth": self.depth,
            "coinciding_axes": self.coinciding_axes,
            "coincident_positions": self.coincident_positions,
            "geometric_number": len(self.points),
            "algebraic_number": self.algebraic_number,
            "points": [point.to_dict() for point in self.points],
        }


@dataclass(frozen=True)
class _RootPoint:
    word: GroupWord
    position: float
    forward_angle: float
    standard_sign: int


@dataclass(frozen=True)
class _RootData:
    points: tuple[_RootPoint, ...]
    root_length: float
    frame: Isometry
    coincident_positions: int


class ConjugatorBall:
    """All reduced words up to a depth with their matrices as numpy columns."""

    def __init__(self, model: SurfaceModel, depth: int):
        self.words: list[GroupWord] = enumerate_reduced_words(model.rank, depth)
        table = model.letter_images
        index: dict[GroupWord, int] = {(): 0}
        entries = np.empty((len(self.words), 4))
        entries[0] = (1.0, 0.0, 0.0, 1.0)
        for i, word in enumerate(self.words[1:], start=1):
            pa, pb, pc, pd = entries[index[word[:-1]]]
            g = table[word[-1]]
            entries[i] = (
                pa * g.a + pb * g.c,
                pa * g.b + pb * g.d,
                pc * g.a + pd * g.c,
                pc * g.b + pd * g.d,
            )
            index[word] = i
        self.a, self.b, self.c, self.d = entries.T


# --- engine -----------------------------------------------------------------


class IntersectionEngine:
    """Enumerates intersection points for one surface model.

    Usage:
        engine = IntersectionEngine(one_holed_torus(4.0))
        points = engine.enumerate(parse_class("a"), parse_class("b"))
    """

    def __init__(
        self,
        model: SurfaceModel,
        depth: int = DEFAULT_DEPTH,
        *,
        tol: float = DEFAULT_TOLERANCE,
        position_tolerance: float = DEFAULT_POSITION_TOLERANCE,
        strict_positions: bool = False,
        run_logger: LoggerProtocol | None = None,
    ):
        if depth < 1:
            raise DomainError(f"search depth must be positive, got {depth}")
        self._model = model
        self._depth = depth
        self._tol = tol
        self._position_tolerance = position_tolerance
        self._strict_positions = strict_positions
        self._run_logger = run_logger or NullLogger()
        self._lock = threading.Lock()
        self._ball: ConjugatorBall | None = None
        self._roots: dict[tuple[CyclicWord, CyclicWord], _RootData] = {}

    @property
    def model(self) -> SurfaceModel:
        return self._model

    @property
    def depth(self) -> int:
        return self._depth

    @property
    def tolerance(self) -> float:
        return self._tol

    @property
    def position_tolerance(self) -> float:
        return self._position_tolerance

    @property
    def strict_positions(self) -> bool:
        return self._strict_positions

    def _conjugator_ball(self) -> ConjugatorBall:
        with self._lock:
            if self._ball is None:
                self._ball = ConjugatorBall(self._model, self._depth)
                logger.debug(
                    f"[IntersectionEngine] {self._model.spec}: ball of "
                    f"{len(self._ball.words)} words at depth {self._depth}"
                )
            return self._ball

    def _validate(self, w: CyclicWord) -> None:
        if w.rank != self._model.rank:
            raise RankMismatchError(f"class {w} has rank {w.rank}, model rank {self._model.rank}")
        if w.is_trivial:
            raise DomainError("intersection points need nontrivial classes")

    def enumerate(self, alpha: CyclicWord, beta: CyclicWord) -> IntersectionSet:
        self._validate(alpha)
        self._validate(beta)
        u, m = primitive_root(alpha)
        v, n = primitive_root(beta)
        if v in (u, iota(u)):
            return IntersectionSet(alpha, beta, (), self._depth, coinciding_axes=True)

        root = self._root_data(u, v)
        points = []
        for base in root.points:
            sign = self._model.orientation * base.standard_sign
            angle = point_angle(base.forward_angle, sign)
            for j in range(m):
                position = base.position + j * root.root_length
                location = root.frame.inverse().apply(complex(0.0, math.exp(position)))
                for k in range(n):
                    conjugator = multiply(
                        word_power(u.letters, j), base.word, word_power(v.letters, k)
                    )
                    points.append(
                        IntersectionPoint(
                            alpha, beta, conjugator, position, angle, sign,
                            base.forward_angle, location,
                        )
                    )
        points.sort(key=lambda p: (len(p.conjugator), p.conjugator))
        return IntersectionSet(
            alpha, beta, tuple(points), self._depth,
            coincident_positions=root.coincident_positions,
        )

    def _root_data(self, u: CyclicWord, v: CyclicWord) -> _RootData:
        key = (u, v)
        with self._lock:
            cached = self._roots.get(key)
        if cached is not None:
            return cached
        data = self._compute_root_data(u, v)
        with self._lock:
            self._roots[key] = data
        return data

    def _compute_root_data(self, u: CyclicWord, v: CyclicWord) -> _RootData:
        ball = self._conjugator_ball()
        g_u = represent(self._model, u)
        axis_v = axis(represent(self._model, v), self._tol)
        frame = normalizing_frame(axis(g_u, self._tol))
        period = translation_length(g_u, self._tol)

        n00 = frame.a * ball.a + frame.b * ball.c
        n01 = frame.a * ball.b + frame.b * ball.d
        n10 = frame.c * ball.a + frame.d * ball.c
        n11 = frame.c * ball.b + frame.d * ball.d
        px, py = axis_v.repelling.homogeneous
        qx, qy = axis_v.attracting.homogeneous
        x_rep, y_rep = n00 * px + n01 * py, n10 * px + n11 * py
        x_att, y_att = n00 * qx + n01 * qy, n10 * qx + n11 * qy

        # In this frame A_u is {0, inf}: g·A_v crosses it iff its endpoints have opposite
        # signs. Endpoints within chordal distance tol of 0 or inf count as shared.
        r_rep = np.hypot(x_rep, y_rep)
        r_att = np.hypot(x_att, y_att)
        clear = (
            (np.abs(x_rep) > self._tol * r_rep)
            & (np.abs(y_rep) > self._tol * r_rep)
            & (np.abs(x_att) > self._tol * r_att)
            & (np.abs(y_att) > self._tol * r_att)
        )
        hits = np.nonzero(clear & ((x_rep * y_rep) * (x_att * y_att) < 0.0))[0]
        x1 = x_rep[hits] / y_rep[hits]
        x2 = x_att[hits] / y_att[hits]
        height = np.sqrt(-x1 * x2)
        centre = 0.5 * (x1 + x2)
        vx = np.where(x1 < 0.0, height, -height)
        vy = np.where(x1 < 0.0, centre, -centre)
        forward = np.arctan2(np.abs(vx), vy)
        standard = np.where(vx > 0.0, -1, 1)
        raw = np.log(height)

        reps: list[tuple[GroupWord, float, int]] = []
        for slot, row in enumerate(hits):
            word = ball.words[row]
            if self._find_coset(word, float(raw[slot]), reps, u, v, period) is None:
                reps.append((word, float(raw[slot]), slot))

        unstable = [word for word, _, _ in reps if len(word) >= self._depth]
        if unstable:
            raise UnstableEnumerationError(
                self._depth,
                f"double coset of ({u}, {v}) first reached by {format_word(unstable[0])!r}",
            )

        points = tuple(
            _RootPoint(
                word,
                float(np.mod(raw[slot], period)),
                float(forward[slot]),
                int(standard[slot]),
            )
            for word, _, slot in reps
        )
        collisions = self._monitor_positions(points, period, u, v)
        logger.debug(
            f"[IntersectionEngine] ({u}, {v}): {len(hits)} crossing conjugators, "
            f"{len(points)} double cosets"
        )
        return _RootData(points, period, frame, collisions)

    def _find_coset(
        self,
        word: GroupWord,
        raw: float,
        reps: Sequence[tuple[GroupWord, float, int]],
        u: CyclicWord,
        v: CyclicWord,
        period: float,
    ) -> GroupWord | None:
        # Positions only order the candidates; membership is decided on words.
        def offset(item: tuple[GroupWord, float, int]) -> float:
            shift = (raw - item[1]) / period
            return abs(shift - round(shift))

        for rep_word, rep_raw, _ in sorted(reps, key=offset):
            hint = round((raw - rep_raw) / period)
            if same_double_coset(rep_word, word, u.letters, v.letters, hint):
                return rep_word
        return None

    def _monitor_positions(
        self, points: Sequence[_RootPoint], period: float, u: CyclicWord, v: CyclicWord
    ) -> int:
        ordered = sorted(p.position for p in points)
        if len(ordered) < 2:
            return 0
        gaps = [b - a for a, b in zip(ordered, ordered[1:], strict=False)]
        gaps.append(ordered[0] + period - ordered[-1])
        collisions = sum(1 for gap in gaps if gap < self._position_tolerance)
        if collisions:
            message = (
                f"[IntersectionEngine] ({u}, {v}): {collisions} coincident positions "
                f"(intersection point of multiplicity > 2)"
            )
            if self._strict_positions:
                raise CoincidentPositionsError(message)
            logger.warning(message)
            self._run_logger.log(message)
        return collisions


def same_double_coset(
    first: GroupWord,
    second: GroupWord,
    u: GroupWord,
    v: GroupWord,
    hint: int = 0,
) -> bool:
    """Exact test: second = u^k first v^l for some integers k, l."""
    bound = (2 * (len(first) + len(second)) + 2 * len(v)) // len(u) + 3
    order = sorted(range(-bound, bound + 1), key=lambda k: (abs(k - hint), k))
    if abs(hint) > bound:
        order.insert(0, hint)
    first_inverse = invert(first)
    for k in order:
        rest = multiply(first_inverse, word_power(u, -k), second)
        if _is_power_of(rest, v):
            return True
    return False


def _is_power_of(word: GroupWord, base: GroupWord) -> bool:
    if not word:
        return True
    if len(word) % len(base):
        return False
    times = len(word) // len(base)
    return word == base * times or word == invert(base) * times


# --- module-level API --------------------------------------------------------


@lru_cache(maxsize=32)
def engine_for(model: SurfaceModel, depth: int = DEFAULT_DEPTH) -> IntersectionEngine:
    """Shared engine per (model, depth)."""
    return IntersectionEngine(model, depth)


def enumerate_intersections(
    model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord, depth: int | None = None
) -> IntersectionSet:
    return engine_for(model, depth or DEFAULT_DEPTH).enumerate(alpha, beta)


def geometric_intersection_number(
    model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord, depth: int | None = None
) -> int:
    return len(enumerate_intersections(model, alpha, beta, depth))


def algebraic_intersection_number(
    model: SurfaceModel, alpha: CyclicWord, beta: CyclicWord, depth: int | None = None
) -> int:
    if alpha.is_trivial or beta.is_trivial:
        return 0
    return enumerate_intersections(model, alpha, beta, depth).algebraic_number


def homological_intersection(alpha: CyclicWord, beta: CyclicWord) -> int:
    """p1*q2 - p2*q1 from exponent sums (rank-2 cross-check)."""
    if alpha.rank != 2 or beta.rank != 2:
        raise RankMismatchError("homological cross-check is defined for rank 2")
    p1, p2 = exponent_sums(alpha)
    q1, q2 = exponent_sums(beta)
    return p1 * q2 - p2 * q1


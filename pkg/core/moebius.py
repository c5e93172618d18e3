"""PSL(2,R) numerics on the upper half plane.

Layer: Domain
Dependencies: numpy (array views for batched products)

An Isometry stores a unit-determinant matrix; it represents the matrix up to
global sign, so every predicate here is sign invariant. Boundary points carry
an explicit infinity tag: the c = 0 case is never handled by division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from core.errors import AxesDoNotCrossError, DomainError, NotHyperbolicError

DEFAULT_TOLERANCE = 1e-9
DET_TOLERANCE = 1e-12


@dataclass(frozen=True)
class BoundaryPoint:
    """A point of the extended real line."""

    value: float = 0.0
    at_infinity: bool = False

    @classmethod
    def finite(cls, value: float) -> BoundaryPoint:
        return cls(float(value), False)

    @classmethod
    def infinity(cls) -> BoundaryPoint:
        return cls(0.0, True)

    @property
    def homogeneous(self) -> tuple[float, float]:
        return (1.0, 0.0) if self.at_infinity else (self.value, 1.0)

    @classmethod
    def from_homogeneous(cls, x: float, y: float) -> BoundaryPoint:
        if y == 0.0:
            return cls.infinity()
        return cls.finite(x / y)

    def __str__(self) -> str:
        return "inf" if self.at_infinity else repr(self.value)


@dataclass(frozen=True)
class Isometry:
    """Element of PSL(2,R), renormalized to determinant 1 on construction."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self) -> None:
        det = self.a * self.d - self.b * self.c
        if not math.isfinite(det) or det <= 0.0:
            raise DomainError(f"matrix determinant must be positive, got {det!r}")
        if abs(det - 1.0) > DET_TOLERANCE:
            scale = 1.0 / math.sqrt(det)
            object.__setattr__(self, "a", self.a * scale)
            object.__setattr__(self, "b", self.b * scale)
            object.__setattr__(self, "c", self.c * scale)
            object.__setattr__(self, "d", self.d * scale)

    @classmethod
    def identity(cls) -> Isometry:
        return cls(1.0, 0.0, 0.0, 1.0)

    @classmethod
    def from_array(cls, matrix: np.ndarray | list[list[float]]) -> Isometry:
        m = np.asarray(matrix, dtype=float)
        if m.shape != (2, 2):
            raise DomainError(f"expected a 2x2 matrix, got shape {m.shape}")
        return cls(float(m[0, 0]), float(m[0, 1]), float(m[1, 0]), float(m[1, 1]))

    def as_array(self) -> np.ndarray:
        return np.array([[self.a, self.b], [self.c, self.d]])

    @property
    def trace(self) -> float:
        return self.a + self.d

    def compose(self, other: Isometry) -> Isometry:
        """self after other (matrix product self @ other)."""
        return Isometry(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> Isometry:
        return Isometry(self.d, -self.b, -self.c, self.a)

    def power(self, n: int) -> Isometry:
        base = self if n >= 0 else self.inverse()
        result = Isometry.identity()
        for _ in range(abs(n)):
            result = result.compose(base)
        return result

    def apply(self, z: complex) -> complex:
        return (self.a * z + self.b) / (self.c * z + self.d)

    def apply_boundary(self, point: BoundaryPoint) -> BoundaryPoint:
        x, y = point.homogeneous
        return BoundaryPoint.from_homogeneous(self.a * x + self.b * y, self.c * x + self.d * y)

    def is_close(self, other: Isometry, tol: float = 1e-10) -> bool:
        """Equality in PSL(2,R): compare against both lifts of other."""
        mine = self.as_array()
        theirs = other.as_array()
        return bool(
            np.max(np.abs(mine - theirs)) <= tol or np.max(np.abs(mine + theirs)) <= tol
        )


def compose(g: Isometry, h: Isometry) -> Isometry:
    return g.compose(h)


def inverse(g: Isometry) -> Isometry:
    return g.inverse()


class IsometryType(Enum):
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    IDENTITY = "identity"


def classify(g: Isometry, tol: float = DEFAULT_TOLERANCE) -> IsometryType:
    excess = abs(g.trace) - 2.0
    if excess > tol:
        return IsometryType.HYPERBOLIC
    if excess < -tol:
        return IsometryType.ELLIPTIC
    if abs(g.b) <= tol and abs(g.c) <= tol and abs(g.a - g.d) <= tol:
        return IsometryType.IDENTITY
    return IsometryType.PARABOLIC


def _require_hyperbolic(g: Isometry, tol: float) -> None:
    kind = classify(g, tol)
    if kind is not IsometryType.HYPERBOLIC:
        raise NotHyperbolicError(f"isometry with trace {g.trace:.12g} is {kind.value}")


def translation_length(g: Isometry, tol: float = DEFAULT_TOLERANCE) -> float:
    _require_hyperbolic(g, tol)
    return 2.0 * math.acosh(abs(g.trace) / 2.0)


def hyperbolic_distance(z: complex, w: complex) -> float:
    if z.imag <= 0 or w.imag <= 0:
        raise DomainError("points must lie in the upper half plane")
    return math.acosh(1.0 + abs(z - w) ** 2 / (2.0 * z.imag * w.imag))


@dataclass(frozen=True)
class Axis:
    """Oriented invariant geodesic, from the repelling to the attracting endpoint."""

    repelling: BoundaryPoint
    attracting: BoundaryPoint

    def reversed(self) -> Axis:
        return Axis(self.attracting, self.repelling)

    @classmethod
    def between(cls, p: float | None, q: float | None) -> Axis:
        """Convenience constructor; None stands for infinity."""

        def point(x: float | None) -> BoundaryPoint:
            return BoundaryPoint.infinity() if x is None else BoundaryPoint.finite(x)

        return cls(point(p), point(q))


def axis(g: Isometry, tol: float = DEFAULT_TOLERANCE) -> Axis:
    """Fixed points of g; the attracting one has |g'(z)| < 1."""
    _require_hyperbolic(g, tol)
    a, b, c, d = g.a, g.b, g.c, g.d
    if c == 0.0:
        finite = BoundaryPoint.finite(b / (d - a))
        if abs(a) > abs(d):
            return Axis(finite, BoundaryPoint.infinity())
        return Axis(BoundaryPoint.infinity(), finite)
    root = math.sqrt((a + d) ** 2 - 4.0)
    q = (a - d) + math.copysign(root, a - d)
    z1 = q / (2.0 * c)
    z2 = -2.0 * b / q
    # g'(z) = 1 / (cz + d)^2
    if abs(c * z1 + d) > 1.0:
        return Axis(BoundaryPoint.finite(z2), BoundaryPoint.finite(z1))
    return Axis(BoundaryPoint.finite(z1), BoundaryPoint.finite(z2))


def normalizing_frame(ax: Axis) -> Isometry:
    """Orientation-preserving map sending repelling -> 0 and attracting -> infinity."""
    p, q = ax.repelling, ax.attracting
    if p.at_infinity and q.at_infinity:
        raise DomainError("degenerate axis with both endpoints at infinity")
    if q.at_infinity:
        return Isometry(1.0, -p.value, 0.0, 1.0)
    if p.at_infinity:
        return Isometry(0.0, -1.0, 1.0, -q.value)
    if p.value > q.value:
        return Isometry(1.0, -p.value, 1.0, -q.value)
    if p.value < q.value:
        return Isometry(-1.0, p.value, 1.0, -q.value)
    raise DomainError("degenerate axis with equal endpoints")


def _unit(point: BoundaryPoint) -> tuple[float, float]:
    x, y = point.homogeneous
    norm = math.hypot(x, y)
    return x / norm, y / norm


def _bracket(u: tuple[float, float], v: tuple[float, float]) -> float:
    return u[0] * v[1] - u[1] * v[0]


def endpoints_interleave(first: Axis, second: Axis, tol: float = DEFAULT_TOLERANCE) -> bool:
    """Circular-order test on unit homogeneous coordinates.

    Each bracket is the chordal distance between two endpoints, so endpoints
    closer than tol count as shared and give False.
    """
    p1, q1 = _unit(first.repelling), _unit(first.attracting)
    p2, q2 = _unit(second.repelling), _unit(second.attracting)
    brackets = (_bracket(p1, p2), _bracket(q1, q2), _bracket(p1, q2), _bracket(q1, p2))
    if min(abs(value) for value in brackets) <= tol:
        return False
    return math.prod(brackets) < 0.0


@dataclass(frozen=True)
class CrossingGeometry:
    """Crossing of two oriented geodesics, read in the frame normalizing the first.

    forward_angle is the angle between the forward directions, in (0, pi).
    standard_sign is +1 when (first, second) is positively oriented for the
    complex orientation of the upper half plane.
    """

    point: complex
    forward_angle: float
    standard_sign: int
    height: float


def crossing_geometry(
    first: Axis, second: Axis, tol: float = DEFAULT_TOLERANCE
) -> CrossingGeometry:
    if not endpoints_interleave(first, second, tol):
        raise AxesDoNotCrossError("axes do not cross transversally")
    frame = normalizing_frame(first)
    x1 = frame.apply_boundary(second.repelling)
    x2 = frame.apply_boundary(second.attracting)
    if x1.at_infinity or x2.at_infinity:
        raise AxesDoNotCrossError("axes share an endpoint")
    height = math.sqrt(-x1.value * x2.value)
    centre = 0.5 * (x1.value + x2.value)
    # Tangent of the second geodesic at i*height; the first one points straight up.
    vx, vy = (height, centre) if x1.value < 0.0 else (-height, -centre)
    angle = math.atan2(abs(vx), vy)
    point = frame.inverse().apply(complex(0.0, height))
    return CrossingGeometry(point, angle, -1 if vx > 0.0 else 1, height)


def check_cosh_product(g: Isometry, h: Isometry, tol: float = DEFAULT_TOLERANCE) -> float:
    """Residual of cosh(t_gh/2) = cosh cosh + sinh sinh cos(theta) for crossing axes."""
    axis_g, axis_h = axis(g, tol), axis(h, tol)
    geometry = crossing_geometry(axis_g, axis_h, tol)
    half_g = translation_length(g, tol) / 2.0
    half_h = translation_length(h, tol) / 2.0
    predicted = math.cosh(half_g) * math.cosh(half_h) + math.sinh(half_g) * math.sinh(
        half_h
    ) * math.cos(geometry.forward_angle)
    return abs(abs(g.compose(h).trace) / 2.0 - predicted)

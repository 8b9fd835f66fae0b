"""Moebius transformations on the Riemann sphere.

Maps are stored as unit-determinant 2x2 complex matrices, understood as
elements of PSL(2,C): a map and its negative are the same transformation,
so everything downstream (classification, fixed points, multipliers)
works with the square of the trace, never the trace itself.

Point comparison on the sphere is always by chordal distance against a
tolerance, never bitwise; tolerances are injectable via `Tolerances`.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum


class SingularMatrix(ValueError):
    """Matrix with (numerically) vanishing determinant."""


class IdentityMap(ValueError):
    """Operation undefined for the identity: every point is fixed."""


class NotDiagonalizable(ValueError):
    """Multiplier requested for a parabolic or identity element."""


class DegenerateQuadruple(ValueError):
    """Cross-ratio degenerated to 0, 1 or infinity in strict mode."""


@dataclass(frozen=True)
class Tolerances:
    """Comparison thresholds: `chordal` for points on the sphere,
    `algebraic` for matrix entries, traces and multipliers."""

    chordal: float = 1e-9
    algebraic: float = 1e-12


DEFAULT_TOL = Tolerances()


def _check_finite(z: complex) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"not a finite complex number: {z!r}")
    return z


class SpherePoint:
    """A point of the Riemann sphere: a finite complex number or infinity."""

    __slots__ = ("_value",)

    def __init__(self, value: complex | None):
        # None encodes the point at infinity
        self._value = None if value is None else _check_finite(value)

    @classmethod
    def infinity(cls) -> "SpherePoint":
        return cls(None)

    @classmethod
    def of(cls, value) -> "SpherePoint":
        """Coerce a complex number, the string "inf", or a SpherePoint."""
        if isinstance(value, SpherePoint):
            return value
        if value is None or (isinstance(value, str) and value == "inf"):
            return cls(None)
        return cls(value)

    @property
    def is_infinity(self) -> bool:
        return self._value is None

    @property
    def value(self) -> complex:
        if self._value is None:
            raise ValueError("point at infinity has no finite value")
        return self._value

    def isclose(self, other: "SpherePoint", tol: float = DEFAULT_TOL.chordal) -> bool:
        return chordal_distance(self, other) < tol

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpherePoint):
            return NotImplemented
        return self.isclose(other)

    __hash__ = None  # equality is metric, not structural

    def __repr__(self) -> str:
        return "SpherePoint(inf)" if self.is_infinity else f"SpherePoint({self._value!r})"


INFINITY = SpherePoint.infinity()


def chordal_distance(p: SpherePoint, q: SpherePoint) -> float:
    """Chordal metric on the sphere of diameter 2:
    d(p,q) = 2|p-q| / sqrt((1+|p|^2)(1+|q|^2)), with the usual limits
    at infinity.  Symmetric, zero iff equal, bounded by 2."""
    p, q = SpherePoint.of(p), SpherePoint.of(q)
    if p.is_infinity and q.is_infinity:
        return 0.0
    if p.is_infinity or q.is_infinity:
        z = q.value if p.is_infinity else p.value
        return 2.0 / math.sqrt(1.0 + abs(z) ** 2)
    a, b = p.value, q.value
    return 2.0 * abs(a - b) / math.sqrt((1.0 + abs(a) ** 2) * (1.0 + abs(b) ** 2))


class MoebiusClass(Enum):
    IDENTITY = "identity"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    LOXODROMIC = "loxodromic"


class MoebiusMap:
    """z -> (az+b)/(cz+d) with ad-bc normalized to 1.

    The stored representative is one of the pair {M, -M}; no consumer may
    depend on which.
    """

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: complex, b: complex, c: complex, d: complex):
        a, b, c, d = (_check_finite(x) for x in (a, b, c, d))
        det = a * d - b * c
        if abs(det) < 1e-30:
            raise SingularMatrix(f"determinant {det!r} too close to zero")
        s = cmath.sqrt(det)
        self.a, self.b, self.c, self.d = a / s, b / s, c / s, d / s

    @classmethod
    def identity(cls) -> "MoebiusMap":
        return cls(1, 0, 0, 1)

    @classmethod
    def affine(cls, mu: complex, c: complex = 0) -> "MoebiusMap":
        """z -> mu*z + c (mu nonzero)."""
        return cls(mu, c, 0, 1)

    @classmethod
    def translation(cls, t: complex) -> "MoebiusMap":
        return cls(1, t, 0, 1)

    @classmethod
    def scaling(cls, mu: complex) -> "MoebiusMap":
        return cls(mu, 0, 0, 1)

    @classmethod
    def from_matrix(cls, m) -> "MoebiusMap":
        (a, b), (c, d) = m
        return cls(a, b, c, d)

    def matrix(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return ((self.a, self.b), (self.c, self.d))

    def inverse(self) -> "MoebiusMap":
        return MoebiusMap(self.d, -self.b, -self.c, self.a)

    @property
    def trace_squared(self) -> complex:
        return (self.a + self.d) ** 2

    def is_identity(self, tol: Tolerances = DEFAULT_TOL) -> bool:
        """True iff the map equals +-I within tolerance."""
        eps = tol.algebraic
        return (
            abs(self.b) < eps
            and abs(self.c) < eps
            and abs(self.a - self.d) < eps
            and abs(self.trace_squared - 4) < eps
        )

    def is_affine(self, tol: Tolerances = DEFAULT_TOL) -> bool:
        return abs(self.c) < tol.algebraic

    def affine_parts(self) -> tuple[complex, complex]:
        """(mu, C) with the map acting as z -> mu*z + C; requires c = 0."""
        if not self.is_affine():
            raise ValueError("map is not affine")
        return self.a / self.d, self.b / self.d

    def apply(self, p: SpherePoint) -> SpherePoint:
        """Total application: the pole maps to infinity."""
        p = SpherePoint.of(p)
        if p.is_infinity:
            if abs(self.c) == 0.0:
                return INFINITY
            return SpherePoint(self.a / self.c)
        z = p.value
        den = self.c * z + self.d
        num = self.a * z + self.b
        # A unit-determinant map cannot send a point to a 0/0 form; a
        # vanishing denominator or an overflowing quotient means the pole.
        if den == 0:
            return INFINITY
        w = num / den
        if not (math.isfinite(w.real) and math.isfinite(w.imag)):
            return INFINITY
        return SpherePoint(w)

    def __call__(self, p) -> SpherePoint:
        return self.apply(SpherePoint.of(p))

    def __matmul__(self, other: "MoebiusMap") -> "MoebiusMap":
        return compose(self, other)

    def derivative_at(self, p: SpherePoint) -> complex:
        """d/dz of the map at a finite point, or the multiplier at a fixed
        infinity (only meaningful when c = 0)."""
        p = SpherePoint.of(p)
        if p.is_infinity:
            if abs(self.c) > 0:
                raise ValueError("derivative at infinity needs an affine map")
            return self.d / self.a
        return 1.0 / (self.c * p.value + self.d) ** 2

    def __repr__(self) -> str:
        return f"MoebiusMap({self.a!r}, {self.b!r}, {self.c!r}, {self.d!r})"


def compose(f: MoebiusMap, g: MoebiusMap) -> MoebiusMap:
    """The map x -> f(g(x)); matrix product with the determinant renormalized."""
    return MoebiusMap(
        f.a * g.a + f.b * g.c,
        f.a * g.b + f.b * g.d,
        f.c * g.a + f.d * g.c,
        f.c * g.b + f.d * g.d,
    )


def classify(m: MoebiusMap, tol: Tolerances = DEFAULT_TOL) -> MoebiusClass:
    """Trace-squared classification.

    Identity iff m = +-I; parabolic iff tr^2 = 4; elliptic iff tr^2 is real
    in [0,4); hyperbolic iff tr^2 is real and > 4; loxodromic otherwise.
    Classification is discontinuous, so ties go to the declared rule:
    |tr^2 - 4| < eps counts as parabolic.
    """
    if m.is_identity(tol):
        return MoebiusClass.IDENTITY
    t2 = m.trace_squared
    eps = tol.algebraic
    if abs(t2 - 4) < eps:
        return MoebiusClass.PARABOLIC
    if abs(t2.imag) < eps:
        x = t2.real
        if -eps < x < 4:
            return MoebiusClass.ELLIPTIC
        if x > 4:
            return MoebiusClass.HYPERBOLIC
    return MoebiusClass.LOXODROMIC


def fixed_points(m: MoebiusMap, tol: Tolerances = DEFAULT_TOL) -> list[SpherePoint]:
    """Roots of the fixed-point equation, one point for a parabolic map,
    two distinct points otherwise.  Raises IdentityMap for +-I."""
    if m.is_identity(tol):
        raise IdentityMap("every point is fixed")
    a, b, c, d = m.a, m.b, m.c, m.d
    parabolic = classify(m, tol) is MoebiusClass.PARABOLIC
    if abs(c) < tol.algebraic:
        # affine: infinity is always fixed
        if parabolic or abs(a - d) < tol.algebraic:
            return [INFINITY]
        return [SpherePoint(b / (d - a)), INFINITY]
    if parabolic:
        return [SpherePoint((a - d) / (2 * c))]
    # c*z^2 + (d-a)*z - b = 0; for unit determinant the discriminant is tr^2 - 4
    s = cmath.sqrt(m.trace_squared - 4)
    n1, n2 = (a - d) + s, (a - d) - s
    if abs(n1) >= abs(n2):
        z1 = n1 / (2 * c)
    else:
        z1 = n2 / (2 * c)
    # the product of the roots is -b/c; recover the small root stably
    if abs(z1) > 0:
        z2 = (-b / c) / z1
    else:
        z2 = (a - d) / c
    return [SpherePoint(z1), SpherePoint(z2)]


def fixed_points_with_multipliers(
    m: MoebiusMap, tol: Tolerances = DEFAULT_TOL
) -> list[tuple[SpherePoint, complex]]:
    """Fixed points paired with the derivative of the map there."""
    return [(p, m.derivative_at(p)) for p in fixed_points(m, tol)]


def multiplier_pair(m: MoebiusMap, tol: Tolerances = DEFAULT_TOL) -> tuple[complex, complex]:
    """The unordered pair {mu, 1/mu} of derivatives at the two fixed points.

    Raises NotDiagonalizable for identity and parabolic maps.
    """
    cls = classify(m, tol)
    if cls in (MoebiusClass.IDENTITY, MoebiusClass.PARABOLIC):
        raise NotDiagonalizable(f"{cls.value} map has no multiplier pair")
    t = m.a + m.d
    kappa = (t + cmath.sqrt(t * t - 4)) / 2
    mu = kappa * kappa
    return (mu, 1.0 / mu)


def _h2(p: SpherePoint) -> tuple[complex, complex]:
    # homogeneous coordinates (z : w)
    return (1.0 + 0j, 0j) if p.is_infinity else (p.value, 1.0 + 0j)


def _det2(p: SpherePoint, q: SpherePoint) -> complex:
    (zp, wp), (zq, wq) = _h2(p), _h2(q)
    return zp * wq - zq * wp


def cross_ratio(
    a: SpherePoint,
    b: SpherePoint,
    c: SpherePoint,
    d: SpherePoint,
    strict: bool = False,
    tol: Tolerances = DEFAULT_TOL,
) -> SpherePoint:
    """(a-b)(c-d) / ((b-c)(d-a)), computed homogeneously so that infinite
    arguments take their limit values.  Moebius-invariant.

    In strict mode a value of 0, 1 or infinity (the coincident-point
    degenerations) raises DegenerateQuadruple; an indeterminate 0/0 form
    raises it regardless of mode.
    """
    a, b, c, d = (SpherePoint.of(p) for p in (a, b, c, d))
    num = _det2(a, b) * _det2(c, d)
    den = _det2(b, c) * _det2(d, a)
    if abs(num) == 0.0 and abs(den) == 0.0:
        raise DegenerateQuadruple("indeterminate cross-ratio (two coincidences)")
    if abs(den) <= 1e-15 * abs(num):
        value = INFINITY
    else:
        value = SpherePoint(num / den)
    if strict and (
        value.is_infinity
        or abs(value.value) < tol.chordal
        or abs(value.value - 1) < tol.chordal
    ):
        raise DegenerateQuadruple(f"cross-ratio degenerated to {value!r}")
    return value

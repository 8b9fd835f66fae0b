"""End-local grafting calculus at cusps and geodesic boundary ends.

Grafting data at one end is a finite family of weighted leaves entering
the end.  From it we compute the peripheral monodromy (an affine map
z -> mu*z + C up to conjugacy), the signed exponent, the pole order of
the induced quadratic differential, and the signed complex parameter
c = l + i*alpha, and we invert a peripheral monodromy back to end data.

Ground truth for monodromy is direct composition of the bending elements
E_1(a_1) ... E_r(a_r) T (deck element applied first).  The telescoping
closed form for the cusp constant agrees with composition exactly and is
kept as a cross-check; at geodesic ends only the conjugacy class of the
closed-form map is meaningful, and maps are compared by trace squared.

Weights may carry an exact rational multiple of pi, which makes the
total-weight-in-2*pi*Z test (the simple-pole knife edge) exact.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .moebius import (
    DEFAULT_TOL,
    MoebiusClass,
    MoebiusMap,
    Tolerances,
    classify,
    compose,
    multiplier_pair,
)

TWO_PI = 2.0 * math.pi


class EmptySpec(ValueError):
    """Operation needs at least one grafting leaf."""


class Spiral(Enum):
    CLOCKWISE = "clockwise"
    ANTICLOCKWISE = "anticlockwise"


class EndType(Enum):
    CUSP = "cusp"
    GEODESIC = "geodesic"


class PoleOrder(Enum):
    NO_POLE = "no_pole"
    ORDER_1 = "order_1"
    ORDER_2 = "order_2"


@dataclass(frozen=True)
class Weight:
    """A positive grafting weight in radians.

    `pi_multiple`, when present, records the weight exactly as that
    rational multiple of pi; `radians` is then derived.  Exactness only
    matters at the alpha in 2*pi*Z knife edge.
    """

    radians: float
    pi_multiple: Fraction | None = None

    def __post_init__(self):
        if self.pi_multiple is not None:
            object.__setattr__(self, "radians", float(self.pi_multiple) * math.pi)
        if not (self.radians > 0 and math.isfinite(self.radians)):
            raise ValueError(f"weight must be a positive finite angle, got {self.radians!r}")

    @classmethod
    def of(cls, radians: float) -> "Weight":
        return cls(float(radians))

    @classmethod
    def pi_times(cls, q) -> "Weight":
        q = Fraction(q)
        return cls(0.0, q)


def _as_weights(weights) -> tuple[Weight, ...]:
    return tuple(w if isinstance(w, Weight) else Weight.of(w) for w in weights)


def _check_positions(positions, low: float, high: float) -> tuple[float, ...]:
    positions = tuple(float(a) for a in positions)
    prev = low - 1.0
    for a in positions:
        if not (low <= a < high):
            raise ValueError(f"position {a} outside [{low}, {high})")
        if a <= prev:
            raise ValueError("positions must be strictly increasing")
        prev = a
    return positions


@dataclass(frozen=True)
class CuspGraftSpec:
    """Leaves entering a cusp: positions 0 <= a_1 < ... < a_r < 1 in the
    unit-translation fundamental domain, with positive weights."""

    positions: tuple[float, ...]
    weights: tuple[Weight, ...]

    def __post_init__(self):
        object.__setattr__(self, "positions", _check_positions(self.positions, 0.0, 1.0))
        object.__setattr__(self, "weights", _as_weights(self.weights))
        if len(self.positions) != len(self.weights):
            raise ValueError("positions and weights must have equal length")

    @property
    def leaf_count(self) -> int:
        return len(self.positions)

    @property
    def total_weight(self) -> float:
        return math.fsum(w.radians for w in self.weights)

    def total_pi_multiple(self) -> Fraction | None:
        """Exact total weight as a multiple of pi, if every leaf carries one."""
        if any(w.pi_multiple is None for w in self.weights):
            return None
        return sum((w.pi_multiple for w in self.weights), Fraction(0))


@dataclass(frozen=True)
class GeodesicGraftSpec:
    """Leaves spiralling onto a geodesic boundary of length l > 0,
    positions 1 <= a_1 < ... < a_r < e^l in the deck fundamental domain."""

    boundary_length: float
    positions: tuple[float, ...]
    weights: tuple[Weight, ...]
    spiral: Spiral = Spiral.ANTICLOCKWISE

    def __post_init__(self):
        if not (self.boundary_length > 0 and math.isfinite(self.boundary_length)):
            raise ValueError("boundary length must be positive and finite")
        object.__setattr__(
            self, "positions", _check_positions(self.positions, 1.0, self.deck_multiplier)
        )
        object.__setattr__(self, "weights", _as_weights(self.weights))
        if len(self.positions) != len(self.weights):
            raise ValueError("positions and weights must have equal length")

    @property
    def deck_multiplier(self) -> float:
        return math.exp(self.boundary_length)

    @property
    def leaf_count(self) -> int:
        return len(self.positions)

    @property
    def total_weight(self) -> float:
        return math.fsum(w.radians for w in self.weights)

    def total_pi_multiple(self) -> Fraction | None:
        if any(w.pi_multiple is None for w in self.weights):
            return None
        return sum((w.pi_multiple for w in self.weights), Fraction(0))


GraftSpec = CuspGraftSpec | GeodesicGraftSpec


@dataclass(frozen=True)
class EndMonodromyResult:
    """Peripheral monodromy of a grafted end in affine form z -> mu*z + C."""

    monodromy: MoebiusMap
    multiplier: complex
    constant: complex
    total_weight: float


def elliptic_about(w: float, angle: float) -> MoebiusMap:
    """The bending element about the axis through w and infinity:
    z -> e^{-i*angle} (z - w) + w, a clockwise rotation by `angle`."""
    if not angle > 0:
        raise ValueError("angle must be positive")
    om_inv = cmath.exp(-1j * angle)
    return MoebiusMap.affine(om_inv, w * (1 - om_inv))


def _bending_element(w: float, angle: float, conjugate: bool) -> MoebiusMap:
    # z -> e^{+-i*angle}(z - w) + w; the plain (-) form is elliptic_about
    om = cmath.exp((1j if conjugate else -1j) * angle)
    return MoebiusMap.affine(om, w * (1 - om))


def _compose_end(spec: GraftSpec, deck: MoebiusMap, conjugate: bool) -> MoebiusMap:
    # E_1(a_1) ... E_r(a_r) T, deck element T applied first.
    m = deck
    for a, w in reversed(list(zip(spec.positions, spec.weights))):
        m = compose(_bending_element(a, w.radians, conjugate), m)
    return m


def cusp_monodromy(spec: CuspGraftSpec) -> EndMonodromyResult:
    """Peripheral monodromy of a grafted cusp by direct composition of
    E_1(a_1) ... E_r(a_r) T with T: z -> z+1. The multiplier is
    e^{-i*alpha} for total weight alpha; r = 0 gives z -> z+1."""
    m = _compose_end(spec, MoebiusMap.translation(1), conjugate=False)
    mu, const = m.affine_parts()
    return EndMonodromyResult(
        monodromy=m,
        multiplier=mu,
        constant=const,
        total_weight=spec.total_weight,
    )


def cusp_c_closed_form(spec: CuspGraftSpec) -> complex:
    """Telescoped form of the cusp monodromy constant,
    c = a_1 + sum_i w_1^{-1}...w_i^{-1} (a_{i+1} - a_i) with a_{r+1} = 1.
    Equals cusp_monodromy(spec).constant up to roundoff."""
    if spec.leaf_count == 0:
        raise EmptySpec("closed form needs at least one leaf")
    ext = list(spec.positions) + [1.0]
    c: complex = ext[0]
    prod: complex = 1 + 0j
    for i, w in enumerate(spec.weights):
        prod *= cmath.exp(-1j * w.radians)
        c += prod * (ext[i + 1] - ext[i])
    return c


def geodesic_monodromy(spec: GeodesicGraftSpec) -> EndMonodromyResult:
    """Peripheral monodromy of a grafted geodesic end by direct composition
    with T: z -> lambda*z, lambda = e^l.  Anticlockwise spiralling uses the
    bending elements e^{-i*alpha_j}, clockwise their conjugates, so the
    multiplier is lambda*e^{-i*alpha} resp. lambda*e^{+i*alpha}."""
    conj = spec.spiral is Spiral.CLOCKWISE
    m = _compose_end(spec, MoebiusMap.scaling(spec.deck_multiplier), conjugate=conj)
    mu, const = m.affine_parts()
    return EndMonodromyResult(
        monodromy=m,
        multiplier=mu,
        constant=const,
        total_weight=spec.total_weight,
    )


def geodesic_closed_form_map(spec: GeodesicGraftSpec) -> MoebiusMap:
    """The closed-form affine representative of the geodesic-end monodromy
    class.  Its constant differs from direct composition by a conjugation
    (exactly mu - 1), so only trace-squared comparisons are meaningful."""
    lam = spec.deck_multiplier
    if spec.spiral is Spiral.ANTICLOCKWISE:
        ext = list(spec.positions) + [lam]
        c: complex = ext[0] - 1.0
        prod: complex = 1 + 0j
        for i, w in enumerate(spec.weights):
            prod *= cmath.exp(-1j * w.radians)
            c += prod * (ext[i + 1] - ext[i])
        return MoebiusMap.affine(lam * prod, c)
    # clockwise: reflected positions lambda/a_i traversed in reverse
    pos, wts = spec.positions, spec.weights
    r = len(pos)
    if r == 0:
        return MoebiusMap.affine(lam, 0)
    c = lam / pos[-1] - 1.0
    prod = 1 + 0j
    refl = [lam / a for a in reversed(pos)] + [lam]
    for i in range(r):
        prod *= cmath.exp(1j * wts[r - 1 - i].radians)
        c += prod * (refl[i + 1] - refl[i])
    return MoebiusMap.affine(lam * prod, c)


@dataclass(frozen=True)
class SignedEndData:
    """Grafting data at one end together with its signs: `weight_sign`
    (tau) at every end, `end_sign` (sigma, the boundary orientation) only
    at geodesic ends.  For a geodesic end the spiral direction is not free
    data: it is clockwise exactly when the signs match, and the underlying
    spec must agree."""

    spec: GraftSpec
    weight_sign: int
    end_sign: int | None = None

    def __post_init__(self):
        if self.weight_sign not in (1, -1):
            raise ValueError("weight_sign must be +1 or -1")
        if isinstance(self.spec, CuspGraftSpec):
            if self.end_sign is not None:
                raise ValueError("cusp ends carry no boundary-orientation sign")
        else:
            if self.end_sign not in (1, -1):
                raise ValueError("geodesic ends need end_sign +1 or -1")
            expected = spiral_direction(self.end_sign, self.weight_sign)
            if self.spec.leaf_count > 0 and self.spec.spiral is not expected:
                raise ValueError(
                    f"spec spirals {self.spec.spiral.value} but signs "
                    f"({self.end_sign:+d},{self.weight_sign:+d}) force {expected.value}"
                )

    @property
    def is_cusp(self) -> bool:
        return isinstance(self.spec, CuspGraftSpec)

    @property
    def boundary_length(self) -> float:
        return 0.0 if self.is_cusp else self.spec.boundary_length

    @property
    def total_weight(self) -> float:
        return self.spec.total_weight

    @property
    def spiral(self) -> Spiral:
        sigma = 1 if self.end_sign is None else self.end_sign
        return spiral_direction(sigma, self.weight_sign)

    def flip_signs(self) -> "SignedEndData":
        """Negate every sign present; the spiral direction is unchanged."""
        return SignedEndData(
            spec=self.spec,
            weight_sign=-self.weight_sign,
            end_sign=None if self.end_sign is None else -self.end_sign,
        )


def signed_cusp_end(positions, weights, weight_sign: int) -> SignedEndData:
    return SignedEndData(CuspGraftSpec(tuple(positions), tuple(weights)), weight_sign)


def signed_geodesic_end(
    boundary_length: float, positions, weights, end_sign: int, weight_sign: int
) -> SignedEndData:
    """Build a signed geodesic end with the spiral direction the signs force."""
    spec = GeodesicGraftSpec(
        boundary_length,
        tuple(positions),
        tuple(weights),
        spiral=spiral_direction(end_sign, weight_sign),
    )
    return SignedEndData(spec, weight_sign, end_sign)


def spiral_direction(end_sign: int, weight_sign: int) -> Spiral:
    """Clockwise (with respect to the surface orientation) iff the
    boundary-orientation and weight signs match."""
    if end_sign not in (1, -1) or weight_sign not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    return Spiral.CLOCKWISE if end_sign == weight_sign else Spiral.ANTICLOCKWISE


def signed_c_parameter(end: SignedEndData) -> complex:
    """The signed end parameter c = sigma*l + i*tau*alpha (cusps have l = 0)."""
    sigma = 1 if end.end_sign is None else end.end_sign
    return complex(sigma * end.boundary_length, end.weight_sign * end.total_weight)


def grafting_exponent(end: SignedEndData, sign: int = 1) -> complex:
    """Signed exponent of the grafted end.

    With magnitudes (l, alpha) the exponent is l + i*alpha for clockwise
    spiralling and l - i*alpha for anticlockwise, up to sign; the signing
    convention resolves the overall sign as sigma (so the exponent equals
    sigma*l + i*tau*alpha and squares to the signed c parameter squared),
    and the residual two-fold ambiguity is the explicit `sign` argument.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    l = end.boundary_length
    alpha = end.total_weight
    base = complex(l, alpha) if end.spiral is Spiral.CLOCKWISE else complex(l, -alpha)
    sigma = 1 if end.end_sign is None else end.end_sign
    if end.is_cusp:
        # no boundary orientation; the weight sign orients the cusp exponent
        base = complex(0.0, end.weight_sign * alpha)
        sigma = 1
    return sign * sigma * base


def _weight_turns(spec: GraftSpec, tol: Tolerances) -> int | None:
    """n if the total weight is 2*pi*n (exactly for pi-rational weights,
    within tolerance otherwise), else None."""
    exact = spec.total_pi_multiple()
    if exact is not None:
        if exact.denominator == 1 and exact.numerator % 2 == 0:
            return exact.numerator // 2
        return None
    turns = spec.total_weight / TWO_PI
    n = round(turns)
    if abs(turns - n) * TWO_PI < tol.chordal:
        return n
    return None


def pole_order(spec: GraftSpec, tol: Tolerances = DEFAULT_TOL) -> PoleOrder:
    """Pole order of the quadratic differential induced at the grafted end.

    Geodesic ends always give a double pole.  A cusp gives a double pole
    unless the total weight is exactly 2*pi*n with n = 1, where the
    monodromy constant decides: C = 0 means no pole at all (the developing
    map is w -> w), otherwise a simple pole.
    """
    if isinstance(spec, GeodesicGraftSpec):
        return PoleOrder.ORDER_2
    n = _weight_turns(spec, tol)
    if n != 1:
        return PoleOrder.ORDER_2
    c = cusp_monodromy(spec).constant
    if abs(c) < tol.algebraic:
        return PoleOrder.NO_POLE
    return PoleOrder.ORDER_1


@dataclass(frozen=True)
class WeightClass:
    """A total weight known modulo 2*pi and up to sign, stored by its
    canonical representative in [0, pi]."""

    representative: float

    @classmethod
    def of(cls, angle: float) -> "WeightClass":
        a = angle % TWO_PI
        return cls(min(a, TWO_PI - a))

    def contains(self, angle: float, tol: float = DEFAULT_TOL.chordal) -> bool:
        return abs(WeightClass.of(angle).representative - self.representative) < tol


@dataclass(frozen=True)
class InferredEnd:
    """What the peripheral monodromy reveals about the grafted end: its
    type, the boundary length (0 for a cusp), and the total weight up to
    sign and positive multiples of 2*pi."""

    end_type: EndType
    boundary_length: float
    weight_class: WeightClass


def infer_end_from_monodromy(m: MoebiusMap, tol: Tolerances = DEFAULT_TOL) -> InferredEnd:
    """Invert the grafting computation at the level of conjugacy classes.

    Identity and parabolic monodromy come from a cusp with weight 0 mod
    2*pi; elliptic from a cusp with weight arg(multiplier) mod 2*pi; a
    loxodromic multiplier mu comes from a geodesic end of length
    |log|mu|| with weight arg(mu) mod 2*pi.
    """
    cls = classify(m, tol)
    if cls in (MoebiusClass.IDENTITY, MoebiusClass.PARABOLIC):
        return InferredEnd(EndType.CUSP, 0.0, WeightClass.of(0.0))
    mu, _ = multiplier_pair(m, tol)
    length = abs(math.log(abs(mu)))
    wc = WeightClass.of(cmath.phase(mu))
    if cls is MoebiusClass.ELLIPTIC or length < tol.chordal:
        return InferredEnd(EndType.CUSP, 0.0, wc)
    return InferredEnd(EndType.GEODESIC, length, wc)

"""Framed PSL(2,C) representations and their decision procedures.

A representation is presented by generator images together with one
peripheral word per puncture and per boundary component and a relator
that must evaluate to the identity.  A framing assigns a sphere point to
every marked point (one fundamental-domain representative each); values
at punctures must be fixed by the peripheral monodromy there, except at
apparent singularities (identity peripheral), where any value is
allowed, and at boundary marked points, which are unconstrained.

Degeneracy of a framed representation is decided by three conditions:
a one-point framing image with every puncture peripheral parabolic
fixing it or the identity, a two-point framing image fixed pointwise by
every puncture peripheral, or two adjacent marked points on a boundary
sharing a framing value.  Because flipping (exchanging the framing at a
puncture with elliptic or loxodromic peripheral for the other fixed
point) must not change the verdict, the conditions are evaluated over
the whole flip orbit of the framing; this closure is what makes the
verdict agree with the image classification below on every input, and
it is also the form in which the conditions are usable (the one-point
clause alone is not flip-stable).

`classify_phi_image` decides which representations occur as monodromy:
everything when there are at least three boundary marked points, and
otherwise a finite case list over degeneracy, apparent singularities,
the trivial representation and order-two images.  The randomized
`nondegenerate_framing_search` is the independent oracle for that
classifier.
"""

from __future__ import annotations

import cmath
import itertools
import math
import random
from dataclasses import dataclass, field
from typing import Sequence

from .moebius import (
    DEFAULT_TOL,
    DegenerateQuadruple,
    MoebiusClass,
    MoebiusMap,
    SpherePoint,
    Tolerances,
    chordal_distance,
    classify,
    compose,
    cross_ratio,
    fixed_points,
    fixed_points_with_multipliers,
)
from .schwarzian import Exponent
from .surfaces import SurfaceSignature

Word = Sequence[int]  # nonzero 1-based indices, negative for inverses


class UnknownGenerator(ValueError):
    pass


class DepthExceeded(RuntimeError):
    """Orbit search hit its depth or size cap before reaching a verdict."""


class NotFlippable(ValueError):
    """Flip requested at a puncture with identity or parabolic peripheral."""


class MissingAsymptotic(ValueError):
    """Framing an apparent singularity needs the model asymptotic value."""


class IllDefinedCoordinate(ValueError):
    """Edge coordinate degenerated to 0, infinity, or an indeterminate form."""


class InvalidTriangulation(ValueError):
    pass


class InvalidPresentation(ValueError):
    pass


class InvalidFraming(ValueError):
    pass


@dataclass(frozen=True)
class RepPresentation:
    """Generator images with peripheral words and a relator."""

    surface: SurfaceSignature
    generators: tuple[MoebiusMap, ...]
    puncture_words: tuple[tuple[int, ...], ...]
    boundary_words: tuple[tuple[int, ...], ...]
    relator: tuple[int, ...] = ()
    tol: Tolerances = field(default=DEFAULT_TOL, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        object.__setattr__(
            self, "puncture_words", tuple(tuple(w) for w in self.puncture_words)
        )
        object.__setattr__(
            self, "boundary_words", tuple(tuple(w) for w in self.boundary_words)
        )
        object.__setattr__(self, "relator", tuple(self.relator))
        if len(self.puncture_words) != self.surface.punctures:
            raise InvalidPresentation(
                f"expected {self.surface.punctures} puncture words, "
                f"got {len(self.puncture_words)}"
            )
        if len(self.boundary_words) != self.surface.boundary_count:
            raise InvalidPresentation(
                f"expected {self.surface.boundary_count} boundary words, "
                f"got {len(self.boundary_words)}"
            )
        for w in (*self.puncture_words, *self.boundary_words, self.relator):
            for idx in w:
                if idx == 0 or abs(idx) > len(self.generators):
                    raise UnknownGenerator(f"generator index {idx} out of range")
        rel = evaluate_word(self, self.relator)
        if not rel.is_identity(self.tol):
            residual = max(abs(rel.b), abs(rel.c), abs(rel.a - rel.d))
            raise InvalidPresentation(f"relator residual {residual:g} is not identity")

    def puncture_peripheral(self, j: int) -> MoebiusMap:
        return evaluate_word(self, self.puncture_words[j])

    def boundary_peripheral(self, i: int) -> MoebiusMap:
        return evaluate_word(self, self.boundary_words[i])

    def nontrivial_generators(self) -> list[MoebiusMap]:
        return [g for g in self.generators if not g.is_identity(self.tol)]

    def is_trivial(self) -> bool:
        return not self.nontrivial_generators()

    def has_order_two_image(self) -> bool:
        """True iff every generator image is the identity or one common
        involution (so the image group has exactly two elements)."""
        nontrivial = self.nontrivial_generators()
        if not nontrivial:
            return False
        j0 = nontrivial[0]
        if not compose(j0, j0).is_identity(self.tol):
            return False
        return all(compose(g, j0.inverse()).is_identity(self.tol) for g in nontrivial)

    def apparent_singularities(self) -> list[int]:
        return [
            j
            for j in range(self.surface.punctures)
            if self.puncture_peripheral(j).is_identity(self.tol)
        ]


def evaluate_word(rep: RepPresentation, word: Word) -> MoebiusMap:
    """Left-to-right composition of generator images: [1, -2] is g1 g2^{-1}
    as a map (g2^{-1} applied first)."""
    result = MoebiusMap.identity()
    for idx in word:
        if idx == 0 or abs(idx) > len(rep.generators):
            raise UnknownGenerator(f"generator index {idx} out of range")
        g = rep.generators[abs(idx) - 1]
        result = compose(result, g if idx > 0 else g.inverse())
    return result


def build_surface_representation(
    surface: SurfaceSignature,
    handle_images: Sequence[MoebiusMap],
    puncture_images: Sequence[MoebiusMap | None],
    boundary_images: Sequence[MoebiusMap | None] = (),
    tol: Tolerances = DEFAULT_TOL,
) -> RepPresentation:
    """Standard presentation with one generator per handle pair and per
    peripheral curve, subject to prod [a_i,b_i] * prod x_j = 1.

    The image of the last peripheral generator (last boundary, or last
    puncture when there is no boundary) may be passed as None and is then
    solved from the relation.
    """
    g = surface.genus
    m, k = surface.punctures, surface.boundary_count
    if len(handle_images) != 2 * g:
        raise InvalidPresentation(f"expected {2 * g} handle images")
    if len(puncture_images) != m or len(boundary_images) != k:
        raise InvalidPresentation("peripheral image counts do not match the signature")
    peripherals = list(puncture_images) + list(boundary_images)
    if any(p is None for p in peripherals[:-1]):
        raise InvalidPresentation("only the last peripheral image may be None")
    prefix = MoebiusMap.identity()
    for i in range(g):
        a, b = handle_images[2 * i], handle_images[2 * i + 1]
        prefix = compose(prefix, compose(compose(a, b), compose(a.inverse(), b.inverse())))
    for p in peripherals[:-1]:
        prefix = compose(prefix, p)
    if peripherals[-1] is None:
        peripherals[-1] = prefix.inverse()
    generators = tuple(handle_images) + tuple(peripherals)
    relator: list[int] = []
    for i in range(g):
        ai, bi = 2 * i + 1, 2 * i + 2
        relator += [ai, bi, -ai, -bi]
    relator += [2 * g + 1 + j for j in range(m + k)]
    return RepPresentation(
        surface=surface,
        generators=generators,
        puncture_words=tuple((2 * g + 1 + j,) for j in range(m)),
        boundary_words=tuple((2 * g + m + 1 + i,) for i in range(k)),
        relator=tuple(relator),
        tol=tol,
    )


@dataclass(frozen=True)
class OrbitResult:
    points: tuple[SpherePoint, ...]
    closed: bool


def _add_point(points: list[SpherePoint], p: SpherePoint, tol: float) -> bool:
    for q in points:
        if chordal_distance(p, q) < tol:
            return False
    points.append(p)
    return True


def orbit_points(
    rep: RepPresentation,
    seeds: Sequence[SpherePoint],
    target: int | None = 3,
    depth_cap: int = 16,
    max_points: int = 4096,
    tol: Tolerances = DEFAULT_TOL,
) -> OrbitResult:
    """Breadth-first orbit of the seeds under the generator images and
    their inverses, with chordal deduplication.

    Stops as soon as `target` distinct points are known, or when the
    orbit closes under every generator.  Raises DepthExceeded when the
    word-length or point caps run out first.
    """
    if not seeds:
        raise ValueError("need at least one seed point")
    maps: list[MoebiusMap] = []
    for gen in rep.generators:
        maps.append(gen)
        maps.append(gen.inverse())
    points: list[SpherePoint] = []
    for s in seeds:
        _add_point(points, SpherePoint.of(s), tol.chordal)
    frontier = list(points)
    for _ in range(depth_cap):
        if target is not None and len(points) >= target:
            return OrbitResult(tuple(points), False)
        new_frontier: list[SpherePoint] = []
        for p in frontier:
            for mp in maps:
                q = mp(p)
                if _add_point(points, q, tol.chordal):
                    new_frontier.append(q)
                    if target is not None and len(points) >= target:
                        return OrbitResult(tuple(points), False)
                    if len(points) > max_points:
                        raise DepthExceeded("orbit exceeded the point cap")
        if not new_frontier:
            return OrbitResult(tuple(points), True)
        frontier = new_frontier
    if target is not None and len(points) >= target:
        return OrbitResult(tuple(points), False)
    raise DepthExceeded(f"orbit search inconclusive after depth {depth_cap}")


@dataclass(frozen=True)
class FramedRep:
    """A representation with framing values at a fundamental-domain lift
    of every marked point and a sign at each flippable puncture."""

    rep: RepPresentation
    puncture_framing: tuple[SpherePoint, ...]
    boundary_framing: tuple[tuple[SpherePoint, ...], ...] = ()
    signing: tuple[int | None, ...] = ()

    def __post_init__(self):
        sig = self.rep.surface
        object.__setattr__(self, "puncture_framing", tuple(self.puncture_framing))
        object.__setattr__(
            self, "boundary_framing", tuple(tuple(b) for b in self.boundary_framing)
        )
        if not self.signing:
            object.__setattr__(self, "signing", tuple([None] * sig.punctures))
        if len(self.puncture_framing) != sig.punctures:
            raise InvalidFraming("one framing value per puncture required")
        if len(self.boundary_framing) != sig.boundary_count:
            raise InvalidFraming("one framing tuple per boundary required")
        for i, vals in enumerate(self.boundary_framing):
            if len(vals) != sig.boundary_orders[i] - 2:
                raise InvalidFraming(
                    f"boundary {i} needs {sig.boundary_orders[i] - 2} framing values"
                )
        if len(self.signing) != sig.punctures:
            raise InvalidFraming("one sign slot per puncture required")
        tol = self.rep.tol
        for j, v in enumerate(self.puncture_framing):
            peripheral = self.rep.puncture_peripheral(j)
            if peripheral.is_identity(tol):
                continue
            if chordal_distance(peripheral(v), v) >= tol.chordal:
                raise InvalidFraming(
                    f"framing at puncture {j} is not fixed by its peripheral"
                )

    def all_framing_values(self) -> list[SpherePoint]:
        vals = list(self.puncture_framing)
        for b in self.boundary_framing:
            vals.extend(b)
        return vals

    def flippable_punctures(self) -> list[int]:
        out = []
        for j in range(self.rep.surface.punctures):
            cls = classify(self.rep.puncture_peripheral(j), self.rep.tol)
            if cls in (
                MoebiusClass.ELLIPTIC,
                MoebiusClass.HYPERBOLIC,
                MoebiusClass.LOXODROMIC,
            ):
                out.append(j)
        return out


def _other_fixed_point(
    peripheral: MoebiusMap, current: SpherePoint, tol: Tolerances
) -> SpherePoint:
    pts = fixed_points(peripheral, tol)
    if len(pts) != 2:
        raise NotFlippable("peripheral has a single fixed point")
    d0 = chordal_distance(current, pts[0])
    d1 = chordal_distance(current, pts[1])
    if min(d0, d1) >= tol.chordal:
        raise InvalidFraming("current framing matches neither fixed point")
    return pts[1] if d0 < d1 else pts[0]


def flip(fr: FramedRep, punctures: Sequence[int]) -> FramedRep:
    """Exchange the framing at the selected punctures for the other fixed
    point of the peripheral monodromy, negating the sign there.  Only
    elliptic, hyperbolic and loxodromic peripherals can be flipped;
    flipping twice restores the original."""
    tol = fr.rep.tol
    selected = set(punctures)
    flippable = set(fr.flippable_punctures())
    bad = selected - flippable
    if bad:
        raise NotFlippable(f"punctures {sorted(bad)} have no second fixed point")
    new_framing = list(fr.puncture_framing)
    new_signing = list(fr.signing)
    for j in selected:
        peripheral = fr.rep.puncture_peripheral(j)
        new_framing[j] = _other_fixed_point(peripheral, fr.puncture_framing[j], tol)
        if new_signing[j] is not None:
            new_signing[j] = -new_signing[j]
    return FramedRep(
        rep=fr.rep,
        puncture_framing=tuple(new_framing),
        boundary_framing=fr.boundary_framing,
        signing=tuple(new_signing),
    )


@dataclass(frozen=True)
class DegeneracyWitness:
    condition: int
    points: tuple[SpherePoint, ...]
    boundary_index: int | None = None
    flipped_punctures: tuple[int, ...] = ()


@dataclass(frozen=True)
class DegeneracyVerdict:
    degenerate: bool
    witness: DegeneracyWitness | None = None


def _boundary_collision(fr: FramedRep, tol: Tolerances) -> DegeneracyWitness | None:
    # Adjacent marked points on a boundary component, comparing successive
    # lifts: within the fundamental domain directly, and across the wrap
    # via the boundary holonomy.  A boundary with a single marked point
    # has no adjacent pair.
    for i, vals in enumerate(fr.boundary_framing):
        s = len(vals)
        if s < 2:
            continue
        hol = fr.rep.boundary_peripheral(i)
        pairs = [(vals[j], vals[j + 1]) for j in range(s - 1)]
        pairs.append((vals[-1], hol(vals[0])))
        for a, b in pairs:
            if chordal_distance(a, b) < tol.chordal:
                return DegeneracyWitness(condition=3, points=(a, b), boundary_index=i)
    return None


def _small_image_witness(
    fr: FramedRep,
    values: list[SpherePoint],
    peripherals: list[MoebiusMap],
    classes: list[MoebiusClass],
    flipped: tuple[int, ...],
    tol: Tolerances,
) -> DegeneracyWitness | None:
    orbit = orbit_points(fr.rep, values, target=3, tol=tol)
    if len(orbit.points) >= 3 or not orbit.closed:
        return None
    if len(orbit.points) == 1:
        p = orbit.points[0]
        for peripheral, cls in zip(peripherals, classes):
            if cls is MoebiusClass.IDENTITY:
                continue
            if cls is MoebiusClass.PARABOLIC and chordal_distance(peripheral(p), p) < tol.chordal:
                continue
            return None
        return DegeneracyWitness(condition=1, points=(p,), flipped_punctures=flipped)
    p, q = orbit.points
    for peripheral in peripherals:
        if (
            chordal_distance(peripheral(p), p) >= tol.chordal
            or chordal_distance(peripheral(q), q) >= tol.chordal
        ):
            return None
    return DegeneracyWitness(condition=2, points=(p, q), flipped_punctures=flipped)


def is_degenerate(fr: FramedRep, max_flip_enumeration: int = 14) -> DegeneracyVerdict:
    """Degeneracy verdict for a framed representation.

    Checks the boundary-collision condition once, then the small-image
    conditions over the flip orbit of the framing, so that the verdict is
    flip-invariant by construction.  Raises DepthExceeded when an orbit
    search is inconclusive.
    """
    tol = fr.rep.tol
    witness = _boundary_collision(fr, tol)
    if witness is not None:
        return DegeneracyVerdict(True, witness)
    m = fr.rep.surface.punctures
    peripherals = [fr.rep.puncture_peripheral(j) for j in range(m)]
    classes = [classify(p, tol) for p in peripherals]
    flippable = fr.flippable_punctures()
    pinned = [
        fr.puncture_framing[j] for j in range(m) if j not in flippable
    ] + [v for b in fr.boundary_framing for v in b]
    if pinned:
        # values untouched by any flip; three points here kill conditions 1-2
        orbit = orbit_points(fr.rep, pinned, target=3, tol=tol)
        if len(orbit.points) >= 3:
            return DegeneracyVerdict(False, None)
    if len(flippable) > max_flip_enumeration:
        raise DepthExceeded(f"{len(flippable)} flippable punctures is beyond the cap")
    choice_values: dict[int, tuple[SpherePoint, SpherePoint]] = {}
    for j in flippable:
        cur = fr.puncture_framing[j]
        choice_values[j] = (cur, _other_fixed_point(peripherals[j], cur, tol))
    for bits in itertools.product((0, 1), repeat=len(flippable)):
        flipped = tuple(j for j, b in zip(flippable, bits) if b)
        values = list(fr.puncture_framing)
        for j, b in zip(flippable, bits):
            values[j] = choice_values[j][b]
        values += [v for b in fr.boundary_framing for v in b]
        witness = _small_image_witness(fr, values, peripherals, classes, flipped, tol)
        if witness is not None:
            return DegeneracyVerdict(True, witness)
    return DegeneracyVerdict(False, None)


def framing_from_signed_peripheral(
    peripheral: MoebiusMap,
    exponent: Exponent,
    model_asymptotic: SpherePoint | None = None,
    tol: Tolerances = DEFAULT_TOL,
) -> SpherePoint:
    """Framing value selected by the exponent sign.

    Parabolic peripherals frame at their unique fixed point; the identity
    needs the model map's asymptotic value.  Otherwise the fixed point
    whose multiplier mu has log mu closest to the exponent value modulo
    2*pi*i is selected, so negating the exponent selects the other fixed
    point.  Involutions have equal multipliers at both fixed points; the
    tie falls back to a fixed coordinate ordering swapped by the sign.
    """
    cls = classify(peripheral, tol)
    if cls is MoebiusClass.IDENTITY:
        if model_asymptotic is None:
            raise MissingAsymptotic("identity peripheral needs a model asymptotic value")
        return SpherePoint.of(model_asymptotic)
    if cls is MoebiusClass.PARABOLIC:
        return fixed_points(peripheral, tol)[0]
    r = exponent.value

    def lattice_distance(mu: complex) -> float:
        base = cmath.log(mu) - r
        k = round(base.imag / (2 * math.pi))
        return min(abs(base - 2j * math.pi * kk) for kk in (k - 1, k, k + 1))

    pairs = fixed_points_with_multipliers(peripheral, tol)
    d0, d1 = lattice_distance(pairs[0][1]), lattice_distance(pairs[1][1])
    if abs(d0 - d1) > 1e-9:
        return pairs[0][0] if d0 < d1 else pairs[1][0]

    def key(p: SpherePoint):
        return (1, 0.0, 0.0) if p.is_infinity else (0, p.value.real, p.value.imag)

    lo, hi = sorted((pairs[0][0], pairs[1][0]), key=key)
    return lo if exponent.sign > 0 else hi


def fg_edge_coordinate(
    a: SpherePoint,
    b: SpherePoint,
    c: SpherePoint,
    d: SpherePoint,
    tol: Tolerances = DEFAULT_TOL,
) -> complex:
    """Edge coordinate of the quadrilateral with vertices a, b, c, d in
    counterclockwise order and diagonal joining a and c: the cross-ratio
    (a-b)(c-d) / ((b-c)(d-a)).  Well-defined iff finite and nonzero; a
    collapsed edge (a = c) is rejected outright even though its
    cross-ratio limit is 1."""
    if chordal_distance(a, c) < tol.chordal:
        raise IllDefinedCoordinate("edge endpoints coincide")
    try:
        value = cross_ratio(a, b, c, d, strict=False, tol=tol)
    except DegenerateQuadruple as exc:
        raise IllDefinedCoordinate(str(exc)) from exc
    if value.is_infinity:
        raise IllDefinedCoordinate("edge coordinate is infinite")
    if abs(value.value) < tol.chordal:
        raise IllDefinedCoordinate("edge coordinate vanishes")
    return value.value


@dataclass(frozen=True)
class Triangulation:
    """Ideal triangles carrying developed framing values at their corners,
    glued combinatorially: an interior edge is a pair of (triangle index,
    opposite corner index) sides.  Gluing is by combinatorics, not by
    corner values, because distinct ideal vertices may legitimately carry
    equal values for degenerate framings."""

    triangles: tuple[tuple[SpherePoint, SpherePoint, SpherePoint], ...]
    interior_edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...] = ()


def edge_quad(
    tri_a: tuple[SpherePoint, ...],
    opposite_a: int,
    tri_b: tuple[SpherePoint, ...],
    opposite_b: int,
    tol: Tolerances = DEFAULT_TOL,
) -> tuple[SpherePoint, SpherePoint, SpherePoint, SpherePoint]:
    """Corner values around a shared edge, ordered so the edge joins the
    first and third entries and the opposite corners sit second and
    fourth.  The two sides must carry the same endpoint values."""
    if opposite_a not in (0, 1, 2) or opposite_b not in (0, 1, 2):
        raise InvalidTriangulation("opposite corner index must be 0, 1 or 2")
    s1, s2 = tri_a[(opposite_a + 1) % 3], tri_a[(opposite_a + 2) % 3]
    t1, t2 = tri_b[(opposite_b + 1) % 3], tri_b[(opposite_b + 2) % 3]
    straight = s1.isclose(t1, tol.chordal) and s2.isclose(t2, tol.chordal)
    crossed = s1.isclose(t2, tol.chordal) and s2.isclose(t1, tol.chordal)
    if not (straight or crossed):
        raise InvalidTriangulation("glued sides carry different endpoint values")
    return s1, tri_a[opposite_a], s2, tri_b[opposite_b]


def triangulation_well_defined(
    fr: FramedRep | None,
    triangulation: Triangulation,
    orbit_depth: int = 16,
) -> bool:
    """True iff every interior edge carries a finite nonzero coordinate.

    When a framed representation is supplied, each corner value must be
    reachable from its framing orbit (equivariance of the developed
    corners remains the caller's responsibility)."""
    tris = triangulation.triangles
    for t in tris:
        if len(t) != 3:
            raise InvalidTriangulation("triangles need exactly three corners")
    tol = fr.rep.tol if fr is not None else DEFAULT_TOL
    if fr is not None:
        seeds = fr.all_framing_values()
        for t in tris:
            for corner in t:
                if not _orbit_contains(fr.rep, seeds, corner, orbit_depth, tol):
                    raise InvalidTriangulation(
                        f"corner {corner!r} is not a framing orbit point"
                    )
    for (i, oi), (j, oj) in triangulation.interior_edges:
        if not (0 <= i < len(tris) and 0 <= j < len(tris)):
            raise InvalidTriangulation(f"bad edge ({i}, {j})")
        quad = edge_quad(tris[i], oi, tris[j], oj, tol)
        try:
            fg_edge_coordinate(*quad, tol=tol)
        except IllDefinedCoordinate:
            return False
    return True


def _orbit_contains(
    rep: RepPresentation,
    seeds: list[SpherePoint],
    probe: SpherePoint,
    depth_cap: int,
    tol: Tolerances,
) -> bool:
    maps: list[MoebiusMap] = []
    for gen in rep.generators:
        maps.append(gen)
        maps.append(gen.inverse())
    points: list[SpherePoint] = []
    for s in seeds:
        _add_point(points, s, tol.chordal)
    if any(chordal_distance(probe, p) < tol.chordal for p in points):
        return True
    frontier = list(points)
    for _ in range(depth_cap):
        new_frontier = []
        for p in frontier:
            for mp in maps:
                q = mp(p)
                if _add_point(points, q, tol.chordal):
                    if chordal_distance(probe, q) < tol.chordal:
                        return True
                    new_frontier.append(q)
                    if len(points) > 4096:
                        return False
        if not new_frontier:
            return False
        frontier = new_frontier
    return False


def rep_is_degenerate_unframed(rep: RepPresentation) -> bool:
    """Representation-level degeneracy, the unframed mirror of the framed
    conditions: either the whole image fixes a point at which every
    puncture peripheral is parabolic or the identity, or some pair of
    points is preserved setwise by the whole image while every puncture
    peripheral fixes both."""
    tol = rep.tol
    nontrivial = rep.nontrivial_generators()
    if not nontrivial:
        return True
    m = rep.surface.punctures
    peripherals = [rep.puncture_peripheral(j) for j in range(m)]

    def close(x: SpherePoint, y: SpherePoint) -> bool:
        return chordal_distance(x, y) < tol.chordal

    # (a) common fixed point with parabolic-or-identity peripherals
    for p in fixed_points(nontrivial[0], tol):
        if not all(close(g(p), p) for g in nontrivial):
            continue
        ok = True
        for peripheral in peripherals:
            cls = classify(peripheral, tol)
            if cls is MoebiusClass.IDENTITY:
                continue
            if cls is MoebiusClass.PARABOLIC and close(peripheral(p), p):
                continue
            ok = False
            break
        if ok:
            return True
    # order-two image: some invariant pair always exists
    if rep.has_order_two_image():
        return True
    # (b) candidate pairs from fixed sets of short nontrivial words
    pool: list[SpherePoint] = []
    words = list(nontrivial)
    words += [compose(g, g) for g in nontrivial]
    words += [compose(g, h) for g, h in itertools.combinations(nontrivial, 2)]
    for w in words:
        if w.is_identity(tol):
            continue
        for p in fixed_points(w, tol):
            _add_point(pool, p, tol.chordal)
    for p, q in itertools.combinations(pool, 2):
        invariant = all(
            (close(g(p), p) and close(g(q), q)) or (close(g(p), q) and close(g(q), p))
            for g in nontrivial
        )
        if not invariant:
            continue
        if all(
            close(peripheral(p), p) and close(peripheral(q), q)
            for peripheral in peripherals
        ):
            return True
    return False


@dataclass(frozen=True)
class PhiImageVerdict:
    in_image: bool
    case: str


def classify_phi_image(rep: RepPresentation) -> PhiImageVerdict:
    """Decide whether the representation occurs as the monodromy of some
    signed structure on its surface, by the explicit case list over the
    number N of boundary marked points."""
    sig = rep.surface
    n_marked = sig.boundary_marked_points
    if n_marked >= 3:
        return PhiImageVerdict(True, "N>=3: every representation occurs")
    if not rep_is_degenerate_unframed(rep):
        return PhiImageVerdict(True, "non-degenerate representation")
    trivial = rep.is_trivial()
    order2 = rep.has_order_two_image()
    m = sig.punctures
    if n_marked == 0:
        if not rep.apparent_singularities():
            return PhiImageVerdict(
                False, "N=0: degenerate without an apparent singularity"
            )
        if trivial and sig.genus > 0 and m in (1, 2):
            return PhiImageVerdict(
                False, "N=0 exclusion: trivial representation, g>0, m<=2"
            )
        if order2 and sig.genus > 0 and m == 1:
            return PhiImageVerdict(False, "N=0 exclusion: order-two image, g>0, m=1")
        return PhiImageVerdict(True, "N=0: degenerate with an apparent singularity")
    if n_marked == 1:
        if trivial and m <= 1:
            return PhiImageVerdict(False, "N=1 exclusion: trivial representation, m<=1")
        if order2 and m == 0:
            return PhiImageVerdict(False, "N=1 exclusion: order-two image, m=0")
        return PhiImageVerdict(True, "N=1: degenerate, not an excluded case")
    if trivial and m == 0:
        return PhiImageVerdict(False, "N=2 exclusion: trivial representation, m=0")
    return PhiImageVerdict(True, "N=2: degenerate, not an excluded case")


def nondegenerate_framing_search(
    rep: RepPresentation,
    trials: int = 40,
    seed: int = 0,
) -> FramedRep | None:
    """Randomized search for a non-degenerate framing.

    Punctures with parabolic peripherals are framed at the forced fixed
    point, flippable punctures at a fixed point (the flip orbit is
    explored inside the degeneracy check), apparent singularities and
    boundary marked points at seeded random values.  Returns the first
    framing that passes, or None when every trial fails.
    """
    tol = rep.tol
    rng = random.Random(seed)
    sig = rep.surface
    m = sig.punctures
    peripherals = [rep.puncture_peripheral(j) for j in range(m)]
    classes = [classify(p, tol) for p in peripherals]

    def sample() -> SpherePoint:
        return SpherePoint(complex(rng.gauss(0.0, 2.0), rng.gauss(0.0, 2.0)))

    for _ in range(max(1, trials)):
        framing: list[SpherePoint] = []
        signing: list[int | None] = []
        for j in range(m):
            if classes[j] is MoebiusClass.IDENTITY:
                framing.append(sample())
                signing.append(None)
            elif classes[j] is MoebiusClass.PARABOLIC:
                framing.append(fixed_points(peripherals[j], tol)[0])
                signing.append(None)
            else:
                framing.append(fixed_points(peripherals[j], tol)[0])
                signing.append(1)
        boundary = tuple(
            tuple(sample() for _ in range(n - 2)) for n in sig.boundary_orders
        )
        fr = FramedRep(
            rep=rep,
            puncture_framing=tuple(framing),
            boundary_framing=boundary,
            signing=tuple(signing),
        )
        if not is_degenerate(fr).degenerate:
            return fr
    return None

"""Shared generators for the test suite: random grafting data, random
Moebius maps, and the corpus of small representations used to exercise
every clause of the monodromy-image classification."""

from __future__ import annotations

import cmath
import math
import random

from merograft.framed import RepPresentation, build_surface_representation
from merograft.grafting import (
    CuspGraftSpec,
    GeodesicGraftSpec,
    SignedEndData,
    Spiral,
    Weight,
    signed_cusp_end,
    signed_geodesic_end,
)
from merograft.moebius import MoebiusMap
from merograft.surfaces import SurfaceSignature


def random_moebius(rng: random.Random) -> MoebiusMap:
    while True:
        entries = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(4)]
        try:
            return MoebiusMap(*entries)
        except ValueError:
            continue


def random_cusp_spec(rng: random.Random, max_leaves: int = 6) -> CuspGraftSpec:
    while True:
        r = rng.randint(1, max_leaves)
        pos = sorted(rng.uniform(0, 0.999) for _ in range(r))
        if len(set(pos)) == r:
            break
    weights = tuple(Weight.of(rng.uniform(0.05, 7.0)) for _ in range(r))
    return CuspGraftSpec(tuple(pos), weights)


def random_geodesic_spec(rng: random.Random, max_leaves: int = 6) -> GeodesicGraftSpec:
    l = rng.uniform(0.15, 2.5)
    lam = math.exp(l)
    while True:
        r = rng.randint(0, max_leaves)
        pos = sorted(1 + (lam - 1) * rng.uniform(0, 0.99) for _ in range(r))
        if len(set(pos)) == r:
            break
    weights = tuple(Weight.of(rng.uniform(0.05, 7.0)) for _ in range(r))
    spiral = rng.choice([Spiral.CLOCKWISE, Spiral.ANTICLOCKWISE])
    return GeodesicGraftSpec(l, tuple(pos), weights, spiral)


def random_signed_end(rng: random.Random) -> SignedEndData:
    tau = rng.choice([1, -1])
    if rng.random() < 0.4:
        spec = random_cusp_spec(rng, max_leaves=3)
        return signed_cusp_end(spec.positions, spec.weights, tau)
    sigma = rng.choice([1, -1])
    l = rng.uniform(0.15, 2.5)
    lam = math.exp(l)
    r = rng.randint(0, 3)
    while True:
        pos = sorted(1 + (lam - 1) * rng.uniform(0, 0.99) for _ in range(r))
        if len(set(pos)) == r:
            break
    weights = tuple(Weight.of(rng.uniform(0.05, 7.0)) for _ in range(r))
    return signed_geodesic_end(l, tuple(pos), weights, sigma, tau)


# ---------------------------------------------------------------------------
# representation corpus

IDENT = MoebiusMap.identity()
J_NEG = MoebiusMap.scaling(-1)  # involution fixing {0, inf}
J_INV = MoebiusMap(0, 1, 1, 0)  # z -> 1/z, involution fixing {1, -1}


def _conjugate_rep(rep: RepPresentation, g: MoebiusMap) -> RepPresentation:
    from merograft.moebius import compose

    return RepPresentation(
        surface=rep.surface,
        generators=tuple(compose(compose(g, h), g.inverse()) for h in rep.generators),
        puncture_words=rep.puncture_words,
        boundary_words=rep.boundary_words,
        relator=rep.relator,
        tol=rep.tol,
    )


def _assignments(sig: SurfaceSignature, rng: random.Random):
    """Generator-image assignments spanning trivial, finite, affine,
    diagonal, dihedral and generic representations."""
    g, m, k = sig.genus, sig.punctures, sig.boundary_count
    n_handles, n_periph = 2 * g, m + k

    def make(handles, periph_all):
        periph = list(periph_all)
        periph[-1] = None  # solved from the relation
        punct = periph[:m]
        bound = periph[m:]
        return build_surface_representation(sig, handles, punct, bound)

    cases = []
    # trivial
    cases.append(("trivial", make([IDENT] * n_handles, [IDENT] * n_periph)))
    # order-two image through the negation involution
    handles = [J_NEG] * n_handles
    periph = [J_NEG if i % 2 == 0 else IDENT for i in range(n_periph)]
    cases.append(("order-two", make(handles, periph)))
    if n_periph >= 1:
        cases.append(("order-two-apparent", make(handles, [IDENT] * n_periph)))
    # parabolic translations fixing infinity
    handles = [MoebiusMap.translation(i + 1) for i in range(n_handles)]
    periph = [MoebiusMap.translation(rng.choice([1, 2, -1])) for _ in range(n_periph)]
    cases.append(("translations", make(handles, periph)))
    if n_periph >= 2:
        periph_ap = [IDENT] + periph[1:]
        cases.append(("translations-apparent", make(handles, periph_ap)))
    # diagonal loxodromic, fixes {0, inf} pointwise
    handles = [MoebiusMap.scaling(1.5 + 0.5 * i) for i in range(n_handles)]
    periph = [MoebiusMap.scaling(rng.uniform(1.5, 3.0)) for _ in range(n_periph)]
    cases.append(("diagonal", make(handles, periph)))
    if n_periph >= 1:
        cases.append(("diagonal-apparent", make(handles, [IDENT] + periph[1:])))
    # elliptic rotations about {0, inf}
    rot = MoebiusMap.scaling(cmath.exp(1j * math.pi / 3))
    cases.append(("rotations", make([rot] * n_handles, [rot] * n_periph)))
    # dihedral: scaling plus the swap z -> 1/z (preserves {0, inf} setwise)
    if n_handles + n_periph >= 2:
        imgs = [MoebiusMap.scaling(2.0), J_INV] + [
            MoebiusMap.scaling(0.5) for _ in range(n_handles + n_periph - 2)
        ]
        cases.append(("dihedral", make(imgs[:n_handles], imgs[n_handles:])))
    # generic random (almost surely non-degenerate, irreducible)
    handles = [random_moebius(rng) for _ in range(n_handles)]
    periph = [random_moebius(rng) for _ in range(n_periph)]
    cases.append(("generic", make(handles, periph)))
    # mixed parabolics with distinct fixed points
    p0 = MoebiusMap(1, 0, 1, 1)  # parabolic fixing 0
    pinf = MoebiusMap.translation(1)
    imgs = [pinf, p0] + [pinf for _ in range(n_handles + n_periph - 2)]
    if n_handles + n_periph >= 2:
        cases.append(("two-parabolics", make(imgs[:n_handles], imgs[n_handles:])))
    return cases


def phi_image_signatures() -> list[SurfaceSignature]:
    return [
        # no boundary
        SurfaceSignature(genus=0, punctures=3, cusps=3),
        SurfaceSignature(genus=0, punctures=4, cusps=4),
        SurfaceSignature(genus=1, punctures=1, cusps=1),
        SurfaceSignature(genus=1, punctures=2, cusps=2),
        SurfaceSignature(genus=1, punctures=3, cusps=3),
        SurfaceSignature(genus=2, punctures=1, cusps=1),
        # one boundary marked point
        SurfaceSignature(genus=1, boundary_orders=(3,), punctures=0),
        SurfaceSignature(genus=1, boundary_orders=(3,), punctures=1, cusps=1),
        SurfaceSignature(genus=0, boundary_orders=(3,), punctures=2, cusps=2),
        # two boundary marked points
        SurfaceSignature(genus=1, boundary_orders=(4,), punctures=0),
        SurfaceSignature(genus=0, boundary_orders=(4,), punctures=1, cusps=1),
        SurfaceSignature(genus=0, boundary_orders=(3, 3), punctures=1, cusps=1),
        # three and more
        SurfaceSignature(genus=0, boundary_orders=(6,), punctures=0),
        SurfaceSignature(genus=0, boundary_orders=(3, 3, 3), punctures=0),
        SurfaceSignature(genus=0, boundary_orders=(5,), punctures=1, cusps=1),
        SurfaceSignature(genus=1, boundary_orders=(5,), punctures=1, cusps=1),
    ]


def phi_image_cases(seed: int = 20240501) -> list[tuple[str, RepPresentation]]:
    """At least two hundred small representations spanning every clause of
    the image classification, including the excluded exceptional cases,
    plus conjugated copies so nothing depends on normal forms."""
    rng = random.Random(seed)
    cases: list[tuple[str, RepPresentation]] = []
    for sig in phi_image_signatures():
        for label, rep in _assignments(sig, rng):
            tag = (
                f"g{sig.genus}-k{sig.boundary_count}-m{sig.punctures}"
                f"-N{sig.boundary_marked_points}-{label}"
            )
            cases.append((tag, rep))
            if label in ("order-two", "translations", "diagonal", "rotations"):
                cases.append((tag + "-conj", _conjugate_rep(rep, random_moebius(rng))))
    return cases

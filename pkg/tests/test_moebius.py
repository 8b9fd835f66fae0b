import cmath
import math
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_moebius
from merograft.moebius import (
    INFINITY,
    DegenerateQuadruple,
    IdentityMap,
    MoebiusClass,
    MoebiusMap,
    NotDiagonalizable,
    SingularMatrix,
    SpherePoint,
    chordal_distance,
    classify,
    compose,
    cross_ratio,
    fixed_points,
    fixed_points_with_multipliers,
    multiplier_pair,
)

finite_complex = st.builds(
    complex,
    st.floats(-5, 5, allow_nan=False, allow_infinity=False),
    st.floats(-5, 5, allow_nan=False, allow_infinity=False),
)


def maps_equal(f: MoebiusMap, g: MoebiusMap, tol: float = 1e-9) -> bool:
    # same element of PSL(2,C): f g^{-1} = +-I
    return compose(f, g.inverse()).is_identity()


class TestCompose:
    def test_translations_add(self):
        t = MoebiusMap.translation(1)
        assert maps_equal(compose(t, t), MoebiusMap.translation(2))

    def test_identity_law(self):
        rng = random.Random(1)
        for _ in range(20):
            m = random_moebius(rng)
            assert maps_equal(compose(m, MoebiusMap.identity()), m)
            assert maps_equal(compose(MoebiusMap.identity(), m), m)

    def test_negation_after_translation(self):
        neg = MoebiusMap.scaling(-1)
        result = compose(neg, MoebiusMap.translation(1))
        # z -> -z - 1
        assert maps_equal(result, MoebiusMap.affine(-1, -1))
        assert result(SpherePoint(2)).isclose(SpherePoint(-3))

    def test_associative_to_1e12(self):
        rng = random.Random(7)
        for _ in range(200):
            f, g, h = (random_moebius(rng) for _ in range(3))
            left = compose(compose(f, g), h)
            right = compose(f, compose(g, h))
            prod = compose(left, right.inverse())
            assert abs(prod.b) < 1e-12 and abs(prod.c) < 1e-12
            assert abs(prod.a - prod.d) < 1e-12

    def test_singular_matrix_rejected(self):
        with pytest.raises(SingularMatrix):
            MoebiusMap(1, 2, 2, 4)


class TestClassify:
    def test_examples(self):
        assert classify(MoebiusMap.translation(1)) is MoebiusClass.PARABOLIC
        assert classify(MoebiusMap.scaling(2)) is MoebiusClass.HYPERBOLIC
        assert classify(MoebiusMap.scaling(-4)) is MoebiusClass.LOXODROMIC
        assert classify(MoebiusMap.identity()) is MoebiusClass.IDENTITY
        assert classify(MoebiusMap.scaling(cmath.exp(1j))) is MoebiusClass.ELLIPTIC
        assert (
            classify(MoebiusMap.scaling(2 * cmath.exp(1j))) is MoebiusClass.LOXODROMIC
        )

    def test_minus_identity_is_identity(self):
        assert MoebiusMap(-1, 0, 0, -1).is_identity()

    def test_conjugation_invariant(self):
        rng = random.Random(3)
        samples = [
            MoebiusMap.translation(1),
            MoebiusMap.scaling(2),
            MoebiusMap.scaling(-4),
            MoebiusMap.scaling(cmath.exp(0.7j)),
            MoebiusMap.scaling(1.3 * cmath.exp(0.4j)),
        ]
        for m in samples:
            expected = classify(m)
            for _ in range(25):
                g = random_moebius(rng)
                conj = compose(compose(g, m), g.inverse())
                assert classify(conj) is expected


class TestFixedPoints:
    def test_translation_fixes_infinity_only(self):
        pts = fixed_points(MoebiusMap.translation(1))
        assert len(pts) == 1 and pts[0].is_infinity

    def test_scaling_fixes_zero_and_infinity(self):
        pts = fixed_points(MoebiusMap.scaling(2))
        assert len(pts) == 2
        assert any(p.is_infinity for p in pts)
        assert any(not p.is_infinity and abs(p.value) < 1e-12 for p in pts)

    def test_neg_translation(self):
        pts = fixed_points(MoebiusMap.affine(-1, -1))  # z -> -z - 1
        finite = [p for p in pts if not p.is_infinity]
        assert len(finite) == 1 and abs(finite[0].value - (-0.5)) < 1e-12

    def test_identity_raises(self):
        with pytest.raises(IdentityMap):
            fixed_points(MoebiusMap.identity())

    def test_fixed_within_chordal_tolerance(self):
        rng = random.Random(11)
        for _ in range(300):
            m = random_moebius(rng)
            if m.is_identity():
                continue
            for p in fixed_points(m):
                assert chordal_distance(m(p), p) < 1e-9


class TestMultipliers:
    def test_examples(self):
        mu, inv = multiplier_pair(MoebiusMap.scaling(2))
        assert sorted([abs(mu), abs(inv)]) == pytest.approx([0.5, 2.0])
        lam = 2 * cmath.exp(1j * math.pi / 3)
        mu, inv = multiplier_pair(MoebiusMap.scaling(lam))
        assert min(abs(mu - lam), abs(inv - lam)) < 1e-12

    def test_involution_has_multiplier_minus_one(self):
        mu, inv = multiplier_pair(MoebiusMap.affine(-1, -1))
        assert abs(mu + 1) < 1e-9 and abs(inv + 1) < 1e-9

    def test_product_is_one(self):
        rng = random.Random(5)
        for _ in range(100):
            m = random_moebius(rng)
            cls = classify(m)
            if cls in (MoebiusClass.IDENTITY, MoebiusClass.PARABOLIC):
                continue
            mu, inv = multiplier_pair(m)
            assert abs(mu * inv - 1) < 1e-9

    def test_conjugation_invariant_as_unordered_pair(self):
        rng = random.Random(9)
        m = MoebiusMap.scaling(1.7 * cmath.exp(0.3j))
        mu, inv = multiplier_pair(m)
        for _ in range(30):
            g = random_moebius(rng)
            conj = compose(compose(g, m), g.inverse())
            mu2, inv2 = multiplier_pair(conj)
            assert min(abs(mu2 - mu), abs(mu2 - inv)) < 1e-8

    def test_parabolic_raises(self):
        with pytest.raises(NotDiagonalizable):
            multiplier_pair(MoebiusMap.translation(1))

    def test_derivatives_at_fixed_points(self):
        m = MoebiusMap.scaling(4)
        pairs = dict()
        for p, mult in fixed_points_with_multipliers(m):
            pairs["inf" if p.is_infinity else "zero"] = mult
        assert abs(pairs["zero"] - 4) < 1e-12
        assert abs(pairs["inf"] - 0.25) < 1e-12


class TestChordal:
    def test_antipodal(self):
        assert chordal_distance(SpherePoint(0), INFINITY) == pytest.approx(2.0)

    def test_coincident(self):
        assert chordal_distance(SpherePoint(1 + 1j), SpherePoint(1 + 1j)) == 0.0

    def test_zero_one(self):
        assert chordal_distance(SpherePoint(0), SpherePoint(1)) == pytest.approx(
            math.sqrt(2)
        )

    @given(finite_complex, finite_complex)
    @settings(max_examples=100)
    def test_symmetric_and_bounded(self, a, b):
        p, q = SpherePoint(a), SpherePoint(b)
        d = chordal_distance(p, q)
        assert d == pytest.approx(chordal_distance(q, p))
        assert 0 <= d <= 2 + 1e-12


class TestCrossRatio:
    def test_limit_at_infinity(self):
        v = cross_ratio(SpherePoint(0), SpherePoint(1), INFINITY, SpherePoint(4))
        assert abs(v.value - 0.25) < 1e-12

    def test_infinite_first_argument(self):
        v = cross_ratio(INFINITY, SpherePoint(-1), SpherePoint(0), SpherePoint(1))
        assert abs(v.value - (-1)) < 1e-12

    def test_coincident_pair_degenerates(self):
        v = cross_ratio(SpherePoint(2), SpherePoint(2), SpherePoint(0), SpherePoint(1))
        assert abs(v.value) < 1e-12
        with pytest.raises(DegenerateQuadruple):
            cross_ratio(
                SpherePoint(2), SpherePoint(2), SpherePoint(0), SpherePoint(1), strict=True
            )

    def test_indeterminate_raises(self):
        with pytest.raises(DegenerateQuadruple):
            cross_ratio(SpherePoint(2), SpherePoint(2), SpherePoint(2), SpherePoint(0))

    def test_moebius_invariance(self):
        rng = random.Random(13)
        for _ in range(150):
            pts = [SpherePoint(complex(rng.gauss(0, 2), rng.gauss(0, 2))) for _ in range(4)]
            try:
                v = cross_ratio(*pts)
            except DegenerateQuadruple:
                continue
            m = random_moebius(rng)
            w = cross_ratio(*(m(p) for p in pts))
            assert chordal_distance(v, w) < 1e-9


class TestSpherePoint:
    def test_rejects_nan(self):
        with pytest.raises(ValueError):
            SpherePoint(complex(float("nan"), 0))

    def test_equality_is_metric(self):
        assert SpherePoint(1e-12) == SpherePoint(0)
        assert SpherePoint(1) != SpherePoint(0)

    def test_pole_maps_to_infinity(self):
        m = MoebiusMap(0, 1, 1, 0)  # z -> 1/z
        assert m(SpherePoint(0)).is_infinity
        assert m(INFINITY).isclose(SpherePoint(0))

import itertools
import random

import pytest

from helpers import random_signed_end
from merograft.grafting import Weight, signed_cusp_end, signed_geodesic_end
from merograft.surfaces import (
    InvalidSignature,
    SurfaceSignature,
    chi,
    dt_parameter_count,
    fiber_square_check,
    fiber_square_defect,
)


class TestChi:
    def test_genus_two_closed_equivalent(self):
        sig = SurfaceSignature(genus=2, punctures=1, cusps=1)
        assert chi(sig) == 9

    def test_thrice_punctured_sphere(self):
        assert chi(SurfaceSignature(genus=0, punctures=3, cusps=3)) == 3

    def test_minimal_crown_sphere(self):
        sig = SurfaceSignature(genus=0, boundary_orders=(6,))
        assert chi(sig) == 1

    def test_sphere_crown_needs_three_marked_points(self):
        # chi would be 1, but the standing genus-zero hypothesis rejects it
        with pytest.raises(InvalidSignature):
            SurfaceSignature(genus=0, boundary_orders=(3,), punctures=1, cusps=1)

    def test_rejects_nonpositive_chi(self):
        with pytest.raises(InvalidSignature):
            SurfaceSignature(genus=0, boundary_orders=(5,), punctures=0)

    def test_rejects_sphere_with_few_marked_points(self):
        with pytest.raises(InvalidSignature):
            SurfaceSignature(genus=0, punctures=2, cusps=2)
        with pytest.raises(InvalidSignature):
            SurfaceSignature(genus=0, boundary_orders=(3, 3), punctures=0)

    def test_rejects_low_pole_order(self):
        with pytest.raises(InvalidSignature):
            SurfaceSignature(genus=1, boundary_orders=(2,), punctures=0)

    def test_rejects_bad_cusp_split(self):
        with pytest.raises(InvalidSignature):
            SurfaceSignature(genus=1, punctures=1, cusps=2)

    def test_requires_marked_points(self):
        with pytest.raises(InvalidSignature):
            SurfaceSignature(genus=2)


class TestDTCount:
    def test_once_punctured_torus(self):
        sig = SurfaceSignature(genus=1, punctures=1, cusps=1)
        count = dt_parameter_count(sig)
        assert count.pants_count == 1
        assert count.interior_curves == 1
        assert (count.interior_dim, count.boundary_factor, count.cusp_factor) == (2, 0, 1)
        assert count.total == 3 == chi(sig)

    def test_thrice_punctured_sphere(self):
        sig = SurfaceSignature(genus=0, punctures=3, cusps=3)
        count = dt_parameter_count(sig)
        assert count.pants_count == 1
        assert count.interior_curves == 0
        assert count.total == 3 == chi(sig)

    def test_single_crown_with_geodesic_end(self):
        sig = SurfaceSignature(genus=0, boundary_orders=(4,), punctures=1, cusps=0)
        count = dt_parameter_count(sig)
        assert count.total == 2 == chi(sig)

    def test_total_equals_chi_on_grid(self):
        checked = 0
        for g, k, m in itertools.product(range(4), range(4), range(5)):
            for orders in itertools.combinations_with_replacement(range(3, 7), k):
                for p in range(m + 1):
                    try:
                        sig = SurfaceSignature(
                            genus=g, boundary_orders=orders, punctures=m, cusps=p
                        )
                    except InvalidSignature:
                        continue
                    assert dt_parameter_count(sig).total == chi(sig)
                    checked += 1
        assert checked > 300


class TestFiberSquare:
    def test_matching_signs_clockwise(self):
        end = signed_geodesic_end(1.0, (1.5,), (Weight.pi_times(1),), 1, 1)
        assert fiber_square_check(end)
        assert fiber_square_defect(end) < 1e-15

    def test_cusp_full_turn_negative_sign(self):
        end = signed_cusp_end((0.2,), (Weight.pi_times(2),), -1)
        assert fiber_square_check(end)

    def test_bare_cusp(self):
        end = signed_cusp_end((), (), 1)
        assert fiber_square_check(end)

    def test_bulk_random_both_conventions(self):
        rng = random.Random(31)
        for _ in range(1000):
            end = random_signed_end(rng)
            assert fiber_square_check(end)
            assert fiber_square_check(end.flip_signs())

"""Surface signatures, dimension counts, and the signed-square identity.

A signature records genus, the pole orders n_i >= 3 at the boundary
components (each carrying n_i - 2 marked points), and the interior
punctures split into cusp ends and geodesic ends.  The dimension of the
relevant parameter cells is

    chi = 6g - 6 + sum(n_i + 1) + 3m

and the Dehn-Thurston accounting reproduces chi from a pants
decomposition: #P = 2g - 2 + m + k pants, t = (3#P - (m+k))/2 interior
curves contributing two parameters each, one parameter per geodesic or
crown boundary, a nonnegative parameter per cusp, and n_i - 2 per crown.
"""

from __future__ import annotations

from dataclasses import dataclass

from .grafting import SignedEndData, grafting_exponent, signed_c_parameter


class InvalidSignature(ValueError):
    pass


class NonIntegerT(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceSignature:
    genus: int
    boundary_orders: tuple[int, ...] = ()
    punctures: int = 0
    cusps: int = 0

    def __post_init__(self):
        object.__setattr__(self, "boundary_orders", tuple(int(n) for n in self.boundary_orders))
        if self.genus < 0 or self.punctures < 0:
            raise InvalidSignature("genus and puncture count must be nonnegative")
        if any(n < 3 for n in self.boundary_orders):
            raise InvalidSignature("boundary pole orders must all be at least 3")
        if not 0 <= self.cusps <= self.punctures:
            raise InvalidSignature("cusp count must split the punctures")
        if self.marked_point_count < 1:
            raise InvalidSignature("at least one marked point is required")
        if self.genus == 0 and self.marked_point_count < 3:
            raise InvalidSignature("genus zero needs at least three marked points")
        if self.chi <= 0:
            raise InvalidSignature(f"chi = {self.chi} must be positive")

    @property
    def boundary_count(self) -> int:
        return len(self.boundary_orders)

    @property
    def geodesic_ends(self) -> int:
        return self.punctures - self.cusps

    @property
    def boundary_marked_points(self) -> int:
        return sum(n - 2 for n in self.boundary_orders)

    @property
    def marked_point_count(self) -> int:
        return self.punctures + self.boundary_marked_points

    @property
    def chi(self) -> int:
        return (
            6 * self.genus
            - 6
            + sum(n + 1 for n in self.boundary_orders)
            + 3 * self.punctures
        )


def chi(sig: SurfaceSignature) -> int:
    """The dimension count 6g - 6 + sum(n_i + 1) + 3m (validated positive)."""
    return sig.chi


@dataclass(frozen=True)
class DTParameterCount:
    """Dehn-Thurston accounting for the space of signed measured
    laminations; `total` equals chi, with `cusp_factor` counting the
    coordinates that are only half-lines before signing."""

    pants_count: int
    interior_curves: int
    interior_dim: int
    boundary_factor: int
    cusp_factor: int
    crown_factor: int
    total: int


def dt_parameter_count(sig: SurfaceSignature) -> DTParameterCount:
    """Parameter count for laminations on a surface of the given signature."""
    m, k = sig.punctures, sig.boundary_count
    pants = 2 * sig.genus - 2 + m + k
    three_p = 3 * pants - (m + k)
    if three_p % 2 != 0:
        raise NonIntegerT(f"parity failure: 3#P - (m+k) = {three_p}")
    t = three_p // 2
    crown = sig.boundary_marked_points
    total = 2 * t + (sig.geodesic_ends + k) + sig.cusps + crown
    if total != sig.chi:
        raise NonIntegerT(f"accounting total {total} != chi {sig.chi}")
    return DTParameterCount(
        pants_count=pants,
        interior_curves=t,
        interior_dim=2 * t,
        boundary_factor=sig.geodesic_ends + k,
        cusp_factor=sig.cusps,
        crown_factor=crown,
        total=total,
    )


def fiber_square_check(end: SignedEndData, tol: float = 1e-10) -> bool:
    """The square identity tying the signed end parameter to the exponent:
    (sigma*l + i*tau*alpha)^2 must equal the squared signed exponent."""
    c = signed_c_parameter(end)
    r = grafting_exponent(end)
    return abs(c * c - r * r) < tol


def fiber_square_defect(end: SignedEndData) -> float:
    """|c^2 - r^2| for diagnostics."""
    c = signed_c_parameter(end)
    r = grafting_exponent(end)
    return abs(c * c - r * r)

"""Model developing maps at a regular singularity and their Schwarzians.

The local models on the punctured disk are

  * ``PowerTheta(theta)``      w -> w^theta               (theta not an integer)
  * ``PowerN(n)``              w -> w^n                   (trivial monodromy)
  * ``PowerPlusLog(n)``        w -> w^{-n} + log w        (parabolic monodromy)
  * ``LogEnd(l)``              w -> i*w^{l/(2*pi*i)}      (bare geodesic end)
  * ``GeodesicPower(a, l, s)`` w -> w^{(a +- i*l)/(2*pi)} (spiralling leaves)

Each has a closed-form Schwarzian derivative whose w^{-2} coefficient is
the leading coefficient of the induced quadratic differential; the
exponent is +-2*pi*i*sqrt(1 - 2a) for leading coefficient a.  Closed
forms are cross-checked by two independent oracles: a finite-difference
Schwarzian (central differences with Richardson extrapolation, evaluated
in extended precision) and a radius-shrinking limit for the leading
coefficient.  Analytic continuation around the puncture recovers the
theoretical peripheral monodromy as a best-fit Moebius map.

Branch discipline: principal logarithm everywhere; continuation tracks
the branch by accumulating logs of consecutive sample ratios.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath as mp
import numpy as np

from .grafting import PoleOrder, SignedEndData, Spiral, cusp_monodromy
from .moebius import (
    DEFAULT_TOL,
    INFINITY,
    MoebiusMap,
    SpherePoint,
    Tolerances,
    chordal_distance,
)

TWO_PI = 2.0 * math.pi


class BranchCut(ValueError):
    """Evaluation point lies on the principal branch cut (strict mode)."""


class StepTooLarge(ValueError):
    """Finite-difference step failed its Richardson consistency check."""


class DivergentLimit(ValueError):
    """w^2 q(w) grows as w -> 0: the pole order exceeds 2."""


class FitResidualTooLarge(ValueError):
    """Branch tracking around the loop did not produce a Moebius relation."""


@dataclass(frozen=True)
class PowerTheta:
    theta: complex

    def __post_init__(self):
        t = complex(self.theta)
        if abs(t.imag) < 1e-12 and abs(t.real - round(t.real)) < 1e-12:
            raise ValueError("integer theta: use PowerN or PowerPlusLog")
        object.__setattr__(self, "theta", t)


@dataclass(frozen=True)
class PowerN:
    n: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 1):
            raise ValueError("PowerN needs an integer n >= 1")


@dataclass(frozen=True)
class PowerPlusLog:
    n: int

    def __post_init__(self):
        if not (isinstance(self.n, int) and self.n >= 0):
            raise ValueError("PowerPlusLog needs an integer n >= 0")


@dataclass(frozen=True)
class LogEnd:
    boundary_length: float

    def __post_init__(self):
        if not self.boundary_length > 0:
            raise ValueError("boundary length must be positive")


@dataclass(frozen=True)
class GeodesicPower:
    weight: float
    boundary_length: float
    spiral: Spiral

    def __post_init__(self):
        if self.weight == 0:
            raise ValueError("zero total weight: use LogEnd")
        if not self.boundary_length > 0:
            raise ValueError("boundary length must be positive")


ModelMap = PowerTheta | PowerN | PowerPlusLog | LogEnd | GeodesicPower


def _power_exponent(kind: ModelMap) -> complex | None:
    """theta for the pure-power models w -> (unit)*w^theta, None otherwise."""
    if isinstance(kind, PowerTheta):
        return kind.theta
    if isinstance(kind, PowerN):
        return complex(kind.n)
    if isinstance(kind, LogEnd):
        return kind.boundary_length / (2j * math.pi)
    if isinstance(kind, GeodesicPower):
        sgn = 1 if kind.spiral is Spiral.ANTICLOCKWISE else -1
        return complex(kind.weight, sgn * kind.boundary_length) / TWO_PI
    return None


def _unit_factor(kind: ModelMap) -> complex:
    return 1j if isinstance(kind, LogEnd) else 1 + 0j


def eval_model(kind: ModelMap, w, strict_branch: bool = False) -> SpherePoint:
    """Evaluate the model map at w (not 0 or infinity), principal branch.

    In strict mode a point on the cut (negative real axis) raises BranchCut.
    """
    p = SpherePoint.of(w)
    if p.is_infinity or p.value == 0:
        raise ValueError("model maps are evaluated away from 0 and infinity")
    z = p.value
    if strict_branch and z.real < 0 and z.imag == 0:
        raise BranchCut(f"{z!r} lies on the principal branch cut")
    theta = _power_exponent(kind)
    if theta is not None:
        return SpherePoint(_unit_factor(kind) * cmath.exp(theta * cmath.log(z)))
    n = kind.n
    return SpherePoint(cmath.exp(-n * cmath.log(z)) + cmath.log(z))


def model_map_function(kind: ModelMap):
    """The model as a callable on complex numbers, safe to feed mpmath
    values (used by the finite-difference oracle)."""
    theta = _power_exponent(kind)
    if theta is not None:
        unit = _unit_factor(kind)

        def f(z):
            return unit * mp.exp(mp.mpc(theta) * mp.log(z))

        return f
    n = kind.n

    def f(z):
        return mp.exp(mp.mpc(-n) * mp.log(z)) + mp.log(z)

    return f


@dataclass(frozen=True)
class SchwarzianReport:
    """Leading data of the Schwarzian at the puncture: the w^{-2}
    coefficient, the order of the next term when there is one, and the
    resulting pole order."""

    leading: complex
    subleading_order: int | None
    pole: PoleOrder


def closed_form_schwarzian(kind: ModelMap) -> SchwarzianReport:
    """Closed-form leading data for each model.

    Pure powers w^theta have S = (1-theta^2)/(2w^2) exactly.  The mixed
    map w^{-n} + log w has leading coefficient (1-n^2)/2 with next term
    -2n*w^{n-2} (n >= 1), giving a simple pole exactly at n = 1; n = 0
    gives exactly (1/2)w^{-2}.
    """
    theta = _power_exponent(kind)
    if theta is not None:
        a = (1 - theta * theta) / 2
        if isinstance(kind, PowerN) and kind.n == 1:
            return SchwarzianReport(0j, None, PoleOrder.NO_POLE)
        return SchwarzianReport(a, None, PoleOrder.ORDER_2)
    n = kind.n
    if n == 0:
        return SchwarzianReport(0.5 + 0j, None, PoleOrder.ORDER_2)
    a = complex((1 - n * n) / 2)
    pole = PoleOrder.ORDER_1 if n == 1 else PoleOrder.ORDER_2
    return SchwarzianReport(a, n - 2, pole)


def closed_form_schwarzian_at(kind: ModelMap, w: complex) -> complex:
    """Value of the closed-form Schwarzian derivative at a point.

    For w^{-n} + log w this is the full rational expression
    (w^{2n} - w^n(2n^3+2n) - n^2(n^2-1)) / (2 w^2 (w^n - n)^2).
    """
    w = complex(w)
    theta = _power_exponent(kind)
    if theta is not None:
        return (1 - theta * theta) / (2 * w * w)
    n = kind.n
    wn = w**n
    num = wn * wn - wn * (2 * n**3 + 2 * n) - n * n * (n * n - 1)
    den = 2 * w * w * (wn - n) ** 2
    return num / den


def numeric_schwarzian(
    f,
    z: complex,
    h: float | None = None,
    dps: int = 60,
    check_tol: float = 1e-3,
) -> complex:
    """Finite-difference estimate of S(f)(z) = f'''/f' - (3/2)(f''/f')^2.

    Central differences at two step sizes with one Richardson
    extrapolation; evaluated in extended precision since the stencil
    involves a third derivative.  Raises StepTooLarge when the two
    estimates disagree beyond `check_tol` (relative).
    """
    with mp.workdps(dps):
        zz = mp.mpc(z)
        step = mp.mpf(h) if h is not None else mp.mpf(1e-4) * max(abs(zz), mp.mpf(1))

        def estimate(hh):
            fp2, fp1 = f(zz + 2 * hh), f(zz + hh)
            fm1, fm2 = f(zz - hh), f(zz - 2 * hh)
            f0 = f(zz)
            d1 = (fp1 - fm1) / (2 * hh)
            d2 = (fp1 - 2 * f0 + fm1) / (hh * hh)
            d3 = (fp2 - 2 * fp1 + 2 * fm1 - fm2) / (2 * hh**3)
            return d3 / d1 - mp.mpf(1.5) * (d2 / d1) ** 2

        s1 = estimate(step)
        s2 = estimate(step / 2)
        richardson = (4 * s2 - s1) / 3
        scale = max(abs(richardson), mp.mpf(1))
        if abs(s1 - s2) > check_tol * scale:
            raise StepTooLarge(
                f"step {float(step):g}: estimates differ by {float(abs(s1 - s2)):g}"
            )
        return complex(richardson)


def leading_coefficient_limit(
    q,
    base_radius: float = 1e-2,
    levels: int = 9,
    direction: complex = cmath.exp(0.37j),
    tol: Tolerances = DEFAULT_TOL,
) -> complex:
    """lim_{w->0} w^2 q(w) along a shrinking radius sequence.

    Radii halve at each level; the Richardson table removes the integer
    powers of w one by one.  Raises DivergentLimit when the samples grow,
    i.e. q has a pole of order above 2.
    """
    samples = []
    for k in range(levels):
        w = direction * base_radius * 0.5**k
        samples.append((w * w) * complex(q(w)))
    mags = [abs(s) for s in samples]
    floor = max(1.0, mags[0])
    if all(mags[k + 1] > 1.5 * mags[k] for k in range(levels - 2, levels - 4, -1)) and mags[
        -1
    ] > 10 * floor:
        raise DivergentLimit("w^2 q(w) grows as w -> 0")
    table = list(samples)
    for j in range(1, levels):
        fac = 2.0**j
        table = [
            (fac * table[k + 1] - table[k]) / (fac - 1.0) for k in range(len(table) - 1)
        ]
    return table[0]


@dataclass(frozen=True)
class Exponent:
    """An exponent value r = sign * 2*pi*i*sqrt(1-2a) with its sign choice."""

    value: complex
    sign: int


def exponent_from_leading(a: complex, sign: int = 1) -> Exponent:
    """Exponent determined by a leading coefficient, principal square root."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return Exponent(sign * 2j * math.pi * cmath.sqrt(1 - 2 * complex(a)), sign)


def asymptotic_values(kind: ModelMap) -> tuple[SpherePoint, ...]:
    """Limit values of the model map along paths into the puncture.

    Loxodromic models reach both 0 and infinity (along opposite spirals);
    elliptic and trivial powers extend continuously with value 0; the
    mixed power-log maps diverge to infinity only.
    """
    if isinstance(kind, PowerPlusLog):
        return (INFINITY,)
    if isinstance(kind, PowerN):
        return (SpherePoint(0),)
    theta = _power_exponent(kind)
    if abs(theta.imag) < 1e-15:
        return (SpherePoint(0),)
    return (SpherePoint(0), INFINITY)


def model_asymptotic_value(kind: ModelMap) -> SpherePoint | None:
    """The unique asymptotic value, when there is exactly one."""
    vals = asymptotic_values(kind)
    return vals[0] if len(vals) == 1 else None


def theoretical_loop_monodromy(kind: ModelMap) -> MoebiusMap:
    """The peripheral monodromy the model must exhibit: multiplication by
    e^{2*pi*i*theta} for the power models, z -> z + 2*pi*i for the mixed
    power-log maps, the identity for single-valued powers."""
    theta = _power_exponent(kind)
    if theta is not None:
        return MoebiusMap.scaling(cmath.exp(2j * math.pi * theta))
    return MoebiusMap.translation(2j * math.pi)


def _branch_value(kind: ModelMap, log_w: complex) -> complex:
    theta = _power_exponent(kind)
    if theta is not None:
        return _unit_factor(kind) * cmath.exp(theta * log_w)
    return cmath.exp(-kind.n * log_w) + log_w


def fit_moebius(sources, targets) -> tuple[MoebiusMap, float]:
    """Least-squares Moebius map sending each source to its target, via
    the null vector of the homogeneous system a*z + b - c*z*w - d*w = 0.
    Returns the map and the worst chordal mismatch over the data."""
    rows = [[z, 1.0, -z * w, -w] for z, w in zip(sources, targets)]
    _, _, vh = np.linalg.svd(np.array(rows, dtype=complex))
    # right singular vectors are the conjugated rows of vh
    a, b, c, d = np.conj(vh[-1])
    m = MoebiusMap(a, b, c, d)
    residual = max(
        chordal_distance(m(SpherePoint(z)), SpherePoint(w))
        for z, w in zip(sources, targets)
    )
    return m, residual


def continue_along_loop(
    kind: ModelMap,
    base,
    steps: int = 256,
    fit_tol: float = 1e-8,
) -> MoebiusMap:
    """Analytically continue the model once around the puncture along the
    circle through `base` and return the best-fit Moebius map relating the
    continued branch to the original one.

    The branch is tracked by accumulating principal logarithms of
    consecutive sample ratios, so the 2*pi*i winding is computed, not
    assumed.  Raises FitResidualTooLarge when the fit misses `fit_tol`.
    """
    if steps < 64:
        raise ValueError("need at least 64 steps around the loop")
    p = SpherePoint.of(base)
    if p.is_infinity or p.value == 0:
        raise ValueError("base point must avoid 0 and infinity")
    w0 = p.value
    logs = [cmath.log(w0)]
    prev = w0
    for j in range(1, steps + 1):
        wj = w0 * cmath.exp(2j * math.pi * j / steps)
        logs.append(logs[-1] + cmath.log(wj / prev))
        prev = wj
    winding = logs[-1] - logs[0]
    sample_idx = range(0, steps, max(1, steps // 16))
    sources = [_branch_value(kind, logs[j]) for j in sample_idx]
    targets = [_branch_value(kind, logs[j] + winding) for j in sample_idx]
    m, residual = fit_moebius(sources, targets)
    if residual > fit_tol:
        raise FitResidualTooLarge(f"fit residual {residual:g} exceeds {fit_tol:g}")
    return m


def model_for_end(end: SignedEndData, tol: Tolerances = DEFAULT_TOL) -> ModelMap:
    """The model developing map matching a grafted end's magnitudes.

    Cusps with total weight off the 2*pi lattice give w^{-alpha/(2*pi)};
    on the lattice the monodromy constant chooses between w^n and
    w^{-n} + log w.  Geodesic ends give the spiralling power, or the
    logarithmic end when no leaves spiral in.
    """
    alpha = end.total_weight
    if end.is_cusp:
        turns = alpha / TWO_PI
        n = round(turns)
        if abs(turns - n) * TWO_PI >= tol.chordal:
            return PowerTheta(-alpha / TWO_PI)
        c = cusp_monodromy(end.spec).constant
        if abs(c) < tol.algebraic and n >= 1:
            return PowerN(n)
        return PowerPlusLog(n)
    if alpha == 0:
        return LogEnd(end.boundary_length)
    return GeodesicPower(alpha, end.boundary_length, end.spiral)

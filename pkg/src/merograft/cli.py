"""Batch command line front-end.

Subcommands ingest JSON files, run the corresponding computation, and
emit a report either as JSON (machine readable, byte-deterministic for
fixed inputs and seed) or as aligned text.  Every numeric field in a
report carries a provenance note naming the formula that produced it.

Exit codes: 0 success, 2 input/schema violation, 3 a numeric tolerance
or verification failure.
"""

from __future__ import annotations

import argparse
import json
import math
import random
import sys
from fractions import Fraction

from .framed import (
    FramedRep,
    IllDefinedCoordinate,
    RepPresentation,
    Triangulation,
    classify_phi_image,
    edge_quad,
    fg_edge_coordinate,
    is_degenerate,
    nondegenerate_framing_search,
    rep_is_degenerate_unframed,
    triangulation_well_defined,
)
from .grafting import (
    CuspGraftSpec,
    GeodesicGraftSpec,
    SignedEndData,
    Spiral,
    Weight,
    cusp_c_closed_form,
    cusp_monodromy,
    geodesic_closed_form_map,
    geodesic_monodromy,
    grafting_exponent,
    infer_end_from_monodromy,
    pole_order,
    signed_c_parameter,
    signed_cusp_end,
    signed_geodesic_end,
)
from .moebius import DEFAULT_TOL, MoebiusMap, SpherePoint, Tolerances
from .schwarzian import (
    BranchCut,
    PowerPlusLog,
    PowerTheta,
    closed_form_schwarzian,
    eval_model,
    exponent_from_leading,
    model_for_end,
)
from .surfaces import SurfaceSignature, dt_parameter_count, fiber_square_check

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_NUMERIC = 3


class SchemaError(ValueError):
    """Input validation failure, carrying a JSON-pointer-style path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


# ---------------------------------------------------------------------------
# JSON value coding


def _decode_complex(value, path: str) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, list) and len(value) == 2:
        try:
            return complex(float(value[0]), float(value[1]))
        except (TypeError, ValueError):
            raise SchemaError(path, "complex entries must be numbers")
    raise SchemaError(path, "expected a number or [re, im]")


def _decode_point(value, path: str) -> SpherePoint:
    if value == "inf":
        return SpherePoint.infinity()
    return SpherePoint(_decode_complex(value, path))


def _encode_complex(z: complex) -> list[float]:
    return [z.real, z.imag]


def _encode_point(p: SpherePoint):
    return "inf" if p.is_infinity else _encode_complex(p.value)


def _encode_map(m: MoebiusMap) -> list[list[list[float]]]:
    return [
        [_encode_complex(m.a), _encode_complex(m.b)],
        [_encode_complex(m.c), _encode_complex(m.d)],
    ]


def _require(data: dict, key: str, path: str):
    if key not in data:
        raise SchemaError(f"{path}/{key}", "missing required field")
    return data[key]


# ---------------------------------------------------------------------------
# spec parsing


def _parse_weight(value, path: str) -> Weight:
    if not isinstance(value, dict):
        raise SchemaError(path, 'expected {"pi_multiple": q} or {"radians": x}')
    if "pi_multiple" in value:
        raw = value["pi_multiple"]
        if not isinstance(raw, (str, int)):
            # floats are rejected on purpose: this input form is the exact path
            raise SchemaError(
                f"{path}/pi_multiple", "expected an exact rational (string or integer)"
            )
        try:
            return Weight.pi_times(Fraction(raw))
        except (ValueError, ZeroDivisionError) as exc:
            raise SchemaError(f"{path}/pi_multiple", str(exc))
    if "radians" in value:
        try:
            return Weight.of(float(value["radians"]))
        except (TypeError, ValueError) as exc:
            raise SchemaError(f"{path}/radians", str(exc))
    raise SchemaError(path, 'needs "pi_multiple" or "radians"')


def _parse_sign(value, path: str) -> int:
    if value in (1, -1):
        return value
    raise SchemaError(path, "expected +1 or -1")


def parse_end_spec(data: dict, path: str = "") -> CuspGraftSpec | GeodesicGraftSpec | SignedEndData:
    """Typed grafting data from JSON; returns SignedEndData when signs are
    present, otherwise the bare spec."""
    if not isinstance(data, dict):
        raise SchemaError(path or "/", "expected an object")
    kind = _require(data, "end", path)
    positions = _require(data, "positions", path)
    if not isinstance(positions, list):
        raise SchemaError(f"{path}/positions", "expected a list")
    raw_weights = _require(data, "weights", path)
    if not isinstance(raw_weights, list) or len(raw_weights) != len(positions):
        raise SchemaError(f"{path}/weights", "expected one weight per position")
    weights = tuple(
        _parse_weight(w, f"{path}/weights/{i}") for i, w in enumerate(raw_weights)
    )
    weight_sign = data.get("weight_sign")
    if kind == "cusp":
        try:
            spec = CuspGraftSpec(tuple(positions), weights)
        except ValueError as exc:
            raise SchemaError(f"{path}/positions", str(exc))
        if weight_sign is None:
            return spec
        return SignedEndData(spec, _parse_sign(weight_sign, f"{path}/weight_sign"))
    if kind == "geodesic":
        length = _require(data, "boundary_length", path)
        end_sign = data.get("end_sign")
        if end_sign is not None and weight_sign is not None:
            try:
                return signed_geodesic_end(
                    float(length),
                    tuple(positions),
                    weights,
                    _parse_sign(end_sign, f"{path}/end_sign"),
                    _parse_sign(weight_sign, f"{path}/weight_sign"),
                )
            except ValueError as exc:
                raise SchemaError(path or "/", str(exc))
        spiral_name = data.get("spiral", "anticlockwise")
        try:
            spiral = Spiral(spiral_name)
        except ValueError:
            raise SchemaError(f"{path}/spiral", f"unknown spiral {spiral_name!r}")
        try:
            return GeodesicGraftSpec(float(length), tuple(positions), weights, spiral)
        except ValueError as exc:
            raise SchemaError(path or "/", str(exc))
    raise SchemaError(f"{path}/end", f'unknown end type {kind!r}, expected "cusp" or "geodesic"')


def parse_signature(data: dict, path: str = "") -> SurfaceSignature:
    if not isinstance(data, dict):
        raise SchemaError(path or "/", "expected an object")
    try:
        return SurfaceSignature(
            genus=int(_require(data, "genus", path)),
            boundary_orders=tuple(int(n) for n in data.get("boundaries", [])),
            punctures=int(data.get("punctures", 0)),
            cusps=int(data.get("cusps", data.get("punctures", 0))),
        )
    except (TypeError, ValueError) as exc:
        raise SchemaError(path or "/", str(exc))


def _parse_matrix(value, path: str) -> MoebiusMap:
    if not (isinstance(value, list) and len(value) == 2):
        raise SchemaError(path, "expected a 2x2 matrix")
    rows = []
    for i, row in enumerate(value):
        if not (isinstance(row, list) and len(row) == 2):
            raise SchemaError(f"{path}/{i}", "expected a row of two entries")
        rows.append([_decode_complex(row[0], f"{path}/{i}/0"), _decode_complex(row[1], f"{path}/{i}/1")])
    try:
        return MoebiusMap(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    except ValueError as exc:
        raise SchemaError(path, str(exc))


def _parse_word(value, path: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise SchemaError(path, "expected a list of signed generator indices")
    out = []
    for i, idx in enumerate(value):
        if not isinstance(idx, int) or idx == 0:
            raise SchemaError(f"{path}/{i}", "indices are nonzero integers")
        out.append(idx)
    return tuple(out)


def parse_rep(data: dict, tol: Tolerances, path: str = "") -> RepPresentation:
    if not isinstance(data, dict):
        raise SchemaError(path or "/", "expected an object")
    surface = parse_signature(_require(data, "surface", path), f"{path}/surface")
    gens_raw = _require(data, "generators", path)
    if not isinstance(gens_raw, list) or not gens_raw:
        raise SchemaError(f"{path}/generators", "expected a nonempty list")
    generators = tuple(
        _parse_matrix(g, f"{path}/generators/{i}") for i, g in enumerate(gens_raw)
    )
    puncture_words = tuple(
        _parse_word(w, f"{path}/puncture_words/{i}")
        for i, w in enumerate(_require(data, "puncture_words", path))
    )
    boundary_words = tuple(
        _parse_word(w, f"{path}/boundary_words/{i}")
        for i, w in enumerate(data.get("boundary_words", []))
    )
    relator = _parse_word(_require(data, "relator", path), f"{path}/relator")
    try:
        return RepPresentation(
            surface=surface,
            generators=generators,
            puncture_words=puncture_words,
            boundary_words=boundary_words,
            relator=relator,
            tol=tol,
        )
    except ValueError as exc:
        raise SchemaError(f"{path}/relator", str(exc))


def parse_framed_rep(data: dict, tol: Tolerances, path: str = "") -> FramedRep:
    rep = parse_rep(data, tol, path)
    sig = rep.surface
    framing_raw = _require(data, "framing", path)
    if not isinstance(framing_raw, list):
        raise SchemaError(f"{path}/framing", "expected a list")
    punctures: dict[int, SpherePoint] = {}
    boundary: dict[tuple[int, int], SpherePoint] = {}
    for i, entry in enumerate(framing_raw):
        epath = f"{path}/framing/{i}"
        if not isinstance(entry, dict):
            raise SchemaError(epath, "expected {marked_point, value}")
        label = str(_require(entry, "marked_point", epath))
        value = _decode_point(_require(entry, "value", epath), f"{epath}/value")
        parts = label.split(":")
        if parts[0] == "puncture" and len(parts) == 2:
            punctures[int(parts[1])] = value
        elif parts[0] == "boundary" and len(parts) == 3:
            boundary[(int(parts[1]), int(parts[2]))] = value
        else:
            raise SchemaError(
                f"{epath}/marked_point", 'expected "puncture:<j>" or "boundary:<i>:<s>"'
            )
    try:
        puncture_framing = tuple(punctures[j] for j in range(sig.punctures))
        boundary_framing = tuple(
            tuple(boundary[(b, s)] for s in range(sig.boundary_orders[b] - 2))
            for b in range(sig.boundary_count)
        )
    except KeyError as exc:
        raise SchemaError(f"{path}/framing", f"missing framing for marked point {exc}")
    signing_raw = data.get("signing", {})
    signing: list[int | None] = [None] * sig.punctures
    for label, s in signing_raw.items():
        parts = str(label).split(":")
        if parts[0] != "puncture" or len(parts) != 2:
            raise SchemaError(f"{path}/signing", f"bad signing label {label!r}")
        signing[int(parts[1])] = _parse_sign(s, f"{path}/signing/{label}")
    try:
        return FramedRep(
            rep=rep,
            puncture_framing=puncture_framing,
            boundary_framing=boundary_framing,
            signing=tuple(signing),
        )
    except ValueError as exc:
        raise SchemaError(f"{path}/framing", str(exc))


def parse_triangulation(data: dict, path: str = "") -> Triangulation:
    if not isinstance(data, dict):
        raise SchemaError(path or "/", "expected an object")
    tris_raw = _require(data, "triangles", path)
    triangles = []
    for i, t in enumerate(tris_raw):
        if not (isinstance(t, list) and len(t) == 3):
            raise SchemaError(f"{path}/triangles/{i}", "expected three corners")
        triangles.append(
            tuple(_decode_point(v, f"{path}/triangles/{i}/{j}") for j, v in enumerate(t))
        )
    edges = []
    for i, e in enumerate(data.get("interior_edges", [])):
        if not (
            isinstance(e, list)
            and len(e) == 2
            and all(isinstance(side, list) and len(side) == 2 for side in e)
        ):
            raise SchemaError(
                f"{path}/interior_edges/{i}",
                "expected [[triangle, opposite_corner], [triangle, opposite_corner]]",
            )
        edges.append(((int(e[0][0]), int(e[0][1])), (int(e[1][0]), int(e[1][1]))))
    return Triangulation(tuple(triangles), tuple(edges))


def parse_spec(path: str, tol: Tolerances = DEFAULT_TOL):
    """Load and validate a spec file by its declared content."""
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError("/", f"not valid JSON: {exc}")
    if not isinstance(data, dict):
        raise SchemaError("/", "expected a JSON object")
    if "end" in data:
        return parse_end_spec(data)
    if "framing" in data:
        return parse_framed_rep(data, tol)
    if "generators" in data:
        return parse_rep(data, tol)
    if "triangles" in data:
        return parse_triangulation(data)
    if "genus" in data:
        return parse_signature(data)
    if "matrix" in data:
        return _parse_matrix(data["matrix"], "/matrix")
    raise SchemaError("/", "cannot identify the spec type from its fields")


# ---------------------------------------------------------------------------
# reports


def _render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, sort_keys=True, indent=2)
    lines = []

    def walk(prefix: str, value):
        if isinstance(value, dict):
            for key in sorted(value):
                walk(f"{prefix}{key}.", value[key])
        elif isinstance(value, list) and not all(
            isinstance(x, (int, float)) for x in value
        ):
            for i, x in enumerate(value):
                walk(f"{prefix}{i}.", x)
        else:
            lines.append(f"{prefix[:-1]} = {json.dumps(value)}")

    walk("", report)
    return "\n".join(lines)


def _monodromy_payload(result) -> dict:
    return {
        "matrix": _encode_map(result.monodromy),
        "multiplier": _encode_complex(result.multiplier),
        "constant": _encode_complex(result.constant),
        "total_weight": result.total_weight,
    }


def cmd_graft_end(spec, args) -> tuple[dict, int]:
    signed = isinstance(spec, SignedEndData)
    bare = spec.spec if signed else spec
    if isinstance(bare, CuspGraftSpec):
        result = cusp_monodromy(bare)
        provenance = {
            "multiplier": "product of bending rotations: mu = e^{-i*alpha}",
            "constant": "direct composition E_1(a_1)...E_r(a_r)T, T: z -> z+1; "
            "equals the telescoped a_1 + sum prod(omega^-1)(a_{i+1}-a_i), a_{r+1}=1",
            "pole_order": "double pole except total weight 2*pi: simple for c != 0, "
            "no pole for c = 0",
        }
        extra = {}
        if bare.leaf_count > 0:
            extra["closed_form_constant"] = _encode_complex(cusp_c_closed_form(bare))
    else:
        result = geodesic_monodromy(bare)
        provenance = {
            "multiplier": "lambda * e^{-+i*alpha} per spiral, lambda = e^l",
            "constant": "direct composition E_1(a_1)...E_r(a_r)T, T: z -> lambda*z "
            "(conjugacy representative; only trace^2 is invariant)",
            "pole_order": "geodesic ends always induce a double pole",
        }
        closed = geodesic_closed_form_map(bare)
        extra = {
            "closed_form_trace_squared": _encode_complex(closed.trace_squared),
            "direct_trace_squared": _encode_complex(result.monodromy.trace_squared),
        }
    payload = {
        "end": "cusp" if isinstance(bare, CuspGraftSpec) else "geodesic",
        "monodromy": _monodromy_payload(result),
        "pole_order": pole_order(bare).value,
        **extra,
    }
    if signed:
        payload["signed_c"] = _encode_complex(signed_c_parameter(spec))
        payload["exponent"] = _encode_complex(grafting_exponent(spec))
        provenance["signed_c"] = "c = sigma*l + i*tau*alpha"
        provenance["exponent"] = (
            "r = l+i*alpha clockwise, l-i*alpha anticlockwise, "
            "resolved by the boundary-orientation sign"
        )
    return {"results": payload, "provenance": provenance}, EXIT_OK


def cmd_infer_end(m: MoebiusMap, args) -> tuple[dict, int]:
    inferred = infer_end_from_monodromy(m)
    payload = {
        "end_type": inferred.end_type.value,
        "boundary_length": inferred.boundary_length,
        "weight_class_representative": inferred.weight_class.representative,
    }
    provenance = {
        "end_type": "cusp unless the multiplier leaves the unit circle",
        "boundary_length": "|log|mu|| for multiplier pair {mu, 1/mu}",
        "weight_class_representative": "arg(mu) modulo 2*pi, up to sign",
    }
    return {"results": payload, "provenance": provenance}, EXIT_OK


def cmd_exponent(spec, args) -> tuple[dict, int]:
    if not isinstance(spec, SignedEndData):
        raise SchemaError("/", "exponent needs signed end data (weight_sign, end_sign)")
    r = grafting_exponent(spec)
    c = signed_c_parameter(spec)
    model = model_for_end(spec)
    a = closed_form_schwarzian(model).leading
    r_model = exponent_from_leading(a, 1).value
    matches = min(abs(r_model - r), abs(r_model + r)) < 1e-10
    square_ok = fiber_square_check(spec)
    payload = {
        "exponent": _encode_complex(r),
        "signed_c": _encode_complex(c),
        "model": type(model).__name__,
        "leading_coefficient": _encode_complex(a),
        "exponent_from_leading": _encode_complex(r_model),
        "exponent_consistent": matches,
        "fiber_square_holds": square_ok,
    }
    provenance = {
        "exponent": "r = l+i*alpha clockwise, l-i*alpha anticlockwise, signed",
        "leading_coefficient": "w^-2 coefficient of the model Schwarzian",
        "exponent_from_leading": "r = 2*pi*i*sqrt(1-2a), principal branch",
        "fiber_square_holds": "(sigma*l + i*tau*alpha)^2 = r^2",
    }
    code = EXIT_OK if (matches and square_ok) else EXIT_NUMERIC
    return {"results": payload, "provenance": provenance}, code


def cmd_surface(sig: SurfaceSignature, args) -> tuple[dict, int]:
    count = dt_parameter_count(sig)
    payload = {
        "chi": sig.chi,
        "pants_count": count.pants_count,
        "interior_curves": count.interior_curves,
        "factors": {
            "interior": count.interior_dim,
            "boundary": count.boundary_factor,
            "cusp": count.cusp_factor,
            "crown": count.crown_factor,
        },
        "total": count.total,
    }
    provenance = {
        "chi": "chi = 6g - 6 + sum(n_i + 1) + 3m",
        "pants_count": "#P = 2g - 2 + m + k",
        "interior_curves": "t = (3#P - (m + k)) / 2",
        "total": "2t + (b + k) + p + sum(n_i - 2) = chi",
    }
    return {"results": payload, "provenance": provenance}, EXIT_OK


def cmd_classify_rep(rep: RepPresentation, args) -> tuple[dict, int]:
    verdict = classify_phi_image(rep)
    found = nondegenerate_framing_search(rep, trials=40, seed=args.seed)
    payload = {
        "in_image": verdict.in_image,
        "case": verdict.case,
        "degenerate_unframed": rep_is_degenerate_unframed(rep),
        "apparent_singularities": rep.apparent_singularities(),
        "trivial": rep.is_trivial(),
        "order_two_image": rep.has_order_two_image(),
        "nondegenerate_framing_found": found is not None,
    }
    if found is not None:
        payload["framing"] = [_encode_point(p) for p in found.all_framing_values()]
    provenance = {
        "in_image": "case list over N = sum(n_i - 2), degeneracy, apparent "
        "singularities, trivial and order-two images",
        "nondegenerate_framing_found": "randomized framing search oracle",
    }
    return {"results": payload, "provenance": provenance}, EXIT_OK


def cmd_check_framing(fr: FramedRep, args) -> tuple[dict, int]:
    verdict = is_degenerate(fr)
    payload = {"degenerate": verdict.degenerate}
    if verdict.witness is not None:
        payload["witness"] = {
            "condition": verdict.witness.condition,
            "points": [_encode_point(p) for p in verdict.witness.points],
            "boundary_index": verdict.witness.boundary_index,
            "flipped_punctures": list(verdict.witness.flipped_punctures),
        }
    provenance = {
        "degenerate": "one-point image with parabolic/identity peripherals, "
        "two-point image fixed by all puncture peripherals (over all flips), "
        "or adjacent boundary framings colliding",
    }
    return {"results": payload, "provenance": provenance}, EXIT_OK


def cmd_fg_coords(data: dict, args, tol: Tolerances) -> tuple[dict, int]:
    tri = parse_triangulation(_require(data, "triangulation", ""), "/triangulation")
    fr = None
    if "framing" in data:
        fr = parse_framed_rep(data, tol)
    coords = []
    for (i, oi), (j, oj) in tri.interior_edges:
        try:
            quad = edge_quad(tri.triangles[i], oi, tri.triangles[j], oj, tol)
            coords.append(_encode_complex(fg_edge_coordinate(*quad, tol=tol)))
        except IllDefinedCoordinate:
            coords.append("ill-defined")
    well = triangulation_well_defined(fr, tri)
    payload = {"well_defined": well, "edge_coordinates": coords}
    provenance = {
        "edge_coordinates": "cross-ratio (a-b)(c-d)/((b-c)(d-a)) of the four "
        "corners adjacent to the edge",
        "well_defined": "every interior edge coordinate finite and nonzero",
    }
    return {"results": payload, "provenance": provenance}, EXIT_OK


# ---------------------------------------------------------------------------
# built-in verification suite


def _verify_checks(seed: int, strict_branch: bool = False):
    rng = random.Random(seed)
    checks: list[tuple[str, bool, str]] = []

    ex1 = CuspGraftSpec((0.0, 0.5), (Weight.pi_times(1), Weight.pi_times(1)))
    r1 = cusp_monodromy(ex1)
    ok1 = (
        abs(r1.multiplier - 1) < 1e-12
        and abs(r1.constant) < 1e-12
        and pole_order(ex1).value == "no_pole"
    )
    checks.append(("thrice-punctured-sphere cusp: mu=1, c=0, no pole", ok1, ""))

    ex2 = CuspGraftSpec((1.0 / 3,), (Weight.pi_times(2),))
    r2 = cusp_monodromy(ex2)
    ok2 = abs(r2.constant - 1) < 1e-12 and pole_order(ex2).value == "order_1"
    checks.append(("single 2*pi leaf: c=1, simple pole", ok2, ""))

    worst = 0.0
    for _ in range(300):
        r = rng.randint(1, 6)
        pos = sorted(rng.uniform(0, 0.999) for _ in range(r))
        if len(set(pos)) < r:
            continue
        spec = CuspGraftSpec(tuple(pos), tuple(Weight.of(rng.uniform(0.05, 7)) for _ in range(r)))
        worst = max(worst, abs(cusp_c_closed_form(spec) - cusp_monodromy(spec).constant))
    checks.append(
        ("cusp closed form = direct composition (300 random)", worst < 1e-12, f"worst {worst:.2e}")
    )

    worst = 0.0
    for _ in range(300):
        l = rng.uniform(0.2, 2.0)
        lam = math.exp(l)
        r = rng.randint(0, 5)
        pos = tuple(sorted(1 + (lam - 1) * rng.uniform(0, 0.99) for _ in range(r)))
        if len(set(pos)) < r:
            continue
        wts = tuple(Weight.of(rng.uniform(0.05, 7)) for _ in range(r))
        spiral = rng.choice(list(Spiral))
        spec = GeodesicGraftSpec(l, pos, wts, spiral)
        t_direct = geodesic_monodromy(spec).monodromy.trace_squared
        t_closed = geodesic_closed_form_map(spec).trace_squared
        worst = max(worst, abs(t_direct - t_closed))
    checks.append(
        ("geodesic trace^2: closed form vs composition (300 random)", worst < 1e-9, f"worst {worst:.2e}")
    )

    worst = 0.0
    for _ in range(300):
        l = rng.uniform(0.1, 2.5)
        sigma, tau = rng.choice([1, -1]), rng.choice([1, -1])
        end = signed_geodesic_end(
            l,
            (1 + (math.exp(l) - 1) * rng.uniform(0, 0.9),),
            (Weight.of(rng.uniform(0.05, 6)),),
            sigma,
            tau,
        )
        r_end = grafting_exponent(end)
        a = closed_form_schwarzian(model_for_end(end)).leading
        r_model = exponent_from_leading(a, 1).value
        worst = max(worst, min(abs(r_model - r_end), abs(r_model + r_end)))
    checks.append(
        ("exponent from leading coefficient matches grafting data (300 random)", worst < 1e-10, f"worst {worst:.2e}")
    )

    ok = True
    for _ in range(300):
        sigma, tau = rng.choice([1, -1]), rng.choice([1, -1])
        if rng.random() < 0.5:
            end = signed_cusp_end((rng.uniform(0, 0.9),), (Weight.of(rng.uniform(0.05, 6)),), tau)
        else:
            l = rng.uniform(0.1, 2.5)
            end = signed_geodesic_end(
                l,
                (1 + (math.exp(l) - 1) * rng.uniform(0, 0.9),),
                (Weight.of(rng.uniform(0.05, 6)),),
                sigma,
                tau,
            )
        ok = ok and fiber_square_check(end) and fiber_square_check(end.flip_signs())
    checks.append(("square identity c^2 = r^2 under both sign conventions (300 random)", ok, ""))

    if strict_branch:
        ok = True
        for kind in (PowerTheta(0.5), PowerPlusLog(1)):
            try:
                eval_model(kind, -0.5, strict_branch=True)
                ok = False
            except BranchCut:
                pass
            if eval_model(kind, 0.5, strict_branch=True).is_infinity:
                ok = False
        checks.append(("strict branch policy rejects evaluation on the cut", ok, ""))
    return checks


def cmd_verify(args) -> tuple[dict, int]:
    checks = _verify_checks(args.seed, args.strict_branch)
    results = [
        {"check": name, "passed": passed, "detail": detail}
        for name, passed, detail in checks
    ]
    code = EXIT_OK if all(c["passed"] for c in results) else EXIT_NUMERIC
    return {"results": {"checks": results, "all_passed": code == EXIT_OK}}, code


# ---------------------------------------------------------------------------
# entry point


def _common_options(suppress: bool) -> argparse.ArgumentParser:
    # the subcommand copy suppresses defaults so flags placed before the
    # subcommand are not clobbered by re-parsing
    d = argparse.SUPPRESS if suppress else None
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--tolerance",
        type=float,
        default=d,
        help="chordal comparison tolerance",
    )
    common.add_argument(
        "--seed", type=int, default=0 if not suppress else d, help="seed for randomized checks"
    )
    common.add_argument(
        "--format",
        choices=("json", "text"),
        default="json" if not suppress else d,
    )
    common.add_argument(
        "--strict-branch",
        action="store_true",
        default=False if not suppress else d,
        help="reject evaluation on branch cuts",
    )
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="merograft",
        parents=[_common_options(False)],
        description="End-local grafting monodromy, exponents, pole orders, "
        "surface dimension counts, and framed representation classification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_options(True)
    for name, needs_file, summary in [
        ("graft-end", True, "monodromy, constant and pole order of a grafted end"),
        ("infer-end", True, "end data recoverable from a peripheral monodromy matrix"),
        ("exponent", True, "signed exponent and square identity for a signed end"),
        ("surface", True, "dimension count and lamination parameters of a signature"),
        ("classify-rep", True, "decide whether a representation occurs as monodromy"),
        ("check-framing", True, "degeneracy verdict for a framed representation"),
        ("fg-coords", True, "edge coordinates of a corner-labelled triangulation"),
        ("verify", False, "run the built-in verification suite"),
    ]:
        p = sub.add_parser(name, parents=[common], help=summary)
        if needs_file:
            p.add_argument("file", help="JSON input file")
    return parser


def _tolerances(args) -> Tolerances:
    if args.tolerance is None:
        return DEFAULT_TOL
    return Tolerances(chordal=args.tolerance, algebraic=min(args.tolerance, 1e-12))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    tol = _tolerances(args)
    try:
        if args.command == "verify":
            report, code = cmd_verify(args)
        else:
            with open(args.file, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            if not isinstance(data, dict):
                raise SchemaError("/", "expected a JSON object")
            if args.command == "graft-end":
                report, code = cmd_graft_end(parse_end_spec(data), args)
            elif args.command == "infer-end":
                report, code = cmd_infer_end(_parse_matrix(_require(data, "matrix", ""), "/matrix"), args)
            elif args.command == "exponent":
                report, code = cmd_exponent(parse_end_spec(data), args)
            elif args.command == "surface":
                report, code = cmd_surface(parse_signature(data), args)
            elif args.command == "classify-rep":
                report, code = cmd_classify_rep(parse_rep(data, tol), args)
            elif args.command == "check-framing":
                report, code = cmd_check_framing(parse_framed_rep(data, tol), args)
            else:
                report, code = cmd_fg_coords(data, args, tol)
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except (OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except ValueError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    report = {
        "command": args.command,
        "seed": args.seed,
        "tolerance": {"chordal": tol.chordal, "algebraic": tol.algebraic},
        **report,
    }
    print(_render(report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())

import json
import math

import pytest

from merograft.cli import main

EXAMPLE_1 = {
    "end": "cusp",
    "positions": [0, 0.5],
    "weights": [{"pi_multiple": "1"}, {"pi_multiple": "1"}],
}
EXAMPLE_2 = {
    "end": "cusp",
    "positions": [0.25],
    "weights": [{"pi_multiple": "2"}],
}
TORUS_REP = {
    "surface": {"genus": 1, "boundaries": [], "punctures": 1, "cusps": 1},
    "generators": [[[1, 1], [0, 1]], [[1, -1], [0, 1]]],
    "puncture_words": [[1, 2, -1, -2]],
    "boundary_words": [],
    "relator": [],
}


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload), encoding="utf-8")
    return str(path)


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


class TestGraftEnd:
    def test_example_one(self, tmp_path, capsys):
        code, report = run_json(capsys, ["graft-end", write(tmp_path, "e1.json", EXAMPLE_1)])
        assert code == 0
        results = report["results"]
        assert results["pole_order"] == "no_pole"
        mu = results["monodromy"]["multiplier"]
        c = results["monodromy"]["constant"]
        assert abs(complex(*mu) - 1) < 1e-12
        assert abs(complex(*c)) < 1e-12
        assert "provenance" in report

    def test_example_two(self, tmp_path, capsys):
        code, report = run_json(capsys, ["graft-end", write(tmp_path, "e2.json", EXAMPLE_2)])
        assert code == 0
        results = report["results"]
        assert results["pole_order"] == "order_1"
        assert abs(complex(*results["monodromy"]["constant"]) - 1) < 1e-12

    def test_signed_geodesic(self, tmp_path, capsys):
        spec = {
            "end": "geodesic",
            "boundary_length": 1.0,
            "positions": [1.5],
            "weights": [{"pi_multiple": "1"}],
            "end_sign": 1,
            "weight_sign": 1,
        }
        code, report = run_json(capsys, ["graft-end", write(tmp_path, "g.json", spec)])
        assert code == 0
        assert complex(*report["results"]["exponent"]) == pytest.approx(
            complex(1, math.pi)
        )

    def test_schema_error_exit_two(self, tmp_path, capsys):
        bad = {"end": "cusp", "positions": [0.5, 0.2], "weights": [{"radians": 1}, {"radians": 1}]}
        code = main(["graft-end", write(tmp_path, "bad.json", bad)])
        assert code == 2
        err = capsys.readouterr().err
        assert "positions" in err

    def test_float_pi_multiple_rejected(self, tmp_path, capsys):
        bad = {"end": "cusp", "positions": [0.1], "weights": [{"pi_multiple": 2.0}]}
        code = main(["graft-end", write(tmp_path, "bad2.json", bad)])
        assert code == 2
        assert "pi_multiple" in capsys.readouterr().err


class TestOtherCommands:
    def test_infer_end(self, tmp_path, capsys):
        payload = {"matrix": [[2, 0], [0, 1]]}
        code, report = run_json(capsys, ["infer-end", write(tmp_path, "m.json", payload)])
        assert code == 0
        results = report["results"]
        assert results["end_type"] == "geodesic"
        assert results["boundary_length"] == pytest.approx(math.log(2))

    def test_exponent_requires_signs(self, tmp_path, capsys):
        code = main(["exponent", write(tmp_path, "u.json", EXAMPLE_1)])
        assert code == 2

    def test_exponent_consistency_fields(self, tmp_path, capsys):
        spec = dict(EXAMPLE_1, weight_sign=1)
        code, report = run_json(capsys, ["exponent", write(tmp_path, "s.json", spec)])
        assert code == 0
        assert report["results"]["exponent_consistent"] is True
        assert report["results"]["fiber_square_holds"] is True

    def test_surface(self, tmp_path, capsys):
        sig = {"genus": 1, "boundaries": [], "punctures": 1, "cusps": 1}
        code, report = run_json(capsys, ["surface", write(tmp_path, "sig.json", sig)])
        assert code == 0
        assert report["results"]["chi"] == 3
        assert report["results"]["total"] == 3

    def test_surface_invalid_exit_two(self, tmp_path, capsys):
        sig = {"genus": 0, "boundaries": [], "punctures": 2, "cusps": 2}
        assert main(["surface", write(tmp_path, "sig.json", sig)]) == 2

    def test_classify_rep(self, tmp_path, capsys):
        code, report = run_json(
            capsys, ["classify-rep", write(tmp_path, "rep.json", TORUS_REP)]
        )
        assert code == 0
        results = report["results"]
        assert results["in_image"] is True
        assert results["degenerate_unframed"] is True
        assert results["apparent_singularities"] == [0]
        assert results["nondegenerate_framing_found"] is True

    def test_relator_failure_named(self, tmp_path, capsys):
        bad = dict(TORUS_REP, relator=[1])
        code = main(["classify-rep", write(tmp_path, "rep.json", bad)])
        assert code == 2
        assert "relator" in capsys.readouterr().err

    def test_check_framing(self, tmp_path, capsys):
        framed = dict(
            TORUS_REP,
            framing=[{"marked_point": "puncture:0", "value": [1, 0]}],
        )
        code, report = run_json(
            capsys, ["check-framing", write(tmp_path, "fr.json", framed)]
        )
        assert code == 0
        assert report["results"]["degenerate"] is False

    def test_check_framing_degenerate_with_witness(self, tmp_path, capsys):
        rep = {
            "surface": {"genus": 0, "boundaries": [], "punctures": 3, "cusps": 3},
            "generators": [[[1, 1], [0, 1]], [[1, 2], [0, 1]], [[1, -3], [0, 1]]],
            "puncture_words": [[1], [2], [3]],
            "boundary_words": [],
            "relator": [1, 2, 3],
            "framing": [
                {"marked_point": "puncture:0", "value": "inf"},
                {"marked_point": "puncture:1", "value": "inf"},
                {"marked_point": "puncture:2", "value": "inf"},
            ],
        }
        code, report = run_json(capsys, ["check-framing", write(tmp_path, "fr.json", rep)])
        assert code == 0
        assert report["results"]["degenerate"] is True
        assert report["results"]["witness"]["condition"] == 1

    def test_fg_coords(self, tmp_path, capsys):
        payload = {
            "triangulation": {
                "triangles": [
                    ["inf", [-1, 0], [0, 0]],
                    [[0, 0], [1, 0], "inf"],
                ],
                "interior_edges": [[[0, 1], [1, 1]]],
            }
        }
        code, report = run_json(capsys, ["fg-coords", write(tmp_path, "t.json", payload)])
        assert code == 0
        assert report["results"]["well_defined"] is True
        assert len(report["results"]["edge_coordinates"]) == 1


class TestVerify:
    def test_verify_passes(self, capsys):
        code, report = run_json(capsys, ["verify"])
        assert code == 0
        assert report["results"]["all_passed"] is True
        assert len(report["results"]["checks"]) == 6

    def test_verify_prints_one_line_per_check_in_text(self, capsys):
        code = main(["verify", "--format", "text"])
        assert code == 0
        out = capsys.readouterr().out
        assert out.count(".passed = true") == 6

    def test_strict_branch_adds_policy_check(self, capsys):
        code, report = run_json(capsys, ["verify", "--strict-branch"])
        assert code == 0
        checks = report["results"]["checks"]
        assert len(checks) == 7
        assert any("branch" in c["check"] for c in checks)


class TestParseSpec:
    def test_dispatch_by_fields(self, tmp_path):
        from merograft.cli import parse_spec
        from merograft.framed import FramedRep, RepPresentation, Triangulation
        from merograft.grafting import CuspGraftSpec
        from merograft.surfaces import SurfaceSignature

        assert isinstance(
            parse_spec(write(tmp_path, "a.json", EXAMPLE_1)), CuspGraftSpec
        )
        assert isinstance(
            parse_spec(
                write(tmp_path, "b.json", {"genus": 1, "punctures": 1, "cusps": 1})
            ),
            SurfaceSignature,
        )
        assert isinstance(
            parse_spec(write(tmp_path, "c.json", TORUS_REP)), RepPresentation
        )
        framed = dict(
            TORUS_REP, framing=[{"marked_point": "puncture:0", "value": [1, 0]}]
        )
        assert isinstance(parse_spec(write(tmp_path, "d.json", framed)), FramedRep)
        tri = {"triangles": [["inf", [0, 0], [1, 0]]], "interior_edges": []}
        assert isinstance(parse_spec(write(tmp_path, "e.json", tri)), Triangulation)

    def test_unidentifiable_spec(self, tmp_path):
        from merograft.cli import SchemaError, parse_spec

        with pytest.raises(SchemaError):
            parse_spec(write(tmp_path, "x.json", {"mystery": 1}))


class TestReportContract:
    def test_json_is_deterministic(self, tmp_path, capsys):
        path = write(tmp_path, "e1.json", EXAMPLE_1)
        main(["--seed", "4", "graft-end", path])
        first = capsys.readouterr().out
        main(["--seed", "4", "graft-end", path])
        second = capsys.readouterr().out
        assert first == second

    def test_report_reparses(self, tmp_path, capsys):
        code, report = run_json(capsys, ["graft-end", write(tmp_path, "e.json", EXAMPLE_1)])
        assert code == 0
        assert json.loads(json.dumps(report)) == report

    def test_text_and_json_numeric_agreement(self, tmp_path, capsys):
        path = write(tmp_path, "e1.json", EXAMPLE_1)
        _, report = run_json(capsys, ["graft-end", path])
        main(["--format", "text", "graft-end", path])
        text = capsys.readouterr().out
        mu = report["results"]["monodromy"]["multiplier"]
        assert f"results.monodromy.multiplier = {json.dumps(mu)}" in text

    def test_missing_file_exit_two(self, capsys):
        assert main(["graft-end", "/nonexistent/path.json"]) == 2

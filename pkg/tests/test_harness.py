"""Tests for the verification suites, the table emitter, the identifier, and
the command-line front end."""

import json

import pytest

from askeycharts import charts as C
from askeycharts import harness as H
from askeycharts.cli import main as cli_main
from askeycharts.errors import InsufficientSamples, OutOfDomain, UnknownSuite


EXPECTED_SUITES = (
    "chart-consistency",
    "boundary-faces",
    "continuity",
    "transitions",
    "moments-oracle",
    "hyp-oracle",
    "wilson-reality",
    "limits",
    "favard-scan",
    "jacobi2d",
)


def test_suite_roster():
    assert H.SUITES == EXPECTED_SUITES


def test_unknown_suite_raises():
    with pytest.raises(UnknownSuite):
        H.run_suite("no-such-suite", {})


def test_sample_interior_is_deterministic_and_in_domain():
    a = H.sample_interior("Racah1", seed=7, count=25)
    b = H.sample_interior("Racah1", seed=7, count=25)
    assert a == b
    assert len(a) == 25
    other = H.sample_interior("Racah1", seed=8, count=25)
    assert a != other
    for p in a:
        assert p.chart == "Racah1"
        assert len(p.coords) == 4
        for c in p.coords:
            assert 0 < c <= 1.0
        # ChartPoint construction re-checks the interior inequalities, so
        # rebuilding must not raise.
        C.ChartPoint(p.chart, p.coords)


def test_sample_interior_covers_2d_chart():
    pts = H.sample_interior("Jacobi2D", seed=1, count=10)
    assert all(len(p.coords) == 2 for p in pts)


def test_suite_report_schema_and_determinism():
    r1 = H.run_suite("favard-scan", {"samples": 5})
    r2 = H.run_suite("favard-scan", {"samples": 5})
    j1, j2 = r1.to_json(), r2.to_json()
    assert j1 == j2
    assert sorted(j1) == [
        "backend",
        "details",
        "max_rel_err",
        "pass",
        "samples",
        "schema",
        "seed",
        "suite",
        "tol",
    ]
    assert j1["suite"] == "favard-scan"
    assert j1["pass"] is True


def test_moments_suite_quick_run_passes():
    report = H.run_suite("moments-oracle", {"samples": 1})
    assert report.passed
    assert report.max_rel_err <= 1e-9


def test_boundary_faces_suite_quick_run_passes():
    report = H.run_suite("boundary-faces", {"samples": 2})
    assert report.passed
    assert report.max_rel_err <= 1e-10


def test_identify_needs_enough_distinct_rows():
    with pytest.raises(InsufficientSamples):
        H.identify([(0, 0.0, None), (1, 0.0, 0.5)])
    rows = [(n, 0.0, None if n == 0 else n / 2.0) for n in (0, 1, 2, 3, 3, 4)]
    with pytest.raises(InsufficientSamples):
        H.identify(rows)


def test_identify_hermite_data():
    rows = [(n, 0.0, None if n == 0 else n / 2.0) for n in range(8)]
    best = H.identify(rows).best()
    assert best["model"] == "Hermite"
    assert best["kind"] == "family"
    assert best["residual"] <= 1e-10
    assert best["match"] is True


def test_identify_laguerre_data():
    # alpha = 0: B_n = 2n + 1, C_n = n^2.
    rows = [(n, 2.0 * n + 1.0, None if n == 0 else float(n * n)) for n in range(8)]
    result = H.identify(rows)
    best = result.best()
    assert best["model"] == "Laguerre"
    assert best["residual"] <= 1e-8
    assert abs(best["parameters"]["alpha"]) <= 1e-6


def test_identify_chart_point_recovers_coordinates():
    coords = (0.5, 0.5, 0.5, 0.5)
    rows = []
    for n in range(7):
        b, c = C.chart_coeffs(C.ChartPoint("Racah1", coords), n)
        rows.append((n, b, None if n == 0 else c))
    best = H.identify(rows).best()
    assert best["kind"] == "chart"
    assert best["model"] == "Racah1"
    assert best["residual"] <= 1e-8
    for key, value in best["parameters"].items():
        assert abs(value - 0.5) <= 1e-6, f"{key}={value}"


def test_identify_is_deterministic():
    rows = [(n, 2.0 * n + 1.0, None if n == 0 else float(n * n)) for n in range(8)]
    r1 = H.identify(rows)
    r2 = H.identify(rows)
    assert json.dumps(r1.candidates, sort_keys=True) == json.dumps(r2.candidates, sort_keys=True)


def test_emit_table_csv_at_deepest_corner():
    text = H.emit_table("Racah1", (0.0, 0.0, 0.0, 0.0), n_max=3, format="csv")
    lines = text.strip().split("\n")
    assert "# family: Hermite" in lines
    assert "# rho: 1.4142135623730951" in lines
    assert "# sigma: 0.0" in lines
    assert lines[-4:] == ["0,0.0,", "1,0.0,1.0", "2,0.0,2.0", "3,0.0,3.0"]


def test_emit_table_json_face_instance():
    data = json.loads(H.emit_table("Wilson2", (1.0, 1.0, 1.0, 0.0), n_max=2, format="json"))
    assert data["schema"] == 1
    assert data["family"]["tag"] == "ContinuousDualHahn"
    params = data["family"]["params"]
    assert params["a"] == {"re": 1.0, "im": 2.5}
    assert params["b"] == {"re": 1.0, "im": -2.5}
    assert params["c"] == -2.5
    assert data["rho"] == pytest.approx(0.7071067811865476, rel=1e-15)
    assert data["sigma"] == pytest.approx(-1.25, rel=1e-15)
    rows = {row["n"]: row for row in data["rows"]}
    assert rows[1]["C"] == pytest.approx(8.5, rel=1e-12)
    assert rows[2]["C"] == pytest.approx(19.5, rel=1e-12)


def test_emit_table_rejects_bad_format():
    with pytest.raises(ValueError):
        H.emit_table("Racah1", (0.0, 0.0, 0.0, 0.0), n_max=3, format="xml")


def test_emit_table_rejects_bad_coords():
    with pytest.raises(OutOfDomain):
        H.emit_table("Racah1", (-1.0, 0.0, 0.0, 0.0), n_max=3, format="csv")


# ---------------------------------------------------------------------------
# Command-line front end
# ---------------------------------------------------------------------------


def test_cli_eval_family(capsys):
    rc = cli_main(
        ["eval", "--family", "Laguerre", "--params", "alpha=0.5", "--n", "2", "--x", "1.0"]
    )
    assert rc == 0
    out = capsys.readouterr().out.strip()
    # p_2(x) = x^2 - 5x + 3.75 at x = 1 for alpha = 1/2.
    assert float(out) == pytest.approx(-0.25, abs=1e-12)


def test_cli_eval_chart(capsys):
    rc = cli_main(
        ["eval-chart", "--chart", "Racah1", "--coords", "0,0,0,0", "--n", "2", "--x", "0.0"]
    )
    assert rc == 0
    out = capsys.readouterr().out.strip()
    # Corner chart p_2(x) = x^2 - 1 (Hermite rescaled by rho^2 = 2).
    assert float(out) == pytest.approx(-1.0, abs=1e-12)


def test_cli_table_csv(capsys):
    rc = cli_main(["table", "--chart", "Racah1", "--coords", "0,0,0,0", "--nmax", "3"])
    assert rc == 0
    out = capsys.readouterr().out
    assert "# family: Hermite" in out
    assert "3,0.0,3.0" in out


def test_cli_verify_emits_json_and_exit_code(capsys):
    rc = cli_main(["verify", "favard-scan", "--samples", "5"])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["suite"] == "favard-scan"
    assert payload["pass"] is True


def test_cli_identify_round_trip(tmp_path, capsys):
    rows = [[n, 0.0, None if n == 0 else n / 2.0] for n in range(8)]
    path = tmp_path / "samples.json"
    path.write_text(json.dumps(rows))
    rc = cli_main(["identify", "--input", str(path)])
    assert rc == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == 1
    assert payload["candidates"][0]["model"] == "Hermite"


def test_cli_bad_params_exit_code(capsys):
    rc = cli_main(["eval", "--family", "Laguerre", "--params", "alpha=oops", "--n", "2", "--x", "1.0"])
    assert rc == 2
    assert capsys.readouterr().err.strip()


def test_cli_out_of_domain_exit_code(capsys):
    rc = cli_main(
        ["eval-chart", "--chart", "Racah1", "--coords=-1,0,0,0", "--n", "2", "--x", "0.0"]
    )
    assert rc == 2
    assert capsys.readouterr().err.strip()

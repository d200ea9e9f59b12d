"""Tests for the reparametrized coordinate charts, their boundary-face
restrictions, and the continuity probes."""

import pytest

from askeycharts import charts as C
from askeycharts import families as F
from askeycharts import polyrec as P
from askeycharts.errors import OutOfDomain


ALL_CHARTS = ("Racah1", "Racah2", "Racah3", "Wilson1", "Wilson2", "Jacobi2D")

# rho^2 of the corner rescale is an exact small integer for every chart.
CORNER_RHO_SQ = {
    "Racah1": 2,
    "Racah2": 1,
    "Racah3": 1,
    "Wilson1": 8,
    "Wilson2": 1,
    "Jacobi2D": 8,
}

# One benign interior point per chart, used for route-consistency checks.
INTERIOR = {
    "Racah1": (0.25, 0.3, 0.2, 0.15),
    "Racah2": (0.2, 0.25, 0.3, 0.1),
    "Racah3": (0.15, 0.3, 0.2, 0.25),
    "Wilson1": (0.2, 0.15, 0.25, 0.3),
    "Wilson2": (0.25, 0.2, 0.15, 0.3),
    "Jacobi2D": (0.3, 0.2),
}


def test_chart_roster_and_dims():
    assert C.CHARTS == ALL_CHARTS
    dims = {ch: C.chart_dim(ch) for ch in C.CHARTS}
    assert dims == {
        "Racah1": 4,
        "Racah2": 4,
        "Racah3": 4,
        "Wilson1": 4,
        "Wilson2": 4,
        "Jacobi2D": 2,
    }


def test_chart_point_validation():
    with pytest.raises(OutOfDomain):
        C.ChartPoint("Racah1", (-0.1, 0.2, 0.2, 0.2))
    with pytest.raises(OutOfDomain):
        C.ChartPoint("Racah1", (0.2, 0.2, 0.2))
    # Interior inequality c1*c3 < 1 must hold.
    with pytest.raises(OutOfDomain):
        C.ChartPoint("Racah1", (3.0, 0.2, 3.0, 0.2))
    with pytest.raises(KeyError):
        C.ChartPoint("NoSuchChart", (0.1, 0.1, 0.1, 0.1))


@pytest.mark.parametrize("chart", ALL_CHARTS)
def test_corner_recurrence_is_rescaled_hermite(chart):
    origin = C.ChartPoint(chart, (0.0,) * C.chart_dim(chart))
    rc = C.chart_recurrence(origin)
    rho_sq = CORNER_RHO_SQ[chart]
    for n in range(9):
        assert abs(rc.B(n)) <= 1e-12
        if n >= 1:
            assert abs(rc.C(n) - rho_sq * n / 2) <= 1e-12 * (1 + rho_sq * n / 2)


@pytest.mark.parametrize("chart", ALL_CHARTS)
def test_chart_coeffs_match_family_route(chart):
    # The chart-side polynomial coefficients must agree with the classical
    # closed form reached through chart_to_family plus the affine rescale.
    p = C.ChartPoint(chart, INTERIOR[chart])
    inst, scale = C.chart_to_family(p)
    rc_family = P.rescale_coeffs(F.recurrence_coeffs(inst), scale)
    rc_chart = C.chart_recurrence(p)
    for n in range(7):
        b_c, c_c = rc_chart.B(n), rc_chart.C(n) if n else None
        assert abs(b_c - rc_family.B(n)) <= 1e-10 * (1 + abs(b_c))
        if n:
            assert abs(c_c - rc_family.C(n)) <= 1e-10 * (1 + abs(c_c))


def test_chart_coeffs_helpers_agree():
    p = C.ChartPoint("Racah1", INTERIOR["Racah1"])
    rc = C.chart_recurrence(p)
    for n in (0, 1, 2, 5):
        b, c = C.chart_coeffs(p, n)
        b_raw, c_raw = C.chart_coeffs_raw("Racah1", INTERIOR["Racah1"], n)
        assert b == b_raw and c == c_raw
        assert abs(b - rc.B(n)) <= 1e-14
        if n:
            assert abs(c - rc.C(n)) <= 1e-14


def test_registry_counts_and_targets():
    counts = {ch: len(C.registry(ch)) for ch in C.CHARTS}
    assert counts == {
        "Racah1": 8,
        "Racah2": 6,
        "Racah3": 5,
        "Wilson1": 6,
        "Wilson2": 5,
        "Jacobi2D": 4,
    }
    assert sum(counts.values()) == 34
    # Interior records name the chart's own 4-parameter (or 2-parameter)
    # family; the deepest corner always degenerates to Hermite.
    interior = {ch: C.face_restriction(ch, ()).target for ch in C.CHARTS}
    assert interior == {
        "Racah1": "Racah",
        "Racah2": "Racah",
        "Racah3": "Racah",
        "Wilson1": "Wilson",
        "Wilson2": "Wilson",
        "Jacobi2D": "Jacobi",
    }


def test_selected_face_targets():
    assert C.face_restriction("Racah1", (3,)).target == "Hahn"
    assert C.face_restriction("Racah1", (4,)).target == "Jacobi"
    assert C.face_restriction("Racah2", (3,)).target == "DualHahn"
    assert C.face_restriction("Wilson1", (4,)).target == "ContinuousHahn"
    assert C.face_restriction("Wilson2", (4,)).target == "ContinuousDualHahn"
    assert C.face_restriction("Wilson2", (2,)).target == "MeixnerPollaczek"
    assert C.face_restriction("Jacobi2D", (1,)).target == "Laguerre"
    assert C.face_restriction("Jacobi2D", (1, 2)).target == "Hermite"


def test_face_restriction_unknown_face():
    with pytest.raises(OutOfDomain):
        C.face_restriction("Racah1", (7,))


def test_verify_face_krawtchouk_on_racah1():
    p = C.ChartPoint("Racah1", (0.0, 0.3, 0.2, 0.15))
    report = C.verify_face("Racah1", (1,), p)
    assert report["target"] == "Krawtchouk"
    assert report["pass"]
    assert report["max_rel_err"] <= 1e-10


def test_verify_face_continuous_dual_hahn_on_wilson2():
    p = C.ChartPoint("Wilson2", (0.3, 0.25, 0.2, 0.0))
    report = C.verify_face("Wilson2", (4,), p)
    assert report["target"] == "ContinuousDualHahn"
    assert report["pass"]
    assert report["max_rel_err"] <= 1e-10


def test_verify_face_requires_point_on_face():
    p = C.ChartPoint("Racah1", (0.1, 0.3, 0.2, 0.15))
    with pytest.raises(OutOfDomain):
        C.verify_face("Racah1", (1,), p)


def test_continuity_probe_differentiable_face():
    base = C.ChartPoint("Racah1", (0.5, 0.5, 0.5, 0.5))
    out = C.continuity_probe("Racah1", (1,), base, steps=20, n_max=3)
    gaps = out["gaps"]
    assert len(gaps) == 20
    assert out["final_gap"] == gaps[-1]
    assert gaps[-1] <= 1e-6
    for a, b in zip(gaps[-5:], gaps[-4:]):
        assert b <= a * (1 + 1e-12)


def test_continuity_probe_square_root_face_still_converges():
    # Crossing this face costs a square root, so the gap decays like
    # sqrt(step) rather than linearly -- slower, but still monotone to zero.
    base = C.ChartPoint("Racah2", (1.0, 1.0, 1.0, 0.5))
    out = C.continuity_probe("Racah2", (2,), base, steps=20, n_max=3)
    gaps = out["gaps"]
    assert gaps[-1] < gaps[0]
    for a, b in zip(gaps[-5:], gaps[-4:]):
        assert b <= a * (1 + 1e-12)


def test_jacobi2d_corner_coefficients():
    origin = C.ChartPoint("Jacobi2D", (0.0, 0.0))
    rc = C.chart_recurrence(origin)
    for n in range(1, 6):
        assert abs(rc.C(n) - 4 * n) <= 1e-12 * (1 + 4 * n)

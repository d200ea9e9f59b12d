"""Tests for the overlap maps between the three 4-D discrete-side charts."""

import pytest

from askeycharts import charts as C
from askeycharts import transitions as T
from askeycharts.errors import OutOfDomain


def test_pair_and_direction_rosters():
    assert T.PAIRS == ("T12", "T23", "T13")
    assert T.DIRECTIONS == ("forward", "backward")


def test_transition_pair_endpoints():
    p = T.TransitionPair("T12", "forward")
    assert (p.source_chart, p.target_chart) == ("Racah1", "Racah2")
    assert (p.reversed().source_chart, p.reversed().target_chart) == ("Racah2", "Racah1")
    assert T.TransitionPair("T23").source_chart == "Racah2"
    assert T.TransitionPair("T13", "backward").source_chart == "Racah3"


def test_transition_pair_validation():
    with pytest.raises(OutOfDomain):
        T.TransitionPair("T99")
    with pytest.raises(OutOfDomain):
        T.TransitionPair("T12", "sideways")


def test_t12_backward_pinned_point():
    # This point maps to exact dyadic/decimal coordinates, frozen here.
    pair = T.TransitionPair("T12", "backward")
    out = T.transition(pair, (1.0, 1.0, 1.0, 0.5))
    assert out.chart == "Racah1"
    assert out.coords == pytest.approx((0.5, 0.5, 0.8, 1.0), abs=1e-14)
    # Both endpoints induce the same classical parameters; check one of them.
    inst_src, _ = C.chart_to_family(C.ChartPoint("Racah2", (1.0, 1.0, 1.0, 0.5)))
    inst_tgt, _ = C.chart_to_family(out)
    assert inst_src.tag == inst_tgt.tag == "Racah"
    assert inst_src["alpha"] == pytest.approx(2.0, rel=1e-12)
    assert inst_tgt["alpha"] == pytest.approx(2.0, rel=1e-12)
    for key in ("alpha", "beta", "N", "delta"):
        assert inst_src[key] == pytest.approx(inst_tgt[key], rel=1e-10)


# One on-domain start point for each pair/direction combination.
ROUND_TRIP_STARTS = {
    ("T12", "forward"): (0.5, 0.5, 0.8, 1.0),
    ("T12", "backward"): (1.0, 1.0, 1.0, 0.5),
    ("T23", "forward"): (0.51, 0.47, 0.28, 0.19),
    ("T23", "backward"): (0.4, 0.5, 0.3, 0.6),
    ("T13", "forward"): (0.07, 0.37, 0.55, 0.34),
    ("T13", "backward"): (0.4, 0.5, 0.3, 0.6),
}


@pytest.mark.parametrize("tag", T.PAIRS)
@pytest.mark.parametrize("direction", T.DIRECTIONS)
def test_round_trips(tag, direction):
    pair = T.TransitionPair(tag, direction)
    start = ROUND_TRIP_STARTS[(tag, direction)]
    assert T.transition_domain(pair, start)
    out = T.transition(pair, start)
    back = T.transition(pair.reversed(), out.coords)
    assert back.chart == pair.source_chart
    for a, b in zip(back.coords, start):
        assert abs(a - b) <= 1e-12 * (1 + abs(b))


def test_verify_transition_report():
    pair = T.TransitionPair("T12", "backward")
    report = T.verify_transition(pair, (1.0, 1.0, 1.0, 0.5), n_max=6)
    assert report["pass"]
    assert report["roundtrip_err"] <= 1e-10
    assert report["param_err"] <= 1e-10
    assert report["coeff_err"] <= 1e-10
    assert report["source"]["chart"] == "Racah2"
    assert report["target"]["chart"] == "Racah1"


def test_domain_gate_blocks_negative_radicand():
    pair = T.TransitionPair("T12", "forward")
    bad = (0.9, 0.9, 0.9, 0.9)
    check = T.transition_domain(pair, bad)
    assert not check.ok
    assert check.failed
    with pytest.raises(OutOfDomain):
        T.transition(pair, bad)


def test_discriminant_snaps_tiny_negative_to_zero():
    # An analytically zero radicand polluted at the last ulp must count as
    # on-domain rather than flipping the square root complex.
    d = T.discriminant("S", (0.5, 0.5, 0.8, 1.0))
    assert d.kind == "S"
    assert d.value >= 0

"""Tests for the closed-form family recurrences and the independent
terminating-sum evaluation route.

Expected B_n / C_n values below were generated separately from the classical
closed forms using exact rational arithmetic, then frozen as literals.
"""

import math

import pytest

from askeycharts import families as F
from askeycharts.errors import (
    NormalizationPole,
    OutOfDomain,
    PoleInLowerParameter,
)
from askeycharts.polyrec import build_monic_sequence, evaluate


def make(tag, **params):
    return F.FamilyInstance(tag, params)


# (instance, [B_0..B_4], [C_1..C_4]) -- frozen reference values.
FROZEN = [
    (
        make("Hermite"),
        [0.0, 0.0, 0.0, 0.0, 0.0],
        [0.5, 1.0, 1.5, 2.0],
    ),
    (
        make("Laguerre", alpha=0.5),
        [1.5, 3.5, 5.5, 7.5, 9.5],
        [1.5, 5.0, 10.5, 18.0],
    ),
    (
        make("Jacobi", alpha=0.5, beta=2.0),
        [
            0.3333333333333333,
            0.1282051282051282,
            0.06787330316742081,
            0.04201680672268908,
            0.02857142857142857,
        ],
        [
            0.16161616161616163,
            0.20656266810112964,
            0.22436714623930068,
            0.23312940736935506,
        ],
    ),
    (
        make("Racah", alpha=0.75, beta=2.0 / 3.0, N=7.0, delta=4.5),
        [
            22.109756097560975,
            20.051782363977487,
            17.27666378565255,
            13.54409863776474,
            8.824268458109941,
        ],
        [
            69.95148328151483,
            51.77397789438428,
            23.320215969330803,
            -7.59775477273626,
        ],
    ),
    (
        make("Wilson", a=0.5, b=0.75, c=1.0, d=1.25),
        [0.6875, 2.4375, 5.1875, 8.9375, 13.6875],
        [0.46875, 3.28125, 11.8125, 30.9375],
    ),
    (
        make("Hahn", alpha=0.5, beta=0.75, N=6.0),
        [
            2.769230769230769,
            2.9926739926739927,
            3.0311986863711002,
            3.0447343895619756,
            3.051051051051051,
        ],
        [
            3.2453880960668293,
            3.1281846071762036,
            2.7785104313047237,
            2.279929836950272,
        ],
    ),
    (
        make("DualHahn", gamma=0.5, delta=0.75, N=6.0),
        [9.0, 19.25, 25.5, 27.75, 26.0],
        [60.75, 143.75, 199.5, 202.5],
    ),
    (
        make("Meixner", beta=1.5, c=1.0 / 3.0),
        [0.75, 2.75, 4.75, 6.75, 8.75],
        [1.125, 3.75, 7.875, 13.5],
    ),
    (
        make("Krawtchouk", p=0.25, N=8.0),
        [2.0, 2.5, 3.0, 3.5, 4.0],
        [1.5, 2.625, 3.375, 3.75],
    ),
    (
        make("Charlier", a=1.25),
        [1.25, 2.25, 3.25, 4.25, 5.25],
        [1.25, 2.5, 3.75, 5.0],
    ),
    (
        make("MeixnerPollaczek", lam=0.75, phi=1.0471975511965976),
        [
            -0.4330127018922193,
            -1.0103629710818451,
            -1.5877132402714709,
            -2.165063509461097,
            -2.7424137786507226,
        ],
        [0.5, 1.6666666666666667, 3.5, 6.0],
    ),
    (
        make("ContinuousDualHahn", a=0.5, b=0.75, c=1.25),
        [1.9375, 7.9375, 17.9375, 31.9375, 49.9375],
        [4.375, 37.125, 146.25, 403.75],
    ),
    (
        make("ContinuousHahn", a=0.5 + 1.0j, b=0.75 - 1.0j, c=0.5 - 1.0j, d=0.75 + 1.0j),
        [
            -0.2,
            -0.022222222222222223,
            -0.008547008547008548,
            -0.004524886877828055,
            -0.0028011204481792717,
        ],
        [
            0.38142857142857145,
            0.5812089145422479,
            0.921221086605702,
            1.3885995264979056,
        ],
    ),
]

FROZEN_IDS = [inst.tag for inst, _, _ in FROZEN]


@pytest.mark.parametrize("inst,b_expected,c_expected", FROZEN, ids=FROZEN_IDS)
def test_recurrence_matches_frozen_values(inst, b_expected, c_expected):
    rc = F.recurrence_coeffs(inst)
    for n, b in enumerate(b_expected):
        got = rc.B(n)
        assert abs(got - b) <= 1e-12 * (1 + abs(b)), f"B({n})={got} expected {b}"
    for n, c in enumerate(c_expected, start=1):
        got = rc.C(n)
        assert abs(got - c) <= 1e-12 * (1 + abs(c)), f"C({n})={got} expected {c}"


def test_family_params_registry_covers_frozen_instances():
    for inst, _, _ in FROZEN:
        assert inst.tag in F.FAMILY_PARAMS
        assert set(inst.params) == set(F.FAMILY_PARAMS[inst.tag])


def test_recurrence_coeffs_rejects_unknown_tag():
    with pytest.raises((ValueError, OutOfDomain)):
        F.recurrence_coeffs(F.FamilyInstance("NoSuchFamily", {}))


def test_discrete_tables_cap_degree():
    rc = F.recurrence_coeffs(make("Krawtchouk", p=0.25, N=8.0))
    assert rc.n_valid == 8
    rc = F.recurrence_coeffs(make("Hermite"))
    assert rc.n_valid == math.inf


def test_pochhammer():
    assert F.pochhammer(2.0, 0) == 1.0
    assert F.pochhammer(2.0, 3) == 2.0 * 3.0 * 4.0
    assert F.pochhammer(-3, 5) == 0
    assert F.pochhammer(0.5, 2) == 0.75


def test_hyp_terminating_chu_vandermonde():
    # 2F1(-n, b; c; 1) = (c - b)_n / (c)_n with n = 3, b = 1/2, c = 5/4.
    val = F.hyp_terminating("2F1", (-3, 0.5), (1.25,), 1.0, 3)
    expected = F.pochhammer(0.75, 3) / F.pochhammer(1.25, 3)
    assert abs(val - expected) <= 1e-14


def test_hyp_terminating_pole_in_lower_parameter():
    # The lower parameter -1 hits zero at term k = 2, before the upper
    # parameter -3 terminates the sum.
    with pytest.raises(PoleInLowerParameter):
        F.hyp_terminating("2F1", (-3, 1.0), (-1.0,), 1.0, 3)
    # If the series terminates first, the later pole is never reached.
    v = F.hyp_terminating("2F1", (-1, 1.0), (-3.0,), 1.0, 1)
    assert abs(v - (1.0 + 1.0 / 3.0)) <= 1e-14


def test_monic_via_hyp_racah_pinned_value():
    inst = make("Racah", alpha=0.75, beta=2.0 / 3.0, N=7.0, delta=4.5)
    got = F.monic_via_hyp(inst, -1.0, 3)
    assert got == pytest.approx(-6416.661624891962, rel=1e-13)


def test_monic_via_hyp_wilson_pinned_value():
    inst = make("Wilson", a=0.5, b=0.75, c=1.0, d=1.25)
    got = F.monic_via_hyp(inst, 2.25, 3)
    assert got == pytest.approx(-2.889404296875, rel=1e-13)


@pytest.mark.parametrize("tag", ["Racah", "Wilson"])
def test_monic_via_hyp_agrees_with_recurrence(tag):
    if tag == "Racah":
        inst = make("Racah", alpha=0.75, beta=2.0 / 3.0, N=7.0, delta=4.5)
        xs = [-1.0, 0.5, 3.25]
    else:
        inst = make("Wilson", a=0.5, b=0.75, c=1.0, d=1.25)
        xs = [0.25, 2.25, 5.0]
    polys = build_monic_sequence(F.recurrence_coeffs(inst), 5)
    for n in (1, 3, 5):
        for x in xs:
            direct = evaluate(polys[n], x)
            via_hyp = F.monic_via_hyp(inst, x, n)
            assert abs(via_hyp - direct) <= 1e-9 * (1 + abs(direct))


def test_monic_via_hyp_normalization_pole():
    # (n + alpha + beta + 1)_n vanishes when alpha + beta = -n - j for some
    # j < n; the leading-coefficient normalization is then undefined.
    inst = make("Racah", alpha=0.5, beta=-3.5, N=7.0, delta=9.0)
    with pytest.raises(NormalizationPole):
        F.monic_via_hyp(inst, 1.0, 2)


def test_racah_an_cn_endpoints():
    # a_N = 0 and c_0 = 0: the discrete weight has exactly N + 1 points.
    a5, _ = F.racah_an_cn(make("Racah", alpha=0.5, beta=0.5, N=5.0, delta=7.0), 5)
    _, c0 = F.racah_an_cn(make("Racah", alpha=0.5, beta=0.5, N=5.0, delta=7.0), 0)
    assert abs(a5) <= 1e-14
    assert abs(c0) <= 1e-14


def test_wilson_an_cn_give_recurrence():
    inst = make("Wilson", a=0.5, b=0.75, c=1.0, d=1.25)
    rc = F.recurrence_coeffs(inst)
    for n in (1, 2, 3):
        a_n, c_n = F.wilson_an_cn(inst, n)
        a_prev, _ = F.wilson_an_cn(inst, n - 1)
        assert abs((a_n + c_n - 0.25) - rc.B(n)) <= 1e-12
        assert abs(a_prev * c_n - rc.C(n)) <= 1e-12


def test_positivity_racah_region():
    good = F.positivity_check(make("Racah", alpha=0.5, beta=0.5, N=5.0, delta=6.5))
    assert good.ok and good.case_label == "RacahRegion18" and good.failing_n is None
    # delta < alpha + N: outside the positivity region.
    bad = F.positivity_check(make("Racah", alpha=0.75, beta=2.0 / 3.0, N=7.0, delta=4.5))
    assert not bad.ok


def test_positivity_wilson_cases():
    all_real = F.positivity_check(make("Wilson", a=0.5, b=0.75, c=1.0, d=1.25))
    assert all_real.ok and all_real.case_label == "WilsonCase3"
    one_pair = F.positivity_check(make("Wilson", a=0.5 + 1.0j, b=0.5 - 1.0j, c=1.0, d=1.25))
    assert one_pair.ok and one_pair.case_label == "WilsonCase2"
    two_pairs = F.positivity_check(
        make("Wilson", a=0.5 + 1.0j, b=0.5 - 1.0j, c=0.75 + 2.0j, d=0.75 - 2.0j)
    )
    assert two_pairs.ok and two_pairs.case_label == "WilsonCase1"


def test_positivity_scan_reports_failing_index():
    # Laguerre with alpha < -1 has C_1 = 1 + alpha < 0.
    verdict = F.positivity_check(make("Laguerre", alpha=-1.5))
    assert not verdict.ok
    assert verdict.failing_n == 1

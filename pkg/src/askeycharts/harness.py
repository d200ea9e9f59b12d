"""Verification suites, samplers, coefficient tables, and the identifier.

Every suite draws its sample points from seeded generators, evaluates one of
the package's cross-route identities (chart vs. direct family, face
restrictions, transitions, independent oracles, limits), and returns a
machine-readable SuiteReport.  Reports are deterministic: the same (suite,
config) pair always produces byte-identical details.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath
from scipy.optimize import least_squares

from . import charts, families, transitions
from ._scalars import Backend, get_backend, rel_dev, sqrt
from .errors import (
    InsufficientSamples,
    OutOfDomain,
    SamplingExhausted,
    UnknownSuite,
)
from .polyrec import (
    AffineScale,
    MomentSequence,
    build_monic_sequence,
    evaluate,
    polys_from_moments,
    rescale_coeffs,
)

__all__ = [
    "SUITES",
    "SuiteReport",
    "IdentifyResult",
    "run_suite",
    "identify",
    "sample_interior",
    "emit_table",
]

SUITES = (
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

_REJECTION_CAP = 10**6

# Fixed interior base points for the continuity probes (inside every chart's
# inequality set, away from all faces).
_PROBE_BASES = {
    "Racah1": (0.5, 0.5, 0.5, 0.5),
    "Racah2": (1.0, 1.0, 1.0, 0.5),
    "Racah3": (0.5, 0.5, 0.5, 0.5),
    "Wilson1": (0.5, 0.5, 0.5, 0.5),
    "Wilson2": (0.5, 0.5, 0.5, 0.5),
    "Jacobi2D": (1.0, 1.0),
}

# Starting value for the coordinates that the continuity probe drives to
# zero.  Starting at the edge of the standard sampling box keeps the
# absolute-gap gate sensitive to the modulus of continuity rather than to
# the size of the coefficient derivatives: faces where the coefficients
# are differentiable land near gap * 2**-30 after twenty halvings, while
# square-root faces stay near sqrt(2**-30).
_PROBE_FACE_START = 2.0 ** -10

# Hermite scale factors pinned at each chart's all-zero corner: the corner
# recurrence must equal B_n = 0, C_n = rho^2 * n/2 exactly.
_CORNER_RHO = {
    "Racah1": math.sqrt(2.0),
    "Racah2": 1.0,
    "Racah3": 1.0,
    "Wilson1": 2.0 * math.sqrt(2.0),
    "Wilson2": 1.0,
    "Jacobi2D": 2.0 * math.sqrt(2.0),
}

# rho**2 at the corner is an exact integer; used where squaring the float
# root would inject a spurious ulp.
_CORNER_RHO_SQ = {
    "Racah1": 2, "Racah2": 1, "Racah3": 1, "Wilson1": 8, "Wilson2": 1, "Jacobi2D": 8,
}


@dataclass(frozen=True)
class SuiteReport:
    """Outcome of one verification suite (serialized with a `pass` key)."""

    suite: str
    samples: int
    max_rel_err: float
    tol: float
    passed: bool
    seed: int
    backend: str
    details: list
    schema: int = 1

    def to_json(self) -> dict:
        return {
            "schema": self.schema,
            "suite": self.suite,
            "samples": self.samples,
            "max_rel_err": self.max_rel_err,
            "tol": self.tol,
            "pass": self.passed,
            "seed": self.seed,
            "backend": self.backend,
            "details": self.details,
        }


@dataclass(frozen=True)
class IdentifyResult:
    """Ranked fit candidates; residuals are nondecreasing down the list."""

    candidates: tuple

    def best(self) -> dict:
        return self.candidates[0]


# ---------------------------------------------------------------------------
# Samplers
# ---------------------------------------------------------------------------


def sample_interior(chart: str, seed: int, count: int) -> list:
    """Seeded log-uniform interior points of one chart.

    Each coordinate is 10**u with u uniform on [-3, 0]; draws violating the
    chart inequalities are rejected.  Raises SamplingExhausted after 1e6
    rejected draws.
    """
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = random.Random(seed)
    dim = charts.chart_dim(chart)
    points = []
    rejected = 0
    while len(points) < count:
        coords = tuple(10.0 ** rng.uniform(-3.0, 0.0) for _ in range(dim))
        try:
            points.append(charts.ChartPoint(chart, coords))
        except OutOfDomain:
            rejected += 1
            if rejected >= _REJECTION_CAP:
                raise SamplingExhausted(
                    f"{chart}: {rejected} rejected draws for {count} interior points"
                )
    return points


def _sample_face(chart: str, zero_set, rng: random.Random, count: int) -> list:
    """Seeded points on one boundary face (listed coordinates pinned to 0)."""
    zs = frozenset(zero_set)
    dim = charts.chart_dim(chart)
    points = []
    rejected = 0
    while len(points) < count:
        coords = tuple(
            0.0 if i in zs else 10.0 ** rng.uniform(-3.0, 0.0)
            for i in range(1, dim + 1)
        )
        try:
            points.append(charts.ChartPoint(chart, coords))
        except OutOfDomain:
            rejected += 1
            if rejected >= _REJECTION_CAP:
                raise SamplingExhausted(
                    f"{chart} face {sorted(zs)}: sampling exhausted"
                )
    return points


def _sample_transition(pair, rng: random.Random, count: int) -> list:
    """Seeded interior points of the source chart inside the transition domain."""
    dim = charts.chart_dim(pair.source_chart)
    points = []
    rejected = 0
    while len(points) < count:
        coords = tuple(10.0 ** rng.uniform(-3.0, 0.0) for _ in range(dim))
        try:
            p = charts.ChartPoint(pair.source_chart, coords)
        except OutOfDomain:
            p = None
        if p is not None and transitions.transition_domain(pair, p):
            points.append(p)
            continue
        rejected += 1
        if rejected >= _REJECTION_CAP:
            raise SamplingExhausted(
                f"{pair.tag} {pair.direction}: sampling exhausted "
                f"({len(points)} of {count} points found)"
            )
    return points


def _lift(p, be: Backend):
    """Re-express a chart point in the backend's scalar type."""
    return charts.ChartPoint(p.chart, tuple(be.scalar(c) for c in p.coords))


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def _consistency_error(p, n_max: int) -> float:
    # The composed route (parameter map + family recurrence + rescale) can
    # produce astronomically large family parameters at small coordinates,
    # whose recurrence then cancels catastrophically -- the chart forms are the
    # stable rearrangement.  The reference is therefore computed at high
    # precision; the chart side stays in the backend under test.
    with mpmath.workdps(120):
        hp = charts.ChartPoint(p.chart, tuple(mpmath.mpf(c) for c in p.coords))
        inst, scale = charts.chart_to_family(hp)
        ref = rescale_coeffs(families.recurrence_coeffs(inst), scale)
        refs = [
            (ref.B(n), ref.C(n) if n >= 1 else None) for n in range(n_max + 1)
        ]
    worst = 0.0
    for n, (ref_b, ref_c) in enumerate(refs):
        B, C = charts.chart_coeffs(p, n)
        worst = max(worst, rel_dev(B, ref_b))
        if n >= 1:
            worst = max(worst, rel_dev(C, ref_c))
    return worst


def _suite_chart_consistency(cfg, be, chart_list=charts.CHARTS):
    rng = random.Random(cfg["seed"])
    details = []
    worst = 0.0
    total = 0
    for chart in chart_list:
        pts = sample_interior(chart, rng.randrange(2**32), cfg["samples"])
        chart_worst = 0.0
        for p in pts:
            chart_worst = max(chart_worst, _consistency_error(_lift(p, be), cfg["n_max"]))
        details.append(
            {"case": chart, "samples": len(pts), "max_rel_err": chart_worst,
             "pass": chart_worst <= cfg["tol"]}
        )
        worst = max(worst, chart_worst)
        total += len(pts)
    return total, worst, details, all(d["pass"] for d in details)


def _suite_boundary_faces(cfg, be):
    rng = random.Random(cfg["seed"])
    details = []
    worst = 0.0
    total = 0
    for chart in charts.CHARTS:
        for record in charts.registry(chart):
            for zs in sorted(record.covers, key=sorted):
                pts = _sample_face(chart, zs, rng, cfg["samples"])
                case_worst = 0.0
                ok = True
                for p in pts:
                    rep = charts.verify_face(
                        chart, zs, _lift(p, be), n_max=cfg["n_max"], tol=cfg["tol"]
                    )
                    case_worst = max(case_worst, rep["max_rel_err"])
                    ok = ok and rep["pass"]
                details.append(
                    {"case": f"{chart} {sorted(zs)} -> {record.target}",
                     "samples": len(pts), "max_rel_err": case_worst, "pass": ok}
                )
                worst = max(worst, case_worst)
                total += len(pts)
    return total, worst, details, all(d["pass"] for d in details)


def _suite_continuity(cfg, be):
    details = []
    worst = 0.0
    total = 0
    for chart in charts.CHARTS:
        for i in range(1, charts.chart_dim(chart) + 1):
            base = list(_PROBE_BASES[chart])
            base[i - 1] = _PROBE_FACE_START
            probe = charts.continuity_probe(
                chart, frozenset({i}),
                tuple(be.scalar(c) for c in base),
                steps=cfg["samples"], n_max=cfg["n_max"],
            )
            gaps = probe["gaps"]
            tail = gaps[-5:]
            monotone = all(tail[k] >= tail[k + 1] for k in range(len(tail) - 1))
            ok = monotone and probe["final_gap"] <= cfg["tol"]
            details.append(
                {"case": f"{chart} face [{i}]", "final_gap": probe["final_gap"],
                 "monotone_tail": monotone, "gaps_tail": tail, "pass": ok}
            )
            worst = max(worst, probe["final_gap"])
            total += 1
    return total, worst, details, all(d["pass"] for d in details)


# The four printed boundary-box identifications carried by the transitions.
_FACE_CASES = (
    ("T12", "Racah1", (1,), "Krawtchouk"),
    ("T12", "Racah1", (2,), "Meixner"),
    ("T12", "Racah1", (1, 2), "Charlier"),
    ("T23", "Racah2", (2,), "Hermite"),
)


def _suite_transitions(cfg, be):
    rng = random.Random(cfg["seed"])
    details = []
    worst = 0.0
    total = 0
    for tag in transitions.PAIRS:
        for direction in transitions.DIRECTIONS:
            pair = transitions.TransitionPair(tag, direction)
            pts = _sample_transition(pair, rng, cfg["samples"])
            case_worst = 0.0
            ok = True
            for p in pts:
                rep = transitions.verify_transition(
                    pair, _lift(p, be), n_max=cfg["n_max"], tol=cfg["tol"]
                )
                case_worst = max(
                    case_worst, rep["roundtrip_err"], rep["param_err"], rep["coeff_err"]
                )
                ok = ok and rep["pass"]
            details.append(
                {"case": f"{tag} {direction}", "samples": len(pts),
                 "max_rel_err": case_worst, "pass": ok}
            )
            worst = max(worst, case_worst)
            total += len(pts)
    for tag, chart, zero, family in _FACE_CASES:
        pair = transitions.TransitionPair(tag, "forward")
        case_worst = 0.0
        ok = True
        found = 0
        rejected = 0
        while found < cfg["face_samples"]:
            coords = [10.0 ** rng.uniform(-2.0, 0.0) for _ in range(4)]
            for i in zero:
                coords[i - 1] = 0.0
            try:
                p = charts.ChartPoint(chart, tuple(coords))
            except OutOfDomain:
                p = None
            if p is None or not transitions.transition_domain(pair, p):
                rejected += 1
                if rejected >= _REJECTION_CAP:
                    raise SamplingExhausted(f"{tag} face {zero}: sampling exhausted")
                continue
            found += 1
            rep = transitions.verify_transition(
                pair, _lift(p, be), n_max=cfg["n_max"], tol=cfg["tol"]
            )
            case_worst = max(
                case_worst, rep["roundtrip_err"], rep["param_err"], rep["coeff_err"]
            )
            ok = (
                ok and rep["pass"]
                and rep["face"]["source_family"] == family
                and rep["face"]["target_family"] == family
            )
        details.append(
            {"case": f"{tag} face {sorted(zero)} -> {family}", "samples": found,
             "max_rel_err": case_worst, "pass": ok}
        )
        worst = max(worst, case_worst)
        total += found
    # Exploratory (non-gating): the long transition agrees with the
    # composition of the two short ones on the common domain.
    comp_worst = 0.0
    found = 0
    rejected = 0
    t13 = transitions.TransitionPair("T13", "forward")
    t12 = transitions.TransitionPair("T12", "forward")
    t23 = transitions.TransitionPair("T23", "forward")
    while found < 25 and rejected < _REJECTION_CAP:
        coords = tuple(10.0 ** rng.uniform(-3.0, 0.0) for _ in range(4))
        try:
            p = charts.ChartPoint("Racah1", coords)
        except OutOfDomain:
            rejected += 1
            continue
        if not (transitions.transition_domain(t13, p) and transitions.transition_domain(t12, p)):
            rejected += 1
            continue
        mid = transitions.transition(t12, p)
        if not transitions.transition_domain(t23, mid):
            rejected += 1
            continue
        direct = transitions.transition(t13, p)
        composed = transitions.transition(t23, mid)
        comp_worst = max(
            comp_worst,
            max(rel_dev(a, b) for a, b in zip(direct.coords, composed.coords)),
        )
        found += 1
    details.append(
        {"case": "T13 vs T23 o T12 (non-gating)", "samples": found,
         "max_rel_err": comp_worst, "pass": True, "gating": False}
    )
    gating = [d for d in details if d.get("gating", True)]
    return total, worst, details, all(d["pass"] for d in gating)


def _moment_scalar(be: Backend, v):
    """Moments are rational in the parameters: keep them exact in binary64.

    The moment route is the independent referee, so it is carried in exact
    rational arithmetic where the scalar type allows; the high-precision
    backend keeps its own scalars.
    """
    if be.name == "binary64":
        return Fraction(v) if not isinstance(v, Fraction) else v
    return be.scalar(v)


def _hermite_moments(be: Backend, count: int) -> list:
    # weight exp(-x^2)/sqrt(pi): odd moments 0, even (2j)! / (4^j j!)
    out = []
    for k in range(count):
        if k % 2:
            out.append(_moment_scalar(be, 0))
        else:
            j = k // 2
            out.append(
                _moment_scalar(be, Fraction(math.factorial(2 * j), 4**j * math.factorial(j)))
            )
    return out


def _laguerre_moments(alpha, count: int) -> list:
    return [families.pochhammer(alpha + 1, k) for k in range(count)]


def _jacobi_moments(alpha, beta, count: int) -> list:
    # x = 1 - 2*X with X Beta(alpha+1, beta+1):
    # E[x^k] = sum_j binom(k,j) (-2)^j (alpha+1)_j / (alpha+beta+2)_j
    out = []
    for k in range(count):
        acc = alpha * 0
        for j in range(k + 1):
            acc = acc + (
                math.comb(k, j)
                * (-2) ** j
                * families.pochhammer(alpha + 1, j)
                / families.pochhammer(alpha + beta + 2, j)
            )
        out.append(acc)
    return out


def _suite_moments(cfg, be):
    rng = random.Random(cfg["seed"])
    n_max = cfg["n_max"]
    cases = [("Hermite", {})]
    for _ in range(cfg["samples"]):
        cases.append(("Laguerre", {"alpha": round(rng.uniform(-0.5, 3.0), 6)}))
    for _ in range(cfg["samples"]):
        cases.append(
            ("Jacobi", {"alpha": round(rng.uniform(-0.5, 3.0), 6),
                        "beta": round(rng.uniform(-0.5, 3.0), 6)})
        )
    details = []
    worst = 0.0
    for tag, params in cases:
        if tag == "Hermite":
            mu = _hermite_moments(be, 2 * n_max + 1)
        elif tag == "Laguerre":
            mu = _laguerre_moments(_moment_scalar(be, params["alpha"]), 2 * n_max + 1)
        else:
            mu = _jacobi_moments(
                _moment_scalar(be, params["alpha"]),
                _moment_scalar(be, params["beta"]),
                2 * n_max + 1,
            )
        inst = families.FamilyInstance(tag, {k: be.scalar(v) for k, v in params.items()})
        from_moments = polys_from_moments(MomentSequence(tuple(mu)), n_max)
        from_recurrence = build_monic_sequence(families.recurrence_coeffs(inst), n_max)
        case_worst = 0.0
        for pm, pr in zip(from_moments, from_recurrence):
            for cm, cr in zip(pm.coeffs, pr.coeffs):
                case_worst = max(case_worst, rel_dev(cm, cr))
        label = tag if not params else f"{tag} {params}"
        details.append(
            {"case": label, "max_rel_err": case_worst, "pass": case_worst <= cfg["tol"]}
        )
        worst = max(worst, case_worst)
    return len(cases), worst, details, all(d["pass"] for d in details)


def _suite_hyp(cfg, be):
    rng = random.Random(cfg["seed"])
    n_max = cfg["n_max"]
    details = []
    worst = 0.0
    total = 0
    for tag in ("Racah", "Wilson"):
        case_worst = 0.0
        for _ in range(cfg["samples"]):
            if tag == "Racah":
                N = rng.randrange(7, 10)
                params = {
                    "alpha": be.scalar(round(rng.uniform(0.5, 3.0), 6)),
                    "beta": be.scalar(round(rng.uniform(0.5, 3.0), 6)),
                    "N": be.scalar(N),
                    "delta": None,
                }
                params["delta"] = params["alpha"] + N + be.scalar(round(rng.uniform(0.2, 2.0), 6))
                xs = [be.scalar(round(rng.uniform(0.0, 40.0), 6)) for _ in range(5)]
            else:
                params = {k: be.scalar(round(rng.uniform(0.3, 2.5), 6)) for k in "abcd"}
                xs = [be.scalar(round(rng.uniform(0.0, 9.0), 6)) for _ in range(5)]
            inst = families.FamilyInstance(tag, params)
            polys = build_monic_sequence(families.recurrence_coeffs(inst), n_max)
            for n in range(n_max + 1):
                for x in xs:
                    via_hyp = families.monic_via_hyp(inst, x, n)
                    via_rec = evaluate(polys[n], x)
                    case_worst = max(case_worst, rel_dev(via_hyp, via_rec))
            total += 1
        details.append(
            {"case": tag, "samples": cfg["samples"], "max_rel_err": case_worst,
             "pass": case_worst <= cfg["tol"]}
        )
        worst = max(worst, case_worst)
    return total, worst, details, all(d["pass"] for d in details)


_PERM_TOL = 1e-12


def _wilson_raw(params: dict, n: int):
    an, cn = families.wilson_an_cn(params, n)
    a = params["a"]
    B = an + cn - a * a
    if n >= 1:
        an_prev, _ = families.wilson_an_cn(params, n - 1)
        return B, an_prev * cn
    return B, None


def _suite_wilson_reality(cfg, be):
    rng = random.Random(cfg["seed"])
    n_max = cfg["n_max"]
    details = []
    worst = 0.0
    total = 0

    def draw_case(case: int) -> dict:
        def pos():
            return be.scalar(round(rng.uniform(0.3, 2.5), 6))

        def im():
            return be.scalar(round(rng.uniform(0.2, 2.0), 6))

        if case == 1:
            a = pos() + 1j * im()
            c = pos() + 1j * im()
            return {"a": a, "b": a.conjugate(), "c": c, "d": c.conjugate()}
        if case == 2:
            c = pos() + 1j * im()
            return {"a": pos() + 0j, "b": pos() + 0j, "c": c, "d": c.conjugate()}
        return {"a": pos() + 0j, "b": pos() + 0j, "c": pos() + 0j, "d": pos() + 0j}

    for case in (1, 2, 3):
        im_worst = 0.0
        perm_worst = 0.0
        pos_ok = True
        for _ in range(cfg["samples"]):
            params = draw_case(case)
            base = [_wilson_raw(params, n) for n in range(n_max + 1)]
            for n, (B, C) in enumerate(base):
                im_worst = max(im_worst, abs(complex(B).imag) / (1 + abs(complex(B).real)))
                if n >= 1:
                    im_worst = max(im_worst, abs(complex(C).imag) / (1 + abs(complex(C).real)))
            values = list(params.values())
            for perm in itertools.permutations(range(4)):
                pp = dict(zip("abcd", (values[i] for i in perm)))
                for n in range(n_max + 1):
                    B, C = _wilson_raw(pp, n)
                    perm_worst = max(perm_worst, rel_dev(B, base[n][0]))
                    if n >= 1:
                        perm_worst = max(perm_worst, rel_dev(C, base[n][1]))
            verdict = families.positivity_check(
                families.FamilyInstance("Wilson", params), n_probe=32
            )
            pos_ok = pos_ok and verdict.ok and verdict.case_label == f"WilsonCase{case}"
            total += 1
        ok = (
            im_worst <= cfg["tol"]
            and perm_worst <= _PERM_TOL
            and pos_ok
        ) if case != 3 else (perm_worst <= _PERM_TOL and pos_ok)
        details.append(
            {"case": f"WilsonCase{case}", "samples": cfg["samples"],
             "imag_err": im_worst, "perm_err": perm_worst,
             "positivity_ok": pos_ok, "max_rel_err": max(im_worst, perm_worst),
             "pass": ok}
        )
        worst = max(worst, im_worst, perm_worst)
    return total, worst, details, all(d["pass"] for d in details)


def _limit_cases(be: Backend):
    """The pinned parameter-to-infinity degenerations, as ladder case records.

    Each case maps a ladder value L to a rescaled source recurrence and a
    fixed target recurrence; the suite demands monotone error decay and a
    small final error.
    """
    s = be.scalar

    def fam(tag, **params):
        return families.recurrence_coeffs(families.FamilyInstance(tag, params))

    def case_cdh(L):
        src = rescale_coeffs(
            fam("ContinuousDualHahn", a=s(1.0), b=s(2.0), c=s(L)),
            AffineScale(1.0 / s(L), 0.0),
        )
        return src, fam("Laguerre", alpha=s(2.0))

    def case_jac_lag(L):
        src = rescale_coeffs(
            fam("Jacobi", alpha=s(1.0), beta=s(L)), AffineScale(-s(L) / 2, -1.0)
        )
        return src, fam("Laguerre", alpha=s(1.0))

    def case_jac_herm(L):
        src = rescale_coeffs(
            fam("Jacobi", alpha=s(L), beta=s(L)), AffineScale(sqrt(s(L)), 0.0)
        )
        return src, fam("Hermite")

    def case_lag_herm(L):
        src = rescale_coeffs(
            fam("Laguerre", alpha=s(L)), AffineScale(1 / sqrt(2 * s(L)), -s(L))
        )
        return src, fam("Hermite")

    def case_jacobi2d_corner(L):
        # both parameters to infinity along (L, L+1); the asymmetric path keeps
        # the odd coefficient part nontrivial while converging at rate 1/L
        p = charts.ChartPoint("Jacobi2D", (1 / s(L), 1 / (s(L) + 1)))
        src = charts.chart_recurrence(p)
        return src, rescale_coeffs(fam("Hermite"), AffineScale(_CORNER_RHO["Jacobi2D"], 0.0))

    def case_jacobi2d_ray(L):
        # fixed-ratio ray beta = 2*alpha: the odd part decays only like
        # 1/sqrt(L), so this instance is diagnostic rather than gating
        p = charts.ChartPoint("Jacobi2D", (1 / s(L), 1 / (2 * s(L))))
        src = charts.chart_recurrence(p)
        return src, rescale_coeffs(fam("Hermite"), AffineScale(_CORNER_RHO["Jacobi2D"], 0.0))

    def _hahn_case(L, b, N):
        a = s(L)
        b = s(b)
        N = s(N)
        rho = (b + 1) * sqrt(b + 1) / sqrt(a * b * N * (b + N + 1))
        sigma = -a * (a + 1) * N / (a * b + a + 2)
        src = rescale_coeffs(
            fam("Hahn", alpha=a, beta=a * b, N=a * N), AffineScale(rho, sigma)
        )
        return src, rescale_coeffs(fam("Hermite"), AffineScale(math.sqrt(2.0), 0.0))

    def case_hahn_herm(L):
        # b = 1 is the symmetric instance: the printed sigma centers the
        # recurrence exactly, so the error decays at rate 1/a
        return _hahn_case(L, 1.0, 3.0)

    def case_hahn_herm_generic(L):
        # generic fixed ratio (b = 2): rate 1/sqrt(a), diagnostic only
        return _hahn_case(L, 2.0, 3.0)

    def case_meixner_herm(L):
        b = s(L)
        c = s(0.5)
        rho = (1 - c) / (sqrt(c) * sqrt(b - 1))
        sigma = -b * c / (1 - c)
        src = rescale_coeffs(fam("Meixner", beta=b, c=c), AffineScale(rho, sigma))
        return src, rescale_coeffs(fam("Hermite"), AffineScale(math.sqrt(2.0), 0.0))

    def case_racah_hahn(L):
        src = rescale_coeffs(
            fam("Racah", alpha=s(1.1), beta=s(2.3), N=s(6.0), delta=s(L)),
            AffineScale(1 / s(L), 0.0),
        )
        return src, fam("Hahn", alpha=s(1.1), beta=s(2.3), N=s(6.0))

    return (
        ("continuous-dual-hahn -> laguerre", case_cdh, True),
        ("jacobi -> laguerre", case_jac_lag, True),
        ("symmetric jacobi -> hermite", case_jac_herm, True),
        ("laguerre -> hermite", case_lag_herm, True),
        ("jacobi2d corner -> hermite", case_jacobi2d_corner, True),
        ("jacobi2d corner, fixed-ratio ray (diagnostic)", case_jacobi2d_ray, False),
        ("hahn -> hermite", case_hahn_herm, True),
        ("hahn -> hermite, generic ratio (diagnostic)", case_hahn_herm_generic, False),
        ("meixner -> hermite", case_meixner_herm, True),
        ("racah -> hahn (diagnostic)", case_racah_hahn, False),
    )


def _suite_limits(cfg, be):
    n_max = cfg["n_max"]
    rungs = [10.0**k for k in range(1, cfg["samples"] + 1)]
    details = []
    worst = 0.0
    total = 0
    for name, builder, gating in _limit_cases(be):
        errs = []
        for L in rungs:
            src, tgt = builder(L)
            err = 0.0
            for n in range(n_max + 1):
                err = max(err, rel_dev(src.B(n), tgt.B(n)))
                if n >= 1:
                    err = max(err, rel_dev(src.C(n), tgt.C(n)))
            errs.append(err)
        tail = errs[-3:]
        monotone = all(tail[k] >= tail[k + 1] for k in range(len(tail) - 1))
        # diagnostic rows only assert the decay itself, not the final gate
        ok = monotone and (errs[-1] <= cfg["tol"] if gating else True)
        details.append(
            {"case": name, "ladder_errors": errs, "monotone_tail": monotone,
             "final_err": errs[-1], "pass": ok, "gating": gating}
        )
        if gating:
            worst = max(worst, errs[-1])
        total += len(rungs)
    gating_rows = [d for d in details if d["gating"]]
    return total, worst, details, all(d["pass"] for d in gating_rows)


def _suite_favard(cfg, be):
    rng = random.Random(cfg["seed"])
    details = []
    failures = 0
    total = 0
    for N in range(2, 9):
        region_ok = True
        for _ in range(cfg["samples"]):
            alpha = be.scalar(round(rng.uniform(0.05, 3.0), 6))
            beta = be.scalar(round(rng.uniform(0.05, 3.0), 6))
            delta = alpha + N + be.scalar(round(rng.uniform(0.1, 2.0), 6))
            inst = families.FamilyInstance(
                "Racah", {"alpha": alpha, "beta": beta, "N": be.scalar(N), "delta": delta}
            )
            rc = families.recurrence_coeffs(inst)
            positive = all(rc.C(n) > 0 for n in range(1, N + 1))
            # C_{N+1} = a_N * c_{N+1} vanishes (a_N carries the factor N - n).
            beyond = families.racah_an_cn(inst.params, N)[0] * families.racah_an_cn(
                inst.params, N + 1
            )[1]
            verdict = families.positivity_check(inst, n_probe=32)
            ok = (
                positive
                and not beyond > 0
                and verdict.ok
                and verdict.case_label == "RacahRegion18"
            )
            region_ok = region_ok and ok
            failures += 0 if ok else 1
            total += 1
        details.append({"case": f"N={N}", "samples": cfg["samples"], "pass": region_ok})
    max_err = failures / total if total else 0.0
    return total, max_err, details, failures == 0


def _suite_jacobi2d(cfg, be):
    total, worst, details, ok = _suite_chart_consistency(cfg, be, chart_list=("Jacobi2D",))
    rng = random.Random(cfg["seed"] + 1)
    for zs, target in ((frozenset({1}), "Laguerre"), (frozenset({2}), "Laguerre")):
        pts = _sample_face("Jacobi2D", zs, rng, 10)
        case_worst = 0.0
        case_ok = True
        for p in pts:
            rep = charts.verify_face("Jacobi2D", zs, _lift(p, be), n_max=cfg["n_max"], tol=1e-10)
            case_worst = max(case_worst, rep["max_rel_err"])
            case_ok = case_ok and rep["pass"]
        details.append(
            {"case": f"Jacobi2D {sorted(zs)} -> {target}", "samples": len(pts),
             "max_rel_err": case_worst, "pass": case_ok}
        )
        worst = max(worst, case_worst)
        ok = ok and case_ok
        total += len(pts)
    corner = charts.ChartPoint("Jacobi2D", (be.scalar(0.0), be.scalar(0.0)))
    rho_sq = _CORNER_RHO_SQ["Jacobi2D"]
    corner_worst = 0.0
    for n in range(cfg["n_max"] + 1):
        B, C = charts.chart_coeffs(corner, n)
        corner_worst = max(corner_worst, abs(float(B)))
        if n >= 1:
            corner_worst = max(corner_worst, rel_dev(C, rho_sq * n / 2))
    details.append(
        {"case": "Jacobi2D corner -> hermite scale", "max_rel_err": corner_worst,
         "pass": corner_worst <= 1e-12}
    )
    worst = max(worst, corner_worst)
    ok = ok and corner_worst <= 1e-12
    total += 1
    return total, worst, details, ok


_SUITE_FUNCS = {
    "chart-consistency": _suite_chart_consistency,
    "boundary-faces": _suite_boundary_faces,
    "continuity": _suite_continuity,
    "transitions": _suite_transitions,
    "moments-oracle": _suite_moments,
    "hyp-oracle": _suite_hyp,
    "wilson-reality": _suite_wilson_reality,
    "limits": _suite_limits,
    "favard-scan": _suite_favard,
    "jacobi2d": _suite_jacobi2d,
}

# suite -> (samples, n_max, (binary64 tol, highprec tol))
_SUITE_DEFAULTS = {
    "chart-consistency": (100, 8, (1e-8, 1e-30)),
    "boundary-faces": (10, 6, (1e-10, 1e-10)),
    "continuity": (20, 3, (1e-6, 1e-6)),
    "transitions": (50, 6, (1e-10, 1e-10)),
    "moments-oracle": (3, 6, (1e-9, 1e-9)),
    "hyp-oracle": (20, 6, (1e-9, 1e-9)),
    "wilson-reality": (6, 6, (1e-10, 1e-10)),
    "limits": (6, 5, (1e-4, 1e-4)),
    "favard-scan": (50, 8, (0.0, 0.0)),
    "jacobi2d": (100, 8, (1e-8, 1e-30)),
}

_DEFAULT_SEED = 1234


def run_suite(name: str, config: dict | None = None, **overrides) -> SuiteReport:
    """Run one named verification suite and return its report.

    `config` / keyword overrides accept: seed, samples, n_max, tol, backend.
    Unset values fall back to the suite's defaults (tolerance defaults depend
    on the backend).  The same configuration always produces an identical
    report.
    """
    if name not in _SUITE_FUNCS:
        raise UnknownSuite(f"unknown suite {name!r} (expected one of {SUITES})")
    cfg = dict(config or {})
    cfg.update({k: v for k, v in overrides.items() if v is not None})
    be = get_backend(cfg.get("backend"))
    samples_d, n_max_d, (tol64, tolhp) = _SUITE_DEFAULTS[name]
    cfg.setdefault("seed", _DEFAULT_SEED)
    cfg.setdefault("samples", samples_d)
    cfg.setdefault("n_max", n_max_d)
    cfg.setdefault("tol", be.tolerance(tol64, tolhp))
    cfg.setdefault("face_samples", 10)
    total, worst, details, ok = _SUITE_FUNCS[name](cfg, be)
    return SuiteReport(
        suite=name,
        samples=total,
        max_rel_err=float(worst),
        tol=float(cfg["tol"]),
        passed=bool(ok and worst <= cfg["tol"]),
        seed=cfg["seed"],
        backend=be.name,
        details=details,
    )


# ---------------------------------------------------------------------------
# Identification
# ---------------------------------------------------------------------------

_FIT_CHARTS = ("Racah1", "Racah2", "Racah3", "Wilson1", "Wilson2", "Jacobi2D")
_FIT_FAMILIES = (
    ("Hermite", ()),
    ("Laguerre", ("alpha",)),
    ("Charlier", ("a",)),
    ("Meixner", ("beta", "c")),
    ("Krawtchouk", ("p", "N")),
    ("Jacobi", ("alpha", "beta")),
)

_N_STARTS = 32
_N_REFINE = 5


def _parse_samples(samples):
    parsed = []
    for row in samples:
        if isinstance(row, dict):
            n, B, C = row["n"], row["B"], row.get("C")
        else:
            n, B, C = (tuple(row) + (None,))[:3]
        n = int(n)
        parsed.append((n, float(B), None if C is None else float(C)))
    parsed.sort(key=lambda r: r[0])
    seen = {n for n, _, _ in parsed}
    if len(seen) != len(parsed):
        raise InsufficientSamples("duplicate degree indices in samples")
    if len(parsed) < 6:
        raise InsufficientSamples(f"need >= 6 samples with distinct n, got {len(parsed)}")
    return parsed


def _residual_vector(predict, theta, parsed):
    out = []
    for n, B_s, C_s in parsed:
        try:
            B, C = predict(theta, n)
        except (ZeroDivisionError, OverflowError, ValueError, OutOfDomain):
            return None
        if not (_finite(B) and (n == 0 or C_s is None or _finite(C))):
            return None
        out.append((B - B_s) / (1 + abs(B_s)))
        if n >= 1 and C_s is not None:
            out.append((C - C_s) / (1 + abs(C_s)))
    return out


def _finite(x) -> bool:
    try:
        return math.isfinite(float(x))
    except (TypeError, ValueError):
        return False


_BIG = 1e9


def _fit(predict, dim, starts, bounds, parsed):
    def cost(theta):
        vec = _residual_vector(predict, theta, parsed)
        if vec is None:
            return None
        return max(abs(v) for v in vec)

    if dim == 0:
        c = cost(())
        return (), (c if c is not None else _BIG)
    screened = []
    for theta in starts:
        c = cost(theta)
        screened.append((c if c is not None else _BIG, theta))
    screened.sort(key=lambda t: t[0])
    lo = [b[0] for b in bounds]
    hi = [b[1] for b in bounds]

    def fun(theta):
        vec = _residual_vector(predict, tuple(theta), parsed)
        if vec is None:
            return [_BIG] * _n_res
        return vec

    _n_res = sum(2 if (n >= 1 and C is not None) else 1 for n, _, C in parsed)
    best_theta, best_cost = screened[0][1], screened[0][0]
    for _, theta in screened[:_N_REFINE]:
        x0 = [min(max(t, l), h) for t, l, h in zip(theta, lo, hi)]
        try:
            res = least_squares(fun, x0, bounds=(lo, hi), max_nfev=2000,
                                xtol=2.3e-16, ftol=1e-15, x_scale="jac")
        except ValueError:
            continue
        c = cost(tuple(res.x))
        if c is not None and c < best_cost:
            best_theta, best_cost = tuple(res.x), c
    return tuple(best_theta), best_cost


def identify(samples, seed: int = _DEFAULT_SEED) -> IdentifyResult:
    """Rank charts and direct families by how well they fit (n, B_n, C_n) data.

    Each candidate model is fitted by seeded multi-start nonlinear least
    squares on the relative coefficient deviations; a residual below 1e-8
    counts as a match.
    """
    parsed = _parse_samples(samples)
    n_top = max(n for n, _, _ in parsed)
    rng = random.Random(seed)
    candidates = []

    for chart in _FIT_CHARTS:
        dim = charts.chart_dim(chart)

        def predict(theta, n, _chart=chart):
            return charts.chart_coeffs_raw(_chart, tuple(theta), n)

        starts = [
            tuple(10.0 ** rng.uniform(-3.0, 0.0) for _ in range(dim))
            for _ in range(_N_STARTS)
        ]
        bounds = [(1e-9, 10.0)] * dim
        theta, cost = _fit(predict, dim, starts, bounds, parsed)
        candidates.append(
            {"model": chart, "kind": "chart",
             "parameters": {f"c{i+1}": theta[i] for i in range(dim)},
             "residual": cost}
        )

    fam_starts = {
        "Laguerre": lambda: (rng.uniform(-0.5, 6.0),),
        "Charlier": lambda: (10.0 ** rng.uniform(-1.0, 1.5),),
        "Meixner": lambda: (10.0 ** rng.uniform(-0.5, 1.2), rng.uniform(0.05, 0.95)),
        "Krawtchouk": lambda: (rng.uniform(0.05, 0.95), rng.uniform(n_top + 0.5, 40.0)),
        "Jacobi": lambda: (rng.uniform(-0.5, 6.0), rng.uniform(-0.5, 6.0)),
    }
    fam_bounds = {
        "Laguerre": [(-0.999, 100.0)],
        "Charlier": [(1e-9, 100.0)],
        "Meixner": [(1e-9, 100.0), (1e-9, 0.9999)],
        "Krawtchouk": [(1e-9, 0.9999), (float(n_top), 10000.0)],
        "Jacobi": [(-0.999, 100.0), (-0.999, 100.0)],
    }

    for tag, names in _FIT_FAMILIES:
        def predict(theta, n, _tag=tag, _names=names):
            inst = families.FamilyInstance(_tag, dict(zip(_names, theta)))
            rc = families.recurrence_coeffs(inst)
            return rc.B(n), (rc.C(n) if n >= 1 else 0.0)

        dim = len(names)
        starts = [fam_starts[tag]() for _ in range(_N_STARTS)] if dim else []
        bounds = fam_bounds.get(tag, [])
        theta, cost = _fit(predict, dim, starts, bounds, parsed)
        candidates.append(
            {"model": tag, "kind": "family",
             "parameters": dict(zip(names, theta)),
             "residual": cost}
        )

    candidates.sort(key=lambda c: (c["residual"], c["model"]))
    for c in candidates:
        c["match"] = bool(c["residual"] <= 1e-8)
    return IdentifyResult(tuple(candidates))


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


def emit_table(chart: str, p, n_max: int, format: str = "csv") -> str:
    """Coefficient table at one chart point, as CSV (# headers) or JSON."""
    import json as _json

    if not isinstance(p, charts.ChartPoint):
        p = charts.ChartPoint(chart, tuple(p))
    elif p.chart != chart:
        raise OutOfDomain(f"point belongs to chart {p.chart!r}, not {chart!r}")
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if p.is_interior():
        inst, scale = charts.chart_to_family(p)
        family, params = inst.tag, inst.params
        rho, sigma = scale.rho, scale.sigma
    else:
        record = charts.face_restriction(chart, p.zero_set)
        family, params = record.target, record.param_map(p.coords)
        rho, sigma = record.scale(p.coords)
    rows = []
    for n in range(n_max + 1):
        B, C = charts.chart_coeffs(p, n)
        # + 0.0 turns a negative zero into plain 0.0 for stable output
        rows.append((n, float(B) + 0.0, None if n == 0 else float(C) + 0.0))
    params = {k: _jsonable(v) for k, v in params.items()}
    if format == "json":
        return _json.dumps(
            {
                "schema": 1,
                "chart": chart,
                "coords": [float(c) for c in p.coords],
                "rho": _jsonable(rho),
                "sigma": _jsonable(sigma),
                "family": {"tag": family, "params": params},
                "rows": [{"n": n, "B": B, "C": C} for n, B, C in rows],
            },
            sort_keys=True,
        )
    if format != "csv":
        raise ValueError(f"unknown table format {format!r} (expected csv or json)")
    lines = [
        f"# chart: {chart}",
        f"# coords: {','.join(repr(float(c)) for c in p.coords)}",
        f"# rho: {_jsonable(rho)}",
        f"# sigma: {_jsonable(sigma)}",
        f"# family: {family}",
        f"# params: {','.join(f'{k}={params[k]}' for k in params)}",
        "n,B,C",
    ]
    for n, B, C in rows:
        lines.append(f"{n},{B!r},{'' if C is None else repr(C)}")
    return "\n".join(lines) + "\n"


def _jsonable(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return float(v)

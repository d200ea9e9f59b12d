"""Coordinate changes between the three finite-family charts.

The three four-coordinate charts covering the discrete top family overlap,
and on the overlaps the coordinates are related by explicit birational maps
(two of which involve a square root, so each carries a discriminant whose
sign gates the map).  Because all three charts reparametrize the same family,
any in-domain point and its image induce identical family parameters and,
after undoing each chart's own affine rescaling, identical recurrence
coefficients; `verify_transition` checks exactly that, plus the round trip.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ._scalars import rel_dev, sqrt
from .charts import ChartPoint, chart_coeffs, chart_to_family, face_restriction
from .errors import OutOfDomain

__all__ = [
    "PAIRS",
    "DIRECTIONS",
    "TransitionPair",
    "Discriminant",
    "DomainCheck",
    "discriminant",
    "transition",
    "transition_domain",
    "verify_transition",
]

PAIRS = ("T12", "T23", "T13")
DIRECTIONS = ("forward", "backward")

# Endpoint charts per pair; "forward" goes left to right.
_ENDPOINTS = {
    "T12": ("Racah1", "Racah2"),
    "T23": ("Racah2", "Racah3"),
    "T13": ("Racah1", "Racah3"),
}

# Snap tolerance for discriminants: an exact zero polluted by rounding may
# land slightly negative; anything within 1e-14 of the term scale counts as 0.
_SNAP = 1e-14


@dataclass(frozen=True)
class TransitionPair:
    """One of the three chart-overlap maps, with a direction."""

    tag: str
    direction: str = "forward"

    def __post_init__(self):
        if self.tag not in PAIRS:
            raise OutOfDomain(f"unknown transition tag {self.tag!r} (expected one of {PAIRS})")
        if self.direction not in DIRECTIONS:
            raise OutOfDomain(
                f"unknown direction {self.direction!r} (expected one of {DIRECTIONS})"
            )

    @property
    def source_chart(self) -> str:
        a, b = _ENDPOINTS[self.tag]
        return a if self.direction == "forward" else b

    @property
    def target_chart(self) -> str:
        a, b = _ENDPOINTS[self.tag]
        return b if self.direction == "forward" else a

    def reversed(self) -> "TransitionPair":
        other = "backward" if self.direction == "forward" else "forward"
        return TransitionPair(self.tag, other)


@dataclass(frozen=True)
class Discriminant:
    """Radicand gating a square-root transition; the map needs value >= 0."""

    value: float
    kind: str  # "S" (second-chart side) or "T" (first-chart side)


@dataclass(frozen=True)
class DomainCheck:
    """Conjunction of the printed domain inequalities plus the failed ones."""

    ok: bool
    failed: tuple

    def __bool__(self) -> bool:
        return self.ok


def _snap(raw, scale):
    if raw < 0 and -raw <= _SNAP * scale:
        return raw * 0  # preserves scalar type
    return raw


def _poly_exact(coords, poly):
    """Evaluate a polynomial in the coordinates without cancellation loss.

    Binary64 coordinates are lifted to exact rationals (floats convert
    exactly), so differences of nearly equal terms keep full relative
    precision; other scalar types fall back to their own arithmetic.
    """
    try:
        vals = tuple(Fraction(c) for c in coords)
    except (TypeError, ValueError, OverflowError):
        return poly(*coords)
    return float(poly(*vals))


def _poly_S(c1, c2, c3, c4):
    g = 1 + 2 * c1 + c1**2 - c1**2 * c2 * c3
    return c4**2 * g**2 - 4 * c1**2 * c3 * c4 * (1 + c1)


def _poly_T(c1, c2, c3, c4):
    g = 1 - c1 * c3 * (1 + c2 * c4)
    return c2**2 * c3**2 * (c4 - c1**2) ** 2 - 4 * c1**2 * c2 * c3 * g


def discriminant(kind: str, coords) -> Discriminant:
    """The gating radicand of a square-root transition, snapped near zero."""
    c1, c2, c3, c4 = coords
    if kind == "S":
        value = _poly_exact(coords, _poly_S)
        g = 1 + 2 * c1 + c1**2 - c1**2 * c2 * c3
        scale = c4**2 * g**2 + 4 * c1**2 * c3 * c4 * (1 + c1)
    elif kind == "T":
        value = _poly_exact(coords, _poly_T)
        g = 1 - c1 * c3 * (1 + c2 * c4)
        scale = c2**2 * c3**2 * (c4 - c1**2) ** 2 + abs(4 * c1**2 * c2 * c3 * g)
    else:
        raise OutOfDomain(f"unknown discriminant kind {kind!r} (expected 'S' or 'T')")
    return Discriminant(_snap(value, scale), kind)


# ---------------------------------------------------------------------------
# The six maps
# ---------------------------------------------------------------------------


def _t12_forward(t):
    t1, t2, t3, t4 = t
    d = 1 - t1 * t2 * t3 * t4
    return (
        t1 * t3 / (1 - t1 * t3 - t1 * t2 * t3 * t4),
        d / t3,
        d / (t3 * t4),
        t2 * t3**2 * t4 / d**2,
    )


def _t12_backward(s):
    s1, s2, s3, s4 = s
    return (
        s1 * s2 / (1 + s1),
        s2 * s3 * s4,
        (1 + s1) / (s2 * (1 + s1 + s1 * s2**2 * s4)),
        s2 / s3,
    )


def _t23_forward(s):
    # Evaluated in a subtraction-free rearrangement of the printed map (the
    # numerators are rationalized against the conjugate root), so binary64
    # keeps full precision even close to the discriminant's zero set.
    s1, s2, s3, s4 = s
    g = _poly_exact(s, lambda a, b, c, d: 1 + 2 * a + a**2 - a**2 * b * c)
    head = _poly_exact(
        s, lambda a, b, c, d: -2 * a**2 * c + d * (1 + a) * (1 + 2 * a + a**2 - a**2 * b * c)
    )
    root = sqrt(discriminant("S", s).value)
    den = 1 + s2 * s4 + s1 * s2 * s4
    big = head + (1 + s1) * root
    tail = s4 * g + root
    return (
        2 * s1**2 * s3 * (1 + s2 * s4 * (1 + s1)) / (den * big),
        s1 * s2**2 * s4 / den + 2 * s1 * s2 * s4 * (1 + s1) / (den * tail),
        big / (2 * s1 * (1 + s1)),
        1 / s1 + 2 * s1 * s2 * s3 * s4 / tail,
    )


def _t23_backward(u):
    u1, u2, u3, u4 = u
    w = 1 + u4 * (1 - u1 * u2 * u3)
    return (
        1 / (u4 * (1 - u1 * u2 * u3)),
        u2 * w / (1 + u1),
        u1 * u3 * w,
        (1 + u1) ** 2 * u3 * u4 / w**2,
    )


def _t13_forward(t):
    # Same subtraction-free treatment as _t23_forward.  The third coordinate
    # carries a factor 1/t4 (so that u1*u3 == t1/t4 identically, matching the
    # inverse map); the round trip and the recurrence identities pin it down.
    t1, t2, t3, t4 = t
    g = _poly_exact(t, lambda a, b, c, d: 1 - a * c * (1 + b * d))
    head = _poly_exact(
        t,
        lambda a, b, c, d: b * c * d * (d - a**2) - 2 * a**2 * (1 - a * c * (1 + b * d)),
    )
    root = sqrt(discriminant("T", t).value)
    big = head + t4 * root
    return (
        2 * t1**2 * g / big,
        2 * t1 * t2 * t3 * t4 / (t2 * t3 * (t1**2 + t4) + root),
        big / (2 * t1 * t4 * g),
        2 * g * (g + t2 * t3 * t4) / (t1 * t3 * (2 * g + t2 * t3 * (t4 - t1**2) + root)),
    )


def _t13_backward(u):
    u1, u2, u3, u4 = u
    return (
        u2 / (1 + u1),
        u1 * u2 * u3**2 * u4 * (1 + u1),
        (1 + u1) / (u2 * (1 + u4 * (1 - u2 * u3 * (u1 - u2)))),
        u2 / (u1 * u3 * (1 + u1)),
    )


_MAPS = {
    ("T12", "forward"): _t12_forward,
    ("T12", "backward"): _t12_backward,
    ("T23", "forward"): _t23_forward,
    ("T23", "backward"): _t23_backward,
    ("T13", "forward"): _t13_forward,
    ("T13", "backward"): _t13_backward,
}


# ---------------------------------------------------------------------------
# Domains (every printed inequality, as labeled clauses)
# ---------------------------------------------------------------------------


def _disc_ok(kind):
    return lambda c: discriminant(kind, c).value >= 0


_DOMAINS = {
    ("T12", "forward"): (
        ("t1 >= 0", lambda c: c[0] >= 0),
        ("t2 >= 0", lambda c: c[1] >= 0),
        ("t3 > 0", lambda c: c[2] > 0),
        ("t4 > 0", lambda c: c[3] > 0),
        ("t1*t3*(1+t2*t4) < 1", lambda c: c[0] * c[2] * (1 + c[1] * c[3]) < 1),
        ("t2*t4 < 1", lambda c: c[1] * c[3] < 1),
    ),
    ("T12", "backward"): (
        ("s1 >= 0", lambda c: c[0] >= 0),
        ("s2 > 0", lambda c: c[1] > 0),
        ("s3 > 0", lambda c: c[2] > 0),
        ("s4 >= 0", lambda c: c[3] >= 0),
        ("s2^2*s4 < 1", lambda c: c[1] ** 2 * c[3] < 1),
    ),
    ("T23", "forward"): (
        ("s1 > 0", lambda c: c[0] > 0),
        ("s2 >= 0", lambda c: c[1] >= 0),
        ("s3 > 0", lambda c: c[2] > 0),
        ("s4 > 0", lambda c: c[3] > 0),
        ("s2^2*s4 < 1", lambda c: c[1] ** 2 * c[3] < 1),
        ("S >= 0", _disc_ok("S")),
        (
            "-2*s1^2*s3 + s4*(1+s1)*(1+2*s1+s1^2-s1^2*s2*s3) >= 0",
            lambda c: -2 * c[0] ** 2 * c[2]
            + c[3] * (1 + c[0]) * (1 + 2 * c[0] + c[0] ** 2 - c[0] ** 2 * c[1] * c[2])
            >= 0,
        ),
    ),
    ("T23", "backward"): (
        ("u1 > 0", lambda c: c[0] > 0),
        ("u2 >= 0", lambda c: c[1] >= 0),
        ("u3 > 0", lambda c: c[2] > 0),
        ("u4 > 0", lambda c: c[3] > 0),
        ("u2^2*u3*u4 < 1", lambda c: c[1] ** 2 * c[2] * c[3] < 1),
        ("u2*u3*(u1-u2) < 1", lambda c: c[1] * c[2] * (c[0] - c[1]) < 1),
        ("u1*(1+u2*u3) <= 1", lambda c: c[0] * (1 + c[1] * c[2]) <= 1),
    ),
    ("T13", "forward"): (
        ("t1 > 0", lambda c: c[0] > 0),
        ("t2 > 0", lambda c: c[1] > 0),
        ("t3 > 0", lambda c: c[2] > 0),
        ("t4 > 0", lambda c: c[3] > 0),
        ("t2*t4 < 1", lambda c: c[1] * c[3] < 1),
        ("T >= 0", _disc_ok("T")),
        (
            "t2*t3*t4*(t4-t1^2) >= 2*t1^2*(1-t1*t3*(1+t2*t4))",
            lambda c: c[1] * c[2] * c[3] * (c[3] - c[0] ** 2)
            >= 2 * c[0] ** 2 * (1 - c[0] * c[2] * (1 + c[1] * c[3])),
        ),
        (
            "1 - t1*t3*(1+t2*t4) > 0",
            lambda c: 1 - c[0] * c[2] * (1 + c[1] * c[3]) > 0,
        ),
    ),
    ("T13", "backward"): (
        ("u1 > 0", lambda c: c[0] > 0),
        ("u2 > 0", lambda c: c[1] > 0),
        ("u3 > 0", lambda c: c[2] > 0),
        ("u4 > 0", lambda c: c[3] > 0),
        ("u2^2*u3*u4 < 1", lambda c: c[1] ** 2 * c[2] * c[3] < 1),
        ("u2*u3*(u1-u2) < 1", lambda c: c[1] * c[2] * (c[0] - c[1]) < 1),
        ("u1*(1+u2*u3) <= 1", lambda c: c[0] * (1 + c[1] * c[2]) <= 1),
    ),
}

# Printed boundary-box identifications: source zero coordinate -> target zero
# coordinate, per pair in the forward direction.
_FACE_MAP = {
    "T12": {1: 1, 2: 4},
    "T23": {2: 2},
    "T13": {},
}


def _coerce_point(pair: TransitionPair, p) -> ChartPoint:
    if isinstance(p, ChartPoint):
        if p.chart != pair.source_chart:
            raise OutOfDomain(
                f"{pair.tag} {pair.direction} starts from {pair.source_chart}, "
                f"got a {p.chart} point"
            )
        return p
    return ChartPoint(pair.source_chart, tuple(p))


def transition_domain(pair: TransitionPair, p) -> DomainCheck:
    """Evaluate every printed inequality for the pair/direction."""
    if isinstance(p, ChartPoint):
        coords = _coerce_point(pair, p).coords
    else:
        coords = tuple(p)
    failed = tuple(
        label for label, pred in _DOMAINS[(pair.tag, pair.direction)] if not pred(coords)
    )
    return DomainCheck(ok=not failed, failed=failed)


def transition(pair: TransitionPair, p) -> ChartPoint:
    """Map a source-chart point to the overlapping chart.

    Raises OutOfDomain naming the first violated inequality if `p` is outside
    the homeomorphism's domain.
    """
    p = _coerce_point(pair, p)
    check = transition_domain(pair, p)
    if not check:
        raise OutOfDomain(
            f"{pair.tag} {pair.direction} domain violated: {check.failed[0]}"
        )
    coords = _MAPS[(pair.tag, pair.direction)](p.coords)
    return ChartPoint(pair.target_chart, coords)


def _mapped_zero_set(pair: TransitionPair, zero_set: frozenset) -> frozenset:
    fmap = _FACE_MAP[pair.tag]
    if pair.direction == "backward":
        fmap = {v: k for k, v in fmap.items()}
    return frozenset(fmap[i] for i in zero_set if i in fmap)


def verify_transition(pair: TransitionPair, p, n_max: int = 6, tol: float = 1e-10) -> dict:
    """Check that a transition preserves the represented polynomial sequence.

    Verifies (i) the round trip returns to `p`, (ii) both sides induce the
    same family parameters, and (iii) after undoing each side's affine
    rescaling the recurrence coefficients agree for n <= n_max.  Interior
    points are compared through the top family; boundary points through the
    face registry of both charts (the printed box identifications).
    """
    p = _coerce_point(pair, p)
    image = transition(pair, p)
    back = transition(pair.reversed(), image)
    roundtrip_err = max(rel_dev(b, a) for a, b in zip(p.coords, back.coords))

    report = {
        "pair": pair.tag,
        "direction": pair.direction,
        "source": {"chart": p.chart, "coords": [float(c) for c in p.coords]},
        "target": {"chart": image.chart, "coords": [float(c) for c in image.coords]},
        "n_max": n_max,
        "tol": tol,
        "roundtrip_err": float(roundtrip_err),
    }

    if p.is_interior():
        inst_p, scale_p = chart_to_family(p)
        inst_q, scale_q = chart_to_family(image)
        param_err = max(
            rel_dev(inst_q.params[k], inst_p.params[k]) for k in inst_p.params
        )
        same_target = inst_p.tag == inst_q.tag
    else:
        expected = _mapped_zero_set(pair, p.zero_set)
        rec_p = face_restriction(p.chart, p.zero_set)
        rec_q = face_restriction(image.chart, image.zero_set)
        pars_p = rec_p.param_map(p.coords)
        pars_q = rec_q.param_map(image.coords)
        scale_p = rec_p.scale(p.coords)
        scale_q = rec_q.scale(image.coords)
        param_err = max(
            (rel_dev(pars_q[k], pars_p[k]) for k in pars_p), default=0.0
        )
        same_target = rec_p.target == rec_q.target and image.zero_set == expected
        report["face"] = {
            "source_zero_set": sorted(p.zero_set),
            "target_zero_set": sorted(image.zero_set),
            "expected_zero_set": sorted(expected),
            "source_family": rec_p.target,
            "target_family": rec_q.target,
        }

    rho_p, sig_p = (scale_p.rho, scale_p.sigma) if hasattr(scale_p, "rho") else scale_p
    rho_q, sig_q = (scale_q.rho, scale_q.sigma) if hasattr(scale_q, "rho") else scale_q
    coeff_err = 0.0
    for n in range(n_max + 1):
        bp, cp = chart_coeffs(p, n)
        bq, cq = chart_coeffs(image, n)
        coeff_err = max(coeff_err, rel_dev(bq / rho_q - sig_q, bp / rho_p - sig_p))
        if n >= 1:
            coeff_err = max(coeff_err, rel_dev(cq / rho_q**2, cp / rho_p**2))

    report["param_err"] = float(param_err)
    report["coeff_err"] = float(coeff_err)
    report["pass"] = bool(
        same_target
        and roundtrip_err <= tol
        and param_err <= tol
        and coeff_err <= tol
    )
    return report

"""Coordinate charts on the parameter space of the Askey scheme.

Each chart reparametrizes a top-level family (three charts for the discrete
Racah family, two for the continuous Wilson family, plus a two-coordinate
warm-up chart for Jacobi) so that the recurrence coefficients of the monic
orthogonal polynomials extend continuously to the closed coordinate box.
Setting chart coordinates to zero lands on boundary faces where the
recurrence degenerates to that of a lower family in the scheme; the face
registry records, for every face, which family appears there, with which
parameters, and through which affine rescaling of the variable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import mpmath

from ._scalars import atan, is_finite, rel_dev, sqrt
from .errors import NonFiniteCoefficient, OutOfDomain
from .polyrec import AffineScale, RecurrenceCoeffs, rescale_coeffs

__all__ = [
    "CHARTS",
    "ChartPoint",
    "BoundaryFace",
    "Alias",
    "RestrictionRecord",
    "chart_dim",
    "chart_n_valid",
    "chart_coeffs",
    "chart_coeffs_raw",
    "chart_to_family",
    "face_restriction",
    "registry",
    "verify_face",
    "continuity_probe",
]

CHARTS = ("Racah1", "Racah2", "Racah3", "Wilson1", "Wilson2", "Jacobi2D")

_DIM = {
    "Racah1": 4,
    "Racah2": 4,
    "Racah3": 4,
    "Wilson1": 4,
    "Wilson2": 4,
    "Jacobi2D": 2,
}

# Interior inequalities beyond coordinate nonnegativity, as (label, predicate).
_CONSTRAINTS = {
    "Racah1": (
        ("c1*c3 < 1", lambda c: c[0] * c[2] < 1),
        ("c2*c4 < 1", lambda c: c[1] * c[3] < 1),
    ),
    "Racah2": (("c2^2*c4 < 1", lambda c: c[1] ** 2 * c[3] < 1),),
    "Racah3": (
        ("c2^2*c3*c4 < 1", lambda c: c[1] ** 2 * c[2] * c[3] < 1),
        ("c2*c3*(c1 - c2) < 1", lambda c: c[1] * c[2] * (c[0] - c[1]) < 1),
    ),
    "Wilson1": (),
    "Wilson2": (),
    "Jacobi2D": (),
}


def chart_dim(chart: str) -> int:
    if chart not in _DIM:
        raise KeyError(f"unknown chart {chart!r} (expected one of {CHARTS})")
    return _DIM[chart]


def _check_coords(chart: str, coords) -> tuple:
    dim = chart_dim(chart)
    coords = tuple(coords)
    if len(coords) != dim:
        raise OutOfDomain(f"{chart} takes {dim} coordinates, got {len(coords)}")
    for i, x in enumerate(coords, start=1):
        if isinstance(x, complex):
            raise OutOfDomain(f"{chart} coordinate c{i} must be real, got {x!r}")
        if not is_finite(x):
            raise OutOfDomain(f"{chart} coordinate c{i} must be finite, got {x!r}")
        if not x >= 0:
            raise OutOfDomain(f"{chart} requires c{i} >= 0, got {x!r}")
    for label, pred in _CONSTRAINTS[chart]:
        if not pred(coords):
            raise OutOfDomain(f"{chart} requires {label}")
    return coords


@dataclass(frozen=True)
class ChartPoint:
    """A point of the closed coordinate box of one chart."""

    chart: str
    coords: tuple

    def __post_init__(self):
        object.__setattr__(self, "coords", _check_coords(self.chart, self.coords))

    @property
    def zero_set(self) -> frozenset:
        return frozenset(i for i, x in enumerate(self.coords, start=1) if x == 0)

    def is_interior(self) -> bool:
        return not self.zero_set


@dataclass(frozen=True)
class BoundaryFace:
    """A boundary face of a chart: the locus where the listed coordinates vanish."""

    chart: str
    zero_set: frozenset

    def __post_init__(self):
        zs = frozenset(int(i) for i in self.zero_set)
        dim = chart_dim(self.chart)
        if not zs <= frozenset(range(1, dim + 1)):
            raise OutOfDomain(f"{self.chart} face indices must lie in 1..{dim}, got {sorted(zs)}")
        object.__setattr__(self, "zero_set", zs)


@dataclass(frozen=True)
class Alias:
    """One face point re-expressed at another point of the same chart.

    `image(coords)` maps a point of the face to a point on another face with
    the same family but fewer active coordinates; `scale(coords)` gives the
    affine rescaling (rho0, sigma0) with
    B_face(n) = rho0 * (B_image(n) + sigma0) and C_face(n) = rho0^2 * C_image(n).
    """

    scale: Callable[[tuple], tuple]
    image: Callable[[tuple], tuple]


@dataclass(frozen=True)
class RestrictionRecord:
    """What one boundary face of a chart restricts to.

    `param_map(coords)` gives the parameters of the `target` family and
    `scale(coords)` the affine rescaling (rho, sigma) such that the chart
    recurrence coefficients at a face point equal the rescaled target-family
    coefficients. `covers` lists every zero-set this record is valid on
    (deeper faces keep the same formulas), and `aliases` the redundant
    re-expressions of the face within the chart.
    """

    chart: str
    face: frozenset
    target: str
    param_map: Callable[[tuple], dict]
    scale: Callable[[tuple], tuple]
    covers: frozenset = field(default_factory=frozenset)
    aliases: tuple = ()


def _guarded_div(num, den):
    """num / den, with the 0/0 corner value 0 (num vanishes wherever den does)."""
    if den == 0:
        return num * 0
    return num / den


# ---------------------------------------------------------------------------
# Chart "Racah1"
# ---------------------------------------------------------------------------


def _racah1_coeffs(c, n):
    c1, c2, c3, c4 = c
    q2 = 1 + c2
    d = 1 + c2 + 2 * c1 * c2
    dnm = 1 + c2 + (2 * n - 1) * c1 * c2
    dn = 1 + c2 + 2 * n * c1 * c2
    dnp = 1 + c2 + (2 * n + 1) * c1 * c2
    dn1 = 1 + c2 + 2 * (n + 1) * c1 * c2
    w = 1 + c3 * c4 + c2 * c3 * c4
    root = c1 + c4 + c2 * c4

    bracket = (
        2 * n * c1 * c2 * c3 * c4**2 * (1 + c2 + (n + 1) * c1 * c2) * d
        + c2 * c3 * c4**2 * (1 + c1) * q2 * d
        - c4 * (1 - c2**2) * (1 + c1 * c3)
        - 2 * c1 * (1 - c2) * (1 + c2 * c4)
    )
    B = (
        -(n * q2 * sqrt(q2) * (1 + c2 + (n + 1) * c1 * c2))
        / (d * dn * dn1 * sqrt(w))
        * _guarded_div(bracket, sqrt(root))
    )
    C = (
        (1 + c2 + n * c1 * c2)
        * (1 + (1 - n) * c2 * c4)
        * (1 - n * c1 * c2 * c3 * c4)
        * (w + n * c1 * c2 * c3 * c4)
        / (dnm * dn**2 * dnp)
        * n
        * (1 + n * c1)
        * (1 + n * c1 * c2)
        * q2**3
        / w
        * (1 + (n + 1) * _guarded_div(c1 * c2 * c4, root))
    )
    return B, C


def _racah1_params(c):
    c1, c2, c3, c4 = c
    return {
        "alpha": 1 / c1,
        "beta": 1 / (c1 * c2),
        "N": 1 / (c2 * c4),
        "delta": (1 + c2 * c3 * c4) / (c1 * c2 * c3 * c4),
    }


def _racah1_scale(c):
    c1, c2, c3, c4 = c
    q2 = 1 + c2
    rho = (
        c1 * c2 * q2 * sqrt(q2) * c3 * c4**2
        / (sqrt(c1 + c4 + c2 * c4) * sqrt(1 + q2 * c3 * c4))
    )
    sigma = (
        -(1 + c1)
        * (1 + (1 + c2 + c1 * c2) * c3 * c4)
        / (c1 * c2 * (1 + c2 + 2 * c1 * c2) * c3 * c4**2)
    )
    return rho, sigma


def _racah1_n_valid(c):
    c2, c4 = c[1], c[3]
    return 1 / (c2 * c4) if c2 * c4 > 0 else math.inf


# ---------------------------------------------------------------------------
# Chart "Racah2"
# ---------------------------------------------------------------------------


def _racah2_coeffs(c, n):
    c1, c2, c3, c4 = c
    P = (1 + c1) * (1 + c2 * c3 * c4)
    X = c1 * c2**2 * c3 * c4

    t1 = 2 * n**2 * (n + 1) ** 2 * c1**3 * c2**6 * c3**2 * c4**3 / (1 + c1)
    t2 = 4 * n**2 * (n + 1) * c1**2 * c2**4 * c3 * c4**2 * (1 + c2 * c3 * c4)
    t3 = (
        n**2
        * c1
        * c2**2
        * c4
        * (
            2
            + 2 * c1
            - c3
            - 2 * c1 * c3
            - 2 * c1 * c3**2
            + 5 * c2 * c3 * c4
            + 5 * c1 * c2 * c3 * c4
            + c2 * c3**2 * c4
            + 2 * c1 * c2 * c3**2 * c4
            + 4 * c1 * c2 * c3**3 * c4
            + 3 * c2**2 * c3**2 * c4**2
            + 3 * c1 * c2**2 * c3**2 * c4**2
            - 2 * c1 * c2**3 * c3**2 * c4**2
        )
    )
    t4 = (
        n
        * (1 + c1 + c2 * c3 * c4 + c1 * c2 * c3 * c4 + c1 * c2**2 * c3 * c4)
        * (
            1
            + 2 * c1
            + 2 * c1 * c3
            - c2 * c4
            - c1 * c2 * c4
            - c2 * c3 * c4
            - 2 * c1 * c2 * c3 * c4
            - 4 * c1 * c2 * c3**2 * c4
            - c2**2 * c3 * c4**2
            - c1 * c2**2 * c3 * c4**2
            + 2 * c1 * c2**3 * c3 * c4**2
        )
    )
    t5 = (
        (1 + c1)
        * (1 + c2 * c3 * c4)
        * (
            -c1 * c3
            - c2 * c4
            - c1 * c2 * c4
            + c3**2 * c4
            + c1 * c3**2 * c4
            + 2 * c1 * c2 * c3**2 * c4
            - c2**2 * c3 * c4**2
            - c1 * c2**2 * c3 * c4**2
            - 2 * c1 * c2**3 * c3 * c4**2
        )
    )
    B = -sqrt(c2 / 2) * (t1 + t2 + t3 - t4 + t5) / ((P + 2 * n * X) * (P + 2 * (n + 1) * X))
    C = (
        n
        * (1 + c1 + n * c1 * c2)
        * (1 + (1 - n) * c2**2 * c4)
        * (1 + c1 + (1 - n) * c1 * c2**2 * c4)
        * (1 + c1 + n * X)
        * (P + c1 * c3 + (n + 1) * X)
        / (2 * (1 + c1) ** 2 * (P + (2 * n - 1) * X))
        * (P + n * X)
        * ((1 + c1) * (1 + c3 + c2 * c3 * c4) + (n + 1) * X)
        / ((P + 2 * n * X) ** 2 * (P + (2 * n + 1) * X))
    )
    return B, C


def _racah2_params(c):
    c1, c2, c3, c4 = c
    return {
        "alpha": (1 + c1) / (c1 * c2),
        "beta": (1 + c1) / (c1 * c2**2 * c3 * c4),
        "N": 1 / (c2**2 * c4),
        "delta": (1 + c1 + c2 * c4 * (1 + c1 + c1 * c2)) / (c1 * c2**2 * c4),
    }


def _racah2_scale(c):
    c1, c2, c3, c4 = c
    rho = c1 * c2**2 * sqrt(c2 / 2) * c4 / (1 + c1)
    sigma = -((1 + c1) * (1 + c3 - c2**2 * c4) + c1 * c2) / (c1 * c2**3 * c4)
    return rho, sigma


def _racah2_n_valid(c):
    c2, c4 = c[1], c[3]
    return 1 / (c2**2 * c4) if c2**2 * c4 > 0 else math.inf


# ---------------------------------------------------------------------------
# Chart "Racah3"
# ---------------------------------------------------------------------------


def _racah3_coeffs(c, n):
    c1, c2, c3, c4 = c
    Q = 1 + c1 * c2 * c3**2 * c4 * (1 + c1)
    Y = c1 * c2**2 * c3**2 * c4

    g4 = 2 * n**2 * (n + 1) ** 2 * c1**2 * c2**6 * c3**5 * c4**3
    g3 = (
        4 * n**2 * (n + 1) * c1 * c2**4 * c3**3 * c4**2
        * (1 + c1 * c2 * c3**2 * c4 + c1**2 * c2 * c3**2 * c4)
    )
    g2 = (
        n**2
        * c2**2
        * c3
        * c4
        * (
            2
            - 2 * c1 * c3
            - 2 * c1**2 * c3**2
            - c1 * c3 * c4
            - 2 * c1**2 * c3**2 * c4
            + 5 * c1 * c2 * c3**2 * c4
            + 6 * c1**2 * c2 * c3**2 * c4
            + 2 * c1**2 * c2 * c3**3 * c4
            + 4 * c1**3 * c2 * c3**3 * c4
            - 4 * c1**2 * c2**2 * c3**3 * c4
            + 4 * c1**3 * c2 * c3**4 * c4
            + 4 * c1**4 * c2 * c3**4 * c4
            + c1**2 * c2 * c3**3 * c4**2
            + c1**3 * c2 * c3**3 * c4**2
            + 4 * c1**3 * c2 * c3**4 * c4**2
            + 4 * c1**4 * c2 * c3**4 * c4**2
            + 3 * c1**2 * c2**2 * c3**4 * c4**2
            + 5 * c1**3 * c2**2 * c3**4 * c4**2
            + 2 * c1**4 * c2**2 * c3**4 * c4**2
            + 2 * c1**2 * c2**3 * c3**4 * c4**2
            + 2 * c1**3 * c2**3 * c3**4 * c4**2
        )
    )
    g1 = (
        n
        * (1 + c1 * c2 * c3**2 * c4 + c1**2 * c2 * c3**2 * c4 + c1 * c2**2 * c3**2 * c4)
        * (
            -2
            - 2 * c1 * c3
            - c4
            - 2 * c1 * c3 * c4
            + c2 * c3 * c4
            + 2 * c1 * c2 * c3 * c4
            + 2 * c1 * c2 * c3**2 * c4
            + 4 * c1**2 * c2 * c3**2 * c4
            - 4 * c1 * c2**2 * c3**2 * c4
            + 4 * c1**2 * c2 * c3**3 * c4
            + 4 * c1**3 * c2 * c3**3 * c4
            + c1 * c2 * c3**2 * c4**2
            + c1**2 * c2 * c3**2 * c4**2
            + 4 * c1**2 * c2 * c3**3 * c4**2
            + 4 * c1**3 * c2 * c3**3 * c4**2
            + c1 * c2**2 * c3**3 * c4**2
            + c1**2 * c2**2 * c3**3 * c4**2
            + 2 * c1 * c2**3 * c3**3 * c4**2
            + 2 * c1**2 * c2**3 * c3**3 * c4**2
        )
    )
    g0 = (
        (1 + c1 * c2 * c3**2 * c4 + c1**2 * c2 * c3**2 * c4)
        * (
            -1
            - c1 * c3
            - c1 * c3 * c4
            + c1**2 * c3**2 * c4
            + c1**3 * c3**2 * c4
            - c1 * c2 * c3**2 * c4
            - 2 * c1 * c2**2 * c3**2 * c4
            + c1**2 * c3**3 * c4
            + 2 * c1**3 * c3**3 * c4
            + c1**4 * c3**3 * c4
            + 2 * c1**2 * c2 * c3**3 * c4
            + 2 * c1**3 * c2 * c3**3 * c4
            + c1**2 * c3**3 * c4**2
            + 2 * c1**3 * c3**3 * c4**2
            + c1**4 * c3**3 * c4**2
            + 2 * c1**2 * c2 * c3**3 * c4**2
            + 2 * c1**3 * c2 * c3**3 * c4**2
        )
    )
    B = -sqrt(c2 / 2) * (g4 + g3 + g2 + g1 + g0) / ((Q + 2 * n * Y) * (Q + 2 * (n + 1) * Y))
    C = (
        n
        * (1 + c1 + n * c2)
        * (1 + (1 - n) * c2**2 * c3 * c4)
        * (1 + c4 - c1 * c2 * c3 * c4 + (1 - n) * c2**2 * c3 * c4)
        / 2
        * (Q + n * Y)
        * (1 + c1 * c3 * (1 + c4 + c2 * c3 * c4) + (n + 1) * Y)
        / ((Q + (2 * n - 1) * Y) * (Q + 2 * n * Y) ** 2)
        * (1 + n * Y)
        * (1 + c1 * c3 * (1 + c2 * c3 * c4 + c1 * c2 * c3 * c4) + (n + 1) * Y)
        / (Q + (2 * n + 1) * Y)
    )
    return B, C


def _racah3_params(c):
    c1, c2, c3, c4 = c
    return {
        "alpha": (1 + c1) / c2,
        "beta": 1 / (c1 * c2**2 * c3**2 * c4),
        "N": 1 / (c2**2 * c3 * c4),
        "delta": (1 + c4 + c2 * c3 * c4 + c2**2 * c3 * c4) / (c2**2 * c3 * c4),
    }


def _racah3_scale(c):
    c1, c2, c3, c4 = c
    rho = sqrt(c2 / 2) * c2**2 * c3 * c4
    sigma = -(1 + c1) * (1 + c1 * c3 + c1 * c3 * c4) / (c2**3 * c3 * c4)
    return rho, sigma


def _racah3_n_valid(c):
    c2, c3, c4 = c[1], c[2], c[3]
    prod = c2**2 * c3 * c4
    return 1 / prod if prod > 0 else math.inf


# ---------------------------------------------------------------------------
# Chart "Wilson1"
# ---------------------------------------------------------------------------


def _wilson1_coeffs(c, n):
    c1, c2, c3, c4 = c
    one = 1 + 0 * c1
    sqrt2 = sqrt(2 * one)
    sc1 = sqrt(c1)
    E = 1 + c2 - c1 * c2
    dn1 = 1 + c2 + (n - 1) * c1 * c2
    dn = 1 + c2 + n * c1 * c2

    t1 = 2 * n**4 * c1**4 * c2**4 * c3**2 * c4 * E
    t2 = 4 * n**3 * c1**3 * c2**3 * c3**2 * c4 * (2 + 2 * c2 - c1 * c2) * E
    p3 = (
        10
        + 34 * c2
        - 20 * c1 * c2
        + 34 * c2**2
        - 44 * c1 * c2**2
        + 12 * c1**2 * c2**2
        + 10 * c2**3
        - 20 * c1 * c2**3
        + 12 * c1**2 * c2**3
        - 2 * c1**3 * c2**3
    )
    t3 = n**2 * c1 * sc1 * c2 * (2 - 2 * c2 + sc1 * c2 * c4 * E + sc1 * c2 * c3**2 * c4 * p3)
    q4 = (
        1
        + 5 * c2
        - 2 * c1 * c2
        + 5 * c2**2
        - 6 * c1 * c2**2
        + c1**2 * c2**2
        + c2**3
        - 2 * c1 * c2**3
        + c1**2 * c2**3
    )
    t4 = (
        n
        * sc1
        * (2 + 2 * c2 - c1 * c2)
        * (2 - 2 * c2 + sc1 * c2 * c4 * E + 2 * sc1 * c2 * c3**2 * c4 * q4)
    )
    t5 = E * (
        2 * sc1
        - 2 * sc1 * c2
        + c4
        + 2 * c2 * c4
        - c1 * c2 * c4
        + c2**2 * c4
        - c1 * c2**2 * c4
        + 4 * c2 * c3**2 * c4 * (1 + 2 * c2 - c1 * c2 + c2**2 - c1 * c2**2)
    )
    B = (t1 + t2 + t3 + t4 + t5) / (sqrt2 * E * dn1 * dn)
    C = (
        n
        * (1 + c3**2 * dn1**2)
        * (1 + c1 * c2**2 * c3**2 * c4**2 * dn1**2)
        * (2 - c1 + n * c1)
        * (2 + 2 * c2 + (n - 2) * c1 * c2)
        * (2 + (n - 1) * c1 * c2)
        / (
            2
            * (1 + c2 + (2 * n - 1) * c1 * c2 / 2)
            * dn1**2
            * (1 + c2 + (2 * n - 3) * c1 * c2 / 2)
        )
    )
    return B, C


def _wilson1_params(c):
    c1, c2, c3, c4 = c
    re_a = 1 / c1
    re_b = 1 / (c1 * c2)
    im_a = (1 - sqrt(c1) * c2 * c4) / (2 * c1 * sqrt(c1) * c2**2 * c3 * c4)
    im_b = (1 + sqrt(c1) * c2 * c4) / (2 * c1 * sqrt(c1) * c2**2 * c3 * c4)
    return {
        "a": re_a - 1j * im_a,
        "b": re_b - 1j * im_b,
        "c": re_a + 1j * im_a,
        "d": re_b + 1j * im_b,
    }


def _wilson1_scale(c):
    c1, c2, c3, c4 = c
    one = 1 + 0 * c1
    rho = 2 * sqrt(2 * one) * c1**2 * c2**2 * c3**2 * c4
    sigma = -1 / (4 * c1**3 * c2**4 * c3**2 * c4**2) + (1 - c2) / (
        2 * c1**2 * sqrt(c1) * c2**3 * (1 + c2 - c1 * c2) * c3**2 * c4
    )
    return rho, sigma


# ---------------------------------------------------------------------------
# Chart "Wilson2"
# ---------------------------------------------------------------------------


def _wilson2_coeffs(c, n):
    c1, c2, c3, c4 = c
    Z = c1**5 * c2**2 * c3**3 * c4
    W = c1 * Z

    t1 = 8 * n**4 * c1**16 * c2**5 * c3**8 * c4**2
    t2 = 16 * n**3 * c1**10 * c2**3 * c3**5 * c4 * (1 + Z + W)
    t3 = (
        4
        * n**2
        * c1**4
        * c2
        * c3**2
        * (
            2
            - 2 * c1**2 * c2 * c3 * c4
            - c1**3 * c2 * c3**2 * c4
            + 5 * c1**5 * c2**2 * c3**3 * c4
            + 4 * c1**6 * c2**2 * c3**3 * c4
            - 2 * c1**4 * c2**2 * c3**2 * c4**2
            - 2 * c1**5 * c2**2 * c3**3 * c4**2
            - c1**6 * c2**2 * c3**4 * c4**2
            - 2 * c1**7 * c2**3 * c3**4 * c4**2
            - 4 * c1**8 * c2**3 * c3**4 * c4**2
            + 8 * c1**8 * c2**4 * c3**4 * c4**2
            - c1**8 * c2**3 * c3**5 * c4**2
            - 2 * c1**9 * c2**3 * c3**5 * c4**2
            + 2 * c1**10 * c2**4 * c3**6 * c4**2
            + 4 * c1**11 * c2**4 * c3**6 * c4**2
            + c1**12 * c2**4 * c3**6 * c4**2
            - 4 * c1**8 * c2**3 * c3**4 * c4**3
            - 4 * c1**9 * c2**4 * c3**5 * c4**3
            - 4 * c1**10 * c2**4 * c3**6 * c4**3
            - 4 * c1**10 * c2**4 * c3**5 * c4**4
            - 4 * c1**11 * c2**4 * c3**6 * c4**4
        )
    )
    t4 = (
        4
        * n
        * (1 + Z + W)
        * (
            2
            + c1 * c3
            - c1**3 * c2 * c3**2
            + 2 * c1**2 * c2 * c3 * c4
            + 2 * c1**3 * c2 * c3**2 * c4
            + c1**4 * c2 * c3**3 * c4
            + 2 * c1**5 * c2**2 * c3**3 * c4
            + 4 * c1**6 * c2**2 * c3**3 * c4
            - 8 * c1**6 * c2**3 * c3**3 * c4
            + c1**6 * c2**2 * c3**4 * c4
            + 2 * c1**7 * c2**2 * c3**4 * c4
            + c1**10 * c2**3 * c3**5 * c4
            + 4 * c1**6 * c2**2 * c3**3 * c4**2
            + 4 * c1**7 * c2**3 * c3**4 * c4**2
            + 4 * c1**8 * c2**3 * c3**5 * c4**2
            + 4 * c1**8 * c2**3 * c3**4 * c4**3
            + 4 * c1**9 * c2**3 * c3**5 * c4**3
        )
    )
    t5 = (
        (1 + Z)
        * (
            4
            - 16 * c2
            + 2 * c3
            + 2 * c1 * c3
            + c1**2 * c2 * c3**2
            + 2 * c1**3 * c2 * c3**2
            + c1**4 * c2 * c3**2
            + 4 * c4
            + 8 * c1 * c2 * c3 * c4
            + 4 * c1**2 * c2 * c3 * c4
            + 8 * c1**2 * c2 * c3**2 * c4
            + 4 * c1**3 * c2 * c3**2 * c4
            + 2 * c1**3 * c2 * c3**3 * c4
            + 2 * c1**4 * c2 * c3**3 * c4
            + 8 * c1**4 * c2**2 * c3**3 * c4
            + 12 * c1**5 * c2**2 * c3**3 * c4
            + 8 * c1**6 * c2**2 * c3**3 * c4
            - 16 * c1**6 * c2**3 * c3**3 * c4
            + 2 * c1**5 * c2**2 * c3**4 * c4
            + 6 * c1**6 * c2**2 * c3**4 * c4
            + 4 * c1**7 * c2**2 * c3**4 * c4
            + c1**7 * c2**3 * c3**5 * c4
            + 4 * c1**8 * c2**3 * c3**5 * c4
            + 5 * c1**9 * c2**3 * c3**5 * c4
            + 2 * c1**10 * c2**3 * c3**5 * c4
            + 4 * c1**2 * c2 * c3 * c4**2
            + 4 * c1**3 * c2 * c3**2 * c4**2
            + 4 * c1**5 * c2**2 * c3**3 * c4**2
            + 8 * c1**6 * c2**2 * c3**3 * c4**2
            + 4 * c1**6 * c2**3 * c3**4 * c4**2
            + 8 * c1**7 * c2**3 * c3**4 * c4**2
            + 4 * c1**7 * c2**3 * c3**5 * c4**2
            + 8 * c1**8 * c2**3 * c3**5 * c4**2
            + 4 * c1**7 * c2**3 * c3**4 * c4**3
            + 8 * c1**8 * c2**3 * c3**4 * c4**3
            + 4 * c1**8 * c2**3 * c3**5 * c4**3
            + 8 * c1**9 * c2**3 * c3**5 * c4**3
        )
    )
    B = (
        sqrt(c1 / 2)
        / 4
        * (t1 + t2 + t3 - t4 - t5)
        / ((1 + Z + 2 * n * W) * (1 + Z + 2 * (n + 1) * W))
    )
    mid = (
        2
        + 2 * c1 * c3
        + c1**2 * c3**2
        + 4 * c1**3 * c2 * c3**2
        + 8 * c1**4 * c2**2 * c3**2
        + 2 * (1 - n) * c1**4 * c2 * c3**2 * (2 + c1 * c3)
        + 2 * (1 - n) ** 2 * c1**8 * c2**2 * c3**4
    )
    last = (
        2
        + 4 * c1**2 * c2 * c3 * c4
        + 2 * c1**3 * c2 * c3**2 * c4
        + 4 * Z
        + 4 * (1 + n) * W
        + 2 * c1**4 * c2**2 * c3**2 * c4**2
        + 2 * c1**5 * c2**2 * c3**3 * c4**2
        + c1**6 * c2**2 * c3**4 * c4**2
        + 8 * c1**7 * c2**3 * c3**4 * c4**2
        + 4 * (1 + n) * c1**8 * c2**3 * c3**4 * c4**2
        + 8 * c1**8 * c2**4 * c3**4 * c4**2
        + 2 * c1**8 * c2**3 * c3**5 * c4**2 * (1 + (n + 1) * c1)
        + 2 * c1**10 * c2**4 * c3**6 * c4**2 * (1 + (n + 1) * c1) ** 2
    )
    C = (
        n
        * (1 + n * c1)
        * (1 + n * W)
        * (1 + Z * (1 + n * c1))
        / 8
        * mid
        / ((1 + Z + (2 * n - 1) * W) * (1 + Z + 2 * n * W) ** 2 * (1 + Z + (2 * n + 1) * W))
        * last
    )
    return B, C


def _wilson2_params(c):
    c1, c2, c3, c4 = c
    re_a = (1 + c1) / (2 * c1)
    im_a = (1 + 4 * c1 * c2) / (2 * c1**3 * c2 * c3)
    c_par = 1 / (c1**6 * c2**2 * c3**3 * c4) + (
        2 + c1 * c3 + c1**3 * c2 * c3**2 + 3 * c1**4 * c2 * c3**2
    ) / (2 * c1**4 * c2 * c3**2)
    d_par = -(2 + c1 * c3 + c1**3 * c2 * c3**2 + c1**4 * c2 * c3**2) / (
        2 * c1**4 * c2 * c3**2
    )
    return {"a": re_a + 1j * im_a, "b": re_a - 1j * im_a, "c": c_par, "d": d_par}


def _wilson2_scale(c):
    c1, c2, c3, c4 = c
    rho = sqrt(c1 / 2) * c1**4 * c2 * c3**2
    sigma = -(
        1
        + 4 * c1 * c2
        + 4 * c1**2 * c2 * c4
        + 4 * c1**3 * c2**2 * c3 * c4
        + 4 * c1**4 * c2**2 * c3**2 * c4
        + 4 * c1**4 * c2**2 * c3 * c4**2
        + 4 * c1**5 * c2**2 * c3**2 * c4**2
    ) / (4 * c1**6 * c2**2 * c3**2)
    return rho, sigma


# ---------------------------------------------------------------------------
# Chart "Jacobi2D"
# ---------------------------------------------------------------------------


def _jacobi2d_coeffs(c, n):
    v1, v2 = c
    den = v1 + v2
    e = _guarded_div(v1 * v2, den)
    g = _guarded_div(v2 - v1, sqrt(den))
    B = g * (4 * n + 2 + 4 * n * (n + 1) * e) / ((1 + 2 * n * e) * (1 + (2 * n + 2) * e))
    C = (
        4
        * n
        * (1 + n * v1)
        * (1 + n * v2)
        * (1 + n * e)
        / ((1 + (2 * n - 1) * e) * (1 + 2 * n * e) ** 2 * (1 + (2 * n + 1) * e))
    )
    return B, C


def _jacobi2d_params(c):
    v1, v2 = c
    return {"alpha": 1 / v1, "beta": 1 / v2}


def _jacobi2d_scale(c):
    v1, v2 = c
    den = v1 + v2
    return den * sqrt(den) / (v1 * v2), (v2 - v1) / den


_COEFFS = {
    "Racah1": _racah1_coeffs,
    "Racah2": _racah2_coeffs,
    "Racah3": _racah3_coeffs,
    "Wilson1": _wilson1_coeffs,
    "Wilson2": _wilson2_coeffs,
    "Jacobi2D": _jacobi2d_coeffs,
}

_TOP_PARAMS = {
    "Racah1": ("Racah", _racah1_params),
    "Racah2": ("Racah", _racah2_params),
    "Racah3": ("Racah", _racah3_params),
    "Wilson1": ("Wilson", _wilson1_params),
    "Wilson2": ("Wilson", _wilson2_params),
    "Jacobi2D": ("Jacobi", _jacobi2d_params),
}

_TOP_SCALE = {
    "Racah1": _racah1_scale,
    "Racah2": _racah2_scale,
    "Racah3": _racah3_scale,
    "Wilson1": _wilson1_scale,
    "Wilson2": _wilson2_scale,
    "Jacobi2D": _jacobi2d_scale,
}

_N_VALID = {
    "Racah1": _racah1_n_valid,
    "Racah2": _racah2_n_valid,
    "Racah3": _racah3_n_valid,
    "Wilson1": lambda c: math.inf,
    "Wilson2": lambda c: math.inf,
    "Jacobi2D": lambda c: math.inf,
}


def chart_n_valid(chart: str, coords) -> float:
    """Largest degree for which the chart recurrence is guaranteed admissible."""
    coords = _check_coords(chart, coords)
    return _N_VALID[chart](coords)


def chart_coeffs_raw(chart: str, coords, n: int):
    """(B_n, C_n) of the chart recurrence, without domain or finiteness checks."""
    return _COEFFS[chart](coords, n)


def chart_coeffs(p: ChartPoint, n: int):
    """(B_n, C_n) of the chart recurrence at a validated chart point."""
    if n < 0:
        raise OutOfDomain(f"degree index must be >= 0, got {n}")
    B, C = _COEFFS[p.chart](p.coords, n)
    if not (is_finite(B) and is_finite(C)):
        raise NonFiniteCoefficient(f"{p.chart} coefficients at n={n} are not finite")
    return B, C


def chart_recurrence(p: ChartPoint) -> RecurrenceCoeffs:
    """The chart recurrence at `p` packaged as RecurrenceCoeffs."""
    return RecurrenceCoeffs(
        B=lambda n: chart_coeffs(p, n)[0],
        C=lambda n: chart_coeffs(p, n)[1],
        n_valid=chart_n_valid(p.chart, p.coords),
    )


def chart_to_family(p: ChartPoint):
    """Family instance and affine rescaling represented by an interior point.

    The chart recurrence at `p` equals the family recurrence rescaled by the
    returned AffineScale. Boundary points carry lower families instead; use
    `face_restriction` for those.
    """
    from .families import FamilyInstance

    if not p.is_interior():
        raise OutOfDomain(
            f"{p.chart} point with zero coordinates {sorted(p.zero_set)} lies on a "
            "boundary face; use face_restriction"
        )
    target, pm = _TOP_PARAMS[p.chart]
    rho, sigma = _TOP_SCALE[p.chart](p.coords)
    return FamilyInstance(target, pm(p.coords)), AffineScale(rho, sigma)


# ---------------------------------------------------------------------------
# Face registry
# ---------------------------------------------------------------------------


def _rec(chart, face, target, param_map, scale, covers=None, aliases=()):
    covers = {frozenset(face)} if covers is None else {frozenset(f) for f in covers}
    return RestrictionRecord(
        chart=chart,
        face=frozenset(face),
        target=target,
        param_map=param_map,
        scale=scale,
        covers=frozenset(covers),
        aliases=tuple(aliases),
    )


def _one(c):
    return 1 + 0 * c[0]


def _racah1_records():
    chart = "Racah1"
    interior = _rec(chart, (), "Racah", _racah1_params, _racah1_scale)

    def hahn_params(c):
        c1, c2, c3, c4 = c
        return {"alpha": 1 / c1, "beta": 1 / (c1 * c2), "N": 1 / (c2 * c4)}

    def hahn_scale(c):
        c1, c2, c3, c4 = c
        q2 = 1 + c2
        return (
            q2 * sqrt(q2) * c4 / sqrt(c1 + c4 + c2 * c4),
            -(1 + c1) / ((1 + c2 + 2 * c1 * c2) * c4),
        )

    hahn = _rec(chart, (3,), "Hahn", hahn_params, hahn_scale)

    def jac_params(c):
        c1, c2 = c[0], c[1]
        return {"alpha": 1 / c1, "beta": 1 / (c1 * c2)}

    def jac_scale(c):
        c1, c2 = c[0], c[1]
        q2 = 1 + c2
        return (-q2 * sqrt(q2) / (2 * sqrt(c1) * c2), (-1 + c2) / (1 + c2 + 2 * c1 * c2))

    jacobi = _rec(
        chart,
        (4,),
        "Jacobi",
        jac_params,
        jac_scale,
        covers=[(4,), (3, 4)],
        aliases=[Alias(lambda c: (_one(c), 0), lambda c: (c[0], c[1], 0 * c[2], 0 * c[3]))],
    )

    def mei_params(c):
        c1, c3, c4 = c[0], c[2], c[3]
        return {"beta": (1 + c1) / c1, "c": c1 * (1 + c3 * c4) / (c1 + c4)}

    def mei_scale(c):
        c1, c3, c4 = c[0], c[2], c[3]
        return (
            (1 - c1 * c3) * c4 / (sqrt(c1 + c4) * sqrt(1 + c3 * c4)),
            -(1 + c1) * (1 + c3 * c4) / ((1 - c1 * c3) * c4),
        )

    meixner = _rec(
        chart,
        (2,),
        "Meixner",
        mei_params,
        mei_scale,
        covers=[(2,), (2, 3)],
        aliases=[
            Alias(
                lambda c: (_one(c), 0),
                lambda c: (c[0], 0 * c[1], 0 * c[2], c[3] * (1 - c[0] * c[2]) / (1 + c[2] * c[3])),
            )
        ],
    )

    def kra_params(c):
        c2, c3, c4 = c[1], c[2], c[3]
        w = 1 + c3 * c4 + c2 * c3 * c4
        return {"p": c2 * w / ((1 + c2) * (1 + c2 * c3 * c4)), "N": 1 / (c2 * c4)}

    def kra_scale(c):
        c2, c3, c4 = c[1], c[2], c[3]
        w = 1 + c3 * c4 + c2 * c3 * c4
        return (
            sqrt(c4) * (1 + c2) * (1 + c2 * c3 * c4) / sqrt(w),
            -w / (c4 * (1 + c2) * (1 + c2 * c3 * c4)),
        )

    def kra_image(c):
        c2, c3, c4 = c[1], c[2], c[3]
        w = 1 + c3 * c4 + c2 * c3 * c4
        return (0 * c2, c2 * w, 0 * c3, c4 / w)

    krawtchouk = _rec(
        chart,
        (1,),
        "Krawtchouk",
        kra_params,
        kra_scale,
        covers=[(1,), (1, 3)],
        aliases=[Alias(lambda c: (_one(c), 0), kra_image)],
    )

    laguerre = _rec(
        chart,
        (2, 4),
        "Laguerre",
        lambda c: {"alpha": 1 / c[0]},
        lambda c: (sqrt(c[0]), -(1 + c[0]) / c[0]),
        covers=[(2, 4), (2, 3, 4)],
        aliases=[Alias(lambda c: (_one(c), 0), lambda c: (c[0], 0 * c[1], 0 * c[2], 0 * c[3]))],
    )

    charlier = _rec(
        chart,
        (1, 2),
        "Charlier",
        lambda c: {"a": (1 + c[2] * c[3]) / c[3]},
        lambda c: (sqrt(c[3]) / sqrt(1 + c[2] * c[3]), -(1 + c[2] * c[3]) / c[3]),
        covers=[(1, 2), (1, 2, 3)],
        aliases=[
            Alias(lambda c: (_one(c), 0), lambda c: (0 * c[0], 0 * c[1], 0 * c[2], c[3] / (1 + c[2] * c[3])))
        ],
    )

    hermite = _rec(
        chart,
        (1, 4),
        "Hermite",
        lambda c: {},
        lambda c: (sqrt(2 * _one(c)), 0),
        covers=[(1, 4), (1, 2, 4), (1, 3, 4), (1, 2, 3, 4)],
        aliases=[
            Alias(lambda c: (_one(c), 0), lambda c: (0 * c[0], c[1], 0 * c[2], 0 * c[3])),
            Alias(lambda c: (_one(c), 0), lambda c: (0 * c[0], 0 * c[1], c[2], 0 * c[3])),
            Alias(lambda c: (_one(c), 0), lambda c: (0 * c[0], 0 * c[1], 0 * c[2], 0 * c[3])),
        ],
    )

    return (interior, hahn, jacobi, meixner, krawtchouk, laguerre, charlier, hermite)


def _racah2_records():
    chart = "Racah2"
    interior = _rec(chart, (), "Racah", _racah2_params, _racah2_scale)

    def dh_params(c):
        c1, c2, c4 = c[0], c[1], c[3]
        return {
            "gamma": (1 + c1) / (c1 * c2),
            "delta": 1 / (c1 * c2**2 * c4),
            "N": 1 / (c2**2 * c4),
        }

    def dh_scale(c):
        c1, c2, c4 = c[0], c[1], c[3]
        return (
            c1 * c2**2 * sqrt(c2 / 2) * c4 / (1 + c1),
            -((1 + c1) * (1 - c2**2 * c4) + c1 * c2) / (c1 * c2**3 * c4),
        )

    dualhahn = _rec(chart, (3,), "DualHahn", dh_params, dh_scale)

    def mei_params(c):
        c1, c2, c3 = c[0], c[1], c[2]
        return {
            "beta": (1 + c1 + c1 * c2) / (c1 * c2),
            "c": c1 * (1 + c3) / (1 + c1 + c1 * c3),
        }

    def mei_scale(c):
        c1, c2, c3 = c[0], c[1], c[2]
        return (sqrt(c2 / 2) / (1 + c1), -(1 + c1 + c3 + c1 * c2 + c1 * c3) / c2)

    def mei_alias_scale(c):
        c1, c2, c3 = c[0], c[1], c[2]
        rho0 = sqrt((1 + c3) * (1 + c1 + c1 * c3) / (1 + c1))
        sigma0 = c1 * sqrt(c2 / 2) * c3 / sqrt((1 + c1) * (1 + c3) * (1 + c1 + c1 * c3))
        return rho0, sigma0

    def mei_alias_image(c):
        c1, c2, c3 = c[0], c[1], c[2]
        return (
            c1 * (1 + c3),
            c2 * (1 + c1 + c1 * c3) / ((1 + c1) * (1 + c3)),
            0 * c3,
            0 * c[3],
        )

    meixner = _rec(
        chart,
        (4,),
        "Meixner",
        mei_params,
        mei_scale,
        covers=[(4,), (3, 4)],
        aliases=[Alias(mei_alias_scale, mei_alias_image)],
    )

    def kra_params(c):
        c2, c3, c4 = c[1], c[2], c[3]
        return {
            "p": c2 * c4 * (1 + c3 + c2 * c3 * c4) / ((1 + c2 * c4) * (1 + c2 * c3 * c4)),
            "N": 1 / (c2**2 * c4),
        }

    def kra_scale(c):
        c2, c3, c4 = c[1], c[2], c[3]
        return (
            sqrt(c2 / 2) * (1 + c2 * c4),
            -(1 + c3 - c2**2 * c4) / (c2 * (1 + c2 * c4)),
        )

    def kra_alias_scale(c):
        c2, c3, c4 = c[1], c[2], c[3]
        w = 1 + c3 + c2 * c3 * c4
        return (sqrt(w) / (1 + c2 * c3 * c4), -sqrt(c2 / 2) * c3 * c4 * (c2 + c3) / sqrt(w))

    def kra_alias_image(c):
        c2, c3, c4 = c[1], c[2], c[3]
        w = 1 + c3 + c2 * c3 * c4
        return (0 * c2, c2 / w, 0 * c3, c4 * w**2)

    krawtchouk = _rec(
        chart,
        (1,),
        "Krawtchouk",
        kra_params,
        kra_scale,
        covers=[(1,), (1, 3)],
        aliases=[Alias(kra_alias_scale, kra_alias_image)],
    )

    charlier = _rec(
        chart,
        (1, 4),
        "Charlier",
        lambda c: {"a": (1 + c[2]) / c[1]},
        lambda c: (sqrt(c[1] / 2), -(1 + c[2]) / c[1]),
        covers=[(1, 4), (1, 3, 4)],
        aliases=[
            Alias(
                lambda c: (sqrt(1 + c[2]), 0),
                lambda c: (0 * c[0], c[1] / (1 + c[2]), 0 * c[2], 0 * c[3]),
            )
        ],
    )

    def her_rho(c):
        c1, c3 = c[0], c[2]
        return sqrt((1 + c3) * (1 + c1 + c1 * c3) / (1 + c1))

    def her_rho0(c):
        c1, c3 = c[0], c[2]
        return sqrt((1 + c1 + c1 * c3) / (1 + c1))

    hermite = _rec(
        chart,
        (2,),
        "Hermite",
        lambda c: {},
        lambda c: (her_rho(c), 0),
        covers=[
            (2,),
            (1, 2),
            (2, 3),
            (2, 4),
            (1, 2, 3),
            (1, 2, 4),
            (2, 3, 4),
            (1, 2, 3, 4),
        ],
        aliases=[
            Alias(lambda c: (_one(c), 0), lambda c: (c[0], 0 * c[1], c[2], 0 * c[3])),
            Alias(lambda c: (her_rho0(c), 0), lambda c: (0 * c[0], 0 * c[1], c[2], c[3])),
            Alias(lambda c: (her_rho0(c), 0), lambda c: (0 * c[0], 0 * c[1], c[2], 0 * c[3])),
            Alias(lambda c: (her_rho(c), 0), lambda c: (c[0], 0 * c[1], 0 * c[2], c[3])),
            Alias(lambda c: (her_rho(c), 0), lambda c: (0 * c[0], 0 * c[1], 0 * c[2], c[3])),
        ],
    )

    return (interior, dualhahn, meixner, krawtchouk, charlier, hermite)


def _racah3_records():
    chart = "Racah3"
    interior = _rec(chart, (), "Racah", _racah3_params, _racah3_scale)

    def dh_params(c):
        c2, c3, c4 = c[1], c[2], c[3]
        return {"gamma": 1 / c2, "delta": 1 / (c2**2 * c3), "N": 1 / (c2**2 * c3 * c4)}

    def dh_scale(c):
        c2, c3, c4 = c[1], c[2], c[3]
        return (sqrt(c2 / 2) * c2**2 * c3 * c4, -1 / (c2**3 * c3 * c4))

    dualhahn = _rec(chart, (1,), "DualHahn", dh_params, dh_scale)

    def mei_params(c):
        c1, c2, c4 = c[0], c[1], c[3]
        return {"beta": (1 + c1 + c2) / c2, "c": 1 / (1 + c4)}

    def mei_scale(c):
        c1, c2, c4 = c[0], c[1], c[3]
        return (sqrt(c2 / 2) * c4, -(1 + c1) / (c2 * c4))

    meixner = _rec(
        chart,
        (3,),
        "Meixner",
        mei_params,
        mei_scale,
        covers=[(3,), (1, 3)],
        aliases=[
            Alias(
                lambda c: (sqrt(1 + c[0]), 0),
                lambda c: (0 * c[0], c[1] / (1 + c[0]), 0 * c[2], c[3]),
            )
        ],
    )

    def lag_rho3(c):
        c1, c3 = c[0], c[2]
        return sqrt(1 + c1) * (1 + c1 * c3)

    laguerre = _rec(
        chart,
        (4,),
        "Laguerre",
        lambda c: {"alpha": (1 + c[0]) / c[1]},
        lambda c: (sqrt(c[1] / 2) * (1 + c[0] * c[2]), -(1 + c[0]) / c[1]),
        covers=[(4,), (1, 4), (3, 4), (1, 3, 4)],
        aliases=[
            Alias(lambda c: (1 + c[0] * c[2], 0), lambda c: (c[0], c[1], 0 * c[2], 0 * c[3])),
            Alias(lambda c: (lag_rho3(c), 0), lambda c: (0 * c[0], c[1] / (1 + c[0]), c[2], 0 * c[3])),
            Alias(lambda c: (lag_rho3(c), 0), lambda c: (0 * c[0], c[1] / (1 + c[0]), 0 * c[2], 0 * c[3])),
        ],
    )

    def her_rho(c):
        c1, c3, c4 = c[0], c[2], c[3]
        return sqrt((1 + c1) * (1 + c1 * c3) * (1 + c4) * (1 + c1 * c3 * (1 + c4)))

    def her_rho0(c):
        c1, c3, c4 = c[0], c[2], c[3]
        return sqrt((1 + c1) * (1 + c1 * c3) * (1 + c1 * c3 * (1 + c4)))

    def her_rho1(c):
        c1, c3, c4 = c[0], c[2], c[3]
        return sqrt((1 + c1 * c3) * (1 + c1 * c3 * (1 + c4)))

    def her_rho2(c):
        c1, c3, c4 = c[0], c[2], c[3]
        return sqrt((1 + c4) * (1 + c1 * c3 * (1 + c4)) / (1 + c1 * c3))

    def her_rho3(c):
        c1, c3, c4 = c[0], c[2], c[3]
        return sqrt((1 + c4) * (1 + c1 * c3) * (1 + c1 * c3 * (1 + c4)))

    hermite = _rec(
        chart,
        (2,),
        "Hermite",
        lambda c: {},
        lambda c: (her_rho(c), 0),
        covers=[
            (2,),
            (1, 2),
            (2, 3),
            (2, 4),
            (1, 2, 3),
            (1, 2, 4),
            (2, 3, 4),
            (1, 2, 3, 4),
        ],
        aliases=[
            Alias(lambda c: (her_rho0(c), 0), lambda c: (0 * c[0], 0 * c[1], c[2], c[3])),
            Alias(lambda c: (her_rho0(c), 0), lambda c: (0 * c[0], 0 * c[1], 0 * c[2], c[3])),
            Alias(lambda c: (her_rho1(c), 0), lambda c: (c[0], 0 * c[1], 0 * c[2], c[3])),
            Alias(lambda c: (her_rho2(c), 0), lambda c: (c[0], 0 * c[1], c[2], 0 * c[3])),
            Alias(lambda c: (her_rho3(c), 0), lambda c: (c[0], 0 * c[1], 0 * c[2], 0 * c[3])),
            Alias(lambda c: (her_rho(c), 0), lambda c: (0 * c[0], 0 * c[1], c[2], 0 * c[3])),
            Alias(lambda c: (her_rho(c), 0), lambda c: (0 * c[0], 0 * c[1], 0 * c[2], 0 * c[3])),
        ],
    )

    return (interior, dualhahn, meixner, laguerre, hermite)


def _wilson1_records():
    chart = "Wilson1"
    interior = _rec(chart, (), "Wilson", _wilson1_params, _wilson1_scale)

    def ch_params(c):
        c1, c2, c3 = c[0], c[1], c[2]
        re_a = 1 / c1
        re_b = 1 / (c1 * c2)
        im = 1 / (2 * c1 * c2 * c3)
        return {
            "a": re_a + 1j * im,
            "b": re_b - 1j * im,
            "c": re_a - 1j * im,
            "d": re_b + 1j * im,
        }

    def ch_scale(c):
        c1, c2, c3 = c[0], c[1], c[2]
        return (
            2 * sqrt(2 * _one(c)) * sqrt(c1) * c3,
            (1 - c2) / (2 * c1 * c2 * c3 * (1 + c2 - c1 * c2)),
        )

    conthahn = _rec(chart, (4,), "ContinuousHahn", ch_params, ch_scale)

    def jac_params(c):
        c1, c2 = c[0], c[1]
        return {"alpha": 2 / c1 - 1, "beta": 2 / (c1 * c2) - 1}

    def jac_scale(c):
        c1, c2, c4 = c[0], c[1], c[3]
        return (
            -sqrt(2 * _one(c)) / (sqrt(c1) * c2),
            -(1 - c2) / (1 + c2 - c1 * c2) - sqrt(c1) * c2 * c4 / 2,
        )

    def half_c4_shift(c):
        return (_one(c), c[3] / sqrt(2 * _one(c)))

    jacobi = _rec(
        chart,
        (3,),
        "Jacobi",
        jac_params,
        jac_scale,
        covers=[(3,), (3, 4)],
        aliases=[Alias(half_c4_shift, lambda c: (c[0], c[1], 0 * c[2], 0 * c[3]))],
    )

    def mp_params(c):
        c1, c3 = c[0], c[2]
        return {"lam": 1 / c1, "phi": atan(c3)}

    def mp_scale(c):
        c1, c3, c4 = c[0], c[2], c[3]
        return (
            -2 * sqrt(2 * _one(c)) * sqrt(c1) * c3,
            (2 - c1) / (2 * c1 * c3) - c4 / (4 * sqrt(c1) * c3),
        )

    meixnerpollaczek = _rec(
        chart,
        (2,),
        "MeixnerPollaczek",
        mp_params,
        mp_scale,
        covers=[(2,), (2, 4)],
        aliases=[Alias(half_c4_shift, lambda c: (c[0], 0 * c[1], c[2], 0 * c[3]))],
    )

    laguerre = _rec(
        chart,
        (2, 3),
        "Laguerre",
        lambda c: {"alpha": 2 / c[0] - 1},
        lambda c: (sqrt(2 * c[0]), 1 - 2 / c[0] + c[3] / (2 * sqrt(c[0]))),
        covers=[(2, 3), (2, 3, 4)],
        aliases=[Alias(half_c4_shift, lambda c: (c[0], 0 * c[1], 0 * c[2], 0 * c[3]))],
    )

    def _xr(c):
        c2, c3 = c[1], c[2]
        x = (1 + c2) ** 2 * c3**2
        return x, sqrt(1 + x)

    def her_scale(c):
        c2, c3, c4 = c[1], c[2], c[3]
        q2 = 1 + c2
        x, r = _xr(c)
        rho = 2 * sqrt(2 * _one(c)) * r / (q2 * sqrt(q2))
        sigma = c4 * q2 * sqrt(q2) * (1 + 4 * c2 * c3**2) / (4 * r)
        return rho, sigma

    def her_a1(c):
        c2, c3, c4 = c[1], c[2], c[3]
        return (_one(c), (1 + 4 * c2 * c3**2) * c4 / sqrt(2 * _one(c)))

    def her_a2(c):
        c2, c3, c4 = c[1], c[2], c[3]
        x, r = _xr(c)
        return (r, c4 * (1 + 4 * c2 * c3**2 - r) / (sqrt(2 * _one(c)) * r))

    def _rho2(c):
        c2, c3 = c[1], c[2]
        q2 = 1 + c2
        x, r = _xr(c)
        return r / (q2 * sqrt(q2) * sqrt(1 + c3**2))

    def her_a3(c):
        c2, c3, c4 = c[1], c[2], c[3]
        q2 = 1 + c2
        x, r = _xr(c)
        sigma = (
            c4 * q2 * sqrt(q2) * sqrt(1 + c3**2) * (1 + 4 * c2 * c3**2) / (sqrt(2 * _one(c)) * r)
            - c4 / sqrt(2 * _one(c))
        )
        return (_rho2(c), sigma)

    def her_a4(c):
        c2, c3, c4 = c[1], c[2], c[3]
        x, r = _xr(c)
        return (r, c4 * (1 + 4 * c2 * c3**2) / (sqrt(2 * _one(c)) * r))

    def her_a5(c):
        c2, c3, c4 = c[1], c[2], c[3]
        q2 = 1 + c2
        x, r = _xr(c)
        sigma = c4 * q2 * sqrt(q2) * sqrt(1 + c3**2) * (1 + 4 * c2 * c3**2) / (sqrt(2 * _one(c)) * r)
        return (_rho2(c), sigma)

    def _rho_over_2s2(c):
        c2 = c[1]
        q2 = 1 + c2
        x, r = _xr(c)
        return r / (q2 * sqrt(q2))

    def her_a6(c):
        c2, c3, c4 = c[1], c[2], c[3]
        q2 = 1 + c2
        x, r = _xr(c)
        sigma = (
            c4 * q2 * sqrt(q2) * (1 + 4 * c2 * c3**2) / (sqrt(2 * _one(c)) * r)
            - c4 / sqrt(2 * _one(c))
        )
        return (_rho_over_2s2(c), sigma)

    def her_a7(c):
        rho, sigma = her_scale(c)
        return (_rho_over_2s2(c), 2 * sqrt(2 * _one(c)) * sigma)

    hermite = _rec(
        chart,
        (1,),
        "Hermite",
        lambda c: {},
        her_scale,
        covers=[
            (1,),
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 2, 3),
            (1, 2, 4),
            (1, 3, 4),
            (1, 2, 3, 4),
        ],
        aliases=[
            Alias(her_a1, lambda c: (0 * c[0], c[1], c[2], 0 * c[3])),
            Alias(her_a2, lambda c: (0 * c[0], c[1], 0 * c[2], c[3])),
            Alias(her_a3, lambda c: (0 * c[0], 0 * c[1], c[2], c[3])),
            Alias(her_a4, lambda c: (0 * c[0], c[1], 0 * c[2], 0 * c[3])),
            Alias(her_a5, lambda c: (0 * c[0], 0 * c[1], c[2], 0 * c[3])),
            Alias(her_a6, lambda c: (0 * c[0], 0 * c[1], 0 * c[2], c[3])),
            Alias(her_a7, lambda c: (0 * c[0], 0 * c[1], 0 * c[2], 0 * c[3])),
        ],
    )

    return (interior, conthahn, jacobi, meixnerpollaczek, laguerre, hermite)


def _wilson2_records():
    chart = "Wilson2"
    interior = _rec(chart, (), "Wilson", _wilson2_params, _wilson2_scale)

    def cdh_params(c):
        c1, c2, c3 = c[0], c[1], c[2]
        re_a = (1 + c1) / (2 * c1)
        im_a = (1 + 4 * c1 * c2) / (2 * c1**3 * c2 * c3)
        c_par = -(2 + c1 * c3 + c1**3 * c2 * c3**2 + c1**4 * c2 * c3**2) / (
            2 * c1**4 * c2 * c3**2
        )
        return {"a": re_a + 1j * im_a, "b": re_a - 1j * im_a, "c": c_par}

    def cdh_scale(c):
        c1, c2, c3 = c[0], c[1], c[2]
        return (
            sqrt(c1 / 2) * c1**4 * c2 * c3**2,
            -(1 + 4 * c1 * c2) / (4 * c1**6 * c2**2 * c3**2),
        )

    contdualhahn = _rec(chart, (4,), "ContinuousDualHahn", cdh_params, cdh_scale)

    def mp_params(c):
        c1, c3 = c[0], c[2]
        return {"lam": (1 + c1) / (2 * c1), "phi": atan(c1 * c3 / (2 + c1 * c3))}

    def mp_scale(c):
        c1, c3, c4 = c[0], c[2], c[3]
        return (c1 * sqrt(c1 / 2) * c3, (1 - c1 * c4) / (c1**2 * c3))

    def neg_half_c4_shift(c):
        return (_one(c), -sqrt(c[0] / 2) * c[3])

    meixnerpollaczek = _rec(
        chart,
        (2,),
        "MeixnerPollaczek",
        mp_params,
        mp_scale,
        covers=[(2,), (2, 4)],
        aliases=[Alias(neg_half_c4_shift, lambda c: (c[0], 0 * c[1], c[2], 0 * c[3]))],
    )

    def lag_alias0(c):
        return (_one(c), 2 * sqrt(2 * c[0]) * c[1])

    def lag_alias2(c):
        return (_one(c), 2 * sqrt(2 * c[0]) * c[1] - sqrt(c[0] / 2) * c[3])

    laguerre = _rec(
        chart,
        (3,),
        "Laguerre",
        lambda c: {"alpha": 1 / c[0]},
        lambda c: (-sqrt(c[0] / 2), c[3] - 4 * c[1] - 1 / c[0]),
        covers=[(3,), (2, 3), (3, 4), (2, 3, 4)],
        aliases=[
            Alias(lag_alias0, lambda c: (c[0], 0 * c[1], 0 * c[2], c[3])),
            Alias(neg_half_c4_shift, lambda c: (c[0], c[1], 0 * c[2], 0 * c[3])),
            Alias(lag_alias2, lambda c: (c[0], 0 * c[1], 0 * c[2], 0 * c[3])),
        ],
    )

    hermite = _rec(
        chart,
        (1,),
        "Hermite",
        lambda c: {},
        lambda c: (_one(c), 0),
        covers=[
            (1,),
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 2, 3),
            (1, 2, 4),
            (1, 3, 4),
            (1, 2, 3, 4),
        ],
        aliases=[Alias(lambda c: (_one(c), 0), lambda c: (0 * c[0], 0 * c[1], 0 * c[2], 0 * c[3]))],
    )

    return (interior, contdualhahn, meixnerpollaczek, laguerre, hermite)


def _jacobi2d_records():
    chart = "Jacobi2D"
    interior = _rec(chart, (), "Jacobi", _jacobi2d_params, _jacobi2d_scale)
    lag1 = _rec(
        chart,
        (1,),
        "Laguerre",
        lambda c: {"alpha": 1 / c[1]},
        lambda c: (2 * sqrt(c[1]), -1 / c[1]),
    )
    lag2 = _rec(
        chart,
        (2,),
        "Laguerre",
        lambda c: {"alpha": 1 / c[0]},
        lambda c: (-2 * sqrt(c[0]), -1 / c[0]),
    )
    hermite = _rec(
        chart,
        (1, 2),
        "Hermite",
        lambda c: {},
        lambda c: (2 * sqrt(2 * _one(c)), 0),
    )
    return (interior, lag1, lag2, hermite)


_REGISTRY = {
    "Racah1": _racah1_records(),
    "Racah2": _racah2_records(),
    "Racah3": _racah3_records(),
    "Wilson1": _wilson1_records(),
    "Wilson2": _wilson2_records(),
    "Jacobi2D": _jacobi2d_records(),
}


def registry(chart: str):
    """All face-restriction records of one chart (the interior record first)."""
    chart_dim(chart)
    return _REGISTRY[chart]


def face_restriction(chart: str, face) -> RestrictionRecord:
    """The restriction record valid on the face where `face` coordinates vanish."""
    if isinstance(face, BoundaryFace):
        chart = face.chart
        face = face.zero_set
    zs = frozenset(int(i) for i in face)
    for record in registry(chart):
        if zs in record.covers:
            return record
    raise OutOfDomain(f"{chart} has no restriction record for zero set {sorted(zs)}")


def _target_recurrence(record: RestrictionRecord, coords) -> RecurrenceCoeffs:
    from .families import FamilyInstance, recurrence_coeffs

    inst = FamilyInstance(record.target, record.param_map(coords))
    return rescale_coeffs(recurrence_coeffs(inst), AffineScale(*record.scale(coords)))


def verify_face(chart: str, face, p: ChartPoint, n_max: int = 6, tol: float = 1e-10) -> dict:
    """Check one face point against its registry record and aliases.

    Compares the chart recurrence at `p` with (i) the rescaled recurrence of
    the target family given by the record, and (ii) the rescaled chart
    recurrence at each alias image. Deviations are |delta| / (1 + |reference|).
    The target side is computed in high precision: the induced family
    parameters can be huge at small coordinates and their recurrence then
    cancels heavily, while the chart forms stay well conditioned.
    """
    zs = frozenset(int(i) for i in face)
    if not zs <= p.zero_set:
        raise OutOfDomain(
            f"point has zero set {sorted(p.zero_set)}, not on face {sorted(zs)}"
        )
    record = face_restriction(chart, zs)
    with mpmath.workdps(120):
        target = _target_recurrence(record, tuple(mpmath.mpf(c) for c in p.coords))
        targets = [
            (target.B(n), target.C(n) if n >= 1 else None) for n in range(n_max + 1)
        ]

    err = 0.0
    for n, (target_b, target_c) in enumerate(targets):
        B, C = chart_coeffs(p, n)
        err = max(err, rel_dev(B, target_b))
        if n >= 1:
            err = max(err, rel_dev(C, target_c))

    alias_err = 0.0
    for alias in record.aliases:
        rho0, sigma0 = alias.scale(p.coords)
        img = ChartPoint(chart, alias.image(p.coords))
        for n in range(n_max + 1):
            B, C = chart_coeffs(p, n)
            Bi, Ci = chart_coeffs(img, n)
            alias_err = max(alias_err, rel_dev(B, rho0 * (Bi + sigma0)))
            if n >= 1:
                alias_err = max(alias_err, rel_dev(C, rho0**2 * Ci))

    max_err = max(err, alias_err)
    return {
        "chart": chart,
        "face": sorted(zs),
        "target": record.target,
        "n_max": n_max,
        "max_rel_err": max_err,
        "restriction_err": err,
        "alias_err": alias_err,
        "tol": tol,
        "pass": bool(max_err <= tol),
    }


def continuity_probe(
    chart: str, face, base: ChartPoint, steps: int = 20, n_max: int = 3
) -> dict:
    """Coefficient gap between points approaching a face and the face itself.

    The face coordinates of `base` are halved `steps` times; at each step the
    largest absolute difference between the chart coefficients (n <= n_max)
    and their values at the limit point (face coordinates set to zero) is
    recorded. A chart continuous up to this face shows gaps shrinking to zero.
    """
    zs = frozenset(int(i) for i in face)
    if isinstance(base, ChartPoint):
        coords = base.coords
        if base.chart != chart:
            raise OutOfDomain(f"base point belongs to {base.chart}, not {chart}")
    else:
        coords = _check_coords(chart, base)
    limit = tuple(0 * x if i in zs else x for i, x in enumerate(coords, start=1))
    lim_vals = [chart_coeffs_raw(chart, limit, n) for n in range(n_max + 1)]

    gaps = []
    for k in range(1, steps + 1):
        shrunk = tuple(
            x / 2**k if i in zs else x for i, x in enumerate(coords, start=1)
        )
        gap = 0.0
        for n in range(n_max + 1):
            B, C = chart_coeffs_raw(chart, shrunk, n)
            gap = max(gap, float(abs(B - lim_vals[n][0])))
            if n >= 1:
                gap = max(gap, float(abs(C - lim_vals[n][1])))
        gaps.append(gap)

    return {
        "chart": chart,
        "face": sorted(zs),
        "base": [float(x) for x in coords],
        "limit": [float(x) for x in limit],
        "steps": steps,
        "n_max": n_max,
        "gaps": gaps,
        "final_gap": gaps[-1],
    }

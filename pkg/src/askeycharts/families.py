"""The thirteen classical families: parameters, recurrences, and independent oracles.

Direct closed forms are implemented for Hermite, Laguerre, Jacobi, Racah and
Wilson.  The remaining families (Hahn, dual Hahn, Meixner, Krawtchouk,
Charlier, Meixner-Pollaczek, continuous Hahn, continuous dual Hahn) are
obtained by embedding them as boundary faces of the reparametrized charts and
undoing the face's affine scale, which is their defining route here; the
verification suites cross-check the embeddings against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

import mpmath

from ._scalars import sqrt, tan
from .errors import NormalizationPole, OutOfDomain, PoleInLowerParameter
from .polyrec import AffineScale, RecurrenceCoeffs, unrescale_coeffs

__all__ = [
    "FAMILY_PARAMS",
    "FamilyInstance",
    "PositivityVerdict",
    "pochhammer",
    "hyp_terminating",
    "racah_an_cn",
    "wilson_an_cn",
    "recurrence_coeffs",
    "monic_via_hyp",
    "positivity_check",
]

# family tag -> ordered parameter names
FAMILY_PARAMS: dict[str, tuple[str, ...]] = {
    "Wilson": ("a", "b", "c", "d"),
    "Racah": ("alpha", "beta", "N", "delta"),
    "ContinuousDualHahn": ("a", "b", "c"),
    "ContinuousHahn": ("a", "b", "c", "d"),
    "Hahn": ("alpha", "beta", "N"),
    "DualHahn": ("gamma", "delta", "N"),
    "MeixnerPollaczek": ("lam", "phi"),
    "Jacobi": ("alpha", "beta"),
    "Meixner": ("beta", "c"),
    "Krawtchouk": ("p", "N"),
    "Laguerre": ("alpha",),
    "Charlier": ("a",),
    "Hermite": (),
}

_COMPLEX_OK = {"Wilson", "ContinuousHahn", "ContinuousDualHahn"}


@dataclass(frozen=True)
class FamilyInstance:
    tag: str
    params: dict

    def __post_init__(self):
        if self.tag not in FAMILY_PARAMS:
            raise ValueError(f"unknown family tag {self.tag!r}")
        expected = FAMILY_PARAMS[self.tag]
        got = tuple(self.params.keys())
        if set(got) != set(expected):
            raise ValueError(f"{self.tag} expects parameters {expected}, got {got}")
        if self.tag not in _COMPLEX_OK:
            for k, v in self.params.items():
                if isinstance(v, complex):
                    raise ValueError(f"{self.tag} parameter {k} must be real")

    def __getitem__(self, key: str):
        return self.params[key]


@dataclass(frozen=True)
class PositivityVerdict:
    ok: bool
    case_label: str
    failing_n: int | None = None


def pochhammer(x, k: int):
    """Rising factorial (x)_k as an explicit product (no gamma calls)."""
    acc = x * 0 + 1
    for j in range(k):
        acc = acc * (x + j)
    return acc


_HYP_SHAPE = {"2F1": (2, 1), "1F1": (1, 1), "4F3": (4, 3)}


def hyp_terminating(kind: str, upper, lower, z, n: int):
    """Terminating hypergeometric sum sum_{k=0}^{n} of Pochhammer term ratios.

    The first upper parameter is expected to be -n so the series terminates.
    Raises PoleInLowerParameter if a lower Pochhammer factor vanishes while
    later terms are still nonzero.
    """
    if kind not in _HYP_SHAPE:
        raise ValueError(f"unknown kind {kind!r}")
    nu, nl = _HYP_SHAPE[kind]
    upper = tuple(upper)
    lower = tuple(lower)
    if len(upper) != nu or len(lower) != nl:
        raise ValueError(f"{kind} takes {nu} upper and {nl} lower parameters")
    term = z * 0 + 1
    total = term
    for k in range(n):
        num = term * z
        for u in upper:
            num = num * (u + k)
        den = k + 1
        for l in lower:
            den = den * (l + k)
        if den == 0:
            if num == 0:
                break  # series already terminated; trailing pole is harmless
            raise PoleInLowerParameter(
                f"lower parameter hit a nonpositive integer at k={k + 1}"
            )
        term = num / den
        total = total + term
    return total


def racah_an_cn(params: Mapping, n: int):
    """The (a_n, c_n) pair of the finite discrete 4F3 family.

    B_n = a_n + c_n and C_n = a_{n-1} c_n; valid for 0 <= n <= N.
    """
    al, be, N, de = params["alpha"], params["beta"], params["N"], params["delta"]
    a_n = (
        (n + al + 1) * (n + al + be + 1) * (n + be + de + 1) * (N - n)
        / ((2 * n + al + be + 1) * (2 * n + al + be + 2))
    )
    c_n = (
        n * (n + al + be + N + 1) * (de - al - n) * (n + be)
        / ((2 * n + al + be) * (2 * n + al + be + 1))
    )
    return a_n, c_n


def wilson_an_cn(params: Mapping, n: int):
    """The (a_n, c_n) pair of the continuous 4F3 family (complex-capable).

    B_n = a_n + c_n - a^2 and C_n = a_{n-1} c_n; symmetric in all four
    parameters even though the formula singles out the first one.
    """
    a, b, c, d = params["a"], params["b"], params["c"], params["d"]
    s = a + b + c + d
    a_n = (
        (n + s - 1) * (n + a + b) * (n + a + c) * (n + a + d)
        / ((2 * n + s - 1) * (2 * n + s))
    )
    c_n = (
        n * (n + b + c - 1) * (n + b + d - 1) * (n + c + d - 1)
        / ((2 * n + s - 2) * (2 * n + s - 1))
    )
    return a_n, c_n


def _real(x):
    return x.real if isinstance(x, (complex, mpmath.mpc)) else x


def _as_complex(v):
    """Lift to a complex type without losing precision (mpf/mpc stay mpmath)."""
    if isinstance(v, (mpmath.mpf, mpmath.mpc)):
        return mpmath.mpc(v)
    return complex(v)


def recurrence_coeffs(f: FamilyInstance) -> RecurrenceCoeffs:
    """Monic recurrence coefficients (B_n, C_n) for any of the 13 families."""
    tag = f.tag
    if tag == "Hermite":
        return RecurrenceCoeffs(B=lambda n: 0.0, C=lambda n: n / 2)
    if tag == "Laguerre":
        al = f["alpha"]
        return RecurrenceCoeffs(B=lambda n: 2 * n + al + 1, C=lambda n: n * (n + al))
    if tag == "Jacobi":
        al, be = f["alpha"], f["beta"]

        def b_jac(n):
            if n == 0:
                return (be - al) / (al + be + 2)
            return (be - al) * (be + al) / ((2 * n + al + be) * (2 * n + al + be + 2))

        def c_jac(n):
            s = 2 * n + al + be
            return 4 * n * (n + al) * (n + be) * (n + al + be) / ((s - 1) * s * s * (s + 1))

        return RecurrenceCoeffs(B=b_jac, C=c_jac)
    if tag == "Racah":
        return RecurrenceCoeffs(
            B=lambda n: sum(racah_an_cn(f.params, n)),
            C=lambda n: racah_an_cn(f.params, n - 1)[0] * racah_an_cn(f.params, n)[1],
            n_valid=f["N"],
        )
    if tag == "Wilson":
        a = f["a"]

        def b_wil(n):
            an, cn = wilson_an_cn(f.params, n)
            return _real(an + cn - a * a)

        def c_wil(n):
            an1, _ = wilson_an_cn(f.params, n - 1)
            _, cn = wilson_an_cn(f.params, n)
            return _real(an1 * cn)

        return RecurrenceCoeffs(B=b_wil, C=c_wil)
    return _embedded_coeffs(f)


def _embedded_coeffs(f: FamilyInstance) -> RecurrenceCoeffs:
    from . import charts  # deferred: charts has no module-level dependency on us

    chart, face, coords, n_valid = _embedding(f)
    record = charts.face_restriction(chart, face)
    rho, sigma = record.scale(coords)
    raw = RecurrenceCoeffs(
        B=lambda n: charts.chart_coeffs_raw(chart, coords, n)[0],
        C=lambda n: charts.chart_coeffs_raw(chart, coords, n)[1],
        n_valid=n_valid,
    )
    unres = unrescale_coeffs(raw, AffineScale(rho, sigma))
    # Complex intermediates (conjugate-pair embeddings) cancel to real values.
    return RecurrenceCoeffs(
        B=lambda n: _real(unres.B(n)),
        C=lambda n: _real(unres.C(n)),
        n_valid=n_valid,
    )


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise OutOfDomain(message)


def _embedding(f: FamilyInstance):
    """(chart, face, coords, n_valid) of the defining boundary-face embedding."""
    tag = f.tag
    if tag == "Hahn":
        al, be, N = f["alpha"], f["beta"], f["N"]
        _require(al > 0, "alpha > 0 violated")
        _require(be > 0, "beta > 0 violated")
        _require(N > 1, "N > 1 violated")
        return "Racah1", frozenset({3}), (1 / al, al / be, 0.0, be / (al * N)), N
    if tag == "DualHahn":
        ga, de, N = f["gamma"], f["delta"], f["N"]
        _require(ga > 0, "gamma > 0 violated")
        _require(de > 0, "delta > 0 violated")
        _require(N > 1, "N > 1 violated")
        return "Racah3", frozenset({1}), (0.0, 1 / ga, ga * ga / de, de / N), N
    if tag == "Meixner":
        be, c = f["beta"], f["c"]
        _require(be > 1, "beta > 1 violated")
        _require(0 < c < 1, "0 < c < 1 violated")
        return (
            "Racah1",
            frozenset({2, 3}),
            (1 / (be - 1), 0.0, 0.0, (1 - c) / (c * (be - 1))),
            math.inf,
        )
    if tag == "Krawtchouk":
        p, N = f["p"], f["N"]
        _require(0 < p < 1, "0 < p < 1 violated")
        _require(N > 1, "N > 1 violated")
        return "Racah1", frozenset({1, 3}), (0.0, p / (1 - p), 0.0, (1 - p) / (p * N)), N
    if tag == "Charlier":
        a = f["a"]
        _require(a > 0, "a > 0 violated")
        return "Racah1", frozenset({1, 2, 3}), (0.0, 0.0, 0.0, 1 / a), math.inf
    if tag == "MeixnerPollaczek":
        lam, phi = f["lam"], f["phi"]
        _require(lam > 0, "lam > 0 violated")
        _require(0 < phi < math.pi / 2, "0 < phi < pi/2 violated")
        return "Wilson1", frozenset({2, 4}), (1 / lam, 0.0, tan(phi), 0.0), math.inf
    if tag == "ContinuousHahn":
        return _continuous_hahn_embedding(f)
    if tag == "ContinuousDualHahn":
        return _continuous_dual_hahn_embedding(f)
    raise ValueError(f"no embedding for family {tag!r}")


def _continuous_hahn_embedding(f: FamilyInstance):
    a, b, c, d = (_as_complex(f[k]) for k in "abcd")
    tol = 1e-12 * (1 + abs(a) + abs(b))
    _require(abs(c - a.conjugate()) <= tol, "c == conj(a) violated")
    _require(abs(d - b.conjugate()) <= tol, "d == conj(b) violated")
    _require(abs(a.imag + b.imag) <= tol, "Im(b) == -Im(a) violated")
    _require(a.real > 0, "Re(a) > 0 violated")
    _require(b.real > 0, "Re(b) > 0 violated")
    _require(a.imag > 0, "Im(a) > 0 violated")
    c1 = 1 / a.real
    c2 = a.real / b.real
    c3 = b.real / (2 * a.imag)
    return "Wilson1", frozenset({4}), (c1, c2, c3, 0.0), math.inf


def _continuous_dual_hahn_embedding(f: FamilyInstance):
    """Invert the defining face map; complex-capable so real (a, b) also work.

    With lam = (a+b)/2 and mu = (a-b)/(2i), the third coordinate solves a
    quadratic; both roots represent the same family, and the recurrence
    coefficients come out rational in the coordinates, hence real whenever the
    family's coefficients are real.
    """
    a, b, c = (_as_complex(f[k]) for k in "abc")
    lam = (a + b) / 2
    mu = (a - b) / 2j
    tol = 1e-12 * (1 + abs(a) + abs(b) + abs(c))
    _require(abs(c.imag) <= tol, "Im(c) == 0 violated")
    _require(lam.real > 0.5, "Re(a+b)/2 > 1/2 violated")
    b1 = 1 / (2 * lam - 1)
    a2 = b1 * b1 * (2 * c * b1 + 1 + b1 + 2 * mu * b1)
    a1 = 4 * b1 * (mu * b1 - 1)
    a0 = b1 * 0 - 8
    if a2 == 0:
        _require(a1 != 0, "degenerate coordinate quadratic")
        roots = [-a0 / a1]
    else:
        disc = sqrt(a1 * a1 - 4 * a2 * a0)
        # Stable quadratic: pick the sign that avoids cancellation, then get
        # the companion root from the product a0/a2.
        if a1.real * disc.real + a1.imag * disc.imag >= 0:
            q = -(a1 + disc) / 2
        else:
            q = -(a1 - disc) / 2
        roots = [q / a2, a0 / q]
    b3 = _prefer_positive_root(roots, lambda q: 1 / (2 * b1 * (mu * b1 * b1 * q - 2)))
    b2 = 1 / (2 * b1 * (mu * b1 * b1 * b3 - 2))
    coords = (_simplify(b1), _simplify(b2), _simplify(b3), 0.0)
    return "Wilson2", frozenset({4}), coords, math.inf


def _prefer_positive_root(roots, b2_of):
    for q in roots:
        p = b2_of(q)
        if abs(q.imag) <= 1e-10 * (1 + abs(q)) and q.real > 0 and (
            abs(p.imag) <= 1e-10 * (1 + abs(p)) and p.real > 0
        ):
            return q
    return roots[0]


def _simplify(z):
    """Collapse rounding-level imaginary parts so real cases stay real."""
    if isinstance(z, (complex, mpmath.mpc)) and abs(z.imag) <= 1e-13 * (1 + abs(z)):
        return z.real
    return z


def _exact_liftable(*values) -> bool:
    """True when every value is an int/float/Fraction (exactly representable)."""
    for v in values:
        if isinstance(v, Fraction) or isinstance(v, int):
            continue
        if isinstance(v, float) and math.isfinite(v):
            continue
        return False
    return True


def _sum43_paired(r, q0, q1, lowers, n):
    """Terminating sum with the conjugate upper pair fused into a quadratic.

    Computes sum_{k=0}^{n} (-n)_k (r)_k prod_{j<k}(j^2 + q1*j + q0)
    / ((l1)_k (l2)_k (l3)_k k!), the 4F3 at unit argument whose third and
    fourth upper parameters multiply pairwise into j^2 + q1*j + q0.  The fused
    form stays in the scalar field of the inputs (no square roots), so float
    inputs can be summed exactly via Fraction lifting.
    """
    term = r * 0 + 1
    total = term
    for k in range(n):
        num = term * (-n + k) * (r + k) * (k * k + q1 * k + q0)
        den = k + 1
        for l in lowers:
            den = den * (l + k)
        if den == 0:
            if num == 0:
                break
            raise PoleInLowerParameter(
                f"lower parameter hit a nonpositive integer at k={k + 1}"
            )
        term = num / den
        total = total + term
    return total


def monic_via_hyp(f: FamilyInstance, x, n: int):
    """Value of the monic degree-n polynomial at x via the terminating 4F3 sum.

    Independent of the recurrence route: normalization uses Pochhammer products
    only.  Supported for the Racah and Wilson tags.  The polynomial argument is
    x = y(y+gamma+delta+1) (Racah) or x = y^2 (Wilson); the two conjugate upper
    parameters involving y combine into quadratics in the summation index, so
    the value is rational in the family parameters and x.  For float inputs the
    sum is carried out in exact rational arithmetic and rounded once.
    """
    if f.tag == "Racah":
        al, be, N, de = f["alpha"], f["beta"], f["N"], f["delta"]
        exact = _exact_liftable(al, be, N, de, x)
        if exact:
            al, be, N, de, x = map(Fraction, (al, be, N, de, x))
        gd1 = de - N  # gamma + delta + 1 with gamma = -N - 1
        den = pochhammer(n + al + be + 1, n)
        if den == 0:
            raise NormalizationPole(f"(n+alpha+beta+1)_n vanished at n={n}")
        # (-y)_k (y+gd1)_k = prod_{j<k} (j(j+gd1) - x)
        hyp = _sum43_paired(n + al + be + 1, -x, gd1, (al + 1, be + de + 1, -N), n)
        norm = pochhammer(al + 1, n) * pochhammer(be + de + 1, n) * pochhammer(-N, n) / den
        value = norm * hyp
        return float(value) if exact else _drop_rounding_imag(value, x)
    if f.tag == "Wilson":
        a, b, c, d = f["a"], f["b"], f["c"], f["d"]
        exact = _exact_liftable(a, b, c, d, x)
        if exact:
            a, b, c, d, x = map(Fraction, (a, b, c, d, x))
        s = a + b + c + d
        den = pochhammer(n + s - 1, n)
        if den == 0:
            raise NormalizationPole(f"(n+a+b+c+d-1)_n vanished at n={n}")
        # (a+iy)_k (a-iy)_k = prod_{j<k} ((a+j)^2 + x) with y = sqrt(x)
        hyp = _sum43_paired(n + s - 1, a * a + x, 2 * a, (a + b, a + c, a + d), n)
        norm = pochhammer(a + b, n) * pochhammer(a + c, n) * pochhammer(a + d, n) / den
        value = (-1) ** n * norm * hyp
        return float(value) if exact else _drop_rounding_imag(value, x)
    raise ValueError(f"hypergeometric route implemented for Racah and Wilson, not {f.tag!r}")


def _drop_rounding_imag(value, x):
    """Polynomial values at real x are real; drop the rounding-level imag part."""
    if isinstance(value, complex) and not isinstance(x, complex):
        return value.real
    return value


def positivity_check(f: FamilyInstance, n_probe: int = 32) -> PositivityVerdict:
    """Classify parameters and check C_n > 0 on the Favard-valid range."""
    if f.tag == "Racah":
        al, be, N, de = f["alpha"], f["beta"], f["N"], f["delta"]
        ok = al > 0 and be > 0 and N > 1 and de > al + N
        if not ok:
            return PositivityVerdict(False, "RacahRegion18", None)
        return _probe(f, "RacahRegion18", n_probe)
    if f.tag == "Wilson":
        label = _wilson_case(f)
        if label is None:
            return PositivityVerdict(False, "WilsonCase3", None)
        return _probe(f, label, n_probe)
    return _probe(f, "Unconstrained", n_probe)


def _probe(f: FamilyInstance, label: str, n_probe: int) -> PositivityVerdict:
    rc = recurrence_coeffs(f)
    top = n_probe if rc.n_valid == math.inf else min(n_probe, int(math.floor(rc.n_valid)))
    for n in range(1, top + 1):
        if not rc.C(n) > 0:
            return PositivityVerdict(False, label, n)
    return PositivityVerdict(True, label)


def _wilson_case(f: FamilyInstance) -> str | None:
    values = [complex(f[k]) for k in "abcd"]
    nonreal = [v for v in values if v.imag != 0]
    reals = [v.real for v in values if v.imag == 0]
    if len(nonreal) == 0:
        return "WilsonCase3"
    if len(nonreal) == 2:
        u, v = nonreal
        if abs(v - u.conjugate()) <= 1e-12 * (1 + abs(u)) and u.real > 0 and sum(reals) > 0:
            return "WilsonCase2"
        return None
    if len(nonreal) == 4:
        rest = list(nonreal)
        u = rest.pop(0)
        for i, v in enumerate(rest):
            if abs(v - u.conjugate()) <= 1e-12 * (1 + abs(u)):
                rest.pop(i)
                w, z = rest
                if (
                    abs(z - w.conjugate()) <= 1e-12 * (1 + abs(w))
                    and u.real > 0
                    and w.real > 0
                ):
                    return "WilsonCase1"
                return None
        return None
    return None

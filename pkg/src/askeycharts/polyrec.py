"""Monic three-term recurrences, affine rescaling, and moment determinants.

Conventions used throughout the package:

- monic recurrence:  x p_n = p_{n+1} + B_n p_n + C_n p_{n-1},  p_0 = 1,
  so p_1 = x - B_0; B_n is defined for n >= 0 and C_n for n >= 1.
- affine rescale by (rho, sigma):  q_n(x) = rho^n p_n(rho^{-1} x - sigma),
  which maps the coefficients to  B'_n = rho (B_n + sigma),  C'_n = rho^2 C_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from ._scalars import is_finite
from .errors import NonFiniteCoefficient, OutOfDomain, SingularHankel

__all__ = [
    "MonicPolynomial",
    "RecurrenceCoeffs",
    "AffineScale",
    "MomentSequence",
    "build_monic_sequence",
    "evaluate",
    "rescale_coeffs",
    "unrescale_coeffs",
    "polys_from_moments",
    "hankel_determinant",
]


@dataclass(frozen=True)
class MonicPolynomial:
    """Polynomial with ascending coefficients; the leading one must equal 1."""

    coeffs: tuple

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("empty coefficient tuple")
        lead = self.coeffs[-1]
        if lead != 1:
            raise ValueError(f"leading coefficient {lead!r} is not 1")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return evaluate(self, x)


@dataclass(frozen=True)
class AffineScale:
    """The pair (rho, sigma) of `q_n(x) = rho^n p_n(rho^{-1} x - sigma)`."""

    rho: float
    sigma: float

    def __post_init__(self):
        if self.rho == 0:
            raise ValueError("rho must be nonzero")


@dataclass(frozen=True)
class RecurrenceCoeffs:
    """Coefficient stream of a monic three-term recurrence.

    `B(n)` is valid for 0 <= n <= n_valid, `C(n)` for 1 <= n <= n_valid.
    Finite families (those with an N-type parameter) carry n_valid = N.
    """

    B: Callable[[int], float]
    C: Callable[[int], float]
    n_valid: float = math.inf


@dataclass(frozen=True)
class MomentSequence:
    moments: tuple

    def __len__(self) -> int:
        return len(self.moments)

    def __getitem__(self, k: int):
        return self.moments[k]


def evaluate(p: MonicPolynomial, x):
    """Horner evaluation of p at x (scalar of any supported type)."""
    acc = p.coeffs[-1]
    for c in reversed(p.coeffs[:-1]):
        acc = acc * x + c
    return acc


def build_monic_sequence(rc: RecurrenceCoeffs, n_max: int) -> list[MonicPolynomial]:
    """p_0 .. p_{n_max} from the recurrence; raises on non-finite coefficients."""
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if n_max > rc.n_valid:
        raise OutOfDomain(f"n_max={n_max} exceeds n_valid={rc.n_valid}")
    polys = [MonicPolynomial((1,))]
    if n_max == 0:
        return polys
    prev: Sequence = (1,)
    b0 = rc.B(0)
    _check_finite(b0, "B", 0)
    cur: Sequence = (-b0, 1)
    polys.append(MonicPolynomial(tuple(cur)))
    for n in range(1, n_max):
        bn = rc.B(n)
        cn = rc.C(n)
        _check_finite(bn, "B", n)
        _check_finite(cn, "C", n)
        # (x - bn) * cur - cn * prev
        nxt = [0] * (len(cur) + 1)
        for k, c in enumerate(cur):
            nxt[k + 1] += c
            nxt[k] -= bn * c
        for k, c in enumerate(prev):
            nxt[k] -= cn * c
        prev, cur = cur, nxt
        polys.append(MonicPolynomial(tuple(cur)))
    return polys


def _check_finite(value, label: str, n: int) -> None:
    if not is_finite(value):
        raise NonFiniteCoefficient(f"{label}({n}) = {value!r}")


def rescale_coeffs(rc: RecurrenceCoeffs, s: AffineScale) -> RecurrenceCoeffs:
    """Coefficients of q_n(x) = rho^n p_n(rho^{-1} x - sigma)."""
    rho, sigma = s.rho, s.sigma
    return RecurrenceCoeffs(
        B=lambda n: rho * (rc.B(n) + sigma),
        C=lambda n: rho * rho * rc.C(n),
        n_valid=rc.n_valid,
    )


def unrescale_coeffs(rc: RecurrenceCoeffs, s: AffineScale) -> RecurrenceCoeffs:
    """Inverse of rescale_coeffs with the same (rho, sigma)."""
    rho, sigma = s.rho, s.sigma
    return RecurrenceCoeffs(
        B=lambda n: rc.B(n) / rho - sigma,
        C=lambda n: rc.C(n) / (rho * rho),
        n_valid=rc.n_valid,
    )


def _det_bareiss(rows: list[list]) -> object:
    """Fraction-free Gaussian elimination; exact on ints/Fractions, stable on mpf."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(r) for r in rows]
    sign = 1
    prev = m[0][0] * 0 + 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return m[0][0] * 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _det(rows: list[list]):
    if not rows:
        return 1.0
    if all(isinstance(e, float) for row in rows for e in row):
        return float(np.linalg.det(np.array(rows, dtype=float)))
    if all(isinstance(e, int) for row in rows for e in row):
        rows = [[Fraction(e) for e in row] for row in rows]
    return _det_bareiss(rows)


def hankel_determinant(m: MomentSequence | Sequence, n: int):
    """det of the n-by-n leading Hankel matrix (mu_{i+j}); n = 0 gives 1."""
    mu = m.moments if isinstance(m, MomentSequence) else tuple(m)
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return 1
    if 2 * n - 1 >= len(mu) + 1:
        raise ValueError(f"need moments up to order {2 * n - 2}, got {len(mu) - 1}")
    return _det([[mu[i + j] for j in range(n)] for i in range(n)])


def polys_from_moments(m: MomentSequence | Sequence, n_max: int) -> list[MonicPolynomial]:
    """Monic orthogonal polynomials from moments via bordered determinants.

    p_n is the ratio of the (n+1)-square moment determinant bordered by the row
    (1, x, ..., x^n) to the n-square leading Hankel determinant.  Scaling all
    moments by a common positive constant leaves the result unchanged.
    """
    mu = tuple(m.moments if isinstance(m, MomentSequence) else m)
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    if len(mu) < 2 * n_max:
        raise ValueError(f"need at least {2 * n_max} moments, got {len(mu)}")
    if all(isinstance(v, (int, float)) for v in mu):
        mu, tau = _equilibrate(mu)
    else:
        tau = 1
    polys = [MonicPolynomial((1,))]
    for n in range(1, n_max + 1):
        lead = _det([[mu[i + j] for j in range(n)] for i in range(n)])
        if lead == 0 or not _finite_like(lead):
            raise SingularHankel(f"leading Hankel determinant of order {n} is {lead!r}")
        coeffs = []
        cols = list(range(n + 1))
        for k in range(n + 1):
            kept = [j for j in cols if j != k]
            minor = _det([[mu[i + j] for j in kept] for i in range(n)])
            sign = -1 if (n + k) % 2 else 1
            coeffs.append(sign * minor / lead)
        if tau != 1:
            coeffs = [c * tau ** (k - n) for k, c in enumerate(coeffs)]
        coeffs[-1] = coeffs[-1] * 0 + 1  # exact monic leading term
        polys.append(MonicPolynomial(tuple(coeffs)))
    return polys


def _finite_like(x) -> bool:
    try:
        return is_finite(x)
    except TypeError:
        return True  # exact types (Fraction) are always finite


def _equilibrate(mu: tuple) -> tuple[tuple, float]:
    """Rescale float moments by exact powers of two to tame Hankel conditioning.

    Returns (nu, tau) with nu_k = mu_k * tau^k for tau an exact power of two;
    this corresponds to the variable change y = tau * x and is undone exactly.
    """
    mu = tuple(float(v) for v in mu)
    k_top = len(mu) - 1
    if k_top == 0 or mu[k_top] == 0 or mu[0] == 0:
        return mu, 1.0
    growth = abs(mu[k_top] / mu[0]) ** (1.0 / k_top)
    if growth <= 0 or not math.isfinite(growth):
        return mu, 1.0
    e = round(math.log2(growth))
    if e == 0:
        return mu, 1.0
    tau = 2.0 ** (-e)
    return tuple(v * tau**k for k, v in enumerate(mu)), tau

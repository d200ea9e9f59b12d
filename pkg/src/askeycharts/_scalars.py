"""Scalar backends and type-generic elementary functions.

All coefficient formulas in this package are written against plain arithmetic
plus the helpers below, so the same code runs in binary64 (float/complex) and
in high precision (mpmath mpf/mpc at 50 significant digits).
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from fractions import Fraction

import mpmath

__all__ = [
    "Backend",
    "get_backend",
    "default_backend_name",
    "sqrt",
    "atan",
    "is_finite",
    "rel_dev",
]

_HIGHPREC_DPS = 50

_MP_TYPES = (mpmath.mpf, mpmath.mpc)


def sqrt(x):
    """Square root preserving the scalar type; negative reals go complex."""
    if isinstance(x, _MP_TYPES):
        return mpmath.sqrt(x)
    if isinstance(x, complex):
        return cmath.sqrt(x)
    if x < 0:
        return cmath.sqrt(x)
    return math.sqrt(x)


def atan(x):
    if isinstance(x, _MP_TYPES):
        return mpmath.atan(x)
    return math.atan(x)


def tan(x):
    if isinstance(x, _MP_TYPES):
        return mpmath.tan(x)
    return math.tan(x)


def is_finite(x) -> bool:
    if isinstance(x, _MP_TYPES):
        return mpmath.isfinite(x)
    if isinstance(x, complex):
        return math.isfinite(x.real) and math.isfinite(x.imag)
    return math.isfinite(x)


@dataclass(frozen=True)
class Backend:
    """Named scalar backend; `scalar` converts a float into the working type."""

    name: str

    def scalar(self, x):
        if self.name == "highprec":
            if mpmath.mp.dps < _HIGHPREC_DPS:
                mpmath.mp.dps = _HIGHPREC_DPS
            if isinstance(x, Fraction):
                return mpmath.mpf(x.numerator) / x.denominator
            return mpmath.mpf(x)
        return float(x)

    def tolerance(self, binary64_tol: float, highprec_tol: float) -> float:
        return highprec_tol if self.name == "highprec" else binary64_tol


def get_backend(name: str | None = None) -> Backend:
    """Resolve a backend by name, or from ASKEY_BACKEND, defaulting to binary64."""
    if name is None:
        name = default_backend_name()
    if name not in ("binary64", "highprec"):
        raise ValueError(f"unknown backend {name!r} (expected binary64 or highprec)")
    if name == "highprec" and mpmath.mp.dps < _HIGHPREC_DPS:
        mpmath.mp.dps = _HIGHPREC_DPS
    return Backend(name)


def default_backend_name() -> str:
    return os.environ.get("ASKEY_BACKEND", "binary64")


def rel_dev(value, ref) -> float:
    """Deviation |value - ref| / (1 + |ref|), as a float."""
    return float(abs(value - ref) / (1 + abs(ref)))

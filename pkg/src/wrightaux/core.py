"""Shared parameters, value types and regime classification.

Everything here is immutable. Derived quantities are computed with mpmath at
whatever working precision is active (or requested), so the high-precision
series evaluators can reuse them without losing digits.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import mpmath as mp

SigmaLike = Union[float, int, Fraction, str]

#: tolerance used for boundary decisions when sigma is not an exact rational
BOUNDARY_TOL = 1e-12


class DomainError(ValueError):
    """An argument lies outside the domain of the requested operation."""


class ConvergenceError(ArithmeticError):
    """A series could not be summed to the requested accuracy."""


class StokesError(ArithmeticError):
    """The expansion is invalid at sigma = 1/2 because of a Stokes phenomenon."""


class StokesLineError(StokesError):
    """The argument of calF lies within epsilon of a Stokes line arg z = +-pi kappa."""


class ContourError(ArithmeticError):
    """Steepest-descent quadrature failed to reach its cutoff or tolerance."""


class RangeError(ValueError):
    """A requested order or coefficient count is outside the supported range."""


class AccuracyWarning(UserWarning):
    """The divergent tail of an asymptotic series was reached."""


class Regime(enum.Enum):
    """Character of M_sigma(-x) for large x, by sigma band."""

    EXP_LARGE_OSCILLATORY = "ExpLargeOscillatory"
    PURE_OSCILLATORY = "PureOscillatory"
    EXP_SMALL_PLUS_ALGEBRAIC = "ExpSmallPlusAlgebraic"
    STOKES_HALF = "StokesHalf"
    ALGEBRAIC_ONLY = "AlgebraicOnly"

    def __str__(self) -> str:
        return self.value


def exact_sigma(sigma: SigmaLike) -> Fraction | None:
    """Return sigma as an exact rational when it was supplied as one.

    Strings ("1/3", "0.4") and Fractions/ints are exact; floats are not, and
    fall back to the documented tolerance in boundary decisions.
    """
    if isinstance(sigma, Fraction):
        return sigma
    if isinstance(sigma, bool):
        raise TypeError("sigma must be numeric")
    if isinstance(sigma, int):
        return Fraction(sigma)
    if isinstance(sigma, str):
        try:
            return Fraction(sigma.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse sigma {sigma!r}") from exc
    return None


def to_mpf(value: SigmaLike) -> mp.mpf:
    """Convert to an mpf at the current working precision (exact for rationals)."""
    frac = exact_sigma(value)
    if frac is not None:
        return mp.mpf(frac.numerator) / frac.denominator
    return mp.mpf(value)


def check_sigma(sigma: SigmaLike) -> None:
    frac = exact_sigma(sigma)
    s = frac if frac is not None else float(sigma)
    if not 0 < s < 1:
        raise DomainError("sigma must lie in (0,1)")


def near(sigma: SigmaLike, target: Fraction) -> bool:
    """Exact comparison for rational sigma, tolerance comparison otherwise."""
    frac = exact_sigma(sigma)
    if frac is not None:
        return frac == target
    return abs(float(sigma) - float(target)) < BOUNDARY_TOL


def is_reciprocal_integer(sigma: SigmaLike) -> bool:
    """True when sigma = 1/p for an integer p >= 2 (the algebraic tail vanishes)."""
    frac = exact_sigma(sigma)
    if frac is not None:
        return frac.numerator == 1 and frac.denominator >= 2
    s = float(sigma)
    if s <= 0:
        return False
    p = round(1.0 / s)
    return p >= 2 and abs(s - 1.0 / p) < BOUNDARY_TOL


@dataclass(frozen=True)
class SigmaParams:
    sigma: mp.mpf
    kappa: mp.mpf
    theta: mp.mpf
    h: mp.mpf
    a_sigma: mp.mpf
    a_prime: mp.mpf
    exact: Fraction | None = None
    dps: int = 15


def derive_params(sigma: SigmaLike, dps: int | None = None) -> SigmaParams:
    """Derived constants kappa, theta, h, A(sigma), A'(sigma) for 0 < sigma < 1.

    ``dps`` selects the working precision (default: the current mpmath one).
    """
    check_sigma(sigma)
    dps = mp.mp.dps if dps is None else dps
    with mp.workdps(dps):
        s = to_mpf(sigma)
        kappa = 1 - s
        theta = s - mp.mpf(1) / 2
        h = s**s
        a_sigma = mp.sqrt(2 * mp.pi / s) * (s / kappa) ** s
        a_prime = a_sigma * (s / kappa) ** kappa
    return SigmaParams(s, kappa, theta, h, a_sigma, a_prime, exact_sigma(sigma), dps)


@dataclass(frozen=True)
class BigX:
    value: mp.mpf
    x: mp.mpf


def big_x(params: SigmaParams, x) -> BigX:
    """X = kappa (h x)^(1/kappa), the large variable of the exponential expansions."""
    with mp.workdps(params.dps):
        x = to_mpf(x)
        if not x > 0:
            raise DomainError("x must be positive")
        return BigX(params.kappa * (params.h * x) ** (1 / params.kappa), x)


def classify_regime(sigma: SigmaLike) -> Regime:
    check_sigma(sigma)
    third, half = Fraction(1, 3), Fraction(1, 2)
    if near(sigma, third):
        return Regime.PURE_OSCILLATORY
    if near(sigma, half):
        return Regime.STOKES_HALF
    frac = exact_sigma(sigma)
    s = frac if frac is not None else float(sigma)
    if s < third:
        return Regime.EXP_LARGE_OSCILLATORY
    if s < half:
        return Regime.EXP_SMALL_PLUS_ALGEBRAIC
    return Regime.ALGEBRAIC_ONLY


@dataclass(frozen=True)
class PrecisionValue:
    """A series result together with how it was obtained.

    ``cancellation_digits`` is log10(max |term| / |result|); the value can be
    trusted to about ``working_digits - cancellation_digits`` digits.
    """

    value: mp.mpf | mp.mpc
    working_digits: int
    terms_used: int
    cancellation_digits: float

    @property
    def reliable_digits(self) -> float:
        return self.working_digits - self.cancellation_digits

    def __float__(self) -> float:
        return float(mp.re(self.value))

    def __complex__(self) -> complex:
        return complex(self.value)


def log10_abs(value) -> float:
    """log10 |value| as a float, -inf for zero (safe for huge mpf exponents)."""
    if value == 0:
        return -math.inf
    with mp.workdps(15):
        return float(mp.log10(abs(value)))

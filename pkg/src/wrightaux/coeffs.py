"""Coefficients c_j(sigma) of the exponential expansions.

Two independent routes:

* :func:`c_closed` evaluates the published closed forms
  c_j = (2-sigma)(1-2sigma) d_j(sigma) / (2^{3j} 3^j j! sigma^j), j <= 6;
* :func:`c_algorithm` expands the gamma-function ratio
  Gamma(sigma s + sigma) Gamma(kappa s + theta') / Gamma(1 + s) in inverse
  powers of s and converts the result to an inverse factorial series in
  (kappa s + theta')_j, with theta' = 1 - theta.

For rational sigma (Fraction or "p/q") both routes run in exact arithmetic.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import mpmath as mp

from . import fps
from .core import RangeError, SigmaLike, check_sigma, exact_sigma, to_mpf

MAX_COEFFS = 100

# d_j(sigma) as (denominator, integer coefficients in increasing powers of sigma)
D_POLYNOMIALS: dict[int, tuple[int, tuple[int, ...]]] = {
    1: (1, (1,)),
    2: (1, (2, 19, 2)),
    3: (5, (556, -1628, -9093, -1628, 556)),
    4: (5, (4568, 226668, -465702, -2013479, -465702, 226668, 4568)),
    5: (7, (2622064, -12598624, -167685080, 302008904, 1115235367,
            302008904, -167685080, -12598624, 2622064)),
    6: (35, (167898208, 22774946512, -88280004528, -611863976472,
             1041430242126, 3446851131657, 1041430242126, -611863976472,
             -88280004528, 22774946512, 167898208)),
}

# The printed d_3 and d_4 carry the wrong overall sign: with them as printed,
# c_3 and c_4 disagree in sign with the tabulated values and with
# c_algorithm for every sigma. The transcription above stays verbatim.
D_SIGN_ERRATA: dict[int, int] = {3: -1, 4: -1}


class CoefficientMethod(enum.Enum):
    CLOSED_FORM = "closed-form"
    ALGORITHM = "inverse-factorial"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CoefficientTable:
    sigma: SigmaLike
    coeffs: tuple
    method: CoefficientMethod
    M: int
    exact: tuple[Fraction, ...] | None = None

    def __getitem__(self, j: int):
        return self.coeffs[j]

    def __len__(self) -> int:
        return self.M


@dataclass(frozen=True)
class StirlingCoeffs:
    gammas: tuple[Fraction, ...]

    def evaluate(self, z):
        """sum_k (-1)^k gamma_k z^{-k}, the asymptotic series of Gamma*(z)."""
        z = mp.mpmathify(z)
        return mp.fsum((-1) ** k * to_mpf(g) * z ** (-k) for k, g in enumerate(self.gammas))


@dataclass(frozen=True)
class InverseFactorialWork:
    theta_prime: object
    A_script: object
    B_script: object
    C: tuple


class _Field:
    """Constructor for the coefficient field: exact rationals or mpf."""

    def __init__(self, exact: bool):
        self.exact = exact

    def __call__(self, v):
        if self.exact:
            return v if isinstance(v, Fraction) else Fraction(v)
        if isinstance(v, Fraction):
            return mp.mpf(v.numerator) / v.denominator
        return mp.mpf(v)


def _sigma_value(sigma: SigmaLike, field: _Field):
    q = exact_sigma(sigma)
    return field(q) if q is not None else field(sigma)


def _d_value(j: int, s):
    den, poly = D_POLYNOMIALS[j]
    acc = 0
    for c in reversed(poly):
        acc = acc * s + c
    return acc / den


def c_closed(sigma: SigmaLike, M: int = 7, dps: int | None = None,
             errata: bool = True) -> CoefficientTable:
    """c_0..c_{M-1} from the closed forms; M is limited to 7.

    ``errata=False`` evaluates the d_j exactly as printed (see D_SIGN_ERRATA).
    """
    check_sigma(sigma)
    if not 1 <= M <= 7:
        raise RangeError("closed forms exist only for M <= 7 (j <= 6)")
    exact = exact_sigma(sigma) is not None
    dps = mp.mp.dps if dps is None else dps
    with mp.workdps(dps):
        field = _Field(exact)
        s = _sigma_value(sigma, field)
        out = [field(1)]
        for j in range(1, M):
            pre = (2 - s) * (1 - 2 * s) / (field(2 ** (3 * j) * 3**j * factorial(j)) * s**j)
            sign = D_SIGN_ERRATA.get(j, 1) if errata else 1
            out.append(sign * pre * _d_value(j, s))
        return _table(sigma, out, CoefficientMethod.CLOSED_FORM, exact)


def _table(sigma, values, method, exact) -> CoefficientTable:
    if exact:
        return CoefficientTable(sigma, tuple(to_mpf(v) for v in values), method, len(values), tuple(values))
    return CoefficientTable(sigma, tuple(values), method, len(values))


def stirling_coeffs(K: int) -> StirlingCoeffs:
    """Exact gamma_0..gamma_K with Gamma*(z) ~ sum (-1)^k gamma_k z^{-k}.

    Built by exponentiating log Gamma*(z) ~ sum_m B_{2m} / (2m(2m-1) z^{2m-1}).
    """
    if K < 0:
        raise ValueError("K must be non-negative")
    n = K + 1
    log_series = [Fraction(0)] * n
    for k in range(1, n, 2):
        m = (k + 1) // 2
        p, q = mp.bernfrac(2 * m)
        log_series[k] = Fraction(int(p), int(q)) / (2 * m * (2 * m - 1))
    g = fps.exp(log_series, n)
    return StirlingCoeffs(tuple(Fraction(v) * (-1) ** k for k, v in enumerate(g)))


def _e_series(alpha, a, n: int) -> list:
    # exponent of e(alpha s; a) = (alpha s + a - 1/2) log(1 + a/(alpha s)) - a in t = 1/s
    b = a / alpha
    half = a - a + Fraction(1, 2) if isinstance(a, Fraction) else a - a + mp.mpf(1) / 2
    log_series = [a - a]
    for k in range(1, n):
        log_series.append(
            (-1) ** k * alpha * b ** (k + 1) / (k + 1) + (a - half) * (-1) ** (k + 1) * b**k / k
        )
    return fps.exp(log_series, n)


def e_factor_series(alpha, a, J: int) -> list:
    """Coefficients of e(alpha s; a) = e^{-a} (1 + a/(alpha s))^{alpha s + a - 1/2}
    in powers of 1/s, orders 0..J."""
    exact = exact_sigma(alpha) is not None and exact_sigma(a) is not None
    field = _Field(exact)
    if field(alpha) <= 0:
        raise ValueError("alpha must be positive")
    return _e_series(field(exact_sigma(alpha) if exact else alpha),
                     field(exact_sigma(a) if exact else a), J + 1)


def _gamma_star_series(alpha, a, g: list, n: int) -> list:
    # Gamma*(alpha s + a) = sum_k g_k (alpha s)^{-k} (1 + a/(alpha s))^{-k}
    out = [a - a] * n
    b = a / alpha
    for k in range(n):
        if g[k] == 0:
            continue
        term = fps.binomial_power(b, k, n - k)
        c = g[k] / alpha**k
        for m, v in enumerate(term):
            out[k + m] += c * v
    return out


def inverse_factorial_work(sigma: SigmaLike, M: int, dps: int | None = None) -> InverseFactorialWork:
    """Power-series coefficients C_j of R(s) Upsilon(s) in (kappa s)^{-1}, j < M."""
    check_sigma(sigma)
    exact = exact_sigma(sigma) is not None
    dps = mp.mp.dps if dps is None else dps
    with mp.workdps(dps):
        field = _Field(exact)
        s = _sigma_value(sigma, field)
        one = field(1)
        kappa = one - s
        theta = s - field(Fraction(1, 2))
        theta_p = one - theta
        g = [field(v * (-1) ** k) for k, v in enumerate(stirling_coeffs(M - 1).gammas)]

        r_num = fps.mul(_e_series(s, s, M), _e_series(kappa, theta_p, M))
        r = fps.mul(r_num, fps.inverse(_e_series(one, one, M)))
        ups = fps.mul(
            fps.mul(_gamma_star_series(s, s, g, M), _gamma_star_series(kappa, theta_p, g, M)),
            fps.inverse(_gamma_star_series(one, one, g, M)),
        )
        p = fps.mul(r, ups)
        C = tuple(p[j] * kappa**j for j in range(M))
        A_script = s - 1 - theta / kappa * (1 - theta)
        B_script = 1 / s + s / kappa
        return InverseFactorialWork(theta_p, A_script, B_script, C)


def _divide_linear(body: list, b) -> list:
    # body / (1 + b u) by the recurrence out[m] = body[m] - b out[m-1]
    out = []
    prev = None
    for v in body:
        prev = v if prev is None else v - b * prev
        out.append(prev)
    return out


def pochhammer_reciprocal_series(theta_p, j: int, n: int) -> list:
    """1/(kappa s + theta')_j as a series in u = (kappa s)^{-1}, n terms.

    Equals u^j prod_{i<j} 1/(1 + (theta' + i) u); the u^j coefficient is 1.
    """
    return _pochhammer_bases(theta_p, j + 1, n)[j]


def _pochhammer_bases(theta_p, count: int, n: int) -> list:
    zero = theta_p - theta_p
    body = [zero + 1] + [zero] * (n - 1)
    bases = []
    for j in range(count):
        if j:
            body = _divide_linear(body, theta_p + j - 1)
        bases.append([zero] * min(j, n) + body[: max(n - j, 0)])
    return bases


def c_algorithm(sigma: SigmaLike, M: int, digits: int = 16,
                max_coeffs: int = MAX_COEFFS, exact: bool | None = None) -> CoefficientTable:
    """c_0..c_{M-1} by inverse factorial conversion of R(s) Upsilon(s).

    Rational sigma runs in exact arithmetic unless ``exact=False``; otherwise
    the algebra is done in mpf at 2 * digits working precision.
    """
    check_sigma(sigma)
    if M < 1:
        raise RangeError("M must be >= 1")
    if M > max_coeffs:
        raise RangeError(f"M={M} exceeds the ceiling of {max_coeffs} coefficients")
    q = exact_sigma(sigma)
    exact = q is not None if exact is None else exact and q is not None
    dps = 2 * digits
    with mp.workdps(dps):
        work = inverse_factorial_work(sigma if exact or q is None else to_mpf(q), M, dps)
        C = work.C
        # triangular system C_n = sum_{j<=n} c_j [u^n] 1/(kappa s + theta')_j, unit diagonal
        basis = _pochhammer_bases(work.theta_prime, M, M)
        c = []
        for n in range(M):
            acc = C[n]
            for j in range(n):
                acc -= c[j] * basis[j][n]
            c.append(acc)
        return _table(sigma, c, CoefficientMethod.ALGORITHM, exact)

"""Convergent-series evaluation of W_{lambda,mu}, F_sigma, M_sigma and the
companion function calF(z) = sum Gamma(n sigma + sigma) z^n / n!.

These are the reference values for everything else, so they trade speed for
honesty: summation runs in mpmath at a working precision that is raised until
the measured cancellation leaves at least ``target_digits`` correct digits.

Tail rule: each series has an explicit bound B_n >= |term_n| built from
log-gamma (reflection formula where the gamma argument is not positive).
Past the largest term the ratios r_n = B_{n+1} / B_n decrease, so the
neglected tail after term n is at most B_{n+1} / (1 - r_n); summation stops
once that is below 10^-(target_digits + guard) relative to the partial sum.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import mpmath as mp

from .core import (
    ConvergenceError,
    DomainError,
    PrecisionValue,
    SigmaLike,
    check_sigma,
    exact_sigma,
    log10_abs,
    near,
    to_mpf,
)

GUARD_DIGITS = 10
MAX_ESCALATIONS = 10
#: hard budget on summed terms; beyond it mpmath summation takes minutes
MAX_TERMS = 200_000

_LN10 = math.log(10)


def _log10_rgamma_bound(w: complex) -> float:
    """Upper bound for log10 |1/Gamma(w)| computed in double precision."""
    if w.real >= 0.5:
        return -float(mp.re(mp.loggamma(w))) / _LN10 if w.imag else -math.lgamma(w.real) / _LN10
    # 1/Gamma(w) = Gamma(1-w) sin(pi w) / pi and |sin(pi w)| <= e^{pi |Im w|}
    if w.imag:
        lg = float(mp.re(mp.loggamma(1 - w)))
    else:
        lg = math.lgamma(1 - w.real)
    return (lg + math.pi * abs(w.imag) - math.log(math.pi)) / _LN10


def _peak_index(abs_z: float, lam: float) -> float:
    # location of the largest term of sum z^n / (n! Gamma(lam n + mu))
    if abs_z == 0:
        return 0.0
    scale = abs(lam) ** (-lam) if lam != 0 else 1.0
    return (abs_z * scale) ** (1.0 / (1.0 + lam))


def _term_cap(abs_z: float, lam: float) -> int:
    try:
        return int(10 * (abs_z ** (1.0 / (1.0 + lam)) + 50))
    except OverflowError:
        return 2**62


def _decay_cap(log10_bound: Callable[[int], float], peak: float, target_digits: int) -> int:
    """Terms needed for the bound to fall well below any working precision.

    For lambda near -1 the terms decay like n^{-(1+lambda) n}, far slower than
    the fixed cap assumes; the bound itself says how many terms are needed.
    """
    start = max(int(peak) + 1, 1)
    top = max(0.0, max(log10_bound(n) for n in {0, start - 1, start}))
    threshold = -3 * (target_digits + GUARD_DIGITS) - 2 * top
    n = start
    while n < 10**7:
        if log10_bound(n) < threshold:
            return 2 * n
        n *= 2
    return n


def _summate(
    make_term: Callable[[], Callable[[int], mp.mpf]],
    log10_bound: Callable[[int], float],
    peak: float,
    cap: int,
    target_digits: int,
    max_escalations: int = MAX_ESCALATIONS,
) -> PrecisionValue:
    """Sum a convergent series with precision escalation.

    ``make_term`` is called inside each working-precision context and returns
    the n -> term function for that precision.
    """
    if target_digits < 1:
        raise ValueError("target_digits must be >= 1")
    if peak * 3 + 50 > cap:
        raise ConvergenceError(f"series needs more than {cap} terms")
    cap = min(cap, MAX_TERMS)
    if peak > cap:
        raise ConvergenceError(f"largest term sits near n = {peak:.3g}, past the {cap}-term budget")

    # largest term predicted from the bound; start at the first doubling level
    # that can absorb it, counting the skipped levels as escalations
    probe = {0, int(peak), int(peak) + 1, max(int(0.5 * peak), 0), int(2 * peak)}
    peak_digits = max(0.0, max(log10_bound(n) for n in probe))
    work = target_digits + GUARD_DIGITS
    escalations = 0
    while work < target_digits + GUARD_DIGITS + peak_digits:
        work *= 2
        escalations += 1
    if escalations > max_escalations:
        raise ConvergenceError(
            f"terms reach 10^{peak_digits:.0f}; cancellation exceeds the precision ceiling "
            f"of {max_escalations} escalations"
        )
    while True:
        if escalations > max_escalations:
            raise ConvergenceError(
                f"precision ceiling reached after {max_escalations} escalations "
                f"({work // 2} digits)"
            )
        with mp.workdps(work):
            term = make_term()
            total = mp.mpf(0)
            biggest = mp.mpf(0)
            n = 0
            while True:
                if n > cap:
                    raise ConvergenceError(f"series needs more than {cap} terms")
                t = term(n)
                total += t
                at = abs(t)
                if at > biggest:
                    biggest = at
                if n > peak:
                    b = log10_bound(n + 1)
                    ratio_log = b - log10_bound(n)
                    ref = log10_abs(total) if total != 0 else log10_abs(biggest)
                    if ref == -math.inf:
                        ref = 0.0
                    if ratio_log < 0:
                        # past the peak the bound ratios decrease, so the tail is
                        # at most B_{n+1} / (1 - r) with r = B_{n+1} / B_n
                        tail = b - math.log10(1 - 10**ratio_log)
                        if tail < ref - target_digits - GUARD_DIGITS:
                            break
                n += 1
            if total == 0:
                cancellation = 0.0 if biggest == 0 else math.inf
            else:
                cancellation = max(0.0, log10_abs(biggest) - log10_abs(total))
            if work - cancellation >= target_digits + GUARD_DIGITS:
                return PrecisionValue(+total, work, n + 1, cancellation)
        # the measured cancellation says how many doublings are needed
        while work - cancellation < target_digits + GUARD_DIGITS and escalations <= max_escalations:
            work *= 2
            escalations += 1


def _rgamma_exact(arg: Fraction | None, approx) -> mp.mpf:
    # reciprocal gamma with exact zeros at non-positive integer arguments
    if arg is not None and arg.denominator == 1 and arg <= 0:
        return mp.mpf(0)
    return mp.rgamma(approx)


def _frac_mpf(q: Fraction) -> mp.mpf:
    return mp.mpf(q.numerator) / q.denominator


def _gamma_ladder(start: Fraction, step: Fraction) -> Callable[[int], mp.mpf]:
    """n -> Gamma(start + step n) for positive arguments and rational step p/q.

    Every q terms the argument grows by the integer p, so
    Gamma(b + p) = Gamma(b) (b)_p replaces a full gamma evaluation; only the
    last q values are kept.
    """
    p, q = step.numerator, step.denominator
    cache: dict[int, mp.mpf] = {}

    def gamma_at(n: int) -> mp.mpf:
        prev = cache.pop(n - q, None)
        arg = start + step * n
        if prev is not None:
            b = _frac_mpf(arg - p)
            g = prev
            for i in range(p):
                g *= b + i
        else:
            g = mp.gamma(_frac_mpf(arg))
        cache[n] = g
        return g

    return gamma_at


def _power_ladder(zm) -> Callable[[int], mp.mpf]:
    """n -> z^n / n!, incremental when called with consecutive n."""
    state = {"n": None, "value": None}

    def power(n: int):
        if state["n"] is not None and n == state["n"] + 1:
            v = state["value"] * zm / n
        else:
            v = zm**n / mp.factorial(n)
        state["n"], state["value"] = n, v
        return v

    return power


# rational parameters with larger denominators fall back to direct gamma calls
_LADDER_MAX = 200


def _rational_wright_term(lam_q: Fraction, mu_q: Fraction, zm) -> Callable[[int], mp.mpf]:
    # 1/Gamma(w) = sin(pi w) Gamma(1 - w) / pi for w = lam n + mu <= 0, lam < 0
    power = _power_ladder(zm)
    gamma_at = _gamma_ladder(1 - mu_q, -lam_q)
    sines: dict[Fraction, mp.mpf] = {}

    def term(n: int):
        w = lam_q * n + mu_q
        pw = power(n)
        if w.denominator == 1 and w <= 0:
            return mp.mpf(0)
        if w > 0:
            return pw * mp.rgamma(_frac_mpf(w))
        phase = w % 2
        if phase not in sines:
            sines[phase] = mp.sinpi(_frac_mpf(phase))
        return pw * gamma_at(n) * sines[phase] / mp.pi

    return term


def wright_series(lam, mu, z, target_digits: int = 16) -> PrecisionValue:
    """W_{lam,mu}(z) = sum_{n>=0} z^n / (n! Gamma(lam n + mu)) for lam > -1.

    ``lam`` and ``mu`` may be Fractions (or "p/q" strings); gamma poles are
    then detected exactly and contribute zero.
    """
    lam_q = exact_sigma(lam) if not isinstance(lam, (complex, mp.mpc)) else None
    mu_q = exact_sigma(mu) if not isinstance(mu, (complex, mp.mpc)) else None
    lam_f = float(lam_q) if lam_q is not None else float(lam)
    if not lam_f > -1:
        raise DomainError("lambda must exceed -1")
    zc = complex(z)
    mu_c = complex(float(mu_q)) if mu_q is not None else complex(mu)
    abs_z = abs(zc)

    if abs_z == 0:
        with mp.workdps(target_digits + GUARD_DIGITS):
            mu_m = to_mpf(mu) if mu_q is not None else mp.mpmathify(mu)
            return PrecisionValue(_rgamma_exact(mu_q, mu_m), target_digits + GUARD_DIGITS, 1, 0.0)

    log10_z = math.log10(abs_z)

    def bound(n: int) -> float:
        w = complex(lam_f * n) + mu_c
        return n * log10_z - math.lgamma(n + 1) / _LN10 + _log10_rgamma_bound(w)

    def make_term():
        lam_m = to_mpf(lam) if lam_q is not None else mp.mpf(lam)
        mu_m = to_mpf(mu) if mu_q is not None else mp.mpmathify(mu)
        zm = mp.mpmathify(z) if not isinstance(z, (Fraction, str)) else to_mpf(z)
        exact_ok = lam_q is not None and mu_q is not None
        if (exact_ok and lam_q < 0 and -lam_q.numerator <= _LADDER_MAX
                and lam_q.denominator <= _LADDER_MAX):
            return _rational_wright_term(lam_q, mu_q, zm)

        def term(n: int):
            arg_q = lam_q * n + mu_q if exact_ok else None
            r = _rgamma_exact(arg_q, lam_m * n + mu_m)
            if r == 0:
                return mp.mpf(0)
            return zm**n / mp.factorial(n) * r

        return term

    peak = _peak_index(abs_z, lam_f)
    cap = _term_cap(abs_z, lam_f)
    if 3 * peak + 50 <= cap:
        cap = max(cap, _decay_cap(bound, peak, target_digits))
    return _summate(make_term, bound, peak, cap, target_digits)


def f_series(sigma: SigmaLike, x, target_digits: int = 16) -> PrecisionValue:
    """F_sigma(x) = W_{-sigma,0}(-x)."""
    check_sigma(sigma)
    lam = _neg(sigma)
    return wright_series(lam, Fraction(0), _neg(x), target_digits)


def m_series(sigma: SigmaLike, x, target_digits: int = 16) -> PrecisionValue:
    """M_sigma(x) = W_{-sigma,1-sigma}(-x); any real x."""
    check_sigma(sigma)
    q = exact_sigma(sigma)
    mu = 1 - q if q is not None else 1 - float(sigma)
    return wright_series(_neg(sigma), mu, _neg(x), target_digits)


def _neg(v):
    q = exact_sigma(v) if not isinstance(v, (complex, mp.mpc, mp.mpf)) else None
    if q is not None:
        return -q
    return -v


def calf_series(sigma: SigmaLike, z, target_digits: int = 16) -> PrecisionValue:
    """calF(z) = sum_{n>=0} Gamma(n sigma + sigma) z^n / n!, summed like wright_series."""
    check_sigma(sigma)
    s_f = float(exact_sigma(sigma)) if exact_sigma(sigma) is not None else float(sigma)
    zc = complex(z)
    abs_z = abs(zc)
    if abs_z == 0:
        with mp.workdps(target_digits + GUARD_DIGITS):
            return PrecisionValue(mp.gamma(to_mpf(sigma)), target_digits + GUARD_DIGITS, 1, 0.0)
    def bound(n: int) -> float:
        return (math.lgamma(s_f * (n + 1)) + n * math.log(abs_z) - math.lgamma(n + 1)) / _LN10

    def make_term():
        s = to_mpf(sigma)
        zm = mp.mpmathify(z)
        q = exact_sigma(sigma)
        if q is not None and q.numerator <= _LADDER_MAX and q.denominator <= _LADDER_MAX:
            power = _power_ladder(zm)
            gamma_at = _gamma_ladder(q, q)
            return lambda n: gamma_at(n) * power(n)

        def term(n: int):
            return mp.gamma(s * (n + 1)) * zm**n / mp.factorial(n)

        return term

    peak = _peak_index(abs_z, -s_f)
    cap = _term_cap(abs_z, -s_f)
    if 3 * peak + 50 <= cap:
        cap = max(cap, _decay_cap(bound, peak, target_digits))
    return _summate(make_term, bound, peak, cap, target_digits)


class NotSpecial:
    """Marker returned by :func:`m_closed` when sigma has no elementary form."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NotSpecial"

    def __bool__(self) -> bool:
        return False


NOT_SPECIAL = NotSpecial()


def m_closed(sigma: SigmaLike, x):
    """Closed forms of M_sigma(x) at sigma = 0, 1/3, 1/2, else NOT_SPECIAL.

    sigma = 0 is accepted here only, as the boundary case M_0(x) = e^{-x}.
    """
    x = to_mpf(x) if isinstance(x, (Fraction, str)) else mp.mpf(x)
    if near(sigma, Fraction(0)):
        return mp.exp(-x)
    if near(sigma, Fraction(1, 2)):
        return mp.exp(-x * x / 4) / mp.sqrt(mp.pi)
    if near(sigma, Fraction(1, 3)):
        c = mp.cbrt(3)
        return c * c * mp.airyai(x / c)
    return NOT_SPECIAL

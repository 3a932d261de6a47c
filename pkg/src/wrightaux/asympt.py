"""Large-argument expansions of F_sigma(+-x), M_sigma(+-x) and calF(z).

Notation (see :mod:`wrightaux.core`): kappa = 1 - sigma, theta = sigma - 1/2,
h = sigma^sigma, X = kappa (h x)^(1/kappa), A = A(sigma).

* M_sigma(x)  ~ (A / 2pi) X^theta e^{-X} sum c_j (-X)^{-j}
* M_sigma(-x) ~ Ehat(x) + Hhat(x) for sigma < 1/2, Hhat(x) for sigma > 1/2
* F_sigma(+-x) follow from F = sigma x M.

Both exponential and algebraic series are divergent. Unless a truncation is
fixed by the caller they are cut just before their smallest term, and the
magnitude of that first omitted term is reported as a (heuristic) error proxy.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath as mp

from .coeffs import CoefficientTable, c_algorithm
from .core import (
    AccuracyWarning,
    BOUNDARY_TOL,
    DomainError,
    Regime,
    SigmaLike,
    StokesError,
    StokesLineError,
    big_x,
    check_sigma,
    classify_regime,
    derive_params,
    exact_sigma,
    is_reciprocal_integer,
    near,
    to_mpf,
)

DEFAULT_DPS = 30
STOKES_EPS = 0.05
MAX_ALG_TERMS = 400
AUTO_COEFFS = 60


@dataclass(frozen=True)
class Components:
    exponential: object = 0
    algebraic: object = 0


@dataclass(frozen=True)
class ExpansionResult:
    """Value of an asymptotic evaluation.

    ``last_term_magnitude`` is the size of the first omitted term (summed over
    the exponential and algebraic parts); it is an error proxy, not a bound.
    """

    value: object
    regime: Regime
    exp_terms_used: int
    alg_terms_used: int
    last_term_magnitude: object
    components: Components = field(default_factory=Components)
    divergent_tail: bool = False

    def __float__(self) -> float:
        return float(mp.re(self.value))

    def __complex__(self) -> complex:
        return complex(self.value)


def optimal_truncation(term_magnitudes: Sequence) -> int:
    """Index of the first local minimum of the magnitudes (ties go left)."""
    if not term_magnitudes:
        raise ValueError("empty term list")
    for i in range(len(term_magnitudes) - 1):
        if term_magnitudes[i] <= term_magnitudes[i + 1]:
            return i
    return len(term_magnitudes) - 1


def _coeffs(sigma, n: int, coeffs: CoefficientTable | None, dps: int) -> Sequence:
    if coeffs is not None and len(coeffs) >= n:
        return coeffs.coeffs
    return c_algorithm(sigma, n, digits=dps, exact=False).coeffs


def smallest_term_index(term_magnitudes: Sequence) -> int:
    """Index of the globally smallest nonzero magnitude (ties go left).

    Used for the exponential series, whose coefficients change sign and can
    make an early, shallow local minimum (c_4(1/4) is about 0.005).
    """
    nz = [i for i, v in enumerate(term_magnitudes) if v != 0]
    if not nz:
        return 0
    return min(nz, key=lambda i: term_magnitudes[i])


def _exp_truncation(c: Sequence, X, J: int | None, n_avail: int):
    """Return (J, first omitted |c_J X^-J| or 0, divergent flag) for the exponential sum."""
    mags = [abs(c[j]) * abs(X) ** (-j) for j in range(n_avail)]
    if J is None:
        J = max(smallest_term_index(mags), 1)
        return J, (mags[J] if J < n_avail else mp.mpf(0)), False
    if J < 1:
        raise DomainError("J must be >= 1")
    omitted = mags[J] if J < n_avail else mp.mpf(0)
    divergent = J < n_avail and mags[J] != 0 and mags[J] >= mags[J - 1]
    return J, omitted, divergent


def _auto_count(X) -> int:
    # the smallest term of sum c_j X^{-j} sits near j = 2X; past j = 60 the
    # omitted term is negligible at any working precision used here
    return int(min(AUTO_COEFFS, max(12, 3 * float(abs(X)) + 8)))


def _warn(divergent: bool) -> None:
    if divergent:
        warnings.warn("divergent tail of the asymptotic series reached", AccuracyWarning, stacklevel=3)


def _check(sigma, x) -> None:
    check_sigma(sigma)
    if not float(x) > 0:
        raise DomainError("x must be positive")


def _pos_sum(sigma, x, J, coeffs, dps, power):
    """Shared body of the x -> +infinity expansions; ``power`` selects X^theta or X^{1/2}."""
    p = derive_params(sigma, dps)
    with mp.workdps(dps):
        X = big_x(p, x).value
        n = max(J + 1, 2) if J is not None else _auto_count(X)
        c = _coeffs(sigma, n, coeffs, dps)
        J, omitted, divergent = _exp_truncation(c, X, J, min(n, len(c)))
        s = mp.fsum(c[j] * (-X) ** (-j) for j in range(J))
        pre = (p.a_sigma * X**p.theta if power == "theta" else p.a_prime * mp.sqrt(X)) / (2 * mp.pi)
        pre *= mp.exp(-X)
        value = pre * s
        _warn(divergent)
        return ExpansionResult(value, classify_regime(sigma), J, 0, abs(pre) * omitted,
                               Components(value, mp.mpf(0)), divergent)


def m_pos_asympt(sigma: SigmaLike, x, J: int | None = None,
                 coeffs: CoefficientTable | None = None, dps: int = DEFAULT_DPS) -> ExpansionResult:
    """M_sigma(x) for large x > 0 with J exponential terms (optimal if None)."""
    _check(sigma, x)
    return _pos_sum(sigma, x, J, coeffs, dps, "theta")


def f_pos_asympt(sigma: SigmaLike, x, J: int | None = None,
                 coeffs: CoefficientTable | None = None, dps: int = DEFAULT_DPS) -> ExpansionResult:
    """F_sigma(x) = (A'/2pi) X^{1/2} e^{-X} sum c_j (-X)^{-j}."""
    _check(sigma, x)
    return _pos_sum(sigma, x, J, coeffs, dps, "half")


def hat_e(sigma: SigmaLike, x, J: int | None = None,
          coeffs: CoefficientTable | None = None, dps: int = DEFAULT_DPS):
    """The oscillatory exponential series Ehat(x), evaluated for any sigma.

    Returns (value, J used, first omitted term magnitude, divergent flag).
    No regime guard: at sigma = 1/2 this gives twice M_{1/2}(-x), which is why
    :func:`m_neg_asympt` refuses that case.
    """
    p = derive_params(sigma, dps)
    with mp.workdps(dps):
        X = big_x(p, x).value
        n = max(J + 1, 2) if J is not None else _auto_count(X)
        c = _coeffs(sigma, n, coeffs, dps)
        J, omitted, divergent = _exp_truncation(c, X, J, min(n, len(c)))
        phase0 = X * mp.sin(mp.pi * p.sigma / p.kappa)
        total = mp.fsum(
            c[j] * (-X) ** (-j) * mp.cos(_reduce(phase0 + mp.pi / p.kappa * (p.theta - j)))
            for j in range(J)
        )
        pre = p.a_sigma / mp.pi * X**p.theta * mp.exp(X * mp.cos(mp.pi * p.sigma / p.kappa))
        return pre * total, J, abs(pre) * omitted, divergent


def _reduce(phase):
    # argument reduction for large phases; the extra digits keep the phase exact
    if abs(phase) > 1e6:
        with mp.extradps(int(mp.log10(abs(phase))) + 5):
            return mp.fmod(phase, 2 * mp.pi)
    return phase


def _at_pole(arg_q: Fraction | None, arg) -> bool:
    """True when 1/Gamma(arg) vanishes: exactly for rational sigma, within
    BOUNDARY_TOL for float sigma (otherwise a rounding-sized term would pose
    as the smallest term and stop the optimal truncation early)."""
    if arg_q is not None:
        return arg_q.denominator == 1 and arg_q <= 0
    a = float(arg)
    nearest = round(a)
    return nearest <= 0 and abs(a - nearest) < BOUNDARY_TOL * max(1, abs(nearest))


def _alg_terms(sigma, x, kind: str, K: int | None, dps: int):
    """Terms of Hhat (kind='m') or H' (kind='f'); returns (list, exact zeros flags)."""
    q = exact_sigma(sigma)
    s = to_mpf(sigma)
    xm = to_mpf(x) if isinstance(x, (Fraction, str)) else mp.mpf(x)
    kmax = K if K is not None else MAX_ALG_TERMS
    terms = []
    for i in range(kmax):
        if kind == "m":
            k = i + 1
            arg_q = -Fraction(k) / q if q is not None else None
            arg = -k / s
            power = -(k + s) / s
            fact = mp.factorial(k)
        else:
            k = i
            arg_q = 1 - Fraction(k + 1) / q if q is not None else None
            arg = 1 - (k + 1) / s
            power = -(k + 1) / s
            fact = mp.factorial(k)
        if _at_pole(arg_q, arg):
            terms.append(mp.mpf(0))
        else:
            terms.append(xm**power * mp.rgamma(arg) / (fact * s))
        if K is None and len(terms) > 3:
            nz = [abs(t) for t in terms if t != 0]
            if len(nz) >= 3 and (nz[-1] > nz[-2] or _negligible(nz[-1], terms)):
                break
    return terms


def _negligible(mag, terms) -> bool:
    # the series has effectively converged at the working precision
    total = abs(mp.fsum(terms))
    return total != 0 and mag < total * mp.eps


def _alg_sum(sigma, x, kind: str, K: int | None, dps: int):
    """Sum the algebraic series; returns (value, terms used, omitted magnitude)."""
    if is_reciprocal_integer(sigma):
        return mp.mpf(0), 0, mp.mpf(0)
    terms = _alg_terms(sigma, x, kind, K, dps)
    if K is not None:
        nxt = _alg_terms(sigma, x, kind, K + 1, dps)[-1]
        return mp.fsum(terms), K, abs(nxt)
    nz = [i for i, t in enumerate(terms) if t != 0]
    if not nz:
        return mp.mpf(0), 0, mp.mpf(0)
    m = nz[optimal_truncation([abs(terms[i]) for i in nz])]
    return mp.fsum(terms[:m]), m, abs(terms[m])


def m_neg_asympt(sigma: SigmaLike, x, J_exp: int | None = None, K_alg: int | None = None,
                 coeffs: CoefficientTable | None = None, dps: int = DEFAULT_DPS) -> ExpansionResult:
    """M_sigma(-x) for large x > 0: Ehat + Hhat (sigma < 1/2) or Hhat (sigma > 1/2).

    Hhat vanishes identically when sigma = 1/p. ``K_alg`` fixes the number of
    algebraic terms (k = 1..K_alg); None means optimal truncation.
    """
    _check(sigma, x)
    if near(sigma, Fraction(1, 2)):
        raise StokesError("sigma = 1/2 lies on a Stokes line; use m_closed (exp(-x^2/4)/sqrt(pi))")
    regime = classify_regime(sigma)
    with mp.workdps(dps):
        alg, k_used, alg_omit = _alg_sum(sigma, x, "m", K_alg, dps)
        exp_val, j_used, exp_omit, divergent = mp.mpf(0), 0, mp.mpf(0), False
        if regime in (Regime.EXP_LARGE_OSCILLATORY, Regime.PURE_OSCILLATORY,
                      Regime.EXP_SMALL_PLUS_ALGEBRAIC):
            exp_val, j_used, exp_omit, divergent = hat_e(sigma, x, J_exp, coeffs, dps)
        _warn(divergent)
        return ExpansionResult(exp_val + alg, regime, j_used, k_used, exp_omit + alg_omit,
                               Components(exp_val, alg), divergent)


def f_neg_asympt(sigma: SigmaLike, x, J_exp: int | None = None, K_alg: int | None = None,
                 coeffs: CoefficientTable | None = None, dps: int = DEFAULT_DPS) -> ExpansionResult:
    """F_sigma(-x) for large x > 0: E' + H' (sigma < 1/2) or H' (sigma > 1/2).

    ``K_alg`` fixes the number of algebraic terms (k = 0..K_alg-1).
    """
    _check(sigma, x)
    if near(sigma, Fraction(1, 2)):
        raise StokesError("sigma = 1/2 lies on a Stokes line; use F_1/2(x) = x exp(-x^2/4)/(2 sqrt(pi))")
    regime = classify_regime(sigma)
    with mp.workdps(dps):
        alg, k_used, alg_omit = _alg_sum(sigma, x, "f", K_alg, dps)
        exp_val, j_used, exp_omit, divergent = mp.mpf(0), 0, mp.mpf(0), False
        if regime is not Regime.ALGEBRAIC_ONLY:
            e, j_used, e_omit, divergent = hat_e(sigma, x, J_exp, coeffs, dps)
            # E'(x) = -sigma x Ehat(x): A' X^{1/2} = sigma x A X^theta, and the
            # cosine phase of E' is shifted by pi relative to Ehat
            xm = mp.mpf(x)
            scale = derive_params(sigma, dps).sigma * xm
            exp_val, exp_omit = -scale * e, scale * e_omit
        _warn(divergent)
        return ExpansionResult(exp_val + alg, regime, j_used, k_used, exp_omit + alg_omit,
                               Components(exp_val, alg), divergent)


def _arg_z(z):
    return mp.arg(z)


def calf_asympt(sigma: SigmaLike, z, J: int | None = None, K: int | None = None,
                eps: float = STOKES_EPS, dps: int = DEFAULT_DPS) -> ExpansionResult:
    """calF(z) for large |z| away from the Stokes lines arg z = +-pi kappa.

    E(z) = A Z^theta e^Z sum c_j Z^{-j} (Z = kappa (h z)^{1/kappa}) is included
    for |arg z| <= pi kappa - eps; the algebraic part is H(z e^{-+pi i}) with
    the upper sign for arg z > 0. On the positive real axis both choices are
    averaged, which gives the real value.
    """
    check_sigma(sigma)
    p = derive_params(sigma, dps)
    with mp.workdps(dps):
        z = mp.mpmathify(z)
        r = abs(z)
        if r == 0:
            raise DomainError("z must be nonzero")
        phi = _arg_z(z)
        stokes = mp.pi * p.kappa
        if abs(abs(phi) - stokes) < eps:
            raise StokesLineError(f"|arg z| is within {eps} of the Stokes line pi*kappa")
        if phi > 0:
            alg, k_used, alg_omit = _calf_alg(p, r, phi - mp.pi, K)
        elif phi < 0:
            alg, k_used, alg_omit = _calf_alg(p, r, phi + mp.pi, K)
        else:
            a1, k_used, o1 = _calf_alg(p, r, -mp.pi, K)
            a2, _, o2 = _calf_alg(p, r, mp.pi, k_used if K is None else K)
            alg, alg_omit = (a1 + a2) / 2, max(o1, o2)

        exp_val, j_used, exp_omit, divergent = mp.mpc(0), 0, mp.mpf(0), False
        if abs(phi) <= stokes - eps:
            logZ = mp.log(p.kappa) + (mp.log(p.h * r) + 1j * phi) / p.kappa
            Z = mp.exp(logZ)
            n = max(J + 1, 2) if J is not None else _auto_count(abs(Z))
            c = _coeffs(sigma, n, None, dps)
            j_used, omitted, divergent = _exp_truncation(c, Z, J, min(n, len(c)))
            pre = p.a_sigma * mp.exp(p.theta * logZ + Z)
            exp_val = pre * mp.fsum(c[j] * mp.exp(-j * logZ) for j in range(j_used))
            exp_omit = abs(pre) * omitted
        _warn(divergent)
        return ExpansionResult(exp_val + alg, classify_regime(sigma), j_used, k_used,
                               exp_omit + alg_omit, Components(exp_val, alg), divergent)


def _calf_alg(p, r, arg_w, K: int | None):
    """H(w), |w| = r, arg w = arg_w (not reduced), truncated at K or optimally."""
    s = p.sigma
    terms = []
    kmax = K if K is not None else MAX_ALG_TERMS
    for k in range(kmax + 1):
        expo = (k + s) / s
        t = (-1) ** k / mp.factorial(k) * mp.gamma(expo) * r ** (-expo) * mp.expj(-expo * arg_w) / s
        terms.append(t)
        if K is None and k >= 2 and (abs(terms[-1]) > abs(terms[-2]) or _negligible(abs(t), terms)):
            break
    if K is not None:
        return mp.fsum(terms[:K]), K, abs(terms[K])
    m = optimal_truncation([abs(t) for t in terms])
    return mp.fsum(terms[:m]), m, abs(terms[m])


def _calf_alg_real(p, x, K: int | None):
    """sum_{k<m} Gamma((k+sigma)/sigma)/k! x^{-(k+sigma)/sigma} with optimal m (all terms > 0)."""
    s = p.sigma
    terms = []
    kmax = K if K is not None else MAX_ALG_TERMS
    for k in range(kmax + 1):
        expo = (k + s) / s
        terms.append(mp.gamma(expo) / mp.factorial(k) * x ** (-expo))
        if K is None and k >= 2 and (terms[-1] > terms[-2] or _negligible(terms[-1], terms)):
            break
    m = K if K is not None else optimal_truncation(terms)
    return mp.fsum(terms[:m]), m, terms[m]


def calf_stokes(sigma: SigmaLike, x, J: int | None = None, sign: int = 1,
                K: int | None = None, dps: int = DEFAULT_DPS) -> ExpansionResult:
    """calF(x e^{+-pi i kappa}) on a Stokes line (``sign`` = +1 or -1).

    Algebraic series optimally truncated at its smallest term plus the
    exponentially small part with the halved coefficients A_j / 2 only. The
    companion B_j terms are not available, so ``last_term_magnitude`` adds an
    estimate of their size, X^theta e^{-X} A / sqrt(2 pi X), to the omitted
    algebraic term.
    """
    _check(sigma, x)
    if sign not in (1, -1):
        raise DomainError("sign must be +1 or -1")
    p = derive_params(sigma, dps)
    with mp.workdps(dps):
        xm = mp.mpf(x)
        X = big_x(p, xm).value
        alg_sum, m, alg_omit = _calf_alg_real(p, xm, K)
        alg = mp.expj(sign * mp.pi * p.sigma) / p.sigma * alg_sum
        n = max(J + 1, 2) if J is not None else _auto_count(X)
        c = _coeffs(sigma, n, None, dps)
        J, omitted, divergent = _exp_truncation(c, X, J, min(n, len(c)))
        pre = X**p.theta * mp.expj(sign * mp.pi * p.theta) * mp.exp(-X)
        half = pre * mp.fsum(p.a_sigma * c[j] / 2 * (-X) ** (-j) for j in range(J))
        b_estimate = abs(pre) * p.a_sigma / mp.sqrt(2 * mp.pi * X)
        proxy = alg_omit / p.sigma + abs(pre) * p.a_sigma / 2 * omitted + b_estimate
        _warn(divergent)
        return ExpansionResult(half + alg, classify_regime(sigma), J, m, proxy,
                               Components(half, alg), divergent)


def stokes_reconstruction(sigma: SigmaLike, x, J: int | None = None, dps: int = DEFAULT_DPS):
    """M_sigma(x) rebuilt from the two Stokes-line expansions of calF.

    (1/2pi) [e^{pi i theta} calF(x e^{-pi i kappa}) + e^{-pi i theta} calF(x e^{pi i kappa})];
    the algebraic parts cancel and the halved exponential parts add up.
    The working precision is raised by X / ln 10 digits so that the
    cancelling O(1) algebraic parts leave e^{-X} resolvable.
    Returns (value, minus-branch result, plus-branch result).
    """
    _check(sigma, x)
    X = float(big_x(derive_params(sigma), x).value)
    dps = dps + int(X / 2.302585) + 5
    p = derive_params(sigma, dps)
    with mp.workdps(dps):
        minus = calf_stokes(sigma, x, J, -1, dps=dps)
        plus = calf_stokes(sigma, x, minus.exp_terms_used, 1, K=minus.alg_terms_used, dps=dps)
        val = (mp.expj(mp.pi * p.theta) * minus.value + mp.expj(-mp.pi * p.theta) * plus.value) / (2 * mp.pi)
        return val, minus, plus


__all__ = [
    "Components",
    "ExpansionResult",
    "optimal_truncation",
    "smallest_term_index",
    "m_pos_asympt",
    "f_pos_asympt",
    "hat_e",
    "m_neg_asympt",
    "f_neg_asympt",
    "calf_asympt",
    "calf_stokes",
    "stokes_reconstruction",
]

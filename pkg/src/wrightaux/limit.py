"""The sigma -> 1^- regime (sigma = 1 - epsilon).

* :func:`m_limit_pos` / :func:`m_limit_neg`: leading-order delta-limit forms
  of M_sigma(+-x) obtained from the large-x expansions.
* :func:`kreis_pipkin`: the Kreis-Pipkin saddle-point variant
  F_sigma(x) ~ (Lambda / 2 pi i eps) int_{-inf}^{(0+)} e^{Lambda z (ln z - 1)} dz,
  Lambda = eps t0, t0 = (x (1 - eps))^{1/eps}, evaluated by quadrature along
  the steepest-descent path through the saddle z = 1.
* :func:`figure_grid`: uniform-grid evaluation behind the figure curves.

Steepest-descent path. With z = r e^{i theta},
Im[z (ln z - 1)] = r [sin theta (ln r - 1) + theta cos theta] vanishes on
ln r = 1 - theta cot theta, a closed form for the whole path (theta in
(-pi, pi), r -> 0 as theta -> +-pi and r = 1 at the saddle). On it
z (ln z - 1) = -u with u = r theta / sin theta >= 1 and, by the symmetry
z(-theta) = conj z(theta),

    (1 / 2 pi i) int e^{Lambda z (ln z - 1)} dz = (1 / pi) int_0^pi u e^{-Lambda u} d theta.

Everything is evaluated in log space: Lambda ranges from 1e-300 to 1e300 over
the figure grids, and M itself under/overflows long before that.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import mpmath as mp
import numpy as np
from scipy.optimize import brentq

from .core import ContourError, ConvergenceError, DomainError, StokesError
from .series import m_series

#: integrand cutoff relative to its saddle value
KP_CUTOFF = 1e-30
#: relative tolerance of the composite Gauss-Legendre quadrature
KP_RTOL = 1e-10
KP_ORDER = 20
KP_MAX_SEGMENTS = 4096
#: documented validity bound of the Kreis-Pipkin approximation
KP_EPS_MAX = 0.2
#: m_limit_neg is a leading-order eps -> 0 form; callers warn above this
LIMIT_EPS_WARN = 0.2

_SMALL_THETA = 1e-2


class Side(enum.Enum):
    POS = "pos"
    NEG = "neg"

    def __str__(self) -> str:
        return self.value


class GridMethod(enum.Enum):
    LIMIT = "limit"
    KP = "kp"
    SERIES = "series"

    def __str__(self) -> str:
        return self.value


def _check(epsilon, x, eps_max: float = 1.0) -> None:
    e = float(epsilon)
    if not 0 < e < 1:
        raise DomainError("epsilon must lie in (0,1)")
    if e > eps_max:
        raise DomainError(f"epsilon must not exceed {eps_max}")
    if not float(x) > 0:
        raise DomainError("x must be positive")


def _from_log(log_value) -> float:
    """float(exp(log_value)) with clean underflow/overflow."""
    if log_value == -math.inf:
        return 0.0
    if log_value > 709.7:
        return math.inf
    return math.exp(log_value)


# -- delta-limit forms ---------------------------------------------------------


def m_limit_pos_log(epsilon, x) -> float:
    """Natural log of :func:`m_limit_pos` (finite even when the value underflows)."""
    _check(epsilon, x)
    with mp.workdps(30):
        e = mp.mpf(epsilon)
        ly = mp.log(mp.mpf(x) * (1 - e))
        return float((1 / (2 * e) - 1) * ly - mp.log(2 * mp.pi * e) / 2
                     - e / (1 - e) * mp.exp(ly / e))


def m_limit_pos(epsilon, x) -> float:
    """Leading behaviour of M_{1-eps}(x) as eps -> 0:
    (x(1-eps))^{1/(2 eps) - 1} / sqrt(2 pi eps) exp[-(eps/(1-eps)) (x(1-eps))^{1/eps}]."""
    return _from_log(m_limit_pos_log(epsilon, x))


def m_limit_neg(epsilon, x) -> float:
    """Leading behaviour of M_{1-eps}(-x): (eps/(1-eps)) x^{-2-eps} Gamma(1 + 1/sigma).

    The O(x^{-1/sigma}) relative correction is not included; the form is only
    meaningful as eps -> 0 (see LIMIT_EPS_WARN).
    """
    _check(epsilon, x)
    e = float(epsilon)
    sigma = 1 - e
    return math.exp(math.log(e / sigma) - (2 + e) * math.log(float(x)) + math.lgamma(1 + 1 / sigma))


# -- Kreis-Pipkin ---------------------------------------------------------------


@dataclass(frozen=True)
class KPSetup:
    """Stationary point t0 = (x(1-eps))^{1/eps} and Lambda = eps t0 (kept as logs too)."""

    epsilon: float
    x: float
    t0: float
    lambda_kp: float
    log_t0: float
    log_lambda: float


def kp_setup(epsilon, x) -> KPSetup:
    _check(epsilon, x)
    e, xf = float(epsilon), float(x)
    log_t0 = math.log(xf * (1 - e)) / e
    log_lam = math.log(e) + log_t0
    return KPSetup(e, xf, _from_log(log_t0), _from_log(log_lam), log_t0, log_lam)


def kp_path(theta):
    """Point z(theta) = r e^{i theta} of the steepest-descent path, |theta| < pi."""
    theta = np.asarray(theta, dtype=float)
    return np.exp(_log_r(theta) + 1j * theta)


def _log_r(theta):
    # ln r = 1 - theta cot theta, with its Taylor series near the saddle
    theta = np.asarray(theta, dtype=float)
    t2 = theta * theta
    series = t2 / 3 + t2 * t2 / 45 + 2 * t2**3 / 945
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = 1 - theta / np.tan(theta)
    return np.where(np.abs(theta) < _SMALL_THETA, series, direct)


def _log_u(theta):
    # ln u = ln r + ln(theta / sin theta); u = -z (ln z - 1) on the path
    theta = np.asarray(theta, dtype=float)
    t2 = theta * theta
    series = t2 / 6 + t2 * t2 / 180 + t2**3 / 2835
    with np.errstate(divide="ignore", invalid="ignore"):
        direct = np.log(theta / np.sin(theta))
    return _log_r(theta) + np.where(np.abs(theta) < _SMALL_THETA, series, direct)


@dataclass(frozen=True)
class KPResult:
    """Kreis-Pipkin evaluation with the quadrature record.

    ``nodes`` are the path angles theta of every accepted quadrature node.
    """

    value: float
    log_value: float
    setup: KPSetup
    theta_cut: float
    segments: int
    nodes: np.ndarray = field(repr=False, default_factory=lambda: np.empty(0))


class _Integrand:
    """Scaled integrand g(theta) = Lambda u e^{-Lambda u + c}, bounded by max(Lambda, 1/e)."""

    def __init__(self, log_lam: float):
        self.log_lam = log_lam
        self.lam = _from_log(log_lam)
        # shift by the saddle exponent only when it is large
        self.shifted = log_lam > 0
        # the saddle width is Lambda^{-1/2}; quadrature runs in phi = theta / scale
        self.scale = math.exp(-log_lam / 2) if self.shifted else 1.0

    def log_g(self, phi):
        lu = _log_u(np.asarray(phi, dtype=float) * self.scale)
        log_w = self.log_lam + lu
        with np.errstate(over="ignore"):
            if self.shifted:
                # -Lambda (u - 1), accurate near the saddle
                expo = -self.lam * np.expm1(lu)
            else:
                expo = -np.exp(log_w)
        return log_w + expo

    def __call__(self, theta):
        return np.exp(self.log_g(theta))

    @property
    def log_saddle(self) -> float:
        return float(self.log_g(np.array(0.0)))


def _cut_angle(f: _Integrand, cutoff: float) -> float:
    """Scaled angle beyond which the integrand stays below cutoff * saddle value."""
    target = f.log_saddle + math.log(cutoff)
    hi = math.pi * (1 - 1e-15) / f.scale
    if f.shifted:
        # Lambda (u - 1) >= phi^2 / 2, so the cut lies below sqrt(-2 ln cutoff) + 1
        hi = min(hi, math.sqrt(-2 * math.log(cutoff)) + 1)
    lo = 0.0
    if not f.shifted:
        # the integrand first rises to 1/e where Lambda u = 1; search past that
        lo = brentq(lambda t: float(f.log_lam + _log_u(np.array(t))), 0.0, hi, xtol=1e-15)
    phi = lambda t: float(f.log_g(np.array(t))) - target  # noqa: E731
    if phi(hi) > 0:
        raise ContourError("integrand does not fall below the cutoff before theta = pi")
    if phi(lo) <= 0:
        return lo
    return brentq(phi, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=400)


def _gauss_legendre(f, a: float, b: float, x_ref, w_ref):
    half, mid = (b - a) / 2, (b + a) / 2
    nodes = mid + half * x_ref
    return half * float(np.dot(w_ref, f(nodes))), nodes


def _adaptive_gl(f, a: float, b: float, rtol: float, order: int, max_segments: int):
    """Composite Gauss-Legendre with segment halving; returns (integral, segments, nodes)."""
    x_ref, w_ref = np.polynomial.legendre.leggauss(order)
    whole, _ = _gauss_legendre(f, a, b, x_ref, w_ref)
    stack = [(a, b, whole)]
    total = 0.0
    accepted_nodes = []
    segments = 0
    scale = abs(whole)
    while stack:
        if segments + len(stack) > max_segments:
            raise ContourError(f"quadrature exceeded {max_segments} segments")
        lo, hi, est = stack.pop()
        mid = (lo + hi) / 2
        left, ln = _gauss_legendre(f, lo, mid, x_ref, w_ref)
        right, rn = _gauss_legendre(f, mid, hi, x_ref, w_ref)
        refined = left + right
        scale = max(scale, abs(total + refined))
        if abs(refined - est) <= rtol * scale or hi - lo < 1e-15 * b:
            total += refined
            accepted_nodes.extend((ln, rn))
            segments += 2
        else:
            stack.append((mid, hi, right))
            stack.append((lo, mid, left))
    return total, segments, np.concatenate(accepted_nodes)


def kreis_pipkin_detail(epsilon, x, quad_opts: dict | None = None) -> KPResult:
    """Kreis-Pipkin approximation of M_{1-eps}(x) with the quadrature record.

    ``quad_opts`` may set ``cutoff``, ``rtol``, ``order`` and ``max_segments``.
    """
    _check(epsilon, x, KP_EPS_MAX)
    opts = {"cutoff": KP_CUTOFF, "rtol": KP_RTOL, "order": KP_ORDER,
            "max_segments": KP_MAX_SEGMENTS, **(quad_opts or {})}
    setup = kp_setup(epsilon, x)
    e = setup.epsilon
    if setup.log_lambda > 700:
        # e^{-Lambda} is below every representable number
        return KPResult(0.0, -math.inf, setup, 0.0, 0)
    f = _Integrand(setup.log_lambda)
    phi_cut = _cut_angle(f, opts["cutoff"])
    integral, segments, nodes = _adaptive_gl(f, 0.0, phi_cut, opts["rtol"],
                                             opts["order"], opts["max_segments"])
    integral *= f.scale
    theta_cut, nodes = phi_cut * f.scale, nodes * f.scale
    if not integral > 0:
        raise ContourError("steepest-descent quadrature produced a non-positive integral")
    # F = (Lambda / eps) (1/pi) int u e^{-Lambda u} = e^{-c} int g / (pi eps)
    shift = setup.lambda_kp if f.shifted else 0.0
    log_f = math.log(integral) - shift - math.log(math.pi * e)
    log_m = log_f - math.log((1 - e) * setup.x)
    return KPResult(_from_log(log_m), log_m, setup, theta_cut, segments, nodes)


def kreis_pipkin(epsilon, x, quad_opts: dict | None = None) -> float:
    """M_{1-eps}(x) = F_{1-eps}(x) / ((1-eps) x) from the Kreis-Pipkin integral."""
    return kreis_pipkin_detail(epsilon, x, quad_opts).value


# -- grids ------------------------------------------------------------------------


@dataclass(frozen=True)
class GridRow:
    """One grid point; ``flag`` is empty on success, otherwise the error name."""

    x: float
    value: float
    log10_value: float
    flag: str = ""


def _evaluate(epsilon: float, x: float, side: Side, method: GridMethod) -> tuple[float, float]:
    """(value, log10 value) of M_{1-eps}(+-x) by one method."""
    if method is GridMethod.LIMIT:
        if side is Side.POS:
            log_v = m_limit_pos_log(epsilon, x)
            return _from_log(log_v), log_v / math.log(10)
        v = m_limit_neg(epsilon, x)
    elif method is GridMethod.KP:
        if side is Side.NEG:
            raise DomainError("the Kreis-Pipkin integral applies to x > 0 only")
        r = kreis_pipkin_detail(epsilon, x)
        return r.value, r.log_value / math.log(10)
    else:
        sigma = 1 - float(epsilon)
        pv = m_series(sigma, x if side is Side.POS else -x, target_digits=8)
        v = float(pv.value)
        if v == 0 and pv.value != 0:
            return 0.0, float(mp.log10(abs(pv.value)))
    return v, (math.log10(v) if v > 0 else (-math.inf if v == 0 else math.nan))


def figure_grid(epsilon, x_min: float, x_max: float, n: int,
                side: str | Side = Side.POS, method: str | GridMethod = GridMethod.LIMIT) -> list[GridRow]:
    """Evaluate on n uniformly spaced points of [x_min, x_max].

    For side='neg' the grid is in x > 0 and the value is M(-x). Failures at a
    point become a NaN row flagged with the exception name.
    """
    side = Side(side)
    method = GridMethod(method)
    if n < 2:
        raise DomainError("n must be >= 2")
    if not x_min < x_max:
        raise DomainError("x_min must be less than x_max")
    e = float(epsilon)
    if not 0 < e < 1:
        raise DomainError("epsilon must lie in (0,1)")
    rows = []
    for xv in np.linspace(x_min, x_max, n):
        xv = float(xv)
        try:
            v, lv = _evaluate(e, xv, side, method)
            rows.append(GridRow(xv, v, lv))
        except (DomainError, ConvergenceError, ContourError, StokesError, ArithmeticError) as exc:
            rows.append(GridRow(xv, math.nan, math.nan, type(exc).__name__))
    return rows


def grid_argmax(rows: list[GridRow]) -> float:
    """x of the largest finite value on a grid."""
    finite = [r for r in rows if not r.flag and math.isfinite(r.value)]
    if not finite:
        raise ValueError("grid has no finite values")
    return max(finite, key=lambda r: r.value).x


def trapezoid_mass(rows: list[GridRow]) -> float:
    xs = np.array([r.x for r in rows if not r.flag])
    vs = np.array([r.value for r in rows if not r.flag])
    return float(np.trapezoid(vs, xs)) if hasattr(np, "trapezoid") else float(np.trapz(vs, xs))


__all__ = [
    "KPSetup",
    "KPResult",
    "GridRow",
    "Side",
    "GridMethod",
    "m_limit_pos",
    "m_limit_pos_log",
    "m_limit_neg",
    "kp_setup",
    "kp_path",
    "kreis_pipkin",
    "kreis_pipkin_detail",
    "figure_grid",
    "grid_argmax",
    "trapezoid_mass",
]

"""Shared oracles for the test suite.

Everything here is independent of the package's own summation code: the
oracles use mpmath special functions and quadrature directly.
"""

import mpmath as mp
import pytest


def rel(a, b):
    """Relative difference |a/b - 1| as a float."""
    return float(abs(mp.mpmathify(a) / mp.mpmathify(b) - 1))


def airy_m_third(x):
    """M_{1/3}(x) = 3^{2/3} Ai(x / 3^{1/3}) via mpmath's Airy function."""
    c = mp.cbrt(3)
    return c * c * mp.airyai(mp.mpf(x) / c)


def gamma_star(z):
    """Scaled gamma Gamma(z) (2 pi)^{-1/2} e^z z^{1/2 - z} by direct evaluation."""
    z = mp.mpf(z)
    return mp.gamma(z) / mp.sqrt(2 * mp.pi) * mp.exp(z) * z ** (mp.mpf(1) / 2 - z)


def hankel_m_neg(sigma, x):
    """M_sigma(-x) for sigma > 1/2 from the Hankel integral collapsed onto (0, inf):
    (1/pi) int_0^inf e^{-r} r^{sigma-1} Im[e^{i pi sigma} exp(x r^sigma e^{i pi sigma})] dr."""
    s = mp.mpf(sigma)
    w = mp.expj(mp.pi * s)
    f = lambda r: mp.exp(-r) * r ** (s - 1) * mp.im(w * mp.exp(x * r**s * w))  # noqa: E731
    return mp.quad(f, [0, 1, 10, 60, mp.inf]) / mp.pi


def hankel_kp(lam):
    """(1/2 pi i) int_{-inf}^{(0+)} e^{Lambda z (ln z - 1)} dz on a polygonal contour."""
    lam = mp.mpf(lam)
    f = lambda z: mp.exp(lam * z * (mp.log(z) - 1))  # noqa: E731
    # on the negative axis |integrand| = e^{-Lambda L (ln L + 1)}: extend until negligible
    L = mp.mpf(40)
    while lam * L * (mp.log(L) + 1) < 120:
        L *= 2
    path = [-L - 2j, 1 - 2j, 1 + 2j, -L + 2j]
    return mp.re(mp.quad(f, path) / (2j * mp.pi))


@pytest.fixture(autouse=True)
def _mp_precision():
    # keep tests isolated from any global precision change
    with mp.workdps(30):
        yield

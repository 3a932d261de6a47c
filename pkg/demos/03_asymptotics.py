"""Large-argument expansions for x -> +inf and x -> -inf.

Positive argument: an exponentially small series in X = kappa (h x)^(1/kappa).
Negative argument: an oscillatory exponential part Ehat plus an algebraic part
Hhat, which vanishes when sigma = 1/p. At sigma = 1/2 the negative-axis
expansion sits on a Stokes line and is refused.
"""

import warnings

import mpmath as mp

from wrightaux import (StokesError, classify_regime, m_neg_asympt, m_pos_asympt,
                       m_series, stokes_reconstruction)

for sigma, x in (("1/4", 6), ("1/4", 10), ("3/4", 4)):
    ref = m_series(sigma, x).value
    print(f"M_{sigma}({x}): series {mp.nstr(ref, 12)}")
    for J in (1, 2, 3, 5, 7):
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            v = m_pos_asympt(sigma, x, J=J).value
        print(f"  J={J}: relative error {mp.nstr(abs(v / ref - 1), 3)}")

print("\nNegative argument, optimally truncated:")
for sigma, x in (("1/4", 8), ("2/5", 12), ("2/3", 8)):
    r = m_neg_asympt(sigma, x)
    ref = m_series(sigma, -x).value
    print(f"  {sigma} [{classify_regime(sigma)}] x=-{x}: {mp.nstr(r.value, 12)}"
          f"  rel err {mp.nstr(abs(r.value / ref - 1), 3)}  proxy {mp.nstr(r.last_term_magnitude, 3)}")

try:
    m_neg_asympt("1/2", 3)
except StokesError as exc:
    print("\nsigma = 1/2:", exc)

value, _, _ = stokes_reconstruction("1/4", 6)
print("Stokes-line reconstruction of M_{1/4}(6):", mp.nstr(mp.re(value), 15))

"""Convergent series: the reference values for everything else.

The series for F_sigma and M_sigma converge everywhere, but for negative
arguments and sigma > 1/2 the terms grow enormously before they decay. The
evaluator measures that cancellation and raises the working precision until
the requested number of digits survives.
"""

import mpmath as mp

from wrightaux import f_series, m_closed, m_series

print("M_{1/2}(x) is a Gaussian, M_{1/3}(x) an Airy function:")
for x in (0.5, 2, 5):
    print(f"  x={x}: series {mp.nstr(m_series('1/2', x).value, 15)}"
          f"  closed {mp.nstr(m_closed('1/2', x), 15)}")
    print(f"         series {mp.nstr(m_series('1/3', x).value, 15)}"
          f"  closed {mp.nstr(m_closed('1/3', x), 15)}")

print("\nCancellation on the negative axis (sigma = 3/4):")
for x in (-2, -6, -10):
    r = m_series("3/4", x)
    print(f"  M(x={x}) = {mp.nstr(r.value, 15)}  working digits {r.working_digits},"
          f" cancellation {r.cancellation_digits:.0f}, terms {r.terms_used}")

print("\nF = sigma x M:")
r = f_series("1/4", 3).value
print(f"  F_(1/4)(3) = {mp.nstr(r, 15)}  vs  {mp.nstr(mp.mpf(3) / 4 * m_series('1/4', 3).value, 15)}")

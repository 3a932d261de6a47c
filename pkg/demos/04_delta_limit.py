"""The sigma -> 1 limit: M_sigma concentrates into a delta at x = 1.

Compares the leading-order limit form, the Kreis-Pipkin steepest-descent
integral and the convergent series for epsilon = 1 - sigma.
"""

from wrightaux import kreis_pipkin, m_limit_pos, m_series
from wrightaux.limit import figure_grid, grid_argmax

for eps in (0.1, 0.05):
    print(f"epsilon = {eps}")
    for x in (0.9, 1.0, 1.1, 1.2, 1.3):
        s = float(m_series(1 - eps, x).value)
        print(f"  x={x}: series {s:9.5f}  limit {m_limit_pos(eps, x):9.5f}  KP {kreis_pipkin(eps, x):9.5f}")

print("\nPeak location of the limit form:")
for eps in (0.1, 0.01, 0.001):
    print(f"  epsilon={eps}: argmax {grid_argmax(figure_grid(eps, 0.2, 2.0, 1801)):.3f}")

"""Expansion coefficients c_j(sigma), computed two independent ways.

c_closed uses polynomial closed forms (up to j = 6); c_algorithm inverts a
factorial expansion with exact rational arithmetic for rational sigma and works
to any order. Agreement between the two is the coefficient cross-check.
"""

from wrightaux import c_algorithm, c_closed, stirling_coeffs

for sigma in ("1/4", "3/4"):
    closed = c_closed(sigma, 7)
    algo = c_algorithm(sigma, 7)
    print(f"sigma = {sigma}")
    for j in range(7):
        print(f"  c_{j}: closed {float(closed[j]):+.10f}   algorithm {float(algo[j]):+.10f}   exact {algo.exact[j]}")

print("\nc_1 vanishes identically at sigma = 1/2:", c_algorithm("1/2", 3)[1])
print("Stirling coefficients g_0..g_5:", [str(g) for g in stirling_coeffs(5).gammas])

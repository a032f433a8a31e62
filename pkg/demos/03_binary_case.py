"""The doubling map (d = 2) is solvable in closed form.

h_n has an explicit sum, the growth rate is 2^-q for q <= 1 and 1/2 beyond,
and Hurwitz zeta functions furnish a whole family of eigenfunctions.
"""

import math

import numpy as np

from xferspec.binary import (
    In_binary,
    binary_rates,
    conjecture_F,
    h_infinity_even,
    hn_binary,
    normalized_limit,
    zeta_eigenfunction,
)
from xferspec.transfer import eigen_residual
from xferspec.weights import cos_power

print("q      c      I_14^(1/14)")
for q in (0.3, 0.7, 1.0, 2.0, 3.0):
    print(f"{q:4.1f}  {binary_rates(q).c:.4f}  {In_binary(q, 14) ** (1 / 14):.4f}")

t = np.arange(1, 512) / 512
u = zeta_eigenfunction(3.0, 2.5)
lam = 2.0 ** (2.5 - 3 - 1)
res = eigen_residual(cos_power(3.0), 2, u, lam, grid=t) / np.max(np.abs(u(t)))
print(f"\nzeta eigenfunction q=3, s=2.5: eigenvalue {lam:.4f}, relative residual {res:.1e}")

print("\nnormalised iterates approach their limit (sup error on a 1024 grid):")
grid = np.arange(1024) / 1024
for q in (0.5, 1.0, 4.0):
    lim = normalized_limit(q)
    errs = [np.max(np.abs(lim.scale(n) * hn_binary(q, n, grid) - lim.limit(grid))) for n in (6, 9, 12)]
    print(f"  q = {q}: " + "  ".join(f"{e:.2e}" for e in errs))
print(f"limit at t = 1/2 for q = 1: {normalized_limit(1).limit(0.5):.6f} (2 ln 2 / pi = {2 * math.log(2) / math.pi:.6f})")

print("\nh_inf for q = 6 at t = 0, 1/4, 1/2:", np.round(h_infinity_even(6, np.array([0, 0.25, 0.5])), 6))
print("F(s) at s = 1.5, 2, 3:", [round(conjecture_F(s), 6) for s in (1.5, 2.0, 3.0)])

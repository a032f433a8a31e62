"""Growth rates for even powers of cosine.

For f = cos^q(pi t) with q even, the weight is a trigonometric polynomial and
the truncated Fourier matrix is exact: the growth rate c(f) is its dominant
eigenvalue. For d = 3 the first few values have closed forms.
"""

import math

import numpy as np

from xferspec.fourier_matrix import c_even_exact, symmetric_matrix_C
from xferspec.weights import cos_power, fourier_coefficients

print("d = 3, exact growth rates c(q) for even q")
for q in range(2, 13, 2):
    print(f"  q = {q:2d}   c = {c_even_exact(3, q).lower:.12f}")

# the folded matrix for q = 6 is 2x2 and its top eigenvalue is (13 + sqrt 79)/64
C = symmetric_matrix_C(fourier_coefficients(cos_power(6), 3), 3, 1)
print("\nfolded matrix for q = 6 (times 64):")
print(np.round(64 * C).astype(int))
print(f"(13 + sqrt 79) / 64 = {(13 + math.sqrt(79)) / 64:.12f}")

# for d = 2 every even power gives exactly 1/2
print("\nd = 2:", [c_even_exact(2, q).lower for q in (2, 4, 6, 8)])

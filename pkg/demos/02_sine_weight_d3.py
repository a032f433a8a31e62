"""Enclosing c(|sin|) for d = 3, and what it says about Cantor-measure multipliers.

Three routes, in increasing sharpness:

* trigonometric envelopes of |sin| give matrix upper bounds,
* the cosine-sum form of h_n gives certified min/max and so r_n^(1/n), R_n^(1/n),
* Collatz-Wielandt quotients h_{n+1}/h_n with unit h_n pin c to about 1e-4.
"""

from xferspec.cosine_expansion import cosine_iterate, exact_bounds_d3
from xferspec.fourier_matrix import sine_upper_bound
from xferspec.multiplier import c_enclosure_d3, delta_threshold
from xferspec.transfer import quotient_interval
from xferspec.weights import sin_power

print("envelope upper bounds rho(C_N):")
for N in (1, 5, 10, 50, 100):
    print(f"  N = {N:3d}  {sine_upper_bound(3, N):.7f}")

print("\ncertified [r_n^(1/n), R_n^(1/n)] from the cosine sums:")
for n in (1, 5, 10, 15, 20):
    iv = exact_bounds_d3(n)
    print(f"  n = {n:2d}  [{iv.lower:.7f}, {iv.upper:.7f}]  terms = {len(cosine_iterate(n))}")

print("\nquotient bounds with unit h_n:")
for n in range(5):
    iv = quotient_interval(sin_power(1.0), 3, n)
    print(f"  unit h_{n}  [{iv.lower:.7f}, {iv.upper:.7f}]  width {iv.width:.1e}")

th = delta_threshold(1.0, c_enclosure_d3(1.0, n=3))
print(f"\nL1 multiplier threshold delta(1) in [{th.lower:.6f}, {th.upper:.6f}]")

"""Operator norms on L^p by duality, checked against random test functions.

||L_q||_{p->p} = ||L_{q p'} 1||_inf^(1/p'). Here the formula is compared with
the largest ratio ||L_q u||_p / ||u||_p over a batch of band-limited u, some
random and some shaped to be nearly extremal.
"""

import math

import numpy as np

from xferspec.lp import lp_operator_norm, lp_spectral_radius

rng = np.random.default_rng(0)
M, N = 4096, 128


def ratio(q, p, d, c):
    # u sampled on the d*M grid so that preimages of j/M are grid points
    k = np.arange(-N, N + 1)
    x = np.arange(d * M) / (d * M)
    u = np.real(np.exp(2j * np.pi * np.outer(x, k)) @ c)
    Lu = (np.abs(np.cos(np.pi * x)) ** q * u).reshape(d, M).sum(axis=0) / d
    return (np.mean(np.abs(Lu) ** p) / np.mean(np.abs(u) ** p)) ** (1 / p)


for q, p, d in [(1.0, 2.0, 2), (0.5, 3.0, 3)]:
    pp = p / (p - 1)
    best = 0.0
    for _ in range(20):
        c = rng.normal(size=2 * N + 1) + 1j * rng.normal(size=2 * N + 1)
        c = (c + np.conj(c[::-1])) / 2
        best = max(best, ratio(q, p, d, c))
    # Holder-extremal bumps at the preimages of t0 = 0
    width = np.maximum(0, 1 - np.abs(np.arange(-N, N + 1)) / (N + 1))
    k = np.arange(-N, N + 1)
    c = sum(abs(math.cos(math.pi * j / d)) ** (q * (pp - 1)) * width * np.exp(-2j * np.pi * k * j / d) for j in range(d))
    best = max(best, ratio(q, p, d, c))
    print(f"q={q} p={p} d={d}: formula {lp_operator_norm(q, p, d):.6f}, best ratio {best:.6f}")

print("\nrho_p(L_1) for d = 2:", {p: round(lp_spectral_radius(1.0, p, 2).upper, 6) for p in (1.5, 2.0, 4.0, math.inf)})

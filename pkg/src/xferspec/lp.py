"""The cosine-weighted transfer operator ``L_q`` on ``L^p(T)``.

Duality with the composition operator turns every ``L^p`` question into one
about ``h_n = L_{q p'}^n 1`` on ``C(T)``, where ``p' = p/(p-1)``.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

from .binary import binary_rates, zeta_eigenfunction
from .fourier_matrix import c_even_exact
from .transfer import SpectralInterval, iterate_extrema, quotient_interval, transfer_value_hn
from .weights import cos_power

__all__ = ["conjugate_exponent", "lp_operator_norm", "lp_spectral_radius", "LpEigenfunction", "lp_eigenfunction"]


def conjugate_exponent(p: float) -> float:
    if p == math.inf:
        return 1.0
    if not p > 1:
        raise ValueError("need p > 1")
    return p / (p - 1)


def lp_operator_norm(q: float, p: float, d: int, n: int = 1, gridM: int = 4096) -> float:
    """``||L_q^n||_{p->p} = ||L_{q p'}^n 1||_inf^{1/p'}``.

    For ``n = 1`` the supremum of ``h_1`` sits at ``t = 0`` or ``t = 1/2``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pp = conjugate_exponent(p)
    w = cos_power(q * pp)
    if n == 1:
        top = max(transfer_value_hn(w, d, 1, [0.0, 0.5]))
    else:
        top = iterate_extrema(w, d, n, gridM).R_n
    return float(top) ** (1 / pp)


def lp_spectral_radius(q: float, p: float, d: int, n: int = 3, gridM: int = 4096) -> SpectralInterval:
    """Enclosure of ``rho_p(L_q) = rho(L_{q p'})^{1/p'}``.

    ``d = 2`` uses the closed form, even integer ``q p'`` the exact matrix
    value, and anything else Collatz-Wielandt bounds with the unit ``h_n``.
    """
    pp = conjugate_exponent(p)
    qq = q * pp
    if d == 2:
        R = binary_rates(qq).R
        inner = SpectralInterval(R, R, True, "closed", 0)
    elif abs(qq - round(qq)) < 1e-12 and round(qq) % 2 == 0:
        inner = c_even_exact(d, int(round(qq)))
    else:
        inner = quotient_interval(cos_power(qq), d, n, gridM)
    return inner.power(1 / pp)


class LpEigenfunction(NamedTuple):
    u: Callable
    s: float
    eigenvalue: float
    in_Lp: bool


def lp_eigenfunction(q: float, p: float, eps: float) -> LpEigenfunction:
    """``u_s = |sin(pi t)|^q G(s, t)`` with ``s = q + 1/p - eps`` (``d = 2``).

    Eigenvalue ``2^{s-q-1} = 2^{-1/p' - eps}``; ``u_s`` lies in ``L^p``
    exactly when ``(s - q) p < 1``.
    """
    pp = conjugate_exponent(p)
    if not q * pp > 1:
        raise ValueError("the zeta family needs q p' > 1")
    if not 0 < eps < q + 1 / p - 1:
        raise ValueError("need 0 < eps < q + 1/p - 1")
    s = q + 1 / p - eps
    u = zeta_eigenfunction(q, s, allow_singular=True)
    return LpEigenfunction(u, s, 2.0 ** (-1 / pp - eps), (s - q) * p < 1)

"""Hurwitz zeta, Bernoulli polynomials and cotangent-derivative polynomials."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = [
    "hurwitz_zeta",
    "riemann_zeta",
    "bernoulli_polynomial",
    "CotDerivPoly",
    "cot_poly",
]

# B_0..B_8 with B_1 = -1/2
_BERNOULLI = (
    Fraction(1), Fraction(-1, 2), Fraction(1, 6), Fraction(0), Fraction(-1, 30),
    Fraction(0), Fraction(1, 42), Fraction(0), Fraction(-1, 30),
)
# B_2, B_4, ..., B_12 for the Euler-Maclaurin tail
_B2K = (1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730)
_DIRECT_TERMS = 20


def hurwitz_zeta(s: float, t):
    """``zeta(s, t) = sum_{k>=0} (t+k)^{-s}`` for ``s > 1``, ``t > 0``.

    Twenty terms are summed directly and the tail is closed by
    Euler-Maclaurin through the ``B_12`` correction, which keeps the relative
    error near machine precision for ``1 < s <= 40``.
    """
    s = float(s)
    if not s > 1:
        raise ValueError("hurwitz_zeta needs s > 1")
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0) or not np.all(np.isfinite(t)):
        raise ValueError("hurwitz_zeta needs t > 0")
    k = np.arange(_DIRECT_TERMS)
    head = np.sum((t[..., None] + k) ** -s, axis=-1)
    a = t + _DIRECT_TERMS
    tail = a ** (1 - s) / (s - 1) + 0.5 * a**-s
    # term_j = B_{2j}/(2j)! * s(s+1)...(s+2j-2) * a^{-s-2j+1}
    poch = s
    fact = 2.0
    power = a ** (-s - 1)
    for j, b in enumerate(_B2K, start=1):
        tail = tail + b / fact * poch * power
        poch *= (s + 2 * j - 1) * (s + 2 * j)
        fact *= (2 * j + 1) * (2 * j + 2)
        power = power / (a * a)
    out = head + tail
    return float(out) if out.ndim == 0 else out


def riemann_zeta(s: float) -> float:
    return hurwitz_zeta(s, 1.0)


@lru_cache(maxsize=None)
def _bernoulli_coeffs(n: int) -> tuple:
    # B_n(x) = sum_k C(n,k) B_k x^{n-k}; returned lowest power first
    return tuple(math.comb(n, n - j) * _BERNOULLI[n - j] for j in range(n + 1))


def bernoulli_polynomial(n: int, x):
    """Bernoulli polynomial ``B_n(x)`` for ``0 <= n <= 8``."""
    if not 0 <= n <= 8:
        raise ValueError("Bernoulli polynomials are tabulated through degree 8")
    c = [float(v) for v in _bernoulli_coeffs(n)]
    return np.polynomial.polynomial.polyval(np.asarray(x, dtype=float), c)


@dataclass(frozen=True)
class CotDerivPoly:
    """``P_n`` with ``(d/dt)^n cot t = (-1)^n P_n(cos t) / sin(t)^(n+1)``.

    ``coeffs[j]`` is the integer coefficient of ``x**j``.
    """

    n: int
    coeffs: tuple

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for c in reversed(self.coeffs):
            out = out * x + float(c)
        return float(out) if out.ndim == 0 else out

    def deriv(self) -> tuple:
        return tuple(j * c for j, c in enumerate(self.coeffs))[1:] or (0,)


@lru_cache(maxsize=None)
def _cot_table(n: int) -> tuple:
    if n == 0:
        return (0, 1)
    if n == 1:
        return (1,)
    p = list(_cot_table(n - 1))
    m = n - 1
    # P_{m+1} = (m+1) x P_m + (1 - x^2) P_m'
    out = [0] * (len(p) + 1)
    for j, c in enumerate(p):
        out[j + 1] += (m + 1) * c
        if j:
            out[j - 1] += j * c
            out[j + 1] -= j * c
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def cot_poly(n: int) -> CotDerivPoly:
    if not 0 <= n <= 30:
        raise ValueError("cot_poly is tabulated for 0 <= n <= 30")
    return CotDerivPoly(n, _cot_table(n))

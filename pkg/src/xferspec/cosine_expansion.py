"""Exact cosine-sum form of ``h_n`` for ``d = 3`` and ``f = |sin(pi t)|``.

With ``s = t - 1/2`` every iterate is a finite sum ``sum_m A_m cos(pi a_m s)``
with ``A_m > 0`` and frequencies ``a_m = j_m / 3^n`` in ``(0, 1/2)``.  The
minimum of such a sum over ``|s| <= 1/2`` sits at ``s = -1/2`` and the
maximum at ``s = 0``, so ``r_n`` and ``R_n`` come out certified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .transfer import SpectralInterval, transfer_value_hn
from .weights import sin_power

__all__ = ["CosineSum", "apply_transfer_cosine", "cosine_iterate", "exact_bounds_d3", "crosscheck_expansion"]

MAX_DEPTH = 24


@dataclass(frozen=True)
class CosineSum:
    depth: int
    numerators: np.ndarray
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.numerators.shape != self.amplitudes.shape:
            raise ValueError("numerators and amplitudes must align")
        if np.any(self.amplitudes <= 0):
            raise ValueError("amplitudes must stay positive")
        if self.depth >= 1:
            den = 3**self.depth
            if np.any(self.numerators <= 0) or np.any(2 * self.numerators >= den):
                raise ValueError("frequencies must lie in (0, 1/2)")

    @classmethod
    def one(cls) -> "CosineSum":
        return cls(0, np.zeros(1, dtype=np.int64), np.ones(1))

    @property
    def frequencies(self) -> np.ndarray:
        return self.numerators / float(3**self.depth)

    def __len__(self):
        return self.numerators.size

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        s = np.mod(t, 1.0) - 0.5
        a = self.frequencies
        flat = s.ravel()
        out = np.array([math.fsum(self.amplitudes * np.cos(np.pi * a * x)) for x in flat])
        out = out.reshape(s.shape)
        return float(out) if out.ndim == 0 else out

    def at_zero(self) -> float:
        """``h_n(0) = sum A cos(pi a / 2)``, the minimum."""
        return math.fsum(self.amplitudes * np.cos(0.5 * np.pi * self.frequencies))

    def at_half(self) -> float:
        """``h_n(1/2) = sum A``, the maximum."""
        return math.fsum(self.amplitudes)


def apply_transfer_cosine(cs: CosineSum) -> CosineSum:
    """One application of ``L``: ``(A, a) -> (A (1 + 2 cos(pi a')) / 6, a' = (1 +- a)/3)``."""
    den = 3**cs.depth
    num = np.concatenate([den + cs.numerators, den - cs.numerators])
    amp = np.concatenate([cs.amplitudes, cs.amplitudes])
    new_den = 3 * den
    amp = amp * (1 + 2 * np.cos(np.pi * num / new_den)) / 6
    keys, inverse = np.unique(num, return_inverse=True)
    merged = np.bincount(inverse, weights=amp, minlength=keys.size)
    return CosineSum(cs.depth + 1, keys.astype(np.int64), merged)


def cosine_iterate(n: int) -> CosineSum:
    if not 0 <= n <= MAX_DEPTH:
        raise ValueError(f"depth must be in 0..{MAX_DEPTH}")
    cs = CosineSum.one()
    for _ in range(n):
        cs = apply_transfer_cosine(cs)
    return cs


def exact_bounds_d3(n: int) -> SpectralInterval:
    """Certified ``[h_n(0)^{1/n}, h_n(1/2)^{1/n}]`` for ``c(|sin|)``, ``d = 3``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    cs = cosine_iterate(n)
    r, R = cs.at_zero(), cs.at_half()
    if R > math.sqrt(2) * r * (1 + 1e-14):
        raise ArithmeticError(f"R_n <= sqrt(2) r_n violated at n={n}")
    return SpectralInterval(r ** (1 / n), R ** (1 / n), True, "est1", n)


def crosscheck_expansion(n: int, gridM: int = 512) -> float:
    """Largest grid discrepancy between the cosine sum and preimage enumeration."""
    if n > 10:
        raise ValueError("crosscheck limited to n <= 10")
    t = np.arange(gridM) / gridM
    a = cosine_iterate(n)(t)
    b = transfer_value_hn(sin_power(1.0), 3, n, t)
    return float(np.max(np.abs(a - b)))

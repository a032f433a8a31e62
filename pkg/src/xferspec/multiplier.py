"""Cantor-measure Fourier decay and the multiplier threshold ``delta(p)``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fourier_matrix import c_even_exact
from .transfer import ResourceGuardError, SpectralInterval, integral_In, max_preimages, quotient_interval
from .weights import cos_power

__all__ = [
    "CANTOR_DIM",
    "cantor_terms",
    "cantor_tail_bound",
    "cantor_fourier",
    "block_integral",
    "block_ratio",
    "ThresholdInterval",
    "delta_threshold",
    "c_enclosure_d3",
    "geometric_criterion",
]

CANTOR_DIM = math.log(2) / math.log(3)


def cantor_tail_bound(x, J: int):
    """Bound ``sum_{j>J} (pi 3^{-j} |x|)^2 / 2`` on ``|1 - prod_{j>J} cos(pi 3^{-j} x)|``."""
    x = np.asarray(x, dtype=float)
    return (math.pi * np.abs(x)) ** 2 / 2 * 9.0 ** -(J + 1) / (1 - 1 / 9)


def cantor_terms(x, tol: float = 1e-12) -> int:
    """Smallest ``J`` with tail bound below ``tol`` for all ``x`` given."""
    xmax = float(np.max(np.abs(np.asarray(x, dtype=float)))) if np.size(x) else 0.0
    J = 1
    while cantor_tail_bound(xmax, J) > tol:
        J += 1
    return J


def cantor_fourier(x, J: int | None = None):
    """Partial product ``prod_{j=1}^J cos(pi 3^{-j} x)`` of the Cantor-measure transform."""
    x = np.asarray(x, dtype=float)
    if J is None:
        J = cantor_terms(x)
    if J < 1:
        raise ValueError("J must be >= 1")
    out = np.ones_like(x)
    for j in range(1, J + 1):
        out = out * np.cos(math.pi * x / 3.0**j)
    return float(out) if out.ndim == 0 else out


def block_integral(k: int, m: int = 32) -> float:
    """``int_{3^k}^{3^{k+1}} |mu_hat(x)| dx`` via the substitution ``x = 3^k y``.

    The integrand ``|mu_hat(y)| prod_{j<k} |cos(pi 3^j y)|`` on ``[1, 3]``
    oscillates on the scale ``3^{-k}``; the midpoint rule uses ``m`` points
    per such cell.
    """
    if not 0 <= k <= 12:
        raise ValueError("need 0 <= k <= 12")
    total = 2 * m * 3**k
    if total > max_preimages():
        raise ResourceGuardError(f"{total} quadrature points exceed the limit")
    J = cantor_terms(3.0)
    acc = []
    chunk = 2**19
    for start in range(0, total, chunk):
        y = 1 + 2 * (np.arange(start, min(total, start + chunk)) + 0.5) / total
        v = np.abs(cantor_fourier(y, J))
        for j in range(k):
            v = v * np.abs(np.cos(math.pi * 3.0**j * y))
        acc.append(np.sum(v))
    return 3.0**k * 2 * math.fsum(acc) / total


def block_ratio(k: int) -> float:
    """``block_integral(k) / (3^k I_k(|cos|))`` with ``d = 3``."""
    return block_integral(k) / (3.0**k * integral_In(cos_power(1.0), 3, k))


def c_enclosure_d3(p: float, n: int = 3, gridM: int = 4096) -> SpectralInterval:
    """Enclosure of ``c(p)`` for ``|cos|^p`` and ``d = 3``.

    Even integers use the exact matrix value; otherwise Collatz-Wielandt
    bounds with the unit ``h_n`` (grid extrema, so uncertified).
    """
    if float(p).is_integer() and int(p) % 2 == 0:
        return c_even_exact(3, int(p))
    return quotient_interval(cos_power(p), 3, n, gridM)


def _delta(p: float, c: float) -> float:
    return CANTOR_DIM - 1 + 1 / p + math.log(c) / (p * math.log(3))


@dataclass(frozen=True)
class ThresholdInterval:
    """Enclosure of ``delta(p)``.

    ``sufficient`` is True only for ``p = 1``, where ``delta > delta(1)`` is
    equivalent to ``m_delta`` being an ``L^1`` multiplier; for other ``p`` the
    threshold is a necessary condition only.
    """

    p: float
    lower: float
    upper: float
    certified: bool
    sufficient: bool

    def contains(self, x: float) -> bool:
        return self.lower <= x <= self.upper

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "lower": self.lower,
            "upper": self.upper,
            "certified": self.certified,
            "label": "L1 multiplier threshold" if self.sufficient else "necessary-condition threshold",
        }


def delta_threshold(p: float, c_interval: SpectralInterval) -> ThresholdInterval:
    """Image of ``[c_lo, c_hi]`` under ``delta(p) = alpha - 1 + 1/p + log(c^{1/p}) / log 3``.

    The formula is increasing in ``c`` so the endpoints map to endpoints.
    """
    if not p >= 1:
        raise ValueError("need p >= 1")
    if not c_interval.lower > 0:
        raise ValueError("c enclosure must be positive")
    lo, hi = _delta(p, c_interval.lower), _delta(p, c_interval.upper)
    return ThresholdInterval(float(p), lo, hi, c_interval.certified, p == 1)


def geometric_criterion(delta: float, c: float, alpha: float = CANTOR_DIM) -> tuple[bool, bool]:
    """Convergence of ``sum 3^{(alpha-delta-1)k} 3^k c^k`` judged two ways.

    Returns ``(3^{alpha-delta} c < 1, delta > alpha + log c / log 3)``.
    """
    return 3.0 ** (alpha - delta) * c < 1, delta > alpha + math.log(c) / math.log(3)

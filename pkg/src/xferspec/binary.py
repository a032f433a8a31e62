"""The doubling map with weight ``|cos(pi t)|^q``.

For ``d = 2`` the product of cosines telescopes, which gives closed forms for
``I_n`` and ``h_n`` and explicit eigenfunctions built from Hurwitz zeta.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .special import bernoulli_polynomial, cot_poly, hurwitz_zeta, riemann_zeta
from .transfer import ResourceGuardError, max_preimages

__all__ = [
    "In_binary",
    "hn_binary",
    "BinaryRates",
    "binary_rates",
    "ZetaEigenfunction",
    "zeta_eigenfunction",
    "trig_eigenfunction",
    "functional_equation_residual",
    "bernoulli_solution",
    "h_infinity_even",
    "NormalizedLimit",
    "normalized_limit",
    "ConvexityProbe",
    "convexity_probe",
    "conjecture_F",
]


def _ratio_integrand(q: float, n: int, x: np.ndarray) -> np.ndarray:
    # |sin(pi 2^n x)|^q / |sin(pi x)|^q, equal to 2^{qn} at integers
    num = np.abs(np.sin(np.pi * (2**n) * x))
    den = np.abs(np.sin(np.pi * x))
    out = np.empty_like(x)
    ok = den > 0
    out[ok] = (num[ok] / den[ok]) ** q
    out[~ok] = 2.0 ** (q * n)
    return out


def In_binary(q: float, n: int, m: int = 32) -> float:
    """``I_n = 2^{-qn} int_0^1 |sin(pi 2^n t)|^q / |sin(pi t)|^q dt`` by the midpoint rule.

    ``m`` points per oscillation cell of width ``2^{-n}``; the integrand is
    symmetric about ``1/2`` so only ``[0, 1/2]`` is sampled.
    """
    if not q > 0 or n < 1:
        raise ValueError("need q > 0 and n >= 1")
    total = m * 2**n
    if total > max_preimages():
        raise ResourceGuardError(f"{total} quadrature points exceed the limit")
    half = total // 2
    chunk = 2**20
    acc = []
    for start in range(0, half, chunk):
        x = (np.arange(start, min(half, start + chunk)) + 0.5) / total
        acc.append(np.sum(_ratio_integrand(q, n, x)))
    return math.fsum(acc) * 2 / total / 2.0 ** (q * n)


def hn_binary(q: float, n: int, t):
    """Closed form ``h_n(t) = |sin(pi t)|^q 2^{-n(1+q)} sum_k |sin(pi (t+k)/2^n)|^{-q}``."""
    if not q > 0 or n < 1:
        raise ValueError("need q > 0 and n >= 1")
    t = np.mod(np.asarray(t, dtype=float), 1.0)
    flat = t.ravel()
    k = np.arange(2**n, dtype=float)
    out = np.empty_like(flat)
    chunk = max(1, 2**21 // 2**n)
    for i in range(0, flat.size, chunk):
        x = flat[i : i + chunk]
        zero = x == 0.0
        xs = np.where(zero, 0.5, x)
        # distance of (x + k)/2^n to the nearest integer, formed without cancellation
        near = np.minimum(xs[:, None] + k, (2**n - k) - xs[:, None]) / 2**n
        s = np.sum(np.sin(np.pi * near) ** -q, axis=1)
        val = np.sin(np.pi * np.minimum(xs, 1 - xs)) ** q * s / 2.0 ** (n * (1 + q))
        out[i : i + chunk] = np.where(zero, 2.0**-n, val)
    out = out.reshape(t.shape)
    return float(out) if out.ndim == 0 else out


class BinaryRates(NamedTuple):
    c: float
    r: float
    R: float


def binary_rates(q: float) -> BinaryRates:
    """Exact growth rate ``c`` and extremal rates ``r``, ``R`` for ``d = 2``."""
    if not q > 0:
        raise ValueError("q must be positive")
    top = 2.0**-q if q <= 1 else 0.5
    return BinaryRates(top, 0.5, top)


@dataclass(frozen=True)
class ZetaEigenfunction:
    """``u(t) = |sin(pi t)|^q G(s, t)`` with ``L u = 2^{s-q-1} u`` on ``(0, 1)``.

    ``form`` is ``zeta_pair`` (``G = zeta(s,t) + zeta(s,1-t)``) or
    ``trigpoly`` (``G = zeta(s,t) + (-1)^s zeta(s,1-t)`` for integer ``s``,
    evaluated through the cotangent-derivative polynomial).
    """

    q: float
    s: float
    form: str
    eigenvalue: float

    def G(self, t):
        t = np.asarray(t, dtype=float)
        sign = 1.0 if self.form == "zeta_pair" else (-1.0) ** int(self.s)
        return hurwitz_zeta(self.s, t) + sign * hurwitz_zeta(self.s, 1.0 - t)

    def __call__(self, t):
        t = np.mod(np.asarray(t, dtype=float), 1.0)
        if self.form == "trigpoly":
            s = int(self.s)
            P = cot_poly(s - 1)
            sn = np.sin(np.pi * t)
            out = math.pi**s / math.factorial(s - 1) * P(np.cos(np.pi * t)) * sn ** (self.q - s)
            return float(out) if out.ndim == 0 else out
        edge = t == 0.0
        inner = np.where(edge, 0.5, t)
        val = np.abs(np.sin(np.pi * inner)) ** self.q * self.G(inner)
        if self.s == self.q:
            limit = math.pi**self.q
        elif self.s < self.q:
            limit = 0.0
        else:
            limit = math.inf
        out = np.where(edge, limit, val)
        return float(out) if out.ndim == 0 else out


def zeta_eigenfunction(q: float, s: float, allow_singular: bool = False) -> ZetaEigenfunction:
    """Continuous eigenfunction ``|sin|^q (zeta(s,t) + zeta(s,1-t))`` for ``1 < s <= q``.

    With ``allow_singular`` the range ``s > q`` is accepted as well (the
    function is then unbounded at the endpoints).
    """
    if not s > 1:
        raise ValueError("need s > 1")
    if s > q and not allow_singular:
        raise ValueError("s > q gives an unbounded eigenfunction")
    return ZetaEigenfunction(float(q), float(s), "zeta_pair", 2.0 ** (s - q - 1))


def trig_eigenfunction(q: int, s: int) -> ZetaEigenfunction:
    """Trigonometric-polynomial eigenfunction for even ``q`` and ``s = 2..q``."""
    if q < 2 or q % 2 or not 2 <= s <= q:
        raise ValueError("need even q >= 2 and 2 <= s <= q")
    return ZetaEigenfunction(float(q), float(s), "trigpoly", 2.0 ** (s - q - 1))


def functional_equation_residual(g: Callable, mu: float, gridM: int = 1024, relative: bool = False) -> float:
    """``max |g(t/2)/2 + g((t+1)/2)/2 - mu g(t)|`` over the midpoints ``(j+1/2)/gridM``.

    With ``relative`` the maximum is divided by ``max |mu g(t)|`` on the grid.
    """
    t = (np.arange(gridM) + 0.5) / gridM
    gt = np.asarray(g(t), dtype=float)
    r = 0.5 * np.asarray(g(t / 2), dtype=float) + 0.5 * np.asarray(g((t + 1) / 2), dtype=float) - mu * gt
    err = float(np.max(np.abs(r)))
    if relative:
        err /= float(np.max(np.abs(mu * gt)))
    return err


def bernoulli_solution(n: int) -> tuple[Callable, float]:
    """``(B_n, 2^{-n})``: a solution of the dyadic functional equation."""
    return (lambda t: bernoulli_polynomial(n, t)), 2.0**-n


def h_infinity_even(q_even: int, t):
    """``lim 2^n h_n(t) = P_{q-1}(cos(pi t)) / (q-1)!`` for even ``q >= 2``."""
    if q_even < 2 or q_even % 2:
        raise ValueError("q must be an even integer >= 2")
    P = cot_poly(q_even - 1)
    return P(np.cos(np.pi * np.asarray(t, dtype=float))) / math.factorial(q_even - 1)


class NormalizedLimit(NamedTuple):
    scale: Callable[[int], float]
    limit: Callable


def normalized_limit(q: float) -> NormalizedLimit:
    """Normalisation ``scale(n)`` with ``scale(n) h_n -> limit`` uniformly."""
    if not q > 0:
        raise ValueError("q must be positive")
    if q < 1:
        const = math.gamma(0.5 - q / 2) / (math.sqrt(math.pi) * math.gamma(1 - q / 2))
        return NormalizedLimit(
            lambda n: 2.0 ** (q * n),
            lambda t: const * np.abs(np.sin(np.pi * np.asarray(t, dtype=float))) ** q,
        )
    if q == 1:
        const = 2 * math.log(2) / math.pi
        return NormalizedLimit(
            lambda n: 2.0**n / n,
            lambda t: const * np.abs(np.sin(np.pi * np.asarray(t, dtype=float))),
        )
    if float(q).is_integer() and int(q) % 2 == 0:
        return NormalizedLimit(lambda n: 2.0**n, lambda t: h_infinity_even(int(q), t))
    u = zeta_eigenfunction(q, q)
    return NormalizedLimit(lambda n: 2.0**n, lambda t: u(t) / math.pi**q)


class ConvexityProbe(NamedTuple):
    second_derivative_at_half: float
    sign_at_half: int
    concave_everywhere: bool | None


def convexity_probe(q: float, n: int, step: float = 1e-4, grid: int = 512) -> ConvexityProbe:
    """Sign of ``h_n''(1/2)`` and, for ``q <= 1``, a concavity scan on ``(0, 1)``.

    Values are rescaled by ``2^{n(1+q)}`` before differencing; the sign is
    reported only when the difference quotient exceeds ten times its
    rounding floor.
    """
    if n > 14 or n < 1:
        raise ValueError("need 1 <= n <= 14")
    scale = 2.0 ** (n * (1 + q))
    v = scale * hn_binary(q, n, np.array([0.5 - step, 0.5, 0.5 + step]))
    est = (v[0] - 2 * v[1] + v[2]) / step**2
    floor = 4 * np.finfo(float).eps * 2**n * np.max(np.abs(v)) / step**2
    sign = 0 if abs(est) <= 10 * floor else int(np.sign(est))
    concave = None
    if q <= 1:
        t = np.arange(1, grid) / grid
        h = scale * hn_binary(q, n, t)
        concave = bool(np.all(h[:-2] - 2 * h[1:-1] + h[2:] < 0))
    return ConvexityProbe(float(est / scale), sign, concave)


def conjecture_F(s: float) -> float:
    """``F(s) = 2(s+1)(2^{s+2}-1) zeta(s+2) - 2 pi^2 (2^s-1) zeta(s)``."""
    if not s > 1:
        raise ValueError("F is defined for s > 1")
    return 2 * (s + 1) * (2 ** (s + 2) - 1) * riemann_zeta(s + 2) - 2 * math.pi**2 * (2**s - 1) * riemann_zeta(s)

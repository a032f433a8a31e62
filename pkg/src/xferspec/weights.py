"""Periodic weights on the circle and their Fourier data.

A weight is a nonnegative 1-periodic function ``f``.  Four families are
supported:

* ``cos``  -- ``|cos(pi t)|**q``
* ``sin``  -- ``|sin(pi t)|**q``
* ``trig`` -- a real even trigonometric polynomial ``sum a_k e^{2 pi i k t}``
* ``step`` -- constant ``v_i`` on ``[(i-1)/d, i/d)``
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "TrigPolynomial",
    "PeriodicWeight",
    "WeightClass",
    "cos_power",
    "sin_power",
    "trig_weight",
    "step_weight",
    "eval_weight",
    "fourier_coefficients",
    "classify_weight",
    "krein_from_zeros",
    "sine_envelopes",
    "parse_weight",
]

KINDS = ("cos", "sin", "trig", "step")


@dataclass(frozen=True, eq=False)
class TrigPolynomial:
    """Real even trigonometric polynomial.

    ``coeffs[k]`` holds ``a_k = a_{-k}`` for ``k = 0..N``.  ``method`` records
    how the coefficients were obtained and ``error`` an estimate of their
    absolute error (zero for closed forms).
    """

    coeffs: np.ndarray
    method: str = "exact"
    error: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).ravel()
        if c.size == 0:
            raise ValueError("a trigonometric polynomial needs at least a_0")
        if not np.all(np.isfinite(c)):
            raise ValueError("coefficients must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    def __eq__(self, other):
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        return np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self):
        return hash(self.coeffs.tobytes())

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    def a(self, k: int) -> float:
        k = abs(int(k))
        return float(self.coeffs[k]) if k <= self.degree else 0.0

    def full(self) -> np.ndarray:
        """Coefficients indexed ``-N..N``."""
        return np.concatenate([self.coeffs[:0:-1], self.coeffs])

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        k = np.arange(1, self.degree + 1)
        out = self.coeffs[0] + 2.0 * np.cos(2 * np.pi * np.multiply.outer(t, k)) @ self.coeffs[1:]
        return out if out.ndim else float(out)

    def derivative(self, t):
        t = np.asarray(t, dtype=float)
        k = np.arange(1, self.degree + 1)
        out = -4 * np.pi * np.sin(2 * np.pi * np.multiply.outer(t, k)) @ (k * self.coeffs[1:])
        return out if out.ndim else float(out)

    def shifted(self, c0: float) -> "TrigPolynomial":
        """Same polynomial plus the constant ``c0``."""
        c = self.coeffs.copy()
        c[0] += c0
        return TrigPolynomial(c, self.method, self.error)


@dataclass(frozen=True)
class PeriodicWeight:
    kind: str
    q: float | None = None
    poly: TrigPolynomial | None = None
    values: tuple = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.kind in ("cos", "sin"):
            if self.q is None or not (self.q > 0) or not math.isfinite(self.q):
                raise ValueError("power weights need a finite exponent q > 0")
        elif self.kind == "trig":
            if self.poly is None:
                raise ValueError("trig weights need coefficients")
        else:
            vals = tuple(float(v) for v in self.values)
            if len(vals) < 2:
                raise ValueError("step weights need d >= 2 values")
            if not all(math.isfinite(v) and v >= 0 for v in vals):
                raise ValueError("step values must be finite and nonnegative")
            object.__setattr__(self, "values", vals)

    def __call__(self, t):
        return eval_weight(self, t)

    def __str__(self):
        if self.kind in ("cos", "sin"):
            return f"{self.kind}^{self.q:g}"
        if self.kind == "trig":
            return "trig:" + json.dumps([float(a) for a in self.poly.coeffs])
        return "step:" + json.dumps(list(self.values))

    @property
    def even_power(self) -> int | None:
        """``q`` as an int when it is a positive even integer, else None."""
        if self.kind in ("cos", "sin") and float(self.q).is_integer() and int(self.q) % 2 == 0:
            return int(self.q)
        return None


def cos_power(q: float) -> PeriodicWeight:
    return PeriodicWeight("cos", q=float(q))


def sin_power(q: float) -> PeriodicWeight:
    return PeriodicWeight("sin", q=float(q))


def trig_weight(coeffs: Sequence[float]) -> PeriodicWeight:
    return PeriodicWeight("trig", poly=TrigPolynomial(np.asarray(coeffs, dtype=float)))


def step_weight(values: Sequence[float]) -> PeriodicWeight:
    return PeriodicWeight("step", values=tuple(values))


def eval_weight(w: PeriodicWeight, t):
    """Evaluate ``w`` at ``t`` (scalar or array), reducing ``t`` mod 1."""
    t = np.asarray(t, dtype=float)
    if not np.all(np.isfinite(t)):
        raise ValueError("weight evaluated at a non-finite point")
    if w.kind in ("cos", "sin"):
        # sin(pi * distance to the nearest zero) is exact at the zeros and
        # keeps full relative precision beside them, which matters for q < 1
        u = np.mod(t + 0.5, 1.0) if w.kind == "cos" else np.mod(t, 1.0)
        out = np.sin(np.pi * np.minimum(u, 1.0 - u)) ** w.q
    elif w.kind == "trig":
        out = np.asarray(w.poly(t))
    else:
        vals = np.asarray(w.values)
        d = vals.size
        idx = np.minimum(np.floor(np.mod(t, 1.0) * d).astype(int), d - 1)
        out = vals[idx]
    return out if out.ndim else float(out)


def _midpoint_cosine_coeffs(func, N: int, M: int) -> np.ndarray:
    x = (np.arange(M) + 0.5) / M
    fx = func(x)
    k = np.arange(N + 1)
    return np.cos(2 * np.pi * np.multiply.outer(k, x)) @ fx / M


def fourier_coefficients(w: PeriodicWeight, N: int, M: int | None = None) -> TrigPolynomial:
    """Fourier coefficients ``a_0..a_N`` of an even weight.

    Closed forms are used for even powers of cosine/sine and for
    ``|sin(pi t)|``; anything else goes through a composite midpoint rule with
    ``M >= 4096`` points (a multiple of ``4N``), and the result's ``error``
    is the difference against the rule at half resolution.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    k = np.arange(N + 1)
    m2 = w.even_power
    if m2 is not None:
        m = m2 // 2
        a = np.array([math.comb(m2, kk + m) / 4.0**m if kk <= m else 0.0 for kk in k])
        if w.kind == "sin":
            a = a * (-1.0) ** k
        return TrigPolynomial(a, "closed")
    if w.kind == "sin" and w.q == 1:
        return TrigPolynomial(-(2 / np.pi) / ((2 * k - 1) * (2 * k + 1)), "closed")
    if w.kind == "trig":
        a = np.zeros(N + 1)
        n = min(N, w.poly.degree)
        a[: n + 1] = w.poly.coeffs[: n + 1]
        return TrigPolynomial(a, "exact")
    if w.kind == "step":
        vals = w.values
        if any(abs(v - u) > 0 for v, u in zip(vals, vals[::-1])):
            raise ValueError("step weight is not even, its Fourier coefficients are complex")
    if M is None:
        M = 4096
    lcm = 4 * max(N, 1)
    M = max(M, 4096)
    M = -(-M // lcm) * lcm
    if w.kind == "step":
        # breakpoints i/d must sit on cell edges
        d = len(w.values)
        M = M * d // math.gcd(M, d)
    fine = _midpoint_cosine_coeffs(w, N, M)
    coarse = _midpoint_cosine_coeffs(w, N, M // 2)
    return TrigPolynomial(fine, "quadrature", float(np.max(np.abs(fine - coarse))))


@dataclass(frozen=True)
class WeightClass:
    zeros: tuple
    krein: bool | None
    holder_alpha: float
    reason: str = ""


def krein_from_zeros(zeros: Sequence[float], d: int) -> bool | None:
    """Krein property of ``L`` from the zero set of a continuous weight.

    Zero-free weights give a Krein operator; a single zero does too unless
    ``d == 2`` and the zero is at ``1/2``.  Several isolated zeros are not
    covered and give ``None``.
    """
    if len(zeros) == 0:
        return True
    if len(zeros) == 1:
        s0 = float(zeros[0]) % 1.0
        return not (d == 2 and abs(s0 - 0.5) < 1e-12)
    return None


def _trig_zeros(p: TrigPolynomial, grid: int = 2**14) -> list[float]:
    t = np.arange(grid) / grid
    v = p(t)
    scale = max(float(np.max(np.abs(v))), 1e-300)
    if np.min(v) < -1e-12 * scale:
        raise ValueError("trigonometric weight takes negative values")
    zeros = []
    dv = p.derivative(t)
    for j in range(grid):
        left, right = dv[j - 1], dv[j]
        if v[j] > 1e-6 * scale:
            continue
        if dv[j] == 0.0:
            z = t[j]
        elif not (left < 0 <= right or left <= 0 < right):
            continue
        else:
            a, b = t[j] - 1.0 / grid, t[j]
            while b - a > 1e-12:
                mid = 0.5 * (a + b)
                if p.derivative(mid) < 0:
                    a = mid
                else:
                    b = mid
            z = 0.5 * (a + b)
        if abs(p(z)) <= 1e-10 * scale:
            z = z % 1.0
            if not any(abs(z - y) < 1e-9 or abs(abs(z - y) - 1) < 1e-9 for y in zeros):
                zeros.append(z)
    return sorted(zeros)


def classify_weight(w: PeriodicWeight, d: int) -> WeightClass:
    """Zero set, Krein property of the transfer operator and Hoelder exponent."""
    if d < 2:
        raise ValueError("d must be >= 2")
    if w.kind in ("cos", "sin"):
        zeros = (0.5,) if w.kind == "cos" else (0.0,)
        return WeightClass(zeros, krein_from_zeros(zeros, d), min(w.q, 1.0))
    if w.kind == "trig":
        zeros = tuple(_trig_zeros(w.poly))
        k = krein_from_zeros(zeros, d)
        reason = "several zeros" if k is None else ""
        return WeightClass(zeros, k, 1.0, reason)
    if any(v == 0 for v in w.values):
        return WeightClass((), False, 0.0, "vanishes on an interval")
    return WeightClass((), None, 0.0, "discontinuous step weight")


def sine_envelopes(N: int) -> tuple[TrigPolynomial, TrigPolynomial]:
    """Lower/upper trigonometric envelopes ``g <= |sin(pi t)| <= h`` of degree N.

    Both are the degree-N partial sum of ``|sin(pi t)|`` shifted by the
    tail bound ``(2/pi)/(2N+1)``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    base = fourier_coefficients(sin_power(1.0), N)
    tail = (2 / np.pi) / (2 * N + 1)
    return base.shifted(-tail), base.shifted(tail)


_NUM = r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?"


def parse_weight(spec: str) -> PeriodicWeight:
    """Parse ``cos^Q``, ``sin^Q``, ``trig:[a0,...,aN]`` or ``step:[v1,...,vd]``."""
    s = spec.strip()
    m = re.fullmatch(rf"(cos|sin)\^({_NUM})", s)
    if m:
        return PeriodicWeight(m.group(1), q=float(m.group(2)))
    m = re.fullmatch(r"(trig|step):(\[.*\])", s)
    if m:
        try:
            vals = json.loads(m.group(2))
        except json.JSONDecodeError as exc:
            raise ValueError(f"bad coefficient list in {spec!r}") from exc
        if not isinstance(vals, list) or not all(isinstance(v, (int, float)) for v in vals):
            raise ValueError(f"bad coefficient list in {spec!r}")
        return trig_weight(vals) if m.group(1) == "trig" else step_weight(vals)
    raise ValueError(f"cannot parse weight {spec!r}")

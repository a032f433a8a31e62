"""Transfer operator iterates by exact preimage enumeration.

``(L u)(t) = d^{-1} sum_i f((t+i)/d) u((t+i)/d)`` and ``h_n = L^n 1``.
Every value of ``h_n`` is a sum over all ``d**n`` preimages of ``t`` under
``t -> d t mod 1``; no interpolation on a grid is ever used, so results are
reproducible bit for bit.
"""

from __future__ import annotations

import contextvars
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from .weights import PeriodicWeight, eval_weight

__all__ = [
    "ResourceGuardError",
    "SpectralInterval",
    "GridSample",
    "Extrema",
    "H1Profile",
    "max_preimages",
    "threads",
    "weight_product_fn",
    "transfer_value_hn",
    "apply_transfer",
    "iterate_extrema",
    "submultiplicative_interval",
    "collatz_wielandt_interval",
    "quotient_interval",
    "integral_In",
    "eigen_residual",
    "h1_profile",
    "h1_constant",
]

DEFAULT_MAX_PREIMAGES = 10**8
# preimage-tree entries handled per chunk
_CHUNK = 2**21

_threads: contextvars.ContextVar[int] = contextvars.ContextVar(
    "xferspec_threads", default=os.cpu_count() or 1
)


class ResourceGuardError(RuntimeError):
    """Raised when a computation would enumerate more preimages than allowed."""


def max_preimages() -> int:
    """The ``d**n`` guard, overridable through ``XFERSPEC_MAX_DEPTH``."""
    env = os.environ.get("XFERSPEC_MAX_DEPTH")
    return int(float(env)) if env else DEFAULT_MAX_PREIMAGES


def _guard(count: int, what: str = "d**n") -> None:
    limit = max_preimages()
    if count > limit:
        raise ResourceGuardError(f"{what} = {count} exceeds the limit {limit} (XFERSPEC_MAX_DEPTH)")


class threads:
    """Context manager fixing the worker count used for chunked grid maps."""

    def __init__(self, n: int):
        self.n = max(1, int(n))

    def __enter__(self):
        self._token = _threads.set(self.n)
        return self

    def __exit__(self, *exc):
        _threads.reset(self._token)


def _map_chunks(fn, t: np.ndarray, chunk: int) -> np.ndarray:
    pieces = [t[i : i + chunk] for i in range(0, t.size, chunk)] or [t]
    n = _threads.get()
    if n == 1 or len(pieces) == 1:
        results = [fn(p) for p in pieces]
    else:
        with ThreadPoolExecutor(n) as ex:
            results = list(ex.map(fn, pieces))
    return np.concatenate(results)


@dataclass(frozen=True)
class SpectralInterval:
    """Enclosure ``[lower, upper]`` of a growth rate or spectral radius."""

    lower: float
    upper: float
    certified: bool
    method: str
    depth: int = 0

    def __post_init__(self):
        if self.method not in ("est1", "quotient", "matrix", "closed", "envelope"):
            raise ValueError(f"unknown method tag {self.method!r}")
        if not (0 <= self.lower <= self.upper):
            raise ValueError(f"invalid interval [{self.lower}, {self.upper}]")

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def contains(self, x: float, slack: float = 0.0) -> bool:
        return self.lower - slack <= x <= self.upper + slack

    def power(self, e: float) -> "SpectralInterval":
        lo, hi = self.lower**e, self.upper**e
        return SpectralInterval(min(lo, hi), max(lo, hi), self.certified, self.method, self.depth)

    def as_dict(self) -> dict:
        return {
            "lower": self.lower,
            "upper": self.upper,
            "certified": self.certified,
            "method": self.method,
            "depth": self.depth,
        }


@dataclass(frozen=True)
class GridSample:
    """Function values at ``t_j = j/M``, ``j = 0..M-1``."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if v.size < 2 or not np.all(np.isfinite(v)):
            raise ValueError("a grid sample needs M >= 2 finite values")
        object.__setattr__(self, "values", v)

    @property
    def M(self) -> int:
        return self.values.size

    @property
    def t(self) -> np.ndarray:
        return np.arange(self.M) / self.M


def _as_float(out):
    return float(out) if np.ndim(out) == 0 else out


def weight_product_fn(w: PeriodicWeight, d: int, n: int, t):
    """``f_n(t) = prod_{j<n} f(d^j t mod 1)``."""
    t = np.asarray(t, dtype=float)
    out = np.ones_like(t)
    x = np.mod(t, 1.0)
    for _ in range(n):
        out = out * eval_weight(w, x)
        x = np.mod(d * x, 1.0)
    return _as_float(out)


def _hn_block(w: PeriodicWeight, d: int, n: int, t: np.ndarray) -> np.ndarray:
    # Preimage tree: after j levels s = (t + k)/d^j and acc = f_j(s).
    s = np.mod(t, 1.0)[:, None]
    acc = np.ones_like(s)
    shift = np.arange(d, dtype=float)
    for _ in range(n):
        s = ((s[:, :, None] + shift) / d).reshape(t.size, -1)
        acc = np.repeat(acc, d, axis=1) * eval_weight(w, s)
    return acc.sum(axis=1) / float(d) ** n


def transfer_value_hn(w: PeriodicWeight, d: int, n: int, t):
    """``h_n(t) = (L^n 1)(t)`` summed over all ``d**n`` preimages of ``t``."""
    if n < 0 or d < 2:
        raise ValueError("need n >= 0 and d >= 2")
    _guard(d**n)
    t = np.asarray(t, dtype=float)
    flat = t.ravel()
    if n == 0:
        return _as_float(np.ones_like(t))
    chunk = max(1, _CHUNK // d**n)
    out = _map_chunks(lambda p: _hn_block(w, d, n, p), flat, chunk)
    return _as_float(out.reshape(t.shape))


def apply_transfer(w: PeriodicWeight, d: int, u: Callable, t):
    """``(L u)(t)`` for a vectorised callable ``u``."""
    t = np.mod(np.asarray(t, dtype=float), 1.0)
    acc = np.zeros_like(t)
    for i in range(d):
        s = (t + i) / d
        acc = acc + eval_weight(w, s) * np.asarray(u(s), dtype=float)
    return _as_float(acc / d)


class Extrema(NamedTuple):
    r_n: float
    R_n: float
    argmin: float
    argmax: float


def _refine(func: Callable[[float], float], t0: float, h: float, sign: float):
    # sign=+1 minimises func, sign=-1 maximises it, inside [t0-h, t0+h]
    res = minimize_scalar(
        lambda x: sign * func(x), bounds=(t0 - h, t0 + h), method="bounded",
        options={"xatol": 1e-10},
    )
    return float(res.x) % 1.0, sign * float(res.fun)


def _grid_extrema(func: Callable, grid_values: np.ndarray, M: int):
    t = np.arange(M) / M
    jmin, jmax = int(np.argmin(grid_values)), int(np.argmax(grid_values))
    tmin, vmin = t[jmin], float(grid_values[jmin])
    tmax, vmax = t[jmax], float(grid_values[jmax])
    scalar = lambda x: float(func(np.array([x]))[0])  # noqa: E731
    a, va = _refine(scalar, tmin, 1.0 / M, 1.0)
    if va < vmin:
        tmin, vmin = a, va
    b, vb = _refine(scalar, tmax, 1.0 / M, -1.0)
    if vb > vmax:
        tmax, vmax = b, vb
    return vmin, vmax, tmin, tmax


def h1_constant(w: PeriodicWeight, d: int) -> float | None:
    """Constant value of ``h_1`` for even powers ``q <= 2(d-1)``, else None."""
    q = w.even_power
    if q is not None and q <= 2 * (d - 1):
        return math.comb(q, q // 2) / 2.0**q
    return None


def iterate_extrema(w: PeriodicWeight, d: int, n: int, gridM: int = 4096) -> Extrema:
    """Minimum and maximum of ``h_n`` over the circle.

    The grid ``j/gridM`` is scanned and each extremum is refined to width
    ``1e-10`` inside its bracketing cell.
    """
    if gridM < 256:
        raise ValueError("gridM must be >= 256")
    _guard(d**n)
    c = h1_constant(w, d)
    if c is not None:
        return Extrema(c**n, c**n, 0.0, 0.0)
    func = lambda x: transfer_value_hn(w, d, n, x)  # noqa: E731
    vals = func(np.arange(gridM) / gridM)
    return Extrema(*_grid_extrema(func, np.atleast_1d(vals), gridM))


def _sin_d3_q1(w: PeriodicWeight, d: int) -> bool:
    return d == 3 and w.q == 1.0 and w.kind in ("sin", "cos")


def submultiplicative_interval(w: PeriodicWeight, d: int, n: int, gridM: int = 4096) -> SpectralInterval:
    """``[r_n^{1/n}, R_n^{1/n}]``, which encloses ``rho(L)``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = h1_constant(w, d)
    if c is not None:
        return SpectralInterval(c, c, True, "est1", n)
    if _sin_d3_q1(w, d):
        # h_n is a positive cosine sum: minimum at the zero of f, maximum half a period away
        z = 0.0 if w.kind == "sin" else 0.5
        r, R = transfer_value_hn(w, d, n, np.array([z, z + 0.5]))
        return SpectralInterval(r ** (1 / n), R ** (1 / n), True, "est1", n)
    ex = iterate_extrema(w, d, n, gridM)
    return SpectralInterval(ex.r_n ** (1 / n), ex.R_n ** (1 / n), False, "est1", n)


def collatz_wielandt_interval(
    w: PeriodicWeight, d: int, unit, gridM: int = 4096, depth: int = 0
) -> SpectralInterval:
    """``[min (L w)/w, max (L w)/w]`` for a strictly positive unit ``w``.

    ``unit`` is either a vectorised callable or a :class:`GridSample`.  A grid
    sample of size ``M`` (divisible by ``d``) is only used at the points
    ``t = d j / M`` whose preimages all lie on its grid; callables are
    scanned on ``j/gridM`` and refined.
    """
    if isinstance(unit, GridSample):
        M, v = unit.M, unit.values
        if M % d:
            raise ValueError("grid sample size must be divisible by d")
        if np.any(v <= 0):
            raise ValueError("unit must be strictly positive")
        j = np.arange(M // d)
        t = d * j / M
        idx = j[:, None] + np.arange(d) * (M // d)
        Lw = np.sum(eval_weight(w, idx / M) * v[idx], axis=1) / d
        ratio = Lw / v[d * j]
        return SpectralInterval(float(ratio.min()), float(ratio.max()), False, "quotient", depth)
    t = np.arange(gridM) / gridM
    uv = np.asarray(unit(t), dtype=float)
    if np.any(uv <= 0):
        raise ValueError("unit must be strictly positive")
    ratio_fn = lambda x: apply_transfer(w, d, unit, x) / np.asarray(unit(x))  # noqa: E731
    vals = apply_transfer(w, d, unit, t) / uv
    lo, hi, _, _ = _grid_extrema(ratio_fn, vals, gridM)
    return SpectralInterval(lo, hi, False, "quotient", depth)


def quotient_interval(w: PeriodicWeight, d: int, n: int, gridM: int = 4096) -> SpectralInterval:
    """Collatz-Wielandt bounds with the unit ``h_n``: extrema of ``h_{n+1}/h_n``."""
    c = h1_constant(w, d)
    if c is not None:
        return SpectralInterval(c, c, True, "quotient", n)
    _guard(d ** (n + 1))
    unit = lambda x: transfer_value_hn(w, d, n, x)  # noqa: E731
    return collatz_wielandt_interval(w, d, unit, gridM, depth=n)


def integral_In(w: PeriodicWeight, d: int, n: int, m: int = 32) -> float:
    """``I_n = int_0^1 f_n(t) dt``.

    Step weights constant on the ``d`` cells ``[i/d, (i+1)/d)`` use the exact
    value ``(int f)^n`` (the factors depend on distinct base-``d`` digits);
    everything else the midpoint rule with ``m`` points per cell of width
    ``d**-n``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if w.kind == "step" and len(w.values) == d:
        return float(np.mean(w.values)) ** n
    if m < 32:
        raise ValueError("need at least 32 points per cell")
    total = m * d**n
    _guard(total, "quadrature points")
    chunk = 2**20
    acc = []
    for start in range(0, total, chunk):
        x = (np.arange(start, min(total, start + chunk)) + 0.5) / total
        acc.append(np.sum(weight_product_fn(w, d, n, x)))
    return math.fsum(acc) / total


def eigen_residual(w: PeriodicWeight, d: int, u: Callable, lam: float, gridM: int = 1024, grid=None) -> float:
    """``max_t |(L u)(t) - lam u(t)|`` over ``j/gridM`` (or a supplied grid)."""
    t = np.arange(gridM) / gridM if grid is None else np.asarray(grid, dtype=float)
    r = apply_transfer(w, d, u, t) - lam * np.asarray(u(t), dtype=float)
    return float(np.max(np.abs(r)))


@dataclass(frozen=True)
class H1Profile:
    constant: float | None
    k: int | None
    increasing: bool | None
    boundary: bool = False


def _h1_sin_derivative(q: float, d: int, t: np.ndarray) -> np.ndarray:
    x = np.pi * (t[:, None] + np.arange(d)) / d
    return (np.pi * q / d**2) * np.sum(np.sin(x) ** q / np.tan(x), axis=1)


def h1_profile(q: float, d: int, grid: int = 2048) -> H1Profile:
    """Shape of ``h_1`` for ``f = |sin(pi t)|^q``.

    Returns the constant value when ``q`` is an even integer ``<= 2(d-1)``;
    otherwise the class ``k`` with ``q`` in ``Q_k`` together with the sign of
    ``h_1'`` on ``(0, 1/2)`` as observed on a grid.
    """
    if not q > 0 or d < 2:
        raise ValueError("need q > 0 and d >= 2")
    c = h1_constant(PeriodicWeight("sin", q=float(q)), d)
    if c is not None:
        return H1Profile(c, None, None)
    k = d if q > 2 * (d - 1) else int(math.floor(q / 2)) + 1
    t = (np.arange(1, grid) / grid) * 0.5
    der = _h1_sin_derivative(q, d, t)
    floor = 1e-12 * np.max(np.abs(der))
    expected = (-1) ** (k - 1)
    if np.all(expected * der > floor):
        return H1Profile(None, k, expected > 0)
    return H1Profile(None, k, None, boundary=True)

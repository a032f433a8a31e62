"""Reproducible tables, plot series and conjecture probes."""

from __future__ import annotations

import io
import math
from typing import Callable

import numpy as np

from .binary import In_binary, binary_rates, conjecture_F
from .cosine_expansion import exact_bounds_d3
from .fourier_matrix import c_even_exact, sine_lower_envelope_radius, sine_upper_bound
from .lp import lp_operator_norm, lp_spectral_radius
from .multiplier import c_enclosure_d3, delta_threshold
from .transfer import h1_constant, h1_profile, quotient_interval, transfer_value_hn
from .weights import PeriodicWeight, cos_power, sin_power

__all__ = ["TABLES", "PLOTS", "make_table", "make_plot", "to_csv", "probe_conjectures"]

ENVELOPE_N = (1, 2, 3, 4, 5, 10, 20, 30, 50, 100)


def _strichartz(nmax: int | None) -> list[dict]:
    return [{"q": 2 * N, "c": c_even_exact(3, 2 * N).lower} for N in range(1, (nmax or 5) + 1)]


def _envelope(nmax: int | None) -> list[dict]:
    rows = []
    for N in ENVELOPE_N:
        if nmax is not None and N > nmax:
            break
        rows.append({"N": N, "upper": sine_upper_bound(3, N), "rho_lower_envelope": sine_lower_envelope_radius(3, N)})
    return rows


def _sine_d3(nmax: int | None) -> list[dict]:
    rows = []
    for n in range(1, (nmax or 15) + 1):
        iv = exact_bounds_d3(n)
        rows.append({"n": n, "lower": iv.lower, "upper": iv.upper, "certified": iv.certified})
    return rows


def _quotient(nmax: int | None) -> list[dict]:
    rows = []
    for n in range(0, (nmax or 3) + 1):
        iv = quotient_interval(sin_power(1.0), 3, n)
        rows.append({"unit": f"h_{n}", "lower": iv.lower, "upper": iv.upper, "certified": iv.certified})
    return rows


def _binary(nmax: int | None) -> list[dict]:
    n = nmax or 12
    rows = []
    for q in (0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0):
        br = binary_rates(q)
        rows.append({"q": q, "c": br.c, "r": br.r, "R": br.R, "n": n, "In_root": In_binary(q, n) ** (1 / n)})
    return rows


def _lp(nmax: int | None) -> list[dict]:
    rows = []
    for d in (2, 3):
        for q in (0.5, 1.0, 2.0):
            for p in (1.5, 2.0, 4.0, math.inf):
                iv = lp_spectral_radius(q, p, d)
                rows.append({
                    "d": d, "q": q, "p": p if p != math.inf else "inf",
                    "norm": lp_operator_norm(q, p, d, 1),
                    "rho_lower": iv.lower, "rho_upper": iv.upper, "certified": iv.certified,
                })
    return rows


TABLES: dict[str, Callable[[int | None], list[dict]]] = {
    "strichartz-even-q": _strichartz,
    "sine-envelope": _envelope,
    "sine-d3-bounds": _sine_d3,
    "quotient-bounds": _quotient,
    "binary-rates": _binary,
    "lp-norms": _lp,
}


def make_table(name: str, nmax: int | None = None) -> list[dict]:
    if name not in TABLES:
        raise ValueError(f"unknown table {name!r}; choose from {', '.join(TABLES)}")
    return TABLES[name](nmax)


def _samples(lo: float, hi: float, points: int, extra=()) -> np.ndarray:
    x = lo + (hi - lo) * np.arange(1, points + 1) / (points + 1)
    extra = [e for e in extra if lo < e < hi]
    return np.unique(np.concatenate([x, extra]))


def _enclosure_curve(weight: Callable[[float], PeriodicWeight], d: int, x: np.ndarray, n: int, grid: int):
    rows = []
    for q in x:
        w = weight(float(q))
        if w.even_power is not None and w.kind == "cos" and d >= 3:
            iv = c_even_exact(d, w.even_power)
        elif h1_constant(w, d) is not None:
            c = h1_constant(w, d)
            rows.append((q, c, c))
            continue
        else:
            iv = quotient_interval(w, d, n, grid)
        rows.append((q, iv.lower, iv.upper))
    return rows


def make_plot(name: str, lo: float | None = None, hi: float | None = None, points: int = 200,
              weight: PeriodicWeight | None = None, d: int | None = None, n: int | None = None,
              grid: int = 512) -> tuple[list[str], list[tuple]]:
    """Header and rows of a plot series.

    ``cq``/``ctildeq``/``deltap`` give enclosure curves ``x,lower,upper``;
    ``Fs`` and ``hn`` give ``x,y``.  ``n`` is the quotient depth (2, or 3
    for ``ctildeq`` where the tail needs it) or the iterate index for ``hn``.
    """
    if name == "cq":
        d = d or 3
        x = _samples(lo if lo is not None else 0.0, hi if hi is not None else 6.0, points,
                     extra=range(2, 64, 2))
        return ["x", "lower", "upper"], _enclosure_curve(cos_power, d, x, n or 2, grid)
    if name == "ctildeq":
        d = d or 2
        x = _samples(lo if lo is not None else 0.0, hi if hi is not None else 20.0, points,
                     extra=range(2, 64, 2))
        return ["x", "lower", "upper"], _enclosure_curve(sin_power, d, x, n or 3, grid)
    if name == "Fs":
        x = _samples(lo if lo is not None else 1.0, hi if hi is not None else 4.0, points, extra=(2.0,))
        return ["x", "y"], [(s, conjecture_F(float(s))) for s in x]
    if name == "deltap":
        x = _samples(lo if lo is not None else 0.0, hi if hi is not None else 1.0, points)
        rows = []
        for inv_p in x:
            p = 1 / float(inv_p)
            iv = delta_threshold(p, c_enclosure_d3(p, n or 2, grid))
            rows.append((inv_p, iv.lower, iv.upper))
        return ["x", "lower", "upper"], rows
    if name == "hn":
        w = weight or sin_power(1.0)
        d = d or 3
        x = np.arange(points) / points
        y = transfer_value_hn(w, d, n or 2, x)
        return ["x", "y"], list(zip(x, np.atleast_1d(y)))
    raise ValueError(f"unknown plot {name!r}; choose from {', '.join(PLOTS)}")


PLOTS = ("cq", "ctildeq", "Fs", "deltap", "hn")


def to_csv(header: list[str], rows: list[tuple]) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(format(float(v), ".15g") for v in row) + "\n")
    return buf.getvalue()


def _expected_quotient_ends(q: float, n: int) -> tuple[float, float] | None:
    # (argmax, argmin) predicted for h_{n+1}/h_n, d = 3
    if 0 < q < 2:
        return (0.0, 0.5) if n % 2 else (0.5, 0.0)
    if 2 < q < 4:
        return (0.0, 0.5)
    if q > 4:
        return (0.5, 0.0)
    return None


def _circ(a: float, b: float) -> float:
    x = abs(a - b) % 1.0
    return min(x, 1 - x)


def probe_conjectures(d: int, q: float, nmax: int = 3, gridM: int = 4096) -> dict:
    """Numerical evidence for the monotonicity and quotient-extremum conjectures.

    For each ``n <= nmax`` the sign of ``h_n'`` on ``(0, 1/2)`` is compared with
    the class predicted from ``h_1`` and, for ``d = 3``, the arg-extrema of
    ``h_{n+1}/h_n`` on the grid are compared with the predicted endpoints.
    """
    if nmax > 10:
        raise ValueError("nmax must be <= 10")
    w = sin_power(q)
    prof = h1_profile(q, d)
    if prof.constant is not None:
        return {"d": d, "q": q, "degenerate": True, "constant": prof.constant, "rows": []}
    t = np.arange(gridM) / gridM
    half = t[(t > 0) & (t < 0.5)]
    expected = (-1) ** (prof.k - 1)
    rows = []
    h_prev = transfer_value_hn(w, d, 1, t)
    for n in range(1, nmax + 1):
        h_next = transfer_value_hn(w, d, n + 1, t)
        vals = transfer_value_hn(w, d, n, half)
        diffs = np.diff(vals)
        monotone = bool(np.all(expected * diffs > 0))
        row = {"n": n, "expected_sign": expected, "monotone": "PASS" if monotone else "FAIL"}
        if d == 3:
            ratio = h_next / h_prev
            amax, amin = float(t[np.argmax(ratio)]), float(t[np.argmin(ratio)])
            pred = _expected_quotient_ends(q, n)
            row.update({"argmax": amax, "argmin": amin})
            if pred is None:
                row["quotient"] = "N/A"
            else:
                ok = _circ(amax, pred[0]) < 1.5 / gridM and _circ(amin, pred[1]) < 1.5 / gridM
                row["quotient"] = "PASS" if ok else "FAIL"
        rows.append(row)
        h_prev = h_next
    return {"d": d, "q": q, "degenerate": False, "k": prof.k, "rows": rows}

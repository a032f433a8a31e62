"""Command-line front end.

    xferspec spectral --weight cos^6 --d 3 --method matrix
    xferspec table --name sine-d3-bounds --nmax 5
    xferspec multiplier --p 1 --c-lower 0.648297 --c-upper 0.648396
    xferspec plot --name Fs --out Fs.csv
    xferspec probe --d 3 --q 1 --nmax 3

Exit codes: 0 success, 2 usage error, 3 resource guard.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field

from .binary import binary_rates
from .cosine_expansion import exact_bounds_d3
from .fourier_matrix import c_even_exact, matrix_radius, sine_upper_bound, truncation_order
from .multiplier import c_enclosure_d3, delta_threshold
from .reports import PLOTS, TABLES, make_plot, make_table, probe_conjectures, to_csv
from .transfer import (
    ResourceGuardError,
    SpectralInterval,
    h1_constant,
    quotient_interval,
    submultiplicative_interval,
    threads,
)
from .weights import PeriodicWeight, fourier_coefficients, parse_weight

__all__ = ["RunResult", "UsageError", "run", "main", "emit_plot_csv"]

METHODS = ("matrix", "est1", "quotient", "closed", "envelope")


class UsageError(ValueError):
    pass


@dataclass
class RunResult:
    command: str
    params: dict
    result: object
    certified: bool
    runtime_ms: float = 0.0
    text: str = field(default="", repr=False)

    def to_json(self) -> str:
        body = {
            "command": self.command,
            "params": self.params,
            "result": self.result,
            "certified": self.certified,
            "runtime_ms": self.runtime_ms,
        }
        return json.dumps(body, indent=2, default=_jsonable) + "\n"


def _jsonable(x):
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"not serialisable: {type(x).__name__}")


def _clean(obj):
    # plain floats only, inf spelled as a string so the output stays strict JSON
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if hasattr(obj, "item"):
        obj = obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    return obj


def _interval(iv: SpectralInterval) -> dict:
    return {k: (float(v) if isinstance(v, float) or hasattr(v, "item") else v) for k, v in iv.as_dict().items()}


def _spectral(w: PeriodicWeight, d: int, method: str, n: int | None, grid: int) -> tuple[dict, bool]:
    if method == "matrix":
        if w.even_power is not None or w.kind == "trig":
            coeffs = fourier_coefficients(w, w.even_power or 1) if w.kind != "trig" else w.poly
            if w.kind == "cos" and d >= 3:
                iv = c_even_exact(d, w.even_power)
                return {"value": iv.lower, "interval": _interval(iv), "equals_c": True}, True
            rho = matrix_radius(coeffs, d)
            positive = bool(all(a > 0 for a in coeffs.coeffs))
            return {
                "value": rho,
                "K": truncation_order(coeffs.degree, d),
                "equals_c": positive,
                "label": "growth rate" if positive else "upper bound",
            }, positive
        raise UsageError("method 'matrix' needs an even power or a trig polynomial weight")
    if method == "est1":
        iv = submultiplicative_interval(w, d, n or 8, grid)
    elif method == "quotient":
        iv = quotient_interval(w, d, 2 if n is None else n, grid)
    elif method == "closed":
        const = h1_constant(w, d)
        if const is not None:
            iv = SpectralInterval(const, const, True, "closed", 1)
        elif d == 2 and w.kind == "cos" and w.q is not None:
            br = binary_rates(w.q)
            return {"value": br.c, "c": br.c, "r": br.r, "R": br.R}, True
        elif d == 3 and w.kind in ("sin", "cos") and w.q == 1.0:
            iv = exact_bounds_d3(n or 15)
        else:
            raise UsageError("no closed form for this weight and d")
    elif method == "envelope":
        if not (w.kind == "sin" and w.q == 1.0) and not (w.kind == "cos" and w.q == 1.0 and d % 2):
            raise UsageError("method 'envelope' applies to |sin| (or |cos| with odd d)")
        return {"value": sine_upper_bound(d, n or 10), "N": n or 10, "label": "upper bound"}, False
    else:
        raise UsageError(f"unknown method {method!r}")
    return {"interval": _interval(iv)}, iv.certified


def _cmd_spectral(a) -> RunResult:
    try:
        w = parse_weight(a.weight)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    result, cert = _spectral(w, a.d, a.method, a.n, a.grid)
    params = {"weight": a.weight, "d": a.d, "method": a.method, "n": a.n, "grid": a.grid}
    val = result.get("value", result.get("interval"))
    text = f"{w} d={a.d} [{a.method}]: {json.dumps(_clean(val))}"
    return RunResult("spectral", params, result, cert, text=text)


def _cmd_table(a) -> RunResult:
    rows = make_table(a.name, a.nmax)
    cert = all(r.get("certified", True) for r in rows)
    cols = list(rows[0]) if rows else []
    lines = ["  ".join(cols)]
    for r in rows:
        lines.append("  ".join(f"{v:.6f}" if isinstance(v, float) else str(v) for v in r.values()))
    return RunResult("table", {"name": a.name, "nmax": a.nmax}, rows, cert, text="\n".join(lines))


def _cmd_multiplier(a) -> RunResult:
    if (a.c_lower is None) != (a.c_upper is None):
        raise UsageError("give both --c-lower and --c-upper or neither")
    if a.c_lower is not None:
        if not 0 < a.c_lower <= a.c_upper:
            raise UsageError("need 0 < c-lower <= c-upper")
        civ = SpectralInterval(a.c_lower, a.c_upper, False, "quotient", 0)
    else:
        civ = c_enclosure_d3(a.p, a.n or 3, a.grid)
    if not a.p >= 1:
        raise UsageError("need p >= 1")
    th = delta_threshold(a.p, civ)
    params = {"p": a.p, "c_lower": a.c_lower, "c_upper": a.c_upper, "n": a.n, "grid": a.grid}
    text = f"delta({a.p:g}) in [{th.lower:.6f}, {th.upper:.6f}]"
    return RunResult("multiplier", params, {**th.as_dict(), "c": _interval(civ)}, th.certified, text=text)


def emit_plot_csv(name: str, out: str | None = None, **kw) -> str:
    """Write the CSV series ``name`` to ``out`` (or return it when ``out`` is None)."""
    header, rows = make_plot(name, **kw)
    csv = to_csv(header, rows)
    if out is not None:
        with open(out, "w", newline="\n") as fh:
            fh.write(csv)
    return csv


def _cmd_plot(a) -> RunResult:
    kw = {"lo": a.lo, "hi": a.hi, "points": a.points, "d": a.d, "grid": a.grid}
    if a.n is not None:
        kw["n"] = a.n
    if a.weight is not None:
        try:
            kw["weight"] = parse_weight(a.weight)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    csv = emit_plot_csv(a.name, None, **kw)
    params = {"name": a.name, **{k: v for k, v in vars(a).items() if k in ("lo", "hi", "points", "d", "n", "weight")}}
    return RunResult("plot", params, {"csv": csv}, False, text=csv.rstrip("\n"))


def _cmd_probe(a) -> RunResult:
    q = a.q if a.q is not None else 1.0
    rep = probe_conjectures(a.d, q, a.nmax)
    lines = [f"d={a.d} q={q:g}" + (" degenerate: h_n constant" if rep["degenerate"] else "")]
    for r in rep["rows"]:
        lines.append("  ".join(f"{k}={v}" for k, v in r.items()))
    return RunResult("probe", {"d": a.d, "q": q, "nmax": a.nmax}, rep, False, text="\n".join(lines))


def _positive_int(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _d_arg(s: str) -> int:
    v = int(s)
    if v < 2:
        raise argparse.ArgumentTypeError("d must be >= 2")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this path")
    common.add_argument("--json", action="store_true", help="emit a JSON RunResult")
    common.add_argument("--threads", type=_positive_int, default=os.cpu_count() or 1)
    common.add_argument("--grid", type=_positive_int, help="grid size (4096; 512 for plot)")

    p = argparse.ArgumentParser(prog="xferspec", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("spectral", parents=[common], help="enclose c(f) for one weight")
    s.add_argument("--weight", required=True)
    s.add_argument("--d", type=_d_arg, default=3)
    s.add_argument("--n", type=int)
    s.add_argument("--method", choices=METHODS, default="quotient")
    s.set_defaults(func=_cmd_spectral)

    t = sub.add_parser("table", parents=[common], help="reproduce a reference table")
    t.add_argument("--name", choices=list(TABLES), required=True)
    t.add_argument("--nmax", type=_positive_int)
    t.set_defaults(func=_cmd_table)

    m = sub.add_parser("multiplier", parents=[common], help="enclose the threshold delta(p)")
    m.add_argument("--p", type=float, default=1.0)
    m.add_argument("--c-lower", type=float)
    m.add_argument("--c-upper", type=float)
    m.add_argument("--n", type=int)
    m.set_defaults(func=_cmd_multiplier)

    g = sub.add_parser("plot", parents=[common], help="emit a CSV series")
    g.add_argument("--name", choices=list(PLOTS), required=True)
    g.add_argument("--lo", type=float)
    g.add_argument("--hi", type=float)
    g.add_argument("--points", type=_positive_int, default=200)
    g.add_argument("--d", type=_d_arg)
    g.add_argument("--n", type=int)
    g.add_argument("--weight")
    g.set_defaults(func=_cmd_plot)

    c = sub.add_parser("probe", parents=[common], help="test the monotonicity/quotient conjectures")
    c.add_argument("--d", type=_d_arg, default=3)
    c.add_argument("--q", type=float)
    c.add_argument("--nmax", type=int, default=3)
    c.set_defaults(func=_cmd_probe)
    return p


def run(argv: list[str] | None = None) -> RunResult:
    """Parse ``argv`` and execute; raises ``UsageError`` or ``ResourceGuardError``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            raise
        raise UsageError("") from None
    if args.grid is None:
        args.grid = 512 if args.command == "plot" else 4096
    t0 = time.perf_counter()
    try:
        with threads(args.threads):
            res = args.func(args)
    except (UsageError, ResourceGuardError):
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    res.runtime_ms = round((time.perf_counter() - t0) * 1e3, 3)
    res.result = _clean(res.result)
    res.params = _clean(res.params)
    res.json_out = args.json
    res.out = args.out
    return res


def main(argv: list[str] | None = None) -> int:
    try:
        res = run(argv)
    except UsageError as exc:
        if str(exc):
            print(f"xferspec: error: {exc}", file=sys.stderr)
        return 2
    except ResourceGuardError as exc:
        print(f"xferspec: resource guard: {exc}", file=sys.stderr)
        return 3
    payload = res.to_json() if res.json_out else res.text + "\n"
    if res.out:
        with open(res.out, "w", newline="\n") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())

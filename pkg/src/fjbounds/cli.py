"""Command-line front end.

    fjbounds eval M 0.5
    fjbounds sweep ArccotEnvelope --axis 1:50:50 --axis 0.01:pi-0.01:200 --json
    fjbounds thresholds
    fjbounds identities
    fjbounds limits
    fjbounds figure fig1 --n 10 --out fig1.csv

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 domain error.
The environment variable FJBOUNDS_ABS_TOL overrides the default absolute
tolerance; ``--abs-tol`` overrides both.
"""

from __future__ import annotations

import argparse
import ast
import csv
import json
import math
import operator
import os
import sys
from typing import Callable, Sequence

from . import __version__
from . import bounds as B
from . import dirichlet as D
from . import fjsums as F
from . import specfun as S
from . import verify as V
from .errors import ConfigurationError, DomainError

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3
ENV_ABS_TOL = "FJBOUNDS_ABS_TOL"
FIGURE_POINTS = 400


class UsageError(Exception):
    pass


# -- eval ----------------------------------------------------------------------


def _quad_budget(opts: S.EvalOptions) -> float:
    return opts.abs_tol


def _exact_budget(opts: S.EvalOptions) -> float:
    return 0.0


def _series_L(args, opts):
    sv = F.L_series(*args)
    return sv.value, sv.bound


def _remainder(args, opts):
    n, re, im = args
    return B.log_taylor_remainder(complex(re, im), int(n)), 0.0


def _taylor_bound(name):
    def f(args, opts):
        n, re, im = args
        return getattr(B.taylor_bounds(B.TaylorPoint(re, im, int(n))), name), 0.0

    return f


def _with(fn: Callable, budget: Callable = _quad_budget, pass_opts: bool = True):
    def f(args, opts):
        value = fn(*args, opts) if pass_opts else fn(*args)
        return value, budget(opts)

    return f


# name -> (argument names, evaluator returning (value, error budget), help)
FUNCTIONS: dict[str, tuple[tuple[str, ...], Callable, str]] = {
    "Si": (("t",), _with(S.sine_integral), "sine integral"),
    "si": (("t",), _with(S.complementary_sine_integral), "Si(t) - pi/2"),
    "Ci": (("t",), _with(S.cosine_integral), "cosine integral"),
    "Cin": (("t",), _with(S.regularized_cosine_integral), "regularized cosine integral"),
    "E": (("t",), _with(S.exp_integral_E), "exponential integral E(t)"),
    "M": (("t",), _with(S.comparison_M), "comparison function M(t)"),
    "digamma": (("x",), _with(S.digamma, lambda o: 1e-13, pass_opts=False), "psi(x)"),
    "arccot": (("t",), _with(S.arccot, _exact_budget, pass_opts=False), "arccot t, t >= 0"),
    "L": (("x", "mu"), _with(F.L_infinite), "exponential FJ sum L(x, mu)"),
    "L_series": (("x", "mu"), _series_L, "L(x, mu) by the resummed series"),
    "L_partial": (("x", "mu", "n"), lambda a, o: (F.L_partial(a[0], a[1], int(a[2])), 0.0), "L_n(x, mu)"),
    "Lodd": (("x", "lambda"), _with(F.L_odd), "odd-frequency sum"),
    "S_pi": (("lambda",), _with(F.S_pi), "S_pi(lambda)"),
    "rotated_L": (("x", "mu"), _with(F.rotated_L), "exp(ix mu) L(x, mu)"),
    "S_n": (("x", "n"), lambda a, o: (F.sine_partial_sum(a[0], int(a[1])), 0.0), "sum sin(kx)/k, k <= n"),
    "Ssi": (("x", "lambda"), _with(D.ssi), "int_0^x sin(lambda t)/sin t dt"),
    "Eci": (("x", "lambda"), _with(D.eci), "int_0^x exp(i lambda t)/cos t dt"),
    "Cci": (("x", "lambda"), _with(D.cci), "Re Eci"),
    "Sci": (("x", "lambda"), _with(D.sci), "Im Eci"),
    "R_n": (("n", "z_re", "z_im"), _remainder, "Taylor remainder of log(1 - z)"),
    "ArccotEnvelope": (("mu", "x"), _with(B.arccot_envelope, _exact_budget, False), "arccot((2mu+1) sin(x/2))"),
    "MEnvelope": (("mu", "x"), _with(B.m_envelope), "M((2mu+1) sin(x/2))"),
    "LogEnvelope": (("mu", "x"), _with(B.log_envelope, _exact_budget, False), "-ln((2mu+1) sin(x/2)) + C2"),
    "FracEnvelope": (("mu", "x"), _with(B.frac_envelope, _exact_budget, False), "1/((2mu+1) sin(x/2))"),
    "SecEnvelope": (("lambda", "x"), _with(B.sec_envelope, _exact_budget, False), "1/(|lambda| cos x)"),
    "EbycosRhs": (("lambda", "x"), _with(B.ebycos_rhs, lambda o: 2 * o.abs_tol), "1/lambda - M(lambda) + M(lambda cos x)"),
    "TaylorSimple": (("n", "z_re", "z_im"), _taylor_bound("simple"), "simple remainder bound"),
    "TaylorMp": (("n", "z_re", "z_im"), _taylor_bound("mp"), "m(p) remainder bound"),
    "TaylorLog1z": (("n", "z_re", "z_im"), _taylor_bound("log1z"), "logarithmic remainder bound"),
    "TaylorMhat": (("n", "z_re", "z_im"), _taylor_bound("mhat"), "combined remainder bound"),
}

for _tag in ("FJTuran", "Fejer1928", "Turan1952", "AK2003", "BK1998", "Koumandos2012", "AlKou12", "AKEvenUpper"):
    FUNCTIONS[_tag] = (
        ("n", "x"),
        (lambda tag: lambda a, o: (B.classical_bounds(int(a[0]), a[1]).as_dict()[tag], 0.0))(_tag),
        "classical bound on the sawtooth partial sums",
    )


def _format_value(v) -> str:
    if v is None:
        return "not applicable"
    if isinstance(v, complex):
        return f"{v.real:.17g} {'+' if v.imag >= 0 else '-'} {abs(v.imag):.17g}i"
    return f"{v:.17g}"


def cmd_eval(args, opts) -> int:
    if args.function not in FUNCTIONS:
        raise UsageError(f"unknown function {args.function!r}; choose from {', '.join(FUNCTIONS)}")
    names, fn, _ = FUNCTIONS[args.function]
    if len(args.args) != len(names):
        raise UsageError(f"{args.function} takes {len(names)} arguments ({', '.join(names)})")
    value, budget = fn(tuple(args.args), opts)
    if args.json:
        out = {"function": args.function, "args": dict(zip(names, args.args)), "budget": budget,
               "version": __version__}
        if isinstance(value, complex):
            out["value"] = {"re": value.real, "im": value.imag}
        else:
            out["value"] = value
        print(json.dumps(out, indent=2))
    else:
        print(f"{args.function}({', '.join(f'{a:g}' for a in args.args)}) = {_format_value(value)}")
        print(f"error budget: {budget:.3g}")
    return EXIT_OK


# -- sweep ---------------------------------------------------------------------


def parse_axis(text: str) -> V.GridAxis:
    """``lo:hi:count[:log]``, or a single number for a one-point axis."""
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return V.GridAxis.point(_parse_float(parts[0]))
        if len(parts) not in (3, 4):
            raise ValueError
        spacing = parts[3] if len(parts) == 4 else "linear"
        return V.GridAxis(_parse_float(parts[0]), _parse_float(parts[1]), int(parts[2]), spacing)
    except ValueError:
        raise UsageError(f"bad axis {text!r}; expected lo:hi:count[:log]") from None


_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _parse_float(text: str) -> float:
    """A number or a small arithmetic expression in ``pi``, e.g. ``pi/2-0.01``."""

    def ev(node):
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return math.pi
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        raise ValueError(f"not a number: {text!r}")

    try:
        return ev(ast.parse(text.strip(), mode="eval").body)
    except (SyntaxError, ZeroDivisionError):
        raise ValueError(f"not a number: {text!r}") from None


def cmd_sweep(args, opts) -> int:
    try:
        bound = B.BoundId(args.bound)
    except ValueError:
        raise UsageError(f"unknown bound {args.bound!r}; choose from {', '.join(b.value for b in B.BoundId)}")
    if args.axis:
        grid = V.GridSpec(tuple(parse_axis(a) for a in args.axis))
    else:
        grid = V.default_grid(bound, args.points)
    report = V.sweep(bound, grid, opts, workers=args.workers)
    if args.json:
        print(json.dumps(report.to_dict(opts), indent=2))
    else:
        axes = ", ".join(report.axes)
        print(f"{bound.value}: {report.samples} samples over ({axes}), {report.skipped} outside the bound's hypotheses")
        print(f"violations: {report.violations} (budget {report.budget:.3g}), near equality: {report.near_equality}")
        print(f"min margin: {report.min_margin:.6g} at {report.argmin}")
        print(f"elapsed: {report.elapsed:.2f} s")
    return EXIT_OK if report.passed else EXIT_FAILED


# -- thresholds, identities, limits --------------------------------------------


def cmd_thresholds(args, opts) -> int:
    status = EXIT_OK
    results = {}
    for which in ("T0", "T1"):
        res = V.find_threshold(which, opts)
        diff = abs(res.root - V.PRINTED_THRESHOLDS[which])
        ok = diff <= V.THRESHOLD_AGREEMENT and abs(res.residual) <= 1e-12
        status = status if ok else EXIT_FAILED
        results[which] = dict(root=res.root, bracket_lo=res.bracket_lo, bracket_hi=res.bracket_hi,
                              residual=res.residual, printed=V.PRINTED_THRESHOLDS[which], ok=ok)
    if args.json:
        print(json.dumps({"thresholds": results, "version": __version__}, indent=2))
    else:
        for which, r in results.items():
            name = "t0" if which == "T0" else "t1"
            print(f"{name} = {r['root']:.12f}  residual {r['residual']:.2e}  "
                  f"printed {r['printed']:.10f}  {'ok' if r['ok'] else 'MISMATCH'}")
    return status


def cmd_identities(args, opts) -> int:
    checks = V.check_identities(opts)
    if args.json:
        rows = [dict(name=c.name, point=list(c.point), residual=c.residual, tolerance=c.tolerance,
                     passed=c.passed) for c in checks]
        print(json.dumps({"identities": rows, "version": __version__}, indent=2))
    else:
        for c in checks:
            print(f"{'ok  ' if c.passed else 'FAIL'} {c.name:<55s} {str(c.point):<22s} {c.residual:.2e} (tol {c.tolerance:.0e})")
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED


def cmd_limits(args, opts) -> int:
    tables = V.check_limits(opts)
    if args.json:
        rows = [dict(name=t.name, nu=t.nu, scales=list(t.scales), deviations=list(t.deviations),
                     strictly_decreasing=t.strictly_decreasing) for t in tables]
        print(json.dumps({"limits": rows, "version": __version__}, indent=2))
    else:
        for t in tables:
            print(f"{t.name} (nu = {t.nu:g}): {'decreasing' if t.strictly_decreasing else 'NOT decreasing'}")
            for s, d in zip(t.scales, t.deviations):
                print(f"  {s:>8g}  {d:.6e}")
    return EXIT_OK if all(t.strictly_decreasing for t in tables) else EXIT_FAILED


# -- figures -------------------------------------------------------------------

FIG1_COLUMNS = ("x", "S_n", "arccot_upper", "arccot_lower", "fejer1928", "turan1952",
                "ak2003", "bk1998", "koumandos2012", "alkou12")
FIG2_COLUMNS = ("x", "lambda_Cci", "lambda_Sci_minus_1", "sec_x", "neg_sec_x")


def figure_abscissae(hi: float, count: int = FIGURE_POINTS) -> list[float]:
    """Half-step points on the open interval (0, hi)."""
    return [float(v) for v in V.GridAxis(0.0, hi, count).values(open_lo=True, open_hi=True)]


def fig1_rows(n: int, count: int = FIGURE_POINTS) -> list[tuple]:
    """S_n(x), the arccot envelope about (pi - x)/2 and the classical minorants."""
    if n < 1:
        raise DomainError(f"fig1 needs n >= 1, got {n}")
    lo, hi = B.bk1998_window(n)
    rows = []
    for x in figure_abscissae(math.pi, count):
        cb = B.classical_bounds(n, x)
        env = B.arccot_envelope(n, x)
        saw = 0.5 * (math.pi - x)
        rows.append((
            x,
            F.sine_partial_sum(x, n),
            saw + env,
            saw - env,
            cb.fejer1928,
            cb.turan1952 if n >= 2 else None,
            cb.ak2003 if n >= 2 else None,
            cb.bk1998 if lo <= x <= hi else None,
            cb.koumandos2012,
            cb.alkou12,
        ))
    return rows


def fig2_rows(lam: float, opts: S.EvalOptions | None = None, count: int = FIGURE_POINTS) -> list[tuple]:
    """lambda Cci, lambda Sci - 1 and the envelopes +-sec x on (0, pi/2)."""
    if lam == 0:
        raise DomainError("fig2 needs lambda != 0")
    rows = []
    for x in figure_abscissae(0.5 * math.pi, count):
        e = D.eci(x, lam, opts)
        sec = 1.0 / math.cos(x)
        rows.append((x, lam * e.real, lam * e.imag - 1.0, sec, -sec))
    return rows


def write_csv(stream, columns: Sequence[str], rows: Sequence[tuple]) -> None:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow(["" if v is None else format(v, ".17g") for v in row])


def cmd_figure(args, opts) -> int:
    if args.figure == "fig1":
        columns, rows = FIG1_COLUMNS, fig1_rows(args.n, args.points)
    else:
        columns, rows = FIG2_COLUMNS, fig2_rows(args.lam, opts, args.points)
    if args.out in (None, "-"):
        write_csv(sys.stdout, columns, rows)
    else:
        with open(args.out, "w", newline="", encoding="ascii") as fh:
            write_csv(fh, columns, rows)
        print(f"wrote {len(rows)} rows to {args.out}", file=sys.stderr)
    return EXIT_OK


# -- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fjbounds", description=__doc__.split("\n")[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("--abs-tol", type=float, default=None,
                   help=f"absolute quadrature tolerance (default 1e-12, or ${ENV_ABS_TOL})")
    sub = p.add_subparsers(dest="verb", required=True)

    def with_json(sp):
        sp.add_argument("--json", action="store_true", help="machine-readable report")
        return sp

    e = with_json(sub.add_parser("eval", help="evaluate a function or bound at a point"))
    e.add_argument("function", help="function or bound name, see 'eval list'")
    e.add_argument("args", nargs="*", type=_parse_float)

    s = with_json(sub.add_parser("sweep", help="sweep an inequality over a grid"))
    s.add_argument("bound", help="bound id, e.g. ArccotEnvelope")
    s.add_argument("--axis", action="append", metavar="LO:HI:COUNT[:log]",
                   help="one per axis, in the bound's axis order; default grid if omitted")
    s.add_argument("--points", type=int, default=400, help="abscissa points of the default grid")
    s.add_argument("--workers", type=int, default=1)

    with_json(sub.add_parser("thresholds", help="roots t0 and t1"))
    with_json(sub.add_parser("identities", help="residuals of the representation identities"))
    with_json(sub.add_parser("limits", help="limit-relation tables"))

    f = sub.add_parser("figure", help="write the data behind a figure as CSV")
    f.add_argument("figure", choices=("fig1", "fig2"))
    f.add_argument("--n", type=int, default=10)
    f.add_argument("--lambda", dest="lam", type=float, default=12.0)
    f.add_argument("--points", type=int, default=FIGURE_POINTS)
    f.add_argument("--out", default=None, help="output path (stdout if omitted)")
    return p


def resolve_options(cli_tol: float | None, environ=os.environ) -> S.EvalOptions:
    tol = cli_tol
    if tol is None and environ.get(ENV_ABS_TOL):
        try:
            tol = float(environ[ENV_ABS_TOL])
        except ValueError:
            raise UsageError(f"{ENV_ABS_TOL} is not a number: {environ[ENV_ABS_TOL]!r}") from None
    if tol is None:
        return S.DEFAULT_OPTIONS
    try:
        return S.EvalOptions(abs_tol=tol)
    except (ValueError, ConfigurationError) as exc:
        raise UsageError(str(exc)) from None


COMMANDS = {
    "eval": cmd_eval,
    "sweep": cmd_sweep,
    "thresholds": cmd_thresholds,
    "identities": cmd_identities,
    "limits": cmd_limits,
    "figure": cmd_figure,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.verb == "eval" and args.function == "list":
        for name, (names, _, help_) in FUNCTIONS.items():
            print(f"{name:<16s} ({', '.join(names)})  {help_}")
        return EXIT_OK
    try:
        opts = resolve_options(args.abs_tol)
        return COMMANDS[args.verb](args, opts)
    except (UsageError, ConfigurationError) as exc:
        print(f"fjbounds: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"fjbounds: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except BrokenPipeError:
        # output piped into e.g. head; nothing left to report
        sys.stdout = open(os.devnull, "w")
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

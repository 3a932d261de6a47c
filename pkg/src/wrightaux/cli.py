"""Command-line interface: ``wrightaux <command> [options]``.

Commands: eval, coeffs, compare, table1, table2, table3, figure.
Exit codes: 0 success, 2 domain error, 3 numerical (convergence, Stokes,
contour) error, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
import warnings
from pathlib import Path
from typing import Sequence

import mpmath as mp

from . import asympt, limit, series, tables
from .coeffs import c_algorithm, c_closed
from .core import (
    AccuracyWarning,
    ContourError,
    ConvergenceError,
    DomainError,
    Regime,
    StokesError,
    check_sigma,
    classify_regime,
    to_mpf,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NUMERICAL = 3
EXIT_USAGE = 64

DEFAULT_DIGITS = 16
METHODS = ("series", "asympt", "limit", "kp")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with the usage exit code 64 instead of 2."""

    def error(self, message):  # noqa: D401 - argparse API
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- formatting -----------------------------------------------------------------


def format_number(value, digits: int) -> str:
    """Locale-free rendering with ``digits`` significant digits.

    Scientific notation for magnitudes outside [1e-4, 1e6], for zero, and
    when the integer part alone has more than ``digits`` digits; fixed-point
    otherwise.
    """
    if isinstance(value, (mp.mpf, mp.mpc)):
        value = mp.re(value)
        if mp.isfinite(value) and value != 0 and not 1e-300 < abs(value) < 1e300:
            return _format_huge(value, digits)
    v = float(value)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    sci = f"{v:.{digits - 1}e}"
    # decide on the rounded value so 0.99998 -> "1.000" keeps 4 digits
    a = abs(float(sci))
    exponent = int(sci.split("e")[1])
    # fixed point cannot show fewer digits than the integer part has
    if a == 0 or a < 1e-4 or a > 1e6 or exponent >= digits:
        return sci
    return f"{v:.{digits - 1 - exponent}f}"


def _format_huge(value: mp.mpf, digits: int) -> str:
    # mpf beyond the double range, same layout as "%.*e"
    with mp.workdps(digits + 10):
        e = int(mp.floor(mp.log10(abs(value))))
        mant = value / mp.mpf(10) ** e
        text = mp.nstr(mant, digits, min_fixed=-1, max_fixed=2, strip_zeros=False)
        if text.lstrip("-").startswith("10"):
            e += 1
            text = mp.nstr(mant / 10, digits, min_fixed=-1, max_fixed=2, strip_zeros=False)
    return f"{text}e{e:+03d}"


def render(header: Sequence[str], rows: Sequence[Sequence[str]], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    widths = [max(len(str(c)) for c in col) for col in zip(header, *rows)]
    lines = ["  ".join(str(c).rjust(w) for c, w in zip(line, widths)) for line in [header, *rows]]
    return "\n".join(lines) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="")
    else:
        sys.stdout.write(text)


# -- evaluation -------------------------------------------------------------------


def _warn_limit(epsilon: float) -> None:
    if epsilon > limit.LIMIT_EPS_WARN:
        print(f"warning: the limit form is a leading-order eps -> 0 approximation; "
              f"eps = {epsilon:g} > {limit.LIMIT_EPS_WARN}", file=sys.stderr)


def evaluate(fn: str, sigma: str, x: float, method: str, digits: int):
    """Return (value, error proxy or None, note) of F or M by one method."""
    check_sigma(sigma)
    s = float(to_mpf(sigma))
    dps = max(asympt.DEFAULT_DPS, digits + 10)
    note = ""
    if method == "series":
        pv = (series.m_series if fn == "M" else series.f_series)(sigma, x, digits)
        return pv.value, abs(pv.value) * mp.mpf(10) ** (-pv.reliable_digits), note
    if x == 0:
        raise DomainError("x must be nonzero for this method")
    if method == "asympt":
        if classify_regime(sigma) is Regime.STOKES_HALF:
            m = series.m_closed(sigma, abs(x))
            value = m if fn == "M" else s * x * m
            return value, mp.mpf(0), "sigma=1/2 routed to the closed form exp(-x^2/4)/sqrt(pi)"
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", AccuracyWarning)
            if x > 0:
                r = (asympt.m_pos_asympt if fn == "M" else asympt.f_pos_asympt)(sigma, x, dps=dps)
            else:
                r = (asympt.m_neg_asympt if fn == "M" else asympt.f_neg_asympt)(sigma, -x, dps=dps)
        if caught:
            note = "divergent tail reached"
        return mp.re(r.value), r.last_term_magnitude, note
    eps = 1 - s
    if method == "limit":
        _warn_limit(eps)
        m = limit.m_limit_pos(eps, x) if x > 0 else limit.m_limit_neg(eps, -x)
    elif method == "kp":
        if x < 0:
            raise DomainError("the Kreis-Pipkin integral applies to x > 0 only")
        m = limit.kreis_pipkin(eps, x)
    else:
        raise UsageError(f"unknown method {method!r}")
    return (m if fn == "M" else s * x * m), None, note


def cmd_eval(args) -> str:
    value, proxy, note = evaluate(args.fn, args.sigma, args.x, args.method, args.digits)
    d = args.digits
    header = ["fn", "sigma", "x", "method", "value", "error_proxy", "regime", "note"]
    row = [args.fn, args.sigma, format_number(args.x, d), args.method, format_number(value, d),
           "" if proxy is None else format_number(proxy, d), str(classify_regime(args.sigma)), note]
    return render(header, [row], args.format)


def cmd_compare(args) -> str:
    d = args.digits
    rows = []
    ref = None
    for method in METHODS:
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", AccuracyWarning)
                with _quiet_stderr():
                    value, proxy, note = evaluate(args.fn, args.sigma, args.x, method, d)
            if method == "series":
                ref = value
            rel = "" if ref is None or ref == 0 else format_number(abs(value / ref - 1), 4)
            rows.append([method, format_number(value, d), "" if proxy is None else format_number(proxy, d),
                         rel, note or "ok"])
        except (DomainError, ConvergenceError, StokesError, ContourError) as exc:
            rows.append([method, "nan", "", "", f"{type(exc).__name__}: {exc}"])
    return render(["method", "value", "error_proxy", "rel_diff_vs_series", "status"], rows, args.format)


class _quiet_stderr:
    def __enter__(self):
        self._saved, sys.stderr = sys.stderr, io.StringIO()

    def __exit__(self, *exc):
        sys.stderr = self._saved
        return False


def cmd_coeffs(args) -> str:
    check_sigma(args.sigma)
    d = args.digits
    algo = c_algorithm(args.sigma, args.M, digits=max(d, 16))
    closed = c_closed(args.sigma, min(args.M, 7)) if args.M <= 7 else None
    rows = []
    for j in range(args.M):
        cj = closed[j] if closed is not None else None
        rows.append([str(j), format_number(algo[j], d),
                     "" if cj is None else format_number(cj, d),
                     "" if cj is None else format_number(abs(algo[j] - cj), 3)])
    return render(["j", "c_algorithm", "c_closed", "abs_diff"], rows, args.format)


def cmd_table1(args) -> str:
    rows = [[r.sigma, str(r.j), tables.round_dp(r.closed), tables.round_dp(r.algorithm), r.paper,
             "yes" if r.closed_matches and r.algorithm_matches else "no"]
            for r in tables.table1()]
    return render(["sigma", "j", "closed_form", "algorithm", "paper", "match_10dp"], rows, args.format)


def _error_rows(rows, with_j: bool, digits: int):
    out = []
    for r in rows:
        cells = [r.sigma, str(r.x)] + ([str(r.j)] if with_j else [])
        cells += [format_number(r.computed, digits), format_number(r.paper, 4),
                  format_number(r.ratio, 4), "yes" if r.within_tolerance else "no"]
        out.append(cells)
    return out


def cmd_table2(args) -> str:
    header = ["sigma", "x", "j", "computed", "paper", "ratio", "within_factor_3"]
    return render(header, _error_rows(tables.table2(), True, args.digits), args.format)


def cmd_table3(args) -> str:
    header = ["sigma", "x", "computed", "paper", "ratio", "within_factor_3"]
    return render(header, _error_rows(tables.table3(), False, args.digits), args.format)


def figure_rows(epsilon: float, side: str, methods: Sequence[str], x_min: float, x_max: float,
                n: int, digits: int) -> dict[str, list[list[str]]]:
    out = {}
    for method in methods:
        rows = []
        for r in limit.figure_grid(epsilon, x_min, x_max, n, side, method):
            rows.append([format_number(r.x, digits), format_number(r.value, digits),
                         format_number(r.log10_value, digits), method, format_number(epsilon, digits),
                         r.flag])
        out[method] = rows
    return out


FIGURE_HEADER = ["x", "value", "log10_value", "method", "epsilon", "flag"]


def cmd_figure(args):
    if args.n < 2:
        raise UsageError("--n must be at least 2")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in ("limit", "kp", "series"):
            raise UsageError(f"unknown figure method {m!r}")
    if not 0 < args.eps < 1:
        raise DomainError("epsilon must lie in (0,1)")
    if "limit" in methods:
        _warn_limit(args.eps)
    x_min = args.xmin if args.xmin is not None else (0.2 if args.side == "pos" else 0.5)
    x_max = args.xmax if args.xmax is not None else (2.0 if args.side == "pos" else 10.0)
    if not x_min < x_max:
        raise UsageError("--xmin must be less than --xmax")
    per_method = figure_rows(args.eps, args.side, methods, x_min, x_max, args.n, args.digits)
    if args.split:
        if not args.out:
            raise UsageError("--split needs --out")
        base = Path(args.out)
        for method, rows in per_method.items():
            path = base.with_name(f"{base.stem}_{method}{base.suffix or '.csv'}")
            path.write_text(render(FIGURE_HEADER, rows, args.format), encoding="utf-8", newline="")
        return None
    rows = [row for m in methods for row in per_method[m]]
    return render(FIGURE_HEADER, rows, args.format)


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="wrightaux", description="Auxiliary Wright functions F_sigma and M_sigma.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, fmt_default):
        p.add_argument("--digits", type=int, default=DEFAULT_DIGITS, help="significant digits (default 16)")
        p.add_argument("--format", choices=("csv", "table"), default=fmt_default)
        p.add_argument("--out", help="write to this path instead of stdout")

    p = sub.add_parser("eval", help="evaluate F or M at one point")
    p.add_argument("--fn", choices=("M", "F"), default="M")
    p.add_argument("--sigma", required=True, help='exact "p/q", decimal, or float')
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--method", choices=METHODS, default="series")
    common(p, "table")

    p = sub.add_parser("compare", help="evaluate one point by every method")
    p.add_argument("--fn", choices=("M", "F"), default="M")
    p.add_argument("--sigma", required=True)
    p.add_argument("--x", type=float, required=True)
    common(p, "table")

    p = sub.add_parser("coeffs", help="expansion coefficients c_j(sigma)")
    p.add_argument("--sigma", required=True)
    p.add_argument("--M", type=int, default=7, help="number of coefficients (default 7)")
    common(p, "table")

    for name, text in (("table1", "coefficient table"), ("table2", "error table, x > 0"),
                       ("table3", "error table, x < 0")):
        common(sub.add_parser(name, help=f"regenerate the {text}"), "csv")

    p = sub.add_parser("figure", help="grid data for the sigma -> 1 figures")
    p.add_argument("--eps", type=float, required=True, help="epsilon = 1 - sigma")
    p.add_argument("--side", choices=("pos", "neg"), default="pos")
    p.add_argument("--methods", default="limit", help="comma list of limit,kp,series")
    p.add_argument("--xmin", type=float)
    p.add_argument("--xmax", type=float)
    p.add_argument("--n", type=int, default=181)
    p.add_argument("--split", action="store_true", help="one file per method (needs --out)")
    common(p, "csv")
    return parser


COMMANDS = {
    "eval": cmd_eval,
    "compare": cmd_compare,
    "coeffs": cmd_coeffs,
    "table1": cmd_table1,
    "table2": cmd_table2,
    "table3": cmd_table3,
    "figure": cmd_figure,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.digits < 1:
        parser.error("--digits must be positive")
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", AccuracyWarning)
            text = COMMANDS[args.command](args)
        if text is not None:
            _emit(text, args.out)
        return EXIT_OK
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"wrightaux: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DomainError, ValueError) as exc:
        print(f"wrightaux: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (ConvergenceError, StokesError, ContourError, ArithmeticError) as exc:
        print(f"wrightaux: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

"""Command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 numeric failure,
3 verification failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from pathlib import Path

import numpy as np

from . import legendre as lg
from .discretize import build_grid, discretize
from .errors import InvalidArgument, NumericFailure, ParseError
from .fd_scheme import (
    DEFAULT_LAMBDA_RANGE,
    DEFAULT_SCAN_POINTS,
    fd_eigenvalues,
    fd_generalized_eigenvalues,
)
from .operators import parse_operator_expr
from .spectral import MAX_ELL, SingularSpectrum, default_window, fit_decay, loglog_slope, singular_values
from .svg import loglog_scatter
from .verify import run_checks
from .witnesses import chi_witness, cosine_witness

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".15g")


def _csv_text(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _emit(args, header, rows, svg_text):
    """Write CSV and/or SVG according to --out/--format."""
    fmt = args.format
    if fmt == "both":
        if args.out is None:
            raise UsageError("--format both needs --out PATH (used as the file stem)")
        stem = Path(args.out)
        _write(_csv_text(header, rows), stem.with_suffix(".csv"))
        _write(svg_text(), stem.with_suffix(".svg"))
    elif fmt == "svg":
        _write(svg_text(), args.out)
    else:
        _write(_csv_text(header, rows), args.out)


def _info(msg):
    print(msg, file=sys.stderr)


def _window_arg(text):
    try:
        lo, hi = (int(part) for part in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"window must look like LO:HI, got {text!r}") from None
    return lo, hi


def _ell(value, minimum):
    if value < minimum or value > MAX_ELL:
        raise UsageError(f"--l must be in [{minimum}, {MAX_ELL}], got {value}")
    return value


def cmd_spectrum(args):
    expr = parse_operator_expr(args.op)
    ell = _ell(args.l, 2)
    spec = singular_values(discretize(expr, build_grid(ell)))
    n = np.arange(1, len(spec) + 1)
    _emit(
        args,
        ("n", "sigma"),
        zip(n, spec.values),
        lambda: loglog_scatter(
            [(str(expr), n, spec.values)],
            title=f"Singular values, ell = {ell}",
            ylabel="sigma_n",
        ),
    )
    lo, hi = default_window(ell)
    summary = f"{expr}: ell={ell}, sigma_1={spec.values[0]:.10g}"
    if 2 <= lo < hi and spec.values[hi - 1] > 0:
        fit = fit_decay(spec, (lo, hi))
        summary += f", decay exponent {fit.exponent_hat:.4f} over [{lo}, {hi}]"
    _info(summary)
    return EXIT_OK


def _read_spectrum_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or len(rows[0]) < 2:
        raise UsageError(f"{path}: expected a header row like 'n,sigma'")
    column = rows[0][1].strip().lower()
    try:
        values = np.array([float(r[1]) for r in rows[1:] if r])
    except (ValueError, IndexError):
        raise UsageError(f"{path}: malformed data row") from None
    kind = "eigen" if column.startswith("lambda") else "singular"
    return SingularSpectrum(values=values, kind=kind, source=str(path), ell=len(values))


def cmd_fit(args):
    spec = _read_spectrum_csv(args.input)
    fit = fit_decay(spec, args.window)
    sys.stdout.write(
        _csv_text(
            ("exponent_hat", "intercept", "residual_rms", "n_lo", "n_hi", "mu_low", "mu_high"),
            [(fit.exponent_hat, fit.intercept, fit.residual_rms, *fit.window, *fit.interval_hat)],
        )
    )
    return EXIT_OK


def cmd_fd_eigs(args):
    if args.l < 4:
        raise UsageError(f"fd-eigs needs --l >= 4, got {args.l}")
    spec = fd_eigenvalues(args.l, (args.lambda_min, args.lambda_max), args.scan_points)
    n = np.arange(1, len(spec) + 1)
    _emit(
        args,
        ("n", "lambda"),
        zip(n, spec.values),
        lambda: loglog_scatter(
            [(f"determinant roots, ell = {args.l}", n, spec.values)],
            title="Finite-difference eigenvalues of A*A",
            ylabel="lambda_n",
        ),
    )
    if not len(spec):
        _info("warning: no eigenvalue bracketed; widen the range or add scan points")
        return EXIT_OK
    oracle = fd_generalized_eigenvalues(args.l).values
    m = min(len(spec), len(oracle))
    rel = float(np.max(np.abs(spec.values[:m] - oracle[:m]) / oracle[:m]))
    summary = f"{len(spec)} roots (pencil: {len(oracle)}), max rel diff to pencil {rel:.2e}"
    top = min(8, len(spec))
    if top >= 2:
        summary += f", log-log slope n=1..{top} {loglog_slope(spec.values, 1, top)[0]:.3f}"
    _info(summary)
    return EXIT_OK


def cmd_hs_tails(args):
    report = lg.tail_report(args.basis, args.n_max)
    _emit(
        args,
        ("n", "sq_norm", "tail"),
        zip(report.n, report.sq_norms, report.tail_sum),
        lambda: loglog_scatter(
            [("||A e_n||^2", report.n, report.sq_norms), ("tail sum_{i>n}", report.n, report.tail_sum)],
            title=f"{args.basis} basis",
        ),
    )
    two_omega = 3.0 if args.basis == "legendre" else 2.0
    _info(
        f"{args.basis}: tail exponent {report.fitted_tail_exponent:.4f}, "
        f"K {report.tail_constant:.6g} (tail <= K n^-{two_omega:g}), "
        f"K_hat {report.pointwise_constant:.6g} (sigma_n <= sqrt(K_hat) n^-{(1 + two_omega) / 2:g})"
    )
    if args.basis == "legendre":
        _info(
            f"note: 3/(2i(i-1)(2i-3)(2i+1)) gives {lg.closed_form_norm_sq(2):.6g} at i=2 but "
            f"||AP_2||^2 = 1/15; 1/(8n^3-2n) gives {lg.tail_formula(1):.6g} at n=1 but the tail is 1/12"
        )
    return EXIT_OK


def cmd_witness(args):
    if args.kind == "chi":
        res = chi_witness(args.n)
    else:
        res = cosine_witness(args.n)
    print(f"kind: {res.kind}")
    print(f"n: {res.n}")
    print(f"input_norm_sq: {_fmt(res.input_norm_sq)}")
    print(f"image_norm_sq: {_fmt(res.image_norm_sq)}")
    print(f"input_over_image: {_fmt(res.ratio)}")
    print("weak_pairings: " + ",".join(_fmt(v) for v in res.weak_pairings))
    if res.kind == "cosine":
        print(f"pi_over_2_minus_image: {_fmt(math.pi / 2 - res.image_norm_sq)}")
    return EXIT_OK


def cmd_verify(args):
    results = run_checks(quick=args.quick)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} items passed" + (" (quick)" if args.quick else ""))
    return EXIT_VERIFY if failed else EXIT_OK


def _add_output(p):
    p.add_argument("--out", default=None, help="output path (stem when --format both); stdout if omitted")
    p.add_argument("--format", choices=("csv", "svg", "both"), default="csv")


def build_parser():
    parser = _Parser(prog="volterra-spectra", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("spectrum", help="singular values of a discretized operator")
    p.add_argument("--op", required=True, help="operator expression, e.g. cesaro*j")
    p.add_argument("--l", type=int, default=2000, help="number of grid cells (default 2000)")
    _add_output(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("fit", help="power-law fit of a spectrum CSV")
    p.add_argument("--in", dest="input", required=True, help="CSV with header n,sigma or n,lambda")
    p.add_argument("--window", type=_window_arg, default=None, help="inclusive index window LO:HI")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("fd-eigs", help="finite-difference eigenvalues of A*A")
    p.add_argument("--l", type=int, default=20, help="number of intervals (default 20)")
    p.add_argument("--lambda-min", type=float, default=DEFAULT_LAMBDA_RANGE[0])
    p.add_argument("--lambda-max", type=float, default=DEFAULT_LAMBDA_RANGE[1])
    p.add_argument("--scan-points", type=int, default=DEFAULT_SCAN_POINTS)
    _add_output(p)
    p.set_defaults(func=cmd_fd_eigs)

    p = sub.add_parser("hs-tails", help="squared image norms and tails in a fixed basis")
    p.add_argument("--basis", choices=("legendre", "cosine"), required=True)
    p.add_argument("--n-max", type=int, default=100)
    _add_output(p)
    p.set_defaults(func=cmd_hs_tails)

    p = sub.add_parser("witness", help="non-compactness / unbounded-inverse witnesses for C")
    p.add_argument("--kind", choices=("chi", "cos"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run the numerical verification suite")
    p.add_argument("--quick", action="store_true", help="ell <= 500 instead of 2000")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        _info(f"error: cannot parse operator expression: {exc}")
        return EXIT_USAGE
    except (UsageError, InvalidArgument, OSError) as exc:
        _info(f"error: {exc}")
        return EXIT_USAGE
    except NumericFailure as exc:
        _info(f"numeric failure: {exc}")
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

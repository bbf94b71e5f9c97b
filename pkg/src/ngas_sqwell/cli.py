"""Command-line front end.

    ngas-sqwell spectrum --system aho --lambda 0.1,1 --levels 0,1,2 --reference
    ngas-sqwell table --which II

Exit status: 0 on success, 1 on usage or computation errors, 2 when any row
carries a convergence warning.  ``table`` exits 1 when a leading-order cell
misses the published value.
"""

from __future__ import annotations

import argparse
import sys

from ngas_sqwell import tables
from ngas_sqwell.errors import NgasError
from ngas_sqwell.ipt2 import TruncationPolicy
from ngas_sqwell.model import OscillatorSpec, SystemKind, validate

EXIT_OK, EXIT_ERROR, EXIT_UNCONVERGED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _int_list(text):
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if any(v < 0 for v in out):
        raise argparse.ArgumentTypeError("levels are oscillator indices n_s >= 0")
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ngas-sqwell", description="Square-well approximation for quartic oscillators.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("spectrum", help="compute energy levels")
    sp.add_argument("--system", choices=[k.value for k in SystemKind], default="aho")
    sp.add_argument("--g", type=float, default=1.0)
    sp.add_argument("--lambda", dest="lambdas", type=_float_list, default=None,
                    help="comma-separated quartic couplings (default 1; 0 for sho)")
    sp.add_argument("--levels", type=_int_list, default=[0], help="comma-separated n_s values")
    sp.add_argument("--order", choices=["lo", "ipt2"], default="ipt2")
    sp.add_argument("--reference", action="store_true", help="attach finite-difference reference energies")
    sp.add_argument("--format", choices=["table", "csv", "json"], default="table")
    sp.add_argument("--mmax", type=int, default=TruncationPolicy.m_max, help="largest intermediate level")
    sp.add_argument("--tol", type=float, default=TruncationPolicy.tol, help="relative term cutoff")
    sp.add_argument("--intermediate", choices=["own", "shared"], default="own",
                    help="wells of the intermediate states in the second-order sum")
    sp.add_argument("--out", default=None, help="write to this file instead of stdout")

    tp = sub.add_parser("table", help="reproduce a published table")
    tp.add_argument("--which", choices=["I", "II", "III"], required=True, type=str.upper)
    tp.add_argument("--no-reference", action="store_true", help="skip the reference eigensolver")
    tp.add_argument("--format", choices=["table", "csv", "json"], default="table")
    tp.add_argument("--out", default=None)
    return parser


def _emit(text, out):
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _encode(rows, fmt):
    return {"table": tables.to_text, "csv": tables.to_csv, "json": tables.to_json}[fmt](rows)


def run_spectrum(args) -> int:
    kind = SystemKind(args.system)
    lambdas = args.lambdas
    if lambdas is None:
        lambdas = [0.0] if kind is SystemKind.SHO else [1.0]
    for lam in lambdas:
        validate(OscillatorSpec(kind, args.g, lam))
    trunc = TruncationPolicy(tol=args.tol, m_max=args.mmax)
    rows = tables.compute_grid(
        kind, args.g, lambdas, args.levels,
        order=args.order, with_reference=args.reference, trunc=trunc, intermediate=args.intermediate,
    )
    _emit(_encode(rows, args.format), args.out)
    if not all(r.converged for r in rows):
        print("warning: some rows did not converge (converged=false)", file=sys.stderr)
        return EXIT_UNCONVERGED
    return EXIT_OK


def run_table(args) -> int:
    checks = tables.reproduce_table(args.which, with_reference=not args.no_reference)
    rows = [c.row for c in checks]
    if args.format == "table":
        text = tables.report_text(args.which, checks)
    else:
        text = _encode(rows, args.format)
    _emit(text, args.out)
    if not all(c.lo_ok for c in checks):
        return EXIT_ERROR
    if not all(r.converged for r in rows):
        return EXIT_UNCONVERGED
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "spectrum":
            return run_spectrum(args)
        return run_table(args)
    except (NgasError, ValueError) as exc:
        print(f"ngas-sqwell: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

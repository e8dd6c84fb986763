"""Command-line front end: every experiment as a subcommand.

Exit codes: 0 success, 1 failed verification, 2 domain/pole/capability/
input errors, 3 convergence failures, 64 usage errors.
"""

import argparse
import sys
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Optional

import gmpy2
from gmpy2 import mpc, mpfr, mpq

from . import asymptotics, checks, unity
from .combinatorics import TRIANGLE_NAMES, triangle
from .errors import BindingError, CapabilityError, ConvergenceError, DomainError, InputError
from .numerics import DEFAULT_BITS, Precision, pi_const, round_to, zeta_partial
from .reports import ReportRow, complex_str, decimal_str, render_csv, render_json
from .roots import GapQuery, find_root

__all__ = ["RunConfig", "build_parser", "main"]


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    precision_bits: int
    output_format: str
    output_path: Optional[str]


class _Parser(argparse.ArgumentParser):
    # usage problems exit 64, not argparse's default 2 (2 means domain error here)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(64)


def _parse_fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"cannot parse {text!r} as a rational number") from None


def _parse_z(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise InputError(f"expected z as 're,im', got {text!r}")
    try:
        return mpc(float(parts[0]), float(parts[1]))
    except ValueError:
        raise InputError(f"cannot parse {text!r} as a complex point") from None


def _parse_chi(text):
    """Character table from 'res:val' pairs; values may use i for the imaginary unit."""
    table = {}
    for chunk in text.split(","):
        res_str, _, val_str = chunk.partition(":")
        if not val_str:
            raise InputError(f"expected 'residue:value' pairs, got {chunk!r}")
        try:
            residue = int(res_str)
        except ValueError:
            raise InputError(f"residue {res_str!r} is not an integer") from None
        try:
            value = int(val_str)
        except ValueError:
            try:
                value = complex(val_str.replace("i", "j"))
            except ValueError:
                raise InputError(f"cannot parse character value {val_str!r}") from None
        table[residue] = value
    return table


def _parse_ns(text):
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise InputError(f"cannot parse {text!r} as a comma-separated integer list") from None


def _cmd_alpha(args, prec):
    est = find_root(GapQuery(args.n, args.gap), prec)
    with prec.context():
        residual = abs(est.residual)
    row = ReportRow(
        inputs={"gap": str(args.gap), "n": str(args.n)},
        value=decimal_str(est.value),
        abs_error=decimal_str(residual),
        extra={"iterations": str(est.iterations)},
    )
    return [row], 0


def _fit_rows(args, prec):
    fit = asymptotics.empirical_coefficient_fit(args.j, args.L, prec)
    binding = asymptotics.default_binding(max(args.j, 2), prec)
    if args.j == 4:
        candidates = sorted(asymptotics.c4_candidates().items())
    else:
        candidates = [("reversion", asymptotics.expansion_coefficients(args.j).coefficient(args.j))]
    rows = []
    for name, poly in candidates:
        reference = poly.evaluate(binding, prec)
        with prec.context():
            gap = abs(fit - reference)
        rows.append(
            ReportRow(
                inputs={"L": str(args.L), "candidate": name, "j": str(args.j)},
                value=decimal_str(fit),
                reference=decimal_str(reference),
                abs_error=decimal_str(gap),
            )
        )
    return rows, 0


def _cmd_expansion(args, prec):
    if args.fit:
        if args.j is None:
            raise InputError("--fit requires --j")
        return _fit_rows(args, prec)
    series = asymptotics.expansion_coefficients(args.order)
    rows = [
        ReportRow(inputs={"name": name}, value=text)
        for name, text in series.rows()
    ]
    return rows, 0


def _cmd_table(args, prec):
    tab = triangle(args.name, args.max_m)
    rows = [
        ReportRow(inputs={"k": str(k), "m": str(m)}, value=str(value))
        for k, m, value in tab.rows()
    ]
    return rows, 0


def _cmd_zeta(args, prec):
    if (args.even_n is None) == (args.finite is None):
        raise InputError("choose exactly one of --even-n or --finite")
    rows = []
    if args.even_n is not None:
        value = unity.zeta_even_closed(args.even_n, prec)
        reference = zeta_partial(2 * args.even_n, 10**4, prec)
        with prec.context():
            gap = abs(value - reference)
        rows.append(
            ReportRow(
                inputs={"n": str(args.even_n), "quantity": "zeta_even_closed"},
                value=decimal_str(value),
                reference=decimal_str(reference),
                abs_error=decimal_str(gap),
            )
        )
    else:
        finite = unity.zeta2_finite(args.finite, prec)
        chained = unity.zeta_from_odd(2, finite / 2, prec)
        with prec.context():
            quarter = pi_const(prec) ** 2 / 4
            sixth = pi_const(prec) ** 2 / 6
            rows.append(
                ReportRow(
                    inputs={"n": str(args.finite), "quantity": "finite_odd_sum"},
                    value=decimal_str(finite),
                    reference=decimal_str(quarter),
                    abs_error=decimal_str(abs(finite - quarter)),
                )
            )
            rows.append(
                ReportRow(
                    inputs={"n": str(args.finite), "quantity": "chained_zeta2"},
                    value=decimal_str(chained),
                    reference=decimal_str(sixth),
                    abs_error=decimal_str(abs(chained - sixth)),
                )
            )
    return rows, 0


def _cmd_theta(args, prec):
    z = _parse_z(args.z)
    lhs = unity.theta_lhs(z, args.n, args.m, prec)
    rhs = unity.theta_rhs(z, args.n, args.m, prec)
    with prec.context():
        gap = abs(lhs - rhs)
    row = ReportRow(
        inputs={"m": str(args.m), "n": str(args.n), "z": args.z},
        value=complex_str(lhs),
        reference=complex_str(rhs),
        abs_error=decimal_str(gap),
    )
    return [row], 0


def _cmd_progression(args, prec):
    t = _parse_fraction(args.t)
    value = unity.two_sided_power_sum(t, args.k, args.M, prec)
    reference = None
    abs_error = None
    if args.k == 2:
        guarded = Precision(prec.bits + 16)
        with prec.context(16):
            angle = pi_const(guarded) * mpq(t.numerator, t.denominator)
            ref = (pi_const(guarded) / gmpy2.sin(angle)) ** 2
        ref = round_to(prec, ref)
        with prec.context():
            gap = abs(value - ref)
        reference = decimal_str(ref)
        abs_error = decimal_str(gap)
    row = ReportRow(
        inputs={"k": str(args.k), "t": args.t, "truncation": str(args.M)},
        value=decimal_str(value),
        reference=reference,
        abs_error=abs_error,
    )
    return [row], 0


def _cmd_lfunction(args, prec):
    chi = _parse_chi(args.chi)
    value = unity.dirichlet_L(args.modulus, chi, args.k, args.M, prec)
    reference = None
    abs_error = None
    with prec.context():
        chi_minus_one = chi.get((args.modulus - 1) % args.modulus, 0)
        parity_matched = chi_minus_one == (-1) ** args.k
        if not parity_matched:
            reference = "0"
            abs_error = decimal_str(abs(value))
        elif args.modulus == 4 and args.k == 3 and chi.get(1) == 1 and chi.get(3) == -1:
            ref = pi_const(prec) ** 3 / 32
            reference = decimal_str(+ref)
            abs_error = decimal_str(abs(value - ref))
    row = ReportRow(
        inputs={"chi": args.chi, "k": str(args.k), "modulus": str(args.modulus), "truncation": str(args.M)},
        value=complex_str(value),
        reference=reference,
        abs_error=abs_error,
    )
    return [row], 0


def _cmd_verify(args, prec):
    if args.convergence is not None:
        if args.ns is None:
            raise InputError("--convergence requires --ns")
        rows = [
            ReportRow(
                inputs={"kind": record["kind"], "n": str(record["n"])},
                value=decimal_str(record["residual"]),
                extra={"normalized": decimal_str(record["normalized"])},
            )
            for record in checks.convergence_table(args.convergence, _parse_ns(args.ns), prec)
        ]
        return rows, 0
    results = checks.run_all(prec)
    rows = [
        ReportRow(
            inputs={"check": result.name},
            value="pass" if result.ok else "fail",
            extra={"detail": result.detail},
        )
        for result in results
    ]
    return rows, 0 if all(result.ok for result in results) else 1


_HANDLERS = {
    "alpha": _cmd_alpha,
    "expansion": _cmd_expansion,
    "table": _cmd_table,
    "zeta": _cmd_zeta,
    "theta": _cmd_theta,
    "progression": _cmd_progression,
    "lfunction": _cmd_lfunction,
    "verify": _cmd_verify,
}


def _common_flags():
    # accepted both before and after the subcommand; SUPPRESS keeps the
    # subparser pass from clobbering a value given up front
    common = _Parser(add_help=False)
    common.add_argument("--precision-bits", type=int, default=argparse.SUPPRESS,
                        help="working precision (>= 64)")
    common.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS,
                        dest="output_format")
    common.add_argument("--output", default=argparse.SUPPRESS,
                        help="write the report here instead of stdout")
    return common


def build_parser():
    common = _common_flags()
    parser = _Parser(
        prog="polyzeta",
        description="Critical points, zeta values and roots-of-unity experiments.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("alpha", parents=[common], help="solve for a critical point of x(x-1)...(x-N)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--gap", type=int, default=0)

    p = sub.add_parser("expansion", parents=[common], help="symbolic 1/log N expansion and empirical fits")
    p.add_argument("--order", type=int, default=4)
    p.add_argument("--fit", action="store_true")
    p.add_argument("--j", type=int, choices=(2, 3, 4))
    p.add_argument("--L", type=int, default=1000, help="synthetic log value for --fit")

    p = sub.add_parser("table", parents=[common], help="dump an exact combinatorial triangle")
    p.add_argument("--name", choices=TRIANGLE_NAMES, required=True)
    p.add_argument("--max-m", type=int, required=True)

    p = sub.add_parser("zeta", parents=[common], help="even zeta values and the finite odd-sum route")
    p.add_argument("--even-n", type=int, default=None)
    p.add_argument("--finite", type=int, default=None, metavar="N")

    p = sub.add_parser("theta", parents=[common], help="compare both forms of theta^m log(z^N - 1)")
    p.add_argument("--n", type=int, required=True, dest="n")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--z", required=True, help="complex point as 're,im'")

    p = sub.add_parser("progression", parents=[common], help="two-sided arithmetic progression power sum")
    p.add_argument("--t", required=True, help="offset as a fraction, e.g. 1/3")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--M", type=int, default=10**5, help="truncation")

    p = sub.add_parser("lfunction", parents=[common], help="Dirichlet L-value from progression sums")
    p.add_argument("--modulus", type=int, required=True)
    p.add_argument("--chi", required=True, help="character table, e.g. '1:1,3:-1'")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--M", type=int, default=10**4, help="truncation")

    p = sub.add_parser("verify", parents=[common], help="run invariant checks or convergence grids")
    p.add_argument("--convergence", choices=checks.CONVERGENCE_KINDS, default=None)
    p.add_argument("--ns", default=None, help="comma-separated ascending N grid")

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    for attr, default in (("precision_bits", DEFAULT_BITS), ("output_format", "json"), ("output", None)):
        if not hasattr(args, attr):
            setattr(args, attr, default)
    try:
        prec = Precision(args.precision_bits)
        rows, code = _HANDLERS[args.command](args, prec)
    except ConvergenceError as exc:
        print(f"polyzeta: convergence error: {exc}", file=sys.stderr)
        return 3
    except (DomainError, CapabilityError, BindingError) as exc:
        print(f"polyzeta: error: {exc}", file=sys.stderr)
        return 2
    config = RunConfig(
        subcommand=args.command,
        precision_bits=args.precision_bits,
        output_format=args.output_format,
        output_path=args.output,
    )
    render = render_json if args.output_format == "json" else render_csv
    text = render(asdict(config), rows)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end with machine-readable output.

Series are parsed and printed in the grammar of :mod:`xadic.series`; the
prime is always an explicit flag and never inferred.  Output goes to
stdout as JSON (default) or a plain text rendering of the same data;
diagnostics go to stderr.  Exit codes:

* 0  -- success / certificate found (re-verified before printing)
* 2  -- the input is zero at the working precision, so no witness exists
* 3  -- insufficient precision to decide
* 64 -- usage or parse error

With ``--series-file`` the subcommands that take ``--series`` process one
series per line and emit one result line each; the exit code is the first
nonzero per-line code, if any.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ParseError, PrecisionError
from .ff import Prime
from .padic import parse_padic
from .series import LaurentSeries, parse_series
from .stdgroup import ContradictionReport, index_gap_demo, ball_index
from .subgroups import (MembershipVerdict, MultiplesOf, PowersOfTwo, member)
from .units import closure_enum, padic_pow
from .witness import (MultiplesOfWitness, NormalizationTrace,
                      PowersOfTwoWitness, ZeroAtPrecision,
                      certify_multiples_of, certify_powers_of_two)

EXIT_OK = 0
EXIT_ZERO_AT_PRECISION = 2
EXIT_PRECISION = 3
EXIT_USAGE = 64


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_globals(parser: argparse.ArgumentParser, top: bool) -> None:
    # Accepted both before and after the subcommand; the later wins.
    suppress = {} if top else {"default": argparse.SUPPRESS}
    parser.add_argument("--p", type=int, help="prime characteristic "
                        "(required)", **({"default": None} if top else suppress))
    parser.add_argument("--precision", type=int,
                        help="working precision where a choice is needed "
                             "(default 64)",
                        **({"default": None} if top else suppress))
    parser.add_argument("--format", choices=("json", "text"),
                        **({"default": "json"} if top else suppress))


def _build_parser() -> _Parser:
    parser = _Parser(prog="xadic",
                     description="Exact arithmetic and support-violation "
                                 "certificates for Laurent series over F_p.")
    _add_globals(parser, top=True)
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("eval", help="evaluate a series map at a "
                       "point of the open unit disk")
    _add_globals(c, top=False)
    _series_source(c)
    c.add_argument("--at", required=True, help="evaluation point (series)")

    c = sub.add_parser("member", help="support-membership verdict")
    _add_globals(c, top=False)
    _series_source(c)
    c.add_argument("--set", required=True, dest="set_spec",
                   help='"H" (powers-of-two support) or "ell:L"')

    c = sub.add_parser("witness", help="produce a non-membership certificate")
    c.add_argument("kind", choices=("lemma31", "thm14"),
                   help="target: lemma31 = powers-of-two support, "
                        "thm14 = multiples-of-ell support")
    _add_globals(c, top=False)
    _series_source(c)
    c.add_argument("--ell", type=int, help="required for thm14")

    c = sub.add_parser("closure", help="enumerate the closure of 1 + X^ell "
                       "modulo X^precision")
    _add_globals(c, top=False)
    c.add_argument("--ell", type=int, required=True)

    c = sub.add_parser("index", help="ball index p^(n*(l-k))")
    _add_globals(c, top=False)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--k", type=int, required=True)
    c.add_argument("--l", type=int, required=True)

    c = sub.add_parser("demo", help="run a packaged demonstration")
    c.add_argument("kind", choices=("thm12",),
                   help="thm12 = index obstruction for p-adic subgroups")
    _add_globals(c, top=False)
    c.add_argument("--ell", type=int, required=True,
                   help="generator exponent (coprime to p, >= 2)")

    c = sub.add_parser("upow", help="raise a principal unit to a p-adic "
                       "exponent")
    _add_globals(c, top=False)
    c.add_argument("--unit", required=True, help="principal unit (series)")
    c.add_argument("--exponent", required=True,
                   help='decimal integer or "r mod p^k"')
    return parser


def _series_source(cmd: argparse.ArgumentParser) -> None:
    grp = cmd.add_mutually_exclusive_group(required=True)
    grp.add_argument("--series", help="series in the input grammar")
    grp.add_argument("--series-file",
                     help="file with one series per line")


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload))
    else:
        for key, value in payload.items():
            print(f"{key}: {value}")


def _verdict_dict(v: MembershipVerdict) -> dict:
    return {"verdict": v.status, "precision": v.precision,
            "witness_exponent": v.witness_exponent,
            "witness_coefficient": v.witness_coefficient}


def _trace_dict(t: NormalizationTrace) -> dict:
    return {"subtracted_constant": str(t.subtracted_constant),
            "argument_scale_exponent": t.argument_scale}


def _parse_set(spec: str):
    if spec == "H":
        return PowersOfTwo()
    if spec.startswith("ell:"):
        try:
            ell = int(spec[4:])
        except ValueError:
            raise ParseError(f"bad set spec {spec!r}") from None
        return MultiplesOf(ell)
    raise ParseError(f'bad set spec {spec!r}: expected "H" or "ell:L"')


def _cmd_eval(args, prime: Prime, f: LaurentSeries) -> tuple[dict, int]:
    at = parse_series(prime, args.at)
    value = f.evaluate(at)
    return {"series": str(f), "at": str(at), "value": str(value)}, EXIT_OK


def _cmd_member(args, prime: Prime, f: LaurentSeries) -> tuple[dict, int]:
    payload = _verdict_dict(member(f, _parse_set(args.set_spec)))
    payload["series"] = str(f)
    payload["set"] = args.set_spec
    return payload, EXIT_OK


def _cmd_witness(args, prime: Prime, f: LaurentSeries) -> tuple[dict, int]:
    if args.kind == "lemma31":
        trace, report = certify_powers_of_two(f)
        target = "H"
    else:
        if args.ell is None:
            raise ParseError("witness thm14 requires --ell")
        trace, report = certify_multiples_of(f, args.ell)
        target = f"ell:{args.ell}"
    payload = {"kind": args.kind, "p": prime.p, "target": target,
               "series": str(f), "normalization": _trace_dict(trace)}
    if isinstance(report, ZeroAtPrecision):
        payload["verdict"] = "zero_at_precision"
        payload["precision"] = report.precision
        return payload, EXIT_ZERO_AT_PRECISION
    if isinstance(report, PowersOfTwoWitness):
        payload.update({
            "verdict": "non_member",
            "leading_index": report.leading.index,
            "leading_x_shift": report.leading.xshift,
            "n": report.n,
            "point": str(report.point),
            "offending_exponent": report.offending_exponent,
            "evaluated": str(report.evaluated),
            "sound": True,
        })
    else:
        assert isinstance(report, MultiplesOfWitness)
        payload.update({
            "verdict": "non_member",
            "branch": report.branch,
            "root_level": report.root_level,
            "q": report.q,
            "derivative_index": report.derivative_index,
            "base_point": str(report.base_point),
            "tau": report.tau,
            "shift": report.shift,
            "delta": str(report.delta),
            "offending_valuation": report.offending_valuation,
            "sound": True,
        })
    return payload, EXIT_OK


def _cmd_closure(args, prime: Prime) -> tuple[dict, int]:
    report = closure_enum(prime, args.ell,
                          64 if args.precision is None else args.precision)
    return {"p": prime.p, "ell": report.ell, "precision": report.precision,
            "level": report.level,
            "residue_count": len(report.residues),
            "residues": [str(r) for r in report.residues],
            "all_supported": report.all_supported,
            "all_distinct": report.all_distinct}, EXIT_OK


def _cmd_index(args, prime: Prime) -> tuple[dict, int]:
    value = ball_index(prime, args.n, args.k, args.l)
    return {"p": prime.p, "n": args.n, "k": args.k, "l": args.l,
            "index": value}, EXIT_OK


def _cmd_demo(args, prime: Prime) -> tuple[dict, int]:
    report = index_gap_demo(prime, args.ell)
    return _contradiction_dict(report), EXIT_OK


def _contradiction_dict(r: ContradictionReport) -> dict:
    return {"law": r.law, "p": r.p,
            "generator_exponent": r.generator_exponent,
            "pth_power": str(r.power_map),
            "linear_term_zero": r.linear_term_zero,
            "contraction_constant": str(r.contraction),
            "ball_exponent": r.ball_exponent,
            "inclusion_verified": r.inclusion_verified,
            "ambient_index": r.ambient_index,
            "zp_index": r.zp_index,
            "inequality_refuted": r.inequality_refuted}


def _cmd_upow(args, prime: Prime) -> tuple[dict, int]:
    unit = parse_series(prime, args.unit)
    exponent = parse_padic(prime, args.exponent)
    value = padic_pow(unit, exponent, precision=args.precision)
    return {"unit": str(unit), "exponent": args.exponent.strip(),
            "value": str(value)}, EXIT_OK


def _series_inputs(args, prime: Prime) -> list[LaurentSeries]:
    if getattr(args, "series", None) is not None:
        return [parse_series(prime, args.series)]
    with open(args.series_file, encoding="utf-8") as handle:
        lines = [line.strip() for line in handle if line.strip()]
    return [parse_series(prime, line) for line in lines]


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    if args.p is None:
        print("xadic: error: --p is required", file=sys.stderr)
        return EXIT_USAGE
    try:
        prime = Prime(args.p)
    except (ValueError, TypeError) as exc:
        print(f"xadic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    per_series = {"eval": _cmd_eval, "member": _cmd_member,
                  "witness": _cmd_witness}
    whole = {"closure": _cmd_closure, "index": _cmd_index,
             "demo": _cmd_demo, "upow": _cmd_upow}
    status = EXIT_OK
    try:
        if args.command in per_series:
            for f in _series_inputs(args, prime):
                payload, code = per_series[args.command](args, prime, f)
                _emit(payload, args.format)
                if code != EXIT_OK and status == EXIT_OK:
                    status = code
        else:
            payload, status = whole[args.command](args, prime)
            _emit(payload, args.format)
    except ParseError as exc:
        print(f"xadic: parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionError as exc:
        print(f"xadic: insufficient precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except (ValueError, ZeroDivisionError, OSError) as exc:
        print(f"xadic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return status


if __name__ == "__main__":
    sys.exit(main())

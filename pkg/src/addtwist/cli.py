"""Command-line front end.

Subcommands: coeffs, eval, verify-fe, verify-qmf, verify-fricke, verify-bs,
reciprocity, infinity, scan. Reports stream as JSON (one object per line)
or CSV; output is deterministic for identical configurations. Exit status
0 when every emitted report passes (scan and the infinity experiment exit
0 on completion), 1 on verification failure, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys
from math import gcd

from .characters import enumerate_characters
from .cusps import CuspPoint, gamma0_element
from .errors import PrecisionError, UnsupportedCuspError
from .forms import (
    CuspForm,
    EllipticCurveModel,
    delta_coefficients,
    fricke_eigenvalue,
    newform_from_curve,
)
from .identities import (
    VerificationReport,
    infinity_experiment,
    verify_birch_stevens,
    verify_fe,
    verify_fricke_qmf,
    verify_infinity,
    verify_qmf,
    verify_reciprocity,
)
from .ltwist import TwistEvaluator, additive_twist, eval_csv_row

DEFAULT_TOL = 1e-6
DEFAULT_EPS = 1e-9


def _add_form_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--form",
        required=True,
        choices=["delta", "curve"],
        help="coefficient source: the weight-12 level-1 form, or an elliptic curve",
    )
    parser.add_argument(
        "--curve",
        metavar="A1,A2,A3,A4,A6",
        help="integer Weierstrass coefficients (curve form only)",
    )
    parser.add_argument(
        "--conductor", type=int, help="conductor N of the curve (curve form only)"
    )
    parser.add_argument(
        "--bad-primes",
        metavar="P=AP[,P=AP...]",
        default="",
        help="trace of Frobenius at each prime dividing the conductor, e.g. 11=1",
    )


def _build_form(args) -> CuspForm:
    if args.form == "delta":
        return delta_coefficients(64)
    if not args.curve or args.conductor is None:
        raise ValueError("curve form needs --curve and --conductor")
    coeffs = [int(t) for t in args.curve.split(",")]
    if len(coeffs) != 5:
        raise ValueError("--curve expects five integers a1,a2,a3,a4,a6")
    bad = {}
    if args.bad_primes:
        for item in args.bad_primes.split(","):
            p, ap = item.split("=")
            bad[int(p)] = int(ap)
    curve = EllipticCurveModel(*coeffs, conductor=args.conductor,
                               bad_prime_coefficients=bad)
    form = newform_from_curve(curve, 64)
    fricke_eigenvalue(form)
    return form


def _parse_gamma(text: str, level: int):
    parts = [int(t) for t in text.split(",")]
    if len(parts) != 4:
        raise ValueError("--gamma expects four integers a,b,c,d")
    return gamma0_element(*parts, level)


def _parse_complex(text: str) -> complex:
    if "," in text:
        re_part, im_part = text.split(",", 1)
        return complex(float(re_part), float(im_part))
    return complex(float(text), 0.0)


def _open_output(path: str):
    if path == "-":
        return sys.stdout, False
    return open(path, "w", newline=""), True


def _emit_reports(reports: list[VerificationReport], args) -> int:
    stream, close = _open_output(args.output)
    try:
        if args.format == "json":
            for rep in reports:
                stream.write(json.dumps(rep.to_json_dict(), sort_keys=True))
                stream.write("\n")
        else:
            writer = csv.writer(stream)
            writer.writerow(
                ["identity", "inputs", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                 "residual", "tolerance", "pass", "notes"]
            )
            for rep in reports:
                writer.writerow(
                    [
                        rep.identity,
                        json.dumps(rep.inputs, sort_keys=True),
                        repr(rep.lhs.real),
                        repr(rep.lhs.imag),
                        repr(rep.rhs.real),
                        repr(rep.rhs.imag),
                        repr(rep.residual),
                        "" if math.isinf(rep.tolerance) else repr(rep.tolerance),
                        rep.passed,
                        rep.notes,
                    ]
                )
    finally:
        if close:
            stream.close()
    return 0 if all(r.passed for r in reports) else 1


def _cmd_coeffs(args) -> int:
    form = _build_form(args)
    stream, close = _open_output(args.output)
    try:
        form.export_coefficients_csv(stream, args.n)
    finally:
        if close:
            stream.close()
    return 0


def _cmd_eval(args) -> int:
    form = _build_form(args)
    if form.level > 1:
        fricke_eigenvalue(form)
    r = CuspPoint.from_string(args.r)
    result = additive_twist(form, r, args.s, args.eps)
    stream, close = _open_output(args.output)
    try:
        writer = csv.writer(stream)
        writer.writerow(["a", "c", "s", "re", "im", "n_max", "tail_bound"])
        writer.writerow(eval_csv_row(result))
    finally:
        if close:
            stream.close()
    return 0


def _cmd_verify_fe(args) -> int:
    form = _build_form(args)
    r = CuspPoint.from_string(args.r)
    rep = verify_fe(form, r, args.s, args.tol)
    return _emit_reports([rep], args)


def _cmd_verify_qmf(args) -> int:
    form = _build_form(args)
    gamma = _parse_gamma(args.gamma, form.level)
    r = CuspPoint.from_string(args.r)
    rep = verify_qmf(form, gamma, r, args.tol, args.eps)
    return _emit_reports([rep], args)


def _cmd_verify_fricke(args) -> int:
    form = _build_form(args)
    r = CuspPoint.from_string(args.r)
    ev = TwistEvaluator(form, args.eps)
    rep = verify_fricke_qmf(form, r, args.tol, args.eps, ev)
    return _emit_reports([rep], args)


def _cmd_verify_bs(args) -> int:
    form = _build_form(args)
    ev = TwistEvaluator(form, args.eps)
    reports = [
        verify_birch_stevens(form, chi, args.tol, args.eps, ev)
        for chi in enumerate_characters(args.modulus)
    ]
    return _emit_reports(reports, args)


def _cmd_reciprocity(args) -> int:
    form = _build_form(args)
    ev = TwistEvaluator(form, args.eps)
    reports = verify_reciprocity(
        form,
        args.l,
        args.q,
        sub_tol=args.tol,
        bound_constant=args.bound_constant,
        eps=args.eps,
        evaluator=ev,
        cor1_constant=args.cor1_constant,
    )
    return _emit_reports(reports, args)


def _cmd_infinity(args) -> int:
    form = _build_form(args)
    gamma = _parse_gamma(args.gamma, form.level)
    ev = TwistEvaluator(form, args.eps)
    if args.approach:
        points = [CuspPoint.from_string(t) for t in args.approach.split(",")]
        rows = infinity_experiment(
            form, gamma, points, _parse_complex(args.candidate), args.eps, ev
        )
        stream, close = _open_output(args.output)
        try:
            if args.format == "json":
                for row in rows:
                    stream.write(json.dumps(row, sort_keys=True))
                    stream.write("\n")
            else:
                writer = csv.writer(stream)
                writer.writerow(
                    ["r", "rhs_re", "rhs_im", "residual_re", "residual_im",
                     "abs_residual"]
                )
                for row in rows:
                    writer.writerow(
                        [row["r"], repr(row["rhs_re"]), repr(row["rhs_im"]),
                         repr(row["residual_re"]), repr(row["residual_im"]),
                         repr(row["abs_residual"])]
                    )
        finally:
            if close:
                stream.close()
        return 0
    rep = verify_infinity(form, gamma, args.tol, args.eps, ev)
    return _emit_reports([rep], args)


def _cmd_scan(args) -> int:
    form = _build_form(args)
    if form.level > 1:
        fricke_eigenvalue(form)
    ev = TwistEvaluator(form, args.eps)
    s = args.s if args.s is not None else form.weight / 2
    stream, close = _open_output(args.output)
    budget = args.max_evals
    used = 0
    truncated = False
    try:
        writer = csv.writer(stream)
        writer.writerow(["a", "q", "re", "im"])
        for q in range(args.qmin, args.qmax + 1):
            for a in range(q):
                if q > 1 and gcd(a, q) != 1:
                    continue
                if q == 1 and a != 0:
                    continue
                if budget is not None and used >= budget:
                    truncated = True
                    break
                value = ev.additive(CuspPoint(a, q), s)
                used += 1
                writer.writerow([a, q, repr(value.real), repr(value.imag)])
            if truncated:
                break
        if truncated:
            stream.write(f"# truncated: evaluation budget {budget} exhausted\n")
    finally:
        if close:
            stream.close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="addtwist",
        description=(
            "Additive twists of cuspidal L-functions: evaluation and "
            "identity verification"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="json"):
        _add_form_arguments(p)
        p.add_argument("--output", default="-", help="output path ('-' = stdout)")
        p.add_argument("--format", choices=["json", "csv"], default=default_format)
        p.add_argument("--tol", type=float, default=DEFAULT_TOL)
        p.add_argument("--eps", type=float, default=DEFAULT_EPS,
                       help="evaluator accuracy")

    p = sub.add_parser("coeffs", help="dump exact Fourier coefficients as CSV")
    common(p, "csv")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("eval", help="evaluate one additive twist")
    common(p, "csv")
    p.add_argument("--r", required=True, help="cusp as a fraction a/c")
    p.add_argument("--s", type=float, required=True)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("verify-fe", help="completed-twist functional equation")
    common(p)
    p.add_argument("--r", required=True)
    p.add_argument("--s", type=float, required=True)
    p.set_defaults(func=_cmd_verify_fe)

    p = sub.add_parser("verify-qmf", help="exact central-value discrepancy formula")
    common(p)
    p.add_argument("--gamma", required=True, metavar="A,B,C,D")
    p.add_argument("--r", required=True)
    p.set_defaults(func=_cmd_verify_qmf)

    p = sub.add_parser("verify-fricke", help="discrepancy under r -> -1/(N r)")
    common(p)
    p.add_argument("--r", required=True)
    p.set_defaults(func=_cmd_verify_fricke)

    p = sub.add_parser("verify-bs", help="finite Fourier expansion, all chi mod q")
    common(p)
    p.add_argument("--modulus", type=int, required=True)
    p.set_defaults(func=_cmd_verify_bs)

    p = sub.add_parser("reciprocity", help="twisted first-moment reciprocity")
    common(p)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--bound-constant", type=float, default=None,
                   help="enforce |T1 - T2 - L| <= K l/q with this K")
    p.add_argument("--cor1-constant", type=float, default=None,
                   help="also check the primitive-only prime-moduli variant")
    p.set_defaults(func=_cmd_reciprocity)

    p = sub.add_parser(
        "infinity",
        help="weight-2 extension to infinity, or the value-at-infinity probe",
    )
    common(p)
    p.add_argument("--gamma", required=True, metavar="A,B,C,D")
    p.add_argument("--approach", default="",
                   help="comma-separated cusps tending to gamma^-1 oo "
                        "(runs the experiment instead of the weight-2 check)")
    p.add_argument("--candidate", default="0",
                   help="candidate value at infinity, 're' or 're,im'")
    p.set_defaults(func=_cmd_infinity)

    p = sub.add_parser("scan", help="central values over all reduced a/q")
    common(p, "csv")
    p.add_argument("--qmin", type=int, required=True)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--s", type=float, default=None,
                   help="evaluation point (default: central)")
    p.add_argument("--max-evals", type=int, default=None,
                   help="budget; output is truncated with a marker beyond it")
    p.set_defaults(func=_cmd_scan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, UnsupportedCuspError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except PrecisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

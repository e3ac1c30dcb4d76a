"""Command-line front end.

Exit codes: 0 success, 1 selftest mismatch or internal error, 2 unreadable
input, 3 precondition violated.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional, Sequence

from .arrangement import DEFAULT_BUDGET, Arrangement, PreconditionError, analyze
from .fs import BSPair, FsElement, apply_to_fs, bs_pair_check, euler_root_witness, t_shift
from .homogeneous import homogeneous_root_screen
from .lattice import char_poly_str, lattice_report
from .parsing import ParseError, parse_operator, parse_polynomial, parse_rational, parse_univariate_s, univariate_str
from .polynomial import Polynomial, SPolynomial
from .weyl import graded_parts, in_ideal_Dx, sigma_invariant

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_PRECONDITION = 0, 1, 2, 3


def _q(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc


def load_arrangement(path: str) -> Arrangement:
    data = _read_json(path)
    try:
        return Arrangement.from_json(data)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{path}: bad arrangement ({exc})") from exc


def load_polynomial(path: Optional[str], text: Optional[str], n: Optional[int]) -> Polynomial:
    if text is not None:
        return parse_polynomial(text, n)
    if path is None:
        raise ParseError("give a polynomial file or --f")
    data = _read_json(path)
    try:
        if isinstance(data, dict) and "f" in data:
            return parse_polynomial(data["f"], data.get("n", n))
        return Polynomial.from_json(data, n)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{path}: bad polynomial ({exc})") from exc


def _dimension(args, *texts: str) -> int:
    if args.n is not None:
        return args.n
    from .parsing import max_index

    return max([max_index(t) for t in texts if t] + [1])


# -- commands -------------------------------------------------------------------------

def cmd_analyze(args):
    A = load_arrangement(args.file)
    rep = analyze(A, args.budget)
    data = rep.to_json()
    lines = [
        f"arrangement: n={A.n}, r={A.r}, d={A.d}, n/d={_q(rep.n_over_d)}",
        f"indecomposable: {rep.indecomposable}",
        "dense edges: " + ", ".join(
            f"{list(e.support)} (dim {e.dim}, r={_q(e.r_value)})" for e in rep.dense_edges),
        f"nonresonance condition (R): {'PASS' if rep.condition.passed else 'FAIL'}"
        + ("" if rep.condition.passed else
           " violators " + ", ".join(str(list(e.support)) for e in rep.condition.violators)),
    ]
    if rep.epsilon:
        lines.append("epsilon weights (basis construction): " + ", ".join(data["epsilon"]))
        lines.append("epsilon weights (perturbed): " + ", ".join(data["epsilon_perturbed"]))
        lines.append(f"N = {rep.mu.N}")
        for s in rep.mu.mu:
            lines.append(f"  W={list(s)}: mu={rep.mu.mu[s]}, residue={_q(rep.mu.residues[s])}")
    lines.append(f"verdict (arrangement root theorem): {rep.verdict}")
    return data, lines, EXIT_OK


def cmd_normalize(args):
    n = _dimension(args, args.P)
    P = parse_operator(args.P, n)
    parts = graded_parts(P)
    data = {
        "operator": str(P),
        "terms": P.to_json(),
        "graded_parts": {str(k): str(v) for k, v in parts.items()},
    }
    lines = [f"normal form: {P}"] + [f"  grade {k}: {v}" for k, v in parts.items()]
    return data, lines, EXIT_OK


def cmd_ideal(args):
    n = _dimension(args, args.P)
    P = parse_operator(args.P, n)
    res = in_ideal_Dx(P)
    data = {"operator": str(P), **res.to_json()}
    sigma = None
    if not P.has_s():
        sigma = sigma_invariant(graded_parts(P).get(0, P.scale(0)))
    data["sigma"] = None if sigma is None else _q(sigma)
    lines = [f"operator: {P}",
             f"membership in the left ideal D<x> (gamma-sum criterion): {res.holds}"]
    for k, g, sp, v in res.failures:
        lines.append(f"  grade {k}, gamma={list(g)}, s^{sp}: sum = {_q(v)}")
    if sigma is not None:
        lines.append(f"grade-0 sigma invariant: {_q(sigma)}")
    return data, lines, EXIT_OK


def cmd_annihilator(args):
    n = _dimension(args, args.f, args.P)
    f = parse_polynomial(args.f, n)
    P = parse_operator(args.P, n)
    out = apply_to_fs(P, FsElement.fs(f))
    ann = out.is_zero()
    sigma = None
    if not P.has_s():
        sigma = sigma_invariant(graded_parts(P).get(0, P.scale(0)))
    if not ann:
        crit = "not an annihilator of f^s; containment criterion not applicable"
    elif sigma is None:
        crit = "operator involves s; containment criterion not applicable"
    elif sigma:
        crit = "criterion fails: the annihilator ideal is not contained in D<x>"
    else:
        crit = "no obstruction from this operator"
    data = {
        "f": str(f), "operator": str(P), "annihilator": ann, "result": out.to_json(),
        "sigma": None if sigma is None else _q(sigma), "criterion": crit,
    }
    lines = [f"P f^s = {out}", f"annihilator: {ann}",
             f"sigma invariant of grade-0 part: {data['sigma']}",
             f"containment criterion for the annihilator ideal: {crit}"]
    return data, lines, EXIT_OK


def cmd_bs(args):
    n = _dimension(args, args.f, args.P)
    f = parse_polynomial(args.f, n)
    P = parse_operator(args.P, n)
    b = parse_univariate_s(args.b)
    res = bs_pair_check(BSPair(P, b), f)
    data = {"f": str(f), "operator": str(P), "b": univariate_str(b), **res.to_json()}
    lines = [f"functional equation P(s) f^(s+1) = b(s) f^s: {'pass' if res.holds else 'FAIL'}"]
    if not res.holds:
        lines.append(f"residual: {res.residual}")
    return data, lines, EXIT_OK


def cmd_fs_apply(args):
    n = _dimension(args, args.f, args.P, args.numerator or "")
    f = parse_polynomial(args.f, n)
    P = parse_operator(args.P, n)
    g = parse_polynomial(args.numerator, n) if args.numerator else Polynomial.one(n)
    e = FsElement(f, SPolynomial.from_poly(g), args.fpow)
    out = apply_to_fs(P, e)
    if args.shift:
        out = t_shift(out)
    data = {"f": str(f), "operator": str(P), "result": out.to_json(), "text": str(out)}
    return data, [str(out)], EXIT_OK


def cmd_euler(args):
    n = _dimension(args, args.f)
    f = parse_polynomial(args.f, n)
    w = euler_root_witness(f)
    data = {"f": str(f), **w.to_json()}
    lines = [f"s f^s = -(n/d) f^s + (1/d) sum_i d_i(x_i f^s): {'verified' if w.verified else 'FAILED'}",
             f"n/d = {_q(w.n_over_d)}; candidate root {_q(w.candidate_root)}"]
    return data, lines, EXIT_OK if w.verified else EXIT_FAIL


def cmd_screen(args):
    f = load_polynomial(args.file, args.f, args.n)
    rep = homogeneous_root_screen(f)
    data = {"f": str(f), **rep.to_json()}
    eu = rep.euler
    lines = [f"f = {f}"]
    if eu.feasible:
        lines.append("Euler relation f^s = sum c_i d_i(x_i f^s): c = ("
                     + ", ".join(_q(c) for c in eu.c) + f"), verified={eu.verified}")
    else:
        lines.append("Euler relation: infeasible (ones vector lies in the exponent row space)")
    for w in rep.witnesses:
        lines.append(f"  witness S={list(w.S)}, k={w.k}, c=(" + ", ".join(_q(c) for c in w.c) + ")")
    for w in rep.balanced:
        lines.append(f"  balanced split S={list(w.S)}, k={w.k} (nk = dl, no relation forced)")
    for S, sep in rep.separable:
        if sep.separable:
            lines.append(f"  separable across S={list(S)}: ({sep.factors[0]}) * ({sep.factors[1]})")
    lines.append(f"homogeneous root conjecture screen: {rep.verdict}")
    lines.append(f"({data['note']})")
    return data, lines, EXIT_OK


def cmd_lattice(args):
    A = load_arrangement(args.file)
    order = None
    if args.order:
        try:
            order = [int(x) for x in args.order.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad --order {args.order!r}") from exc
    lam = None
    if args.weights:
        lam = [parse_rational(x) for x in args.weights.split(",")]
        if len(lam) != A.r:
            raise ParseError("--lambda needs one weight per form")
    rep = lattice_report(A, lam, order, args.budget)
    data = rep.to_json()
    lines = [f"characteristic polynomial: {char_poly_str(rep.char_poly)}",
             f"Euler characteristic of the projective complement: {rep.chi}",
             f"predicted top Betti number (when the arrangement theorem applies): {rep.predicted_top_betti}",
             f"nbc counts: {rep.nbc_counts}"]
    if rep.betti is not None:
        lines.append(f"Aomoto Betti numbers: {rep.betti}")
    return data, lines, EXIT_OK


def cmd_selftest(args):
    from . import selftest

    outcomes = selftest.run(args.seed)
    ok = all(o.passed for o in outcomes)
    data = {"passed": ok, "checks": [
        {"name": o.name, "passed": o.passed, "cases": o.cases, "detail": o.detail} for o in outcomes]}
    lines = [f"{'PASS' if o.passed else 'FAIL'}  {o.name} ({o.cases} cases){'  ' + o.detail if o.detail else ''}"
             for o in outcomes]
    return data, lines, EXIT_OK if ok else EXIT_FAIL


# -- argument parsing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="maximum number of forms for flat enumeration")
    common.add_argument("--n", type=int, default=None, help="ambient dimension (default: largest index used)")

    p = argparse.ArgumentParser(prog="ndroots", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("analyze-arrangement", parents=[common])
    s.add_argument("file")
    s.set_defaults(func=cmd_analyze)

    s = sub.add_parser("weyl-normalize", parents=[common])
    s.add_argument("--P", required=True)
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("ideal-check", parents=[common])
    s.add_argument("--P", required=True)
    s.set_defaults(func=cmd_ideal)

    s = sub.add_parser("annihilator-check", parents=[common])
    s.add_argument("--f", required=True)
    s.add_argument("--P", required=True)
    s.set_defaults(func=cmd_annihilator)

    s = sub.add_parser("bs-check", parents=[common])
    s.add_argument("--f", required=True)
    s.add_argument("--P", required=True)
    s.add_argument("--b", required=True)
    s.set_defaults(func=cmd_bs)

    s = sub.add_parser("fs-apply", parents=[common])
    s.add_argument("--f", required=True)
    s.add_argument("--P", required=True)
    s.add_argument("--numerator", default=None)
    s.add_argument("--fpow", type=int, default=0)
    s.add_argument("--shift", action="store_true", help="apply t (s -> s+1) to the result")
    s.set_defaults(func=cmd_fs_apply)

    s = sub.add_parser("euler-witness", parents=[common])
    s.add_argument("--f", required=True)
    s.set_defaults(func=cmd_euler)

    s = sub.add_parser("homog-screen", parents=[common])
    s.add_argument("file", nargs="?")
    s.add_argument("--f", default=None)
    s.set_defaults(func=cmd_screen)

    s = sub.add_parser("lattice", parents=[common])
    s.add_argument("file")
    s.add_argument("--order", default=None, help="comma-separated permutation of form indices")
    s.add_argument("--lambda", dest="weights", default=None, help="comma-separated Aomoto weights")
    s.set_defaults(func=cmd_lattice)

    s = sub.add_parser("selftest", parents=[common])
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        data, lines, code = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (PreconditionError, ValueError) as exc:
        print(f"precondition violated: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.format == "json":
        report = {"schema": 1, "command": args.command, **data}
        json.dump(report, out, indent=2)
        out.write("\n")
    else:
        for line in lines:
            out.write(line + "\n")
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

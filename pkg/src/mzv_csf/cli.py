"""Command-line front end: ``python -m mzv_csf <command> ...`` or ``mzv-csf``.

Exit status is 0 on success, 1 when a checked identity fails and 2 on usage
or input errors.
"""

from __future__ import annotations

import argparse
import inspect
import json
import re
import sys
from typing import TextIO

from . import cyclic_operators as ops
from . import zeta_maps
from .errors import CSFError
from .free_algebra import Poly, format_coeff, format_word, parse_index, parse_poly, parse_word
from .numeric_zeta import TruncationParams, Variant, csf_numeric_check, zeta_num, zeta_star_num
from .relation_engine import dims_table, key_prop_check, rho_membership
from .verification import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

MAPS = {
    "gamma": zeta_maps.gamma,
    "gamma-inv": zeta_maps.gamma_inv,
    "phi": zeta_maps.phi,
    "alpha": zeta_maps.alpha,
    "d": zeta_maps.apply_d,
    "alpha-tilde": zeta_maps.apply_alpha_tilde,
}

OPERATORS = {"rho": ops.rho, "rhobar": ops.rho_bar, "del": ops.partial}

# verify flag -> suite keyword
BOUNDS = {
    "max_weight": int,
    "max_degree": int,
    "max_n": int,
    "max_d": int,
    "max_depth": int,
    "max_sum": int,
    "samples": int,
    "seed": int,
    "M": int,
    "tolerance": float,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().rstrip()}")


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {v}")
    return v


def poly_arg(text: str) -> Poly:
    return parse_poly(text)


def word_arg(text: str) -> str:
    return "" if text == "1" else parse_word(text)


def word_or_index(text: str) -> Poly:
    """``[xy]+`` is a word; anything else, including a bare ``1``, is an index (``1`` means z_1 = y)."""
    if re.fullmatch(r"[xy]+", text):
        return Poly.word(text)
    return zeta_maps.zword_poly(parse_index(text))


def structured(p: Poly) -> str:
    return json.dumps({"terms": [{"coeff": format_coeff(c), "word": format_word(w)} for w, c in p]})


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mzv-csf", description="Cyclic sum formulas on the Hoffman word algebra.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def poly_command(name, **kw):
        p = sub.add_parser(name, **kw)
        p.add_argument("--format", choices=("text", "structured"), default="text")
        return p

    p = poly_command("map", help="apply gamma, gamma-inv, phi, alpha, d or alpha-tilde")
    p.add_argument("--name", required=True, choices=sorted(MAPS))
    p.add_argument("--input", required=True, type=poly_arg)

    p = poly_command("star", help="harmonic product of two words or indices")
    p.add_argument("--bar", action="store_true")
    p.add_argument("--left", required=True, type=word_or_index)
    p.add_argument("--right", required=True, type=word_or_index)

    for name in OPERATORS:
        p = poly_command(name, help=f"closed-form {name}_n of a word")
        p.add_argument("--n", required=True, type=positive_int)
        p.add_argument("--word", required=True, type=word_arg)

    p = poly_command("cderiv", help="cyclic derivative applied to 1 (or --at)")
    p.add_argument("--variant", required=True, choices=[v.value for v in ops.CyclicVariant])
    p.add_argument("--word", required=True, type=word_arg)
    p.add_argument("--at", type=poly_arg, default=None)

    p = sub.add_parser("member", help="membership of rho_n(w) in the Kawashima span")
    p.add_argument("--bar", action="store_true")
    p.add_argument("--n", required=True, type=positive_int)
    p.add_argument("--word", required=True, type=word_arg)

    p = sub.add_parser("keyprop", help="compare phi(rho_n(A-difference)) with its block expansion")
    p.add_argument("--n", required=True, type=positive_int)
    p.add_argument("--ks", required=True, type=parse_index)

    p = sub.add_parser("dims", help="table of dim CSF_d^n")
    p.add_argument("--max-weight", required=True, type=positive_int)
    p.add_argument("--bar", action="store_true")
    p.add_argument("--format", choices=("text", "structured"), default="text")

    p = sub.add_parser("zeta", help="truncated zeta or zeta-star value")
    p.add_argument("--star", action="store_true")
    p.add_argument("--index", required=True, type=parse_index)
    p.add_argument("--M", type=positive_int, default=TruncationParams.M)

    p = sub.add_parser("check-csf", help="numeric cyclic sum formula for an index")
    p.add_argument("--star", action="store_true")
    p.add_argument("--ks", required=True, type=parse_index)
    p.add_argument("--M", type=positive_int, default=TruncationParams.M)
    p.add_argument("--tolerance", type=float, default=1e-3)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    for key, typ in BOUNDS.items():
        p.add_argument("--" + key.replace("_", "-"), dest=key, type=typ, default=None)
    p.add_argument("--strict", action="store_true", default=None,
                   help="numeric suite: ignore the tail bound and use --tolerance alone")
    return parser


def _emit_poly(p: Poly, fmt: str, out: TextIO) -> int:
    print(structured(p) if fmt == "structured" else str(p), file=out)
    return EXIT_OK


def _verify(args, out: TextIO) -> int:
    fn = SUITES[args.suite]
    accepted = inspect.signature(fn).parameters
    bounds = {k: getattr(args, k) for k in list(BOUNDS) + ["strict"] if getattr(args, k) is not None}
    extra = sorted(set(bounds) - set(accepted))
    if extra:
        flags = ", ".join("--" + k.replace("_", "-") for k in extra)
        allowed = ", ".join("--" + k.replace("_", "-") for k in accepted) or "none"
        raise UsageError(f"verify {args.suite}: unsupported bound(s) {flags}; allowed: {allowed}")
    rep = run_suite(args.suite, **bounds)
    print(rep.summary(), file=out)
    for note in rep.notes:
        print(f"  {note}", file=out)
    return EXIT_OK if rep.ok else EXIT_FAIL


def dispatch(args, out: TextIO) -> int:
    cmd = args.command
    if cmd == "map":
        return _emit_poly(MAPS[args.name](args.input), args.format, out)
    if cmd == "star":
        product = zeta_maps.star_bar if args.bar else zeta_maps.star
        return _emit_poly(product(args.left, args.right), args.format, out)
    if cmd in OPERATORS:
        return _emit_poly(OPERATORS[cmd](args.n, Poly.word(args.word)), args.format, out)
    if cmd == "cderiv":
        res = ops.cyclic_derivative(ops.CyclicVariant(args.variant), args.word, args.at)
        return _emit_poly(res, args.format, out)
    if cmd == "member":
        cert = rho_membership(args.n, args.word, bar=args.bar)
        print("member" if cert.member else "not a member", file=out)
        for label, c in cert.combination:
            u, v = label
            print(f"  {format_coeff(c)} * ({format_word(u)}, {format_word(v)})", file=out)
        return EXIT_OK if cert.member else EXIT_FAIL
    if cmd == "keyprop":
        res = key_prop_check(args.n, args.ks)
        print(f"lhs: {res.lhs}", file=out)
        print(f"rhs: {res.rhs}", file=out)
        print("equal" if res.equal else "NOT equal", file=out)
        return EXIT_OK if res.equal else EXIT_FAIL
    if cmd == "dims":
        table = dims_table(args.max_weight, bar=args.bar)
        print(table.to_json() if args.format == "structured" else table.to_text(), file=out)
        return EXIT_OK
    if cmd == "zeta":
        fn = zeta_star_num if args.star else zeta_num
        r = fn(args.index, TruncationParams(M=args.M))
        print(f"{r.value:.15g}  (tail bound {r.tail_bound:.3e}, M={r.M_used})", file=out)
        return EXIT_OK
    if cmd == "check-csf":
        variant = Variant.MZSV if args.star else Variant.MZV
        r = csf_numeric_check(args.ks, variant, TruncationParams(M=args.M), args.tolerance)
        print(f"lhs {r.lhs:.15g}", file=out)
        print(f"rhs {r.rhs:.15g}", file=out)
        print(f"diff {r.diff:.3e} (tolerance {r.tolerance:g}, tail bound {r.tail_bound:.3e}): "
              f"{'ok' if r.passed else 'FAIL'}", file=out)
        return EXIT_OK if r.passed else EXIT_FAIL
    if cmd == "verify":
        return _verify(args, out)
    raise UsageError(f"unknown command {cmd!r}")


def run(argv: list[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return dispatch(args, out)
    except UsageError as e:
        print(f"usage error: {e}", file=err)
        return EXIT_USAGE
    except (CSFError, ValueError) as e:
        print(f"error: {e}", file=err)
        return EXIT_USAGE
    except SystemExit as e:  # --help
        return e.code if isinstance(e.code, int) else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

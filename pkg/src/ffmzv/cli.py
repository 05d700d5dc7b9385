"""Command-line interface: ``mzv <command> [flags]``."""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .algebra import GF
from .arrays import ArrayParseError, array_parse
from .gmaps import TrivialMZV, f_map, g_map, kernel_basis
from .harness import SUITES, Config, exit_status, report_json, run_suite
from .powersums import dagger_lt, dagger_powersum, powersum_brute, powersum_brute_lt, powersum_fast, powersum_fast_lt
from .series import DEFAULT_PREC, DivergenceError, lambda_value, zeta_value
from .stuffle import Mode, dagger_stuffle, stuffle_product


class UsageError(Exception):
    pass


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--q", type=int, default=3, help="field size (a prime power)")
    common.add_argument("--modulus", type=_int_list, default=None,
                        help="coefficients of the defining polynomial, lowest first, e.g. 1,0,1")
    common.add_argument("--prec", type=int, default=DEFAULT_PREC, help="requested precision N")

    ap = argparse.ArgumentParser(prog="mzv", description="Function-field multiple zeta values.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta", parents=[common], help="truncated zeta value of an array")
    p.add_argument("--array", required=True)
    p.add_argument("--method", choices=["auto", "brute", "fast"], default="auto")
    p.add_argument("--d", type=int, default=None, help="sum degrees below this bound")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("lambda", parents=[common], help="truncated lambda value of an array")
    p.add_argument("--array", required=True)
    p.add_argument("--d", type=int, default=None, help="sum flags with top degree below this bound")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("powersum", parents=[common], help="exact power sum S_d or S_<d")
    p.add_argument("--array", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--method", choices=["brute", "fast", "dagger"], default="brute")
    p.add_argument("--mode", choices=["d", "lt"], default="d")

    p = sub.add_parser("stuffle", parents=[common], help="expand a product of two arrays")
    p.add_argument("--array", action="append", required=True, help="give exactly twice")
    p.add_argument("--mode", choices=[m.value for m in Mode], default="DD")
    p.add_argument("--method", choices=["classical", "dagger"], default="classical")

    for name, text in (("gmap", "images of an eta monomial under the maps"),
                       ("kernel", "kernel basis element and its image")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("--sigma", type=_int_list, required=True)
        p.add_argument("--j", type=_int_list, required=True)
        p.add_argument("--mode", choices=["symbolic", "numeric"], default="symbolic")
        p.add_argument("--i-max", type=int, default=None, help="also print F up to this exponent level")

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--report", default=None, help="write a JSON report to this path")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--d", type=int, default=3, help="brute-force degree bound")
    p.add_argument("--timings", action="store_true", help="include runtime_ms in the report")
    p.add_argument("--quiet", action="store_true")
    return ap


def _array(text: str):
    try:
        return array_parse(text)
    except ArrayParseError as exc:
        raise UsageError(f"bad array {text!r}: {exc}")


def _field(args) -> GF:
    try:
        return GF.of_order(args.q, args.modulus)
    except ValueError as exc:
        raise UsageError(str(exc))


def _print_tate(x, args):
    if args.json:
        print(json.dumps(x.to_json(), indent=2))
    else:
        print(x)
        print(f"requested precision {x.N}, achieved {x.achieved}")


def cmd_zeta(args) -> int:
    F = _field(args)
    _print_tate(zeta_value(F, _array(args.array), args.prec, args.method, dmax=args.d), args)
    return 0


def cmd_lambda(args) -> int:
    F = _field(args)
    _print_tate(lambda_value(F, _array(args.array), args.prec, args.d), args)
    return 0


def cmd_powersum(args) -> int:
    F = _field(args)
    A = _array(args.array)
    table = {
        ("brute", "d"): powersum_brute, ("brute", "lt"): powersum_brute_lt,
        ("fast", "d"): powersum_fast, ("fast", "lt"): powersum_fast_lt,
        ("dagger", "d"): dagger_powersum, ("dagger", "lt"): dagger_lt,
    }
    if args.d < 0:
        raise UsageError("--d must be non-negative")
    print(table[args.method, args.mode](F, A, args.d))
    return 0


def cmd_stuffle(args) -> int:
    F = _field(args)
    if len(args.array) != 2:
        raise UsageError("stuffle needs --array exactly twice")
    A, B = (_array(a) for a in args.array)
    fn = dagger_stuffle if args.method == "dagger" else stuffle_product
    print(fn(F, A, B, args.mode))
    return 0


def _gmap_input(F: GF, args, basis: bool) -> TrivialMZV:
    if len(args.j) != len(args.sigma):
        raise UsageError("--j needs one entry per element of --sigma")
    return kernel_basis(F, args.sigma, args.j) if basis else TrivialMZV.eta(F, args.sigma, args.j)


def _show_maps(F: GF, f: TrivialMZV, args):
    print(f"f = {f}")
    print(f"G(f) = {g_map(f, args.mode, args.prec)}")
    if args.i_max is not None:
        x = f_map(f, args.i_max)
        print(f"F(f) = {x.numeric(args.prec) if args.mode == 'numeric' else x}")


def cmd_gmap(args) -> int:
    F = _field(args)
    _show_maps(F, _gmap_input(F, args, False), args)
    return 0


def cmd_kernel(args) -> int:
    F = _field(args)
    _show_maps(F, _gmap_input(F, args, True), args)
    return 0


def cmd_verify(args) -> int:
    cfg = Config(q=args.q, modulus=args.modulus, N=args.prec, dmax=args.d, seed=args.seed)
    _field(args)
    results = run_suite(args.suite, cfg)
    if not args.quiet:
        for r in results:
            rv = "inf" if r.residual_valuation == float("inf") else r.residual_valuation
            line = f"{r.status:4}  {r.check_id}  ({r.mode}, residual {rv})"
            if r.status != "PASS" and r.detail:
                line += f"  {r.detail}"
            print(line)
    counts = {s: sum(r.status == s for r in results) for s in ("PASS", "FAIL", "SKIP")}
    print(f"{counts['PASS']} passed, {counts['FAIL']} failed, {counts['SKIP']} skipped")
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report_json(results, cfg, args.timings) + "\n")
    return exit_status(results)


COMMANDS = {
    "zeta": cmd_zeta, "lambda": cmd_lambda, "powersum": cmd_powersum, "stuffle": cmd_stuffle,
    "gmap": cmd_gmap, "kernel": cmd_kernel, "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, DivergenceError) as exc:
        print(f"mzv: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

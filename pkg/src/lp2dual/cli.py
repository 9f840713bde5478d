"""Command-line interface.

Subcommands:

* ``norm2``  — evaluate a two-argument norm (or the projection volume) of a
  pair of functions given by generator specs.
* ``fnorm``  — evaluate one of the functional norms of a kernel.
* ``verify`` — run seeded verification suites and print margin summaries.
* ``gen``    — materialize a generator spec to CSV.

Exit codes: 0 success, 1 usage error, 2 invalid input, 3 verification
failure, 4 estimator did not converge (the value is still printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from ._version import __version__
from .errors import Lp2DualError
from .g_geometry import volume
from .grid import function_to_csv, kernel_to_csv, make_rule, sample_function, sample_kernel
from .two_functional import RatioSearchOptions, fnorm_21, fnorm_22_G, fnorm_22_H, yq_norm
from .two_norm import AscentOptions, gahler_norm, gunawan_norm
from .verify import SUITE_IDS, SuiteConfig, run_suite

__all__ = ["main"]

_EXIT_OK = 0
_EXIT_USAGE = 1
_EXIT_INPUT = 2
_EXIT_SUITE_FAILURE = 3
_EXIT_NOT_CONVERGED = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lp2dual",
        description="Weighted-grid two-argument norms, functional norms, and verification suites.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    norm2 = sub.add_parser("norm2", help="evaluate a two-argument norm of a function pair")
    norm2.add_argument("--norm", required=True, choices=("gunawan", "gahler", "volume"))
    norm2.add_argument("--p", required=True, type=float, help="exponent, a float >= 1")
    norm2.add_argument("--f1", required=True, help="generator spec of the first function")
    norm2.add_argument("--f2", required=True, help="generator spec of the second function")
    norm2.add_argument("--grid", type=int, default=256)
    norm2.add_argument("--rule", default="midpoint")
    norm2.add_argument("--seed", type=int, default=0, help="seed for randomized search starts")
    norm2.add_argument("--max-iter", type=int, default=None, help="iteration cap for the search (default: the library default)")
    norm2.add_argument("--json", action="store_true", help="print a JSON object instead of the bare value")

    fnorm = sub.add_parser("fnorm", help="evaluate a functional norm of a kernel")
    fnorm.add_argument("--kind", required=True, choices=("y", "21", "g22", "h22"))
    fnorm.add_argument("--p", required=True, type=float, help="exponent, a float >= 1")
    fnorm.add_argument("--kernel", required=True, help="generator spec of the kernel")
    fnorm.add_argument("--grid", type=int, default=256)
    fnorm.add_argument("--rule", default="midpoint")
    fnorm.add_argument("--seed", type=int, default=0, help="seed for randomized search starts")
    fnorm.add_argument("--max-iter", type=int, default=None, help="iteration cap for the search (default: the library default)")
    fnorm.add_argument("--json", action="store_true", help="print a JSON object instead of the bare value")

    verify = sub.add_parser("verify", help="run verification suites")
    verify.add_argument("--suite", required=True, help="suite id or 'all'")
    verify.add_argument("--p-list", default="1,1.5,2,3", help="comma-separated exponents")
    verify.add_argument("--trials", type=int, default=100)
    verify.add_argument("--grid", type=int, default=None, help="grid size (default: per-suite)")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--out", default=None, help="write the JSON report(s) to this path")
    verify.add_argument("--parallel", type=int, default=1, metavar="K", help="run trials on K threads")

    gen = sub.add_parser("gen", help="materialize a generator spec to CSV")
    gen.add_argument("--what", required=True, choices=("function", "kernel"))
    gen.add_argument("--spec", required=True)
    gen.add_argument("--grid", type=int, default=256)
    gen.add_argument("--rule", default="midpoint")
    gen.add_argument("--out", required=True)
    return parser


def _print_value(value: float, payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(f"{value:.12g}")


def _search_kwargs(args) -> dict:
    kwargs = {"seed": args.seed}
    if args.max_iter is not None:
        kwargs["max_iter"] = args.max_iter
    return kwargs


def _cmd_norm2(args) -> int:
    rule = make_rule(args.rule, args.grid)
    f1 = sample_function(rule, args.f1)
    f2 = sample_function(rule, args.f2)
    payload = {"norm": args.norm, "p": args.p, "grid": rule.n, "rule": rule.kind}
    if args.norm == "gunawan":
        value = gunawan_norm(f1, f2, args.p)
        converged = True
        payload.update(value=value, converged=True, is_lower_bound=False)
    elif args.norm == "volume":
        value = volume(f1, f2, args.p)
        converged = True
        payload.update(value=value, converged=True, is_lower_bound=False)
    else:
        est = gahler_norm(f1, f2, args.p, AscentOptions(**_search_kwargs(args)))
        value = est.value
        converged = est.converged
        payload.update(
            value=value,
            converged=est.converged,
            iterations=est.iterations,
            starts=est.starts,
            is_lower_bound=est.is_lower_bound,
            seed=args.seed,
        )
    _print_value(value, payload, args.json)
    return _EXIT_OK if converged else _EXIT_NOT_CONVERGED


def _cmd_fnorm(args) -> int:
    rule = make_rule(args.rule, args.grid)
    kern = sample_kernel(rule, args.kernel)
    payload = {"kind": args.kind, "p": args.p, "grid": rule.n, "rule": rule.kind, "seed": args.seed}
    if args.kind == "y":
        est = yq_norm(kern, args.p, AscentOptions(**_search_kwargs(args)))
    elif args.kind == "21":
        est = fnorm_21(kern, args.p, AscentOptions(**_search_kwargs(args)))
    elif args.kind == "g22":
        est = fnorm_22_G(kern, args.p, RatioSearchOptions(**_search_kwargs(args)))
    else:
        est = fnorm_22_H(kern, args.p, RatioSearchOptions(**_search_kwargs(args)))
    payload.update(
        value=est.value,
        converged=est.converged,
        iterations=est.iterations,
        starts=est.starts,
        is_lower_bound=est.is_lower_bound,
    )
    _print_value(est.value, payload, args.json)
    return _EXIT_OK if est.converged else _EXIT_NOT_CONVERGED


def _cmd_verify(args) -> int:
    if args.suite == "all":
        suites = list(SUITE_IDS)
    else:
        suites = [args.suite]
    p_list = tuple(float(tok) for tok in args.p_list.split(",") if tok.strip())
    reports = []
    any_fail = False
    for suite_id in suites:
        config = SuiteConfig(
            suite_id=suite_id,
            p_list=p_list,
            grid_n=args.grid,
            trials=args.trials,
            master_seed=args.seed,
        )
        report = run_suite(config, parallel=max(1, args.parallel))
        reports.append(report)
        summary = report.summary
        min_margin = min(summary["min_margins"].values(), default=float("inf"))
        print(
            f"suite={suite_id} pass={summary['pass']} fail={summary['fail']} "
            f"min_margin={min_margin:.6g}"
        )
        if summary["fail"]:
            any_fail = True
    if args.out is not None:
        if args.suite == "all":
            payload = [r.to_payload() for r in reports]
        else:
            payload = reports[0].to_payload()
        Path(args.out).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return _EXIT_SUITE_FAILURE if any_fail else _EXIT_OK


def _cmd_gen(args) -> int:
    rule = make_rule(args.rule, args.grid)
    if args.what == "function":
        text = function_to_csv(sample_function(rule, args.spec))
    else:
        text = kernel_to_csv(sample_kernel(rule, args.spec))
    Path(args.out).write_text(text)
    print(args.out)
    return _EXIT_OK


_COMMANDS = {
    "norm2": _cmd_norm2,
    "fnorm": _cmd_fnorm,
    "verify": _cmd_verify,
    "gen": _cmd_gen,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version and nonzero for usage errors.
        return _EXIT_OK if exc.code == 0 else _EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (Lp2DualError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Exit status: 0 on success, 1 when a verification is rejected (or a search
comes back without a certificate), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path
from typing import List, Optional

from . import __version__
from .asymptotics import (
    DEFAULT_TOL,
    gamma_curve,
    gamma_zero_diagnostics,
    j_min_estimate,
    predict_regimeA,
    solve_gamma,
)
from .depth import hdepth_std, hdepth_via_oracle
from .exact import DEFAULT_CACHE_LIMIT, configure_cache
from .koszul import HookAssignment, search_hooks, verify_stanley
from .multigraded import (
    LEX_GREEDY,
    MAX_MATCHING,
    SCD,
    build_upper_decomposition,
    verify_hilbert_decomposition,
)
from .report import (
    RunManifest,
    depth_table,
    figure_path,
    render_curve_json,
    render_table_figure,
    render_curve_figure,
    write_curve,
    write_table,
)

STRATEGY_FLAGS = {"scd": SCD, "lex": LEX_GREEDY, "matching": MAX_MATCHING}


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _threads_default() -> int:
    env = os.environ.get("SYZDEPTH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="syzdepth", description=__doc__)
    parser.add_argument("--version", action="version", version=f"syzdepth {__version__}")
    parser.add_argument("--threads", type=int, default=_threads_default(),
                        help="worker count for cell sweeps (default: SYZDEPTH_THREADS or 1)")
    parser.add_argument("--cache", type=int, default=DEFAULT_CACHE_LIMIT,
                        help="binomial row cache bound")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("hdepth", help="Hilbert depth of one (n, k) cell")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the prefix-sum expansion route")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("table", help="depth table for all cells up to n-max")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--out", type=Path, default=None, help="output file (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--no-plot", action="store_true", help="skip the figure next to the table")

    p = sub.add_parser("decompose", help="upper-range Hilbert decomposition")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", choices=tuple(STRATEGY_FLAGS), default="scd")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", type=Path, default=None)

    p = sub.add_parser("stanley", help="verify or search hooks for a Stanley upgrade")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--strategy", choices=tuple(STRATEGY_FLAGS), default="lex")
    p.add_argument("--hooks", type=Path, default=None, help="hook assignment JSON to verify")
    p.add_argument("--search", action="store_true", help="search for a valid hook assignment")
    p.add_argument("--budget", type=float, default=10.0, help="search time budget in seconds")
    p.add_argument("--out", type=Path, default=None, help="write the accepted hooks as JSON")

    p = sub.add_parser("gamma", help="solve the limit-codepth equation at one beta")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)

    p = sub.add_parser("gamma-curve", help="limit codepth as a function of beta")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--tol", type=float, default=DEFAULT_TOL)
    p.add_argument("--out", type=Path, required=True)
    p.add_argument("--json-out", type=Path, default=None, help="also write a JSON variant with residuals")
    p.add_argument("--no-plot", action="store_true")

    p = sub.add_parser("predict", help="fixed-k asymptotic depth prediction")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    return parser


def _manifest(args: argparse.Namespace, argv: List[str], **tolerances) -> RunManifest:
    return RunManifest(
        command_line="syzdepth " + " ".join(argv),
        threads=args.threads,
        binomial_cache=args.cache,
        tolerances=tolerances,
    )


def _cmd_hdepth(args, argv) -> int:
    res = hdepth_std(args.n, args.k)
    oracle_value = None
    if args.oracle:
        oracle_value = hdepth_via_oracle(args.n, args.k)
        if oracle_value != res.hdepth:
            print(
                f"REJECTED: scan route gives {res.hdepth} but the expansion "
                f"oracle gives {oracle_value}",
                file=sys.stderr,
            )
            return 1
    if args.json:
        payload = asdict(res)
        if oracle_value is not None:
            payload["oracle_hdepth"] = oracle_value
        print(json.dumps(payload, indent=2))
    else:
        print(f"hdepth({args.n},{args.k}) = {res.hdepth}   (min_u = {res.min_u})")
        print(f"bounds: {res.lower_bound} <= {res.hdepth} <= {res.upper_bound}")
        wp = res.witness_positive
        print(f"positive at s = {wp.s} (checked j <= {wp.checked_range})")
        if res.witness_negative:
            wn = res.witness_negative
            print(f"negative at s = {wn.s}: coefficient {wn.witness_coeff} at j = {wn.witness_j}")
        if args.oracle:
            print("oracle cross-check: agreed")
    return 0


def _cmd_table(args, argv) -> int:
    rows = depth_table(args.n_max, threads=args.threads)
    digest = write_table(rows, args.format, args.out)
    if args.out is not None:
        manifest = _manifest(args, argv)
        manifest.record(args.out, digest)
        if not args.no_plot:
            fig = figure_path(args.out)
            render_table_figure(rows, fig)
            manifest.record(fig, _file_digest(fig))
        manifest.write(args.out.with_suffix(args.out.suffix + ".manifest.json"))
        print(f"wrote {args.out} ({digest[:16]})")
    return 0


def _cmd_decompose(args, argv) -> int:
    dec = build_upper_decomposition(args.n, args.k, STRATEGY_FLAGS[args.strategy])
    if args.verify:
        report = verify_hilbert_decomposition(dec)
        if not report.accepted:
            print(f"REJECTED: {report.detail}", file=sys.stderr)
            return 1
        print(f"verified: {report.detail}")
    payload = json.dumps(dec.to_json_dict(), indent=2) + "\n"
    if args.out is None:
        sys.stdout.write(payload)
    else:
        args.out.write_text(payload, encoding="utf-8")
        print(f"wrote {args.out} ({len(dec.pieces)} pieces)")
    return 0


def _cmd_stanley(args, argv) -> int:
    if args.hooks is None and not args.search:
        print("stanley: one of --hooks or --search is required", file=sys.stderr)
        return 2
    dec = build_upper_decomposition(args.n, args.k, STRATEGY_FLAGS[args.strategy])
    if args.hooks is not None:
        data = json.loads(args.hooks.read_text(encoding="utf-8"))
        hooks = HookAssignment.from_json_list(data, dec)
        report = verify_stanley(dec, hooks)
        if not report.accepted:
            print(f"REJECTED: {report.detail}", file=sys.stderr)
            return 1
        print(f"accepted: certified Stanley depth {report.certified_depth}")
        return 0
    result = search_hooks(dec, budget=args.budget)
    if result.status == "found":
        print(
            f"found hooks in {result.elapsed:.2f}s ({result.nodes} nodes); "
            f"certified Stanley depth {result.report.certified_depth}"
        )
        if args.out is not None:
            args.out.write_text(
                json.dumps(result.assignment.to_json_list(dec), indent=2) + "\n",
                encoding="utf-8",
            )
            print(f"wrote {args.out}")
        return 0
    if result.status == "timeout":
        print(f"INCONCLUSIVE: search budget of {args.budget}s exhausted ({result.nodes} nodes)")
        return 1
    print(f"no hook assignment exists under this search ({result.nodes} nodes)")
    return 1


def _cmd_gamma(args, argv) -> int:
    sol = solve_gamma(args.beta, args.tol)
    print(f"beta      = {sol.beta:.12g}")
    print(f"gamma     = {sol.gamma:.12g}")
    print(f"alpha0    = {sol.alpha0:.12g}")
    print(f"residual  = {sol.residual:.3e}")
    print(f"iterations = {sol.iterations}")
    diag = gamma_zero_diagnostics(args.beta)
    print(f"f at gamma=0: direct {diag['direct']:.12g}, simplified form {diag['simplified']:.12g}")
    return 0


def _cmd_gamma_curve(args, argv) -> int:
    solutions = gamma_curve(args.steps, args.tol)
    points = [(s.beta, s.gamma) for s in solutions]
    digest = write_curve(points, args.out)
    manifest = _manifest(args, argv, gamma_tol=args.tol)
    manifest.record(args.out, digest)
    if args.json_out is not None:
        data = render_curve_json(solutions, args.tol)
        args.json_out.write_bytes(data)
        manifest.record(args.json_out, hashlib.sha256(data).hexdigest())
    if not args.no_plot:
        fig = figure_path(args.out)
        render_curve_figure(points, fig)
        manifest.record(fig, _file_digest(fig))
    manifest.write(args.out.with_suffix(args.out.suffix + ".manifest.json"))
    print(f"wrote {args.out} ({digest[:16]})")
    return 0


def _cmd_predict(args, argv) -> int:
    pred = predict_regimeA(args.n, args.k)
    t1, t2, t3 = pred.terms
    print(f"predicted hdepth({args.n},{args.k}) ~ {pred.value:.6f}")
    print(f"terms: n/2 = {t1:.6f}, sqrt term = {t2:.6f}, loglog term = {t3:.6f}")
    print(f"critical scan index ~ {j_min_estimate(args.n, args.k):.6f}")
    return 0


_HANDLERS = {
    "hdepth": _cmd_hdepth,
    "table": _cmd_table,
    "decompose": _cmd_decompose,
    "stanley": _cmd_stanley,
    "gamma": _cmd_gamma,
    "gamma-curve": _cmd_gamma_curve,
    "predict": _cmd_predict,
}


def cmd_dispatch(argv: Optional[List[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    configure_cache(args.cache)
    try:
        return _HANDLERS[args.command](args, argv)
    except (ValueError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(cmd_dispatch())


if __name__ == "__main__":
    main()

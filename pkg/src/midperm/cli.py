"""Command-line interface.

Exit codes: 0 = all checks passed, 1 = checks ran and failed, 2 = usage or
limit error, 3 = conjecture counterexample candidate found.  Structured
output (json/csv/dot) is byte-identical across reruns with the same flags
and seed; text output may include timing, which is non-deterministic.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from .cache import cached_crossovers, default_cache_dir
from .geodesic import crossovers
from .lab import (
    SUITE_LIMITS,
    bm_curved_check,
    bm_flat_check,
    default_curvature,
    epsilon_estimate,
    hypercube_embed,
    sample_subsets,
    verify_suite,
)
from .perms import (
    Composition,
    DegreeLimitError,
    Permutation,
    compose,
    cycle_count,
    cycle_string,
    distance,
    enumerate_group,
    transposition,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_CANDIDATE = 3


class UsageError(Exception):
    pass


def _parse_mu(text: str) -> Composition:
    try:
        parts = tuple(int(x) for x in text.split(","))
        return Composition(parts)
    except ValueError as exc:
        raise UsageError(f"invalid composition {text!r}: {exc}") from exc


def _emit_json(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _emit_csv(header: list[str], rows: list[list]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    sys.stdout.write(buf.getvalue())


def _fmt_float(v) -> str:
    return "" if v is None else f"{v:.12g}"


def cmd_crossovers(args) -> int:
    mu = _parse_mu(args.mu)
    if args.no_cache:
        cr = crossovers(mu)
    else:
        cr = cached_crossovers(mu, Path(args.cache_dir) if args.cache_dir else None)
    fmt = args.format or "text"
    dual_index = cr.dual_index()
    if fmt == "json":
        _emit_json(cr.to_json_dict())
    elif fmt == "csv":
        _emit_csv(
            ["index", "permutation", "dual_index"],
            [[i, cycle_string(c), dual_index[i]] for i, c in enumerate(cr.elements)],
        )
    else:
        print(f"Cr(({mu})): {len(cr)} crossovers")
        for i, c in enumerate(cr.elements):
            print(f"  {i}: {cycle_string(c)}  dual -> {dual_index[i]}")
    return EXIT_OK


def cmd_verify(args) -> int:
    report = verify_suite(args.n, args.suite)
    fmt = args.format or "text"
    if fmt == "json":
        _emit_json(report.to_json_dict())
    else:
        for name, stats in report.metrics["per_suite"].items():
            print(f"{name}: {stats['cases']} cases, {stats['failures']} failures")
        print(
            f"total: {report.metrics['cases']} cases, "
            f"{report.metrics['failures']} failures "
            f"[runtime {report.runtime_ms} ms, non-deterministic]"
        )
    return EXIT_OK if report.passed else EXIT_FAILED


def cmd_bm(args) -> int:
    n = args.n
    limit = math.factorial(n)
    default_size = min(8, limit // 2) or 1
    size_a = args.size_a or default_size
    size_b = args.size_b or default_size
    seed = args.seed if args.seed is not None else 0
    if size_a < 1 or size_b < 1 or size_a + size_b * args.disjoint > limit:
        raise UsageError(f"infeasible sizes for S({n})")
    trials = []
    for t in range(args.trials):
        A, B = sample_subsets(n, size_a, size_b, args.disjoint, seed + t)
        if args.curved:
            report = bm_curved_check(A, B, args.k)
        else:
            report = bm_flat_check(A, B)
        report.inputs["seed"] = seed + t
        trials.append(report)
    all_passed = all(r.passed for r in trials)
    summary = {
        "n": n,
        "curved": args.curved,
        "k": (args.k or default_curvature(n)) if args.curved else None,
        "trials": args.trials,
        "passed": all_passed,
    }
    fmt = args.format or "text"
    if fmt == "json":
        _emit_json({"summary": summary, "trials": [r.to_json_dict() for r in trials]})
    elif fmt == "csv":
        _emit_csv(
            ["trial", "seed", "size_m", "set_distance", "residual", "passed"],
            [
                [
                    t,
                    r.inputs["seed"],
                    r.metrics["size_m"],
                    r.metrics.get("set_distance", ""),
                    _fmt_float(r.metrics["residual"]),
                    r.passed,
                ]
                for t, r in enumerate(trials)
            ],
        )
    else:
        if args.curved:
            print(f"K = {summary['k']:.6g}")
        for t, r in enumerate(trials):
            print(
                f"trial {t}: |M|={r.metrics['size_m']} "
                f"residual={r.metrics['residual']:.6g} "
                f"{'pass' if r.passed else 'FAIL'}"
            )
        print(f"{args.trials} trials, all passed: {all_passed}")
    return EXIT_OK if all_passed else EXIT_FAILED


def cmd_concentration(args) -> int:
    if args.n > 7:
        raise DegreeLimitError("concentration explorer limited to degree 7")
    report = epsilon_estimate(args.n, args.mode)
    rows = report.metrics["rows"]
    fmt = args.format or "csv"
    if fmt == "json":
        _emit_json(report.to_json_dict())
    elif fmt == "csv":
        _emit_csv(
            ["mu", "r", "cr_size", "s", "bound_epsilon", "flagged"],
            [
                [
                    ",".join(str(p) for p in row["mu"]),
                    row["r"],
                    row["cr_size"],
                    row["s"],
                    _fmt_float(row["bound_epsilon"]),
                    row["flagged"],
                ]
                for row in rows
            ],
        )
    else:
        for row in rows:
            flag = "  << candidate" if row["flagged"] else ""
            print(
                f"mu=({','.join(str(p) for p in row['mu'])}) r={row['r']} "
                f"|Cr|={row['cr_size']} s={row['s']} "
                f"eps<={_fmt_float(row['bound_epsilon']) or '-'}{flag}"
            )
        eps = report.metrics["eps_hat"]
        print(f"eps_hat = {_fmt_float(eps) or 'n/a'}")
    return EXIT_OK if report.metrics["flagged_count"] == 0 else EXIT_CANDIDATE


def cmd_embed_check(args) -> int:
    N = args.bits
    if N > 6:
        raise DegreeLimitError("embedding check limited to 6 bits")
    n = args.n or 2 * N
    points = [tuple((i >> k) & 1 for k in range(N)) for i in range(2**N)]
    images = {x: hypercube_embed(x, n) for x in points}
    cases = failures = 0
    for x in points:
        for y in points:
            cases += 1
            hamming = sum(1 for a, b in zip(x, y) if a != b)
            if distance(images[x], images[y]) != hamming:
                failures += 1
    fmt = args.format or "text"
    result = {"bits": N, "n": n, "cases": cases, "failures": failures}
    if fmt == "json":
        _emit_json(result)
    else:
        print(f"embedding check: {cases} pairs, {failures} failures")
    return EXIT_OK if failures == 0 else EXIT_FAILED


def cmd_cayley_dot(args) -> int:
    n = args.n
    if n > 6:
        raise DegreeLimitError("cayley-dot limited to degree 6")
    elements = list(enumerate_group(n))
    levels: dict[int, list[Permutation]] = {}
    for p in elements:
        levels.setdefault(n - cycle_count(p), []).append(p)
    lines = [f"graph cayley_s{n} {{"]
    for r in sorted(levels):
        names = "; ".join(f'"{cycle_string(p)}"' for p in levels[r])
        lines.append(f"  {{ rank=same; {names}; }}")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for p in elements:
        for i, j in pairs:
            q = compose(p, transposition(n, i, j))
            if p.images < q.images:
                lines.append(f'  "{cycle_string(p)}" -- "{cycle_string(q)}";')
    lines.append("}")
    sys.stdout.write("\n".join(lines) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text", "dot"])
    common.add_argument("--cache-dir", default=None, help=f"default: {default_cache_dir()}")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--jobs", type=int, default=1, help="reserved; sweeps run serially")
    common.add_argument("--no-cache", action="store_true")

    parser = argparse.ArgumentParser(prog="midperm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("crossovers", parents=[common], help="enumerate Cr(mu) with dual indices")
    p.add_argument("--mu", required=True, help="composition, e.g. 3,1")
    p.set_defaults(func=cmd_crossovers)

    p = sub.add_parser("verify", parents=[common], help="run exhaustive verification suites")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--suite", choices=sorted(SUITE_LIMITS), default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bm", parents=[common], help="Brunn-Minkowski inequality trials")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size-a", type=int, default=None)
    p.add_argument("--size-b", type=int, default=None)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--curved", action="store_true")
    p.add_argument("--disjoint", action="store_true")
    p.add_argument("--k", type=float, default=None, help="override the curvature constant")
    p.set_defaults(func=cmd_bm)

    p = sub.add_parser("concentration", parents=[common], help="separated-set rate table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=["exact", "greedy"], default="exact")
    p.set_defaults(func=cmd_concentration)

    p = sub.add_parser("embed-check", parents=[common], help="hypercube embedding isometry check")
    p.add_argument("--bits", type=int, required=True)
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=cmd_embed_check)

    p = sub.add_parser("cayley-dot", parents=[common], help="DOT export of the Cayley graph")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_cayley_dot)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DegreeLimitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

"""Command-line entry point: ``invwalk <command> ...``.

Exit codes: 0 success, 2 bad input, 3 capacity limit, 4 failed internal verification.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

from . import __version__, encoding, rank_stats, restricted, spectral, walk_sim
from .errors import CapacityError, InputError, VerificationError

EXIT_INPUT, EXIT_CAPACITY, EXIT_VERIFY = 2, 3, 4

# flags that change where or how fast output is produced, never what it contains
_NON_SEMANTIC = {"threads", "out", "csv", "json", "format", "func"}


def _rational(x: Fraction) -> dict:
    x = Fraction(x)
    return {"num": x.numerator, "den": x.denominator, "float": float(x)}


class Result:
    """A command's output: scalar summary plus optional table."""

    def __init__(self, summary: dict | None = None, columns=(), rows=(), default_format: str = "json"):
        self.summary = summary or {}
        self.columns = list(columns)
        self.rows = [list(r) for r in rows]
        self.default_format = default_format


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def _json_value(v):
    if isinstance(v, Fraction):
        return _rational(v)
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {str(k): _json_value(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_json_value(x) for x in v]
    return v


def render(result: Result, meta: dict, fmt: str) -> str:
    if fmt == "json":
        doc = {"meta": meta, **_json_value(result.summary)}
        if result.columns:
            doc["rows"] = [dict(zip(result.columns, _json_value(r))) for r in result.rows]
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    buf = io.StringIO()
    buf.write(f"# tool: invwalk {meta['version']}\n")
    buf.write(f"# command: {meta['command']}\n")
    buf.write(f"# args: {json.dumps(meta['args'], sort_keys=True)}\n")
    writer = csv.writer(buf, lineterminator="\n")
    if result.columns:
        writer.writerow(result.columns)
        writer.writerows([_csv_cell(v) for v in r] for r in result.rows)
    else:
        flat = {k: v for k, v in result.summary.items() if not isinstance(v, (dict, list))}
        writer.writerow(flat.keys())
        writer.writerow(_csv_cell(v) for v in flat.values())
    return buf.getvalue()


def cmd_spectrum(a) -> Result:
    spec = spectral.full_spectrum(a.n, a.threads)
    m = spec.m
    width = max(1, (m + 3) // 4)
    den = float(1 << a.n)
    rows = ((f"0x{code:0{width}x}", int(r), int(s), int(s) / den) for code, (r, s) in enumerate(zip(spec.ranks, spec.sums)))
    summary = {"n": a.n, "m": m, "rank_histogram": spec.rank_histogram(), "spectral_gap": spectral.spectral_gap(a.n) if a.n > 1 else None}
    return Result(summary, ["A", "rank", "S_A", "lambda"], rows, "csv")


def cmd_tv(a) -> Result:
    if a.t_min < 1:
        raise InputError("--t-min must be at least 1 (exact TV is defined for t >= 1)")
    rows = walk_sim.cutoff_profile(a.n, a.t_max, a.t_min)
    cols = ["t", "d_exact", "l2_upper", "paper_upper", "paper_lower"]
    return Result({"n": a.n}, cols, [(r.t, r.d_exact, r.d_l2_upper, r.d_paper_upper, r.d_paper_lower) for r in rows], "csv")


def cmd_profile(a) -> Result:
    rows = walk_sim.cutoff_profile(a.n, a.t_max)
    fields = walk_sim.PROFILE_FIELDS
    return Result({"n": a.n, "uppertail_constant": spectral.uppertail_constant()}, fields, [[getattr(r, f) for f in fields] for r in rows], "csv")


def cmd_hk(a) -> Result:
    report = restricted.verify_hk_equals_vk(a.n, a.k, membership=100 if a.membership else 0, seed=a.seed)
    result = Result(report.as_dict())
    if not report.passed:
        raise _Failed(result)
    return result


def cmd_hk_sweep(a) -> Result:
    if a.n_max < 4:
        raise InputError("--n-max must be at least 4")
    rows, failed = [], False
    for n in range(4, a.n_max + 1):
        for k in range(2, n - 1):
            r = restricted.verify_hk_equals_vk(n, k, membership=a.membership, seed=a.seed)
            d = r.as_dict()
            failed |= not r.passed
            rows.append([d[c] for c in _SWEEP_COLS])
    result = Result({"n_max": a.n_max}, _SWEEP_COLS, rows, "csv")
    if failed:
        raise _Failed(result)
    return result


_SWEEP_COLS = ["n", "k", "k_mod_4", "wilson_rank", "elimination_rank", "vk_dim", "generators_in_vk", "membership_checked", "pass"]


def cmd_altcount(a) -> Result:
    census = rank_stats.alternating_census(a.n, allow_long=a.long, threads=a.threads)
    m = encoding.num_pairs(a.n)
    rows = []
    ok = census.total == 1 << m
    for r in range(0, a.n + 1, 2):
        count = census.counts.get(r, 0)
        bound = rank_stats.alt_count_bound(a.n, r)
        ok &= count <= bound
        rows.append([r, count, bound, count <= bound])
    result = Result({"n": a.n, "total": census.total, "expected_total": 1 << m, "pass": ok}, ["rank", "count", "bound", "dominated"], rows)
    if not ok:
        raise _Failed(result)
    return result


def cmd_ranktail(a) -> Result:
    est = rank_stats.sample_symmetric_rank_tail(a.n, a.trials, a.seed, threads=a.threads)
    rows = [[r.s, r.hits, r.estimate, r.ci_low, r.ci_high, r.bound] for r in est.rows]
    summary = {"n": a.n, "trials": a.trials, "seed": a.seed, "rank_histogram": est.rank_histogram}
    return Result(summary, ["s", "hits", "estimate", "ci_low", "ci_high", "bound"], rows, "csv")


def cmd_ball(a) -> Result:
    if a.t < 0:
        raise InputError("--t must be non-negative")
    sizes = encoding.ball_sizes(a.n)
    size = sizes[min(a.t, len(sizes) - 1)]
    bound = rank_stats.ball_volume_bound(a.n, a.n - a.t) if a.t <= a.n else None
    summary = {"n": a.n, "t": a.t, "ball_size": size, "bound": bound, "diameter": len(sizes) - 1}
    rows = []
    for t, s in enumerate(sizes):
        rows.append([t, s, rank_stats.ball_volume_bound(a.n, a.n - t) if t <= a.n else None])
    return Result(summary, ["t", "ball_size", "bound"], rows)


def cmd_simulate(a) -> Result:
    if a.variant == "hypercube":
        if a.m is None:
            raise InputError("--m is required for --variant hypercube")
        rows = walk_sim.hypercube_profile(a.m, a.trials, [a.t], seed=a.seed, threads=a.threads)
        r = rows[0]
        summary = {"variant": "hypercube", "m": a.m, "t": a.t, "trials": a.trials, "seed": a.seed,
                   "statistic": r.statistic, "exact": r.exact, "bias_bound": r.bias_bound,
                   "cutoff_time": walk_sim.hypercube_cutoff_time(a.m)}
        return Result(summary)
    if a.n is None:
        raise InputError("--n is required for this variant")
    if a.variant == "k" and a.k is None:
        raise InputError("--k is required for --variant k")
    config = walk_sim.WalkConfig(n=a.n, variant=a.variant, k=a.k, horizon=a.t, trials=a.trials, seed=a.seed)
    est = walk_sim.mc_tv_estimate(config, a.t, threads=a.threads)
    summary = {"variant": a.variant, "n": a.n, "k": a.k, "t": a.t, "trials": a.trials, "seed": a.seed,
               "empirical_tv": est.value, "bias_bound": est.bias_bound, "exact_tv": est.exact}
    if a.variant == "full":
        summary["support_lower_bound"] = walk_sim.mc_tv_estimate(config, a.t, mode="support").value
    return Result(summary)


class _Failed(Exception):
    def __init__(self, result: Result):
        self.result = result


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="invwalk", description="Exact spectra, mixing profiles and subgroup checks for the tournament inversion walk.")
    parser.add_argument("--version", action="version", version=f"invwalk {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker cap; never changes results")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--format", choices=("json", "csv"), help="output format (default depends on command)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("spectrum", cmd_spectrum, "all eigenvalues S_A / 2^n with form ranks")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--csv")
    p = add("tv", cmd_tv, "exact TV distance and bounds over a time range")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-min", type=int, default=1)
    p.add_argument("--t-max", type=int, required=True)
    p.add_argument("--csv")
    p = add("profile", cmd_profile, "cutoff profile rows for t = 0..t-max")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t-max", type=int, required=True)
    p.add_argument("--csv")
    p = add("hk", cmd_hk, "verify the k-restricted subgroup for one (n, k)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--membership", action="store_true", help="also test 100 random members of V_k")
    p.add_argument("--seed", type=int, default=0)
    p = add("hk-sweep", cmd_hk_sweep, "verify every 4 <= n <= n-max, 2 <= k <= n-2")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--membership", type=int, default=0, help="random members checked per pair")
    p.add_argument("--seed", type=int, default=0)
    p = add("altcount", cmd_altcount, "exact alternating-form rank census against the counting bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--long", action="store_true", help="allow the n = 8 census")
    p = add("ranktail", cmd_ranktail, "Monte Carlo rank tail of random symmetric matrices")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p = add("ball", cmd_ball, "inversion ball volume against its bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--csv")
    p = add("simulate", cmd_simulate, "Monte Carlo run of a walk variant")
    p.add_argument("--variant", choices=walk_sim.VARIANTS, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--json")
    return parser


def _emit(result: Result, args, stdout) -> None:
    meta = {
        "tool": "invwalk",
        "version": __version__,
        "command": args.command,
        "args": {k: v for k, v in sorted(vars(args).items()) if k not in _NON_SEMANTIC and k != "command"},
    }
    path = getattr(args, "csv", None) or getattr(args, "json", None) or args.out
    fmt = args.format or ("csv" if getattr(args, "csv", None) else "json" if getattr(args, "json", None) else result.default_format)
    text = render(result, meta, fmt)
    if path:
        with open(path, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        stdout.write(text)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.threads < 1:
        print("invwalk: error: --threads must be at least 1", file=stderr)
        return EXIT_INPUT
    try:
        result = args.func(args)
    except _Failed as failed:
        _emit(failed.result, args, stdout)
        print("invwalk: verification failed", file=stderr)
        return EXIT_VERIFY
    except InputError as exc:
        print(f"invwalk: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"invwalk: capacity limit: {exc}", file=stderr)
        return EXIT_CAPACITY
    except VerificationError as exc:
        print(f"invwalk: verification failed: {exc}", file=stderr)
        return EXIT_VERIFY
    _emit(result, args, stdout)
    return 0


def main_entry() -> None:
    sys.exit(main())

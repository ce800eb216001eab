"""Command line entry point: ``tchull hull|check|bench|svg``."""

from __future__ import annotations

import argparse
import csv
import json
import math
import multiprocessing
import random
import statistics
import sys
import time
from fractions import Fraction

from .geometry import HighwayConfig
from .io import (ConstraintError, InstanceFile, SchemaError, load_instance, make_config,
                 parse_result, result_from_hull, validate_result)
from .oracle import oracle_clusters
from .pipeline import time_convex_hull

EXIT_PARSE = 2
EXIT_CONSTRAINT = 3
EXIT_MISMATCH = 4

L1_SPEEDS = (Fraction(3, 2), Fraction(2), Fraction(5), Fraction(100))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


def _read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _instance(path, metric=None, speed=None):
    """Load an instance; ``metric``/``speed`` given on the command line win."""
    from .io import parse_instance

    inst = parse_instance(_read_text(path))
    if metric is not None or speed is not None:
        m = metric or inst.cfg.metric.value
        if speed is None and m == inst.cfg.metric.value:
            speed = "inf" if inst.cfg.speed is None else str(inst.cfg.speed)
        inst = InstanceFile(make_config(m, speed), inst.points)
    return inst


# --- hull -------------------------------------------------------------------


def cmd_hull(args):
    inst = _instance(args.input, args.metric, args.speed)
    t0 = time.perf_counter()
    res = time_convex_hull(inst.points, inst.cfg)
    elapsed = time.perf_counter() - t0
    stats = res.stats.as_dict()
    stats["clusters"] = len(res.hull.clusters)
    stats["elapsed"] = round(elapsed, 6)
    out = result_from_hull(res, inst.cfg, stats)
    validate_result(json.loads(out.to_json()))
    _write_text(args.out, out.to_json())
    return 0


# --- check ------------------------------------------------------------------


GRID_STEPS = (Fraction(1, 4), Fraction(1), Fraction(25), Fraction(125))


def random_instance(rng, n_max, metric=None, speed=None):
    """Random instance: n in [2, n_max], coordinates in [0, 1000] on a grid
    whose step is drawn per instance (coarse grids produce many exact
    ties), L1 speed drawn from a fixed set unless ``speed`` is given."""
    if metric is None:
        metric = rng.choice(("L1", "L2INF"))
    if metric == "L1":
        v = Fraction(speed) if speed is not None else rng.choice(L1_SPEEDS)
        cfg = HighwayConfig.l1(v)
    else:
        cfg = HighwayConfig.l2inf()
    n = rng.randint(2, max(2, n_max))
    step = rng.choice(GRID_STEPS)
    k = int(1000 / step)
    pts = [(rng.randint(0, k) * step, rng.randint(0, k) * step) for _ in range(n)]
    return InstanceFile(cfg, pts)


def _strict_in_walking_region(p, q, cfg):
    from .geometry import l1_slacks

    if cfg.is_l1:
        return min(l1_slacks(p, q, cfg._num, cfg._den)) > 0
    dx, dy = p[0] - q[0], p[1] - q[1]
    s = min(p) + min(q)
    return dx * dx + dy * dy < s * s


def inject_fault():
    """Make the fast path treat ties as outside walking regions (the
    oracle is left untouched).  Used to show that ``check`` notices."""
    from . import clustering, crossing

    clustering.in_walking_region = _strict_in_walking_region
    crossing.in_walking_region = _strict_in_walking_region


def compare(inst):
    """``None`` when the fast partition equals the oracle partition,
    otherwise a short description of the difference."""
    fast = time_convex_hull(inst.points, inst.cfg).partition()
    slow = oracle_clusters(inst.points, inst.cfg).as_sets()
    if fast == slow:
        return None
    return {"fast": sorted(sorted(b) for b in fast), "oracle": sorted(sorted(b) for b in slow)}


def _trial(job):
    k, seed, n_max, metric, speed, fault = job
    if fault:
        inject_fault()
    rng = random.Random(f"{seed}:{k}")
    inst = random_instance(rng, n_max, metric, speed)
    diff = compare(inst)
    return k, len(inst.points), inst.cfg.metric.value, diff, None if diff is None else inst.to_json()


def cmd_check(args):
    if args.inject_fault:
        inject_fault()
    if args.input is not None:
        inst = _instance(args.input, args.metric, args.speed)
        diff = compare(inst)
        if diff is None:
            print(f"ok: {len(inst.points)} points, partitions agree")
            return 0
        print(f"MISMATCH: {json.dumps(diff)}")
        return EXIT_MISMATCH
    if args.trials < 1:
        raise ConstraintError("--trials must be at least 1")
    metric = None if args.metric in (None, "BOTH") else args.metric
    if metric is not None:
        make_config(metric, args.speed if metric == "L1" else None)
    jobs = [(k, args.seed, args.n_max, metric, args.speed, args.inject_fault)
            for k in range(args.trials)]
    procs = args.jobs or min(multiprocessing.cpu_count(), 8)
    if procs > 1 and len(jobs) > 1:
        with multiprocessing.Pool(procs) as pool:
            results = pool.map(_trial, jobs, chunksize=max(1, len(jobs) // (4 * procs)))
    else:
        results = [_trial(j) for j in jobs]
    per_metric = {}
    for _, _, m, _, _ in results:
        per_metric[m] = per_metric.get(m, 0) + 1
    bad = [r for r in results if r[3] is not None]
    summary = ", ".join(f"{m}: {c}" for m, c in sorted(per_metric.items()))
    print(f"trials: {len(results)} ({summary}), seed {args.seed}, n_max {args.n_max}")
    if not bad:
        print("mismatches: 0")
        return 0
    k, n, m, diff, text = bad[0]
    repro = args.out or "tchull-repro.json"
    with open(repro, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"mismatches: {len(bad)}; first at trial {k} ({m}, n={n}), instance written to {repro}")
    print(f"fast:   {diff['fast']}")
    print(f"oracle: {diff['oracle']}")
    return EXIT_MISMATCH


# --- bench ------------------------------------------------------------------


def _size(tok):
    tok = tok.strip()
    if "^" in tok:
        base, exp = tok.split("^")
        return int(base) ** int(exp)
    return int(tok)


def bench_rows(sizes, cfg, reps=1, seed=0, coord_max=10 ** 6):
    """Median wall time of the full pipeline per size on uniform integer
    points; yields one dict per size."""
    for n in sizes:
        times, clusters = [], 0
        for r in range(reps):
            rng = random.Random(f"bench:{seed}:{n}:{r}")
            pts = [(rng.randint(0, coord_max), rng.randint(0, coord_max)) for _ in range(n)]
            t0 = time.perf_counter()
            res = time_convex_hull(pts, cfg)
            times.append(time.perf_counter() - t0)
            clusters = len(res.hull.clusters)
        med = statistics.median(times)
        yield {"n": n, "reps": reps, "median_s": med,
               "ratio_us": med / (n * math.log2(n)) * 1e6 if n > 1 else 0.0,
               "clusters": clusters}


def cmd_bench(args):
    sizes = [_size(t) for t in args.sizes.split(",") if t.strip()]
    if args.n_max is not None:
        sizes = [n for n in sizes if n <= args.n_max]
    if sizes != sorted(sizes) or not sizes:
        raise ConstraintError("--sizes must be a non-empty ascending list")
    cfg = make_config(args.metric or "L1", args.speed if args.speed is not None else
                      ("2" if (args.metric or "L1") == "L1" else None))
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", newline="", encoding="utf-8")
    rows = []
    try:
        w = csv.writer(out)
        w.writerow(["n", "reps", "median_s", "ratio_us", "clusters"])
        out.flush()
        for row in bench_rows(sizes, cfg, args.reps, args.seed):
            rows.append(row)
            w.writerow([row["n"], row["reps"], f"{row['median_s']:.4f}",
                        f"{row['ratio_us']:.4f}", row["clusters"]])
            out.flush()
    finally:
        if out is not sys.stdout:
            out.close()
    ratios = [r["ratio_us"] for r in rows]
    spread = max(ratios) / min(ratios) if min(ratios) > 0 else math.inf
    print(f"ratio spread {spread:.2f}x, total {sum(r['median_s'] * r['reps'] for r in rows):.1f} s",
          file=sys.stderr)
    if args.figure:
        from .render import ratio_figure

        ratio_figure(rows, args.figure)
    return 0


# --- svg --------------------------------------------------------------------


def cmd_svg(args):
    from .assembly import Axis, Foot, Placed, TimeConvexHull
    from .render import render_svg

    data = json.loads(_read_text(args.input)) if args.input != "-" else json.load(sys.stdin)
    cfg = None
    if isinstance(data, dict) and "points" in data:
        inst = _instance(args.input, args.metric, args.speed)
        cfg, points = inst.cfg, inst.points
        tch = time_convex_hull(points, cfg).hull
    else:
        res = parse_result(json.dumps(data))
        tch = TimeConvexHull(
            [Placed(c["hull"], c["members"], [Foot(Axis(a), lo, hi) for a, lo, hi in c["feet"]])
             for c in res.clusters],
            [(Axis(a), (lo, hi)) for a, lo, hi in res.highway_links],
            res.uses_both_highways)
        points = sorted({p for c in res.clusters for p in c["hull"]})
        if args.points:
            inst = load_instance(args.points)
            points, cfg = inst.points, inst.cfg
        elif args.wr:
            cfg = make_config(res.metric, res.speed)
    _write_text(args.out, render_svg(points, tch, cfg, wr=args.wr))
    return 0


# --- entry ------------------------------------------------------------------


def build_parser():
    p = _Parser(prog="tchull", description="Time-convex hulls with two orthogonal highways.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--metric", type=str.upper, choices=("L1", "L2INF"),
                        help="metric (overrides the instance file)")
        sp.add_argument("--speed", help="L1 highway speed, decimal or a/b")
        sp.add_argument("--out", help="output path (default: stdout)")

    h = sub.add_parser("hull", help="compute the hull of an instance file")
    h.add_argument("input", help="instance JSON ('-' for stdin)")
    common(h)
    h.set_defaults(func=cmd_hull)

    c = sub.add_parser("check", help="compare against the brute-force oracle")
    c.add_argument("input", nargs="?", help="check one instance instead of random trials")
    c.add_argument("--metric", type=str.upper, choices=("L1", "L2INF", "BOTH"))
    c.add_argument("--speed")
    c.add_argument("--out", help="reproduction file written on mismatch")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--n-max", type=int, default=60)
    c.add_argument("--jobs", type=int, default=0, help="worker processes (default: CPUs, max 8)")
    c.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    c.set_defaults(func=cmd_check)

    b = sub.add_parser("bench", help="time the pipeline on uniform random points")
    common(b)
    b.add_argument("--sizes", default="2^14,2^16,2^18,2^20",
                   help="comma-separated ascending sizes, e.g. 2^14,2^16")
    b.add_argument("--n-max", type=int, help="drop sizes above this")
    b.add_argument("--reps", type=int, default=1)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--figure", help="also plot the ratio column to this file")
    b.set_defaults(func=cmd_bench)

    s = sub.add_parser("svg", help="draw an instance or a result file")
    s.add_argument("input", help="instance or result JSON")
    common(s)
    s.add_argument("--points", help="instance file supplying the points for a result file")
    s.add_argument("--wr", action="store_true", help="outline walking regions")
    s.set_defaults(func=cmd_svg)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SchemaError, FileNotFoundError, IsADirectoryError, json.JSONDecodeError) as exc:
        print(f"tchull: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ConstraintError as exc:
        print(f"tchull: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT


if __name__ == "__main__":
    sys.exit(main())

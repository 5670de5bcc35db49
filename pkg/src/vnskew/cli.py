"""Command-line entry point ``vn-skew``.

Exit codes: 0 success, 1 verification failure, 2 invalid arguments,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import List, Optional, Sequence

from . import cumulants as cm
from . import density, ensemble, identities, integrals
from .laguerre import NonConvergenceError

EXIT_OK, EXIT_FAIL, EXIT_ARGS, EXIT_NUMERIC = 0, 1, 2, 3
DEFAULT_FORMAT = {"verify": "json"}
DEFAULT_SAMPLES = {"simulate": 100_000, "density": 1_000_000, "scaling": 0}


class UsageError(ValueError):
    pass


def _exact_field(v) -> dict:
    return {"exact": str(v), "float": v.to_float(), "terms": v.to_json()["terms"]}


def _finite_or_none(x: float):
    return x if math.isfinite(x) else None


def _dims(m, n) -> cm.Dims:
    if m is None or n is None:
        raise UsageError("--m and --n are required")
    try:
        return cm.Dims(m, n)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv_text(header: Sequence[str], rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------------------


def cumulants_report(d: cm.Dims) -> dict:
    cs = cm.cumulant_set(d)
    rep = {
        "command": "cumulants",
        "m": d.m,
        "n": d.n,
        "kappa1": _exact_field(cs.kappa1),
        "kappa2": _exact_field(cs.kappa2),
        "kappa3": _exact_field(cs.kappa3),
        "skewness": _finite_or_none(cs.skewness_float),
    }
    if d.m == 1:
        rep["note"] = "skewness omitted: the entropy is identically zero when m = 1"
    return rep


def cmd_cumulants(args) -> int:
    d = _dims(args.m, args.n)
    rep = cumulants_report(d)
    if args.format == "json":
        _emit(json.dumps(rep, indent=2) + "\n", args.output)
    else:
        rows = [[k, rep[k]["exact"], repr(rep[k]["float"])] for k in ("kappa1", "kappa2", "kappa3")]
        if rep["skewness"] is not None:
            rows.append(["skewness", "", repr(rep["skewness"])])
        text = _csv_text(["quantity", "exact", "float"], rows)
        _emit(text, args.output)
        if "note" in rep:
            print(rep["note"], file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _suite(name: str, grid: dict, passed: int, failures: List[dict]) -> dict:
    return {
        "identity_id": name,
        "grid": grid,
        "pass": passed,
        "fail": len(failures),
        "counterexample": failures[0] if failures else None,
    }


def _map(fn, items, threads):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(i) for i in items]


def verify_kappa3(max_m: int, max_n: int, threads: int = 1) -> dict:
    pts = [(m, n) for n in range(1, max_n + 1) for m in range(1, min(n, max_m) + 1)]

    def check(pt):
        d = cm.Dims(*pt)
        chain = cm.kappa3_via_T(d, integrals.kappa3T_from_integrals(*pt))
        closed = cm.kappa3(d)
        return pt, chain == closed, chain, closed

    failures = []
    passed = 0
    for pt, ok, chain, closed in _map(check, pts, threads):
        if ok:
            passed += 1
        else:
            failures.append({"params": {"m": pt[0], "n": pt[1]}, "lhs": str(chain), "rhs": str(closed)})
    return _suite("kappa3", {"size": len(pts), "m": [1, max_m], "n": [1, max_n]}, passed, failures)


def verify_integrals(max_m: int, max_n: int, threads: int = 1) -> List[dict]:
    pts = [(m, n) for n in range(3, max_n + 1) for m in range(2, min(n - 1, max_m) + 1)]
    routes = (
        ("IA", integrals.closed_IA, integrals.integral_IA),
        ("IB", integrals.closed_IB, integrals.integral_IB),
        ("IC", integrals.closed_IC, integrals.integral_IC),
    )
    out = []
    grid = {"size": len(pts), "m": [2, max_m], "n": [3, max_n]}
    for name, closed, finite in routes:
        def check(pt, closed=closed, finite=finite):
            a, b = closed(*pt), finite(*pt)
            return pt, a == b, a, b

        failures, passed = [], 0
        for pt, ok, a, b in _map(check, pts, threads):
            if ok:
                passed += 1
            else:
                failures.append({"params": {"m": pt[0], "n": pt[1]}, "lhs": str(a), "rhs": str(b)})
        out.append(_suite(name, grid, passed, failures))
    return out


def cmd_verify(args) -> int:
    for name in ("max_m", "max_n"):
        v = getattr(args, name)
        if v is not None and v < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be at least 1")
    suites: List[dict] = []
    scope = args.scope
    if scope in ("identities", "all"):
        reports = identities.verify_all(max_n=args.max_n or 25, max_m=args.max_m or 20, threads=args.threads)
        suites.extend(r.to_json() for r in reports)
    if scope in ("integrals", "all"):
        suites.extend(verify_integrals(args.max_m or 15, args.max_n or 15, args.threads))
    if scope in ("kappa3", "all"):
        suites.append(verify_kappa3(args.max_m or 20, args.max_n or 20, args.threads))
    ok = all(s["fail"] == 0 for s in suites)
    rep = {"command": "verify", "scope": scope, "ok": ok, "suites": suites}
    if args.format == "csv":
        rows = [[s["identity_id"], s["pass"], s["fail"]] for s in suites]
        _emit(_csv_text(["identity_id", "pass", "fail"], rows), args.output)
    else:
        _emit(json.dumps(rep, indent=2) + "\n", args.output)
    if not ok:
        for s in suites:
            if s["fail"]:
                print(f"FAIL {s['identity_id']}: {json.dumps(s['counterexample'])}", file=sys.stderr)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def simulate_report(d: cm.Dims, stats: ensemble.SampleStats, samples: int, seed: int, batches: int) -> dict:
    est = ensemble.empirical_cumulants(stats)
    exact = [cm.kappa1(d), cm.kappa2(d), cm.kappa3(d)]
    z = est.z_scores([e.to_float() for e in exact])
    rows = []
    for order in range(3):
        rows.append({
            "order": order + 1,
            "empirical": est.k[order],
            "stderr": est.stderr[order],
            "exact": str(exact[order]),
            "exact_float": exact[order].to_float(),
            "z": _finite_or_none(z[order]),
        })
    return {"command": "simulate", "m": d.m, "n": d.n, "samples": samples, "seed": seed, "batches": batches,
            "cumulants": rows}


def cmd_simulate(args) -> int:
    d = _dims(args.m, args.n)
    if args.samples < args.batches:
        raise UsageError(f"--samples must be at least the batch count ({args.batches})")
    stats = ensemble.run_batch(d, args.samples, args.seed, batches=args.batches, threads=args.threads,
                               keep_samples=bool(args.samples_csv))
    rep = simulate_report(d, stats, args.samples, args.seed, args.batches)
    if args.samples_csv:
        ensemble.write_samples_csv(args.samples_csv, stats.samples)
    if args.format == "json":
        _emit(json.dumps(rep, indent=2) + "\n", args.output)
    else:
        rows = [[r["order"], repr(r["empirical"]), repr(r["stderr"]), r["exact"], repr(r["exact_float"]),
                 "" if r["z"] is None else repr(r["z"])] for r in rep["cumulants"]]
        _emit(_csv_text(["order", "empirical", "stderr", "exact", "exact_float", "z"], rows), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def cmd_density(args) -> int:
    d = _dims(args.m, args.n)
    if d.m == 1:
        raise UsageError("density needs m >= 2 (the entropy is degenerate at m = 1)")
    stats = ensemble.run_batch(d, args.samples, args.seed, batches=args.batches, threads=args.threads,
                               keep_samples=True)
    try:
        table = density.density_table(stats.samples, cm.kappa1(d).to_float(), cm.kappa2(d).to_float(),
                                      cm.skewness(d))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    buf = io.StringIO()
    table.write_csv(buf)
    _emit(buf.getvalue(), args.output)
    print(
        "L1 empirical-gaussian={:.6g} empirical-gram_charlier={:.6g} gaussian-gram_charlier={:.6g}".format(
            table.distance("empirical", "gaussian"),
            table.distance("empirical", "gram_charlier"),
            table.distance("gaussian", "gram_charlier"),
        ),
        file=sys.stderr,
    )
    return EXIT_OK


# ---------------------------------------------------------------------------


def scaling_rows(c: Fraction, n_list: Sequence[int]) -> List[dict]:
    rows = []
    for n in n_list:
        m = c * n
        if m.denominator != 1 or m < 1 or m > n:
            raise UsageError(f"c*n = {m} is not an integer in [1, n] for n = {n}")
        d = cm.Dims(int(m), n)
        k2, k3 = cm.kappa2(d).to_float(), cm.kappa3(d).to_float()
        g1 = cm.skewness(d)
        rows.append({"m": d.m, "n": n, "kappa2": k2, "n2_kappa2": n * n * k2, "kappa3": k3,
                     "n4_kappa3": n ** 4 * k3, "skewness": g1, "n_skewness": n * g1})
    return rows


def cmd_scaling(args) -> int:
    try:
        c = Fraction(args.c)
        n_list = [int(x) for x in args.n_list.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc
    if not n_list or c <= 0 or c > 1:
        raise UsageError("need 0 < c <= 1 and a non-empty --n-list")
    rows = scaling_rows(c, n_list)
    if args.samples:
        for r in rows:
            st = ensemble.run_batch((r["m"], r["n"]), args.samples, args.seed, threads=args.threads)
            k = ensemble.empirical_cumulants(st).k
            r["empirical_skewness"] = k[2] / k[1] ** 1.5 if k[1] > 0 else None
    if args.format == "json":
        _emit(json.dumps({"command": "scaling", "c": str(c), "rows": rows}, indent=2) + "\n", args.output)
    else:
        header = list(rows[0].keys())
        _emit(_csv_text(header, [[repr(r[h]) if isinstance(r[h], float) else r[h] for h in header] for r in rows]),
              args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--output", help="write the main result here instead of standard output")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)

    dims = argparse.ArgumentParser(add_help=False)
    dims.add_argument("--m", type=int)
    dims.add_argument("--n", type=int)

    sim = argparse.ArgumentParser(add_help=False)
    sim.add_argument("--samples", type=int)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--batches", type=int, default=ensemble.DEFAULT_BATCHES)

    p = argparse.ArgumentParser(prog="vn-skew", description="Exact and simulated entanglement entropy statistics.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("cumulants", parents=[common, dims], help="exact first three cumulants and skewness")
    c.set_defaults(func=cmd_cumulants)

    v = sub.add_parser("verify", parents=[common], help="exact verification sweeps")
    v.add_argument("scope", choices=("identities", "integrals", "kappa3", "all"))
    v.add_argument("--max-m", type=int)
    v.add_argument("--max-n", type=int)
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", parents=[common, dims, sim], help="Monte Carlo cumulants with z-scores")
    s.add_argument("--samples-csv", help="also write raw samples (sample_index,S)")
    s.set_defaults(func=cmd_simulate)

    d = sub.add_parser("density", parents=[common, dims, sim], help="empirical, Gaussian and Gram-Charlier curves")
    d.set_defaults(func=cmd_density)

    sc = sub.add_parser("scaling", parents=[common, sim], help="cumulant scaling along m = c n")
    sc.add_argument("--c", default="1/2")
    sc.add_argument("--n-list", default="16,32,64")
    sc.set_defaults(func=cmd_scaling)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    if args.format is None:
        args.format = DEFAULT_FORMAT.get(args.command, "csv")
    if hasattr(args, "samples"):
        if args.samples is None:
            args.samples = DEFAULT_SAMPLES[args.command]
        if args.samples < 0:
            parser.error("--samples must be non-negative")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"vn-skew: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except (ensemble.EigenSolverError, NonConvergenceError) as exc:
        print(f"vn-skew: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())

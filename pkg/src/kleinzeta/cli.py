"""Batch verification harness and report emission.

Subcommands:
  count         one Klein-cubic point count, cached
  verify-l3     the flagship degree-10 identity at p = 3 (counting route
                vs the pinned factorization vs the CM product route)
  trace-sweep   counts against the trace prediction for good primes <= B
  hecke-table   CSV of split data / coefficients / character logs
  cohomology    middle-cohomology dimensions, rotation eigenspaces, pairing
  theta-support coset scan certificates and local cancellation checks
  report        run everything and write one JSON report

Exit status: 0 when every check passes, 1 on any failure, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field

from . import cache as cachemod
from . import counting, gdcohom, hecke, lfunc, thetasupp
from .ffield import build_field
from .reference import reference_degree10_at_3

VERSION = cachemod.VERSION


@dataclass
class Check:
    name: str
    status: str           # pass | fail | inconclusive
    expected: str
    actual: str
    elapsed_ms: float


@dataclass
class VerificationReport:
    tool: str
    version: str
    config: dict
    checks: list = field(default_factory=list)

    def add(self, name: str, ok, expected, actual, elapsed_s: float = 0.0,
            inconclusive: bool = False) -> None:
        status = "inconclusive" if inconclusive else ("pass" if ok else "fail")
        self.checks.append(Check(name, status, str(expected), str(actual),
                                 round(elapsed_s * 1000.0, 3)))

    @property
    def passed(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "tool": self.tool,
            "version": self.version,
            "config": self.config,
            "overall": "pass" if self.passed else "fail",
            "checks": [vars(c) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def print_table(self, out=None) -> None:
        out = out or sys.stdout
        width = max((len(c.name) for c in self.checks), default=4)
        for c in self.checks:
            line = f"{c.name:<{width}}  {c.status:<12}"
            if c.status != "pass":
                line += f"  expected={c.expected}  actual={c.actual}"
            print(line, file=out)
        print(f"overall: {'pass' if self.passed else 'FAIL'}", file=out)


def _timed(fn, *args, **kwargs):
    t0 = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - t0


# ---------------------------------------------------------------------------
# check batteries


def run_count(report: VerificationReport, p: int, k: int, *, workers, cache_path, no_cache):
    (n, hit), dt = _timed(cachemod.count_with_cache, p, k, cache_path=cache_path,
                          no_cache=no_cache, workers=workers)
    if p == lfunc.BAD_PRIME:
        expected = "(no prediction at the bad prime)"
        ok = True
    else:
        expected = hecke.predicted_count(p, k)
        ok = n == expected
    report.add(f"count-p{p}-k{k}{'-cached' if hit else ''}", ok, expected, n, dt)
    return n


def run_verify_l3(report: VerificationReport, *, workers, cache_path, no_cache):
    target = reference_degree10_at_3()
    counts = []
    t0 = time.perf_counter()
    for k in range(1, 6):
        n, _ = cachemod.count_with_cache(3, k, cache_path=cache_path,
                                         no_cache=no_cache, workers=workers)
        counts.append(n)
    dt_counts = time.perf_counter() - t0
    ps = lfunc.counts_to_power_sums(counts, 3)
    L_counting = lfunc.power_sums_to_local_factor(ps)
    report.add("l3-counting-route", L_counting.coeffs == target.coeffs,
               list(target.coeffs), list(L_counting.coeffs), dt_counts)
    L_product, dt = _timed(hecke.h3_local_factor_product, 3)
    report.add("l3-product-route", L_product.coeffs == target.coeffs,
               list(target.coeffs), list(L_product.coeffs), dt)
    purity, dt = _timed(lfunc.weil_bound_check, L_counting)
    report.add("l3-purity", purity, "all |lambda| = 3^(3/2) (1e-6 rel)", purity, dt)
    return L_counting


def run_trace_sweep(report: VerificationReport, max_p: int, *, workers, cache_path, no_cache):
    for p in hecke.primes_up_to(max_p):
        if p == lfunc.BAD_PRIME:
            continue
        t0 = time.perf_counter()
        n, _ = cachemod.count_with_cache(p, 1, cache_path=cache_path,
                                         no_cache=no_cache, workers=workers)
        expected = hecke.predicted_count(p, 1)
        report.add(f"trace-p{p}", n == expected, expected, n, time.perf_counter() - t0)


def run_hecke_table(report: VerificationReport, max_p: int, out_path):
    nrows, dt = _timed(hecke.write_hecke_csv, out_path, max_p)
    report.add("hecke-table", nrows > 0, f"rows for primes <= {max_p}", nrows, dt)


def run_cm_structure(report: VerificationReport, max_p: int):
    t0 = time.perf_counter()
    ok = True
    for p in hecke.primes_up_to(max_p):
        a = hecke.ap_f(p)
        ok = ok and (a == 0) == (hecke.split_type(p) != "split") and a * a <= 4 * p
        if p != lfunc.BAD_PRIME:
            ok = ok and a == p + 1 - counting.count_weierstrass(
                counting.CM_CURVE, build_field(p))
    report.add(f"cm-structure-to-{max_p}", ok, "dichotomy, Hasse, curve agreement", ok,
               time.perf_counter() - t0)


def cohomology_summary() -> dict:
    basis = gdcohom.h3_basis()
    M = gdcohom.alpha_pullback(basis)
    split = gdcohom.eigenspace_split(M)
    order5 = gdcohom.matrix_power(M, 5) == gdcohom.matrix_power(M, 0)
    eigmap = gdcohom.fil2_eigenvector_map(M)
    return {
        "dimension": basis.dimension,
        "fil2_rank": len(basis.pole2_monomials),
        "pole3_rank": len(basis.pole3_monomials),
        "rotation_has_order_5": order5,
        "eigenvalue_multiset": {f"zeta5^{j}": d for j, d in enumerate(split.dims)},
        "fil2_intersections": {f"zeta5^{j}": d for j, d in enumerate(split.fil2_dims)},
        "fourier_vector_eigenvalues": {f"v_{j}": f"zeta5^{e}" for j, e in eigmap.items()},
        "gorenstein_pairing_nondegenerate": gdcohom.gorenstein_pairing_nondegenerate(),
    }


def run_cohomology(report: VerificationReport):
    summary, dt = _timed(cohomology_summary)
    report.add("cohomology-dimension", summary["dimension"] == 10, 10, summary["dimension"], dt)
    report.add("cohomology-fil2-rank", summary["fil2_rank"] == 5, 5, summary["fil2_rank"])
    report.add("cohomology-rotation-order", summary["rotation_has_order_5"], True,
               summary["rotation_has_order_5"])
    dims = tuple(summary["eigenvalue_multiset"].values())
    report.add("cohomology-eigenspace-dims", dims == (2, 2, 2, 2, 2), (2, 2, 2, 2, 2), dims)
    fil = tuple(summary["fil2_intersections"].values())
    report.add("cohomology-fil2-intersections", fil == (1, 1, 1, 1, 1), (1, 1, 1, 1, 1), fil)
    report.add("cohomology-gorenstein", summary["gorenstein_pairing_nondegenerate"],
               True, summary["gorenstein_pairing_nondegenerate"])
    return summary


def run_theta_support(report: VerificationReport, p: int, box: thetasupp.ScanBox,
                      types=("I", "II", "III", "IV")):
    certificates = {}
    for ty in types:
        rep, dt = _timed(thetasupp.scan_type, p, ty, box)
        certificates[ty] = rep.to_dict()
        report.add(f"theta-type-{ty}-p{p}",
                   rep.status == "certified", "certified", rep.status, dt,
                   inconclusive=(rep.status == "inconclusive"))
    zeros = all(thetasupp.char_sum(p, v).is_zero() for v in range(1, 5))
    report.add(f"theta-char-sums-p{p}", zeros, "0 for 1 <= v <= 4", zeros)
    inv, dt = _timed(thetasupp.stabilizer_invariance_check, p)
    report.add(f"theta-stabilizer-invariance-p{p}", inv, True, inv, dt)
    import random
    rng = random.Random(20260808)
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        t1, t2 = rng.uniform(0, 6.3), rng.uniform(0, 6.3)
        x = [[rng.uniform(-2, 2), rng.uniform(-2, 2)], [rng.uniform(-2, 2), rng.uniform(-2, 2)]]
        for sign in "+-":
            worst = max(worst, thetasupp.archimedean_equivariance(t1, t2, x, sign))
    report.add("theta-archimedean-equivariance", worst < 1e-12, "< 1e-12", worst,
               time.perf_counter() - t0)
    return certificates


# ---------------------------------------------------------------------------
# argument plumbing


def _add_cache_flags(sp):
    sp.add_argument("--cache", default=None, help="cache file path (JSONL)")
    sp.add_argument("--no-cache", action="store_true", help="do not read or write the cache")
    sp.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                    help="worker processes for counting")


def _add_json_flag(sp):
    sp.add_argument("--json", default=None, help="write the report as JSON to this path")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kleinzeta",
                                 description="desk-scale zeta verification for the Klein cubic")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("count", help="count points over F_{p^k}")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--k", type=int, default=1)
    _add_cache_flags(sp)
    _add_json_flag(sp)

    sp = sub.add_parser("verify-l3", help="flagship degree-10 identity at p = 3")
    _add_cache_flags(sp)
    _add_json_flag(sp)

    sp = sub.add_parser("trace-sweep", help="count vs trace prediction for good p <= B")
    sp.add_argument("--max", type=int, default=100)
    _add_cache_flags(sp)
    _add_json_flag(sp)

    sp = sub.add_parser("hecke-table", help="write the coefficient table as CSV")
    sp.add_argument("--max", type=int, default=200)
    sp.add_argument("--out", required=True)
    _add_json_flag(sp)

    sp = sub.add_parser("cohomology", help="middle-cohomology verification summary")
    _add_json_flag(sp)

    sp = sub.add_parser("theta-support", help="coset support scan certificates")
    sp.add_argument("--p", type=int, default=11)
    sp.add_argument("--box", type=int, default=4, help="|m|,|n|,|r| radius")
    sp.add_argument("--type", default="all", choices=["I", "II", "III", "IV", "all"])
    _add_json_flag(sp)

    sp = sub.add_parser("report", help="run the full battery")
    sp.add_argument("--max", type=int, default=100, help="trace-sweep prime bound")
    sp.add_argument("--quick", action="store_true",
                    help="limit the sweep to p <= 20 and skip the p = 3 tower")
    _add_cache_flags(sp)
    _add_json_flag(sp)
    return ap


def _finish(report: VerificationReport, json_path, extra=None) -> int:
    report.print_table()
    if json_path:
        payload = report.to_dict()
        if extra:
            payload.update(extra)
        with open(json_path, "w") as fh:
            fh.write(json.dumps(payload, indent=2, sort_keys=True))
    return 0 if report.passed else 1


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = {k: v for k, v in vars(args).items() if k != "command"}
    report = VerificationReport("kleinzeta", VERSION, {"command": args.command, **config})
    try:
        if args.command == "count":
            n = run_count(report, args.p, args.k, workers=args.threads,
                          cache_path=args.cache, no_cache=args.no_cache)
            print(f"#X(P^4(F_{args.p}^{args.k})) = {n}")
            return _finish(report, args.json)
        if args.command == "verify-l3":
            run_verify_l3(report, workers=args.threads, cache_path=args.cache,
                          no_cache=args.no_cache)
            return _finish(report, args.json)
        if args.command == "trace-sweep":
            run_trace_sweep(report, args.max, workers=args.threads,
                            cache_path=args.cache, no_cache=args.no_cache)
            return _finish(report, args.json)
        if args.command == "hecke-table":
            run_hecke_table(report, args.max, args.out)
            return _finish(report, args.json)
        if args.command == "cohomology":
            summary = run_cohomology(report)
            return _finish(report, args.json, {"cohomology": summary})
        if args.command == "theta-support":
            types = ("I", "II", "III", "IV") if args.type == "all" else (args.type,)
            certs = run_theta_support(report, args.p, thetasupp.ScanBox(radius=args.box),
                                      types=types)
            return _finish(report, args.json, {"certificates": certs})
        if args.command == "report":
            sweep_max = 20 if args.quick else args.max
            if not args.quick:
                run_verify_l3(report, workers=args.threads, cache_path=args.cache,
                              no_cache=args.no_cache)
            run_trace_sweep(report, sweep_max, workers=args.threads,
                            cache_path=args.cache, no_cache=args.no_cache)
            fermat = counting.verify_fermat_cover()
            report.add("fermat-cover", fermat, True, fermat)
            run_cm_structure(report, 60 if args.quick else 200)
            run_cohomology(report)
            certs = run_theta_support(report, 11, thetasupp.ScanBox())
            return _finish(report, args.json, {"certificates": certs})
        raise ValueError(f"unhandled command {args.command}")
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

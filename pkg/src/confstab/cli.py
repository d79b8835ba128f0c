"""Command-line front end.

Subcommands:

  betti N M          ranks of H_r(PConf_N(R^M)) for all r
  stability KIND     run a stability campaign (classical | twisted |
                     weight-piece) and write a machine-readable report
  purity             weight-polynomial purity checks (configuration
                     spaces, projective spaces, punctured affine spaces)
  fidegree           FI generation degree and monomial-count bounds

Exit codes: 0 success; 1 a mathematical assertion failed; 2 usage or
configuration error; 3 a required cell exceeded the size budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from .arnold import poincare_coefficients
from .budget import BudgetExceededError
from .config import RunConfig
from .fipoly import FiFamily, generation_degree, monomial_count_bound
from .report import dumps, stability_report_csv, stability_report_dict, write_report
from .stability import StabilityReport, check_classical, check_twisted, check_weight_piece
from .weights import (alpha_purity_check, pconf_purity_params, pconf_weight_poly,
                      projective_space_poly, punctured_affine_poly, PurityParams,
                      WeightPolynomial)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _add_budget_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-dim", type=int, default=None,
                   help="largest ambient dimension any elimination may use")
    p.add_argument("--max-columns", type=int, default=None,
                   help="largest number of streamed matrix columns")
    p.add_argument("--max-entries", type=int, default=None,
                   help="cap on stored entries of one elimination")
    p.add_argument("--jobs", type=int, default=None, help="worker pool width")
    p.add_argument("--config", type=str, default=None,
                   help="JSON file with RunConfig fields (CLI flags win)")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", type=str, default=None, help="report output path")
    p.add_argument("--format", type=str, choices=("json", "csv"), default=None)


def _build_config(args: argparse.Namespace, **overrides) -> RunConfig:
    base: dict = {}
    if getattr(args, "config", None):
        with open(args.config, "r", encoding="utf-8") as fh:
            base.update(json.load(fh))
    mapping = {
        "ring": getattr(args, "ring", None),
        "max_dim": getattr(args, "max_dim", None),
        "max_columns": getattr(args, "max_columns", None),
        "max_entries": getattr(args, "max_entries", None),
        "jobs": getattr(args, "jobs", None),
        "out_format": getattr(args, "format", None),
        "out_path": getattr(args, "out", None),
    }
    for key, val in mapping.items():
        if val is not None:
            base[key] = val
    base.update({k: v for k, v in overrides.items() if v is not None})
    cfg = RunConfig(**base)
    cfg.validate()
    return cfg


def cmd_betti(args: argparse.Namespace) -> int:
    n, m = args.n, args.m
    if n < 0 or m < 2:
        print("betti: need n >= 0 and m >= 2", file=sys.stderr)
        return EXIT_USAGE
    coeffs = poincare_coefficients(n)
    print(f"H_r(PConf_{n}(R^{m})) ranks:")
    for i, c in enumerate(coeffs):
        if c:
            print(f"  r = {i * (m - 1):3d}: rank {c}")
    print(f"  total = {sum(coeffs)}")
    return EXIT_OK


def _emit_stability(report: StabilityReport, cfg: RunConfig) -> int:
    payload = stability_report_dict(report, cfg.as_dict())
    if cfg.out_format == "csv":
        text = stability_report_csv(report)
    else:
        text = dumps(payload)
    write_report(text, cfg.out_path)
    s = report.summary()
    print(f"{report.kind}: {s['cells']} cells, {s['asserted']} asserted, "
          f"{s['passes']} passes, {s['violations']} violations, "
          f"{s['skipped']} skipped ({s['required_skips']} required)")
    if report.violations:
        for c in report.violations[:10]:
            print(f"  VIOLATION at {c.key}", file=sys.stderr)
        return EXIT_VIOLATION
    if report.required_skips:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_stability(args: argparse.Namespace) -> int:
    kind = args.kind
    try:
        if kind == "classical":
            cfg = _build_config(args, n_max=args.max_n, q_max=args.max_q)
            report = check_classical(cfg.q_max, cfg.n_max, cfg.resolve_ring(),
                                     cfg.budget(), cfg.jobs)
        elif kind == "twisted":
            if args.m is None:
                print("twisted: --m is required", file=sys.stderr)
                return EXIT_USAGE
            cfg = _build_config(args, n_max=args.max_n, q_max=args.max_q,
                                m=args.m, r=args.r, r_max=args.max_r)
            rs = [cfg.r] if cfg.r is not None else list(
                range(0, (cfg.r_max if cfg.r_max is not None
                          else 2 * (cfg.m - 1)) + 1))
            report = StabilityReport("twisted", cfg.as_dict())
            for r in rs:
                sub = check_twisted(cfg.m, r, cfg.q_max, cfg.n_max,
                                    cfg.resolve_ring(), cfg.budget(), cfg.jobs)
                report.cells.extend(sub.cells)
        else:
            if args.d is None:
                print("weight-piece: --d is required", file=sys.stderr)
                return EXIT_USAGE
            cfg = _build_config(args, n_max=args.max_n, d=args.d, k=args.k,
                                k_max=args.max_k, l_max=args.max_l)
            ks = [cfg.k] if cfg.k is not None else list(
                range(0, (cfg.k_max if cfg.k_max is not None else 1) + 1))
            l_max = cfg.l_max if cfg.l_max is not None else 2
            report = StabilityReport("weight-piece", cfg.as_dict())
            for k in ks:
                sub = check_weight_piece(cfg.d, k, l_max, cfg.n_max,
                                         cfg.resolve_ring(), cfg.budget(), cfg.jobs)
                report.cells.extend(sub.cells)
    except (ValueError, OSError) as e:
        print(f"stability: {e}", file=sys.stderr)
        return EXIT_USAGE
    return _emit_stability(report, cfg)


def _purity_cases(n_max: int, d_max: int, proj_n: int, punct_d: int,
                  corrupt: bool):
    from .arnold import basis_count
    cases = []
    for d in range(1, d_max + 1):
        alpha = pconf_purity_params(d)
        for n in range(0, n_max + 1):
            poly = pconf_weight_poly(n, d)
            res = alpha_purity_check(poly, alpha)
            coeffs_ok = all(
                poly.coefficient(k * (2 * d - 1), k * d) == basis_count(n, k)
                for k in range(0, n))
            cases.append({
                "case": f"pconf(n={n}, d={d})",
                "alpha": str(alpha),
                "passed": bool(res) and coeffs_ok,
                "witness": list(res.witness) if res.witness else None,
                "betti_match": coeffs_ok,
                "poly": poly.serialize(),
            })
    for n in range(0, proj_n + 1):
        res = alpha_purity_check(projective_space_poly(n), PurityParams(2, 1))
        cases.append({"case": f"projective(n={n})", "alpha": "2/1",
                      "passed": bool(res),
                      "witness": list(res.witness) if res.witness else None})
    for d in range(1, punct_d + 1):
        res = alpha_purity_check(punctured_affine_poly(d), pconf_purity_params(d))
        cases.append({"case": f"punctured_affine(d={d})",
                      "alpha": str(pconf_purity_params(d)),
                      "passed": bool(res),
                      "witness": list(res.witness) if res.witness else None})
    if corrupt:
        bad = WeightPolynomial({(0, 0): 1, (1, 2): 1})
        res = alpha_purity_check(bad, PurityParams(2, 1))
        cases.append({"case": "injected-corrupt", "alpha": "2/1",
                      "passed": bool(res),
                      "witness": list(res.witness) if res.witness else None})
    return cases


def cmd_purity(args: argparse.Namespace) -> int:
    try:
        cfg = _build_config(args, n_max=args.max_n, d=args.max_d)
    except (ValueError, OSError) as e:
        print(f"purity: {e}", file=sys.stderr)
        return EXIT_USAGE
    cases = _purity_cases(args.max_n, args.max_d, args.proj_n, args.punct_d,
                          args.inject_corrupt)
    payload = {"config": cfg.as_dict(),
               "cases": cases,
               "summary": {"cases": len(cases),
                           "failures": sum(1 for c in cases if not c["passed"])}}
    write_report(dumps(payload), cfg.out_path)
    failures = [c for c in cases if not c["passed"]]
    print(f"purity: {len(cases)} cases, {len(failures)} failures")
    for c in failures[:10]:
        print(f"  FAIL {c['case']} witness={c.get('witness')}", file=sys.stderr)
    return EXIT_VIOLATION if failures else EXIT_OK


def cmd_fidegree(args: argparse.Namespace) -> int:
    if args.m is None or args.r is None:
        print("fidegree: --m and --r are required", file=sys.stderr)
        return EXIT_USAGE
    if args.m < 2 or args.r < 0:
        print("fidegree: need m >= 2 and r >= 0", file=sys.stderr)
        return EXIT_USAGE
    try:
        cfg = _build_config(args, m=args.m, r=args.r, n_max=args.max_n)
        fam = FiFamily(cfg.m, cfg.r)
        rep = generation_degree(fam, cfg.n_max, cfg.budget())
        bounds = [list(monomial_count_bound(n, cfg.r // (cfg.m - 1)))
                  if cfg.r % (cfg.m - 1) == 0 else [0, 0]
                  for n in range(cfg.n_max + 1)]
    except AssertionError as e:
        print(f"fidegree: BOUND VIOLATION: {e}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ValueError, OSError) as e:
        print(f"fidegree: {e}", file=sys.stderr)
        return EXIT_USAGE
    payload = {"config": cfg.as_dict(),
               "generation_degree": rep.degree,
               "bound": rep.bound,
               "bound_holds": rep.bound_holds,
               "new_generator_counts": [list(t) for t in rep.cokernel_ranks],
               "monomial_counts": bounds,
               "skipped": list(rep.skipped)}
    write_report(dumps(payload), cfg.out_path)
    print(f"fidegree(m={cfg.m}, r={cfg.r}): degree {rep.degree} <= bound {rep.bound}; "
          f"skipped={list(rep.skipped)}")
    if rep.skipped:
        return EXIT_BUDGET
    return EXIT_OK if rep.bound_holds else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="confstab",
                                 description="Exact homological stability checks "
                                             "for configuration spaces")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("betti", help="Betti numbers of PConf_n(R^m)")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("stability", help="stability verification campaign")
    p.add_argument("kind", choices=("classical", "twisted", "weight-piece"))
    p.add_argument("--ring", type=str, default=None,
                   help="Z, Q, F<p> or auto (default)")
    p.add_argument("--max-n", type=int, default=4,
                   help="largest cell index n (map S_n -> S_{n+1})")
    p.add_argument("--max-q", type=int, default=1)
    p.add_argument("--m", type=int, default=None, help="ambient dimension (twisted)")
    p.add_argument("--r", type=int, default=None, help="coefficient degree (twisted)")
    p.add_argument("--max-r", type=int, default=None,
                   help="run r = 0..max-r (twisted; default 2(m-1))")
    p.add_argument("--d", type=int, default=None, help="affine dimension (weight-piece)")
    p.add_argument("--k", type=int, default=None, help="weight index (weight-piece)")
    p.add_argument("--max-k", type=int, default=None,
                   help="run k = 0..max-k (weight-piece; default 1)")
    p.add_argument("--max-l", type=int, default=None,
                   help="largest homological degree l (weight-piece; default 2)")
    _add_output_args(p)
    _add_budget_args(p)
    p.set_defaults(func=cmd_stability)

    p = sub.add_parser("purity", help="weight polynomial purity checks")
    p.add_argument("--max-n", type=int, default=7)
    p.add_argument("--max-d", type=int, default=3)
    p.add_argument("--proj-n", type=int, default=10)
    p.add_argument("--punct-d", type=int, default=5)
    p.add_argument("--inject-corrupt", action="store_true",
                   help=argparse.SUPPRESS)
    _add_output_args(p)
    _add_budget_args(p)
    p.set_defaults(func=cmd_purity)

    p = sub.add_parser("fidegree", help="FI generation degree")
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--max-n", type=int, default=6)
    _add_output_args(p)
    _add_budget_args(p)
    p.set_defaults(func=cmd_fidegree)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        code = args.func(args)
    except BudgetExceededError as e:
        print(f"confstab: {e}", file=sys.stderr)
        code = EXIT_BUDGET
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command line entry point: ``hopf-verifier``.

Exit status is 0 when every selected check passes, 1 when some check fails
and 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import sys

from .dsl import ParseError
from .suites import SUITES, ConfigError, SuiteConfig, run_suite, to_json, to_text


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hopf-verifier",
        description="Exact order-by-order verification of a deformed Poincare Hopf algebra, "
                    "its dual group, R-matrix and matrix quantum group.")
    p.add_argument("--suite", action="append", metavar="NAME",
                   help=f"suite to run (repeatable or comma separated; default all): {', '.join(SUITES)}")
    p.add_argument("--order", "-N", type=int, default=6, help="z truncation order (default 6)")
    p.add_argument("--degree", "-D", type=int, default=None,
                   help="weighted degree cap for the dual algebra (default: order; duality suite 5)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled monomials")
    p.add_argument("--sample", type=int, default=8,
                   help="degree-two monomials sampled per Hopf axiom (default 8)")
    p.add_argument("--algebra", default=None,
                   help="built-in name or DSL file; used by the jacobi and hopf suites")
    p.add_argument("--jobs", "-j", type=int, default=1, help="suites run in parallel")
    p.add_argument("--timings", action="store_true", help="include wall times (not reproducible)")
    p.add_argument("--output", "-o", default=None, help="write the report to a file")
    p.add_argument("--export-frt", default=None, metavar="PATH",
                   help="write the FRT-derived coordinate relations as DSL text")
    return p


def _suites(arg):
    if not arg:
        return SUITES
    out = []
    for a in arg:
        out += [s.strip() for s in a.split(",") if s.strip()]
    if "all" in out:
        return SUITES
    return tuple(out)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = SuiteConfig(suites=_suites(args.suite), order=args.order, degree=args.degree,
                      format=args.format, seed=args.seed, sample=args.sample,
                      algebra=args.algebra, jobs=args.jobs, timings=args.timings)
    try:
        reports = run_suite(cfg)
    except (ConfigError, ParseError) as e:
        print(f"hopf-verifier: {e}", file=sys.stderr)
        return 2
    text = to_json(reports, cfg) if cfg.format == "json" else to_text(reports, cfg)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.export_frt:
        from .matrixrep import derived_relations_dsl
        with open(args.export_frt, "w", encoding="utf-8") as fh:
            fh.write(derived_relations_dsl())
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())

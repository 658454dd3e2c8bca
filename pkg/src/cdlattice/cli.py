"""Command-line entry point.

    cdlattice analyze "D(8)" --json
    cdlattice density "ES32('-')"
    cdlattice hasse "S(4)" --out s4.dot
    cdlattice survey --max-order 32 --out survey.json --jobs 4

Exit codes: 0 success, 1 bad input or a cap exceeded, 2 a structural
property or classification check failed (which means a bug).
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .catalog import build, survey_corpus
from .density import (
    DEFAULT_WITNESS_CAP,
    DensityRecord,
    check_pq_classification,
    is_nonabelian_pq,
)
from .errors import CDLatticeError, InternalInvariantError
from .group import default_order_cap, factorize
from .report import SCHEMA_VERSION, analyze_group, analyze_spec, density_dict, dumps, format_text, hasse_dot, report_dict

EXIT_OK, EXIT_INPUT, EXIT_BUG = 0, 1, 2


def default_witness_cap() -> int:
    return int(os.environ.get("CDLATTICE_WITNESS_CAP", DEFAULT_WITNESS_CAP))


def _write(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    a = analyze_spec(args.spec, args.witness_cap, args.max_order)
    timings = not args.no_timings
    if args.json:
        _write(dumps(report_dict(a, timings)), args.out)
    else:
        _write(format_text(a, timings), args.out)
    broken = not a.properties.passed or not all(r.passed for r in a.theorems.values()) or a.zm_chain is False
    return EXIT_BUG if broken else EXIT_OK


def cmd_density(args) -> int:
    a = analyze_spec(args.spec, args.witness_cap, args.max_order)
    if args.json:
        _write(dumps(density_dict(a)), None)
    else:
        L = a.lattice
        lines = [f"{a.spec}: {'dense' if a.density.dense else 'not dense'} "
                 f"({a.density.total_failures} failing of {a.density.pairs_checked} pairs)"]
        for h, k in a.density.failures:
            lines.append(f"  H=#{h} {L.subgroups[h].indices()}  K=#{k} {L.subgroups[k].indices()}")
        _write("\n".join(lines) + "\n", None)
    return EXIT_OK


def cmd_hasse(args) -> int:
    a = analyze_spec(args.spec, 0, args.max_order)
    _write(hasse_dot(a.lattice, a.cd, a.spec.replace('"', "'")), args.out)
    return EXIT_OK


def survey_row(spec_text: str) -> dict:
    """Full pipeline for one corpus group, reduced to a deterministic record."""
    a = analyze_group(build(spec_text), spec_text, witness_cap=0)
    row = {
        "spec": spec_text,
        "order": a.group.n,
        "prime_signature": [list(pe) for pe in factorize(a.group.n)],
        "is_abelian": a.group.is_abelian(),
        "subgroup_count": len(a.lattice),
        "dense": a.density.dense,
        "cd_size": len(a.cd.members),
        "m_star": a.cd.m_star,
        "measure_image": a.cd.image,
        "properties_passed": a.properties.passed,
        "failed_properties": [c.id for c in a.properties.failures()],
        "zm_chain": a.zm_chain,
    }
    if "dense_p_group" in a.theorems:
        rep = a.theorems["dense_p_group"]
        row["dense_p_group"] = {"passed": rep.passed, "claims": {c.name: c.passed for c in rep.claims}}
    return row


def run_survey(max_order: int, jobs: int = 1) -> dict:
    if max_order > default_order_cap():
        raise CDLatticeError(f"--max-order {max_order} is above the order cap {default_order_cap()}")
    specs = [str(s) for s in survey_corpus(max_order)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(survey_row, specs, chunksize=1))
    else:
        rows = [survey_row(s) for s in specs]

    mixed = [r for r in rows if len(r["prime_signature"]) >= 2]
    records = [DensityRecord(r["order"], [tuple(pe) for pe in r["prime_signature"]], r["is_abelian"],
                             r["dense"], r["cd_size"], r["m_star"], r["spec"]) for r in mixed]
    pq = check_pq_classification(records)
    p_rows = [r for r in rows if "dense_p_group" in r]
    return {
        "schema_version": SCHEMA_VERSION,
        "max_order": max_order,
        "corpus": "constructor-based catalog of group families (not a census of all groups)",
        "group_count": len(rows),
        "records": rows,
        "pq_classification": {
            "passed": pq.passed,
            "groups": len(mixed),
            "dense": [r["spec"] for r in mixed if r["dense"]],
            "nonabelian_pq": [rec.label for rec in records if is_nonabelian_pq(rec)],
            "counterexamples": pq.claims[0].witnesses,
        },
        "dense_p_groups": {
            "passed": all(r["dense_p_group"]["passed"] for r in p_rows),
            "groups": [r["spec"] for r in p_rows],
            "failures": [r["spec"] for r in p_rows if not r["dense_p_group"]["passed"]],
        },
        "properties": {
            "passed": all(r["properties_passed"] for r in rows),
            "failures": [r["spec"] for r in rows if not r["properties_passed"]],
        },
        "zm_chain": {
            "groups": [r["spec"] for r in rows if r["zm_chain"] is not None],
            "passed": all(r["zm_chain"] is not False for r in rows),
        },
    }


def cmd_survey(args) -> int:
    summary = run_survey(args.max_order, args.jobs)
    _write(dumps(summary), args.out)
    ok = all(summary[k]["passed"] for k in ("pq_classification", "dense_p_groups", "properties", "zm_chain"))
    print(f"{summary['group_count']} groups; dense: "
          + ", ".join(r["spec"] for r in summary["records"] if r["dense"]), file=sys.stderr)
    return EXIT_OK if ok else EXIT_BUG


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdlattice", description="Chermak-Delgado lattices and dense CD-subgroups")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("spec", help="group expression, e.g. \"D(8)\" or \"C(3) X S(3)\"")
        p.add_argument("--max-order", type=int, default=None, help="refuse groups above this order")
        p.add_argument("--witness-cap", type=int, default=default_witness_cap())

    p = sub.add_parser("analyze", help="full report for one group")
    common(p)
    p.add_argument("--json", action="store_true")
    p.add_argument("--no-timings", action="store_true", help="omit per-stage timings (for reproducible output)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("density", help="density verdict and witnesses only")
    common(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("hasse", help="Hasse diagram of L(G) in DOT")
    common(p)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_hasse)

    p = sub.add_parser("survey", help="run the pipeline over the built-in corpus")
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--out", default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_survey)
    return parser


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except CDLatticeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalInvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_BUG
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

"""JSON reports and Graphviz output for the analysis pipeline."""

from __future__ import annotations

import json
import time
from importlib import resources
from dataclasses import asdict, dataclass

from .catalog import GroupSpec, build, parse_spec
from .chermak_delgado import CDResult, PropertyReport, cd_lattice, verify_cd_properties
from .density import (
    DEFAULT_WITNESS_CAP,
    DensityRecord,
    DensityVerdict,
    TheoremReport,
    check_dense_p_group,
    check_pq_classification,
    is_dense_cd,
    verify_zm_chain,
)
from .group import GroupTable, is_zm_group, structure_flags
from .lattice import Lattice, enumerate_subgroups

SCHEMA_VERSION = 1


def load_schema() -> dict:
    """The JSON Schema for analysis reports; the survey document is ``$defs/survey``."""
    return json.loads(resources.files(__package__).joinpath("report.schema.json").read_text(encoding="utf-8"))


@dataclass
class Analysis:
    """Everything the pipeline computes for one group."""

    spec: str
    group: GroupTable
    lattice: Lattice
    cd: CDResult
    properties: PropertyReport
    density: DensityVerdict
    theorems: dict[str, TheoremReport]
    zm_chain: bool | None
    timing_ms: dict[str, float]


def analyze_group(G: GroupTable, spec: str = "", witness_cap: int = DEFAULT_WITNESS_CAP) -> Analysis:
    timing = {}
    t = time.perf_counter()

    def lap(stage):
        nonlocal t
        now = time.perf_counter()
        timing[stage] = round((now - t) * 1000, 3)
        t = now

    L = enumerate_subgroups(G)
    lap("enumerate")
    cd = cd_lattice(G, L)
    lap("chermak_delgado")
    props = verify_cd_properties(G, L, cd)
    lap("properties")
    verdict = is_dense_cd(G, L, cd, witness_cap)
    lap("density")
    flags = structure_flags(G)
    theorems = {}
    sig = flags["prime_signature"]
    if len(sig) == 1 and sig[0][1] >= 2 and verdict.dense:
        theorems["dense_p_group"] = check_dense_p_group(G, L, cd, verdict)
    if len(sig) >= 2:
        record = DensityRecord(G.n, sig, flags["is_abelian"], verdict.dense, len(cd.members), cd.m_star, spec)
        theorems["pq_classification"] = check_pq_classification([record])
    zm = verify_zm_chain(G, cd) if G.n > 1 and is_zm_group(G) else None
    lap("theorems")
    return Analysis(spec, G, L, cd, props, verdict, theorems, zm, timing)


def analyze_spec(text: str | GroupSpec, witness_cap: int = DEFAULT_WITNESS_CAP, max_order: int | None = None) -> Analysis:
    spec = parse_spec(text) if isinstance(text, str) else text
    t = time.perf_counter()
    G = build(spec, cap=max_order)
    built = round((time.perf_counter() - t) * 1000, 3)
    result = analyze_group(G, str(spec), witness_cap)
    result.timing_ms = {"build": built, **result.timing_ms}
    return result


# ---------------------------------------------------------------------------
# serialisation


def subgroup_ref(L: Lattice, i: int) -> dict:
    H = L.subgroups[i]
    return {"index": i, "order": H.order, "elements": H.indices()}


def _theorem_dict(rep: TheoremReport) -> dict:
    return {
        "title": rep.title,
        "passed": rep.passed,
        "claims": [asdict(c) for c in rep.claims],
    }


def report_dict(a: Analysis, timings: bool = True) -> dict:
    G, L, cd = a.group, a.lattice, a.cd
    flags = structure_flags(G)
    out = {
        "schema_version": SCHEMA_VERSION,
        "group": {
            "spec": a.spec,
            "order": G.n,
            "prime_signature": [list(pe) for pe in flags["prime_signature"]],
            "is_abelian": flags["is_abelian"],
            "is_p_group": flags["is_p_group"],
            "is_solvable": flags["is_solvable"],
            "is_nilpotent": flags["is_nilpotent"],
        },
        "lattice": {"subgroup_count": len(L)},
        "cd": {
            "m_star": cd.m_star,
            "member_count": len(cd.members),
            "min_member_order": L.subgroups[cd.min_member].order,
            "max_member_order": L.subgroups[cd.max_member].order,
            "min_member": subgroup_ref(L, cd.min_member),
            "max_member": subgroup_ref(L, cd.max_member),
            "members": [subgroup_ref(L, i) for i in cd.members],
            "measure_image": cd.image,
        },
        "properties": [
            {"id": c.id, "description": c.description, "passed": c.passed, "checked": c.checked, "witness": c.witness}
            for c in a.properties.checks
        ],
        "density": {
            "dense": a.density.dense,
            "pairs_checked": a.density.pairs_checked,
            "failure_count": a.density.total_failures,
            "witness_cap": a.density.witness_cap,
            "witnesses": [{"H": subgroup_ref(L, h), "K": subgroup_ref(L, k)} for h, k in a.density.failures],
        },
        "theorems": {name: _theorem_dict(rep) for name, rep in a.theorems.items()},
        "zm_chain": a.zm_chain,
    }
    if timings:
        out["timing_ms"] = a.timing_ms
    return json.loads(json.dumps(out))  # tuples -> lists, so the dict round-trips


def dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def format_text(a: Analysis, timings: bool = True) -> str:
    G, L, cd = a.group, a.lattice, a.cd
    flags = structure_flags(G)
    sig = " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in flags["prime_signature"]) or "1"
    lines = [
        f"group            {a.spec}",
        f"order            {G.n} = {sig}",
        f"abelian          {flags['is_abelian']}",
        f"subgroups        {len(L)}",
        f"m*               {cd.m_star}",
        f"CD members       {len(cd.members)} (orders {', '.join(str(L.subgroups[i].order) for i in cd.members)})",
        f"least member     #{cd.min_member} order {L.subgroups[cd.min_member].order}",
        f"greatest member  #{cd.max_member} order {L.subgroups[cd.max_member].order}",
        f"measure image    {cd.image}",
        "",
        "properties",
    ]
    for c in a.properties.checks:
        mark = "ok  " if c.passed else "FAIL"
        lines.append(f"  {mark} {c.id:<4} {c.description}" + ("" if c.passed else f"  witness={c.witness}"))
    lines += ["", f"dense            {a.density.dense}",
              f"pairs checked    {a.density.pairs_checked}",
              f"failing pairs    {a.density.total_failures}"]
    for h, k in a.density.failures:
        lines.append(f"  ({_short(L, h)}, {_short(L, k)})")
    for name, rep in a.theorems.items():
        lines.append("")
        lines.append(f"{rep.title}: {'holds' if rep.passed else 'FAILS'}")
        for c in rep.claims:
            lines.append(f"  {'ok  ' if c.passed else 'FAIL'} {c.name} {c.measured}")
    if a.zm_chain is not None:
        lines += ["", f"single CD member {a.zm_chain}  (all Sylow subgroups cyclic)"]
    if timings:
        lines += ["", "timing (ms)  " + "  ".join(f"{k}={v}" for k, v in a.timing_ms.items())]
    return "\n".join(lines) + "\n"


def _short(L: Lattice, i: int) -> str:
    H = L.subgroups[i]
    return f"#{i} order {H.order} {H.indices()}"


def density_dict(a: Analysis) -> dict:
    return {"spec": a.spec, **report_dict(a, timings=False)["density"]}


# ---------------------------------------------------------------------------
# Hasse diagrams


def hasse_dot(L: Lattice, cd: CDResult, name: str = "L") -> str:
    """Cover relations as a DOT digraph, larger subgroup pointing at smaller.

    Labels are ``order:measure``; CD members are filled and the least and
    greatest members get a double border.
    """
    lines = [f'digraph "{name}" {{']
    for i, H in enumerate(L.subgroups):
        attrs = [f'label="{H.order}:{cd.measure_of[i]}"']
        if i in (cd.min_member, cd.max_member):
            attrs.append("shape=doublecircle")
        else:
            attrs.append("shape=circle")
        if i in cd:
            attrs.append("style=filled")
        lines.append(f"  n{i} [{', '.join(attrs)}];")
    for i, j in L.covers:
        lines.append(f"  n{j} -> n{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"

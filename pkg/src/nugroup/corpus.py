"""Built-in verification corpus and report generation.

Light entries run everywhere in seconds; heavy entries (the order-27
extraspecial group and SL(2,5)) are opt-in.  Every entry is gated on its
independently known order (and exponent where stated) before any
structural check runs.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

import numpy as np

from .coset import EnumLimits, enumerate_presentation, to_regular_engine
from .engine import exponent, fingerprint, full_subgroup, quotient_engine
from .nu import NuContext, build_nu
from .tensor import TENSOR_ORDER_CAP, tensor_square
from .verify import CheckResult, VerifyCaps, run_checks

__all__ = ["CorpusEntry", "CORPUS", "corpus_entry", "run_corpus", "render_markdown", "report_json"]

CORPUS_DSL = """
# verification corpus: small groups with independently known data
group C1    = < a | a >
group C2    = < a | a^2 >
group C3    = < a | a^3 >
group C4    = < a | a^4 >
group C2xC2 = < a, b | a^2, b^2, [a,b] >
group C6    = < a | a^6 >
group S3    = < a, b | a^2, b^2, (a*b)^3 >
group D4    = < a, b | a^4, b^2, (a*b)^2 >
group Q8    = < a, b | a^4, a^2 = b^2, b^-1*a*b = a^-1 >
group C3xC3 = < a, b | a^3, b^3, [a,b] >
group D6    = < a, b | a^6, b^2, (a*b)^2 >
group A4    = < a, b | a^2, b^3, (a*b)^3 >
group H27   = < a, b, c | a^3, b^3, c^3, [a,b]*c^-1, [a,c], [b,c] >
group SL2F5 = < s, t | s^3 = t^5, (s*t)^2 = s^3 >
"""


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    order: int
    exponent: int | None = None
    nilpotency_class: int | None = None
    coclass: int | None = None
    weight: str = "light"
    expect_exponent_equality: bool = False
    # enumeration head-room for entries whose live-coset peak exceeds the
    # default cap before coincidences collapse the table
    min_cosets: int | None = None


CORPUS = [
    CorpusEntry("C1", 1, exponent=1, nilpotency_class=0),
    CorpusEntry("C2", 2, exponent=2, nilpotency_class=1, coclass=0),
    CorpusEntry("C3", 3, exponent=3, nilpotency_class=1, coclass=0),
    CorpusEntry("C4", 4, exponent=4, nilpotency_class=1, coclass=1),
    CorpusEntry("C2xC2", 4, exponent=2, nilpotency_class=1, coclass=1),
    CorpusEntry("C6", 6, exponent=6, nilpotency_class=1),
    CorpusEntry("S3", 6, exponent=6),
    CorpusEntry("D4", 8, exponent=4, nilpotency_class=2, coclass=1),
    CorpusEntry("Q8", 8, exponent=4, nilpotency_class=2, coclass=1),
    CorpusEntry("C3xC3", 9, exponent=3, nilpotency_class=1, coclass=1),
    CorpusEntry("D6", 12, exponent=6),
    CorpusEntry("A4", 12, exponent=6),
    CorpusEntry("H27", 27, exponent=3, nilpotency_class=2, coclass=1,
                weight="heavy", expect_exponent_equality=True),
    CorpusEntry("SL2F5", 120, exponent=60, weight="heavy", min_cosets=5_000_000),
]

CROSS_VALIDATE_MAX_ORDER = 8


def corpus_entry(name: str) -> CorpusEntry:
    for entry in CORPUS:
        if entry.name == name:
            return entry
    raise KeyError(f"no corpus entry named {name!r}")


def corpus_presentations(dsl: str | None = None):
    from .words import parse_presentation

    return {p.name: p for p in parse_presentation(dsl or CORPUS_DSL)}


def _json_safe(obj):
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, np.ndarray):
        return [_json_safe(v) for v in obj.tolist()]
    return obj


def _safe_exponent(ctx: NuContext, sub, cap: int):
    if sub.order > cap:
        return None
    return exponent(ctx.nu, sub)


def entry_report(
    entry: CorpusEntry,
    *,
    strategy: str = "gens",
    checks=None,
    seed: int = 0,
    limits: EnumLimits | None = None,
    caps: VerifyCaps | None = None,
    presentations=None,
    prebuilt: NuContext | None = None,
) -> dict:
    """Run one corpus entry end to end and return its report dict."""
    caps = caps or VerifyCaps()
    presentations = presentations or corpus_presentations()
    pres = presentations[entry.name]
    if entry.min_cosets is not None:
        base_limits = limits or EnumLimits()
        if base_limits.max_cosets < entry.min_cosets:
            limits = EnumLimits(entry.min_cosets, base_limits.max_time)
    report = {
        "group": entry.name,
        "strategy": strategy,
        "gates": {},
        "orders": {},
        "exponents": {},
        "checks": [],
        "status": "pass",
    }
    t0 = time.perf_counter()
    try:
        table = enumerate_presentation(pres, limits)
    except Exception as exc:
        report["gates"]["enumeration"] = f"fail: {exc}"
        report["status"] = "fail"
        return report
    base = to_regular_engine(table, pres)
    if base.num_points != entry.order:
        report["gates"]["order"] = f"fail: enumerated {base.num_points}, expected {entry.order}"
        report["status"] = "fail"
        return report
    report["gates"]["order"] = "pass"
    if entry.exponent is not None:
        got = exponent(base)
        if got != entry.exponent:
            report["gates"]["exponent"] = f"fail: computed {got}, expected {entry.exponent}"
            report["status"] = "fail"
            return report
        report["gates"]["exponent"] = "pass"

    ctx = prebuilt or build_nu(pres, strategy, limits, base_engine=base)
    gate_checks: list[CheckResult] = []

    if entry.order <= CROSS_VALIDATE_MAX_ORDER and strategy == "gens":
        t1 = time.perf_counter()
        other = build_nu(pres, "cayley", limits, base_engine=base)
        same = fingerprint(ctx.nu) == fingerprint(other.nu)
        gate_checks.append(
            CheckResult(
                name="strategy_cross_validation",
                status="pass" if same else "fail",
                details={"gens_order": ctx.nu.num_points, "cayley_order": other.nu.num_points},
                witness=None if same else {"reason": "fingerprints differ between strategies"},
                seed=seed,
                ms=(time.perf_counter() - t1) * 1000.0,
            )
        )
    if entry.order <= min(CROSS_VALIDATE_MAX_ORDER, TENSOR_ORDER_CAP):
        t1 = time.perf_counter()
        oracle = tensor_square(base)
        u1 = ctx.upsilon1()
        same = oracle.num_points == u1.order and fingerprint(oracle) == fingerprint(ctx.nu, u1)
        gate_checks.append(
            CheckResult(
                name="tensor_oracle",
                status="pass" if same else "fail",
                details={"oracle_order": oracle.num_points, "upsilon1_order": u1.order},
                witness=None if same else {"reason": "oracle and [G,G^phi] disagree"},
                seed=seed,
                ms=(time.perf_counter() - t1) * 1000.0,
            )
        )

    options = {"exponents": {"expect_equality": entry.expect_exponent_equality}}
    results = gate_checks + run_checks(ctx, checks, seed=seed, caps=caps, options=options)
    report["checks"] = [r.to_json() for r in results]
    report["_results"] = results
    if any(r.status == "fail" for r in results):
        report["status"] = "fail"

    report["orders"] = {
        "g": ctx.base.num_points,
        "nu": ctx.nu.num_points,
        "theta": ctx.theta().order,
        "upsilon1": ctx.upsilon1().order,
        "upsilon2": ctx.upsilon2().order,
        "upsilon3": ctx.upsilon3().order,
        "mu": ctx.mu().order,
        "delta": ctx.delta().order,
        "derived": ctx.nu_derived().order,
    }
    base_full = full_subgroup(ctx.base)
    from .engine import commutator_subgroup

    base_derived = commutator_subgroup(ctx.base, base_full, base_full)
    gab = quotient_engine(ctx.base, base_full, base_derived)
    wedge = quotient_engine(ctx.nu, ctx.upsilon1(), ctx.delta())
    cap = caps.exponent_cap
    report["exponents"] = {
        "g": exponent(ctx.base),
        "g_ab": exponent(gab),
        "nu": exponent(ctx.nu) if ctx.nu.num_points <= cap else None,
        "derived": _safe_exponent(ctx, ctx.nu_derived(), cap),
        "upsilon1": _safe_exponent(ctx, ctx.upsilon1(), cap),
        "mu": _safe_exponent(ctx, ctx.mu(), cap),
        "delta": _safe_exponent(ctx, ctx.delta(), cap),
        "exterior": exponent(wedge) if wedge.num_points <= cap else None,
    }
    report["ms"] = (time.perf_counter() - t0) * 1000.0
    return report


def run_corpus(
    include=None,
    *,
    heavy: bool = False,
    checks=None,
    seed: int = 0,
    strategy: str = "gens",
    limits: EnumLimits | None = None,
    caps: VerifyCaps | None = None,
) -> list[dict]:
    """Reports for the selected corpus entries.

    include=None selects the light corpus (plus heavy when the flag is
    set); an explicit list selects exactly those names.
    """
    if include is not None:
        selected = [corpus_entry(n) for n in include]
    else:
        selected = [e for e in CORPUS if e.weight == "light" or heavy]
    presentations = corpus_presentations()
    return [
        entry_report(
            entry,
            strategy=strategy,
            checks=checks,
            seed=seed,
            limits=limits,
            caps=caps,
            presentations=presentations,
        )
        for entry in selected
    ]


def report_json(reports: list[dict], *, timings: bool = False) -> str:
    """Stable JSON rendering; wall-clock fields are nulled unless asked
    for, so identical inputs and seed give byte-identical output."""
    out = []
    for rep in reports:
        item = {
            "group": rep["group"],
            "strategy": rep["strategy"],
            "status": rep["status"],
            "gates": rep.get("gates", {}),
            "orders": rep.get("orders", {}),
            "exponents": rep.get("exponents", {}),
            "checks": [
                r.to_json(include_ms=timings) for r in rep.get("_results", [])
            ],
            "ms": round(rep["ms"], 1) if timings and "ms" in rep else None,
        }
        out.append(_json_safe(item))
    return json.dumps(out, indent=2, sort_keys=True) + "\n"


def render_markdown(reports: list[dict]) -> str:
    lines = ["# nu(G) verification report", ""]
    for rep in reports:
        lines.append(f"## {rep['group']} (strategy: {rep['strategy']}) - {rep['status'].upper()}")
        if rep.get("gates"):
            gates = ", ".join(f"{k}: {v}" for k, v in rep["gates"].items())
            lines.append(f"- gates: {gates}")
        if rep.get("orders"):
            o = rep["orders"]
            lines.append(
                f"- orders: |G|={o['g']} |nu|={o['nu']} |Theta|={o['theta']} "
                f"|U1|={o['upsilon1']} |U2|={o['upsilon2']} |U3|={o['upsilon3']} "
                f"|mu|={o['mu']} |Delta|={o['delta']} |nu'|={o['derived']}"
            )
        if rep.get("exponents"):
            x = rep["exponents"]
            lines.append(
                f"- exponents: G={x['g']} G_ab={x['g_ab']} nu={x['nu']} nu'={x['derived']} "
                f"U1={x['upsilon1']} mu={x['mu']} Delta={x['delta']} wedge={x['exterior']}"
            )
        for chk in rep.get("_results", []):
            mark = {"pass": "ok", "fail": "FAIL", "skipped": "skip"}[chk.status]
            lines.append(f"  - [{mark}] {chk.name} ({chk.ms:.0f} ms)")
            if chk.status == "fail" and chk.witness:
                lines.append(f"    witness: {chk.witness}")
        lines.append("")
    return "\n".join(lines)

"""Acceptance suite: one test per criterion, each printing a PASS line.

Criterion 8 (the order-27 extraspecial reproduction) is opt-in via
--heavy, matching the CLI's --heavy gate for the same run.
"""

import time

import pytest

from nugroup import engine as E
from nugroup.corpus import (
    CORPUS,
    corpus_entry,
    entry_report,
    report_json,
    run_corpus,
)
from nugroup.coset import EnumLimits
from nugroup.tensor import tensor_square
from nugroup.verify import CHECKS

LIGHT = [e.name for e in CORPUS if e.weight == "light"]
SMALL = [e.name for e in CORPUS if e.weight == "light" and e.order <= 8]
P_GROUPS = ["C2", "C4", "C2xC2", "D4", "Q8", "C3", "C3xC3"]


def _report(num, label):
    print(f"ACCEPTANCE {num:2d} {label}: PASS")


def test_criterion_01_order_law(store):
    """|nu(G)| = |G|^2 * |G (x) G| with the tensor order from the
    independent brute-force oracle; exact, under 10 s per group."""
    for name in LIGHT:
        t0 = time.perf_counter()
        ctx = store.ctx(name)
        assert ctx.nu.num_points == ctx.base.num_points ** 2 * ctx.upsilon1().order, name
        if corpus_entry(name).order <= 8:
            oracle = tensor_square(ctx.base)
            assert ctx.nu.num_points == ctx.base.num_points ** 2 * oracle.num_points, name
        assert time.perf_counter() - t0 < 10.0, name
    _report(1, "order law |nu| = |G|^2 |G(x)G| (oracle-checked for |G| <= 8)")


def test_criterion_02_strategy_cross_validation(store):
    """nu built from generator triples and from all-element triples has
    identical fingerprints for every corpus group of order <= 8."""
    t0 = time.perf_counter()
    for name in SMALL:
        assert E.fingerprint(store.ctx(name).nu) == E.fingerprint(store.ctx(name, "cayley").nu), name
    assert time.perf_counter() - t0 < 30.0
    _report(2, "gens and cayley strategies agree on all |G| <= 8 entries")


def test_criterion_03_theorem_A_suite(store):
    for name in LIGHT:
        t0 = time.perf_counter()
        res = CHECKS["thmA"](store.ctx(name), seed=0)
        assert res.status == "pass", (name, res.witness)
        for key in (
            "gamma_star_bijective",
            "equal_orders",
            "derived_is_triple_product",
            "pairwise_commuting",
            "central_product_intersection_u1",
            "mu_central",
            "quotient_fingerprint_is_cube",
            "pairwise_intersection_u1_u2",
            "order_identity",
        ):
            assert res.details[key] == "pass", (name, key)
        assert time.perf_counter() - t0 < 60.0, name
    _report(3, "Theorem A suite (central product, mu intersections, cube quotient)")


def test_criterion_04_theorems_B_and_C(store):
    for name in LIGHT:
        ctx = store.ctx(name)
        for check in ("thmB", "thmC"):
            res = CHECKS[check](ctx, seed=0)
            assert res.status == "pass", (name, check, res.witness)
    _report(4, "Theorem B and C ladders, all terms to stabilization + closed forms")


def test_criterion_05_lemmas_and_biderivation(store):
    for name in LIGHT:
        ctx = store.ctx(name)
        res = CHECKS["lemma21"](ctx, seed=0)
        assert res.status == "pass", (name, res.witness)
        res = CHECKS["biderivation"](ctx, seed=0)
        assert res.status == "pass", (name, res.witness)
        if ctx.base.num_points <= 12:
            assert res.details["mode"] == "exhaustive", name
        res = CHECKS["lemma23"](ctx, seed=0, trials=1000, max_s=5)
        assert res.status == "pass", (name, res.witness)
        assert res.seed == 0  # seed is logged with the result
        # weight-3 bracket identities live in the thmC check; criterion 4
        # already ran them over all element triples for |G| <= 8
    _report(5, "Lemma 2.1, Lemma 3.1, biderivation axioms, 1000-sample product law")


def test_criterion_06_lattice_and_multiplier(store):
    for name in LIGHT:
        res = CHECKS["prop25"](store.ctx(name), seed=0)
        assert res.status == "pass", (name, res.witness)
    for name, expected in (("C2xC2", 2), ("C3xC3", 3)):
        res = CHECKS["prop25"](store.ctx(name), seed=0)
        assert res.details["mu_over_delta_order"] == expected, name
        assert res.details["multiplier_order_elementary_abelian"] == "pass", name
    _report(6, "abelianization quotients + mu/Delta = 2, 3 for C2^2, C3^2")


def test_criterion_07_exponent_corollaries(store):
    for name in P_GROUPS:
        res = CHECKS["exponents"](store.ctx(name), seed=0)
        assert res.status == "pass", (name, res.witness)
        for key, val in res.details.items():
            if key.startswith(("derived_exponent", "lcs_exponent", "coclass")):
                assert val == "pass", (name, key)
    _report(7, "exponent equalities and coclass divisibility on the p-group entries")


@pytest.mark.heavy
def test_criterion_08_heavy_extraspecial_27(store):
    """Reproduction of the exponent equality on the extraspecial group of
    order 27 and exponent 3, gated on order and exponent, within 10 min."""
    t0 = time.perf_counter()
    entry = corpus_entry("H27")
    assert entry.order == 27 and entry.exponent == 3
    report = entry_report(entry, seed=0, limits=EnumLimits(max_cosets=2_000_000, max_time=590))
    assert report["gates"]["order"] == "pass"
    assert report["gates"]["exponent"] == "pass"
    exps = report["exponents"]
    assert exps["nu"] == max(exps["delta"], exps["exterior"]) * exps["g_ab"]
    exp_check = next(c for c in report["checks"] if c["name"] == "exponents")
    assert exp_check["details"]["diagonal_exterior_equality"] == "pass"
    assert report["status"] == "pass", [c for c in report["checks"] if c["status"] == "fail"]
    elapsed = time.perf_counter() - t0
    assert elapsed < 600.0
    print(f"  (nu(H27): {report['orders']['nu']} cosets, full suite in {elapsed:.0f}s)")
    _report(8, "heavy: exp(nu) = max(exp Delta, exp G^G) * exp G_ab on SmallGroup(27,3)")


def test_criterion_09_negative_controls(store):
    s3 = store.ctx("S3")
    d4 = store.ctx("D4")
    v4 = store.ctx("C2xC2")
    cases = [
        ("lemma21", s3, {"upsilon2": s3.theta()}),
        ("thmA", d4, {"mu": d4.delta()}),
        ("thmB", s3, {"upsilon1": s3.theta()}),
        ("thmC", d4, {"A": E.trivial_subgroup(d4.nu)}),
        ("prop25", v4, {"delta": v4.mu()}),
        ("exponents", d4, {"A": E.trivial_subgroup(d4.nu)}),
    ]
    for name, ctx, overrides in cases:
        res = CHECKS[name](ctx, seed=0, overrides=overrides)
        assert res.status == "fail", name
        assert res.witness, name
    gamma = dict(s3.gamma_pairs())
    gamma[(1, 1)] = s3.embed_g(1)
    res = CHECKS["biderivation"](s3, overrides={"gamma": gamma})
    assert res.status == "fail" and res.witness
    _report(9, "every structural check fails with a witness on a wrong subgroup")


def test_criterion_10_determinism():
    a = report_json(run_corpus(include=["C2", "S3", "D4"], seed=13))
    b = report_json(run_corpus(include=["C2", "S3", "D4"], seed=13))
    assert a.encode() == b.encode()
    _report(10, "identical inputs and seed give byte-identical JSON reports")

import numpy as np
import pytest

from nugroup import engine as E
from nugroup.coset import enumerate_presentation, to_regular_engine
from nugroup.nu import NuBuildError, NuContext, build_nu, build_nu_presentation
from nugroup.words import parse_presentation

LIGHT = ["C1", "C2", "C3", "C4", "C2xC2", "C6", "S3", "D4", "Q8", "C3xC3", "D6", "A4"]
SMALL = ["C1", "C2", "C3", "C4", "C2xC2", "C6", "S3", "D4", "Q8"]  # order <= 8


class TestPresentationCounts:
    def test_single_generator(self, store):
        nup = build_nu_presentation(store.pres("C2"), "gens")
        # R and R^phi contribute one relator each, the lone triple two
        assert len(nup.generators) == 2
        assert len(nup.relators) == 4

    def test_two_generators(self, store):
        pres = store.pres("S3")
        nup = build_nu_presentation(pres, "gens")
        assert len(nup.generators) == 4
        assert len(nup.relators) == 2 * len(pres.relators) + 2 * 2 ** 3

    def test_cayley_matches_gens_for_c2(self, store):
        a = enumerate_presentation(build_nu_presentation(store.pres("C2"), "gens"))
        b = enumerate_presentation(build_nu_presentation(store.engine("C2"), "cayley"))
        assert a.num_cosets == b.num_cosets

    def test_unknown_strategy(self, store):
        with pytest.raises(ValueError, match="strategy"):
            build_nu_presentation(store.pres("C2"), "magic")


class TestBuild:
    def test_trivial_group(self, store):
        ctx = store.ctx("C1")
        assert ctx.nu.num_points == 1
        assert ctx.upsilon1().order == 1
        assert ctx.delta().order == 1

    def test_semidirect_order_law(self, store):
        for name in LIGHT:
            ctx = store.ctx(name)
            assert ctx.nu.num_points == ctx.base.num_points ** 2 * ctx.upsilon1().order

    def test_theta_index(self, store):
        for name in ("C2", "S3", "D4", "A4"):
            ctx = store.ctx(name)
            assert ctx.theta().order == ctx.nu.num_points // ctx.base.num_points

    def test_mu_index_in_upsilon1(self, store):
        # Upsilon1 / mu is (isomorphic to) the derived subgroup of G
        for name in ("C2", "S3", "D4", "Q8", "A4"):
            ctx = store.ctx(name)
            full = E.full_subgroup(ctx.base)
            derived = E.commutator_subgroup(ctx.base, full, full)
            assert ctx.mu().order * derived.order == ctx.upsilon1().order

    def test_rho_folds_both_copies(self, store):
        ctx = store.ctx("S3")
        for p in range(6):
            assert ctx.rho.apply(ctx.embed_g(p)) == p
            assert ctx.rho.apply(ctx.embed_gphi(p)) == p

    def test_psi_involution_swaps_copies(self, store):
        ctx = store.ctx("D4")
        g = ctx.psi.graph
        assert np.array_equal(g[g], np.arange(ctx.nu.num_points))
        assert set(int(g[p]) for p in ctx.g_embed) == set(int(q) for q in ctx.gphi_embed)

    def test_strategies_agree(self, store):
        for name in SMALL:
            gens_ctx = store.ctx(name)
            cay_ctx = store.ctx(name, "cayley")
            assert E.fingerprint(gens_ctx.nu) == E.fingerprint(cay_ctx.nu), name

    def test_cayley_cap(self, store):
        pres = parse_presentation("group SL2F5 = < s, t | s^3 = t^5, (s*t)^2 = s^3 >")[0]
        base = to_regular_engine(enumerate_presentation(pres), pres)
        assert base.num_points == 120
        with pytest.raises(ValueError, match="cap"):
            build_nu(pres, "cayley", base_engine=base)

    def test_wrong_base_engine_rejected(self, store):
        nu_pres = build_nu_presentation(store.pres("S3"), "gens")
        nu_engine = to_regular_engine(enumerate_presentation(nu_pres), nu_pres)
        with pytest.raises(NuBuildError):
            NuContext(store.engine("C6"), store.pres("C6"), nu_engine, "gens")


class TestSubgroups:
    def test_upsilon_orders_match(self, store):
        for name in ("C2", "S3", "D4", "Q8", "A4"):
            ctx = store.ctx(name)
            assert ctx.upsilon1().order == ctx.upsilon2().order == ctx.upsilon3().order

    def test_psi_maps_u2_to_u3(self, store):
        ctx = store.ctx("D4")
        assert np.array_equal(
            ctx.psi_points(ctx.upsilon2().points), ctx.upsilon3().points
        )

    def test_delta_diagonal_generators(self, store):
        ctx = store.ctx("Q8")
        d = ctx.delta()
        for p in range(ctx.base.num_points):
            assert d.contains(ctx.nu.comm(ctx.embed_g(p), ctx.embed_gphi(p)))

    def test_gamma_star_bijective(self, store):
        for name in ("C2", "S3", "D4"):
            assert store.ctx(name).gamma_star().is_bijective()

    def test_gamma_star_generator_images(self, store):
        ctx = store.ctx("S3")
        gamma = ctx.gamma_pairs()
        for pt, (g, h) in ctx.upsilon1_labels().items():
            assert ctx.gamma_star_apply_nu(pt) == gamma[(g, h)]

    def test_abc_level_one(self, store):
        ctx = store.ctx("D4")
        A, B, C = ctx.abc_subgroups(1)
        assert E.subgroups_equal(A, ctx.upsilon1())
        assert E.subgroups_equal(B, ctx.upsilon2())
        assert E.subgroups_equal(C, ctx.upsilon3())

    def test_abc_abelian_collapse(self, store):
        ctx = store.ctx("C2xC2")
        A2, B2, C2 = ctx.abc_subgroups(2)
        assert A2.order == B2.order == C2.order == 1

    def test_abc_d4_level_two_against_direct_form(self, store):
        ctx = store.ctx("D4")
        A2, _, _ = ctx.abc_subgroups(2)
        gamma2 = ctx.base_lcs_embedded()[1]
        direct = E.commutator_subgroup(ctx.nu, gamma2, ctx.gphi_sub())
        assert E.subgroups_equal(A2, direct)

    def test_gamma_sets(self, store):
        ctx = store.ctx("S3")
        assert ctx.gamma_set(1) == list(range(6))
        g2 = ctx.gamma_set(2)
        assert 0 in g2 and len(g2) == 3  # the three rotations of A3

import pytest

from nugroup import engine as E
from nugroup.coset import enumerate_presentation, to_regular_engine
from nugroup.tensor import biderivation_check, tensor_presentation, tensor_square
from nugroup.words import parse_presentation


class TestPresentationShape:
    def test_generator_and_relator_counts(self, store):
        for name in ("C2", "C3", "C4"):
            e = store.engine(name)
            n = e.num_points
            tp = tensor_presentation(e)
            assert len(tp.generators) == n * n
            assert len(tp.relators) == 2 * n ** 3

    def test_order_cap(self, store):
        with pytest.raises(ValueError, match="cap"):
            tensor_square(store.engine("S3"), cap=4)


class TestTensorSquare:
    def test_trivial_group(self, store):
        assert tensor_square(store.engine("C1")).num_points == 1

    def test_c2_forced_by_relations(self, store):
        # hand expansion for the two-element group {1, a}: the relator
        # family t(g*g1,h)^-1 t(g,h) t(g1,h) at (g,g1,h)=(1,a,h) forces
        # t(1,h)=1, and at (a,a,a) forces t(a,a)^2 = t(1,a) = 1, so the
        # group collapses to the cyclic group on t(a,a) of order 2
        ts = tensor_square(store.engine("C2"))
        assert ts.num_points == 2
        # cross-check against the independent route |nu| / |G|^2
        ctx = store.ctx("C2")
        assert ts.num_points == ctx.nu.num_points // 4

    def test_matches_nu_route_on_small_groups(self, store):
        for name in ("C3", "C4", "C2xC2", "C6", "S3", "D4", "Q8"):
            e = store.engine(name)
            ts = tensor_square(e)
            ctx = store.ctx(name)
            u1 = ctx.upsilon1()
            assert ts.num_points == u1.order, name
            assert E.fingerprint(ts) == E.fingerprint(ctx.nu, u1), name

    def test_abelian_tensor_is_abelian(self, store):
        for name in ("C4", "C2xC2", "C6"):
            ts = tensor_square(store.engine(name))
            for i, a in enumerate(ts.gen_points):
                for b in ts.gen_points[i + 1:]:
                    assert ts.comm(a, b) == 0

    def test_reordering_generators_gives_same_fingerprint(self):
        p1 = parse_presentation("group S3 = < a, b | a^2, b^2, (a*b)^3 >")[0]
        p2 = parse_presentation("group S3R = < b, a | b^2, a^2, (b*a)^3 >")[0]
        e1 = to_regular_engine(enumerate_presentation(p1), p1)
        e2 = to_regular_engine(enumerate_presentation(p2), p2)
        assert E.fingerprint(tensor_square(e1)) == E.fingerprint(tensor_square(e2))


class TestBiderivation:
    def test_constant_identity(self, store):
        g = store.engine("S3")
        res = biderivation_check(g, lambda a, b: 0, g)
        assert res.ok and res.mode == "exhaustive"

    def test_tensor_symbol_map(self, store):
        # the symbol map (g,h) -> t(g,h) into the tensor square itself
        g = store.engine("C4")
        ts = tensor_square(g)
        n = g.num_points
        res = biderivation_check(g, lambda a, b: ts.gen_points[a * n + b], ts)
        assert res.ok

    def test_gamma_map_in_nu(self, store):
        ctx = store.ctx("D4")
        gamma = ctx.gamma_pairs()
        res = biderivation_check(ctx.base, lambda a, b: gamma[(a, b)], ctx.nu)
        assert res.ok and res.mode == "exhaustive"

    def test_detects_violation(self, store):
        g = store.engine("C4")
        a = g.gen_points[0]
        res = biderivation_check(g, lambda x, y: a if (x, y) == (1, 1) else 0, g)
        assert not res.ok
        assert res.witness is not None and "axiom" in res.witness

    def test_sampled_mode_above_cap(self, store):
        ctx = store.ctx("A4")
        gamma = ctx.gamma_pairs()
        res = biderivation_check(
            ctx.base,
            lambda a, b: gamma[(a, b)],
            ctx.nu,
            max_exhaustive=8,
            samples=2000,
            seed=11,
        )
        assert res.ok and res.mode == "sampled"

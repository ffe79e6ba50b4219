import numpy as np
import pytest

from nugroup.coset import (
    EnumLimits,
    LimitExceeded,
    active_kernel,
    enumerate_presentation,
    validate_table,
)
from nugroup.words import parse_presentation

HAS_C = active_kernel() == "c"


def _pres(text):
    return parse_presentation(text)[0]


def _perm_closure(gens):
    """Brute-force order of the permutation group generated by gens."""
    n = len(gens[0])
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


class TestEnumeration:
    def test_cyclic_five(self):
        t = enumerate_presentation(_pres("group C5 = < a | a^5 >"))
        assert t.num_cosets == 5

    def test_s3_against_permutation_oracle(self):
        # oracle: the group generated by two transpositions of 3 points
        perms = _perm_closure([(1, 0, 2), (0, 2, 1)])
        assert len(perms) == 6
        t = enumerate_presentation(_pres("group S3 = < a, b | a^2, b^2, (a*b)^3 >"))
        assert t.num_cosets == len(perms)

    def test_d4_against_permutation_oracle(self):
        # oracle: rotation and reflection of a square
        perms = _perm_closure([(1, 2, 3, 0), (1, 0, 3, 2)])
        assert len(perms) == 8
        t = enumerate_presentation(_pres("group D4 = < a, b | a^4, b^2, (a*b)^2 >"))
        assert t.num_cosets == len(perms)

    def test_table_is_complete_and_consistent(self):
        pres = _pres("group Q8 = < a, b | a^4, a^2 = b^2, b^-1*a*b = a^-1 >")
        t = enumerate_presentation(pres)
        ident = np.arange(t.num_cosets, dtype=np.int32)
        for i in range(t.ngens):
            fwd, bwd = t.rows[:, 2 * i], t.rows[:, 2 * i + 1]
            assert np.array_equal(np.sort(fwd), ident)
            assert np.array_equal(bwd[fwd], ident)
        validate_table(t, pres)

    def test_validation_catches_corruption(self):
        pres = _pres("group S3 = < a, b | a^2, b^2, (a*b)^3 >")
        t = enumerate_presentation(pres)
        t.rows = t.rows.copy()
        t.rows[2, 0], t.rows[3, 0] = t.rows[3, 0], t.rows[2, 0]
        with pytest.raises(AssertionError):
            validate_table(t, pres)

    def test_deterministic_byte_identical(self):
        pres = _pres("group D6 = < a, b | a^6, b^2, (a*b)^2 >")
        a = enumerate_presentation(pres)
        b = enumerate_presentation(pres)
        assert a.rows.tobytes() == b.rows.tobytes()

    def test_limit_exceeded_reports_high_water(self):
        pres = _pres("group H27 = < a, b, c | a^3, b^3, c^3, [a,b]*c^-1, [a,c], [b,c] >")
        with pytest.raises(LimitExceeded) as exc:
            enumerate_presentation(pres, EnumLimits(max_cosets=10, max_time=60))
        assert exc.value.kind == "cosets"
        assert exc.value.high_water >= 10

    def test_bad_limits_rejected(self):
        with pytest.raises(ValueError):
            EnumLimits(max_cosets=0)

    def test_lookahead_rescues_tight_limit(self):
        # the nu presentation of C3xC3 peaks at 8322 transient cosets on
        # the way to its 6561-coset table; a cap below the peak but above
        # the final size is rescued by the lookahead pass
        from nugroup.nu import build_nu_presentation

        pres = _pres("group C3xC3 = < a, b | a^3, b^3, [a,b] >")
        nup = build_nu_presentation(pres, "gens")
        free_run = enumerate_presentation(nup, kernel="py")
        assert (free_run.num_cosets, free_run.high_water) == (6561, 8322)
        kernels = ["py", "c"] if HAS_C else ["py"]
        for kernel in kernels:
            rescued = enumerate_presentation(
                nup, EnumLimits(max_cosets=7000, max_time=60), kernel=kernel
            )
            assert rescued.num_cosets == 6561
            assert rescued.rows.tobytes() == free_run.rows.tobytes()
            with pytest.raises(LimitExceeded):
                enumerate_presentation(
                    nup, EnumLimits(max_cosets=6561, max_time=60), kernel=kernel
                )


class TestKernels:
    @pytest.mark.parametrize(
        "src,order",
        [
            ("group C7 = < a | a^7 >", 7),
            ("group S3 = < a, b | a^2, b^2, (a*b)^3 >", 6),
            ("group D4 = < a, b | a^4, b^2, (a*b)^2 >", 8),
            ("group A4 = < a, b | a^2, b^3, (a*b)^3 >", 12),
            ("group B3 = < a, b, c | a^2, b^2, c^2, (a*c)^2, (a*b)^3, (b*c)^4 >", 48),
        ],
    )
    def test_python_and_felsch_agree(self, src, order):
        pres = _pres(src)
        hlt = enumerate_presentation(pres, kernel="py")
        felsch = enumerate_presentation(pres, felsch=True)
        assert hlt.num_cosets == felsch.num_cosets == order
        assert hlt.rows.tobytes() == felsch.rows.tobytes()

    @pytest.mark.skipif(not HAS_C, reason="compiled kernel not built")
    @pytest.mark.parametrize(
        "src",
        [
            "group C7 = < a | a^7 >",
            "group S3 = < a, b | a^2, b^2, (a*b)^3 >",
            "group A4 = < a, b | a^2, b^3, (a*b)^3 >",
            "group B3 = < a, b, c | a^2, b^2, c^2, (a*c)^2, (a*b)^3, (b*c)^4 >",
            "group H27 = < a, b, c | a^3, b^3, c^3, [a,b]*c^-1, [a,c], [b,c] >",
        ],
    )
    def test_compiled_matches_python(self, src):
        pres = _pres(src)
        c = enumerate_presentation(pres, kernel="c")
        py = enumerate_presentation(pres, kernel="py")
        assert c.rows.tobytes() == py.rows.tobytes()

    @pytest.mark.skipif(not HAS_C, reason="compiled kernel not built")
    def test_compiled_limit(self):
        pres = _pres("group H27 = < a, b, c | a^3, b^3, c^3, [a,b]*c^-1, [a,c], [b,c] >")
        with pytest.raises(LimitExceeded):
            enumerate_presentation(pres, EnumLimits(max_cosets=5, max_time=60), kernel="c")


class TestRegularEngine:
    def test_c2_swap(self, store):
        e = store.engine("C2")
        assert e.num_points == 2
        assert list(e.cols[0]) == [1, 0]

    def test_c4_schreier_lengths(self, store):
        e = store.engine("C4")
        lengths = sorted(len(e.word_cols(p)) for p in range(4))
        # breadth-first with inverse edges: identity, a, a^-1, a^2
        assert lengths == [0, 1, 1, 2]

    def test_s3_order_histogram_against_permutations(self, store):
        # oracle: element orders of the 6 permutations of 3 points
        def order(p):
            q, k = p, 1
            while q != (0, 1, 2):
                q = tuple(q[p[i]] for i in range(3))
                k += 1
            return k

        perms = _perm_closure([(1, 0, 2), (0, 2, 1)])
        expected = sorted(order(p) for p in perms)
        e = store.engine("S3")
        assert sorted(e.order_of(p) for p in range(6)) == expected == [1, 2, 2, 2, 3, 3]

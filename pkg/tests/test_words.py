import pytest
from hypothesis import given, strategies as st

from nugroup.words import (
    ParseError,
    Presentation,
    Word,
    cayley_presentation,
    parse_presentation,
    presentation_to_dsl,
    word_commutator,
    word_concat_reduce,
    word_conjugate,
    word_inverse,
)


def _single(text):
    groups = parse_presentation(text)
    assert len(groups) == 1
    return groups[0]


class TestParser:
    def test_c2(self):
        p = _single("group C2 = < a | a^2 >")
        assert p.generators == ("a",)
        assert p.relators == (Word((1, 1)),)

    def test_s3_power_expansion(self):
        p = _single("group S3 = < a, b | a^2, b^2, (a*b)^3 >")
        assert len(p.relators) == 3
        assert len(p.relators[2]) == 6

    def test_commutator_sugar(self):
        p = _single("group H27 = < a, b, c | a^3, b^3, c^3, [a,b]*c^-1, [a,c], [b,c] >")
        # [a,b] = a^-1 b^-1 a b, so the fourth relator has length 5
        assert [len(r) for r in p.relators] == [3, 3, 3, 5, 4, 4]
        assert p.relators[3] == Word((-1, -2, 1, 2, -3))

    def test_equations_rewritten(self):
        p = _single("group Q8 = < a, b | a^4, a^2 = b^2, b^-1*a*b = a^-1 >")
        assert p.relators[1] == Word((1, 1, -2, -2))

    def test_comments_and_multiple_groups(self):
        groups = parse_presentation(
            """
            # two groups
            group A = < x | x^2 >  # trailing
            group B = < x, y | x^3, y^2, [x,y] >
            """
        )
        assert [g.name for g in groups] == ["A", "B"]

    def test_negative_power(self):
        p = _single("group T = < a, b | a*b^-2 >")
        assert p.relators[0] == Word((1, -2, -2))

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_presentation("group X = < a | a^2\ngroup Y = < b | b >")
        assert exc.value.line == 2

    def test_duplicate_generator(self):
        with pytest.raises(ParseError, match="duplicate"):
            parse_presentation("group X = < a, a | a^2 >")

    def test_unknown_name(self):
        with pytest.raises(ParseError, match="unknown name"):
            parse_presentation("group X = < a | a*b >")


class TestWordOps:
    def test_commutator_of_equal_words_vanishes(self):
        a = Word.gen(0)
        assert word_commutator(a, a) == Word()

    def test_conjugate_by_identity(self):
        a = Word.gen(0)
        assert word_conjugate(a, Word()) == a

    def test_inverse_reversal(self):
        w = Word((1, -2))  # a * b^-1
        assert word_inverse(w) == Word((2, -1))

    def test_concat_reduces(self):
        assert word_concat_reduce(Word((1, 2)), Word((-2, -1))) == Word()

    @given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=30))
    def test_reduction_idempotent_and_shorter(self, letters):
        w = Word(letters)
        assert Word(w.signed) == w
        assert len(w) <= len(letters)

    @given(st.lists(st.sampled_from([1, -1, 2, -2]), max_size=20))
    def test_inverse_involution(self, letters):
        w = Word(letters)
        assert w.inverse().inverse() == w
        assert w * w.inverse() == Word()

    @given(
        st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12),
        st.lists(st.sampled_from([1, -1, 2, -2]), max_size=12),
    )
    def test_product_inverse_rule(self, xs, ys):
        x, y = Word(xs), Word(ys)
        assert (x * y).inverse() == y.inverse() * x.inverse()

    def test_powers(self):
        a = Word.gen(0)
        assert a ** 3 == Word((1, 1, 1))
        assert a ** -2 == Word((-1, -1))
        assert a ** 0 == Word()


class TestRoundTrip:
    @pytest.mark.parametrize(
        "src",
        [
            "group C2 = < a | a^2 >",
            "group S3 = < a, b | a^2, b^2, (a*b)^3 >",
            "group H27 = < a, b, c | a^3, b^3, c^3, [a,b]*c^-1, [a,c], [b,c] >",
            "group M = < x, y | x^6, y^2, (x*y)^2, [x, y]*x^-4 >",
        ],
    )
    def test_print_parse_round_trip(self, src):
        p = parse_presentation(src)[0]
        again = parse_presentation(presentation_to_dsl(p))[0]
        assert again.generators == p.generators
        assert again.relators == p.relators

    @given(
        st.lists(
            st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=10),
            min_size=1,
            max_size=6,
        )
    )
    def test_round_trip_random_relators(self, rels):
        words = tuple(Word(r) for r in rels)
        words = tuple(w if w else Word((1,)) for w in words)
        p = Presentation("R", ("a", "b", "c"), words)
        again = parse_presentation(presentation_to_dsl(p))[0]
        assert again.relators == p.relators


class TestCayleyPresentation:
    def test_c2(self, store):
        cp = cayley_presentation(store.engine("C2"))
        assert len(cp.generators) == 1
        assert cp.relators == (Word((1, 1)),)

    def test_c3(self, store):
        cp = cayley_presentation(store.engine("C3"))
        assert len(cp.generators) == 2
        # a * a = a^2 appears as the relator x1*x1*(x2)^-1
        assert Word((1, 1, -2)) in cp.relators

    def test_s3_relator_count(self, store):
        # oracle: one relator per ordered pair of the 5 non-identity elements
        e = store.engine("S3")
        expected = sum(1 for g in range(1, 6) for h in range(1, 6))
        cp = cayley_presentation(e)
        assert len(cp.generators) == 5
        assert len(cp.relators) == expected == 25

    def test_cap(self, store):
        with pytest.raises(ValueError, match="cap"):
            cayley_presentation(store.engine("S3"), max_gens=4)

    @pytest.mark.parametrize("name", ["C2", "C3", "C6", "S3", "D4", "Q8", "A4"])
    def test_round_trip_through_enumeration(self, store, name):
        # enumerating the multiplication-table presentation recovers the
        # group: same order, same fingerprint
        from nugroup.coset import enumerate_presentation, to_regular_engine
        from nugroup.engine import fingerprint

        e = store.engine(name)
        cp = cayley_presentation(e)
        table = enumerate_presentation(cp)
        assert table.num_cosets == e.num_points
        assert fingerprint(to_regular_engine(table, cp)) == fingerprint(e)

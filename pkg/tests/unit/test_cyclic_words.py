"""Unit tests for free-group words, cyclic normal forms and class quotients."""

import pytest
from hypothesis import given
from hypothesis import strategies as st

from core.cyclic_words import (
    ClassRelation,
    ClassTilde,
    ClassUnder,
    CyclicWord,
    classes_equal_tilde,
    classes_equal_under,
    cyclically_reduce,
    enumerate_classes,
    enumerate_reduced_words,
    exponent_sums,
    format_word,
    free_reduce,
    iota,
    is_reversible,
    parse_class,
    parse_word,
    power,
    primitive_root,
)
from core.errors import RankMismatchError, WordParseError

words = st.lists(st.integers(min_value=0, max_value=3), max_size=12)


class TestCanonicalForm:
    """Cyclic reduction and least rotation."""

    def test_free_reduction(self):
        """a b B a reduces to the class of a a."""
        assert cyclically_reduce([0, 2, 3, 0]) == parse_class("a a")

    def test_cyclic_conjugation(self):
        """B a b is conjugate to a."""
        assert cyclically_reduce([3, 0, 2]) == parse_class("a")

    def test_empty_word_is_trivial(self):
        """The empty word is the trivial class."""
        w = cyclically_reduce([])
        assert w.is_trivial
        assert str(w) == "1"

    def test_least_rotation_uses_letter_order(self):
        """a < A < b < B, so b a is rotated to a b."""
        assert parse_class("b a").letters == (0, 2)
        assert str(parse_class("B A b a")) == "a B A b"

    @given(words)
    def test_canonical_form_idempotent(self, codes):
        """Reducing a canonical word again changes nothing."""
        w = cyclically_reduce(codes)
        assert cyclically_reduce(w.letters) == w

    @given(words, st.integers(min_value=0, max_value=11))
    def test_rotation_invariance(self, codes, shift):
        """Every rotation of a cyclically reduced word has the same class."""
        w = cyclically_reduce(codes)
        if w.is_trivial:
            return
        k = shift % len(w)
        assert cyclically_reduce(w.letters[k:] + w.letters[:k]) == w


class TestIota:
    """Orientation reversal."""

    def test_iota_of_ab(self):
        """iota(a b) is the class of B A."""
        assert iota(parse_class("a b")) == parse_class("B A")

    def test_iota_of_trivial(self):
        assert iota(CyclicWord.trivial()).is_trivial

    @given(words)
    def test_iota_is_involution(self, codes):
        w = cyclically_reduce(codes)
        assert iota(iota(w)) == w


class TestPower:
    def test_power_of_generator(self):
        assert power(parse_class("a"), 3) == parse_class("a a a")

    def test_power_of_product(self):
        assert power(parse_class("a b"), 2) == parse_class("a b a b")

    def test_power_of_trivial(self):
        assert power(CyclicWord.trivial(), 5).is_trivial

    def test_negative_power_rejected(self):
        with pytest.raises(WordParseError):
            power(parse_class("a"), -1)

    @given(words, st.integers(min_value=1, max_value=4))
    def test_power_matches_reduction_of_repeated_word(self, codes, m):
        """The canonical rotation of w^m is (canonical w)^m."""
        w = cyclically_reduce(codes)
        assert power(w, m) == cyclically_reduce(w.letters * m)


class TestReversibility:
    def test_trivial_class_is_reversible(self):
        assert is_reversible(CyclicWord.trivial())

    def test_generator_is_not_reversible(self):
        assert not is_reversible(parse_class("a"))

    def test_commutator_is_not_reversible(self):
        assert not is_reversible(parse_class("a b A B"))

    def test_no_nontrivial_rank_two_word_is_reversible(self):
        """Exhaustive over classes of length <= 6."""
        assert not any(is_reversible(w) for w in enumerate_classes(2, 6, include_trivial=False))


class TestClassComparison:
    def test_ab_against_its_inverse(self):
        v, w = parse_class("a b"), parse_class("B A")
        assert classes_equal_tilde(v, w)
        assert classes_equal_under(v, w) is ClassRelation.NEGATED

    def test_equal_classes(self):
        v = parse_class("a")
        assert classes_equal_tilde(v, v)
        assert classes_equal_under(v, v) is ClassRelation.EQUAL

    def test_distinct_classes(self):
        v, w = parse_class("a"), parse_class("b")
        assert not classes_equal_tilde(v, w)
        assert classes_equal_under(v, w) is ClassRelation.DISTINCT

    def test_mixed_ranks_rejected(self):
        with pytest.raises(RankMismatchError):
            classes_equal_tilde(parse_class("a", 2), parse_class("a", 3))

    def test_class_tilde_picks_smaller_representative(self):
        assert ClassTilde.of(parse_class("A")).representative == parse_class("a")
        assert ClassTilde.of(parse_class("A B")) == ClassTilde.of(parse_class("a b"))

    def test_class_under_folds_sign(self):
        """a B A b is iota of a b A B, so it is minus that class."""
        normal = ClassUnder.of(parse_class("a B A b"))
        assert normal == ClassUnder(parse_class("a b A B"), -1)
        assert ClassUnder.of(parse_class("a b A B")).sign == 1

    def test_class_under_of_trivial_is_zero(self):
        assert ClassUnder.of(CyclicWord.trivial()) is None


class TestExponentSums:
    def test_commutator(self):
        assert exponent_sums(parse_class("a b A B")) == (0, 0)

    def test_aab(self):
        assert exponent_sums(parse_class("a a b")) == (2, 1)

    def test_empty(self):
        assert exponent_sums(CyclicWord.trivial()) == (0, 0)


class TestPrimitiveRoot:
    def test_proper_power(self):
        root, m = primitive_root(parse_class("a b a b a b"))
        assert root == parse_class("a b")
        assert m == 3

    def test_primitive_word(self):
        w = parse_class("a a b")
        assert primitive_root(w) == (w, 1)


class TestParsing:
    """Word grammar used by the CLI."""

    def test_letters_and_powers(self):
        assert parse_word("a^3 b^-1") == (0, 0, 0, 3)

    def test_compact_token(self):
        assert parse_word("abAB") == parse_word("a b A B")

    def test_one_is_trivial(self):
        assert parse_word("1") == ()
        assert parse_word("") == ()

    def test_parse_reduces(self):
        assert parse_word("a A b") == (2,)

    def test_letter_outside_rank(self):
        with pytest.raises(RankMismatchError, match="'c'"):
            parse_word("a c")

    def test_malformed_token_named(self):
        with pytest.raises(WordParseError, match="a\\^x"):
            parse_word("a^x")

    def test_non_letter_rejected(self):
        with pytest.raises(WordParseError):
            parse_word("a 2")

    def test_format_round_trip_of_group_word(self):
        assert format_word(parse_word("a B a")) == "a B a"


class TestEnumeration:
    def test_reduced_word_counts(self):
        """1 + 4 + 12 + 36 reduced words of length <= 3 at rank 2."""
        assert len(enumerate_reduced_words(2, 3)) == 53

    def test_reduced_words_in_shortlex_order(self):
        ball = enumerate_reduced_words(2, 2)
        assert ball[0] == ()
        assert [len(g) for g in ball] == sorted(len(g) for g in ball)
        assert all(g == free_reduce(g) for g in ball)

    def test_classes_listed_once(self):
        classes = enumerate_classes(2, 4)
        assert len(classes) == len(set(classes))
        assert classes[0].is_trivial

    def test_classes_of_length_one(self):
        assert [str(w) for w in enumerate_classes(2, 1, include_trivial=False)] == [
            "a", "A", "b", "B",
        ]

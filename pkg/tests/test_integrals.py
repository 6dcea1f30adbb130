import math
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from radix.catalog import general_transformation, unit_interval_transformation
from radix.integrals import (
    DivergenceError,
    IntegralWord,
    Letter,
    UsageError,
    WordCombination,
    eval_word,
    expand_word,
    partial_fraction_letters,
    resum_metadata,
    shuffle,
    sign_constant,
    transform_word,
)
from radix.numbers import as_number, sqrt
from radix.parser import parse_rational_function, parse_word
from radix.poly import Polynomial
from radix.radicands import RadicandCase, classify, normalize
from radix.ratfunc import RationalFunction

X = Polynomial.gen("x")
CYCLOTOMIC_WORD = "H[0,{-1,0},{-1,0},{0,1}; base=1]"


def word(*letters, base=0):
    return IntegralWord(tuple(letters), base)


def rf(src):
    return parse_rational_function(src, "t")


# letters ------------------------------------------------------------------


def test_sign_constants():
    assert sign_constant(as_number(2), 0) == -1
    assert sign_constant(as_number(-1), 0) == 1
    assert sign_constant(as_number(0), 0) == 1  # the infinitesimal decides at a = 0
    assert sign_constant(as_number(2), 1) == -1
    assert sign_constant(as_number(1), 1) == -1  # sgn(1 - a - 0)
    assert sign_constant(as_number(-3), 1) == 1


def test_letter_constraints():
    with pytest.raises(UsageError):
        Letter.sqrt_set([as_number(1)])
    with pytest.raises(UsageError):
        Letter.rat_sqrt(as_number(1), [as_number(1), as_number(2)])
    with pytest.raises(UsageError):
        Letter.power_sqrt([as_number(1), as_number(2)], 1)
    assert Letter.power_sqrt([as_number(1), as_number(2), as_number(3)], 1).j == 1


def test_letter_printing():
    assert Letter.rat(Fraction(1, 4)).to_str() == "(1/4)"
    assert Letter.sqrt_set([as_number(4), as_number(0)]).to_str() == "{0,4}"


# shuffle ------------------------------------------------------------------


A, B, C, D = (Letter.rat(v) for v in (-1, 2, -3, 3))


def test_shuffle_examples():
    assert shuffle(word(A), word(B)) == WordCombination.of(word(A, B)) + WordCombination.of(word(B, A))
    want = WordCombination()
    for w in (word(A, B, C), word(B, A, C), word(B, C, A)):
        want = want + WordCombination.of(w)
    assert shuffle(word(A), word(B, C)) == want
    assert len(shuffle(word(A, B), word(C, D))) == 6


def test_shuffle_base_mismatch():
    with pytest.raises(UsageError):
        shuffle(word(A), word(B, base=1))


def test_shuffle_rejects_double_poles():
    sq = Letter.generic(rf("1/t^2"))
    with pytest.raises(UsageError):
        shuffle(word(sq), word(A))


ALPHABET = [Letter.rat(v) for v in (-1, 2)] + [Letter.sqrt_set([as_number(-1), as_number(2)])]


def words_upto(n):
    for k in range(n + 1):
        for ls in product(ALPHABET, repeat=k):
            yield word(*ls)


def test_shuffle_term_counts_exhaustive():
    # term count with multiplicity equals the binomial coefficient
    ws = list(words_upto(3))
    for u in ws:
        for v in ws:
            if len(u) + len(v) > 6:
                continue
            total = sum(c for c in shuffle(u, v).terms.values())
            assert total == math.comb(len(u) + len(v), len(u))


@settings(max_examples=40, deadline=None)
@given(st.lists(st.sampled_from(ALPHABET), max_size=2),
       st.lists(st.sampled_from(ALPHABET), max_size=2),
       st.lists(st.sampled_from(ALPHABET), max_size=2))
def test_shuffle_commutative_associative(a, b, c):
    u, v, w = word(*a), word(*b), word(*c)
    assert shuffle(u, v) == shuffle(v, u)

    # shuffle multiplies prefactors, so word multiplicities carry through
    left = WordCombination()
    for x in shuffle(u, v).words():
        left = left + shuffle(x, w)
    right = WordCombination()
    for y in shuffle(v, w).words():
        right = right + shuffle(u, y)
    assert left == right


@pytest.mark.parametrize("x", [0.25, 0.5, 0.75])
def test_numeric_shuffle(x):
    u = word(Letter.rat(-1), Letter.sqrt_set([as_number(-1), as_number(2)]))
    v = word(Letter.rat(2))
    lhs = eval_word(u, x) * eval_word(v, x)
    assert abs(lhs - shuffle(u, v).evaluate(x)) < 1e-8


# evaluation ------------------------------------------------------------------


def test_eval_examples():
    assert abs(eval_word(parse_word("H[{0,4}; base=0]"), 1.0) - math.pi / 3) < 1e-10
    assert abs(eval_word(word(Letter.rat(-1)), 0.5) - math.log(1.5)) < 1e-10
    with pytest.raises(DivergenceError):
        eval_word(word(Letter.rat(0)), 0.5)


def test_eval_depth_two_against_closed_form():
    # H[1,1](x) = log(1-x)^2 / 2
    x = 0.6
    assert abs(eval_word(word(Letter.rat(1), Letter.rat(1)), x) - math.log(1 - x) ** 2 / 2) < 1e-10


def test_eval_base_one():
    # base 1, letter 0: integral from x to 1 of dt/t = -log x
    x = 0.3
    assert abs(eval_word(word(Letter.rat(0), base=1), x) - (-math.log(x))) < 1e-10


def test_eval_empty_word_is_prefactor():
    assert eval_word(IntegralWord((), 0, 3), 0.4) == 3


def test_pole_in_range_diverges():
    with pytest.raises(DivergenceError):
        eval_word(word(Letter.rat(Fraction(1, 2))), 0.75)


# change of variables -------------------------------------------------------------


def test_transform_single_pole_with_square():
    t = general_transformation(RadicandCase("OneLinear", (as_number(0),)))
    w = word(Letter.generic(rf("1/(t-3)")))
    tw = transform_word(w, t)
    got = tw.letters[0].rf * tw.prefactor
    assert got == parse_rational_function("2*t/(t^2-3)", "t")


def test_transform_empty_word():
    t = general_transformation(RadicandCase("OneLinear", (as_number(0),)))
    w = IntegralWord((), 0, 5)
    assert transform_word(w, t) == w


def test_cyclotomic_transformation_exact():
    w = parse_word(CYCLOTOMIC_WORD)
    R = normalize([X * (1 + X), X * (1 - X)])
    t = unit_interval_transformation(classify(R), "real01", list(R.reduced))
    tw = transform_word(w, t)
    assert tw.prefactor == 32 * sqrt(2)
    want = ["1/t - 2*t^3/(t^4+1)", "(1-t^2)/(t^4+1)", "(1-t^2)/(t^4+1)", "(1+t^2)/(t^4+1)"]
    assert [l.rf for l in tw.letters] == [rf(s) for s in want]


@pytest.mark.parametrize("x", [0.3, 0.7])
def test_cyclotomic_transformation_numeric(x):
    w = parse_word(CYCLOTOMIC_WORD)
    R = normalize([X * (1 + X), X * (1 - X)])
    t = unit_interval_transformation(classify(R), "real01", list(R.reduced))
    tw = transform_word(w, t)
    y = complex(t.inverse.evaluate(x, 80)).real
    assert abs(eval_word(w, x) - eval_word(tw, y)) < 1e-8


def test_unrationalized_letter_is_named():
    t = general_transformation(RadicandCase("OneLinear", (as_number(0),)))
    with pytest.raises(UsageError) as err:
        transform_word(parse_word("H[{0,4}; base=0]"), t)
    assert "4" in str(err.value)


# partial fractions ------------------------------------------------------------


def test_partial_fractions_examples():
    w = partial_fraction_letters(word(Letter.generic(rf("1/(t-3)"))))
    assert w.letters == (Letter.rat(3),)
    assert w.prefactor == -1  # the letter carries c_3 = -1
    assert abs(eval_word(w, 0.5) - math.log(2.5 / 3)) < 1e-10


def test_partial_fractions_split_and_remainder():
    l = partial_fraction_letters(word(Letter.generic(rf("2*t/(t^2-4)")))).letters[0]
    assert {(item[1], item[2]) for item in l.meta} == {(as_number(2), as_number(1)), (as_number(-2), as_number(1))}
    assert resum_metadata(l) == l.rf
    first = rf("1/t - 2*t^3/(t^4+1)")
    l = partial_fraction_letters(word(Letter.generic(first))).letters[0]
    kinds = [m[0] for m in l.meta]
    assert kinds == ["pole", "remainder"] and l.meta[0][1] == 0
    assert l.meta[1][1] == rf("-2*t^3/(t^4+1)")
    assert resum_metadata(l) == first
    cyc = partial_fraction_letters(word(Letter.generic(rf("(1-t^2)/(t^4+1)")))).letters[0]
    assert [m[0] for m in cyc.meta] == ["remainder"]


def test_expand_word_preserves_value():
    w = partial_fraction_letters(word(Letter.generic(rf("2*t/(t^2-4)")), Letter.rat(-1)))
    comb = expand_word(w)
    assert len(comb) == 2
    assert abs(comb.evaluate(0.5) - eval_word(w, 0.5)) < 1e-10

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from radix.integrals import IntegralWord, Letter
from radix.numbers import I, as_number, sqrt
from radix.parser import (
    ParseError,
    parse_number,
    parse_radicands,
    parse_rational_function,
    parse_sum,
    parse_word,
    parse_words,
)
from radix.poly import Polynomial
from radix.ratfunc import RationalFunction
from radix.sums import SumExpr, Weight

X = Polynomial.gen("x")
T = Polynomial.gen("t")


# examples ------------------------------------------------------------------------


def test_rational_function_examples():
    assert parse_rational_function("x^2+1") == RationalFunction(X * X + 1)
    f = parse_rational_function("1/(x-1/3)")
    assert f == RationalFunction(Polynomial.const(1), X - Fraction(1, 3))
    assert f.den.lc() == 1
    assert f == parse_rational_function("3/(3*x-1)")


def test_precedence():
    assert parse_number("-2^2") == -4
    assert parse_number("2^-1") == Fraction(1, 2)
    assert parse_number("2^3^2") == 2**9
    assert parse_number("1-2-3") == -4
    assert parse_number("12/3/2") == 2
    assert parse_number("sqrt(8)") == 2 * sqrt(2)
    assert parse_number("i^2") == -1


def test_bindings_and_constants():
    assert parse_rational_function("a*x", bindings={"a": 3}) == RationalFunction(X.scale(3))
    assert parse_rational_function("sqrt(2)*x") == RationalFunction(X.scale(sqrt(2)))
    assert parse_rational_function("x - i") == RationalFunction(X - I)


def test_radicand_list():
    polys = parse_radicands(["x*(1+x)", "x*(1-x)"])
    assert polys == [X * (1 + X), X * (1 - X)]


def test_word_examples():
    w = parse_word("H[0,{0,4},{0,4}; base=0]")
    assert len(w) == 3 and w.base == 0
    assert w.letters[1] == Letter.sqrt_set([as_number(0), as_number(4)])
    assert parse_word("H[; base=0]") == IntegralWord((), 0)
    assert parse_word("H[1 | base=1]").base == 1
    w = parse_word("H[(2,{0,4}),({-1,0,1},1),R(1/(t^2+1)); base=0]")
    assert [l.kind for l in w.letters] == ["ratsqrt", "powsqrt", "generic"]


def test_word_combination():
    comb = parse_words("H[0; base=0] - (1/2)*H[{0,4}; base=0]")
    assert len(comb) == 2
    assert comb.to_str() == "H[0; base=0] - (1/2)*H[{0,4}; base=0]"


def test_sum_example():
    s = parse_sum("sum(x^n * inv(n^2*binom(2n,n)) * S(inv(i)))")
    assert s.layers == (Weight(p=-2, b=-1), Weight(p=-1))
    assert s.to_str() == "sum(x^n * inv(n^2*binom(2n,n)) * S(inv(i)))"


# errors --------------------------------------------------------------------------


@pytest.mark.parametrize("src, col", [
    ("x^2 + 1.5", 7),
    ("2x", 2),
    ("x +* 1", 4),
    ("(x + 1", 7),
    ("sqrt(x)", 1),
])
def test_errors_carry_position(src, col):
    with pytest.raises(ParseError) as err:
        parse_rational_function(src)
    assert err.value.line == 1
    assert err.value.column == col, str(err.value)


def test_error_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_rational_function("x +\n  1 +\n  y")
    assert (err.value.line, err.value.column) == (3, 3)


def test_zero_denominator():
    with pytest.raises(ParseError):
        parse_rational_function("1/(x-x)")


@pytest.mark.parametrize("src", [
    "H[0; base=2]",
    "H[{1}; base=0]",
    "H[0 base=0]",
    "H[(1,{1,2}); base=0]",
    "H[0; base=0",
])
def test_word_errors(src):
    with pytest.raises(ParseError):
        parse_word(src)


@pytest.mark.parametrize("src", [
    "sum(n^x)",
    "sum(x^n * inv(S(inv(i))))",
    "sum(x^n * S(1) * S(1))",
    "sum(x^n * binom(2n,i))",
    "sum(x^n * inv(delta(1,n)))",
    "sum(x^n * 0^n)",
])
def test_sum_errors(src):
    with pytest.raises(ParseError):
        parse_sum(src)


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="x0123456789+-*/^()[]{},;|=Hbase ", max_size=24))
def test_garbage_never_crashes(src):
    for fn in (parse_rational_function, parse_word, parse_sum):
        try:
            fn(src)
        except ParseError as exc:
            assert exc.line >= 1 and exc.column >= 1


# round-trip corpus ---------------------------------------------------------------


def _num(rng):
    v = Fraction(rng.randint(-9, 9), rng.choice([1, 1, 2, 3, 5]))
    return as_number(v)


def random_word(rng):
    letters = []
    for _ in range(rng.randint(0, 4)):
        kind = rng.choice(["rat", "sqrt", "ratsqrt", "powsqrt", "generic"])
        roots = list({_num(rng) for _ in range(rng.randint(2, 4))})
        if kind == "rat":
            letters.append(Letter.rat(_num(rng)))
        elif kind == "sqrt" and len(roots) >= 2:
            letters.append(Letter.sqrt_set(roots))
        elif kind == "ratsqrt":
            a = _num(rng)
            rs = [r for r in roots if r != a] or [a + 1]
            letters.append(Letter.rat_sqrt(a, rs))
        elif kind == "powsqrt" and len(roots) >= 3:
            letters.append(Letter.power_sqrt(roots, rng.randint(1, len(roots) - 2)))
        else:
            num = Polynomial([_num(rng) for _ in range(rng.randint(1, 3))], "t")
            den = Polynomial([_num(rng) for _ in range(rng.randint(1, 3))] + [as_number(1)], "t")
            if not num.is_zero():
                letters.append(Letter.generic(RationalFunction(num, den)))
    pref = 1 if rng.random() < 0.5 else rng.choice([_num(rng) or 1, sqrt(2) * 3, 1 + sqrt(3)])
    if as_number(pref).is_zero():
        pref = 1
    return IntegralWord(tuple(letters), rng.randint(0, 1), pref)


def random_sum(rng):
    layers = []
    for _ in range(rng.randint(1, 4)):
        c = rng.choice([1, 1, 1, 2, -1, Fraction(1, 2), Fraction(-3, 4)])
        layers.append(Weight(c=c, p=rng.randint(-3, 2), b=rng.randint(-2, 1), q=rng.randint(-1, 1),
                             delta=rng.random() < 0.1))
    return SumExpr(tuple(layers))


def random_rf(rng):
    coeff = lambda: _num(rng) * (sqrt(2) if rng.random() < 0.2 else 1)
    num = Polynomial([coeff() for _ in range(rng.randint(1, 4))], "x")
    den = Polynomial([coeff() for _ in range(rng.randint(0, 3))] + [as_number(1)], "x")
    if num.is_zero():
        num = Polynomial.const(1, "x")
    return RationalFunction(num, den)


def corpus(size=200, seed=17):
    rng = random.Random(seed)
    makers = [("word", random_word, parse_word, lambda w: w.to_str()),
              ("sum", random_sum, parse_sum, lambda s: s.to_str()),
              ("rf", random_rf, parse_rational_function, repr)]
    out = []
    for k in range(size):
        out.append(makers[k % 3])
        out[-1] = out[-1] + (out[-1][1](rng),)
    return out


def test_round_trip_corpus():
    items = corpus()
    assert len(items) == 200
    for kind, _make, parse, show, obj in items:
        text = show(obj)
        back = parse(text)
        assert back == obj, (kind, text)  # parse after print
        assert show(back) == text, (kind, text)  # print after parse

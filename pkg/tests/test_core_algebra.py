from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from radix.numbers import AlgebraicNumber, ComplexNumber, I, as_number, sqrt
from radix.poly import DomainError, Polynomial
from radix.puiseux import PuiseuxSeries
from radix.ratfunc import RationalFunction, compose, is_square, squarefree_part

X = Polynomial.gen("x")
Y = Polynomial.gen("y")

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_ints = st.integers(min_value=-6, max_value=6)


@st.composite
def tower_numbers(draw):
    """Elements of Q(sqrt 2, sqrt 3, sqrt(1 + sqrt 2))."""
    gens = [AlgebraicNumber(1), sqrt(2), sqrt(3), sqrt(1 + sqrt(2))]
    k = draw(st.integers(min_value=1, max_value=3))
    out = AlgebraicNumber(0)
    for g in draw(st.lists(st.sampled_from(gens), min_size=k, max_size=k)):
        out = out + g * draw(fractions)
    return out


@st.composite
def polys(draw, max_degree=8, var="x"):
    cs = draw(st.lists(small_ints, min_size=1, max_size=max_degree + 1))
    return Polynomial([as_number(c) for c in cs], var)


# numbers -----------------------------------------------------------------------


@settings(max_examples=60, deadline=None)
@given(tower_numbers(), tower_numbers(), tower_numbers())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    if not a.is_zero():
        assert a * (1 / a) == 1


@settings(max_examples=60, deadline=None)
@given(tower_numbers())
def test_sqrt_squares_back(a):
    assert sqrt(a) * sqrt(a) == a


def test_canonical_sqrt_branches():
    assert sqrt(4) == 2
    assert sqrt(-4) == 2 * I
    assert float(sqrt(2)) > 0
    r = sqrt(ComplexNumber(0, 2))
    assert r == 1 + I
    assert sqrt(8) == 2 * sqrt(2)


def test_nested_tower_equalities():
    s = sqrt(3 + 2 * sqrt(2))
    assert s == 1 + sqrt(2)
    assert (sqrt(2) * sqrt(3)) ** 2 == 6
    assert sqrt(6) == sqrt(2) * sqrt(3)


def test_sign_in_tower():
    assert (sqrt(2) - Fraction(141, 100)).sign() > 0
    assert (sqrt(2) - Fraction(142, 100)).sign() < 0
    assert (sqrt(1 + sqrt(2)) - sqrt(2)).sign() > 0


# polynomials ---------------------------------------------------------------------


@pytest.mark.parametrize(
    "p, s, q",
    [
        (X * X, Polynomial.const(1), X),
        ((X - 1) ** 2 * (X - 2), X - 2, X - 1),
        (X ** 3 - X, X ** 3 - X, Polynomial.const(1)),
    ],
)
def test_squarefree_part_examples(p, s, q):
    got_s, got_q = squarefree_part(p)
    assert got_s == s
    assert got_q.monic() == q


def test_squarefree_part_of_zero():
    with pytest.raises(DomainError):
        squarefree_part(Polynomial())


@settings(max_examples=200, deadline=None)
@given(polys())
def test_squarefree_round_trip(p):
    if p.is_zero():
        return
    s, q = squarefree_part(p)
    assert s.is_squarefree() or s.degree == 0
    c = p.lc() / (s * q * q).lc()
    assert (s * q * q).scale(c) == p


@pytest.mark.parametrize("lo, hi, count", [(0, 1, 0), (1, 2, 1), (-2, 2, 2)])
def test_sturm_counts(lo, hi, count):
    assert (X * X - 2).sturm_root_count(lo, hi) == count


def test_sturm_endpoint_root_signalled():
    with pytest.raises(DomainError):
        (X - 1).sturm_root_count(0, 1)


def test_sturm_on_derivative_of_removable_case():
    g = RationalFunction(Y * Y, (Y * Y).scale(2) - Y.scale(2) + 1)
    d = g.derivative().num
    # numerator 2y(1-y): no roots strictly inside (0,1) once boundary factors are removed
    core = d.exact_div(Y * (Y - 1))
    assert core.degree == 0 or core.sturm_root_count(0, 1) == 0


@settings(max_examples=40, deadline=None)
@given(polys(4), polys(4))
def test_gcd_divides_both(p, q):
    if p.is_zero() or q.is_zero():
        return
    g = p.gcd(q)
    assert g.divides(p) and g.divides(q)


# rational functions ------------------------------------------------------------------


def test_canonical_form():
    f = RationalFunction(X * 2 - 2, (X - 1) * (X + 1) * 3)
    assert f.den.lc() == 1
    assert f == RationalFunction(Polynomial.const(Fraction(2, 3)), X + 1)


def test_compose_examples():
    f = RationalFunction(X * X)
    assert compose(f, RationalFunction(Y + 1)) == RationalFunction((Y + 1) ** 2)
    f2 = RationalFunction((X * (X + 1)).scale(-8))
    assert compose(f2, RationalFunction(Y.scale(Fraction(1, 2)))) == RationalFunction((Y * Y).scale(-2) - Y.scale(4))
    h = RationalFunction((X * X).scale(2), X ** 4 + 1)
    assert compose(h, RationalFunction(X)) == h


@st.composite
def rfs(draw, var):
    n = draw(polys(3, var))
    d = draw(polys(3, var))
    if d.is_zero():
        d = Polynomial.const(1, var)
    return RationalFunction(n, d)


@settings(max_examples=40, deadline=None)
@given(rfs("x"), rfs("x"), rfs("x"))
def test_compose_associative(f, g, h):
    try:
        left = compose(f, compose(g, h))
        right = compose(compose(f, g), h)
    except (DomainError, ZeroDivisionError):
        return
    assert left == right


def test_is_square_examples():
    c, h = is_square(RationalFunction((Y * Y).scale(4), Y * Y + Y.scale(2) + 1))
    assert c == 4 and h == RationalFunction(Y, Y + 1)
    assert is_square(RationalFunction(Y ** 3)) is None
    f = RationalFunction((Y * Y * (1 + Y * Y) ** 2).scale(2), (Y ** 4 + 1) ** 2)
    c, h = is_square(f)
    assert c == 2 and h == RationalFunction(Y * (1 + Y * Y), Y ** 4 + 1)


@settings(max_examples=60, deadline=None)
@given(rfs("y"), st.integers(min_value=1, max_value=9))
def test_is_square_of_scaled_square(h, c):
    if h.is_zero():
        return
    got = is_square(h * h * c)
    assert got is not None
    c2, h2 = got
    assert c2 * h2 * h2 == h * h * c


# series ------------------------------------------------------------------------------


def test_puiseux_sqrt_squared():
    s = PuiseuxSeries.from_polynomial(1 + X, 12)
    r = s.sqrt()
    d = r * r - s
    assert all(d.coefficient(k).is_zero() for k in range(12))


def test_puiseux_half_powers():
    s = PuiseuxSeries.from_polynomial(X, 10)
    r = s.sqrt()
    assert r.e == 2
    assert (r * r - s).truncate(8).is_zero()

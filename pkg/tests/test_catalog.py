import random
from fractions import Fraction

import pytest

from radix.catalog import (
    FAMILIES,
    IneligibleError,
    UsageError,
    compose_moebius,
    general_transformation,
    unit_interval_transformation,
)
from radix.numbers import I, as_number, sqrt
from radix.poly import DomainError, Polynomial
from radix.radicands import RadicandCase, classify, normalize
from radix.ratfunc import RationalFunction, compose
from radix.verifier import verify_inverse

from support import draw_transformation

X = Polynomial.gen("x")
Y = Polynomial.gen("y")


def n(v):
    return as_number(Fraction(v))


def case(tag, *params):
    return RadicandCase(tag, tuple(n(p) if not hasattr(p, "tower") and not hasattr(p, "re") else p for p in params))


# general ------------------------------------------------------------------------


def test_square_root_of_x():
    t = general_transformation(case("OneLinear", 0))
    assert t.g == RationalFunction(Y * Y)
    assert repr(t.inverse) == "sqrt(x)"


def test_one_linear_general():
    t = general_transformation(case("OneLinear", 2))
    assert t.g == RationalFunction((Y * (Y + 1)).scale(-8))


def test_two_linear_with_zero():
    t = general_transformation(case("TwoLinear", 1, 0))
    assert t.g == RationalFunction((Y * Y).scale(4), (Y * Y + 1) ** 2)


def test_three_quadratic_with_zero():
    t = general_transformation(case("ThreeQuadratic", -1, 1, 0))
    assert t.g == RationalFunction((Y * Y).scale(-4), (Y**4).scale(4) + 1)


def test_quadratic_instance_matches_parser_form():
    from radix.parser import parse_rational_function

    t = general_transformation(case("OneQuadratic", 1, 3))
    want = parse_rational_function("4*c0*y/((c1^2-4*c0)*y^2-2*c1*y+1)", "y", {"c0": 1, "c1": 3})
    assert t.g == want


def test_general_g_fixes_zero():
    for c in [case("OneLinear", 3), case("OneQuadratic", 2, 1), case("TwoLinear", -1, 2), case("ThreeQuadratic", -1, 2, 3)]:
        assert general_transformation(c).g(0).is_zero()


def test_empty_case_is_a_usage_error():
    with pytest.raises(UsageError):
        general_transformation(RadicandCase("Empty"))


# [0,1] real ------------------------------------------------------------------------


def test_cyclotomic_transformation():
    R = normalize([X * (1 + X), X * (1 - X)])
    t = unit_interval_transformation(classify(R), "real01", list(R.reduced))
    assert t.g == RationalFunction((Y * Y).scale(2), Y**4 + 1)
    s2 = sqrt(2)
    images = {img.label: img.image for img in t.images}
    assert RationalFunction((Y**3 + Y).scale(s2), Y**4 + 1) in images.values()
    assert RationalFunction((Y - Y**3).scale(s2), Y**4 + 1) in images.values()
    # both inverse forms agree in the quotient algebra and numerically with the closed form
    assert t.inverse.equals(t.inverse_alt)
    for xv in (0.2, 0.7):
        want = ((1 + xv) ** 0.5 - (1 - xv) ** 0.5) / (2 ** 0.5 * xv ** 0.5)
        assert abs(complex(t.inverse.evaluate(xv)) - want) < 1e-14


def test_removable_special_case():
    R = normalize([X * (1 - X)])
    t = unit_interval_transformation(classify(R), "real01", list(R.reduced))
    assert t.family == "zero_and_one_real"
    assert t.g == RationalFunction(Y * Y, (Y * Y).scale(2) - Y.scale(2) + 1)
    assert list(t.removable) == [n(Fraction(1, 2))]


def test_one_linear_real_alpha():
    t = unit_interval_transformation(case("OneLinear", -1), "real01")
    assert t.constant("alpha") == sqrt(2)
    s2 = sqrt(2)
    assert t.g == RationalFunction((Y * Y).scale(3 - 2 * s2) + Y.scale(2 * (s2 - 1)))
    assert t.g(1) == 1


def test_root_inside_interval_is_ineligible():
    with pytest.raises(IneligibleError) as err:
        unit_interval_transformation(case("OneLinear", Fraction(1, 2)), "real01")
    assert "(0,1)" in str(err.value)


# [0,1] complex -----------------------------------------------------------------------


def test_complex_two_linear():
    R = normalize([X - I])
    t = unit_interval_transformation(classify(R), "complex01", list(R.reduced))
    assert t.family == "conjugate_pair_complex"
    assert t.g(0).is_zero() and t.g(1) == 1
    a, b = t.images
    for img in t.images:
        assert img.image == img.re + img.im * I
    # (re + i im)(re - i im) is the rational square root of the product radicand
    prod = RationalFunction(a.radicand * b.radicand)
    modulus = a.re * a.re + a.im * a.im
    assert compose(prod, t.g) == modulus * modulus


def test_complex_variant_images_square():
    rng = random.Random(11)
    for fam in FAMILIES["complex01"]:
        t, R = draw_transformation(fam, "complex01", rng)
        for img in t.images:
            f = RationalFunction(img.radicand)
            assert compose(f, t.g) == img.image * img.image


# degree table and Moebius ------------------------------------------------------------


@pytest.mark.parametrize("variant", ["general", "real01", "complex01"])
def test_degree_table(variant):
    rng = random.Random(5)
    for fam in FAMILIES[variant]:
        t, _ = draw_transformation(fam, variant, rng)
        single = t.case.tag in ("OneLinear", "OneQuadratic")
        assert t.degree == (2 if single else 4), (fam, t.g)


def test_moebius_identity_and_inverse():
    t = unit_interval_transformation(case("TwoLinear", 2, 0), "real01")
    assert compose_moebius(t, 1).g == t.g
    lam = n(Fraction(3, 2))
    back = compose_moebius(compose_moebius(t, lam), 1 / lam)
    assert back.g == t.g and back.lam is None
    assert back.inverse.equals(t.inverse)


def test_moebius_on_square():
    t = unit_interval_transformation(case("OneLinear", 0), "real01")
    t2 = compose_moebius(t, 2)
    assert t2.g == RationalFunction(Y * Y, (2 - Y) ** 2)
    assert t2.g(1) == 1 and t2.degree == 2
    assert verify_inverse(t2)


def test_moebius_rejects_nonpositive():
    t = unit_interval_transformation(case("OneLinear", 0), "real01")
    with pytest.raises(DomainError):
        compose_moebius(t, 0)
    with pytest.raises(DomainError):
        compose_moebius(t, -1)


def test_moebius_needs_unit_interval_variant():
    with pytest.raises(UsageError):
        compose_moebius(general_transformation(case("OneLinear", 0)), 2)


def test_serializations():
    R = normalize([X * (1 + X), X * (1 - X)])
    t = unit_interval_transformation(classify(R), "real01", list(R.reduced))
    js = t.to_json()
    assert js["g_text"] == "2*y^2/(y^4 + 1)"
    assert js["variant"] == "real01"
    assert "\\frac" in t.to_latex()
    assert "x = g(y) = 2*y^2/(y^4 + 1)" in t.to_text()

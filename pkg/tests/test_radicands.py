import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from radix.numbers import I, as_number
from radix.poly import DomainError, Polynomial
from radix.radicands import (
    RadicandCase,
    check_unit_interval_admissibility,
    classify,
    normalize,
)
from radix.ratfunc import RationalFunction

X = Polynomial.gen("x")
ROOTS = (-2, -1, 0, 1, 2, 3)


def from_roots(rs):
    p = Polynomial.const(1)
    for r in rs:
        p = p * (X - r)
    return p


def test_normalize_strips_squares_and_constants():
    f = RationalFunction(((X - 1) ** 2 * (X - 2)).scale(4), X * X)
    R = normalize([f])
    assert R.reduced == (X - 2,)
    assert R.check_witnesses()


def test_normalize_divides_out():
    R = normalize([X - 1, (X - 1) * (X - 2)])
    assert set(map(repr, R.reduced)) == {repr(X - 1), repr(X - 2)}
    assert R.check_witnesses()


def test_normalize_all_squares():
    assert normalize([X * X]).reduced == ()
    assert classify(normalize([X * X])).tag == "Empty"


def test_normalize_rejects_zero():
    with pytest.raises(DomainError):
        normalize([Polynomial()])


def test_classify_examples():
    assert classify(normalize([X * (X - 1) * (X - 2)])).tag == "NoTransformation"
    c = classify(normalize([X * (1 + X), X * (1 - X)]))
    assert c.tag == "ThreeQuadratic" and c.params == (as_number(-1), as_number(1), as_number(0))
    c = classify(normalize([X * X + X + 1]))
    assert c.tag == "OneQuadratic" and c.params == (as_number(1), as_number(1))


def test_admissibility_examples():
    c = classify(normalize([X - Fraction(1, 2)]))
    assert not check_unit_interval_admissibility(c, normalize([X - Fraction(1, 2)])).real
    R = normalize([X * X - X + 1])
    e = check_unit_interval_admissibility(classify(R), R)
    assert e.real
    R = normalize([X - I])
    e = check_unit_interval_admissibility(classify(R), R)
    assert e.complex and e.complex_case.tag == "TwoLinear"
    assert set(e.complex_case.params) == {I, -I}


def test_conjugate_pair_from_quadratic_is_real_eligible():
    # x^2 + 1 is positive on [0,1]; the real formulas already apply
    R = normalize([X * X + 1])
    e = check_unit_interval_admissibility(classify(R), R)
    assert e.real and e.complex


@st.composite
def radicand_lists(draw):
    k = draw(st.integers(min_value=1, max_value=3))
    out = []
    for _ in range(k):
        rs = draw(st.lists(st.sampled_from(ROOTS), min_size=1, max_size=3))
        out.append(from_roots(rs))
    return out


@settings(max_examples=60, deadline=None)
@given(radicand_lists(), st.randoms(use_true_random=False))
def test_classify_invariant_under_squares_and_order(F, rng):
    base = classify(normalize(F))
    G = [p * (X + rng.randint(-3, 3)) ** 2 * rng.randint(1, 5) for p in F]
    rng.shuffle(G)
    assert repr(classify(normalize(G))) == repr(base)


@settings(max_examples=60, deadline=None)
@given(radicand_lists())
def test_normalize_idempotent(F):
    R = normalize(F)
    assert R.check_witnesses()
    again = normalize(list(R.reduced))
    assert set(map(repr, again.reduced)) == set(map(repr, R.reduced))
    for p in R.reduced:
        assert p.is_squarefree() and p.lc() == 1 and p.degree >= 1
        assert not any(p != q and p.divides(q) for q in R.reduced)


# exhaustive oracle over root subsets -------------------------------------------------


def brute_force(sets):
    """F2-span of root sets; returns (obstructed, span elements)."""
    vecs = [frozenset(s) for s in sets]
    span = set()
    for k in range(1, len(vecs) + 1):
        for combo in itertools.combinations(vecs, k):
            acc = frozenset()
            for v in combo:
                acc = acc ^ v
            if acc:
                span.add(acc)
    return any(len(v) >= 3 for v in span), span


def expected_tag(span):
    if not span:
        return "Empty", set()
    roots = set().union(*span)
    # dimension from the span size: 1 element -> dim 1, 3 elements -> dim 2
    if len(span) == 1:
        (v,) = span
        return ("OneLinear" if len(v) == 1 else "OneQuadratic"), roots
    if any(len(v) == 1 for v in span):
        return "TwoLinear", roots
    return "ThreeQuadratic", roots


def _all_inputs():
    subsets = [s for k in range(1, 7) for s in itertools.combinations(ROOTS, k)]
    small = [s for s in subsets if len(s) <= 2]
    for s in subsets:
        yield (s,)
    for a, b in itertools.combinations(subsets, 2):
        yield (a, b)
    for trio in itertools.combinations(small, 3):
        yield trio


def oracle_agreement():
    total = agree = 0
    mismatches = []
    for sets in _all_inputs():
        total += 1
        obstructed, span = brute_force(sets)
        case = classify(normalize([from_roots(s) for s in sets]))
        if obstructed:
            ok = case.tag == "NoTransformation"
            if ok:
                w = case.witness
                ok = w.is_squarefree() and w.degree >= 3
        else:
            tag, roots = expected_tag(span)
            ok = case.tag == tag
            if ok and tag == "OneQuadratic":
                (v,) = span
                ok = from_roots(v) == X * X + X.scale(case.params[1]) + case.params[0]
            elif ok and tag in ("OneLinear", "TwoLinear", "ThreeQuadratic"):
                ok = {int(p.rational()) for p in case.params} == roots
        agree += ok
        if not ok:
            mismatches.append((sets, case))
    return total, agree, mismatches


def test_exhaustive_oracle_agreement():
    total, agree, mismatches = oracle_agreement()
    assert total > 3000
    assert agree == total, mismatches[:5]


def test_no_transformation_witness_is_product_of_reduced():
    rng = random.Random(3)
    for _ in range(30):
        k = rng.randint(1, 3)
        F = [from_roots(rng.sample(ROOTS, rng.randint(1, 4))) for _ in range(k)]
        R = normalize(F)
        c = classify(R)
        if c.tag != "NoTransformation":
            continue
        w = c.witness
        # w divides a product of reduced radicands and is itself squarefree of degree >= 3
        prod = Polynomial.const(1)
        for p in R.reduced:
            prod = prod * p
        assert w.is_squarefree() and w.degree >= 3 and w.divides(prod)


def test_case_constructors_hold_invariants():
    c = RadicandCase("TwoLinear", (as_number(1), as_number(0)))
    assert c.has_zero_root
    assert "TwoLinear" in repr(c)

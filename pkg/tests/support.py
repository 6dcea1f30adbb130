"""Shared helpers: random admissible radicand sets per catalog family."""

import random
from fractions import Fraction

from radix.catalog import general_transformation, unit_interval_transformation
from radix.numbers import ComplexNumber, as_number
from radix.poly import Polynomial
from radix.radicands import classify, normalize

X = Polynomial.gen("x")


def q(v):
    return as_number(Fraction(v))


def _rat(rng, lo, hi, den=(1, 2, 3, 4, 5)):
    while True:
        d = rng.choice(den)
        v = Fraction(rng.randint(int(lo * d), int(hi * d)), d)
        if lo <= v <= hi and v != 0:
            return v


def _outside(rng):
    """Real root with a < 0 or a >= 1."""
    return _rat(rng, -5, -Fraction(1, 5)) if rng.random() < 0.5 else _rat(rng, 1, 5)


def _anywhere(rng):
    return _rat(rng, -5, 5)


def _complex(rng):
    return ComplexNumber(q(_rat(rng, -3, 3) if rng.random() < 0.8 else 0), q(_rat(rng, -3, 3)))


def _distinct(rng, draw, k, exclude=()):
    out = []
    while len(out) < k:
        v = draw(rng)
        if v not in out and v not in exclude:
            out.append(v)
    return out


def _lin(a):
    return X - as_number(a)


def _radicands(family, rng):
    """Radicand polynomials whose classification lands in ``family``."""
    base = family.removesuffix("_real").removesuffix("_complex")
    kind = "real" if family.endswith("_real") else "complex" if family.endswith("_complex") else "general"
    if kind == "complex":
        a = _complex(rng)
        if family == "conjugate_pair_complex":
            return [_lin(a)]
        if family == "conjugate_pair_with_zero_complex":
            return [X * _lin(a)]
        b = _outside(rng)
        return [_lin(b) * _lin(a)]
    draw = _outside if kind == "real" else _anywhere
    if family == "zero_and_one_real":
        return [X * _lin(1)]
    if base == "root_at_zero":
        return [X]
    if base == "one_root":
        return [_lin(draw(rng))]
    if base == "quadratic_with_zero":
        a = draw(rng)
        while kind == "real" and a == 1:
            a = draw(rng)
        return [X * _lin(a)]
    if base == "quadratic":
        while True:
            c0, c1 = q(_anywhere(rng)), q(_rat(rng, -5, 5) if rng.random() < 0.9 else 0)
            if c1 * c1 == 4 * c0:
                continue
            p = X * X + X.scale(c1) + c0
            if kind == "general":
                return [p]
            R = normalize([p])
            case = classify(R)
            try:
                unit_interval_transformation(case, "real01", list(R.reduced))
                return [p]
            except Exception:
                continue
    if base == "two_roots_with_zero":
        return [X, _lin(draw(rng))]
    if base == "two_roots":
        a1, a2 = _distinct(rng, draw, 2)
        return [_lin(a1), _lin(a2)]
    if base == "three_roots_with_zero":
        a1, a2 = _distinct(rng, draw, 2)
        return [X * _lin(a1), X * _lin(a2)]
    if base == "three_roots":
        a1, a2, a3 = _distinct(rng, draw, 3)
        return [_lin(a1) * _lin(a2), _lin(a1) * _lin(a3)]
    raise ValueError(family)


def scramble(polys, rng):
    """Multiply by random nonzero squares and constants (classification must not change)."""
    out = []
    for p in polys:
        k = q(_rat(rng, 1, 4))
        s = X + q(rng.randint(-3, 3))
        out.append(p.scale(k) * (s * s if rng.random() < 0.5 else Polynomial.const(1)))
    rng.shuffle(out)
    return out


def draw_transformation(family, variant, rng):
    """(transformation, RadicandSet) for a random admissible draw of ``family``."""
    polys = _radicands(family, rng)
    R = normalize(scramble(polys, rng))
    case = classify(R)
    if variant == "general":
        t = general_transformation(case)
    else:
        t = unit_interval_transformation(case, variant, list(R.reduced))
    assert t.family == family, (family, t.family, case)
    return t, R

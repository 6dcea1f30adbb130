"""Catalog of rationalizing transformations of minimal degree.

Each builder returns a :class:`Transformation` holding the substitution
``x = g(y)``, an inverse written with formal square roots, and for every
canonical radicand of the case its rational image in ``y``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import mpmath

from .numbers import AlgebraicNumber, ComplexNumber, I, as_number, conj, im_part, re_part
from .numbers import sqrt as S
from .poly import DomainError, Polynomial
from .puiseux import PuiseuxSeries
from .radicands import RadicandCase, _outside_unit, check_unit_interval_admissibility
from .ratfunc import RationalFunction, compose, is_square
from .sqrtexpr import SqrtExpr, SymbolContext, branch_series

__all__ = [
    "Transformation",
    "Image",
    "UsageError",
    "IneligibleError",
    "general_transformation",
    "unit_interval_transformation",
    "compose_moebius",
    "FAMILIES",
]


class UsageError(ValueError):
    pass


class IneligibleError(UsageError):
    def __init__(self, condition):
        super().__init__(condition)
        self.condition = condition


X = Polynomial.gen("x")
Y = Polynomial.gen("y")
ONE = AlgebraicNumber(1)


def _n(v):
    return as_number(v)


def _rf(num, den=None):
    return RationalFunction(num, den if den is not None else Polynomial.const(1, num.var))


@dataclass(frozen=True)
class Image:
    radicand: Polynomial  # in x
    label: str
    image: RationalFunction  # in y; image**2 == radicand(g(y))
    re: RationalFunction | None = None
    im: RationalFunction | None = None
    mask: int | None = None  # product of inverse symbols this image stands for


@dataclass(frozen=True)
class Transformation:
    case: RadicandCase
    variant: str  # general | real01 | complex01
    family: str
    g: RationalFunction
    inverse: SqrtExpr
    inverse_alt: SqrtExpr | None = None
    images: tuple = ()
    constants: tuple = ()  # (name, value) pairs
    validity: str = ""
    removable: tuple = ()
    lam: AlgebraicNumber | None = None

    @property
    def degree(self):
        return self.g.degree

    def constant(self, name):
        return dict(self.constants)[name]

    # output ---------------------------------------------------------------

    def to_text(self):
        lines = [
            f"case: {self.case!r}",
            f"variant: {self.variant} ({self.family})",
            f"x = g(y) = {self.g}",
            f"y = g^-1(x) = {self.inverse}",
        ]
        if self.inverse_alt is not None:
            lines.append(f"y = g^-1(x) (alternate) = {self.inverse_alt}")
        for img in self.images:
            lines.append(f"sqrt({img.label}) = {img.image}")
            if img.re is not None:
                lines.append(f"    re = {img.re}; im = {img.im}")
        for name, v in self.constants:
            lines.append(f"{name} = {v!r}")
        if self.lam is not None:
            lines.append(f"lambda = {self.lam!r}")
        if self.validity:
            lines.append(f"validity: {self.validity}")
        for pt in self.removable:
            lines.append(f"removable singularity of g^-1 at x = {pt!r}")
        return "\n".join(lines)

    def to_latex(self):
        lines = [
            f"x = g(y) = {self.g.latex()}",
            f"y = g^{{-1}}(x) = {self.inverse.latex()}",
        ]
        if self.inverse_alt is not None:
            lines.append(f"y = g^{{-1}}(x) = {self.inverse_alt.latex()}")
        for img in self.images:
            lines.append(f"\\sqrt{{{img.radicand.latex()}}} = {img.image.latex()}")
        return "\\\\\n".join(lines)

    def to_json(self):
        def rf(f):
            return {"num": [repr(c) for c in f.num.coeffs], "den": [repr(c) for c in f.den.coeffs]}

        towers = sorted({_tower_of(c) for c in self.g.num.coeffs + self.g.den.coeffs})
        return {
            "case": repr(self.case),
            "variant": self.variant,
            "family": self.family,
            "g": rf(self.g),
            "g_text": repr(self.g),
            "tower": towers,
            "inverse": self.inverse.to_json(),
            "inverse_text": repr(self.inverse),
            "inverse_alt_text": repr(self.inverse_alt) if self.inverse_alt is not None else None,
            "images": [
                {
                    "radicand": repr(img.radicand),
                    "label": img.label,
                    "image": rf(img.image),
                    "image_text": repr(img.image),
                    **({"re": repr(img.re), "im": repr(img.im)} if img.re is not None else {}),
                }
                for img in self.images
            ],
            "constants": {k: repr(v) for k, v in self.constants},
            "lambda": repr(self.lam) if self.lam is not None else None,
            "validity": self.validity,
            "removable": [repr(p) for p in self.removable],
        }


def _tower_of(c):
    parts = [c] if isinstance(c, AlgebraicNumber) else [c.re, c.im]
    return " ".join(" ".join(p.tower.describe()) or "Q" for p in parts)


# builder plumbing -------------------------------------------------------------


class _Plan:
    """Raw pieces of a family before images are attached."""

    def __init__(self, family, g, ctx, inverse, inverse_alt=None, images=(), constants=(), validity="", removable=()):
        self.family = family
        self.g = g
        self.ctx = ctx
        self.inverse = inverse
        self.inverse_alt = inverse_alt
        self.images = images  # (radicand poly in x, label, mask or None)
        self.constants = constants
        self.validity = validity
        self.removable = removable


def _split(f):
    """Real and imaginary part of a rational function in a real variable."""
    if f.is_real():
        return None, None
    dc = f.den.conj()
    num = f.num * dc
    den = f.den * dc
    re = Polynomial([re_part(c) for c in num.coeffs], f.var)
    im = Polynomial([im_part(c) for c in num.coeffs], f.var)
    dr = Polynomial([re_part(c) for c in den.coeffs], f.var)
    return RationalFunction(re, dr), RationalFunction(im, dr)


def _principal_product(ctx, mask, x0):
    with mpmath.workprec(100):
        val = mpmath.mpc(1)
        for i, f in enumerate(ctx.radicands):
            if mask >> i & 1:
                val *= mpmath.sqrt(_mp_eval_poly(f, x0))
        return val


def _mp_eval_poly(p, x0):
    acc = mpmath.mpc(0)
    for c in reversed(p.coeffs):
        v = c.to_mpc(100) if isinstance(c, ComplexNumber) else c.to_mpf(100)
        acc = acc * x0 + v
    return acc


def _mp_eval_rf(f, y0):
    return _mp_eval_poly(f.num, y0) / _mp_eval_poly(f.den, y0)


def _image(plan, radicand, label, mask, variant):
    fg = compose(RationalFunction(radicand), plan.g)
    sq = is_square(fg)
    if sq is None:
        raise DomainError(f"{label} is not rationalized by {plan.g}")
    c, h = sq
    img = h * S(c) if not (c == 1) else h
    if variant == "general":
        order = 4
        xs = PuiseuxSeries.from_rational_function(plan.g, order + 4)
        ref = branch_series(radicand, xs, order)
        mine = PuiseuxSeries.from_rational_function(img, order + 4)
        e = max(ref.e, mine.e)
        lead_ref = ref.with_ramification(e)
        lead_mine = mine.with_ramification(e)
        if lead_ref.val == lead_mine.val and lead_ref.coeffs[0] == -lead_mine.coeffs[0]:
            img = -img
    else:
        y0 = mpmath.mpf(1) / 3
        with mpmath.workprec(100):
            x0 = _mp_eval_rf(plan.g, y0)
            if mask is not None:
                want = _principal_product(plan.ctx, mask, x0)
            else:
                want = mpmath.sqrt(_mp_eval_poly(radicand, x0))
            got = _mp_eval_rf(img, y0)
            if abs(got + want) < abs(got - want):
                img = -img
    re, im = _split(img)
    return Image(radicand, label, img, re, im, mask)


def _finish(plan, case, variant):
    images = tuple(_image(plan, r, lab, m, variant) for r, lab, m in plan.images)
    return Transformation(
        case=case,
        variant=variant,
        family=plan.family,
        g=plan.g,
        inverse=plan.inverse,
        inverse_alt=plan.inverse_alt,
        images=images,
        constants=tuple(plan.constants),
        validity=plan.validity,
        removable=tuple(plan.removable),
    )


def _ctx(radicands, names):
    return SymbolContext(radicands, names, "x")


def _sym(ctx):
    return [SqrtExpr.symbol(ctx, i) for i in range(len(ctx))], SqrtExpr.x(ctx)


def _name(p):
    return f"sqrt({p})"


# general families -----------------------------------------------------------


def _gen_root_at_zero(a):
    ctx = _ctx([X], ["sqrt(x)"])
    (r,), x = _sym(ctx)
    return _Plan("root_at_zero", _rf(Y * Y), ctx, r, images=[(X, "x", 1)])


def _gen_one_root(a):
    f = X - a
    ctx = _ctx([f], [_name(f)])
    (r,), x = _sym(ctx)
    sa = S(-a)
    g = _rf((Y * Y + Y).scale(-4 * a))
    inv = (r - sa) / (2 * sa)
    return _Plan("one_root", g, ctx, inv, images=[(f, repr(f), 1)])


def _gen_quadratic_with_zero(c1):
    f = X * X + X.scale(c1)
    ctx = _ctx([f], [_name(f)])
    (r,), x = _sym(ctx)
    g = RationalFunction((Y * Y).scale(c1), (Y + 1).scale(4))
    inv = (x + r) * (2 / c1)
    return _Plan("quadratic_with_zero", g, ctx, inv, images=[(f, repr(f), 1)])


def _gen_quadratic(c0, c1):
    f = X * X + X.scale(c1) + c0
    ctx = _ctx([f], [_name(f)])
    (r,), x = _sym(ctx)
    disc = c1 * c1 - 4 * c0
    g = RationalFunction(Y.scale(4 * c0), (Y * Y).scale(disc) - Y.scale(2 * c1) + 1)
    inv = (x * c1 + 2 * c0 - r * (2 * S(c0))) / (x * disc)
    return _Plan("quadratic", g, ctx, inv, images=[(f, repr(f), 1)])


def _gen_two_roots_with_zero(a1):
    f1 = X - a1
    ctx = _ctx([X, f1], ["sqrt(x)", _name(f1)])
    (r0, r1), x = _sym(ctx)
    g = RationalFunction((Y * Y).scale(4 * a1), (Y * Y + 1) ** 2)
    sm = S(-a1)
    inv = r0 * S(a1) * (sm - r1) / (x * sm)
    return _Plan("two_roots_with_zero", g, ctx, inv, images=[(f1, repr(f1), 2), (X, "x", 1)])


def _gen_two_roots(a1, a2):
    f1, f2 = X - a1, X - a2
    ctx = _ctx([f1, f2], [_name(f1), _name(f2)])
    (r1, r2), x = _sym(ctx)
    g = RationalFunction((Y * (Y - a1) * (Y - a2)).scale(4 * a1 * a2), (Y * Y - a1 * a2) ** 2)
    inv = (r1 * S(-a1) + a1) * (r2 * S(-a2) + a2) / x
    return _Plan("two_roots", g, ctx, inv, images=[(f1, repr(f1), 1), (f2, repr(f2), 2)])


def _gen_three_roots_with_zero(a1, a2):
    f1, f2 = X * (X - a1), X * (X - a2)
    ctx = _ctx([f1, f2], [_name(f1), _name(f2)])
    (r1, r2), x = _sym(ctx)
    g = RationalFunction(
        (Y * Y).scale(4 * a1 * a2),
        (Y**4).scale((a1 - a2) ** 2) + (Y * Y).scale(2 * (a1 + a2)) + 1,
    )
    inv = (r1 / S(-a1) - r2 / S(-a2)) * S(a1 * a2) / (x * (a1 - a2))
    f3 = (X - a1) * (X - a2)
    return _Plan(
        "three_roots_with_zero", g, ctx, inv,
        images=[(f1, repr(f1), 1), (f2, repr(f2), 2), (f3, repr(f3), None)],
        constants=[],
    )


def _gen_three_roots(a1, a2, a3):
    s1, s2, s3 = a1 + a2 + a3, a1 * a2 + a1 * a3 + a2 * a3, a1 * a2 * a3
    f1, f2, f3 = (X - a1) * (X - a2), (X - a1) * (X - a3), (X - a2) * (X - a3)
    ctx = _ctx([f1, f2], ["r1", "r2"])
    (r1, r2), x = _sym(ctx)
    den = (Y**4).scale(s1 * s1 - 4 * s2) + (Y**3).scale(8 * s3) - (Y * Y).scale(2 * s1 * s3) + s3 * s3
    g = RationalFunction((Y * (Y - a1) * (Y - a2) * (Y - a3)).scale(-4 * s3), den)
    q12, q13 = S(a1 * a2), S(a1 * a3)
    body = (
        -x * 2 + s1
        - r1 * ((s1 - 2 * a3) / q12)
        - r2 * ((s1 - 2 * a2) / q13)
        + r1 * r2 * (a1 * (s1 - 2 * a1) / (q12 * q13)) / (x - a1)
    )
    inv = body * s3 / (x * (s1 * s1 - 4 * s2) + 4 * s3)
    return _Plan(
        "three_roots", g, ctx, inv,
        images=[(f1, repr(f1), 1), (f2, repr(f2), 2), (f3, repr(f3), None)],
        constants=[("s1", s1), ("s2", s2), ("s3", s3)],
        validity="r1 = sqrt((x-a1)(x-a2)), r2 = sqrt((x-a1)(x-a3))",
    )


def general_transformation(case):
    t, p = case.tag, case.params
    if t == "OneLinear":
        plan = _gen_root_at_zero(p[0]) if p[0].is_zero() else _gen_one_root(p[0])
    elif t == "OneQuadratic":
        c0, c1 = p
        plan = _gen_quadratic_with_zero(c1) if c0.is_zero() else _gen_quadratic(c0, c1)
    elif t == "TwoLinear":
        a1, a2 = p
        plan = _gen_two_roots_with_zero(a1) if a2.is_zero() else _gen_two_roots(a1, a2)
    elif t == "ThreeQuadratic":
        a1, a2, a3 = p
        plan = _gen_three_roots_with_zero(a1, a2) if a3.is_zero() else _gen_three_roots(a1, a2, a3)
    else:
        raise UsageError(f"no transformation for case {case!r}")
    plan.validity = plan.validity or "g(g^-1(x)) = x identically; g^-1(g(y)) = y as Puiseux series at y = 0"
    return _finish(plan, case, "general")


# real [0,1] families --------------------------------------------------------------


def _unit(a):
    """Radicand a^-1 (a - x) = 1 - x/a."""
    return Polynomial((1, -1 / a), "x")


def _uname(a):
    c = -1 / a
    if c == 1:
        return "sqrt(1 + x)"
    if c == -1:
        return "sqrt(1 - x)"
    if c.sign() < 0:
        return f"sqrt(1 - ({-c!r})*x)"
    return f"sqrt(1 + ({c!r})*x)"


def _lbl_unit(a):
    return f"(a - x)/a, a = {a!r}"


def _real_root_at_zero(a):
    ctx = _ctx([X], ["sqrt(x)"])
    (r,), x = _sym(ctx)
    return _Plan("root_at_zero_real", _rf(Y * Y), ctx, r, x / r, images=[(X, "x", 1)], validity="x in [0,1]")


def _real_one_root(a):
    al = S(1 - 1 / a)
    u = _unit(a)
    ctx = _ctx([u], [_uname(a)])
    (r,), x = _sym(ctx)
    g = _rf(Y * (Y.scale(1 - 2 * a + 2 * a * al) + 2 * a * (1 - al)))
    inv = (1 - r) * (a * (1 + al))
    alt = x * (1 + al) / (1 + r)
    return _Plan("one_root_real", g, ctx, inv, alt, images=[(u, _lbl_unit(a), 1)], constants=[("alpha", al)],
                 validity="x in [0,1]")


def _real_quadratic_with_zero(a):
    al = S(1 - 1 / a)
    w = X * _unit(a)
    ctx = _ctx([w], [_name(w)])
    (r,), x = _sym(ctx)
    g = RationalFunction((Y * Y).scale(a), Y * Y + (a - 1))
    inv = r * (a * al) / (a - x)
    alt = x * al / r
    return _Plan("quadratic_with_zero_real", g, ctx, inv, alt, images=[(w, f"x(a - x)/a, a = {a!r}", 1)],
                 constants=[("alpha", al)], validity="x in [0,1]")


def _real_zero_and_one():
    w = X * (1 - X)
    ctx = _ctx([w], ["sqrt(x(1 - x))"])
    (r,), x = _sym(ctx)
    g = RationalFunction(Y * Y, (Y * Y).scale(2) - Y.scale(2) + 1)
    inv = (x - r) / (x * 2 - 1)
    alt = x / (x + r)
    return _Plan("zero_and_one_real", g, ctx, inv, alt, images=[(w, "x(1 - x)", 1)],
                 validity="x in [0,1]", removable=[_n(1) / 2])


def _real_quadratic(c0, c1):
    al = S(1 + (c1 + 1) / c0)
    w = (X * X + X.scale(c1) + c0).scale(1 / c0)
    ctx = _ctx([w], [f"sqrt({w})"])
    (r,), x = _sym(ctx)
    k = 1 + 2 * c0 + c1 + 2 * c0 * al
    g = RationalFunction(Y * (Y.scale(c1) + 2 * c0 * (1 + al)), Polynomial.const(k, "y") - Y * Y)
    inv = (r - 1) * (c0 * (1 + al)) / (x + c1)
    alt = x * (1 + al) / (1 + r)
    return _Plan("quadratic_real", g, ctx, inv, alt, images=[(w, repr(w), 1)], constants=[("alpha", al)],
                 validity="x in [0,1]", removable=[-c1])


def _real_two_roots_with_zero(a):
    al = S(1 - 1 / a)
    u = _unit(a)
    ctx = _ctx([X, u], ["sqrt(x)", _uname(a)])
    (r0, r1), x = _sym(ctx)
    g = RationalFunction((Y * Y).scale(4), ((Y * Y).scale(1 - al) + (1 + al)) ** 2)
    inv = (1 - r1) * (a * (1 + al)) / r0
    alt = r0 * (1 + al) / (1 + r1)
    return _Plan("two_roots_with_zero_real", g, ctx, inv, alt, images=[(X, "x", 1), (u, _lbl_unit(a), 2)],
                 constants=[("alpha", al)], validity="x in [0,1]")


def _real_two_roots(a1, a2):
    al = (1 + S(1 - 1 / a1)) * (1 + S(1 - 1 / a2))
    return _real_two_roots_scaled(a1, a2, al, "two_roots_real")


def _real_two_roots_scaled(a1, a2, al, family):
    u1, u2 = _unit(a1), _unit(a2)
    ctx = _ctx([u1, u2], [_uname(a1), _uname(a2)])
    (r1, r2), x = _sym(ctx)
    p = a1 * a2
    g = RationalFunction(
        (Y * (Y - a1 * al) * (Y - a2 * al)).scale(4 * p * al),
        (Y * Y - p * al * al) ** 2,
    )
    inv = (1 - r1) * (1 - r2) * (p * al) / x
    alt = x * al / ((1 + r1) * (1 + r2))
    return _Plan(family, g, ctx, inv, alt,
                 images=[(u1, _lbl_unit(a1), 1), (u2, _lbl_unit(a2), 2)],
                 constants=[("alpha", al)], validity="x in [0,1]", removable=[_n(0)])


def _real_three_roots_with_zero(a1, a2):
    al = S((1 - 1 / a1) * (1 - 1 / a2))
    b1, b2 = S(1 - 1 / a1), S(1 - 1 / a2)
    s1, s2 = a1 + a2, a1 * a2
    u1, u2 = _unit(a1), _unit(a2)
    ctx = _ctx([X, u1, u2], ["sqrt(x)", _uname(a1), _uname(a2)])
    (r0, r1, r2), x = _sym(ctx)
    den = (Y**4).scale(-s1 + 2 * s2 * (1 - al)) + (Y * Y).scale(2 * s1) + (-s1 + 2 * s2 * (1 + al))
    g = RationalFunction((Y * Y).scale(4 * s2), den)
    inv = (r0 * r1 - r0 * r2) * (a1 * a2 * (b1 + b2)) / (x * (a1 - a2))
    alt = x * (b1 + b2) / (r0 * r1 + r0 * r2)
    return _Plan(
        "three_roots_with_zero_real", g, ctx, inv, alt,
        images=[
            (X * u1, f"x(a1 - x)/a1, a1 = {a1!r}", 3),
            (X * u2, f"x(a2 - x)/a2, a2 = {a2!r}", 5),
            (u1 * u2, "(a1 - x)(a2 - x)/(a1 a2)", 6),
        ],
        constants=[("alpha", al), ("beta1", b1), ("beta2", b2), ("s1", s1), ("s2", s2)],
        validity="x in [0,1]; square roots of products replaced by products of single roots, "
                 "which makes the identities hold for all x",
    )


def _three_roots_alpha(a1, a2, a3):
    c = [1 - 1 / a for a in (a1, a2, a3)]
    return S(c[0] * c[1]) + S(c[0] * c[2]) + S(c[1] * c[2])


def _real_three_roots(a1, a2, a3, al=None, family="three_roots_real"):
    if al is None:
        al = _three_roots_alpha(a1, a2, a3)
    s1, s2, s3 = a1 + a2 + a3, a1 * a2 + a1 * a3 + a2 * a3, a1 * a2 * a3
    k = 1 + al
    u1, u2, u3 = _unit(a1), _unit(a2), _unit(a3)
    ctx = _ctx([u1, u2, u3], [_uname(a) for a in (a1, a2, a3)])
    (r1, r2, r3), x = _sym(ctx)
    q = (
        (Y**4).scale(s1 * s1 - 4 * s2)
        + (Y**3).scale(8 * s3 * k)
        - (Y * Y).scale(2 * s1 * s3 * k * k)
        + s3 * s3 * k**4
    )
    g = RationalFunction((Y * (Y - a1 * k) * (Y - a2 * k) * (Y - a3 * k)).scale(-4 * s3), q)
    body = x * 2 - s1 + r1 * r2 * (s1 - 2 * a3) + r1 * r3 * (s1 - 2 * a2) + r2 * r3 * (s1 - 2 * a1)
    inv = body * (-s3 * k) / (x * (s1 * s1 - 4 * s2) + 4 * s3)
    alt = x * k / (1 + r1 * r2 + r1 * r3 + r2 * r3)
    rem = []
    dq = s1 * s1 - 4 * s2
    if not dq.is_zero():
        rem.append(-4 * s3 / dq)
    return _Plan(
        family, g, ctx, inv, alt,
        images=[
            (u1 * u2, "(a1 - x)(a2 - x)/(a1 a2)", 3),
            (u1 * u3, "(a1 - x)(a3 - x)/(a1 a3)", 5),
            (u2 * u3, "(a2 - x)(a3 - x)/(a2 a3)", 6),
        ],
        constants=[("alpha", al), ("s1", s1), ("s2", s2), ("s3", s3)],
        validity="x in [0,1]; square roots of products replaced by products of single roots, "
                 "which makes the identities hold for all x",
        removable=rem,
    )


# complex [0,1] families (real-coefficient forms) ----------------------------------------


def _complex_pair(a1):
    m2 = a1.abs2()
    re = re_part(a1)
    d = S(((a1 - 1) / a1).abs2())  # |(a1 - 1)/a1|
    al = 1 + d + S(2 * (1 - re / m2 + d))
    u1, u2 = _unit(a1), _unit(conj(a1))
    ctx = _ctx([u1, u2], ["sqrt(1 - x/a1)", "sqrt(1 - x/conj(a1))"])
    (r1, r2), x = _sym(ctx)
    g = RationalFunction(
        (Y * (Y * Y - Y.scale(2 * re * al) + m2 * al * al)).scale(4 * m2 * al),
        (Y * Y - m2 * al * al) ** 2,
    )
    inv = (1 - r1) * (1 - r2) * (m2 * al) / x
    alt = x * al / ((1 + r1) * (1 + r2))
    return _Plan(
        "conjugate_pair_complex", g, ctx, inv, alt,
        images=[(u1, "(a1 - x)/a1", 1), (u2, "(conj(a1) - x)/conj(a1)", 2)],
        constants=[("alpha", al), ("a1", a1)],
        validity="x in [0,1]", removable=[_n(0)],
    )


def _complex_pair_with_zero(a1):
    m2 = a1.abs2()
    re, im = re_part(a1), im_part(a1)
    al = S(((a1 - 1) / a1).abs2())
    beta = S((1 - re / m2 + al) / 2)
    q = (Y**4).scale(m2 - re - m2 * al) + (Y * Y).scale(2 * re) + (m2 - re + m2 * al)
    g = RationalFunction((Y * Y).scale(2 * m2), q)
    u1, u2 = _unit(a1), _unit(conj(a1))
    ctx = _ctx([X, u1, u2], ["sqrt(x)", "sqrt(1 - x/a1)", "sqrt(1 - x/conj(a1))"])
    (r0, r1, r2), x = _sym(ctx)
    inv = (r1 - r2) * (-I * m2 * beta / im) / r0
    alt = r0 * (2 * beta) / (r1 + r2)
    return _Plan(
        "conjugate_pair_with_zero_complex", g, ctx, inv, alt,
        images=[
            (X * u1, "x(a1 - x)/a1", 3),
            (X * u2, "x(conj(a1) - x)/conj(a1)", 5),
            (u1 * u2, "(a1 - x)(conj(a1) - x)/|a1|^2", 6),
        ],
        constants=[("alpha", al), ("beta", beta), ("a1", a1)],
        validity="x in [0,1]; products of single square roots hold for all x",
    )


def _complex_pair_with_real(a1, a2):
    m2 = a2.abs2()
    re, im = re_part(a2), im_part(a2)
    d = S(((a2 - 1) / a2).abs2())
    al = d + S((a1 - 1) / a1) * S(2 * (1 - re / m2 + d))
    k = 1 + al
    lead = a1 * a1 - 4 * a1 * re - 4 * im * im
    q = (
        (Y**4).scale(lead)
        + (Y**3).scale(8 * a1 * m2 * k)
        - (Y * Y).scale(2 * a1 * m2 * (a1 + 2 * re) * k * k)
        + a1 * a1 * m2 * m2 * k**4
    )
    num = (Y * (Y - a1 * k) * (Y * Y - Y.scale(2 * re * k) + m2 * k * k)).scale(-4 * a1 * m2)
    g = RationalFunction(num, q)
    u1, u2, u3 = _unit(a1), _unit(a2), _unit(conj(a2))
    ctx = _ctx([u1, u2, u3], [_uname(a1), "sqrt(1 - x/a2)", "sqrt(1 - x/conj(a2))"])
    (r1, r2, r3), x = _sym(ctx)
    body = (
        x * 2 - a1 - 2 * re
        + r1 * (r2 + r3) * a1
        + r2 * r3 * (2 * re - a1)
        + r1 * (r2 - r3) * (2 * I * im)
    )
    inv = body * (-a1 * m2 * k) / (x * lead + 4 * a1 * m2)
    alt = x * k / (1 + r1 * r2 + r1 * r3 + r2 * r3)
    rem = [] if lead.is_zero() else [-4 * a1 * m2 / lead]
    return _Plan(
        "conjugate_pair_with_real_complex", g, ctx, inv, alt,
        images=[
            (u1 * u2, "(a1 - x)(a2 - x)/(a1 a2)", 3),
            (u1 * u3, "(a1 - x)(conj(a2) - x)/(a1 conj(a2))", 5),
            (u2 * u3, "(a2 - x)(conj(a2) - x)/|a2|^2", 6),
        ],
        constants=[("alpha", al), ("a1", a1), ("a2", a2)],
        validity="x in [0,1]; products of single square roots hold for all x",
        removable=rem,
    )


def _real_plan(case):
    t, p = case.tag, case.params
    if t == "OneLinear":
        return _real_root_at_zero(p[0]) if p[0].is_zero() else _real_one_root(p[0])
    if t == "OneQuadratic":
        c0, c1 = p
        if c0.is_zero():
            a = -c1
            return _real_zero_and_one() if a == 1 else _real_quadratic_with_zero(a)
        return _real_quadratic(c0, c1)
    if t == "TwoLinear":
        a1, a2 = p
        return _real_two_roots_with_zero(a1) if a2.is_zero() else _real_two_roots(a1, a2)
    if t == "ThreeQuadratic":
        a1, a2, a3 = p
        return _real_three_roots_with_zero(a1, a2) if a3.is_zero() else _real_three_roots(a1, a2, a3)
    raise UsageError(f"no transformation for case {case!r}")


def unit_interval_transformation(case, variant="real01", R=None):
    """Transformation mapping [0,1] increasingly onto itself.

    ``R`` is the radicand set (needed for the complex variant, whose
    admissibility is decided on the set together with its conjugates).
    """
    if case.tag in ("Empty", "NoTransformation"):
        raise UsageError(f"no transformation for case {case!r}")
    elig = check_unit_interval_admissibility(case, R if R is not None else _case_polys(case))
    if variant == "real01":
        if not elig.real:
            raise IneligibleError(elig.real_reason)
        return _finish(_real_plan(case), case, "real01")
    if variant != "complex01":
        raise UsageError(f"unknown variant {variant!r}")
    if not elig.complex:
        raise IneligibleError(elig.complex_reason)
    cc = elig.complex_case
    ok, _ = _real_ok(cc)
    if ok:
        # the conjugate closure is real-valued on [0,1]; the real formulas apply
        return _finish(_real_plan(cc), cc, "complex01")
    t, p = cc.tag, cc.params
    if t == "TwoLinear":
        plan = _complex_pair(p[0])
    elif t == "ThreeQuadratic" and p[2].is_zero():
        plan = _complex_pair_with_zero(p[0])
    else:
        plan = _complex_pair_with_real(p[0], p[1])
    return _finish(plan, cc, "complex01")


def _real_ok(case):
    from .radicands import _real_check

    return _real_check(case)


def _case_polys(case):
    from .radicands import case_radicands

    return case_radicands(case)


# Moebius reparametrization -----------------------------------------------------------


def _moebius(lam, var):
    v = Polynomial.gen(var)
    return RationalFunction(v, v.scale(1 - lam) + lam)


def compose_moebius(t, lam):
    lam = _n(lam)
    if not isinstance(lam, AlgebraicNumber) or lam.sign() <= 0:
        raise DomainError("lambda must be a positive real number")
    if t.variant == "general":
        raise UsageError("Moebius reparametrization applies to [0,1] variants only")
    h = _moebius(lam, "y")
    hinv = _moebius(1 / lam, "x")
    g = compose(t.g, h)
    inv = t.inverse.substitute_rf(hinv)
    alt = t.inverse_alt.substitute_rf(hinv) if t.inverse_alt is not None else None
    images = tuple(
        replace(img, image=compose(img.image, h),
                re=compose(img.re, h) if img.re is not None else None,
                im=compose(img.im, h) if img.im is not None else None)
        for img in t.images
    )
    prev = t.lam if t.lam is not None else ONE
    total = prev * lam
    return replace(t, g=g, inverse=inv, inverse_alt=alt, images=images,
                   lam=None if total == 1 else total)


FAMILIES = {
    "general": ["root_at_zero", "one_root", "quadratic_with_zero", "quadratic", "two_roots_with_zero", "two_roots", "three_roots_with_zero", "three_roots"],
    "real01": ["root_at_zero_real", "one_root_real", "quadratic_with_zero_real", "zero_and_one_real", "quadratic_real",
               "two_roots_with_zero_real", "two_roots_real", "three_roots_with_zero_real", "three_roots_real"],
    "complex01": ["conjugate_pair_complex", "conjugate_pair_with_zero_complex", "conjugate_pair_with_real_complex"],
}

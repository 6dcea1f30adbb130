"""Expressions in formal square-root symbols, reduced modulo ``r_i**2 = f_i(x)``.

An expression is a quotient ``N / D`` of two multilinear polynomials in the
symbols.  Each is stored as a map from a bit mask (which symbols appear) to a
polynomial coefficient in ``x``.  As long as the radicands are independent
modulo squares, the algebra is a field, so an expression is zero exactly when
every coefficient of its numerator vanishes.
"""

from __future__ import annotations

import cmath

import mpmath

from .numbers import AlgebraicNumber, ComplexNumber, as_number, is_number
from .poly import DomainError, Polynomial
from .puiseux import PuiseuxSeries
from .ratfunc import RationalFunction

__all__ = ["SqrtExpr", "SymbolContext", "branch_series"]


class SymbolContext:
    """Ordered radicands ``f_1..f_k`` with display names."""

    __slots__ = ("radicands", "names", "var")

    def __init__(self, radicands, names=None, var="x"):
        self.radicands = tuple(p.with_var(var) for p in radicands)
        self.names = tuple(names) if names else tuple(f"sqrt({p})" for p in self.radicands)
        self.var = var

    def __eq__(self, other):
        return isinstance(other, SymbolContext) and self.radicands == other.radicands

    def __hash__(self):
        return hash(self.radicands)

    def __len__(self):
        return len(self.radicands)

    def fold(self, mask):
        """Product of radicands selected by ``mask``."""
        out = Polynomial.const(1, self.var)
        for i, f in enumerate(self.radicands):
            if mask >> i & 1:
                out = out * f
        return out


def _clean(d):
    return {m: p for m, p in d.items() if not p.is_zero()}


def _dadd(a, b):
    out = dict(a)
    for m, p in b.items():
        out[m] = out[m] + p if m in out else p
    return _clean(out)


def _dmul(a, b, ctx):
    out = {}
    for m1, p1 in a.items():
        for m2, p2 in b.items():
            p = p1 * p2
            common = m1 & m2
            if common:
                p = p * ctx.fold(common)
            m = m1 ^ m2
            out[m] = out[m] + p if m in out else p
    return _clean(out)


def _dconj_symbol(a, i):
    """Flip the sign of symbol i."""
    return {m: (-p if m >> i & 1 else p) for m, p in a.items()}


class SqrtExpr:
    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den=None):
        self.ctx = ctx
        self.num = _clean(num)
        one = {0: Polynomial.const(1, ctx.var)}
        self.den = _clean(den) if den is not None else one
        if not self.den:
            raise ZeroDivisionError("zero denominator in square-root expression")

    # constructors ---------------------------------------------------------

    @classmethod
    def const(cls, ctx, c):
        return cls(ctx, {0: Polynomial.const(c, ctx.var)})

    @classmethod
    def from_rf(cls, ctx, f):
        if isinstance(f, Polynomial):
            return cls(ctx, {0: f.with_var(ctx.var)})
        if isinstance(f, RationalFunction):
            return cls(ctx, {0: f.num.with_var(ctx.var)}, {0: f.den.with_var(ctx.var)})
        return cls.const(ctx, f)

    @classmethod
    def x(cls, ctx):
        return cls(ctx, {0: Polynomial.gen(ctx.var)})

    @classmethod
    def symbol(cls, ctx, i):
        return cls(ctx, {1 << i: Polynomial.const(1, ctx.var)})

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, SqrtExpr):
            if other.ctx != self.ctx:
                raise ValueError("square-root expressions over different symbol sets")
            return other
        if isinstance(other, (Polynomial, RationalFunction)):
            return SqrtExpr.from_rf(self.ctx, other)
        if is_number(other) or isinstance(other, int) or hasattr(other, "numerator"):
            return SqrtExpr.const(self.ctx, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if _same(self.den, o.den):
            return SqrtExpr(self.ctx, _dadd(self.num, o.num), self.den)
        n = _dadd(_dmul(self.num, o.den, self.ctx), _dmul(o.num, self.den, self.ctx))
        return SqrtExpr(self.ctx, n, _dmul(self.den, o.den, self.ctx))

    __radd__ = __add__

    def __neg__(self):
        return SqrtExpr(self.ctx, {m: -p for m, p in self.num.items()}, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return SqrtExpr(self.ctx, _dmul(self.num, o.num, self.ctx), _dmul(self.den, o.den, self.ctx))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero in square-root expression")
        return SqrtExpr(self.ctx, _dmul(self.num, o.den, self.ctx), _dmul(self.den, o.num, self.ctx))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return SqrtExpr.const(self.ctx, 1) / self ** (-k)
        out = SqrtExpr.const(self.ctx, 1)
        for _ in range(k):
            out = out * self
        return out

    def is_zero(self):
        return not self.num

    def equals(self, other):
        return (self - other).is_zero()

    def map_coeffs(self, fn):
        return SqrtExpr(
            self.ctx,
            {m: p.map_coeffs(fn) for m, p in self.num.items()},
            {m: p.map_coeffs(fn) for m, p in self.den.items()},
        )

    def substitute_rf(self, f):
        """``f(self)`` for a rational function ``f`` (homogenized, no nested fractions)."""
        n, d = f.num, f.den
        deg = max(n.degree, d.degree, 0)
        P, Q = self.num, self.den
        ctx = self.ctx
        ppow = [{0: Polynomial.const(1, ctx.var)}]
        qpow = [{0: Polynomial.const(1, ctx.var)}]
        for _ in range(deg):
            ppow.append(_dmul(ppow[-1], P, ctx))
            qpow.append(_dmul(qpow[-1], Q, ctx))

        def hom(poly):
            acc = {}
            for k, c in enumerate(poly.coeffs):
                if c.is_zero():
                    continue
                term = _dmul(ppow[k], qpow[deg - k], ctx)
                acc = _dadd(acc, {m: p.scale(c) for m, p in term.items()})
            return acc

        top, bot = hom(n), hom(d)
        if not bot:
            raise ZeroDivisionError("denominator vanishes identically after substitution")
        return SqrtExpr(ctx, top, bot)

    # evaluation ---------------------------------------------------------

    def evaluate(self, x, prec=53):
        """Numeric value using principal square roots of the radicands."""
        with mpmath.workprec(prec):
            xv = mpmath.mpmathify(complex(x)) if not isinstance(x, (mpmath.mpf, mpmath.mpc)) else x
            roots = [mpmath.sqrt(_mp_poly(f, xv)) for f in self.ctx.radicands]

            def ev(d):
                acc = mpmath.mpc(0)
                for m, p in d.items():
                    t = _mp_poly(p, xv)
                    for i, r in enumerate(roots):
                        if m >> i & 1:
                            t = t * r
                    acc += t
                return acc

            return ev(self.num) / ev(self.den)

    def series(self, xs, order):
        """Puiseux series of the expression with ``x`` replaced by the series ``xs``.

        Square-root symbols follow :func:`branch_series`.
        """
        roots = [branch_series(f, xs, order) for f in self.ctx.radicands]

        def ev(d):
            acc = None
            for m, p in d.items():
                t = xs.compose_polynomial(p)
                for i, r in enumerate(roots):
                    if m >> i & 1:
                        t = t * r
                acc = t if acc is None else acc + t
            return acc

        return ev(self.num) / ev(self.den)

    # display ------------------------------------------------------------

    def _dict_str(self, d, latex):
        names = self.ctx.names
        parts = []
        for m in sorted(d):
            p = d[m]
            syms = [names[i] for i in range(len(names)) if m >> i & 1]
            ps = p.to_str(latex)
            if syms:
                sep = " " if latex else "*"
                body = sep.join(syms)
                if ps == "1":
                    parts.append(body)
                elif ps == "-1":
                    parts.append("-" + body)
                else:
                    if len([c for c in p.coeffs if not c.is_zero()]) > 1:
                        ps = f"({ps})"
                    elif "/" in ps and not latex:
                        ps = f"-({ps[1:]})" if ps.startswith("-") else f"({ps})"
                    parts.append(ps + sep + body)
            else:
                parts.append(ps)
        if not parts:
            return "0"
        s = parts[0]
        for t in parts[1:]:
            s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return s

    def to_str(self, latex=False):
        n = self._dict_str(self.num, latex)
        if len(self.den) == 1 and 0 in self.den and self.den[0].degree == 0 and self.den[0].coeff(0) == 1:
            return n
        d = self._dict_str(self.den, latex)
        if latex:
            return f"\\frac{{{n}}}{{{d}}}"
        return f"({n})/({d})"

    def __repr__(self):
        return self.to_str()

    def latex(self):
        return self.to_str(latex=True)

    def to_json(self):
        def enc(d):
            return [
                {"symbols": [i for i in range(len(self.ctx)) if m >> i & 1], "coeffs": [repr(c) for c in p.coeffs]}
                for m, p in sorted(d.items())
            ]

        return {
            "radicands": [repr(f) for f in self.ctx.radicands],
            "numerator": enc(self.num),
            "denominator": enc(self.den),
        }


def _same(a, b):
    return a.keys() == b.keys() and all(a[k] == b[k] for k in a)


def _mp_poly(p, x):
    acc = mpmath.mpc(0)
    for c in reversed(p.coeffs):
        acc = acc * x + _mp_number(c)
    return acc


def _mp_number(c):
    if isinstance(c, ComplexNumber):
        return c.to_mpc(mpmath.mp.prec + 20)
    return c.to_mpf(mpmath.mp.prec + 20)


def branch_series(f, xs, order):
    """Canonical branch of ``sqrt(f(x))`` along ``x = xs`` (a series of positive valuation).

    Writing ``f = x**m * h`` with ``h(0) != 0`` the branch is
    ``(x**(1/2))**m * sqrt(h(0)) * (h/h(0))**(1/2)``, where ``x**(1/2)`` is the
    square root of ``xs`` whose leading coefficient is the canonical root.
    """
    m = f.valuation()
    if m is None:
        raise DomainError("square root of the zero polynomial")
    h = Polynomial(f.coeffs[m:], f.var)
    h0 = h.coeff(0)
    from .numbers import sqrt as csqrt

    hs = xs.compose_polynomial(h.scale(1 / h0)).truncate(order)
    root = hs.sqrt() * csqrt(h0)
    if m:
        xh = xs.truncate(order + xs.val).sqrt()
        for _ in range(m):
            root = root * xh
    return root

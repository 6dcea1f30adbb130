"""Univariate rational functions in canonical form (coprime, monic denominator)."""

from __future__ import annotations

import numpy as np

from .numbers import AlgebraicNumber, ComplexNumber, as_number, is_number
from .poly import DomainError, Polynomial

__all__ = ["RationalFunction", "compose", "is_square", "squarefree_part"]


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None, var=None):
        if not isinstance(num, Polynomial):
            num = Polynomial((num,), var or "x")
        var = var or num.var
        if den is None:
            den = Polynomial.const(1, var)
        elif not isinstance(den, Polynomial):
            den = Polynomial((den,), var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num, den = num.with_var(var), den.with_var(var)
        if num.is_zero():
            self.num = num
            self.den = Polynomial.const(1, var)
            return
        if den.degree > 0:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
        lc = den.lc()
        if not lc == 1:
            inv = 1 / lc
            num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @classmethod
    def gen(cls, var="x"):
        return cls(Polynomial.gen(var))

    @classmethod
    def const(cls, c, var="x"):
        return cls(Polynomial.const(c, var))

    @property
    def var(self):
        return self.num.var

    @property
    def degree(self):
        return max(self.num.degree, self.den.degree)

    def is_zero(self):
        return self.num.is_zero()

    def is_constant(self):
        return self.num.degree <= 0 and self.den.degree == 0

    def is_polynomial(self):
        return self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise DomainError(f"{self} is not constant")
        return self.num.coeff(0)

    def with_var(self, var):
        return RationalFunction(self.num.with_var(var), self.den.with_var(var))

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other, var=self.var)
        if is_number(other) or isinstance(other, int) or hasattr(other, "numerator"):
            return RationalFunction(Polynomial((other,), self.var))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(self.num + o.num, self.den)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

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
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return RationalFunction(self.den ** (-e), self.num ** (-e))
        return RationalFunction(self.num**e, self.den**e)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def derivative(self):
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def conj(self):
        return RationalFunction(self.num.conj(), self.den.conj())

    def is_real(self):
        return self.num.is_real() and self.den.is_real()

    def reflect(self):
        """f(1 - x)"""
        return RationalFunction(self.num.reflect(), self.den.reflect())

    # evaluation ---------------------------------------------------------

    def __call__(self, x):
        if isinstance(x, RationalFunction):
            return compose(self, x)
        if isinstance(x, Polynomial):
            return compose(self, RationalFunction(x))
        x = as_number(x)
        d = self.den(x)
        if d.is_zero():
            raise DomainError(f"pole of {self} at {x}")
        return self.num(x) / d

    def numeric(self, x):
        """Evaluate on a float/complex numpy array (or scalar)."""
        x = np.asarray(x)
        return _np_poly(self.num, x) / _np_poly(self.den, x)

    # display ------------------------------------------------------------

    def to_str(self, latex=False):
        n = self.num.to_str(latex)
        if self.den.degree == 0:
            return n
        d = self.den.to_str(latex)
        if latex:
            return f"\\frac{{{n}}}{{{d}}}"
        if sum(1 for c in self.num.coeffs if not c.is_zero()) > 1:
            n = f"({n})"
        return f"{n}/({d})"

    def __repr__(self):
        return self.to_str()

    def latex(self):
        return self.to_str(latex=True)


def _np_poly(p, x):
    cs = [complex(c) for c in p.coeffs]
    if not cs:
        return np.zeros_like(x, dtype=complex)
    acc = np.full(np.shape(x), cs[-1], dtype=complex)
    for c in reversed(cs[:-1]):
        acc = acc * x + c
    return acc


def compose(f, g):
    """Exact ``f(g(y))`` in canonical form."""
    if not isinstance(g, RationalFunction):
        g = RationalFunction(g) if isinstance(g, Polynomial) else RationalFunction.const(g)
    a, b = g.num, g.den
    var = g.var

    def homog(p, n):
        # sum p_k a^k b^(n-k)
        acc = Polynomial((), var)
        apow = Polynomial.const(1, var)
        bpows = [Polynomial.const(1, var)]
        for _ in range(n):
            bpows.append(bpows[-1] * b)
        for k, c in enumerate(p.coeffs):
            if not c.is_zero():
                acc = acc + (apow * bpows[n - k]).scale(c)
            apow = apow * a
        return acc

    n, m = max(f.num.degree, 0), max(f.den.degree, 0)
    top = homog(f.num, n)
    bot = homog(f.den, m)
    if bot.is_zero():
        raise DomainError("denominator collapses to zero under composition")
    if n > m:
        bot = bot * b ** (n - m)
    elif m > n:
        top = top * b ** (m - n)
    return RationalFunction(top, bot)


def squarefree_part(p):
    """``p = c * s * q**2`` with s monic squarefree; returns (s, q)."""
    return p.squarefree_part()


def is_square(f):
    """Return ``(c, h)`` with ``f == c * h**2`` and h monic, else None."""
    if not isinstance(f, RationalFunction):
        f = RationalFunction(f) if isinstance(f, Polynomial) else RationalFunction.const(f)
    if f.is_zero():
        raise DomainError("is_square of zero")
    c = f.num.lc()
    hn = f.num.scale(1 / c).sqrt()
    if hn is None:
        return None
    hd = f.den.sqrt()
    if hd is None:
        return None
    return c, RationalFunction(hn, hd)

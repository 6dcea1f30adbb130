"""Truncated Puiseux series in fractional powers ``t**(k/e)``.

A series is stored as ``sum(coeffs[j] * t**((val + j)/e))`` known up to
``O(t**(prec/e))``.  Every operation recomputes ``prec`` from its inputs, so
the reported precision is never larger than what the inputs justify.
"""

from __future__ import annotations

from math import gcd

from .numbers import AlgebraicNumber, as_number, is_number
from .numbers import sqrt as csqrt
from .poly import DomainError

__all__ = ["PuiseuxSeries"]

_ZERO = AlgebraicNumber(0)
_EXACT = 10**9  # precision marker for exactly known series


def _lcm(a, b):
    return a * b // gcd(a, b)


class PuiseuxSeries:
    __slots__ = ("e", "val", "coeffs", "prec")

    def __init__(self, coeffs, val=0, prec=None, e=1):
        cs = [as_number(c) if not is_number(c) else c for c in coeffs]
        if prec is None:
            prec = val + len(cs)
        cs = cs[: max(prec - val, 0)]
        # strip leading zeros into the valuation
        k = 0
        while k < len(cs) and cs[k].is_zero():
            k += 1
        cs = cs[k:]
        val += k
        while cs and cs[-1].is_zero():
            cs.pop()
        self.e = e
        self.val = val if cs else prec
        self.coeffs = cs
        self.prec = prec

    @classmethod
    def from_polynomial(cls, p, prec, e=1):
        """Series of a polynomial in ``t`` (ramification e means t = s**e)."""
        cs = []
        for k, c in enumerate(p.coeffs):
            cs.extend([_ZERO] * (e - 1) if k else [])
            cs.append(c)
        return cls(cs, 0, prec, e)

    @classmethod
    def from_rational_function(cls, f, prec):
        num = cls.from_polynomial(f.num, prec + 2 * (f.den.valuation() or 0) + 1)
        den = cls.from_polynomial(f.den, prec + 2 * (f.den.valuation() or 0) + 1)
        return (num / den).truncate(prec)

    @classmethod
    def monomial(cls, c, k, prec, e=1):
        return cls([c], k, prec, e)

    # helpers ------------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, k):
        """Coefficient of ``t**(k/e)``; raises if k is beyond the precision."""
        if k >= self.prec:
            raise DomainError(f"coefficient {k}/{self.e} beyond precision {self.prec}/{self.e}")
        j = k - self.val
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else _ZERO

    def with_ramification(self, e):
        if e == self.e:
            return self
        if e % self.e:
            raise ValueError("ramification must be a multiple")
        m = e // self.e
        cs = []
        for j, c in enumerate(self.coeffs):
            if j:
                cs.extend([_ZERO] * (m - 1))
            cs.append(c)
        return PuiseuxSeries(cs, self.val * m, self.prec * m, e)

    def truncate(self, prec):
        prec_e = prec * self.e
        if prec_e >= self.prec:
            return self
        return PuiseuxSeries(self.coeffs, self.val, prec_e, self.e)

    def _align(self, other):
        if not isinstance(other, PuiseuxSeries):
            other = PuiseuxSeries([as_number(other)], 0, _EXACT, self.e)
        e = _lcm(self.e, other.e)
        return self.with_ramification(e), other.with_ramification(e)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        a, b = self._align(other)
        prec = min(a.prec, b.prec)
        lo = min(a.val, b.val)
        hi = max(a.val + len(a.coeffs), b.val + len(b.coeffs))
        cs = [_ZERO] * max(min(prec, hi) - lo, 0)
        for s in (a, b):
            for j, c in enumerate(s.coeffs):
                k = s.val + j - lo
                if k < len(cs):
                    cs[k] = cs[k] + c
        return PuiseuxSeries(cs, lo, prec, a.e)

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries([-c for c in self.coeffs], self.val, self.prec, self.e)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PuiseuxSeries) else -as_number(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PuiseuxSeries):
            c = as_number(other)
            if c.is_zero():
                return PuiseuxSeries([], 0, _EXACT, self.e)
            return PuiseuxSeries([x * c for x in self.coeffs], self.val, self.prec, self.e)
        a, b = self._align(other)
        val = a.val + b.val
        # precision limited by the other factor's leading term
        prec = min(a.prec + b.val, b.prec + a.val)
        n = max(min(prec - val, len(a.coeffs) + len(b.coeffs) - 1), 0)
        cs = [_ZERO] * n
        for i, x in enumerate(a.coeffs[:n]):
            if x.is_zero():
                continue
            for j, y in enumerate(b.coeffs[: n - i]):
                cs[i + j] = cs[i + j] + x * y
        return PuiseuxSeries(cs, val, prec, a.e)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("series with no known nonzero term")
        if len(self.coeffs) == 1:
            return PuiseuxSeries([1 / self.coeffs[0]], -self.val, self.prec - 2 * self.val, self.e)
        n = self.prec - self.val
        if n > _EXACT // 2:
            raise DomainError("inverse of an exact series needs a finite precision; truncate first")
        a = self.coeffs + [_ZERO] * (n - len(self.coeffs))
        inv0 = 1 / a[0]
        b = [inv0]
        for k in range(1, n):
            s = _ZERO
            for j in range(1, k + 1):
                if not a[j].is_zero():
                    s = s + a[j] * b[k - j]
            b.append(-s * inv0)
        return PuiseuxSeries(b, -self.val, -self.val + n, self.e)

    def __truediv__(self, other):
        if isinstance(other, PuiseuxSeries):
            return self * other.inverse()
        return self * (1 / as_number(other))

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = PuiseuxSeries([AlgebraicNumber(1)], 0, _EXACT, self.e)
        for _ in range(k):
            out = out * self
        return out

    def sqrt(self):
        """Square root with leading coefficient the canonical root of the original one."""
        if self.is_zero():
            raise DomainError("square root of a series with no known nonzero term")
        s = self
        if s.val % 2:
            s = s.with_ramification(2 * s.e)
        n = s.prec - s.val
        if n > _EXACT // 2:
            raise DomainError("square root of an exact series needs a finite precision; truncate first")
        a = s.coeffs + [_ZERO] * (n - len(s.coeffs))
        lead = csqrt(a[0])
        inv = 1 / (2 * lead)
        h = [lead]
        for k in range(1, n):
            acc = a[k]
            for j in range(1, k):
                acc = acc - h[j] * h[k - j]
            h.append(acc * inv)
        half = s.val // 2
        return PuiseuxSeries(h, half, half + n, s.e)

    def compose_polynomial(self, p):
        """``p(self)`` for a polynomial p (Horner)."""
        if p.is_zero():
            return PuiseuxSeries([], 0, _EXACT, self.e)
        acc = PuiseuxSeries([p.coeffs[-1]], 0, _EXACT, self.e)
        for c in reversed(p.coeffs[:-1]):
            acc = acc * self + c
        return acc

    def __eq__(self, other):
        a, b = self._align(other)
        d = a - b
        return d.is_zero()

    __hash__ = None

    def __repr__(self):
        terms = []
        for j, c in enumerate(self.coeffs):
            if c.is_zero():
                continue
            k = self.val + j
            ex = f"{k}" if self.e == 1 else f"{k}/{self.e}"
            terms.append(f"({c!r})*t^({ex})")
        o = f"O(t^({self.prec}/{self.e}))" if self.e != 1 else f"O(t^{self.prec})"
        return " + ".join(terms + [o])

"""Dense univariate polynomials over tower constants."""

from __future__ import annotations

from .numbers import AlgebraicNumber, ComplexNumber, as_number, is_number

__all__ = ["Polynomial", "DomainError"]


class DomainError(ValueError):
    """Operation undefined for the given input (zero polynomial, endpoint root, ...)."""


def _num(c):
    return c if is_number(c) else as_number(c)


class Polynomial:
    """Polynomial with coefficients in ascending degree order.

    Coefficients are exact numbers; the leading coefficient is nonzero unless
    the polynomial is zero (empty coefficient tuple).
    """

    __slots__ = ("coeffs", "var")

    def __init__(self, coeffs=(), var="x"):
        cs = [_num(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.var = var

    @classmethod
    def _raw(cls, coeffs, var):
        obj = object.__new__(cls)
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        obj.coeffs = tuple(cs)
        obj.var = var
        return obj

    @classmethod
    def gen(cls, var="x"):
        return cls((0, 1), var)

    @classmethod
    def const(cls, c, var="x"):
        return cls((c,), var)

    @classmethod
    def from_roots(cls, roots, var="x"):
        p = cls.const(1, var)
        for r in roots:
            p = p * cls((-_num(r), 1), var)
        return p

    # basic properties ---------------------------------------------------

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def lc(self):
        return self.coeffs[-1] if self.coeffs else AlgebraicNumber(0)

    def coeff(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else AlgebraicNumber(0)

    def is_real(self):
        return all(not isinstance(c, ComplexNumber) for c in self.coeffs)

    def valuation(self):
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                return k
        return None

    def with_var(self, var):
        return Polynomial._raw(self.coeffs, var)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if is_number(other) or isinstance(other, int) or hasattr(other, "numerator"):
            return Polynomial((other,), self.var)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Polynomial._raw(out, self.var)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw([-c for c in self.coeffs], self.var)

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
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Polynomial._raw((), self.var)
        if len(b) == 1:
            c = b[0]
            return Polynomial._raw([x * c for x in a], self.var)
        if len(a) == 1:
            c = a[0]
            return Polynomial._raw([c * x for x in b], self.var)
        out = [None] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x.is_zero():
                continue
            for j, y in enumerate(b):
                t = x * y
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        zero = AlgebraicNumber(0)
        return Polynomial._raw([zero if c is None else c for c in out], self.var)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = Polynomial.const(1, self.var)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def scale(self, c):
        c = _num(c)
        return Polynomial._raw([x * c for x in self.coeffs], self.var)

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = o.degree
        inv_lc = 1 / o.lc()
        if len(rem) - 1 < db:
            return Polynomial._raw((), self.var), self
        quot = [AlgebraicNumber(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k]
            if c.is_zero():
                continue
            f = c * inv_lc
            quot[k - db] = f
            for j, bc in enumerate(o.coeffs):
                rem[k - db + j] = rem[k - db + j] - f * bc
        return Polynomial._raw(quot, self.var), Polynomial._raw(rem[:db], self.var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise DomainError(f"{other} does not divide {self}")
        return q

    def divides(self, other):
        return (other % self).is_zero()

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return len(self.coeffs) == len(o.coeffs) and all(a == b for a, b in zip(self.coeffs, o.coeffs))

    def __hash__(self):
        return hash(tuple(hash(c) for c in self.coeffs))

    # calculus and evaluation --------------------------------------------

    def derivative(self):
        return Polynomial._raw([c * k for k, c in enumerate(self.coeffs)][1:], self.var)

    def __call__(self, x):
        """Horner evaluation at any ring element, polynomials included."""
        if isinstance(x, (int,)) or hasattr(x, "numerator") and not is_number(x):
            x = as_number(x)
        if not self.coeffs:
            return x * 0 if not is_number(x) else AlgebraicNumber(0)
        acc = self.coeffs[-1]
        if isinstance(x, Polynomial):
            acc = Polynomial((acc,), x.var)
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def compose(self, other):
        return self(other)

    def monic(self):
        if self.is_zero():
            return self
        return self.scale(1 / self.lc())

    def conj(self):
        return Polynomial._raw([c.conjugate() for c in self.coeffs], self.var)

    def map_coeffs(self, fn):
        return Polynomial([fn(c) for c in self.coeffs], self.var)

    def reflect(self):
        """p(1 - x)"""
        return self(Polynomial((1, -1), self.var))

    # gcd family ---------------------------------------------------------

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_decomposition(self):
        """Yun's algorithm: ``p = lc * prod(a_i**i)``; returns (lc, [a_1, a_2, ...])."""
        if self.is_zero():
            raise DomainError("squarefree decomposition of the zero polynomial")
        lc = self.lc()
        f = self.monic()
        if f.degree <= 0:
            return lc, []
        fp = f.derivative()
        a0 = f.gcd(fp)
        b = f.exact_div(a0)
        c = fp.exact_div(a0)
        d = c - b.derivative()
        parts = []
        while b.degree > 0:
            a = b.gcd(d)
            b = b.exact_div(a)
            c = d.exact_div(a)
            d = c - b.derivative()
            parts.append(a)
        while parts and parts[-1].degree == 0:
            parts.pop()
        return lc, parts

    def squarefree_part(self):
        """Return (s, q) with ``p = c * s * q**2``, s monic squarefree."""
        if self.is_zero():
            raise DomainError("squarefree part of the zero polynomial")
        _, parts = self.squarefree_decomposition()
        one = Polynomial.const(1, self.var)
        s, q = one, one
        for i, a in enumerate(parts, start=1):
            if i % 2:
                s = s * a
            q = q * a ** (i // 2)
        return s, q

    def is_squarefree(self):
        return not self.is_zero() and self.gcd(self.derivative()).degree == 0

    def sqrt(self):
        """Exact polynomial square root ``h`` with ``h*h == self``, or None.

        The root is normalized so its leading coefficient is the canonical
        square root of the leading coefficient.
        """
        from .numbers import sqrt as csqrt

        if self.is_zero():
            return self
        n = self.degree
        if n % 2:
            return None
        m = n // 2
        lead = csqrt(self.lc())
        h = [None] * (m + 1)
        h[m] = lead
        two_lead = 2 * lead
        for k in range(m - 1, -1, -1):
            # coefficient of x^(m+k) in h^2 equals self.coeffs[m+k]
            acc = self.coeff(m + k)
            s = AlgebraicNumber(0)
            for i in range(k + 1, m + 1):
                j = m + k - i
                if k < j <= m:
                    s = s + h[i] * h[j]
            h[k] = (acc - s) / two_lead
        root = Polynomial._raw(h, self.var)
        return root if root * root == self else None

    # real roots ---------------------------------------------------------

    def sturm_sequence(self):
        seq = [self, self.derivative()]
        while not seq[-1].is_zero():
            r = seq[-2] % seq[-1]
            seq.append(-r)
        return seq[:-1]

    def sturm_root_count(self, lo, hi):
        """Number of distinct real roots in the open interval (lo, hi)."""
        if self.is_zero():
            raise DomainError("root count of the zero polynomial")
        if not self.is_real():
            raise DomainError("Sturm counting needs real coefficients")
        lo, hi = _num(lo), _num(hi)
        if not lo < hi:
            raise DomainError("empty interval")
        if self(lo).is_zero() or self(hi).is_zero():
            raise DomainError("polynomial vanishes at an interval endpoint; deflate first")
        seq = self.sturm_sequence()
        return _sign_changes(seq, lo) - _sign_changes(seq, hi)

    def sign_at(self, x):
        return self(_num(x)).sign()

    # display ------------------------------------------------------------

    def __repr__(self):
        return self.to_str()

    def to_str(self, latex=False):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            terms.append(_term(c, k, self.var, latex))
        s = terms[0]
        for t in terms[1:]:
            s += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return s

    def latex(self):
        return self.to_str(latex=True)


def _sign_changes(seq, x):
    signs = [s for s in (p.sign_at(x) for p in seq) if s]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _coef_str(c, latex):
    s = c.latex() if latex else repr(c)
    rational = isinstance(c, AlgebraicNumber) and c.is_rational()
    if not rational or (not latex and "/" in s):
        s = f"({s})"
    return s


def _term(c, k, var, latex):
    mono = "" if k == 0 else (var if k == 1 else (f"{var}^{{{k}}}" if latex else f"{var}^{k}"))
    if k == 0:
        s = c.latex() if latex else repr(c)
        if isinstance(c, ComplexNumber) or (isinstance(c, AlgebraicNumber) and not c.is_rational() and sum(1 for v in c.coords if v) > 1):
            s = f"({s})"
        return s
    if c == 1:
        return mono
    if c == -1:
        return "-" + mono
    neg = isinstance(c, AlgebraicNumber) and c.is_rational() and c.sign() < 0
    cs = _coef_str(-c if neg else c, latex)
    sep = " " if latex else "*"
    return ("-" if neg else "") + cs + sep + mono

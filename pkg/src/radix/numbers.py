"""Exact constants: towers of real quadratic extensions of Q, plus complex pairs.

An :class:`AlgebraicNumber` lives in ``Q(sqrt(d_1), ..., sqrt(d_m))`` where every
``d_j`` is a positive element of the field generated by the earlier roots and is
not a square there.  Coordinates are stored densely over the basis of square-root
products, bit ``j`` of the index standing for ``sqrt(d_j)``.  Because each
adjunction is checked to be proper, coordinates are canonical and equality is
coordinate equality.

Real generators are always the positive root, so every tower has a fixed real
embedding and signs are decided exactly with interval arithmetic.
:class:`ComplexNumber` is a pair of real tower elements.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from mpmath import iv, mp

try:  # gmpy2 rationals are several times faster than Fraction
    from gmpy2 import mpq as Q
    from gmpy2 import isqrt, is_square as _is_square_int
except ImportError:  # pragma: no cover - exercised only without gmpy2
    from math import isqrt

    Q = Fraction

    def _is_square_int(n):
        return n >= 0 and isqrt(n) ** 2 == n


__all__ = [
    "Q",
    "Tower",
    "AlgebraicNumber",
    "ComplexNumber",
    "I",
    "as_number",
    "sqrt",
    "is_number",
    "conj",
    "re_part",
    "im_part",
]

_ZERO = Q(0)
_ONE = Q(1)
_iv_lock = threading.Lock()


# ---------------------------------------------------------------------------
# dense coordinate kernels


def _is_zero(x):
    return not any(x)


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def _scale(x, c):
    return tuple(a * c for a in x)


def _mul(x, y, rads, k):
    if k == 0:
        return (x[0] * y[0],)
    h = 1 << (k - 1)
    u, v = x[:h], x[h:]
    w, z = y[:h], y[h:]
    vz0 = _is_zero(v)
    zz0 = _is_zero(z)
    if vz0 and zz0:
        return _mul(u, w, rads, k - 1) + (_ZERO,) * h
    if vz0:
        return _mul(u, w, rads, k - 1) + _mul(u, z, rads, k - 1)
    if zz0:
        return _mul(u, w, rads, k - 1) + _mul(v, w, rads, k - 1)
    lo = _add(_mul(u, w, rads, k - 1), _mul(_mul(v, z, rads, k - 1), rads[k - 1], rads, k - 1))
    hi = _add(_mul(u, z, rads, k - 1), _mul(v, w, rads, k - 1))
    return lo + hi


def _inv(x, rads, k):
    if k == 0:
        if not x[0]:
            raise ZeroDivisionError("division by zero in tower")
        return (_ONE / x[0],)
    h = 1 << (k - 1)
    u, v = x[:h], x[h:]
    if _is_zero(v):
        return _inv(u, rads, k - 1) + (_ZERO,) * h
    d = rads[k - 1]
    norm = _sub(_mul(u, u, rads, k - 1), _mul(_mul(v, v, rads, k - 1), d, rads, k - 1))
    ni = _inv(norm, rads, k - 1)
    return _mul(u, ni, rads, k - 1) + tuple(-c for c in _mul(v, ni, rads, k - 1))


def _rational_sqrt(q):
    if q < 0:
        return None
    q = Q(q)
    n, d = int(q.numerator), int(q.denominator)
    if _is_square_int(n) and _is_square_int(d):
        return Q(int(isqrt(n)), int(isqrt(d)))
    return None


def _sqrt_in(x, rads, k):
    """Square root of ``x`` inside the level-``k`` field, or None."""
    if k == 0:
        r = _rational_sqrt(x[0])
        return None if r is None else (r,)
    h = 1 << (k - 1)
    u, v = x[:h], x[h:]
    zeros = (_ZERO,) * h
    if _is_zero(v):
        r = _sqrt_in(u, rads, k - 1)
        if r is not None:
            return r + zeros
        if _is_zero(u):
            return u + zeros
        t = _sqrt_in(_mul(u, _inv(rads[k - 1], rads, k - 1), rads, k - 1), rads, k - 1)
        if t is not None:
            return zeros + t
        return None
    d = rads[k - 1]
    norm = _sub(_mul(u, u, rads, k - 1), _mul(_mul(v, v, rads, k - 1), d, rads, k - 1))
    n = _sqrt_in(norm, rads, k - 1)
    if n is None:
        return None
    half = Q(1, 2)
    for cand in (_add(u, n), _sub(u, n)):
        p = _sqrt_in(_scale(cand, half), rads, k - 1)
        if p is not None and not _is_zero(p):
            q = _mul(v, _inv(_scale(p, Q(2)), rads, k - 1), rads, k - 1)
            return p + q
    return None


def _squarefree_split(m, bound=2000):
    """Return (s, r) with m = s**2 * r, removing small prime squares only."""
    s = 1
    p = 2
    while p <= bound and p * p <= m:
        while m % (p * p) == 0:
            m //= p * p
            s *= p
        p += 1 if p == 2 else 2
    return s, m


# ---------------------------------------------------------------------------
# towers


class Tower:
    """A chain Q = K_0 < K_1 < ... < K_m of real quadratic extensions.

    Towers are interned: equal radicand sequences give the same object.
    """

    _interned: dict = {}
    _lock = threading.Lock()

    def __new__(cls, radicands=()):
        key = tuple(tuple(Q(c) for c in r) for r in radicands)
        with cls._lock:
            t = cls._interned.get(key)
            if t is None:
                t = object.__new__(cls)
                t.radicands = key
                t.n = len(key)
                t.size = 1 << t.n
                t._iv_cache = {}
                t._float_cache = None
                t._embed_cache = {}
                cls._interned[key] = t
        return t

    def __reduce__(self):
        return (Tower, (self.radicands,))

    @classmethod
    def rationals(cls):
        return cls(())

    def adjoin(self, radicand):
        return Tower(self.radicands + (tuple(radicand),))

    def prefix(self, n):
        return Tower(self.radicands[:n])

    def is_prefix_of(self, other):
        return other.n >= self.n and other.radicands[: self.n] == self.radicands

    def generator(self, j):
        coords = [_ZERO] * self.size
        coords[1 << j] = _ONE
        return AlgebraicNumber._raw(self, tuple(coords))

    def radicand(self, j):
        r = self.radicands[j]
        return AlgebraicNumber._raw(self, tuple(r) + (_ZERO,) * (self.size - len(r)))

    # numerics -----------------------------------------------------------

    def generator_intervals(self, prec):
        hit = self._iv_cache.get(prec)
        if hit is not None:
            return hit
        gens = []
        for j, r in enumerate(self.radicands):
            val = _iv_eval(r, gens)
            gens.append(iv.sqrt(val))
        self._iv_cache[prec] = gens
        return gens

    def generator_floats(self):
        if self._float_cache is None:
            with mp.workprec(160):
                gens = []
                for r in self.radicands:
                    val = _mp_eval(r, gens)
                    gens.append(mp.sqrt(val))
                self._float_cache = gens
        return self._float_cache

    def __repr__(self):
        if not self.n:
            return "Tower(Q)"
        names = ", ".join(_generator_name(self, j) for j in range(self.n))
        return f"Tower(Q({names}))"

    def describe(self):
        return [_generator_name(self, j) for j in range(self.n)]


def _iv_eval(coords, gens):
    total = iv.mpf(0)
    for m, c in enumerate(coords):
        if not c:
            continue
        term = iv.mpf(int(Q(c).numerator)) / iv.mpf(int(Q(c).denominator))
        j = 0
        while m:
            if m & 1:
                term = term * gens[j]
            m >>= 1
            j += 1
        total = total + term
    return total


def _mp_eval(coords, gens):
    total = mp.mpf(0)
    for m, c in enumerate(coords):
        if not c:
            continue
        term = mp.mpf(int(Q(c).numerator)) / int(Q(c).denominator)
        j = 0
        while m:
            if m & 1:
                term = term * gens[j]
            m >>= 1
            j += 1
        total += term
    return total


def _generator_name(tower, j):
    rad = AlgebraicNumber._raw(tower.prefix(j), tower.radicands[j])
    return f"sqrt({rad})"


def _embed_images(src, dst):
    """Images of the generators of ``src`` inside an extension of ``dst``."""
    key = src
    hit = dst._embed_cache.get(key)
    if hit is not None:
        return hit
    images = []
    cur = dst
    for j, r in enumerate(src.radicands):
        val = AlgebraicNumber._raw(cur, (_ZERO,) * cur.size)
        for m, c in enumerate(r):
            if not c:
                continue
            term = AlgebraicNumber(c, cur)
            for b in range(j):
                if m >> b & 1:
                    term = term * images[b]
            val = val + term
        cur = val.tower if val.tower.n > cur.n else cur
        images = [im._in(cur) for im in images]
        val = val._in(cur)
        root = _sqrt_in(val.coords, cur.radicands, cur.n)
        if root is not None:
            img = AlgebraicNumber._raw(cur, root)
            if img.sign() < 0:
                img = -img
        else:
            cur = cur.adjoin(val.coords)
            images = [im._in(cur) for im in images]
            img = cur.generator(cur.n - 1)
        images.append(img)
    images = [im._in(cur) for im in images]
    out = (cur, images)
    dst._embed_cache[key] = out
    return out


def _common(a, b):
    ta, tb = a.tower, b.tower
    if ta is tb:
        return a.coords, b.coords, ta
    if ta.is_prefix_of(tb):
        return a._in(tb).coords, b.coords, tb
    if tb.is_prefix_of(ta):
        return a.coords, b._in(ta).coords, ta
    # incompatible towers: embed the smaller one into the larger
    if ta.n < tb.n:
        b2, a2 = _merge(b, a)
        return a2.coords, b2.coords, a2.tower
    a2, b2 = _merge(a, b)
    return a2.coords, b2.coords, a2.tower


def _merge(big, small):
    cur, images = _embed_images(small.tower, big.tower)
    acc = AlgebraicNumber._raw(cur, (_ZERO,) * cur.size)
    for m, c in enumerate(small.coords):
        if not c:
            continue
        term = AlgebraicNumber._raw(cur, (Q(c),) + (_ZERO,) * (cur.size - 1))
        for b in range(small.tower.n):
            if m >> b & 1:
                term = term * images[b]
        acc = acc + term
    return big._in(acc.tower), acc


# ---------------------------------------------------------------------------
# numbers


class AlgebraicNumber:
    """Real element of a quadratic tower; immutable."""

    __slots__ = ("tower", "coords")

    def __init__(self, value=0, tower=None):
        tower = tower or Tower.rationals()
        if isinstance(value, AlgebraicNumber):
            self.tower, self.coords = value.tower, value.coords
            return
        if isinstance(value, float):
            raise TypeError("floats are not exact; use Fraction or a string")
        q = Q(value)
        self.tower = tower
        self.coords = (q,) + (_ZERO,) * (tower.size - 1)

    @classmethod
    def _raw(cls, tower, coords):
        obj = object.__new__(cls)
        obj.tower = tower
        obj.coords = tuple(coords)
        return obj

    def _in(self, tower):
        if tower is self.tower:
            return self
        pad = (_ZERO,) * (tower.size - self.tower.size)
        return AlgebraicNumber._raw(tower, self.coords + pad)

    # predicates ---------------------------------------------------------

    def is_zero(self):
        return not any(self.coords)

    def is_rational(self):
        return not any(self.coords[1:])

    def is_real(self):
        return True

    def rational(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def sign(self):
        if self.is_zero():
            return 0
        if self.is_rational():
            return 1 if self.coords[0] > 0 else -1
        prec = 64
        with _iv_lock:
            old = iv.prec
            try:
                while prec <= 1 << 16:
                    iv.prec = prec
                    val = _iv_eval(self.coords, self.tower.generator_intervals(prec))
                    if val.a > 0:
                        return 1
                    if val.b < 0:
                        return -1
                    prec *= 2
            finally:
                iv.prec = old
        raise ArithmeticError("could not separate a nonzero number from zero")

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            return other
        if isinstance(other, ComplexNumber):
            return None
        if isinstance(other, (int, Fraction)) or type(other) is type(_ZERO):
            return AlgebraicNumber._raw(self.tower, (Q(other),) + (_ZERO,) * (self.tower.size - 1))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        x, y, t = _common(self, o)
        return AlgebraicNumber._raw(t, _add(x, y))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        x, y, t = _common(self, o)
        return AlgebraicNumber._raw(t, _sub(x, y))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return AlgebraicNumber._raw(self.tower, tuple(-c for c in self.coords))

    def __pos__(self):
        return self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            return AlgebraicNumber._raw(self.tower, _scale(self.coords, o.coords[0]))._in_max(o)
        if self.is_rational():
            return AlgebraicNumber._raw(o.tower, _scale(o.coords, self.coords[0]))._in_max(self)
        x, y, t = _common(self, o)
        return AlgebraicNumber._raw(t, _mul(x, y, t.radicands, t.n))

    __rmul__ = __mul__

    def _in_max(self, other):
        if other.tower.n > self.tower.n and self.tower.is_prefix_of(other.tower):
            return self._in(other.tower)
        return self

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero")
        t = self.tower
        return AlgebraicNumber._raw(t, _inv(self.coords, t.radicands, t.n))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            if not o.coords[0]:
                raise ZeroDivisionError("division by zero")
            return AlgebraicNumber._raw(self.tower, _scale(self.coords, _ONE / o.coords[0]))
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = AlgebraicNumber(1, self.tower)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, ComplexNumber):
            return other == self
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        x, y, _ = _common(self, o)
        return x == y

    def __hash__(self):
        if self.is_rational():
            c = self.coords[0]
            return hash(Fraction(int(c.numerator), int(c.denominator)))
        return hash("irrational-algebraic")

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return not self.is_zero()

    def conjugate(self):
        return self

    @property
    def real(self):
        return self

    @property
    def imag(self):
        return AlgebraicNumber(0, self.tower)

    def abs2(self):
        return self * self

    # conversions --------------------------------------------------------

    def to_mpf(self, prec=120):
        with mp.workprec(prec):
            return +_mp_eval(self.coords, self.tower.generator_floats())

    def __float__(self):
        if self.is_rational():
            return float(self.coords[0])
        return float(self.to_mpf())

    def __complex__(self):
        return complex(float(self))

    def sqrt(self):
        return sqrt(self)

    def __repr__(self):
        return _format(self, latex=False)

    def latex(self):
        return _format(self, latex=True)


def _format(x, latex):
    if x.is_rational():
        return _fmt_q(x.coords[0], latex)
    parts = []
    for m, c in enumerate(x.coords):
        if not c:
            continue
        mono = []
        for j in range(x.tower.n):
            if m >> j & 1:
                rad = AlgebraicNumber._raw(x.tower.prefix(j), x.tower.radicands[j])
                inner = _format(rad, latex)
                mono.append(f"\\sqrt{{{inner}}}" if latex else f"sqrt({inner})")
        mul = " " if latex else "*"
        mono_s = mul.join(mono)
        if not mono:
            parts.append(_fmt_q(c, latex))
        elif c == 1:
            parts.append(mono_s)
        elif c == -1:
            parts.append("-" + mono_s)
        else:
            parts.append(f"{_fmt_q(c, latex, wrap=True)}{mul}{mono_s}")
    s = parts[0]
    for p in parts[1:]:
        s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return s


def _fmt_q(c, latex, wrap=False):
    c = Q(c)
    n, d = int(c.numerator), int(c.denominator)
    if d == 1:
        return str(n)
    if latex:
        sign = "-" if n < 0 else ""
        return f"{sign}\\frac{{{abs(n)}}}{{{d}}}"
    s = f"{n}/{d}"
    return f"({s})" if wrap else s


class ComplexNumber:
    """``re + i*im`` with real tower parts.  Arithmetic collapses to
    :class:`AlgebraicNumber` whenever the imaginary part vanishes."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = as_number(re)
        self.im = as_number(im)
        if isinstance(self.re, ComplexNumber) or isinstance(self.im, ComplexNumber):
            raise TypeError("components must be real")

    def is_zero(self):
        return self.re.is_zero() and self.im.is_zero()

    def is_real(self):
        return self.im.is_zero()

    def is_rational(self):
        return self.is_real() and self.re.is_rational()

    @property
    def real(self):
        return self.re

    @property
    def imag(self):
        return self.im

    def conjugate(self):
        return _mk(self.re, -self.im)

    def abs2(self):
        return self.re * self.re + self.im * self.im

    @staticmethod
    def _parts(other):
        if isinstance(other, ComplexNumber):
            return other.re, other.im
        if isinstance(other, AlgebraicNumber):
            return other, AlgebraicNumber(0)
        if isinstance(other, (int, Fraction)) or type(other) is type(_ZERO):
            return AlgebraicNumber(other), AlgebraicNumber(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _mk(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _mk(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _mk(p[0] - self.re, p[1] - self.im)

    def __neg__(self):
        return ComplexNumber(-self.re, -self.im)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        if d.is_zero():
            return _mk(a * c, b * c)
        return _mk(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def inverse(self):
        n = self.abs2()
        if n.is_zero():
            raise ZeroDivisionError("division by zero")
        return _mk(self.re / n, -self.im / n)

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        if p[1].is_zero():
            return _mk(self.re / p[0], self.im / p[0])
        return self * ComplexNumber(*p).inverse()

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _mk(*p) * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = AlgebraicNumber(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im.is_zero():
            return hash(self.re)
        return hash(("complex", hash(self.re), hash(self.im)))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_mpc(self, prec=120):
        with mp.workprec(prec):
            return mp.mpc(self.re.to_mpf(prec), self.im.to_mpf(prec))

    def sqrt(self):
        return sqrt(self)

    def __repr__(self):
        return _format_complex(self, latex=False)

    def latex(self):
        return _format_complex(self, latex=True)


def _format_complex(z, latex):
    unit = "i"
    if z.re.is_zero():
        if z.im == 1:
            return unit
        if z.im == -1:
            return "-" + unit
        s = _format(z.im, latex)
        return f"({s}){'' if latex else '*'}{unit}" if _needs_parens(z.im) else f"{s}{'' if latex else '*'}{unit}"
    ims = _format(z.im, latex)
    im_part = unit if z.im == 1 else f"({ims}){'' if latex else '*'}{unit}"
    return f"{_format(z.re, latex)} + {im_part}"


def _needs_parens(x):
    return not x.is_rational() and sum(1 for c in x.coords if c) > 1


def _mk(re, im):
    if im.is_zero():
        return re
    return ComplexNumber(re, im)



# ---------------------------------------------------------------------------
# helpers


def is_number(x):
    return isinstance(x, (AlgebraicNumber, ComplexNumber))


def as_number(x):
    """Coerce ints, Fractions, mpq and numbers into the exact number types."""
    if isinstance(x, (AlgebraicNumber, ComplexNumber)):
        return x
    if isinstance(x, str):
        return AlgebraicNumber(Q(Fraction(x)))
    if isinstance(x, complex):
        raise TypeError("complex floats are not exact")
    return AlgebraicNumber(x)


def conj(x):
    return as_number(x).conjugate()


def re_part(x):
    x = as_number(x)
    return x.re if isinstance(x, ComplexNumber) else x


def im_part(x):
    x = as_number(x)
    return x.im if isinstance(x, ComplexNumber) else AlgebraicNumber(0)


def _real_sqrt(x):
    """Positive square root of a positive real tower element."""
    t = x.tower
    root = _sqrt_in(x.coords, t.radicands, t.n)
    if root is not None:
        r = AlgebraicNumber._raw(t, root)
        return -r if r.sign() < 0 else r
    if x.is_rational():
        q = x.coords[0]
        num, den = int(q.numerator), int(q.denominator)
        s, m = _squarefree_split(num * den)
        nt = t.adjoin((Q(m),) + (_ZERO,) * (t.size - 1))
        return nt.generator(nt.n - 1) * Q(s, den)
    nt = t.adjoin(x.coords)
    return nt.generator(nt.n - 1)


def sqrt(x):
    """Canonical square root.

    Positive reals get the positive root, negative reals ``i*sqrt(-x)``, and
    non-real numbers the principal root (non-negative real part).  The choice
    is a function of the value only, so repeated calls agree.
    """
    x = as_number(x)
    if x.is_zero():
        return AlgebraicNumber(0)
    if isinstance(x, ComplexNumber):
        a, b = x.re, x.im
        modulus = _real_sqrt(a * a + b * b)
        re = _real_sqrt((modulus + a) / 2)
        # re > 0 because b != 0; re*im = b/2 fixes the imaginary part
        return _mk(re, b / (2 * re))
    if x.sign() > 0:
        return _real_sqrt(x)
    return ComplexNumber(AlgebraicNumber(0), _real_sqrt(-x))


I = ComplexNumber(0, 1)

"""Nested integrals as words of letters.

A word ``(f_1, ..., f_k)`` with base point 0 stands for
``int_0^x f_1(t_1) int_0^{t_1} f_2(t_2) ... dt_k ... dt_1``; with base point 1
every inner integral runs from its outer variable up to 1 instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import mpmath
import numpy as np
from scipy.special import expit, sici

from .numbers import AlgebraicNumber, ComplexNumber, as_number, im_part, is_number, re_part
from .numbers import sqrt as S
from .poly import DomainError, Polynomial
from .ratfunc import RationalFunction, compose, is_square

from ._kernels_py import nested_layers as _numpy_layers

try:
    from ._kernels import nested_layers as _compiled_layers
    KERNEL = "compiled"
except ImportError:  # pragma: no cover - depends on the build
    _compiled_layers = None
    KERNEL = "numpy"

# above this grid size the BLAS matvec of the numpy path beats the compiled loop
COMPILED_MAX_NODES = 128


def nested_layers(vals, jac, sigma, h):
    if _compiled_layers is not None and vals.shape[1] <= COMPILED_MAX_NODES:
        return _compiled_layers(vals, jac, sigma, h)
    return _numpy_layers(vals, jac, sigma, h)

__all__ = [
    "Letter",
    "IntegralWord",
    "WordCombination",
    "DivergenceError",
    "AccuracyError",
    "UsageError",
    "sign_constant",
    "shuffle",
    "transform_word",
    "partial_fraction_letters",
    "expand_word",
    "eval_word",
    "KERNEL",
]

VAR = "t"


class UsageError(ValueError):
    pass


class DivergenceError(ValueError):
    pass


class AccuracyError(RuntimeError):
    def __init__(self, msg, estimate=None):
        super().__init__(msg)
        self.estimate = estimate


def _csgn(v):
    if isinstance(v, ComplexNumber):
        r = re_part(v)
        return r.sign() if not r.is_zero() else im_part(v).sign()
    return v.sign()


def sign_constant(a, base=0):
    """Sign making ``c/(x - a)`` positive just inside the integration range at the base point."""
    a = as_number(a)
    v = (1 - a) if base == 1 else -a
    if v.is_zero():
        return -1 if base == 1 else 1
    return _csgn(v)


def _canon_roots(roots):
    roots = [as_number(r) for r in roots]
    if len(set(map(repr, roots))) != len(roots):
        raise UsageError("square-root letters need distinct roots")
    # real roots ascending, then the others by real and imaginary part
    return tuple(sorted(roots, key=lambda r: (not r.is_real(), complex(r).real, complex(r).imag)))


@dataclass(frozen=True)
class Letter:
    kind: str  # rat | sqrt | ratsqrt | powsqrt | generic
    a: object = None
    roots: tuple = ()
    j: int = 0
    rf: RationalFunction | None = None
    meta: tuple = field(default=(), compare=False, hash=False)  # partial fractions of a generic letter

    # constructors ---------------------------------------------------------

    @classmethod
    def rat(cls, a):
        return cls("rat", as_number(a))

    @classmethod
    def sqrt_set(cls, roots):
        roots = _canon_roots(roots)
        if len(roots) < 2:
            raise UsageError("a square-root letter needs at least two roots")
        return cls("sqrt", roots=roots)

    @classmethod
    def rat_sqrt(cls, a, roots):
        a = as_number(a)
        roots = _canon_roots(roots)
        if not roots:
            raise UsageError("need at least one square-root factor")
        if any(a == r for r in roots):
            raise UsageError(f"the rational pole {a!r} may not occur among the square-root roots")
        return cls("ratsqrt", a, roots)

    @classmethod
    def power_sqrt(cls, roots, j):
        roots = _canon_roots(roots)
        if not 1 <= j <= len(roots) - 2:
            raise UsageError(f"power j = {j} must lie in 1..{len(roots) - 2}")
        return cls("powsqrt", roots=roots, j=j)

    @classmethod
    def generic(cls, rf, meta=()):
        if not isinstance(rf, RationalFunction):
            rf = RationalFunction(rf) if isinstance(rf, Polynomial) else RationalFunction.const(rf, VAR)
        return cls("generic", rf=rf.with_var(VAR), meta=tuple(meta))

    # structure --------------------------------------------------------

    def rational_part(self, base):
        t = Polynomial.gen(VAR)
        if self.kind in ("rat", "ratsqrt"):
            return RationalFunction(Polynomial.const(sign_constant(self.a, base), VAR), t - self.a)
        if self.kind == "powsqrt":
            return RationalFunction(t**self.j)
        if self.kind == "generic":
            return self.rf
        return RationalFunction.const(1, VAR)

    def sqrt_factors(self, base):
        return [(sign_constant(r, base), r) for r in self.roots]

    def to_str(self):
        def n(v):
            s = repr(v)
            return s if _atomic(s) else f"({s})"

        def rs():
            return "{" + ",".join(n(r) for r in self.roots) + "}"

        if self.kind == "rat":
            return n(self.a)
        if self.kind == "sqrt":
            return rs()
        if self.kind == "ratsqrt":
            return f"({n(self.a)},{rs()})"
        if self.kind == "powsqrt":
            return f"({rs()},{self.j})"
        return f"R({self.rf})"

    def latex(self):
        def n(v):
            return v.latex()

        if self.kind == "rat":
            return n(self.a)
        rs = "\\{" + ",".join(n(r) for r in self.roots) + "\\}"
        if self.kind == "sqrt":
            return rs
        if self.kind == "ratsqrt":
            return f"({n(self.a)},{rs})"
        if self.kind == "powsqrt":
            return f"({rs},{self.j})"
        return f"\\left[{self.rf.latex()}\\right]"

    def __repr__(self):
        return self.to_str()

    # analysis ---------------------------------------------------------

    def order_at(self, point):
        """Exponent e with letter ~ (t - point)**e near ``point``."""
        p = as_number(point)
        if self.kind == "generic":
            sh = Polynomial((p, 1), VAR)
            num = self.rf.num(sh)
            den = self.rf.den(sh)
            return (num.valuation() or 0) - (den.valuation() or 0)
        e = 0.0
        if self.kind in ("rat", "ratsqrt") and self.a == p:
            e -= 1
        e -= 0.5 * sum(1 for r in self.roots if r == p)
        if self.kind == "powsqrt" and p.is_zero():
            e += self.j
        return e

    def poles(self):
        """Points where the letter is not integrable (order <= -1), as numbers."""
        if self.kind in ("rat", "ratsqrt"):
            return [self.a]
        if self.kind == "generic":
            return [complex(r) for r in np.roots([complex(c) for c in reversed(self.rf.den.coeffs)])] \
                if self.rf.den.degree > 0 else []
        return []

    def numeric(self, base, s, d, e, xend, sigma):
        """Letter values at points ``s = base + sigma*d = xend - sigma*e``."""
        out = np.ones_like(d, dtype=complex)

        def diff(a):
            # s - a, measured from whichever endpoint is closer to a
            ac = complex(a)
            if abs(base - ac) <= abs(xend - ac):
                return (base - ac) + sigma * d
            return (xend - ac) - sigma * e

        if self.kind == "generic":
            return _generic_values(self.rf, base, sigma, d, s)
        if self.kind in ("rat", "ratsqrt"):
            out = out * complex(sign_constant(self.a, base)) / diff(self.a)
        for r in self.roots:
            out = out * np.sqrt(complex(sign_constant(r, base)) / diff(r))
        if self.kind == "powsqrt":
            out = out * s**self.j
        return out


def _atomic(s):
    return all(ch not in s for ch in " +*/") or (s.startswith("-") and _atomic(s[1:]))


def _generic_values(rf, base, sigma, d, s):
    sh = Polynomial((as_number(int(base)), as_number(int(sigma))), VAR)
    num = [complex(c) for c in rf.num(sh).coeffs]
    den = [complex(c) for c in rf.den(sh).coeffs]
    nv = np.polyval(num[::-1], d) if num else np.zeros_like(d, dtype=complex)
    dv = np.polyval(den[::-1], d)
    return nv / dv


@dataclass(frozen=True)
class IntegralWord:
    letters: tuple = ()
    base: int = 0
    prefactor: object = field(default_factory=lambda: AlgebraicNumber(1))

    def __post_init__(self):
        if self.base not in (0, 1):
            raise UsageError("base point must be 0 or 1")
        object.__setattr__(self, "letters", tuple(self.letters))
        object.__setattr__(self, "prefactor", as_number(self.prefactor))

    def __len__(self):
        return len(self.letters)

    def to_str(self):
        body = f"H[{','.join(l.to_str() for l in self.letters)}; base={self.base}]"
        if self.prefactor == 1:
            return body
        p = repr(self.prefactor)
        if _atomic(p):
            return f"{p}*{body}"
        if p.startswith("-") and _atomic(p[1:].replace("/", "")):
            return f"-({p[1:]})*{body}"
        return f"({p})*{body}"

    def latex(self):
        idx = ",".join(l.latex() for l in self.letters)
        arg = "x"
        body = f"\\mathrm{{H}}_{{{idx}}}({arg})" if self.letters else "1"
        if self.prefactor == 1:
            return body
        return f"{self.prefactor.latex()}\\,{body}"

    def __repr__(self):
        return self.to_str()


class WordCombination:
    """Linear combination of words; keys are (letters, base)."""

    def __init__(self, terms=None):
        self.terms = {}
        for key, c in (terms or {}).items():
            self._add(key, c)

    @classmethod
    def of(cls, word):
        return cls({(word.letters, word.base): word.prefactor})

    def _add(self, key, c):
        c = as_number(c)
        cur = self.terms.get(key)
        v = c if cur is None else cur + c
        if v.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = v

    def __add__(self, other):
        out = WordCombination(self.terms)
        for k, c in other.terms.items():
            out._add(k, c)
        return out

    def scale(self, c):
        return WordCombination({k: v * c for k, v in self.terms.items()})

    def words(self):
        return [IntegralWord(k[0], k[1], c) for k, c in self.sorted_items()]

    def sorted_items(self):
        return sorted(self.terms.items(), key=lambda kv: (len(kv[0][0]), kv[0][1], [l.to_str() for l in kv[0][0]]))

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if not isinstance(other, WordCombination):
            return NotImplemented
        return self.terms.keys() == other.terms.keys() and all(self.terms[k] == other.terms[k] for k in self.terms)

    def to_str(self):
        if not self.terms:
            return "0"
        parts = [w.to_str() for w in self.words()]
        s = parts[0]
        for p in parts[1:]:
            s += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return s

    def __repr__(self):
        return self.to_str()

    def latex(self):
        return " + ".join(w.latex() for w in self.words()) or "0"

    def evaluate(self, x, tol=1e-10):
        return sum(eval_word(w, x, tol) for w in self.words())


# shuffle ------------------------------------------------------------------


def _simple_poles_only(w):
    for l in w.letters:
        if l.order_at(w.base) < -1:
            raise UsageError(f"letter {l} has a pole of higher order at the base point; shuffle needs simple poles")


def shuffle(u, v):
    """Sum over order-preserving interleavings of the two words."""
    if u.base != v.base:
        raise UsageError("shuffle of words with different base points")
    _simple_poles_only(u)
    _simple_poles_only(v)
    a, b = u.letters, v.letters
    n = len(a) + len(b)
    out = WordCombination()
    coeff = u.prefactor * v.prefactor
    for pos in combinations(range(n), len(a)):
        ia, ib, word = iter(a), iter(b), []
        ps = set(pos)
        for k in range(n):
            word.append(next(ia) if k in ps else next(ib))
        out._add((tuple(word), u.base), coeff)
    return out


# change of variables -----------------------------------------------------------


def _numeric_branch(letter, base, g, u0):
    """Product of principal square roots of the letter's factors at x = g(u0)."""
    with mpmath.workprec(120):
        x0 = _mp_rf(g, u0)
        val = mpmath.mpc(1)
        for c, r in letter.sqrt_factors(base):
            rv = r.to_mpc(120) if isinstance(r, ComplexNumber) else r.to_mpf(120)
            val *= mpmath.sqrt(int(c) / (x0 - rv))
        return val


def _mp_rf(f, y):
    def ev(p):
        acc = mpmath.mpc(0)
        for c in reversed(p.coeffs):
            acc = acc * y + (c.to_mpc(120) if isinstance(c, ComplexNumber) else c.to_mpf(120))
        return acc

    return ev(f.num) / ev(f.den)


def _normalize_letter(f):
    """Split ``f = scalar * letter`` with the lowest-order numerator coefficient of ``letter`` equal to 1."""
    k = f.num.valuation()
    c = f.num.coeff(k)
    return c, f * (1 / c)


def transform_word(w, t):
    """Apply ``x = g(u)`` to every level; square roots are replaced by their rational images."""
    g = t.g.with_var(VAR)
    if w.base == 0:
        if not g(0).is_zero():
            raise UsageError("g(0) != 0, so base point 0 is not preserved")
        u0 = mpmath.mpf(1) / 1000
    else:
        if t.variant == "general" or g.den(as_number(1)).is_zero() or not g(1) == 1:
            raise UsageError("base point 1 needs a transformation with g(1) = 1 (a [0,1] variant)")
        u0 = 1 - mpmath.mpf(1) / 1000
    dg = g.derivative()
    pref = w.prefactor
    letters = []
    for l in w.letters:
        rat = compose(l.rational_part(w.base), g)
        factors = l.sqrt_factors(w.base)
        root = RationalFunction.const(1, VAR)
        if factors:
            prod = RationalFunction.const(1, VAR)
            tt = Polynomial.gen(VAR)
            for c, r in factors:
                prod = prod * RationalFunction(Polynomial.const(c, VAR), tt - r)
            sq = is_square(compose(prod, g))
            if sq is None:
                names = ", ".join(repr(r) for _, r in factors)
                raise UsageError(f"letter {l}: square roots at {{{names}}} are not rationalized by g")
            c, h = sq
            root = h * S(c)
            want = _numeric_branch(l, w.base, g, u0)
            got = _mp_rf(root, u0)
            if abs(got + want) < abs(got - want):
                root = -root
        f = rat * root * dg
        if f.is_zero():
            return IntegralWord((), w.base, 0)
        scalar, letter = _normalize_letter(f)
        pref = pref * scalar
        letters.append(Letter.generic(letter))
    return IntegralWord(tuple(letters), w.base, pref)


# partial fractions ----------------------------------------------------------------


def _rational_roots(p):
    """Roots of p in Q (p with rational coefficients), with multiplicity 1 assumed."""
    if not all(c.is_rational() for c in p.coeffs):
        return []
    from fractions import Fraction

    cs = [Fraction(str(c.rational())) for c in p.coeffs]
    lcm = 1
    for c in cs:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    ints = [int(c * lcm) for c in cs]
    while ints and ints[0] == 0:
        ints = ints[1:]
    roots = [AlgebraicNumber(0)] if len(ints) < len(cs) else []
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])

    def divisors(n):
        return [d for d in range(1, int(n) + 1) if n % d == 0] if n <= 10**6 else [1]

    for pnum in divisors(a0):
        for q in divisors(an):
            for s in (1, -1):
                r = AlgebraicNumber(Fraction(s * pnum, q))
                if p(r).is_zero() and not any(r == x for x in roots):
                    roots.append(r)
    return roots


def _linear_roots(den):
    """Roots of the squarefree denominator lying in its coefficient field (rational or from quadratic factors)."""
    roots = list(_rational_roots(den))
    rest = den
    for r in roots:
        rest = rest.exact_div(Polynomial((-r, 1), den.var))
    if rest.degree == 2:
        c, b, a = rest.coeffs
        disc = b * b - 4 * a * c
        sd = S(disc)
        if isinstance(sd, AlgebraicNumber) and (sd.is_rational() or sd.tower == disc.tower):
            for s in (1, -1):
                roots.append((-b + s * sd) / (2 * a))
            rest = Polynomial.const(a, den.var)
    elif rest.degree == 1:
        roots.append(-rest.coeff(0) / rest.coeff(1))
        rest = Polynomial.const(rest.lc(), den.var)
    return roots


def _decompose(rf):
    """Simple-pole terms ``c/(t - a)`` over the coefficient field plus the remainder."""
    den = rf.den
    if den.degree <= 0 or not den.is_squarefree():
        return [], rf
    roots = _linear_roots(den)
    terms = []
    rem = rf
    d1 = den.derivative()
    for a in roots:
        c = rf.num(a) / d1(a)
        if c.is_zero():
            continue
        term = RationalFunction(Polynomial.const(c, den.var), Polynomial((-a, 1), den.var))
        terms.append((a, c))
        rem = rem - term
    return terms, rem


def partial_fraction_letters(w):
    """Attach pole decompositions to generic letters; single-pole letters become rat letters."""
    pref = w.prefactor
    out = []
    for l in w.letters:
        if l.kind != "generic":
            out.append(l)
            continue
        terms, rem = _decompose(l.rf)
        if len(terms) == 1 and rem.is_zero():
            a, c = terms[0]
            pref = pref * c / sign_constant(a, w.base)
            out.append(Letter.rat(a))
            continue
        meta = tuple(("pole", a, c) for a, c in terms)
        if not rem.is_zero():
            meta += (("remainder", rem),)
        out.append(Letter.generic(l.rf, meta))
    return IntegralWord(tuple(out), w.base, pref)


def resum_metadata(letter):
    """Sum of the stored decomposition (equals the letter's function)."""
    tt = Polynomial.gen(VAR)
    acc = RationalFunction.const(0, VAR)
    for item in letter.meta:
        if item[0] == "pole":
            acc = acc + RationalFunction(Polynomial.const(item[2], VAR), tt - item[1])
        else:
            acc = acc + item[1]
    return acc


def expand_word(w):
    """Multilinear expansion of decomposed letters into a combination of words."""
    combos = [((), w.prefactor)]
    for l in w.letters:
        if l.kind == "generic" and l.meta:
            parts = []
            for item in l.meta:
                if item[0] == "pole":
                    parts.append((Letter.rat(item[1]), item[2] / sign_constant(item[1], w.base)))
                else:
                    c, lt = _normalize_letter(item[1])
                    parts.append((Letter.generic(lt), c))
        else:
            parts = [(l, AlgebraicNumber(1))]
        combos = [(ls + (p,), c * k) for ls, c in combos for p, k in parts]
    out = WordCombination()
    for ls, c in combos:
        out._add((ls, w.base), c)
    return out


# numerical evaluation ---------------------------------------------------------


@lru_cache(maxsize=16)
def _sinc_weights(n):
    """Weights 1/2 + Si(pi m)/pi for offsets m = -(n-1)..(n-1)."""
    m = np.arange(-(n - 1), n, dtype=float)
    si, _ = sici(np.pi * m)
    return 0.5 + si / np.pi


@lru_cache(maxsize=16)
def _de_grid(h, span):
    """Double-exponential nodes on (0, 1) with the Jacobian; ``1 - s`` is kept separately for precision near 1."""
    k = np.arange(-int(math.ceil(span / h)), int(math.ceil(span / h)) + 1)
    t = k * h
    u = np.pi * np.sinh(t)
    frac = expit(u)
    comp = expit(-u)
    jac = np.pi * np.cosh(t) * frac * comp
    return frac, comp, jac


def _check_convergence(w, x):
    base = w.base
    p = 0.0
    for l in reversed(w.letters):
        p += l.order_at(base) + 1
        if p <= 0:
            raise DivergenceError(f"nested integral diverges at the base point {base} (letter {l})")
    lo, hi = sorted((float(base), x))
    for l in w.letters:
        for a in l.poles():
            ac = complex(a)
            if abs(ac.imag) < 1e-300 and lo < ac.real < hi:
                raise DivergenceError(f"letter {l} has a pole at {ac.real} inside the integration range")
    if w.letters:
        outer = w.letters[0]
        xa = as_number(_exact(x)) if _exact(x) is not None else None
        if xa is not None and outer.order_at(xa) <= -1:
            raise DivergenceError(f"letter {outer} is not integrable at the endpoint {x}")


def _exact(x):
    from fractions import Fraction

    try:
        return Fraction(x).limit_denominator(10**12) if Fraction(x).limit_denominator(10**12) == x else None
    except (TypeError, ValueError):
        return None


def eval_word(w, x, tol=1e-10, span=5.0, max_level=7):
    """Numerical value of the nested integral at ``x`` (real)."""
    if isinstance(x, (AlgebraicNumber,)):
        x = float(x)
    x = float(x)
    if not w.letters:
        return _finish(complex(w.prefactor))
    _check_convergence(w, x)
    base = float(w.base)
    L = abs(x - base)
    if L == 0:
        return 0.0
    sigma = 1.0 if x > base else -1.0
    # base 1 integrals run from x up to 1, which flips the orientation
    orient = sigma if w.base == 0 else -sigma
    prev = None
    for level in range(2, max_level + 1):
        h = 2.0**-level
        frac, comp, jac = _de_grid(h, span)
        d, e = L * frac, L * comp
        s = base + sigma * d
        vals = np.array([l.numeric(w.base, s, d, e, x, sigma) for l in w.letters], dtype=complex)
        vals = np.ascontiguousarray(vals)
        weights = _sinc_weights(len(d))
        val = nested_layers(vals, np.ascontiguousarray(L * jac), weights, h) * orient ** len(w.letters)
        if prev is not None and abs(val - prev) <= tol * max(1.0, abs(val)):
            return _finish(val * complex(w.prefactor))
        prev = val
    raise AccuracyError(f"no convergence to {tol} after {max_level} refinements", _finish(prev * complex(w.prefactor)))


def _finish(v):
    v = complex(v)
    if abs(v.imag) <= 1e-14 * max(1.0, abs(v.real)):
        return v.real
    return v

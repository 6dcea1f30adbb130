"""Nested sums and the rewrite rules that turn their generating functions into integrals.

A generating function ``sum_{n>=1} x^n w_0(n) sum_{i=1}^n w_1(i) ...`` is rewritten
into nested integrals.  Intermediate results are tracked as products of
letter powers ``prod_p f_p(x)**k_p`` (``k_p`` a half integer), which translate
directly into integral letters at the end.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb

import mpmath

from .integrals import IntegralWord, Letter, WordCombination, eval_word, sign_constant
from .numbers import AlgebraicNumber, as_number
from .poly import DomainError, Polynomial
from .ratfunc import RationalFunction

__all__ = [
    "Weight",
    "SumExpr",
    "GFResult",
    "UnsupportedPattern",
    "RULES",
    "apply_rule",
    "to_generating_function",
    "all_rewrites",
    "direct_series",
    "MellinTag",
    "MellinRep",
    "mellin_sum_rule",
]

INDEX_NAMES = "nijklm"
ONE = AlgebraicNumber(1)
HALF = Fraction(1, 2)


class UnsupportedPattern(ValueError):
    def __init__(self, msg, node=None):
        super().__init__(msg)
        self.node = node


@dataclass(frozen=True)
class Weight:
    """``c**n * n**p * binom(2n,n)**b * (2n+1)**q * delta(1,n)**delta``."""

    c: object = ONE
    p: int = 0
    b: int = 0
    q: int = 0
    delta: bool = False

    def __post_init__(self):
        object.__setattr__(self, "c", as_number(self.c))
        if self.c.is_zero():
            raise DomainError("geometric base must be nonzero")

    def __mul__(self, o):
        return Weight(self.c * o.c, self.p + o.p, self.b + o.b, self.q + o.q, self.delta or o.delta)

    def is_one(self):
        return self == Weight()

    def at(self, n):
        """Exact value at a positive integer n (AlgebraicNumber)."""
        if self.delta and n != 1:
            return AlgebraicNumber(0)
        v = self.c**n * AlgebraicNumber(Fraction(n) ** self.p)
        v = v * AlgebraicNumber(Fraction(comb(2 * n, n)) ** self.b)
        v = v * AlgebraicNumber(Fraction(2 * n + 1) ** self.q)
        return v

    def to_str(self, var="n"):
        num, den = [], []

        def put(s, e):
            if e > 0:
                num.append(s if e == 1 else f"{s}^{e}")
            elif e < 0:
                den.append(s if e == -1 else f"{s}^{-e}")

        if not self.c == 1:
            cs = repr(self.c)
            num.append(f"{cs}^{var}" if cs.lstrip("-").isdigit() and not cs.startswith("-") else f"({cs})^{var}")
        put(var, self.p)
        put(f"(2{var}+1)", self.q)
        put(f"binom(2{var},{var})", self.b)
        if self.delta:
            num.append(f"delta(1,{var})")
        parts = list(num)
        if den:
            parts.append(f"inv({'*'.join(den)})")
        return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class SumExpr:
    """Layers outermost first; layer k sums over its index from 1 to the previous index."""

    layers: tuple

    def __post_init__(self):
        object.__setattr__(self, "layers", tuple(self.layers))
        if not self.layers:
            raise ValueError("a nested sum needs at least one layer")

    @property
    def outer(self):
        return self.layers[0]

    @property
    def inner(self):
        return SumExpr(self.layers[1:]) if len(self.layers) > 1 else None

    def to_str(self):
        def body(k):
            var = INDEX_NAMES[k] if k < len(INDEX_NAMES) else f"i{k}"
            w = self.layers[k].to_str(var)
            if k + 1 < len(self.layers):
                inner = f"S({body(k + 1)})"
                return inner if w == "1" else f"{w} * {inner}"
            return w

        return f"sum(x^n * {body(0)})" if body(0) != "1" else "sum(x^n)"

    def __repr__(self):
        return self.to_str()


def direct_series(s, x, terms=200):
    """Truncated ``sum_{n=1}^{terms} x^n * (nested sum)`` in high-precision floating point."""
    with mpmath.workdps(40):
        depth = len(s.layers)
        x = mpmath.mpf(x) if not isinstance(x, complex) else mpmath.mpc(x)
        # values of the partial nested sums from the innermost layer outward
        vals = [mpmath.mpf(1)] * (terms + 1)
        for k in range(depth - 1, -1, -1):
            w = s.layers[k]
            f = [mpmath.mpf(0)] + [_mp_weight(w, n) * vals[n] for n in range(1, terms + 1)]
            if k == 0:
                return sum(x**n * f[n] for n in range(1, terms + 1))
            acc, out = mpmath.mpf(0), [mpmath.mpf(0)]
            for n in range(1, terms + 1):
                acc += f[n]
                out.append(acc)
            vals = out


def _mp_weight(w, n):
    if w.delta and n != 1:
        return mpmath.mpf(0)
    c = w.c.to_mpf(140) if w.c.is_real() else w.c.to_mpc(140)
    return c**n * mpmath.mpf(n) ** w.p * mpmath.binomial(2 * n, n) ** w.b * mpmath.mpf(2 * n + 1) ** w.q


# letter monomials -----------------------------------------------------------------


def _mmul(a, b):
    out = dict(a)
    for p, e in b.items():
        v = out.get(p, Fraction(0)) + e
        if v:
            out[p] = v
        else:
            out.pop(p, None)
    return out


def _letter(m):
    """Integral letter for ``prod f_p**k_p``."""
    m = {p: e for p, e in m.items() if e}
    halves = [p for p, e in m.items() if e == HALF]
    ones = [p for p, e in m.items() if e == 1]
    rest = {p: e for p, e in m.items() if e not in (HALF, 1)}
    if not rest and not halves and len(ones) == 1:
        return Letter.rat(ones[0])
    if not rest and not ones and len(halves) >= 2:
        return Letter.sqrt_set(halves)
    if not rest and len(ones) == 1 and halves:
        return Letter.rat_sqrt(ones[0], halves)
    zero = AlgebraicNumber(0)
    if not ones and len(rest) == 1 and zero in rest and rest[zero].denominator == 1 and rest[zero] < 0:
        j = int(-rest[zero])
        if halves and 1 <= j <= len(halves) - 2:
            return Letter.power_sqrt(halves, j)
    if all(e.denominator == 1 for e in m.values()):
        t = Polynomial.gen("t")
        f = RationalFunction.const(1, "t")
        for p, e in m.items():
            f = f * RationalFunction(Polynomial.const(sign_constant(p), "t"), t - p) ** int(e)
        return Letter.generic(f)
    raise UnsupportedPattern(f"integrand {_mono_str(m)} is not an integral letter")


def _mono_value(m, x):
    v = mpmath.mpf(1)
    for p, e in m.items():
        pv = complex(p)
        v *= (int(sign_constant(p)) / (x - pv)) ** float(e) if e.denominator == 1 else \
            mpmath.sqrt(int(sign_constant(p)) / (x - pv)) ** int(2 * e)
    return v


def _factor_str(p, k):
    """``f_p**k`` written as a power of x or of a linear factor."""
    if p.is_zero():
        base = "x"
    elif sign_constant(p) == -1:
        base = f"({p!r} - x)"
    else:
        base = f"(x + {(-p)!r})" if p.is_real() else f"(x - ({p!r}))"
    e = -k
    if e == 1:
        return base
    return f"{base}^{e}" if e.denominator == 1 and e > 0 else f"{base}^({e})"


def _mono_str(m):
    if not m:
        return "1"
    items = sorted(m.items(), key=lambda t: (not t[0].is_zero(), repr(t[0])))
    return "*".join(_factor_str(p, k) for p, k in items)


# rules -------------------------------------------------------------------------

# a rule maps a node (SumExpr in the variable of the enclosing integral) to a list of pieces
# (coef, multiplier, chain, tail); tail is a SumExpr still to be rewritten or None (done)


def _with_outer(s, w):
    return SumExpr((w,) + s.layers[1:])


def _merge_inner(s, extra):
    """Node ``sum t^n extra(n) f_n`` where f_n is the inner layer of ``s``."""
    inner = s.inner
    return SumExpr((extra * inner.outer,) + inner.layers[1:])


F0 = AlgebraicNumber(0)
F4 = AlgebraicNumber(4)
FQ = AlgebraicNumber(Fraction(1, 4))
SQRT_04 = {F0: HALF, F4: HALF}


def _rule701(s):
    w = s.outer
    if w.p >= 0 or w.delta:
        return None
    return [(ONE, {}, ({F0: Fraction(1)},), _with_outer(s, replace(w, p=w.p + 1)))]


def _binomial_shape(w):
    return replace(w, c=ONE) == w and not w.delta


def _rule705(s):
    if s.outer != Weight(b=1) or s.inner is None:
        return None
    return [(AlgebraicNumber(Fraction(1, 4)), {FQ: HALF}, ({F0: Fraction(1), FQ: HALF},),
             _merge_inner(s, Weight(p=1, b=1)))]


def _is_delta_tail(s):
    inner = s.inner
    return inner is not None and len(inner.layers) == 1 and inner.outer.delta


def _rule706(s):
    if s.outer != Weight(p=-1, b=-1) or not _is_delta_tail(s):
        return None
    # sum_{n>=0} t^n / binom(2n,n) * f_{n+1} with f = w * delta(1, .) keeps only n = 0
    coef = s.inner.outer.at(1)
    return [(coef, {F0: -HALF, F4: HALF}, (dict(SQRT_04),), None)]


def _rule707(s):
    if s.outer != Weight(p=-1, b=-1) or s.inner is None:
        return None
    first = _merge_inner(s, Weight(p=-1, b=-1))
    second = _merge_inner(s, Weight(b=-1))
    return [
        (ONE, {}, (), first),
        (ONE, {F0: -HALF, F4: HALF}, (dict(SQRT_04),), second),
    ]


def _rule708(s):
    if s.outer != Weight(q=-1, b=-1) or s.inner is None:
        return None
    return [(AlgebraicNumber(2), {F0: HALF, F4: HALF}, (dict(SQRT_04),), _merge_inner(s, Weight(b=-1)))]


def _closed_delta(s):
    if s.inner is not None or not s.outer.delta:
        return None
    return [(s.outer.at(1), {F0: Fraction(-1)}, (), None)]


def _closed_geometric(s):
    w = s.outer
    if s.inner is not None or replace(w, c=ONE) != Weight():
        return None
    # sum_{n>=1} (c x)^n = x / (1/c - x) = -c_a * x * f_a with a = 1/c
    a = 1 / w.c
    return [(AlgebraicNumber(-sign_constant(a)), {F0: Fraction(-1), a: Fraction(1)}, (), None)]


def _delta_insert(s):
    """``sum x^n w(n)`` equals ``sum x^n w(n) sum_{i<=n} delta(1,i)``."""
    if s.inner is not None:
        return None
    return SumExpr((s.outer, Weight(delta=True)))


RULES = {
    "R701": _rule701,
    "R705": _rule705,
    "R706": _rule706,
    "R707": _rule707,
    "R708": _rule708,
}
# slots for rules referenced alongside these but not reproduced here
KNOWN_MISSING = ("R702", "R703", "R704", "R709", "R710", "R711")
CLOSED_FORMS = {"delta": _closed_delta, "geometric": _closed_geometric}


def apply_rule(rule, node):
    """Pieces of the right-hand side, or None when the pattern does not match."""
    if rule in KNOWN_MISSING:
        raise UnsupportedPattern(f"rule {rule} is not available")
    return RULES[rule](node)


def _choices(s):
    """Applicable rewrites of a node in trial order: closed forms, R701, then binomial rules."""
    out = []
    for name, fn in CLOSED_FORMS.items():
        r = fn(s)
        if r is not None:
            out.append((name, r))
    r = _rule701(s)
    if r is not None:
        out.append(("R701", r))
    targets = [s]
    ins = _delta_insert(s)
    if ins is not None and _binomial_shape(s.outer) and s.outer.b:
        targets.append(ins)
    for node in targets:
        for name in ("R705", "R706", "R707", "R708"):
            r = RULES[name](node)
            if r is None:
                continue
            if name == "R707" and _is_delta_tail(node):
                continue  # R706 is the terminal form for delta summands
            out.append((name, r))
    return out


@dataclass(frozen=True)
class _Term:
    coef: object
    mult: tuple  # key of the outer multiplier
    chain: tuple  # keys of letter monomials, outermost first
    tail: SumExpr | None


def _attach(term, piece):
    coef, mult, chain, tail = piece
    chain_m = [dict(_unkey_local(c)) for c in term.chain]
    top = dict(_unkey_local(term.mult))
    if chain_m:
        chain_m[-1] = _mmul(chain_m[-1], mult)
    else:
        top = _mmul(top, mult)
    chain_m.extend(dict(c) for c in chain)
    return _Term(term.coef * coef, _key_local(top), tuple(_key_local(c) for c in chain_m), tail)


# monomials keyed by (number, exponent) pairs that keep the exact numbers
def _key_local(m):
    return tuple(sorted(m.items(), key=lambda t: repr(t[0])))


def _unkey_local(k):
    return dict(k)


class GFResult:
    """``sum coef * prod f_p(x)**k_p * H_word(x)``; a word combination when all multipliers are 1."""

    def __init__(self):
        self.terms = {}

    def add(self, mult, letters, coef):
        key = (mult, letters)
        v = self.terms.get(key, AlgebraicNumber(0)) + coef
        if v.is_zero():
            self.terms.pop(key, None)
        else:
            self.terms[key] = v

    def is_words(self):
        return all(not m for m, _ in self.terms)

    def as_words(self):
        if not self.is_words():
            raise UnsupportedPattern("result carries non-word multipliers: " + self.to_str())
        return WordCombination({(letters, 0): c for (m, letters), c in self.terms.items()})

    def to_str(self):
        if self.is_words():
            return self.as_words().to_str()
        parts = []
        for (m, letters), c in sorted(self.terms.items(), key=lambda kv: repr(kv[0])):
            mono = _mono_str(dict(m))
            if letters:
                w = IntegralWord(letters, 0, c).to_str()
                parts.append(w if not m else f"{mono} * {w}")
            else:
                parts.append(mono if c == 1 else f"({c!r})*{mono}")
        return " + ".join(parts) or "0"

    def __repr__(self):
        return self.to_str()

    def __eq__(self, other):
        return isinstance(other, GFResult) and self.terms.keys() == other.terms.keys() and all(
            self.terms[k] == other.terms[k] for k in self.terms)

    def evaluate(self, x, tol=1e-10):
        total = 0
        for (m, letters), c in self.terms.items():
            word_val = eval_word(IntegralWord(letters, 0, c), x, tol) if letters else complex(c)
            total += complex(word_val) * complex(_mono_value(dict(m), mpmath.mpf(x)))
        return total.real if abs(total.imag) < 1e-14 else total


def _finish(term):
    return term.mult, tuple(_letter(dict(c)) for c in term.chain), term.coef


def _rewrite(term, depth=0):
    """Finished pieces of ``term``; tries rules in order and backtracks on dead ends."""
    if term.tail is None:
        return [_finish(term)]
    if depth > 60:
        raise UnsupportedPattern("rewriting does not terminate", term.tail)
    opts = _choices(term.tail)
    if not opts:
        raise UnsupportedPattern(f"no rule applies to {term.tail}", term.tail)
    first = None
    for _name, pieces in opts:
        try:
            out = []
            for piece in pieces:
                out.extend(_rewrite(_attach(term, piece), depth + 1))
            return out
        except UnsupportedPattern as exc:
            first = first or exc
    raise first


def _collect(pieces):
    res = GFResult()
    for mult, letters, coef in pieces:
        res.add(mult, letters, coef)
    return res


def to_generating_function(s):
    """Rewrite ``sum x^n ...`` into nested integrals.

    Rules are tried outermost first, R701 before the binomial rules, with
    backtracking when a branch reaches a node no rule covers.
    """
    return _collect(_rewrite(_Term(ONE, (), (), s)))


def all_rewrites(s, limit=2000):
    """Results of every rule order that reaches a full rewrite (for confluence checks)."""
    results = []
    stack = [([_Term(ONE, (), (), s)], [])]
    while stack and len(results) < limit:
        todo, done = stack.pop()
        if not todo:
            results.append(_collect(done))
            continue
        term, rest = todo[0], todo[1:]
        if term.tail is None:
            try:
                stack.append((rest, done + [_finish(term)]))
            except UnsupportedPattern:
                pass
            continue
        for _name, pieces in _choices(term.tail):
            stack.append(([_attach(term, p) for p in pieces] + rest, done))
    return results


# Mellin representations -----------------------------------------------------------


@dataclass(frozen=True)
class MellinTag:
    """Symbolic integrand ``prod_a (x/(x - a)) * base``; ``kernels`` lists the a's, innermost first."""

    base: str
    kernels: tuple = ()

    def with_kernel(self, a):
        return MellinTag(self.base, self.kernels + (as_number(a),))

    def __repr__(self):
        s = self.base
        for a in self.kernels:
            den = f"x + {(-a)!r}" if a.is_real() and a < 0 else f"x - {a!r}" if a.is_real() else f"x - ({a!r})"
            s = f"x/({den})*{s}"
        return s

    def needs_regularization(self):
        return any(a.is_real() and 0 <= float(a) <= 1 for a in self.kernels)


@dataclass(frozen=True)
class MellinRep:
    """``c0 + sum_k consts_k + sum_j c_j**n * M[f_j](n)``; consts are n-independent M[f](0) values."""

    c0: object = field(default_factory=lambda: AlgebraicNumber(0))
    consts: tuple = ()  # (coefficient, tag) meaning coefficient * M[tag](0)
    terms: tuple = ()  # (coefficient, base c_j, tag)

    def regularization_needed(self):
        return any(t.needs_regularization() for _, _, t in self.terms) or any(
            t.needs_regularization() for _, t in self.consts)

    def __repr__(self):
        parts = [] if as_number(self.c0).is_zero() else [repr(self.c0)]
        for k, t in self.consts:
            parts.append(f"({k!r})*M[{t!r}](0)")
        for k, c, t in self.terms:
            base = "" if c == 1 else f"({c!r})^n*"
            parts.append(f"({k!r})*{base}M[{t!r}](n)")
        return " + ".join(parts) or "0"

    def evaluate(self, n, integrands):
        """Numeric value; ``integrands`` maps tag base names to callables on [0,1]."""
        def mellin(tag, m):
            f = integrands[tag.base]

            def g(x):
                v = f(x) * x**m
                for a in tag.kernels:
                    v = v * x / (x - complex(a))
                return v

            return mpmath.quad(g, [0, 1])

        total = complex(self.c0)
        for k, t in self.consts:
            total += complex(k) * complex(mellin(t, 0))
        for k, c, t in self.terms:
            total += complex(k) * complex(c) ** n * complex(mellin(t, n))
        return total


def mellin_sum_rule(rep):
    """``sum_{i=1}^n`` of a representation without constant part, term by term.

    ``sum_{i<=n} c^i M[f](i) = c^n M[x/(x - 1/c) f](n) - M[x/(x - 1/c) f](0)``.
    """
    if not as_number(rep.c0).is_zero() or rep.consts:
        raise DomainError("summing an n-independent part leaves the Mellin shape")
    terms, consts = [], []
    for k, c, tag in rep.terms:
        c = as_number(c)
        if c.is_zero():
            raise DomainError("the geometric base c must be nonzero")
        new = tag.with_kernel(1 / c)
        terms.append((k, c, new))
        consts.append((-k, new))
    return MellinRep(AlgebraicNumber(0), tuple(consts), tuple(terms))

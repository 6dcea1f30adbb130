"""Text input: rational functions, numbers, integral words and nested sums.

Expressions use a Pratt parser with the precedence ``^`` over unary minus over
``* /`` over ``+ -``.  Literals are exact; decimals are refused.  Every error
carries a line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .integrals import IntegralWord, Letter, UsageError, WordCombination, VAR
from .numbers import I, AlgebraicNumber, sqrt
from .poly import DomainError
from .ratfunc import RationalFunction
from .sums import INDEX_NAMES, SumExpr, Weight

__all__ = [
    "ParseError",
    "parse_number",
    "parse_rational_function",
    "parse_radicands",
    "parse_word",
    "parse_words",
    "parse_sum",
]


class ParseError(ValueError):
    def __init__(self, msg, src="", pos=0):
        self.line = src.count("\n", 0, pos) + 1
        self.column = pos - (src.rfind("\n", 0, pos) + 1) + 1
        self.msg = msg
        super().__init__(f"line {self.line}, column {self.column}: {msg}")


@dataclass(frozen=True)
class Token:
    kind: str  # num, name, op, end
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+)|(\d+)|([A-Za-z_]\w*)|(.))", re.S)


def tokenize(src):
    out, pos = [], 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1):
            raise ParseError("decimal literals are not exact; write a fraction", src, start)
        kind = "num" if m.group(2) else "name" if m.group(3) else "op"
        out.append(Token(kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(Token("end", "", len(src)))
    return out


class _Stream:
    def __init__(self, src):
        self.src = src
        self.toks = tokenize(src)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def peek(self, k=1):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def next(self):
        t = self.tok
        self.i += 1
        return t

    def error(self, msg, tok=None):
        return ParseError(msg, self.src, (tok or self.tok).pos)

    def expect(self, text):
        t = self.tok
        if t.text != text:
            shown = repr(t.text) if t.kind != "end" else "end of input"
            raise self.error(f"expected {text!r}, found {shown}")
        self.i += 1
        return t

    def accept(self, text):
        if self.tok.text == text and self.tok.kind != "end":
            self.i += 1
            return True
        return False

    def finish(self):
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")


# expressions -------------------------------------------------------------------

_INFIX = {"+": 10, "-": 10, "*": 20, "/": 20, "^": 40}
_UNARY = 30


class _Expr:
    """Pratt evaluator.  Values are RationalFunction or WordCombination."""

    def __init__(self, st, var="x", bindings=None, words=False):
        self.st = st
        self.var = var
        self.bindings = dict(bindings or {})
        self.words = words

    def const(self, c):
        return RationalFunction.const(c, self.var or "x")

    def parse(self, rbp=0):
        st = self.st
        left = self.prefix()
        while True:
            t = st.tok
            bp = _INFIX.get(t.text) if t.kind == "op" else None
            if bp is None:
                if t.kind in ("num", "name") or t.text == "(":
                    raise st.error("implicit multiplication is not allowed; write '*'")
                return left
            if bp <= rbp:
                return left
            st.next()
            if t.text == "^":
                right = self.parse(_UNARY - 1)  # right-assoc; admits a unary minus
                left = self.power(left, right, t)
            else:
                left = self.binary(t, left, self.parse(bp))

    def prefix(self):
        st = self.st
        t = st.next()
        if t.kind == "num":
            return self.const(int(t.text))
        if t.text == "-":
            return self.negate(self.parse(_UNARY))
        if t.text == "+":
            return self.parse(_UNARY)
        if t.text == "(":
            v = self.parse()
            st.expect(")")
            return v
        if t.kind == "name":
            return self.name(t)
        shown = "end of input" if t.kind == "end" else repr(t.text)
        raise st.error(f"unexpected {shown}", t)

    def name(self, t):
        st = self.st
        if t.text == "sqrt" and st.tok.text == "(":
            st.next()
            arg = self.parse()
            st.expect(")")
            if not isinstance(arg, RationalFunction) or not arg.is_constant():
                raise st.error("sqrt takes a numeric argument; give radicands without the root", t)
            return self.const(sqrt(arg.constant_value()))
        if t.text == "H" and st.tok.text == "[":
            if not self.words:
                raise st.error("integral words are not allowed here", t)
            return WordCombination.of(_word_body(st))
        if t.text in self.bindings:
            return self.const(self.bindings[t.text])
        if self.var is not None and t.text == self.var:
            return RationalFunction.gen(self.var)
        if t.text == "i":
            return self.const(I)
        raise st.error(f"unknown name {t.text!r}", t)

    def negate(self, v):
        return v.scale(-1) if isinstance(v, WordCombination) else -v

    def binary(self, t, a, b):
        st = self.st
        wa, wb = isinstance(a, WordCombination), isinstance(b, WordCombination)
        op = t.text
        if op in "+-":
            if wa != wb:
                raise st.error("cannot add a number to an integral word", t)
            if op == "-":
                b = self.negate(b)
            return a + b
        if op == "*":
            if wa and wb:
                raise st.error("products of words need the shuffle product, not '*'", t)
            if wa or wb:
                w, c = (a, b) if wa else (b, a)
                return w.scale(self._number(c, t))
            return a * b
        # division
        if wb:
            raise st.error("cannot divide by an integral word", t)
        if b.is_zero():
            raise st.error("division by zero", t)
        if wa:
            return a.scale(1 / self._number(b, t))
        return a / b

    def power(self, base, e, t):
        st = self.st
        if isinstance(base, WordCombination) or isinstance(e, WordCombination):
            raise st.error("words cannot be raised to powers", t)
        if not e.is_constant() or not e.constant_value().is_rational() or e.constant_value().rational().denominator != 1:
            raise st.error("exponents must be integers", t)
        k = int(e.constant_value().rational())
        if k < 0 and base.is_zero():
            raise st.error("division by zero", t)
        return base**k

    def _number(self, v, t):
        if not v.is_constant():
            raise self.st.error("word coefficients must be numbers", t)
        return v.constant_value()


def _parse_full(src, **kw):
    st = _Stream(src)
    if st.tok.kind == "end":
        raise st.error("empty input")
    v = _Expr(st, **kw).parse()
    st.finish()
    return v


def parse_rational_function(src, var="x", bindings=None):
    """Exact rational function in ``var``; ``bindings`` maps parameter names to numbers."""
    try:
        return _parse_full(src, var=var, bindings=bindings)
    except (ZeroDivisionError, DomainError) as exc:
        raise ParseError(str(exc), src, 0) from exc


def parse_number(src, bindings=None):
    v = _parse_full(src, var=None, bindings=bindings)
    return v.constant_value()


def parse_radicands(items, var="x", bindings=None):
    return [parse_rational_function(s, var, bindings) for s in items]


# integral words ------------------------------------------------------------------


def _number_in(st, stop):
    """A numeric expression ending before one of ``stop``."""
    e = _Expr(st, var=None)
    start = st.tok
    v = e.parse()
    if st.tok.text not in stop:
        raise st.error(f"expected one of {' '.join(stop)}")
    if not v.is_constant():
        raise st.error("expected a number", start)
    return v.constant_value()


def _root_set(st):
    st.expect("{")
    roots = [_number_in(st, (",", "}"))]
    while st.accept(","):
        roots.append(_number_in(st, (",", "}")))
    st.expect("}")
    return roots


def _letter(st):
    t = st.tok
    try:
        if t.text == "{":
            return Letter.sqrt_set(_root_set(st))
        if t.text == "R" and st.peek().text == "(":
            st.next()
            st.next()
            e = _Expr(st, var=VAR)
            f = e.parse()
            st.expect(")")
            return Letter.generic(f if isinstance(f, RationalFunction) else RationalFunction.const(f, VAR))
        if t.text == "(" and st.peek().text == "{":
            st.next()
            roots = _root_set(st)
            st.expect(",")
            j = _int(st)
            st.expect(")")
            return Letter.power_sqrt(roots, j)
        if t.text == "(":
            # either a parenthesized number or (a,{roots})
            save = st.i
            st.next()
            e = _Expr(st, var=None)
            a = e.parse()
            if st.accept(","):
                roots = _root_set(st)
                st.expect(")")
                return Letter.rat_sqrt(a.constant_value(), roots)
            st.i = save
        return Letter.rat(_number_in(st, (",", "]", ";", "|")))
    except UsageError as exc:
        raise ParseError(str(exc), st.src, t.pos) from exc


def _int(st):
    t = st.next()
    if t.kind != "num":
        raise st.error("expected an integer", t)
    return int(t.text)


def _word_body(st):
    st.expect("[")
    letters = []
    if st.tok.text not in (";", "|"):
        letters.append(_letter(st))
        while st.accept(","):
            letters.append(_letter(st))
    if not (st.accept(";") or st.accept("|")):
        raise st.error("expected ';' before the base point")
    t = st.tok
    if t.text != "base":
        raise st.error("expected 'base='")
    st.next()
    st.expect("=")
    b = st.next()
    if b.text not in ("0", "1"):
        raise st.error("base point must be 0 or 1", b)
    st.expect("]")
    return IntegralWord(tuple(letters), int(b.text))


def parse_words(src):
    """Linear combination such as ``H[0; base=0] - (1/2)*H[{0,4}; base=0]``."""
    v = _parse_full(src, var=None, words=True)
    if not isinstance(v, WordCombination):
        if v.is_zero():
            return WordCombination()
        raise ParseError("expected an integral word", src, 0)
    return v


def parse_word(src):
    """A single word, optionally with a numeric prefactor: ``(32*sqrt(2))*H[...; base=1]``."""
    st = _Stream(src)
    if st.tok.text == "H" and st.peek().text == "[":
        st.next()
        w = _word_body(st)
        st.finish()
        return w
    comb = parse_words(src)
    if len(comb) != 1:
        raise ParseError("expected exactly one word", src, 0)
    return comb.words()[0]


# nested sums -------------------------------------------------------------------


def _index(depth):
    return INDEX_NAMES[depth] if depth < len(INDEX_NAMES) else f"i{depth}"


class _SumParser:
    def __init__(self, src):
        self.st = _Stream(src)

    def parse(self):
        st = self.st
        st.expect("sum")
        st.expect("(")
        self._var_power("x", "n")
        layers = [Weight()]
        if st.accept("*"):
            w, inner = self.product(0)
            layers = [w] + inner
        st.expect(")")
        st.finish()
        return SumExpr(tuple(layers))

    def _var_power(self, base, var):
        st = self.st
        t = st.tok
        if t.text != base:
            raise st.error(f"expected {base}^{var}")
        st.next()
        st.expect("^")
        t = st.next()
        if t.text != var:
            raise st.error(f"expected exponent {var}", t)

    def product(self, depth, inverted=False):
        st = self.st
        w, inner = self.factor(depth, inverted)
        while st.tok.text in ("*", "/"):
            op = st.next()
            fw, finner = self.factor(depth, inverted ^ (op.text == "/"))
            w = w * fw
            if finner:
                if inner:
                    raise st.error("only one inner sum per layer", op)
                inner = finner
        return w, inner

    def factor(self, depth, inverted):
        st = self.st
        var = _index(depth)
        t = st.tok

        def inv(w):
            if not inverted:
                return w
            if w.delta:
                raise st.error("delta cannot be inverted", t)
            return Weight(1 / w.c, -w.p, -w.b, -w.q)

        def exponent():
            if st.accept("^"):
                e = st.next()
                if e.kind != "num":
                    raise st.error("expected a positive integer exponent", e)
                return int(e.text)
            return 1

        if t.kind == "num" and st.peek().text == "^" and st.peek(2).text == var:
            st.next(), st.next(), st.next()
            return inv(Weight(c=int(t.text))), []
        if t.kind == "num" and t.text == "1":
            st.next()
            return Weight(), []
        if t.text == var:
            st.next()
            return inv(Weight(p=exponent())), []
        if t.text == "binom":
            st.next()
            st.expect("(")
            self._two_n(var)
            st.expect(",")
            if st.next().text != var:
                raise st.error(f"expected binom(2{var},{var})", t)
            st.expect(")")
            return inv(Weight(b=exponent())), []
        if t.text == "delta":
            st.next()
            st.expect("(")
            st.expect("1")
            st.expect(",")
            if st.next().text != var:
                raise st.error(f"expected delta(1,{var})", t)
            st.expect(")")
            return inv(Weight(delta=True)), []
        if t.text == "inv":
            st.next()
            st.expect("(")
            w, inner = self.product(depth, not inverted)
            if inner:
                raise st.error("an inner sum cannot be inverted", t)
            st.expect(")")
            return w, []
        if t.text == "S":
            if inverted:
                raise st.error("an inner sum cannot be inverted", t)
            st.next()
            st.expect("(")
            w, inner = self.product(depth + 1)
            st.expect(")")
            return Weight(), [w] + inner
        if t.text == "(":
            if st.peek().text == "2" and st.peek(2).text == var:
                st.next()
                self._two_n(var)
                st.expect("+")
                st.expect("1")
                st.expect(")")
                return inv(Weight(q=exponent())), []
            st.next()
            c = _number_in(st, (")",))
            st.expect(")")
            st.expect("^")
            if st.next().text != var:
                raise st.error(f"expected exponent {var}", t)
            return inv(Weight(c=c)), []
        raise st.error(f"unexpected {t.text!r} in a sum prefactor (index {var})")

    def _two_n(self, var):
        st = self.st
        st.expect("2")
        if st.next().text != var:
            raise st.error(f"expected 2{var}")


def parse_sum(src):
    """``sum(x^n * inv(n^2*binom(2n,n)) * S(inv(i)))`` and similar; see :class:`SumExpr`."""
    try:
        return _SumParser(src).parse()
    except DomainError as exc:
        raise ParseError(str(exc), src, 0) from exc

"""Radicand sets: reduction modulo squares, case classification, [0,1] admissibility."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .numbers import AlgebraicNumber, ComplexNumber, conj
from .poly import DomainError, Polynomial
from .ratfunc import RationalFunction

__all__ = [
    "RadicandSet",
    "RadicandCase",
    "Eligibility",
    "normalize",
    "classify",
    "check_unit_interval_admissibility",
    "coprime_basis",
    "sort_roots",
]


@dataclass(frozen=True)
class RadicandSet:
    """Reduced radicands plus a witness per original input.

    ``witnesses[i] = (c, h, exps)`` means
    ``originals[i] == c * h**2 * prod(reduced[j] for j where exps[j])``.
    """

    originals: tuple
    reduced: tuple
    witnesses: tuple

    def check_witnesses(self):
        for f, (c, h, exps) in zip(self.originals, self.witnesses):
            prod_ = RationalFunction.const(c, f.var) * h * h
            for r, e in zip(self.reduced, exps):
                if e:
                    prod_ = prod_ * r
            if not prod_ == f:
                return False
        return True


@dataclass(frozen=True)
class RadicandCase:
    tag: str  # Empty, OneLinear, OneQuadratic, TwoLinear, ThreeQuadratic, NoTransformation
    params: tuple = ()
    witness: Polynomial | None = None

    def __repr__(self):
        if self.tag == "NoTransformation":
            return f"NoTransformation(witness={self.witness})"
        if not self.params:
            return self.tag
        return f"{self.tag}({', '.join(repr(p) for p in self.params)})"

    @property
    def has_zero_root(self):
        return any(isinstance(p, AlgebraicNumber) and p.is_zero() for p in self.params)


@dataclass(frozen=True)
class Eligibility:
    real: bool
    real_reason: str
    complex: bool
    complex_reason: str
    complex_case: RadicandCase | None = None
    checked: tuple = field(default=())


# normalization --------------------------------------------------------------


def _as_rf(f, var="x"):
    if isinstance(f, RationalFunction):
        return f
    if isinstance(f, Polynomial):
        return RationalFunction(f)
    return RationalFunction.const(f, var)


def _sort_key(p):
    return (p.degree, tuple(repr(c) for c in reversed(p.coeffs)))


def normalize(F):
    """Reduce to monic squarefree non-constant polynomials, none dividing another."""
    originals = tuple(_as_rf(f) for f in F)
    var = originals[0].var if originals else "x"
    if any(f.is_zero() for f in originals):
        raise DomainError("radicands must be nonzero")
    polys = []
    consts = []
    cofs = []
    for f in originals:
        sn, qn = f.num.squarefree_part()
        sd, qd = f.den.squarefree_part()
        g = sn.gcd(sd)
        s = (sn * sd).exact_div(g * g)
        # f = c * s * (qn * g / (sd * qd))**2
        cof = RationalFunction(qn * g, sd * qd)
        c = f.num.lc() / f.den.lc()
        polys.append(s)
        consts.append(c)
        cofs.append(cof)
    # each original row: exponents over the working list (initially the identity)
    work = list(polys)
    rows = [[1 if i == j else 0 for j in range(len(work))] for i in range(len(work))]
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            if work[i] is None or work[i].degree <= 0:
                continue
            for j in range(len(work)):
                if i == j or work[j] is None or work[j].degree <= 0:
                    continue
                if work[i].degree <= work[j].degree and work[i].divides(work[j]):
                    work[j] = work[j].exact_div(work[i])
                    # old_j = i * new_j
                    for r in rows:
                        r[i] += r[j]
                    changed = True
    keep = [k for k, p in enumerate(work) if p is not None and p.degree > 0]
    order = sorted(keep, key=lambda k: _sort_key(work[k]))
    reduced = tuple(work[k] for k in order)
    witnesses = []
    for f, c, cof, r in zip(originals, consts, cofs, rows):
        h = cof
        for k, e in enumerate(r):
            if e >= 2:
                h = h * RationalFunction(work[k]) ** (e // 2)
        exps = tuple(r[k] % 2 for k in order)
        witnesses.append((c, h, exps))
    return RadicandSet(originals, reduced, tuple(witnesses))


# classification -----------------------------------------------------------


def coprime_basis(polys):
    """Pairwise coprime monic squarefree factors whose products give every input."""
    basis = []
    for p in polys:
        todo = [p.monic()]
        while todo:
            q = todo.pop()
            if q.degree <= 0:
                continue
            for k, b in enumerate(basis):
                g = q.gcd(b)
                if g.degree > 0:
                    basis.pop(k)
                    for part in (g, b.exact_div(g), q.exact_div(g)):
                        if part.degree > 0:
                            todo.append(part)
                    break
            else:
                basis.append(q)
    return sorted(basis, key=_sort_key)


def _vector(p, basis):
    return tuple(1 if b.divides(p) else 0 for b in basis)


def _span(vectors):
    """All nonzero elements of the F2 span, with a basis of the span."""
    pivots = []
    for v in vectors:
        w = list(v)
        for piv in pivots:
            lead = piv.index(1)
            if w[lead]:
                w = [a ^ b for a, b in zip(w, piv)]
        if any(w):
            pivots.append(w)
    elems = []
    for mask in product((0, 1), repeat=len(pivots)):
        if not any(mask):
            continue
        acc = [0] * (len(vectors[0]) if vectors else 0)
        for m, piv in zip(mask, pivots):
            if m:
                acc = [a ^ b for a, b in zip(acc, piv)]
        elems.append(tuple(acc))
    return pivots, elems


def _root(linear):
    return -linear.coeff(0) / linear.lc()


def _is_real_number(a):
    return isinstance(a, AlgebraicNumber)


def sort_roots(roots):
    """Real nonzero roots ascending, then non-real (positive imaginary part first), zero last."""
    def key(a):
        if a.is_zero():
            return (2, 0.0, 0.0)
        if _is_real_number(a):
            return (0, float(a), 0.0)
        z = complex(a)
        return (1, z.real, -z.imag)

    return sorted(roots, key=key)


def classify(R):
    reduced = list(R.reduced) if isinstance(R, RadicandSet) else list(R)
    if not reduced:
        return RadicandCase("Empty")
    basis = coprime_basis(reduced)
    vecs = [_vector(p, basis) for p in reduced]
    pivots, elems = _span(vecs)

    def poly_of(v):
        out = Polynomial.const(1, basis[0].var)
        for bit, b in zip(v, basis):
            if bit:
                out = out * b
        return out

    degs = [sum(b.degree for bit, b in zip(v, basis) if bit) for v in elems]
    bad = [(d, v) for d, v in zip(degs, elems) if d >= 3]
    if bad:
        d, v = min(bad, key=lambda t: (t[0], t[1]))
        return RadicandCase("NoTransformation", witness=poly_of(v))
    dim = len(pivots)
    if dim == 1:
        p = poly_of(elems[0])
        if p.degree == 1:
            return RadicandCase("OneLinear", (_root(p),))
        return RadicandCase("OneQuadratic", (p.coeff(0), p.coeff(1)))
    if dim == 2:
        linear = [poly_of(v) for v, d in zip(elems, degs) if d == 1]
        if linear:
            roots = sort_roots([_root(p) for p in basis])
            return RadicandCase("TwoLinear", tuple(roots))
        roots = sort_roots([_root(p) for p in basis])
        return RadicandCase("ThreeQuadratic", tuple(roots))
    raise AssertionError("span of dimension >= 3 always contains a degree >= 3 element")


def case_radicands(case, var="x"):
    """Canonical monic radicand polynomials of a case (the full span for ThreeQuadratic)."""
    x = Polynomial.gen(var)
    t, p = case.tag, case.params
    if t == "OneLinear":
        return [x - p[0]]
    if t == "OneQuadratic":
        return [x * x + x.scale(p[1]) + p[0]]
    if t == "TwoLinear":
        return [x - p[0], x - p[1]]
    if t == "ThreeQuadratic":
        a1, a2, a3 = p
        return [(x - a1) * (x - a2), (x - a1) * (x - a3), (x - a2) * (x - a3)]
    return []


# [0,1] admissibility -----------------------------------------------------------


def _outside_unit(a):
    """a < 0 or a >= 1 (real a)."""
    return a.sign() < 0 or (a - 1).sign() >= 0


def _real_check(case):
    t, p = case.tag, case.params
    if t in ("Empty",):
        return True, "no radicands"
    if t == "NoTransformation":
        return False, "no rationalizing transformation exists"
    if any(not _is_real_number(c) for c in p):
        return False, "non-real coefficients"
    if t == "OneQuadratic":
        c0, c1 = p
        if c0.is_zero():
            a = -c1
            if _outside_unit(a):
                return True, f"root a = {a!r} satisfies a < 0 or a >= 1"
            return False, f"root a = {a!r} lies in (0,1)"
        if (c0 * (c0 + c1 + 1)).sign() < 0:
            return False, "c0*(c0+c1+1) < 0"
        s = 2 * c0 + c1
        if (s + 1).sign() > 0 and s.sign() < 0 and (c1 * c1 - 4 * c0).sign() > 0:
            return False, "-1 < 2*c0 + c1 < 0 and c1^2 > 4*c0 (two roots inside (0,1))"
        return True, "c0 != 0, c0*(c0+c1+1) >= 0, roots not inside (0,1)"
    for a in p:
        if a.is_zero():
            continue
        if not _outside_unit(a):
            return False, f"root a = {a!r} lies in (0,1)"
    return True, "all roots satisfy a = 0, a < 0 or a >= 1"


def _complex_check(R, case):
    """Check F together with its conjugates against the conjugate configurations."""
    F = list(R.reduced) if isinstance(R, RadicandSet) else list(R)
    closed = normalize(F + [p.conj() for p in F])
    ccase = classify(closed)
    t, p = ccase.tag, ccase.params
    if t == "NoTransformation":
        return False, "F together with its conjugates admits no rationalization", ccase
    ok, why = _real_check(ccase)
    if ok:
        return True, "reduces to a real-valued configuration", ccase
    if t == "TwoLinear":
        a1, a2 = p
        if not _is_real_number(a1) and a2 == conj(a1):
            return True, "a2 = conj(a1) not real", ccase
    if t == "ThreeQuadratic":
        a1, a2, a3 = p
        if a3.is_zero() and not _is_real_number(a1) and a2 == conj(a1):
            return True, "a3 = 0 and a2 = conj(a1) not real", ccase
        if _is_real_number(a1) and not a1.is_zero() and not _is_real_number(a2) and a3 == conj(a2):
            if _outside_unit(a1):
                return True, "a1 real outside (0,1) and a3 = conj(a2)", ccase
            return False, f"real root a1 = {a1!r} lies in (0,1)", ccase
    return False, f"conjugate closure {ccase!r} matches no admissible configuration", ccase


def check_unit_interval_admissibility(case, R):
    real, rwhy = _real_check(case)
    try:
        cplx, cwhy, ccase = _complex_check(R, case)
    except DomainError as exc:
        cplx, cwhy, ccase = False, str(exc), None
    return Eligibility(real, rwhy, cplx, cwhy, ccase)

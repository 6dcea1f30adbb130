"""Independent certification of transformations.

Every verdict here is exact.  The floating-point probe is reported alongside
but never decides a check.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace

import mpmath

from .numbers import AlgebraicNumber, as_number
from .poly import DomainError, Polynomial
from .puiseux import PuiseuxSeries
from .radicands import RadicandSet
from .ratfunc import RationalFunction, compose, is_square
from .sqrtexpr import SqrtExpr

__all__ = [
    "Report",
    "verify_rationalizes",
    "verify_inverse",
    "verify_unit_interval_bijection",
    "verify_puiseux_inverse",
    "verify_unit_interval_branch",
    "numeric_probe",
    "mutants",
    "detects",
    "verify_all",
]


@dataclass
class Report:
    name: str
    passed: bool
    entries: list = field(default_factory=list)
    failure: str | None = None

    def to_json(self):
        return {"check": self.name, "passed": self.passed, "failure": self.failure, "entries": self.entries}

    def __bool__(self):
        return self.passed


def _reduced(R):
    if isinstance(R, RadicandSet):
        return list(R.reduced)
    return list(R)


def verify_rationalizes(t, R):
    g = t.g if isinstance(t.g, RationalFunction) else RationalFunction(t.g)
    entries, failed = [], None
    for f in _reduced(R):
        fr = f if isinstance(f, RationalFunction) else RationalFunction(f)
        sq = is_square(compose(fr, g))
        if sq is None:
            entries.append({"radicand": repr(f), "ok": False})
            failed = failed or f"{f} composed with g is not c*h^2"
        else:
            c, h = sq
            entries.append({"radicand": repr(f), "ok": True, "c": repr(c), "h": repr(h)})
    return Report("rationalizes", failed is None, entries, failed)


def _residual(inv, g):
    try:
        return inv.substitute_rf(g) - SqrtExpr.x(inv.ctx), None
    except ZeroDivisionError as exc:
        return None, f"structural failure: {exc}"


def verify_inverse(t):
    entries, failed = [], None
    forms = [("primary", t.inverse)]
    if getattr(t, "inverse_alt", None) is not None:
        forms.append(("alternate", t.inverse_alt))
    for label, inv in forms:
        res, err = _residual(inv, t.g)
        if err:
            entries.append({"form": label, "ok": False, "error": err})
            failed = failed or err
        elif res.is_zero():
            entries.append({"form": label, "ok": True, "residual": "0"})
        else:
            entries.append({"form": label, "ok": False, "residual": repr(res)})
            failed = failed or f"{label} inverse leaves residual {res}"
    return Report("inverse", failed is None, entries, failed)


def _deflate(p, root):
    k = 0
    lin = Polynomial((-as_number(root), 1), p.var)
    while not p.is_zero() and p(as_number(root)).is_zero():
        p = p.exact_div(lin)
        k += 1
    return p, k


def verify_unit_interval_bijection(t):
    g = t.g
    entries = []

    def fail(clause):
        return Report("unit_interval_bijection", False, entries, clause)

    if not g.is_real():
        return fail("g has non-real coefficients")
    if g.is_constant():
        return fail("g is constant")
    den, num = g.den, g.num
    for end in (0, 1):
        if den(as_number(end)).is_zero():
            return fail(f"denominator of g vanishes at y = {end}")
    if den.degree > 0 and den.sturm_root_count(0, 1):
        return fail("denominator of g has a root in (0,1)")
    entries.append({"clause": "denominator root-free on [0,1]", "ok": True})
    g0, g1 = g(0), g(1)
    if not g0.is_zero():
        return fail(f"g(0) = {g0!r}, not 0")
    if not g1 == 1:
        return fail(f"g(1) = {g1!r}, not 1")
    entries.append({"clause": "g(0) = 0 and g(1) = 1", "ok": True})
    dnum = num.derivative() * den - num * den.derivative()
    if dnum.is_zero():
        return fail("g' vanishes identically")
    core, k0 = _deflate(dnum, 0)
    core, k1 = _deflate(core, 1)
    if core.degree > 0 and core.sturm_root_count(0, 1):
        return fail("g' changes sign or vanishes inside (0,1)")
    half = core(AlgebraicNumber(1) / 2)
    # y**k0 and (y-1)**k1 factors: sign of (1/2 - 1)**k1 enters
    sign = half.sign() * (-1 if k1 % 2 else 1)
    if sign <= 0:
        return fail("g is decreasing on (0,1)")
    entries.append({"clause": "g' > 0 on (0,1)", "ok": True, "deflated": [k0, k1]})
    return Report("unit_interval_bijection", True, entries)


def verify_puiseux_inverse(t, order=11):
    """g^-1(g(y)) = y + O(y**order) with the canonical branches."""
    work = order + 6
    xs = PuiseuxSeries.from_rational_function(t.g, work)
    try:
        s = t.inverse.series(xs, work)
    except (DomainError, ZeroDivisionError) as exc:
        return Report("puiseux_inverse", False, [], f"series expansion failed: {exc}")
    if s.prec < order * s.e:
        return Report("puiseux_inverse", False, [], f"only {s.prec}/{s.e} orders known")
    d = s - PuiseuxSeries([AlgebraicNumber(1)], 1, 10**9, 1)
    bad = [k for k in range(order * d.e) if k < d.prec and not d.coefficient(k).is_zero()]
    if bad:
        k = bad[0]
        return Report("puiseux_inverse", False, [{"first_mismatch": f"{k}/{d.e}"}],
                      f"g^-1(g(y)) - y has a nonzero term of order {k}/{d.e}")
    return Report("puiseux_inverse", True, [{"order": order}])


def verify_unit_interval_branch(t, points=(1, 2, 3, 4, 5), prec=160):
    """g^-1(g(y)) = y at y = k/6 with principal roots (the stated branch on [0,1])."""
    entries, worst = [], 0
    forms = [("primary", t.inverse)]
    if getattr(t, "inverse_alt", None) is not None:
        forms.append(("alternate", t.inverse_alt))
    with mpmath.workprec(prec):
        for k in points:
            y = mpmath.mpf(k) / 6
            x = _eval_rf(t.g, y, prec).real
            for label, inv in forms:
                try:
                    err = abs(inv.evaluate(x, prec) - y)
                except ZeroDivisionError:
                    continue
                worst = max(worst, err)
                if err > mpmath.mpf(2) ** (-prec // 2):
                    entries.append({"form": label, "y": f"{k}/6", "error": float(err)})
                    return Report("unit_interval_branch", False, entries,
                                  f"{label} inverse leaves the principal branch at y = {k}/6")
    entries.append({"max_error": float(worst)})
    return Report("unit_interval_branch", True, entries)


def numeric_probe(t, samples=20, seed=0, tol=1e-12):
    """Advisory check |g(g^-1(x)) - x| < tol at random x in (0,1), principal roots."""
    rng = random.Random(seed)
    worst = 0.0
    entries = []
    forms = [t.inverse] + ([t.inverse_alt] if getattr(t, "inverse_alt", None) is not None else [])
    with mpmath.workprec(80):
        for _ in range(samples):
            x = mpmath.mpf(rng.uniform(0.01, 0.99))
            for inv in forms:
                try:
                    y = inv.evaluate(x, 80)
                except ZeroDivisionError:
                    continue
                gv = complex(_eval_rf(t.g, y))
                err = abs(gv - complex(x))
                worst = max(worst, err)
    entries.append({"samples": samples, "max_error": worst})
    return Report("numeric_probe", worst < tol, entries, None if worst < tol else f"max error {worst:.3g}")


def _eval_rf(f, y, prec=100):
    def ev(p):
        acc = mpmath.mpc(0)
        for c in reversed(p.coeffs):
            acc = acc * y + (c.to_mpc(prec + 20) if hasattr(c, "re") else c.to_mpf(prec + 20))
        return acc

    return ev(f.num) / ev(f.den)


# mutation testing -------------------------------------------------------------


def _nonzero_positions(p):
    return [k for k, c in enumerate(p.coeffs) if not c.is_zero()]


def _bump(p, k, delta):
    cs = list(p.coeffs)
    cs[k] = cs[k] + delta
    return Polynomial(cs, p.var)


def _flip(p, k):
    cs = list(p.coeffs)
    cs[k] = -cs[k]
    return Polynomial(cs, p.var)


def _drop(p, k):
    cs = list(p.coeffs)
    cs[k] = cs[k] * 0
    return Polynomial(cs, p.var)


def mutants(t, count=30, seed=0):
    """Perturbed copies of ``t``, each with one corrupted coefficient in g or g^-1."""
    rng = random.Random(seed)
    out = []
    kinds = ["bump", "flip", "drop"]
    attempts = 0
    while len(out) < count and attempts < 50 * count:
        attempts += 1
        kind = kinds[attempts % 3]
        target = "g" if rng.random() < 0.5 else "inverse"
        if target == "g":
            part = rng.choice(["num", "den"]) if t.g.den.degree > 0 else "num"
            p = getattr(t.g, part)
            k = rng.choice(_nonzero_positions(p))
            q = {"bump": lambda: _bump(p, k, 1), "flip": lambda: _flip(p, k), "drop": lambda: _drop(p, k)}[kind]()
            if q.is_zero():
                continue
            try:
                g = RationalFunction(q, t.g.den) if part == "num" else RationalFunction(t.g.num, q)
            except ZeroDivisionError:
                continue
            if g == t.g:
                continue
            out.append((f"{kind} g.{part}[{k}]", replace(t, g=g)))
        else:
            inv = t.inverse
            mask = rng.choice(sorted(inv.num))
            p = inv.num[mask]
            k = rng.choice(_nonzero_positions(p))
            q = {"bump": lambda: _bump(p, k, 1), "flip": lambda: _flip(p, k), "drop": lambda: _drop(p, k)}[kind]()
            num = dict(inv.num)
            num[mask] = q
            new = SqrtExpr(inv.ctx, num, inv.den)
            if new.is_zero() or (new - inv).is_zero():
                continue
            out.append((f"{kind} inverse[{mask}][{k}]", replace(t, inverse=new, inverse_alt=None)))
    return out


def detects(t, R):
    """True if some exact check rejects ``t``."""
    if not verify_inverse(t):
        return True
    if not verify_rationalizes(t, R):
        return True
    if t.variant == "general":
        return not verify_puiseux_inverse(t)
    return not (verify_unit_interval_bijection(t) and verify_unit_interval_branch(t))


def verify_all(t, R, probe=True):
    reports = [verify_rationalizes(t, R), verify_inverse(t)]
    if t.variant == "general":
        reports.append(verify_puiseux_inverse(t))
    else:
        reports.append(verify_unit_interval_bijection(t))
        reports.append(verify_unit_interval_branch(t))
    if probe:
        reports.append(numeric_probe(t))
    return reports

"""``radix`` command line.

Exit codes: 0 ok, 1 parse error or malformed command line, 2 no rationalizing transformation,
3 ineligible variant or unrationalized radicand, 4 unsupported sum pattern,
5 divergent integral, 6 requested accuracy not reached.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog, integrals, radicands, sums, verifier
from .parser import ParseError, parse_number, parse_radicands, parse_sum, parse_word, parse_words
from .poly import DomainError, Polynomial

SCHEMA = 1
OK, PARSE, NO_TRANSFORMATION, INELIGIBLE, UNSUPPORTED, DIVERGENT, INACCURATE = range(7)


class _Exit(Exception):
    def __init__(self, code, msg):
        super().__init__(msg)
        self.code = code


def default_tol():
    raw = os.environ.get("RADIX_PRECISION")
    if not raw:
        return 1e-10
    try:
        return float(raw)
    except ValueError:
        raise _Exit(PARSE, f"RADIX_PRECISION must be a number, got {raw!r}") from None


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps({"schema": SCHEMA, **payload}, indent=2, sort_keys=True))
    else:
        print(text)


def _fmt_value(v):
    if isinstance(v, complex):
        if abs(v.imag) <= 1e-15 * max(1.0, abs(v.real)):
            return f"{v.real:.15g}"
        return f"{v.real:.15g}{v.imag:+.15g}i"
    return f"{float(v):.15g}"


# rationalize -------------------------------------------------------------------------


def cmd_rationalize(args):
    polys = parse_radicands(args.radicands)
    R = radicands.normalize(polys)
    case = radicands.classify(R)
    if case.tag == "NoTransformation":
        payload = {"case": "NoTransformation", "witness": repr(case.witness)}
        text = (f"case: NoTransformation\nwitness: sqrt({case.witness}) defines a curve of "
                f"positive genus (squarefree of degree {case.witness.degree})")
        _emit(args, payload, text)
        return NO_TRANSFORMATION
    if case.tag == "Empty":
        payload = {"case": "Empty", "transformation": {"g_text": "y", "inverse_text": "x"}}
        _emit(args, payload, "case: Empty (every radicand is a square)\nx = g(y) = y (identity)")
        return OK
    if args.variant == "general":
        t = catalog.general_transformation(case)
    else:
        t = catalog.unit_interval_transformation(case, args.variant, list(R.reduced))
    if args.lam is not None:
        t = catalog.compose_moebius(t, parse_number(args.lam))
    reports = verifier.verify_all(t, R) if args.verify else []
    exact_failed = [r for r in reports if not r and r.name != "numeric_probe"]
    if args.format == "json":
        payload = {"case": repr(case), "transformation": t.to_json()}
        if args.verify:
            payload["verification"] = [r.to_json() for r in reports]
        _emit(args, payload, "")
    else:
        body = t.to_latex() if args.format == "latex" else t.to_text()
        if args.format == "latex":
            body = f"% case: {case!r}\n{body}"
        lines = [body]
        for r in reports:
            lines.append(f"verify {r.name}: {'pass' if r else 'FAIL: ' + str(r.failure)}")
        print("\n".join(lines))
    if exact_failed:
        print(f"verification failed: {exact_failed[0].failure}", file=sys.stderr)
        return INELIGIBLE
    return OK


# transform-integral ------------------------------------------------------------------


def _word_radicands(w):
    x = Polynomial.gen("x")
    out = []
    for l in w.letters:
        factors = l.sqrt_factors(w.base)
        if factors:
            p = Polynomial.const(1, "x")
            for _, r in factors:
                p = p * (x - r)
            out.append(p)
    return out


def cmd_transform_integral(args):
    w = parse_word(args.word)
    if not w.letters:
        _emit(args, {"word": w.to_str(), "transformed": w.to_str()}, w.to_str())
        return OK
    polys = parse_radicands(args.radicands) if args.radicands else _word_radicands(w)
    if not polys:
        polys = [Polynomial.gen("x")]  # rational letters only: any bijection of [0,1] will do
    R = radicands.normalize(polys)
    case = radicands.classify(R)
    if case.tag == "NoTransformation":
        raise _Exit(NO_TRANSFORMATION, f"no rationalizing transformation; witness {case.witness}")
    if case.tag == "Empty":
        _emit(args, {"word": w.to_str(), "transformed": w.to_str()}, w.to_str())
        return OK
    if args.variant == "general":
        t = catalog.general_transformation(case)
    elif args.variant:
        t = catalog.unit_interval_transformation(case, args.variant, list(R.reduced))
    else:
        # prefer a bijection of [0,1]; base point 0 can fall back to the general map
        try:
            t = catalog.unit_interval_transformation(case, "real01", list(R.reduced))
        except catalog.IneligibleError:
            if w.base == 1:
                raise
            t = catalog.general_transformation(case)
    if args.lam is not None:
        t = catalog.compose_moebius(t, parse_number(args.lam))
    tw = integrals.transform_word(w, t)
    checks = []
    if args.check:
        inv = t.inverse_alt if t.inverse_alt is not None else t.inverse
        for x in args.points:
            xv = float(parse_number(x))
            y = complex(inv.evaluate(xv, 80))
            if abs(y.imag) > 1e-14:
                # integration runs along the real line only
                checks.append({"x": x, "skipped": f"g^-1({x}) is not real"})
                continue
            a = integrals.eval_word(w, xv, args.tol)
            b = integrals.eval_word(tw, y.real, args.tol)
            checks.append({"x": x, "original": _fmt_value(complex(a)), "transformed": _fmt_value(complex(b)),
                           "difference": abs(complex(a) - complex(b))})
    failed = [c for c in checks if c.get("difference", 0) > 1e-8]
    payload = {"word": w.to_str(), "g": repr(t.g), "inverse": repr(t.inverse),
               "transformed": tw.to_str(), "latex": tw.latex(), "check": checks}
    lines = [f"x = g(y) = {t.g}", f"y = {t.inverse}", tw.latex() if args.format == "latex" else tw.to_str()]
    for c in checks:
        if "skipped" in c:
            lines.append(f"check x = {c['x']}: skipped ({c['skipped']})")
        else:
            lines.append(f"check x = {c['x']}: |difference| = {c['difference']:.3g}")
    _emit(args, payload, "\n".join(lines))
    if failed:
        print(f"numeric check failed at x = {failed[0]['x']}", file=sys.stderr)
        return INACCURATE
    return OK


# sum2int --------------------------------------------------------------------------


def cmd_sum2int(args):
    s = parse_sum(args.sum)
    res = sums.to_generating_function(s)
    text = res.to_str()
    payload = {"sum": s.to_str(), "result": text, "words_only": res.is_words()}
    lines = [text]
    status = OK
    if args.check_series:
        x = parse_number(args.x)
        direct = complex(sums.direct_series(s, float(x), args.check_series))
        value = complex(res.evaluate(float(x), args.tol))
        diff = abs(direct - value)
        payload["check"] = {"x": args.x, "terms": args.check_series, "series": _fmt_value(direct),
                            "integrals": _fmt_value(value), "difference": diff}
        lines.append(f"series check at x = {args.x} with {args.check_series} terms: |difference| = {diff:.3g}")
        if diff > 1e-6:
            print("series check failed", file=sys.stderr)
            status = INACCURATE
    _emit(args, payload, "\n".join(lines))
    return status


# eval ---------------------------------------------------------------------------


def cmd_eval(args):
    comb = parse_words(args.word)
    x = parse_number(args.x)
    if not x.is_real():
        raise _Exit(PARSE, "evaluation points must be real")
    xv = float(x)
    v = complex(comb.evaluate(xv, args.tol))
    _emit(args, {"word": comb.to_str(), "x": args.x, "value": _fmt_value(v), "tol": args.tol}, _fmt_value(v))
    return OK


# entry point -------------------------------------------------------------------------


class _ArgParser(argparse.ArgumentParser):
    # argparse would exit with 2, which already means "no transformation"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(PARSE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _ArgParser(prog="radix", description="Rationalize square roots and rewrite nested integrals and sums.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, variant_default):
        sp.add_argument("--variant", choices=["general", "real01", "complex01"], default=variant_default)
        sp.add_argument("--lambda", dest="lam", metavar="RAT", help="compose with the Moebius map of parameter RAT")
        sp.add_argument("--format", choices=["plain", "latex", "json"], default="plain")

    r = sub.add_parser("rationalize", help="find a rationalizing transformation")
    r.add_argument("radicands", nargs="+")
    common(r, "general")
    r.add_argument("--verify", action="store_true", help="attach exact verification reports")
    r.set_defaults(func=cmd_rationalize)

    t = sub.add_parser("transform-integral", help="change variables in a nested integral")
    t.add_argument("word")
    t.add_argument("--radicands", nargs="+", help="radicands to rationalize (default: read off the word)")
    common(t, None)
    t.add_argument("--check", action="store_true", help="compare both sides numerically")
    t.add_argument("--points", nargs="+", default=["1/2"])
    t.add_argument("--tol", type=float, default=None)
    t.set_defaults(func=cmd_transform_integral)

    s = sub.add_parser("sum2int", help="rewrite a nested sum as nested integrals")
    s.add_argument("sum")
    s.add_argument("--check-series", type=int, metavar="N", default=0)
    s.add_argument("--x", default="1/5")
    s.add_argument("--tol", type=float, default=None)
    s.add_argument("--format", choices=["plain", "json"], default="plain")
    s.set_defaults(func=cmd_sum2int)

    e = sub.add_parser("eval", help="evaluate a nested integral numerically")
    e.add_argument("word")
    e.add_argument("x")
    e.add_argument("tol", nargs="?", type=float, default=None)
    e.add_argument("--format", choices=["plain", "json"], default="plain")
    e.set_defaults(func=cmd_eval)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if hasattr(args, "tol") and args.tol is None:
            args.tol = default_tol()
        return args.func(args)
    except _Exit as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return PARSE
    except catalog.IneligibleError as exc:
        print(f"ineligible: {exc}", file=sys.stderr)
        return INELIGIBLE
    except sums.UnsupportedPattern as exc:
        print(f"unsupported pattern: {exc}", file=sys.stderr)
        return UNSUPPORTED
    except integrals.DivergenceError as exc:
        print(f"divergent: {exc}", file=sys.stderr)
        return DIVERGENT
    except integrals.AccuracyError as exc:
        print(f"accuracy not reached: {exc}", file=sys.stderr)
        return INACCURATE
    except (integrals.UsageError, catalog.UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INELIGIBLE


if __name__ == "__main__":
    sys.exit(main())

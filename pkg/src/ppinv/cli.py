"""Command-line front end.

Exit status: 0 on success or a true verdict, 1 on a mathematical negative
(not a permutation, criterion fails, inverses disagree), 2 on usage or
parse errors.  ``--json`` prints one JSON document on stdout; elements are
always encoded by their integer index.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

import numpy as np

from . import binom, cyclotomic, dickson, piecewise, selftest
from .gf import FieldCtx, FieldError, parse_element, parse_field_spec
from .parse import PolyParseError, parse_poly
from .polyring import (
    Poly,
    brute_force_inverse,
    const,
    poly_compose,
    poly_sub,
    render,
    tabulate,
    x,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2
METHODS = ("oracle", "theorem2", "closed-form")


class UsageError(Exception):
    pass


def field_block(ctx: FieldCtx) -> dict:
    return {"p": ctx.p, "n": ctx.n, "modulus": list(ctx.modulus)}


def emit(doc: dict, as_json: bool, out=None):
    out = out or sys.stdout
    if as_json:
        json.dump(doc, out, ensure_ascii=False)
        out.write("\n")
        return
    for key, value in doc.items():
        if isinstance(value, dict):
            out.write(f"{key}:\n")
            for k, v in value.items():
                out.write(f"  {k}: {_human(v)}\n")
        else:
            out.write(f"{key}: {_human(value)}\n")


def _human(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    if isinstance(v, tuple):
        v = list(v)
    return str(v)


def write_csv(path: str, ctx: FieldCtx, f: Poly, g: Poly | None):
    vals = tabulate(f)
    back = tabulate(g, vals) if g is not None else None
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["x", "f(x)", "finv(f(x))"])
        for a in range(ctx.q):
            w.writerow([a, int(vals[a]), "" if back is None else int(back[a])])


# -- inversion methods --------------------------------------------------------

def _shifted_branches(f: Poly):
    """(branched map of f - f(0), f(0)) so that the branched map fixes 0."""
    c = f.indices[0] if f.indices else 0
    g = poly_sub(f, const(f.ctx, c)) if c else f
    return piecewise.split(g), c


def invert_piecewise(f: Poly | None = None,
                    bpp: piecewise.BranchedPP | None = None) -> Poly | None:
    """Inverse through per-coset branch inverses, or None when the branches
    neither preserve nor swap the cosets."""
    try:
        if bpp is not None:
            return piecewise.piecewise_inverse(bpp)
        shifted, c = _shifted_branches(f)
        g = piecewise.piecewise_inverse(shifted)
    except piecewise.CaseNotCovered:
        return None
    if c:
        g = poly_compose(g, poly_sub(x(f.ctx), const(f.ctx, c)))
    return g


def invert_closed_form(f: Poly, bpp: piecewise.BranchedPP | None = None) -> Poly | None:
    """Closed-form inverse when f is a recognised family member, else None."""
    ctx = f.ctx
    if ctx.q == 3 and f.indices in ((0, 1), (0, 2)):
        # every family collapses to +-x over GF(3), which is its own inverse;
        # the cubic shape does not survive reduction mod x^3 - x
        return f
    if ctx.p == 3 and ctx.n % 2 == 0:
        if f == dickson.hou_pp(ctx):
            return dickson.hou_inverse(ctx)
        D = dickson.dickson_poly(dickson.DicksonSpec(ctx.q + 5, ctx.one, True), ctx)
        if f == D:
            return dickson.reversed_dickson_inverse(ctx)
    if bpp is not None:
        params = cyclotomic.recognize(bpp)
        if params is not None and cyclotomic.criterion(params):
            return cyclotomic.closed_form_inverse(params)
    return None


def _is_identity_on(f: Poly, g: Poly) -> bool:
    ctx = f.ctx
    return bool((tabulate(g, tabulate(f)) == ctx.all_indices()).all())


# -- subcommands --------------------------------------------------------------

def cmd_field(args) -> int:
    ctx = parse_field_spec(args.spec)
    doc = {"command": "field", "field": field_block(ctx), "q": ctx.q, "xi": ctx.xi.index}
    if args.element is not None:
        e = parse_element(args.element, ctx)
        doc["element"] = {"index": e.index, "coords": list(e.coeffs),
                          "eta": ctx.eta(e.index)}
    emit(doc, args.json)
    return EXIT_OK


def _load_map(args, ctx):
    """Return (f, bpp) from --poly or --f0/--f1."""
    if args.poly is not None:
        if args.f0 is not None or args.f1 is not None:
            raise UsageError("give either --poly or --f0/--f1, not both")
        return parse_poly(args.poly, ctx), None
    if args.f0 is None or args.f1 is None:
        raise UsageError("need --poly, or both --f0 and --f1")
    bpp = piecewise.BranchedPP(parse_poly(args.f0, ctx), parse_poly(args.f1, ctx))
    return piecewise.branched_to_poly(bpp), bpp


def cmd_pp(args) -> int:
    ctx = parse_field_spec(args.spec)
    f, bpp = _load_map(args, ctx)
    if bpp is not None:
        behavior = piecewise.analyze(bpp)
    else:
        behavior = piecewise.analyze(_shifted_branches(f)[0])
    doc = {"command": "pp", "action": args.action, "field": field_block(ctx),
           "poly": f.indices, "is_pp": behavior.is_pp, "case": behavior.case}
    if args.action == "check":
        doc["behavior"] = behavior.to_dict()
        emit(doc, args.json)
        return EXIT_OK if behavior.is_pp else EXIT_NEGATIVE

    if not behavior.is_pp:
        doc["inverse"] = None
        if args.action == "table" and args.csv:
            write_csv(args.csv, ctx, f, None)
        emit(doc, args.json)
        return EXIT_NEGATIVE

    wanted = METHODS if args.method == "all" else (args.method,)
    results = {}
    for m in wanted:
        if m == "oracle":
            results[m] = brute_force_inverse(f)
        elif m == "theorem2":
            results[m] = invert_piecewise(f, bpp)
        else:
            results[m] = invert_closed_form(f, bpp)
    if args.method == "closed-form" and results["closed-form"] is None:
        raise UsageError("no closed form is known for this polynomial")
    if args.method == "theorem2" and results["theorem2"] is None:
        raise UsageError("the piecewise method needs branches that preserve or swap the cosets")
    found = [g for g in results.values() if g is not None]
    agree = all(g == found[0] for g in found)
    inverse = found[0]
    verified = _is_identity_on(f, inverse)
    doc.update({
        "inverse": inverse.indices,
        "methods": {m: (g.indices if g is not None else None) for m, g in results.items()},
        "agree": agree,
        "verified": verified,
    })
    if not args.json:
        doc["inverse_text"] = render(inverse)
    if args.csv:
        write_csv(args.csv, ctx, f, inverse)
    emit(doc, args.json)
    return EXIT_OK if agree and verified else EXIT_NEGATIVE


def cmd_dickson(args) -> int:
    ctx = parse_field_spec(args.spec)
    a = parse_element(args.a, ctx)
    spec = dickson.DicksonSpec(args.index, a, args.kind == "reversed")
    D = dickson.dickson_poly(spec, ctx)
    doc = {"command": "dickson", "field": field_block(ctx), "kind": args.kind,
           "index": args.index, "a": a.index, "poly": D.indices}
    if not args.invert:
        emit(doc, args.json)
        return EXIT_OK
    vals = tabulate(D)
    is_pp = len(np.unique(vals)) == ctx.q
    doc["is_pp"] = bool(is_pp)
    if not is_pp:
        emit(doc, args.json)
        return EXIT_NEGATIVE
    oracle = brute_force_inverse(D)
    closed = None
    if (spec.reversed and a.index == 1 and args.index == ctx.q + 5
            and ctx.p == 3 and ctx.n % 2 == 0):
        closed = dickson.reversed_dickson_inverse(ctx)
    doc["inverse"] = oracle.indices
    doc["closed_form"] = closed.indices if closed is not None else None
    doc["agree"] = closed is None or closed == oracle
    emit(doc, args.json)
    return EXIT_OK if doc["agree"] else EXIT_NEGATIVE


def _family_params(args, ctx) -> cyclotomic.FamilyParams:
    def el(v, name):
        if v is None:
            return None
        e = parse_element(v, ctx)
        if not e:
            raise UsageError(f"--{name} must be nonzero")
        return e
    try:
        return cyclotomic.FamilyParams(
            args.family, ctx, el(args.alpha, "alpha"), el(args.beta, "beta"),
            gamma=el(args.gamma, "gamma"), theta=el(args.theta, "theta"), t=args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_cyclo(args) -> int:
    ctx = parse_field_spec(args.spec)
    if args.action == "sweep":
        res = cyclotomic.criterion_sweep(ctx, args.family)
        sampled = cyclotomic.sample_passing(ctx, args.family, args.samples, args.seed)
        bad = []
        for params in sampled:
            f = piecewise.branched_to_poly(cyclotomic.build_pp(params))
            if cyclotomic.closed_form_inverse(params) != brute_force_inverse(f):
                bad.append(params.to_dict())
        doc = {"command": "cyclo", "action": "sweep", "field": field_block(ctx),
               "family": args.family, "tuples": res.total,
               "permutations": res.permutations, "criterion_true": res.passing,
               "agree": res.agrees, "mismatches": res.mismatches[:20],
               "seed": args.seed, "sampled": len(sampled), "inverse_failures": bad}
        emit(doc, args.json)
        return EXIT_OK if res.agrees and not bad else EXIT_NEGATIVE
    if args.alpha is None or args.beta is None:
        raise UsageError("--alpha and --beta are required")
    params = _family_params(args, ctx)
    verdict = cyclotomic.criterion(params)
    bpp = cyclotomic.build_pp(params, check=False)
    doc = {"command": "cyclo", "action": args.action, "field": field_block(ctx),
           "params": params.to_dict(), "criterion": verdict.ok, "reason": verdict.reason}
    if args.action == "check":
        doc["verified"] = piecewise.analyze(bpp).is_pp == verdict.ok
        emit(doc, args.json)
        return EXIT_OK if verdict.ok else EXIT_NEGATIVE
    if not verdict.ok:
        emit(doc, args.json)
        return EXIT_NEGATIVE
    f = piecewise.branched_to_poly(bpp)
    if args.action == "build":
        doc.update({"f0": bpp.f0.indices, "f1": bpp.f1.indices, "poly": f.indices,
                    "is_pp": piecewise.analyze(bpp).is_pp})
        emit(doc, args.json)
        return EXIT_OK
    g = cyclotomic.closed_form_inverse(params)
    oracle = brute_force_inverse(f)
    doc.update({"poly": f.indices, "inverse": g.indices,
                "verified": g == oracle and _is_identity_on(f, g)})
    emit(doc, args.json)
    return EXIT_OK if doc["verified"] else EXIT_NEGATIVE


def cmd_binom(args) -> int:
    if args.action == "residue":
        if args.k < 0:
            raise UsageError("k must be >= 0")
        r = binom.binom_generalized_mod_p(args.m, args.k, args.p)
        doc = {"command": "binom", "m": args.m, "k": args.k, "p": args.p, "residue": r}
        emit(doc, args.json)
        return EXIT_OK
    n = args.n
    if n < 1:
        raise UsageError("n must be >= 1")
    shifted = sorted(binom.shifted_support(n))
    upper = sorted(binom.upper_block_support(n))
    brute_shifted = [i for i in range(1, 3 ** n) if binom.binom_mod_p(3 * i, i - 1, 3)]
    brute_upper = [i for i in binom.upper_block_range(n) if binom.upper_block_binom(i, n)]
    doc = {"command": "binom", "n": n, "shifted_support": shifted,
           "upper_block_support": upper,
           "agree": shifted == brute_shifted and upper == brute_upper}
    emit(doc, args.json)
    return EXIT_OK if doc["agree"] else EXIT_NEGATIVE


def cmd_selftest(args) -> int:
    results = selftest.run(args.level, args.seed)
    ok = all(r.passed for r in results)
    if args.json:
        emit({"command": "selftest", "level": args.level, "seed": args.seed,
              "passed": ok, "checks": [r.to_dict() for r in results]}, True)
    else:
        for r in results:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  ({r.seconds:.2f}s)")
        print("all checks passed" if ok else "SOME CHECKS FAILED")
    return EXIT_OK if ok else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ppinv",
        description="Permutation polynomials over GF(p^n) and their compositional inverses.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, spec=True):
        if spec:
            p.add_argument("--spec", required=True, help="field: p^n or p^n:c0,...,cn")
        p.add_argument("--json", action="store_true", help="emit a JSON document")

    p = sub.add_parser("field", help="describe a field")
    common(p)
    p.add_argument("--element", help="element literal to describe")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("pp", help="check or invert a (branched) permutation polynomial")
    p.add_argument("action", choices=("check", "invert", "table"))
    common(p)
    p.add_argument("--poly")
    p.add_argument("--f0", help="branch on the squares")
    p.add_argument("--f1", help="branch on the non-squares")
    p.add_argument("--method", default="all",
                   choices=METHODS + ("piecewise", "all"))
    p.add_argument("--csv", help="write the value table x,f(x),finv(f(x)) here")
    p.set_defaults(func=cmd_pp)

    p = sub.add_parser("dickson", help="(reversed) Dickson polynomials")
    common(p)
    p.add_argument("--kind", choices=("plain", "reversed"), default="reversed")
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--a", default="1", help="parameter element")
    p.add_argument("--invert", action="store_true")
    p.set_defaults(func=cmd_dickson)

    p = sub.add_parser("cyclo", help="generalized cyclotomic permutation families")
    p.add_argument("action", choices=("check", "build", "invert", "sweep"))
    common(p)
    p.add_argument("--family", required=True, choices=cyclotomic.FAMILIES)
    for name in ("alpha", "beta", "gamma", "theta"):
        p.add_argument(f"--{name}")
    p.add_argument("--t", type=int)
    p.add_argument("--samples", type=int, default=20,
                   help="sweep: passing tuples whose closed-form inverse is checked")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_cyclo)

    p = sub.add_parser("binom", help="binomial coefficients mod p")
    bsub = p.add_subparsers(dest="action", required=True)
    r = bsub.add_parser("residue")
    r.add_argument("m", type=int)
    r.add_argument("k", type=int)
    r.add_argument("--p", type=int, default=3)
    r.add_argument("--json", action="store_true")
    s = bsub.add_parser("support")
    s.add_argument("n", type=int)
    s.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_binom)

    p = sub.add_parser("selftest", help="run the built-in verification suite")
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_selftest)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "method", None) == "piecewise":
        args.method = "theorem2"
    try:
        return args.func(args)
    except (UsageError, FieldError, PolyParseError, ValueError) as exc:
        # every library input error is a ValueError subclass
        print(f"ppinv: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Self-test orchestration used by ``ppinv selftest``.

``quick`` restricts every check to fields with q <= 27; ``full`` runs the
sizes of the acceptance suite.  Each check returns a :class:`CheckResult`.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import binom, cyclotomic, dickson, piecewise
from .gf import FieldCtx
from .polyring import brute_force_inverse, from_terms, is_permutation, tabulate


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_dict(self):
        return {"name": self.name, "passed": self.passed,
                "seconds": round(self.seconds, 3), "detail": self.detail}


def _fields(degrees):
    return [FieldCtx(3, n) for n in degrees]


def check_hou_inverse(level):
    degrees = (2,) if level == "quick" else (2, 4)
    detail = {}
    for ctx in _fields(degrees):
        f = dickson.hou_pp(ctx)
        detail[f"q={ctx.q}"] = dickson.hou_inverse(ctx) == brute_force_inverse(f)
    return all(detail.values()), detail


def check_hou_pointwise(level):
    n = 2 if level == "quick" else 6
    ctx = FieldCtx(3, n)
    f, g = dickson.hou_pp(ctx), dickson.hou_inverse(ctx)
    ok = bool((tabulate(g, tabulate(f)) == ctx.all_indices()).all())
    return ok, {f"q={ctx.q}": ok}


def check_reversed_dickson(level):
    degrees = (2,) if level == "quick" else (2, 4)
    detail = {}
    for ctx in _fields(degrees):
        D = dickson.dickson_poly(dickson.DicksonSpec(ctx.q + 5, ctx.one, True), ctx)
        ident = D == dickson.reversed_dickson_hou(ctx)
        Dinv = dickson.reversed_dickson_inverse(ctx)
        inv_ok = bool((tabulate(Dinv, tabulate(D)) == ctx.all_indices()).all())
        detail[f"q={ctx.q}"] = ident and inv_ok
    return all(detail.values()), detail


def check_branch_engine(level):
    detail = {}
    for ctx in _fields((2,) if level == "quick" else (2, 4)):
        _, f1 = dickson.hou_branches(ctx)
        g = piecewise.branch_inverse(f1, 1, 1)
        detail[f"closed q={ctx.q}"] = g == dickson.hou_nonsquare_branch_inverse(ctx)
    for ctx in _fields((2, 3)):
        # x(x - 1)^2 permutes the non-squares (1 is a square)
        f1 = cyclotomic.cubic_branch(ctx.one, ctx.one)
        cls = piecewise.classes(ctx)
        ev = piecewise.branch_inverse(f1, 1, 1, cls=cls, verify=True)
        sy = piecewise.branch_inverse(f1, 1, 1, route="symbolic", cls=cls)
        detail[f"routes q={ctx.q}"] = ev == sy
    return all(detail.values()), detail


def check_branched_criterion(level, seed):
    ctx = FieldCtx(3, 2)
    rng = random.Random(seed)
    cls = piecewise.classes(ctx)
    count = 100 if level == "quick" else 500
    mismatches = 0
    pps = 0
    for _ in range(count):
        f0 = _random_branch(ctx, rng)
        f1 = _random_branch(ctx, rng)
        c0 = f0.indices[0] if f0.indices else 0
        f1 = from_terms(ctx, [(e, v) for e, v in enumerate(f1.indices) if e] + [(0, ctx.neg(c0))])
        bpp = piecewise.BranchedPP(f0, f1)
        crit = piecewise.analyze(bpp, cls).is_pp
        exhaustive = is_permutation(piecewise.branched_to_poly(bpp))
        pps += exhaustive
        mismatches += crit != exhaustive
    return mismatches == 0, {"samples": count, "permutations": pps, "mismatches": mismatches}


def _random_branch(ctx, rng):
    if rng.random() < 0.5:
        return from_terms(ctx, [(rng.randint(1, 3), rng.randrange(1, ctx.q))])
    return from_terms(ctx, [(e, rng.randrange(ctx.q)) for e in range(4)])


def check_power_sums(level):
    degrees = (2, 3) if level == "quick" else (2, 3, 4)
    bad = 0
    for ctx in _fields(degrees):
        cls = piecewise.classes(ctx)
        q = ctx.q
        half = ctx.inv(2)
        for s in (0, 1):
            for k in range(1, q):
                if k == q - 1:
                    want = ctx.neg(half)
                elif k == (q - 1) // 2:
                    want = half if s == 1 else ctx.neg(half)
                else:
                    want = 0
                bad += piecewise.coset_power_sum(cls, s, k).index != want
    return bad == 0, {"mismatches": bad}


def check_lucas(level, seed):
    top = 100 if level == "quick" else 500
    bad = 0
    for p in (3, 5, 7):
        for m in range(top + 1):
            for k in range(m + 1):
                bad += binom.binom_mod_p(m, k, p) != comb(m, k) % p
    rng = random.Random(seed)
    shift_bad = 0
    for q, p in ((9, 3), (25, 5), (27, 3), (49, 7)):
        for _ in range(200):
            m = rng.randint(-3 * q, 3 * q)
            k = rng.randrange(q)
            shift_bad += (binom.binom_generalized_mod_p(q + m, k, p)
                          != binom.binom_generalized_mod_p(m, k, p))
    return bad == 0 and shift_bad == 0, {"lucas_mismatches": bad, "shift_mismatches": shift_bad}


def check_binomial_predictions(level):
    nmax3, nmax4 = (3, 3) if level == "quick" else (6, 5)
    ok = True
    for n in range(1, nmax3 + 1):
        found = {i for i in range(1, 3 ** n) if binom.binom_mod_p(3 * i, i - 1, 3)}
        ok &= found == binom.shifted_support(n)
    for n in range(1, nmax4 + 1):
        found = {i for i in binom.upper_block_range(n) if binom.upper_block_binom(i, n)}
        ok &= found == binom.upper_block_support(n)
        for i in binom.upper_block_range(n):
            ok &= binom.digits_nonincreasing(i, n) == (i in found)
        for k in range(n):
            for j in range(k + 1):
                i = binom.upper_block_index(j, k, n)
                raw = binom.upper_block_binom(i, n)
                ok &= raw == binom.upper_block_value(j, k)
                sign = 1 if (i - (3 ** n + 1) // 2) % 2 == 0 else 2
                ok &= raw * sign % 3 == binom.upper_block_signed_value(j, k, n)
    return bool(ok), {}


def check_families(level, seed):
    detail = {}
    for ctx in _fields((2, 3)):
        for fam in cyclotomic.FAMILIES:
            detail[f"sweep {fam} q={ctx.q}"] = cyclotomic.criterion_sweep(ctx, fam).agrees
    degrees = (2, 3) if level == "quick" else (2, 3, 4)
    count = 20 if level == "quick" else 100
    for ctx in _fields(degrees):
        for fam in cyclotomic.FAMILIES:
            ok = True
            for params in cyclotomic.sample_passing(ctx, fam, count, seed):
                f = piecewise.branched_to_poly(cyclotomic.build_pp(params))
                ok &= cyclotomic.closed_form_inverse(params) == brute_force_inverse(f)
            detail[f"inverse {fam} q={ctx.q}"] = bool(ok)
    return all(detail.values()), detail


def check_degenerate(level, seed):
    ctx = FieldCtx(3, 1)
    plus_minus = {(0, 1), (0, 2)}
    ok = True
    for fam in cyclotomic.FAMILIES:
        for params in cyclotomic.sample_passing(ctx, fam, 4, seed):
            bpp = cyclotomic.build_pp(params)
            f = piecewise.branched_to_poly(bpp)
            for g in (cyclotomic.closed_form_inverse(params), brute_force_inverse(f),
                      piecewise.piecewise_inverse(bpp)):
                ok &= g.indices in plus_minus
    return bool(ok), {}


CHECKS = [
    ("closed-form inverse equals oracle", check_hou_inverse, ()),
    ("closed-form inverse pointwise", check_hou_pointwise, ()),
    ("reversed Dickson identities", check_reversed_dickson, ()),
    ("branch inverse engine", check_branch_engine, ()),
    ("branched criterion vs bijection", check_branched_criterion, ("seed",)),
    ("coset power sums", check_power_sums, ()),
    ("Lucas and shift congruence", check_lucas, ("seed",)),
    ("binomial support and residues", check_binomial_predictions, ()),
    ("cyclotomic families", check_families, ("seed",)),
    ("GF(3) degeneracy", check_degenerate, ("seed",)),
]


def run(level: str = "quick", seed: int = 0) -> list[CheckResult]:
    if level not in ("quick", "full"):
        raise ValueError("level must be 'quick' or 'full'")
    out = []
    for name, fn, extra in CHECKS:
        start = time.perf_counter()
        args = (level, seed) if extra else (level,)
        passed, detail = fn(*args)
        detail = {k: (bool(v) if isinstance(v, (bool, np.bool_)) else v) for k, v in detail.items()}
        out.append(CheckResult(name, bool(passed), detail, time.perf_counter() - start))
    return out

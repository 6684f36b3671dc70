"""Generalized cyclotomic-mapping permutations of GF(3^n).

Three families of branched maps (0 -> 0), tagged as in the command line:

    l5:  alpha(x^3 + gamma x^2 + gamma^2 x) on C_0,  beta(x^3 + theta x^2 + theta^2 x) on C_1
    l6:  alpha x^t on C_0,                          beta(x^3 + theta x^2 + theta^2 x) on C_1
    l7:  alpha(x^3 + gamma x^2 + gamma^2 x) on C_0,  beta x^t on C_1

with permutation criteria in terms of the quadratic character and closed-form
inverses built from :func:`cubic_branch_inverse` and monomial inverses.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd

import numpy as np

from .gf import FieldCtx, FieldElement
from .piecewise import BranchedPP, classes
from .polyring import (
    Poly,
    const,
    from_terms,
    monomial,
    poly_add,
    poly_mul,
    poly_neg,
    poly_scale,
    tabulate,
)

FAMILIES = ("l5", "l6", "l7")
_NEEDS = {
    "l5": ("gamma", "theta"),
    "l6": ("theta", "t"),
    "l7": ("gamma", "t"),
}


class CriterionFailure(ValueError):
    pass


@dataclass(frozen=True)
class FamilyParams:
    family: str
    ctx: FieldCtx
    alpha: FieldElement
    beta: FieldElement
    gamma: FieldElement | None = None
    theta: FieldElement | None = None
    t: int | None = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.ctx.p != 3:
            raise ValueError("these families are defined over GF(3^n)")
        for name in ("alpha", "beta", "gamma", "theta"):
            v = getattr(self, name)
            if v is None:
                continue
            v = self.ctx(v)
            object.__setattr__(self, name, v)
            if not v:
                raise ValueError(f"{name} must be nonzero")
        for name in _NEEDS[self.family]:
            if getattr(self, name) is None:
                raise ValueError(f"family {self.family} needs {name}")
        if self.t is not None and self.t < 1:
            raise ValueError("t must be a positive integer")

    @property
    def half_order(self) -> int:
        return (self.ctx.q - 1) // 2

    def to_dict(self) -> dict:
        out = {"family": self.family, "alpha": self.alpha.index, "beta": self.beta.index}
        for name in ("gamma", "theta"):
            v = getattr(self, name)
            if v is not None:
                out[name] = v.index
        if self.t is not None:
            out["t"] = self.t
        return out


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


def _eta(e: FieldElement) -> int:
    return e.ctx.eta(e.index)


def criterion(params: FamilyParams) -> Verdict:
    """The family's permutation criterion; ``reason`` names the first failing clause."""
    fam = params.family
    ea, eb = _eta(params.alpha), _eta(params.beta)
    if fam in ("l6", "l7") and gcd(params.t, params.half_order) != 1:
        return Verdict(False, "gcd(t, (q−1)/2) ≠ 1")
    if fam in ("l5", "l7") and _eta(params.gamma) != -1:
        return Verdict(False, "η(γ) ≠ −1")
    if fam in ("l5", "l6") and _eta(params.theta) != 1:
        return Verdict(False, "η(θ) ≠ 1")
    if fam == "l7":
        if ea != eb * (-1) ** (params.t + 1):
            return Verdict(False, "η(α) ≠ η(β)(−1)^(t+1)")
    elif ea != eb:
        return Verdict(False, "η(α) ≠ η(β)")
    return Verdict(True, "criterion holds")


def cubic_branch(tau: FieldElement, lam: FieldElement) -> Poly:
    """tau (x^3 + lam x^2 + lam^2 x), which is tau x (x - lam)^2 in characteristic 3."""
    ctx = tau.ctx
    return from_terms(ctx, [(3, tau), (2, tau * lam), (1, tau * lam * lam)])


def build_pp(params: FamilyParams, check: bool = True) -> BranchedPP:
    if check:
        v = criterion(params)
        if not v:
            raise CriterionFailure(v.reason)
    ctx = params.ctx
    fam = params.family
    if fam == "l5":
        f0 = cubic_branch(params.alpha, params.gamma)
        f1 = cubic_branch(params.beta, params.theta)
    elif fam == "l6":
        f0 = monomial(ctx, params.t, params.alpha.index)
        f1 = cubic_branch(params.beta, params.theta)
    else:
        f0 = cubic_branch(params.alpha, params.gamma)
        f1 = monomial(ctx, params.t, params.beta.index)
    return BranchedPP(f0, f1)


def bezout_inverse(t: int, modulus: int) -> tuple[int, int]:
    """(s, r) with s t + r modulus = 1 and 1 <= s < modulus."""
    if modulus <= 1:
        raise ValueError("modulus must exceed 1")
    old_r, r = t, modulus
    old_s, s = 1, 0
    while r:
        quo = old_r // r
        old_r, r = r, old_r - quo * r
        old_s, s = s, old_s - quo * s
    if old_r != 1:
        raise ValueError(f"gcd({t}, {modulus}) = {old_r}, no inverse")
    s = old_s % modulus
    return s, (1 - s * t) // modulus


def cubic_branch_inverse(tau: FieldElement, lam: FieldElement) -> Poly:
    """sum over 0 <= j, k <= n-1 of lam (tau^-1 lam^-3 x)^((3^j + 3^k)/2).

    Inverts ``cubic_branch(tau, lam)`` on its coset.
    """
    ctx = tau.ctx
    if not tau or not lam:
        raise ValueError("parameters must be nonzero")
    base = (tau * lam ** 3).inverse()
    terms = []
    for j in range(ctx.n):
        for k in range(ctx.n):
            e = (3 ** j + 3 ** k) // 2
            terms.append((e, lam * base ** e))
    return from_terms(ctx, terms)


def _sign_eta(e: FieldElement) -> int:
    return 0 if _eta(e) == 1 else 1


def closed_form_inverse(params: FamilyParams) -> Poly:
    """-u(x)(1 + (-1)^m x^h) - v(x)(1 + (-1)^(m+1) x^h), h = (q-1)/2,
    where (-1)^m is the quadratic character of alpha and u, v invert the
    C_0 and C_1 branches on their image cosets."""
    v = criterion(params)
    if not v:
        raise CriterionFailure(v.reason)
    ctx = params.ctx
    if ctx.n == 1:
        # over GF(3) the map is +-x, hence its own inverse
        return monomial(ctx, 1, int(build_pp(params).values()[1]))
    h = params.half_order
    fam = params.family
    if fam == "l6":
        s, _ = bezout_inverse(params.t, h)
        u = monomial(ctx, s, (params.alpha.inverse() ** s).index)
    else:
        u = cubic_branch_inverse(params.alpha, params.gamma)
    if fam == "l7":
        s, r = bezout_inverse(params.t, h)
        coef = params.beta.inverse() ** s
        if r % 2:
            coef = -coef
        v_ = monomial(ctx, s, coef.index)
    else:
        v_ = cubic_branch_inverse(params.beta, params.theta)
    m = _sign_eta(params.alpha)
    xh = monomial(ctx, h)
    one = const(ctx, 1)
    ind_u = poly_add(one, xh if m == 0 else poly_neg(xh))
    ind_v = poly_add(one, poly_neg(xh) if m == 0 else xh)
    total = poly_add(poly_mul(u, ind_u), poly_mul(v_, ind_v))
    return poly_scale(total, ctx.neg(1))


# -- exhaustive sweeps and sampling -------------------------------------------

def _branch_tables(ctx, cls, s, kind, t_values):
    """Value tables of every branch of the given kind on C_s.

    Keys are (tau, lam) for cubics and (tau, t) for monomials.
    """
    dom = cls.members[s]
    nonzero = np.arange(1, ctx.q, dtype=np.int64)
    keys, rows = [], []
    if kind == "cubic":
        c2 = ctx.vmul(dom, dom)
        c3 = ctx.vmul(c2, dom)
        for lam in range(1, ctx.q):
            lam_arr = np.full_like(dom, lam)
            lam2 = np.full_like(dom, ctx.mul(lam, lam))
            inner = ctx.vadd(c3, ctx.vadd(ctx.vmul(lam_arr, c2), ctx.vmul(lam2, dom)))
            rows.append(ctx.vmul(nonzero[:, None], inner[None, :]))
            keys += [(int(tau), lam) for tau in nonzero]
    else:
        for t in t_values:
            pw = tabulate(monomial(ctx, t), dom)
            rows.append(ctx.vmul(nonzero[:, None], pw[None, :]))
            keys += [(int(tau), t) for tau in nonzero]
    if not rows:
        return keys, np.zeros((0, len(dom)), dtype=np.int64)
    return keys, np.concatenate(rows)


def _masks(values: np.ndarray, q: int) -> np.ndarray:
    """Image bitmasks, one row of uint64 words per value table row."""
    words = (q + 63) // 64
    out = np.zeros((values.shape[0], words), dtype=np.uint64)
    for w in range(words):
        inword = (values >= 64 * w) & (values < 64 * (w + 1))
        bits = np.where(inword, np.left_shift(np.uint64(1),
                                              (values - 64 * w).clip(0, 63).astype(np.uint64)),
                        np.uint64(0))
        out[:, w] = np.bitwise_or.reduce(bits, axis=1)
    return out


@dataclass
class SweepResult:
    family: str
    q: int
    total: int = 0
    permutations: int = 0
    passing: int = 0
    mismatches: list = None

    def __post_init__(self):
        if self.mismatches is None:
            self.mismatches = []

    @property
    def agrees(self) -> bool:
        return not self.mismatches


def _make_params(ctx, family, k0, k1) -> FamilyParams:
    if family == "l6":
        (alpha, t), (beta, theta) = k0, k1
        return FamilyParams(family, ctx, ctx(alpha), ctx(beta), theta=ctx(theta), t=t)
    if family == "l7":
        (alpha, gamma), (beta, t) = k0, k1
        return FamilyParams(family, ctx, ctx(alpha), ctx(beta), gamma=ctx(gamma), t=t)
    (alpha, gamma), (beta, theta) = k0, k1
    return FamilyParams(family, ctx, ctx(alpha), ctx(beta), gamma=ctx(gamma), theta=ctx(theta))


def criterion_sweep(ctx: FieldCtx, family: str, t_values=None) -> SweepResult:
    """Compare the criterion with a bijection test of the full value table for
    every parameter tuple (and every t in ``t_values``, default 1..(q-3)/2).

    The map is a bijection iff {0}, f0(C_0) and f1(C_1) together cover all q
    elements.  The criterion only reads quadratic characters (and t), so it
    is evaluated once per distinct character signature.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    cls = classes(ctx)
    h = (ctx.q - 1) // 2
    if t_values is None:
        t_values = range(1, h)
    kinds = {"l5": ("cubic", "cubic"), "l6": ("mono", "cubic"), "l7": ("cubic", "mono")}[family]
    keys0, vals0 = _branch_tables(ctx, cls, 0, kinds[0], t_values)
    keys1, vals1 = _branch_tables(ctx, cls, 1, kinds[1], t_values)
    m0, m1 = _masks(vals0, ctx.q), _masks(vals1, ctx.q)
    full = _masks(ctx.all_indices()[None, :], ctx.q)[0]

    def signature(kind, key):
        tau, other = key
        return (ctx.eta(tau), ctx.eta(other) if kind == "cubic" else other)

    sig0 = [signature(kinds[0], k) for k in keys0]
    sig1 = [signature(kinds[1], k) for k in keys1]
    uniq0 = {s: i for i, s in enumerate(dict.fromkeys(sig0))}
    uniq1 = {s: i for i, s in enumerate(dict.fromkeys(sig1))}
    rep0 = {s: keys0[sig0.index(s)] for s in uniq0}
    rep1 = {s: keys1[sig1.index(s)] for s in uniq1}
    table = np.zeros((len(uniq0), len(uniq1)), dtype=bool)
    for s0, i in uniq0.items():
        for s1, j in uniq1.items():
            table[i, j] = bool(criterion(_make_params(ctx, family, rep0[s0], rep1[s1])))
    idx0 = np.array([uniq0[s] for s in sig0], dtype=np.int64)
    idx1 = np.array([uniq1[s] for s in sig1], dtype=np.int64)

    res = SweepResult(family, ctx.q)
    chunk = max(1, 2_000_000 // max(1, len(keys1)))
    for lo in range(0, len(keys0), chunk):
        hi = min(lo + chunk, len(keys0))
        union = m0[lo:hi, None, :] | m1[None, :, :] | np.uint64(1)
        is_pp = (union == full).all(axis=2)
        ok = table[idx0[lo:hi][:, None], idx1[None, :]]
        res.total += is_pp.size
        res.permutations += int(is_pp.sum())
        res.passing += int(ok.sum())
        for a, b in zip(*np.nonzero(is_pp != ok)):
            res.mismatches.append(_make_params(ctx, family, keys0[lo + a], keys1[b]).to_dict())
    return res


def random_params(ctx: FieldCtx, family: str, rng: random.Random,
                  t_max: int | None = None) -> FamilyParams:
    def nz():
        return ctx(rng.randrange(1, ctx.q))
    t_max = t_max or ctx.q - 2
    kw = {}
    if family in ("l5", "l7"):
        kw["gamma"] = nz()
    if family in ("l5", "l6"):
        kw["theta"] = nz()
    if family in ("l6", "l7"):
        kw["t"] = rng.randint(1, t_max)
    return FamilyParams(family, ctx, nz(), nz(), **kw)


def sample_passing(ctx: FieldCtx, family: str, count: int, seed: int = 0) -> list[FamilyParams]:
    """``count`` distinct parameter tuples satisfying the criterion, seeded."""
    rng = random.Random(f"{seed}:{family}:{ctx.q}")
    out, seen = [], set()
    attempts = 0
    while len(out) < count and attempts < 200 * count + 1000:
        attempts += 1
        params = random_params(ctx, family, rng)
        key = tuple(sorted(params.to_dict().items()))
        if key in seen or not criterion(params):
            continue
        seen.add(key)
        out.append(params)
    return out


def _as_cubic(f: Poly):
    """(tau, lam) if f = tau(x^3 + lam x^2 + lam^2 x) with tau, lam nonzero."""
    c = f.indices
    if len(c) != 4 or c[0] != 0 or c[3] == 0 or c[2] == 0:
        return None
    ctx = f.ctx
    tau = ctx(c[3])
    lam = ctx(c[2]) / tau
    if (tau * lam * lam).index != c[1]:
        return None
    return tau, lam


def _as_monomial(f: Poly):
    """(tau, t) if f = tau x^t with t >= 1."""
    c = f.indices
    nz = [e for e, v in enumerate(c) if v]
    if len(nz) != 1 or nz[0] == 0:
        return None
    return f.ctx(c[nz[0]]), nz[0]


def recognize(bpp: BranchedPP) -> FamilyParams | None:
    """The family parameters whose branches are exactly ``bpp``'s, if any."""
    ctx = bpp.ctx
    if ctx.p != 3:
        return None
    cub0, cub1 = _as_cubic(bpp.f0), _as_cubic(bpp.f1)
    mon0, mon1 = _as_monomial(bpp.f0), _as_monomial(bpp.f1)
    if cub0 and cub1:
        return FamilyParams("l5", ctx, cub0[0], cub1[0], gamma=cub0[1], theta=cub1[1])
    if mon0 and cub1:
        return FamilyParams("l6", ctx, mon0[0], cub1[0], theta=cub1[1], t=mon0[1])
    if cub0 and mon1:
        return FamilyParams("l7", ctx, cub0[0], mon1[0], gamma=cub0[1], t=mon1[1])
    return None

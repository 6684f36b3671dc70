"""Two-class piecewise permutations of GF(q), q odd.

F_q^* splits into the squares C_0 and the non-squares C_1.  A branched map
sends 0 to 0, c in C_0 to f0(c) and c in C_1 to f1(c).  This module decides
when such a map permutes the field, computes an inverse of each branch on
its own coset from power sums over the coset, and glues the branch
inverses back into a single polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .gf import FieldCtx, FieldElement
from .polyring import (
    Poly,
    const,
    monomial,
    poly_add,
    poly_mul,
    poly_powmod,
    poly_scale,
    poly_sub,
    tabulate,
)

SAME = "same"
SWAPPED = "swapped"
NEITHER = "none"
MIXED = "mixed"


class NotAPermutation(ValueError):
    pass


class CaseNotCovered(ValueError):
    """A permutation whose branches neither preserve nor swap the cosets."""


class ConventionError(ValueError):
    """The assembled polynomial would not send 0 to 0."""


@dataclass(frozen=True, eq=False)
class CyclotomicClasses:
    ctx: FieldCtx
    membership: tuple  # index -> 0, 1, or None at zero

    @cached_property
    def members(self) -> tuple[np.ndarray, np.ndarray]:
        m = np.array([-1 if v is None else v for v in self.membership])
        return np.nonzero(m == 0)[0], np.nonzero(m == 1)[0]


def classes(ctx: FieldCtx) -> CyclotomicClasses:
    if ctx.q % 2 == 0:
        raise ValueError("cyclotomic classes need odd q")
    h = (ctx.q - 1) // 2
    # e^h by square-and-multiply over the whole field at once
    result = np.ones(ctx.q, dtype=np.int64)
    base = ctx.all_indices()
    e = h
    while e:
        if e & 1:
            result = ctx.vmul(result, base)
        base = ctx.vmul(base, base)
        e >>= 1
    membership = tuple(None if a == 0 else (0 if result[a] == 1 else 1)
                       for a in range(ctx.q))
    return CyclotomicClasses(ctx, membership)


def classify(cls: CyclotomicClasses, e) -> int:
    a = int(cls.ctx(e))
    if a == 0:
        raise ValueError("zero lies in neither class")
    return cls.membership[a]


@dataclass(frozen=True)
class BranchedPP:
    """0 -> 0, C_0 -> f0, C_1 -> f1."""

    f0: Poly
    f1: Poly

    def __post_init__(self):
        if self.f0.ctx != self.f1.ctx:
            raise ValueError("branches over different fields")

    @property
    def ctx(self) -> FieldCtx:
        return self.f0.ctx

    def values(self, cls: CyclotomicClasses | None = None) -> np.ndarray:
        """Value table of the branched map, in index order."""
        cls = cls or classes(self.ctx)
        c0, c1 = cls.members
        out = np.zeros(self.ctx.q, dtype=np.int64)
        out[c0] = tabulate(self.f0, c0)
        out[c1] = tabulate(self.f1, c1)
        return out


@dataclass(frozen=True)
class BranchBehavior:
    injective: tuple[bool, bool]
    zero_free: tuple[bool, bool]
    target: tuple  # per branch: 0, 1, or MIXED
    disjoint: bool
    case: str

    @property
    def is_pp(self) -> bool:
        return all(self.injective) and all(self.zero_free) and self.disjoint

    def to_dict(self) -> dict:
        return {
            "is_pp": self.is_pp,
            "case": self.case,
            "injective": list(self.injective),
            "zero_free": list(self.zero_free),
            "target": list(self.target),
            "disjoint": self.disjoint,
        }


def _indicator_sum(g0: Poly, g1: Poly, plus_first: bool) -> Poly:
    """(1/2) g0 (1 +- x^h) + (1/2) g1 (1 -+ x^h)."""
    ctx = g0.ctx
    h = (ctx.q - 1) // 2
    half = ctx.inv(ctx.from_int(2))
    xh = monomial(ctx, h)
    one = const(ctx, 1)
    plus, minus = poly_add(one, xh), poly_sub(one, xh)
    a, b = (plus, minus) if plus_first else (minus, plus)
    return poly_scale(poly_add(poly_mul(g0, a), poly_mul(g1, b)), half)


def branched_to_poly(bpp: BranchedPP) -> Poly:
    """The single polynomial agreeing with ``bpp`` on all of F_q."""
    ctx = bpp.ctx
    c0 = bpp.f0.indices[0] if bpp.f0.indices else 0
    c1 = bpp.f1.indices[0] if bpp.f1.indices else 0
    if ctx.add(c0, c1) != 0:
        raise ConventionError(
            "f0(0) + f1(0) != 0, so the glued polynomial would not fix 0; "
            "shift the branch constants first")
    return _indicator_sum(bpp.f0, bpp.f1, True)


def analyze(bpp: BranchedPP, cls: CyclotomicClasses | None = None) -> BranchBehavior:
    """Exhaustive branch analysis; each branch is evaluated on its own coset only."""
    cls = cls or classes(bpp.ctx)
    members = cls.members
    images = []
    injective, zero_free, target = [], [], []
    for s, f in enumerate((bpp.f0, bpp.f1)):
        vals = tabulate(f, members[s])
        images.append(set(vals.tolist()))
        injective.append(len(images[-1]) == len(vals))
        zero_free.append(0 not in images[-1])
        kinds = {cls.membership[v] for v in images[-1]}
        target.append(kinds.pop() if len(kinds) == 1 and None not in kinds else MIXED)
    disjoint = images[0].isdisjoint(images[1])
    if target == [0, 1]:
        case = SAME
    elif target == [1, 0]:
        case = SWAPPED
    else:
        case = NEITHER
    return BranchBehavior(tuple(injective), tuple(zero_free), tuple(target), disjoint, case)


def coset_power_sum(cls: CyclotomicClasses, s: int, k: int) -> FieldElement:
    """sum of a^k over a in C_s, by direct summation."""
    ctx = cls.ctx
    if s not in (0, 1):
        raise ValueError("s must be 0 or 1")
    if not 1 <= k <= ctx.q - 1:
        raise ValueError(f"k must lie in [1, {ctx.q - 1}]")
    total = 0
    for a in cls.members[s].tolist():
        total = ctx.add(total, ctx.pow(a, k))
    return FieldElement(ctx, total)


def branch_inverse(f_s: Poly, s: int, t: int, *, route: str = "evaluation",
                   verify: bool = False, cls: CyclotomicClasses | None = None) -> Poly:
    """Inverse of f_s restricted to C_s, valid on C_t.

    f_s must map C_s bijectively onto C_t.  The result g has zero constant
    term and degree <= (q - 3)/2, and g(f_s(c)) = c for every c in C_s; it is
    determined only modulo x^((q-1)/2) - (-1)^t.

    ``route="evaluation"`` accumulates c_i = -sum_{a in C_s} a f_s(a)^(q-1-i)
    pointwise.  ``route="symbolic"`` reads the coefficients of x^((q-3)/2)
    and x^(q-2) off the powers f_s^(q-1-i) mod x^q - x (slow, for checking).
    """
    ctx = f_s.ctx
    q = ctx.q
    if q == 3:
        raise ValueError("branch inversion needs q > 3; over GF(3) the map is +-x")
    if s not in (0, 1) or t not in (0, 1):
        raise ValueError("s and t must be 0 or 1")
    cls = cls or classes(ctx)
    h = (q - 1) // 2
    dom = cls.members[s]
    fa = tabulate(f_s, dom)
    if verify:
        img = fa.tolist()
        if len(set(img)) != h or any(cls.membership[v] != t for v in img):
            raise NotAPermutation(f"f_{s} is not a bijection from C_{s} onto C_{t}")

    out = [0] * h  # out[e] is the coefficient of x^e, 1 <= e <= h - 1
    sign_t = ctx.from_int(2 * (-1) ** t)  # 2 (-1)^t
    if route == "evaluation":
        running = dom.copy()  # a * f_s(a)^w
        for w in range(1, h + 1):
            running = ctx.vmul(running, fa)
            c = ctx.neg(int(ctx.vsum(running)))  # c_{q-1-w}
            if w == h:
                if c != 0:
                    raise ArithmeticError("coefficient c_((q-1)/2) is nonzero; "
                                          "branch is not a bijection between cosets")
            else:
                out[h - w] = ctx.mul(sign_t, c)
    elif route == "symbolic":
        sign = 1 if (s + t) % 2 == 0 else ctx.neg(1)
        flip = 1 if s == 0 else ctx.neg(1)
        u, v = (q - 3) // 2, q - 2
        for i in range((q + 1) // 2, q - 1):
            b = poly_powmod(f_s, q - 1 - i).indices
            b_u = b[u] if u < len(b) else 0
            b_v = b[v] if v < len(b) else 0
            out[i - h] = ctx.mul(sign, ctx.add(b_u, ctx.mul(flip, b_v)))
    else:
        raise ValueError(f"unknown route {route!r}")
    return Poly._make(ctx, out)


def assemble_inverse(bpp: BranchedPP, g0: Poly, g1: Poly,
                     behavior: BranchBehavior | None = None) -> Poly:
    """Glue branch inverses into the inverse of the whole permutation."""
    ctx = bpp.ctx
    behavior = behavior or analyze(bpp)
    if not behavior.is_pp:
        raise NotAPermutation("branched map is not a permutation")
    if ctx.q == 3:
        # the map is +-x on GF(3), an involution
        return Poly._make(ctx, (0, int(bpp.values()[1])))
    if behavior.case == SAME:
        return _indicator_sum(g0, g1, True)
    if behavior.case == SWAPPED:
        return _indicator_sum(g0, g1, False)
    raise CaseNotCovered("branches neither preserve nor swap the cosets")


def piecewise_inverse(bpp: BranchedPP, route: str = "evaluation") -> Poly:
    """Full inverse computed from per-branch coset inverses."""
    cls = classes(bpp.ctx)
    behavior = analyze(bpp, cls)
    if not behavior.is_pp:
        raise NotAPermutation("branched map is not a permutation")
    if bpp.ctx.q == 3:
        return assemble_inverse(bpp, bpp.f0, bpp.f1, behavior)
    if behavior.case not in (SAME, SWAPPED):
        raise CaseNotCovered("branches neither preserve nor swap the cosets")
    g0 = branch_inverse(bpp.f0, 0, behavior.target[0], route=route, cls=cls)
    g1 = branch_inverse(bpp.f1, 1, behavior.target[1], route=route, cls=cls)
    return assemble_inverse(bpp, g0, g1, behavior)


def split(f: Poly) -> BranchedPP:
    """View f with f(0) = 0 as a branched map with both branches equal to f."""
    if f.indices and f.indices[0] != 0:
        raise ConventionError("f(0) != 0")
    return BranchedPP(f, f)

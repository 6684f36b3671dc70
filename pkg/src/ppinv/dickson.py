"""Dickson and reversed Dickson polynomials, Hou's permutation polynomial of
GF(3^n) (n even) and its closed-form compositional inverse.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .binom import binom_mod_p
from .gf import FieldCtx, FieldElement
from .polyring import (
    Poly,
    const,
    from_terms,
    monomial,
    poly_add,
    poly_compose,
    poly_mul,
    poly_sub,
    x,
)


@dataclass(frozen=True)
class DicksonSpec:
    index: int
    a: FieldElement
    reversed: bool = False

    def __post_init__(self):
        if self.index < 1:
            raise ValueError("Dickson index must be >= 1")


def dickson_coefficient(k: int, i: int) -> int:
    """The integer k/(k-i) * C(k-i, i), computed as C(k-i, i) + C(k-i-1, i-1)."""
    if i == 0:
        return 1
    return comb(k - i, i) + comb(k - i - 1, i - 1)


def _dickson_coefficient_mod(k: int, i: int, p: int) -> int:
    if i == 0:
        return 1
    return (binom_mod_p(k - i, i, p) + binom_mod_p(k - i - 1, i - 1, p)) % p


def dickson_poly(spec: DicksonSpec, ctx: FieldCtx) -> Poly:
    """D_k(x, a) = sum_i k/(k-i) C(k-i, i) (-a)^i x^(k-2i), or the reversed
    D_k(a, x) = sum_i k/(k-i) C(k-i, i) (-1)^i a^(k-2i) x^i."""
    k = spec.index
    a = int(ctx(spec.a))
    terms = []
    for i in range(k // 2 + 1):
        c = ctx.from_int(_dickson_coefficient_mod(k, i, ctx.p))
        if not c:
            continue
        if i % 2:
            c = ctx.neg(c)
        if spec.reversed:
            terms.append((i, ctx.mul(c, ctx.pow(a, k - 2 * i))))
        else:
            terms.append((k - 2 * i, ctx.mul(c, ctx.pow(a, i))))
    return from_terms(ctx, terms)


def _require_hou_field(ctx: FieldCtx):
    if ctx.p != 3:
        raise ValueError("Hou's permutation polynomial lives in characteristic 3")
    if ctx.n % 2 or ctx.n < 2:
        raise ValueError("Hou's permutation polynomial needs an even degree n >= 2")


def hou_pp(ctx: FieldCtx) -> Poly:
    """(x - x^2 - x^3) x^((3^n-1)/2) - x + x^2 over GF(3^n), n even."""
    _require_hou_field(ctx)
    X = x(ctx)
    h = (ctx.q - 1) // 2
    cubic = poly_sub(poly_sub(X, monomial(ctx, 2)), monomial(ctx, 3))
    return poly_add(poly_mul(cubic, monomial(ctx, h)), poly_sub(monomial(ctx, 2), X))


def hou_branches(ctx: FieldCtx) -> tuple[Poly, Poly]:
    """-x^3 on the squares, x(x + 1)^2 on the non-squares."""
    _require_hou_field(ctx)
    X = x(ctx)
    xp1 = poly_add(X, const(ctx, 1))
    return monomial(ctx, 3, ctx.neg(1)), poly_mul(X, poly_mul(xp1, xp1))


def hou_nonsquare_branch_inverse(ctx: FieldCtx) -> Poly:
    """sum over 0 <= j, k <= n-1 of (-1)^(j+k) x^((3^j + 3^k)/2)."""
    n = ctx.n
    minus = ctx.neg(1)
    terms = [((3 ** j + 3 ** k) // 2, 1 if (j + k) % 2 == 0 else minus)
             for j in range(n) for k in range(n)]
    return from_terms(ctx, terms)


def hou_inverse(ctx: FieldCtx) -> Poly:
    """Closed-form inverse of :func:`hou_pp`:
    x^(3^(n-1)) (x^h + 1) + g1(x) (x^h - 1), h = (3^n - 1)/2, with g1 from
    :func:`hou_nonsquare_branch_inverse`."""
    _require_hou_field(ctx)
    h = (ctx.q - 1) // 2
    xh = monomial(ctx, h)
    one = const(ctx, 1)
    square_part = poly_mul(monomial(ctx, 3 ** (ctx.n - 1)), poly_add(xh, one))
    return poly_add(square_part,
                    poly_mul(hou_nonsquare_branch_inverse(ctx), poly_sub(xh, one)))


def reversed_dickson_hou(ctx: FieldCtx) -> Poly:
    """D_{3^n+5}(1, x) through the identity D_{3^n+5}(1, x) = f(1 - x) - 1."""
    _require_hou_field(ctx)
    one = const(ctx, 1)
    return poly_sub(poly_compose(hou_pp(ctx), poly_sub(one, x(ctx))), one)


def reversed_dickson_inverse(ctx: FieldCtx) -> Poly:
    """Inverse of c -> D_{3^n+5}(1, c): 1 - g(x + 1) with g from :func:`hou_inverse`."""
    one = const(ctx, 1)
    return poly_sub(one, poly_compose(hou_inverse(ctx), poly_add(x(ctx), one)))

"""Dense univariate polynomials over GF(p^n), reduced modulo x^q - x.

Coefficients are stored as a tuple of element indices, constant term first,
with trailing zeros trimmed.  Every operation returns the canonical
representative (degree <= q - 1).
"""

from __future__ import annotations

import numpy as np

from .gf import FieldCtx, FieldElement, FieldError

NEG_INF = float("-inf")
"""Degree of the zero polynomial."""


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def fold_exponent(e: int, q: int) -> int:
    """Exponent of the monomial congruent to x^e modulo x^q - x."""
    if e <= 0:
        return 0
    return (e - 1) % (q - 1) + 1


class Poly:
    """Polynomial over ``ctx``; ``coeffs[k]`` is the coefficient of x^k.

    The constructor accepts element indices or FieldElements and performs
    the canonical reduction modulo x^q - x.
    """

    __slots__ = ("ctx", "_c")

    def __init__(self, ctx: FieldCtx, coeffs=()):
        self.ctx = ctx
        c = [int(ctx(v)) if isinstance(v, FieldElement) else int(v) for v in coeffs]
        if any(not 0 <= v < ctx.q for v in c):
            raise FieldError("coefficient index out of range")
        if len(c) > ctx.q:
            c = _fold_list(ctx, c)
        self._c = _trim(c)

    @classmethod
    def _make(cls, ctx, c):
        obj = cls.__new__(cls)
        obj.ctx = ctx
        obj._c = _trim(c)
        return obj

    @property
    def indices(self) -> tuple[int, ...]:
        return self._c

    @property
    def coeffs(self) -> tuple[FieldElement, ...]:
        return tuple(FieldElement(self.ctx, v) for v in self._c)

    @property
    def degree(self):
        return len(self._c) - 1 if self._c else NEG_INF

    def is_zero(self) -> bool:
        return not self._c

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self._c == other._c

    def __hash__(self):
        return hash((self.ctx.q, self._c))

    def __repr__(self):
        return f"Poly({render(self)!r} over GF({self.ctx.q}))"

    def __str__(self):
        return render(self)

    def __call__(self, x):
        return poly_eval(self, x)

    def __add__(self, other):
        return poly_add(self, _lift(self.ctx, other))

    __radd__ = __add__

    def __sub__(self, other):
        return poly_sub(self, _lift(self.ctx, other))

    def __rsub__(self, other):
        return poly_sub(_lift(self.ctx, other), self)

    def __neg__(self):
        return poly_neg(self)

    def __mul__(self, other):
        return poly_mul(self, _lift(self.ctx, other))

    __rmul__ = __mul__

    def __pow__(self, k):
        return poly_powmod(self, k)


def _lift(ctx, v) -> Poly:
    if isinstance(v, Poly):
        _check(ctx, v)
        return v
    if isinstance(v, FieldElement):
        return const(ctx, v)
    if isinstance(v, int):
        return const(ctx, ctx.from_int(v))
    raise TypeError(f"cannot treat {type(v).__name__} as a polynomial")


def _check(ctx, *polys):
    for f in polys:
        if f.ctx != ctx:
            raise FieldError("polynomials over different fields")


def _fold_list(ctx, c):
    q = ctx.q
    out = list(c[:q])
    for e in range(q, len(c)):
        if c[e]:
            k = fold_exponent(e, q)
            out[k] = ctx.add(out[k], c[e])
    return out


# -- constructors -----------------------------------------------------------

def zero(ctx: FieldCtx) -> Poly:
    return Poly._make(ctx, ())


def const(ctx: FieldCtx, c) -> Poly:
    return Poly._make(ctx, (int(ctx(c)),))


def x(ctx: FieldCtx) -> Poly:
    return monomial(ctx, 1)


def monomial(ctx: FieldCtx, e: int, c=1) -> Poly:
    """c * x^e, folded arithmetically (e may be huge)."""
    if e < 0:
        raise ValueError("negative exponent")
    c = int(ctx(c)) if not isinstance(c, int) else c
    if c == 0:
        return zero(ctx)
    e = fold_exponent(e, ctx.q)
    return Poly._make(ctx, (0,) * e + (c,))


def from_terms(ctx: FieldCtx, terms) -> Poly:
    """Sum of c * x^e over ``(e, c)`` pairs with arbitrary e >= 0."""
    q = ctx.q
    acc = {}
    for e, c in terms:
        if e < 0:
            raise ValueError("negative exponent")
        c = int(c) if isinstance(c, (int, FieldElement)) else int(ctx(c))
        if c == 0:
            continue
        k = fold_exponent(e, q)
        acc[k] = ctx.add(acc.get(k, 0), c)
    if not acc:
        return zero(ctx)
    out = [0] * (max(acc) + 1)
    for k, c in acc.items():
        out[k] = c
    return Poly._make(ctx, out)


# -- basic operations -------------------------------------------------------

def reduce_qx(f) -> Poly:
    """Canonical representative modulo x^q - x.

    Accepts a Poly or a ``(ctx, {exponent: coefficient})`` pair; x^e with
    e >= 1 folds to x^((e - 1) mod (q - 1) + 1).
    """
    if isinstance(f, Poly):
        return Poly._make(f.ctx, _fold_list(f.ctx, f._c)) if len(f._c) > f.ctx.q else f
    ctx, terms = f
    return from_terms(ctx, terms.items())


def coeff(f: Poly, k: int) -> FieldElement:
    v = f._c[k] if 0 <= k < len(f._c) else 0
    return FieldElement(f.ctx, v)


def equal_mod_qx(f: Poly, g: Poly) -> bool:
    _check(f.ctx, g)
    return reduce_qx(f)._c == reduce_qx(g)._c


def poly_add(f: Poly, g: Poly) -> Poly:
    _check(f.ctx, g)
    ctx = f.ctx
    a, b = f._c, g._c
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return Poly._make(ctx, a)
    out = np.array(a, dtype=np.int64)
    out[:len(b)] = ctx.vadd(out[:len(b)], np.array(b, dtype=np.int64))
    return Poly._make(ctx, out.tolist())


def poly_neg(f: Poly) -> Poly:
    if not f._c:
        return f
    return Poly._make(f.ctx, f.ctx.vneg(np.array(f._c, dtype=np.int64)).tolist())


def poly_sub(f: Poly, g: Poly) -> Poly:
    return poly_add(f, poly_neg(g))


def poly_scale(f: Poly, c) -> Poly:
    ctx = f.ctx
    c = int(ctx(c)) if not isinstance(c, int) else c
    if not f._c or c == 0:
        return zero(ctx)
    arr = np.array(f._c, dtype=np.int64)
    return Poly._make(ctx, ctx.vmul(arr, np.full_like(arr, c)).tolist())


def poly_mul(f: Poly, g: Poly) -> Poly:
    """Product reduced modulo x^q - x (schoolbook convolution)."""
    _check(f.ctx, g)
    ctx = f.ctx
    if not f._c or not g._c:
        return zero(ctx)
    n, q = ctx.n, ctx.q
    A = ctx.to_coords(np.array(f._c, dtype=np.int64))
    B = ctx.to_coords(np.array(g._c, dtype=np.int64))
    length = len(f._c) + len(g._c) - 1
    wide = np.zeros((length, 2 * n - 1), dtype=np.int64)
    for i in range(n):
        ai = A[:, i]
        if not ai.any():
            continue
        for j in range(n):
            bj = B[:, j]
            if bj.any():
                wide[:, i + j] += np.convolve(ai, bj)
    out = ctx.reduce_wide(wide)
    if length > q:
        # x^e for q <= e <= 2q - 2 folds to x^(e - q + 1)
        extra = out[q:]
        out = out[:q].copy()
        out[1:1 + len(extra)] = ctx.vadd(out[1:1 + len(extra)], extra)
    return Poly._make(ctx, out.tolist())


def poly_powmod(f: Poly, k: int) -> Poly:
    """f^k modulo x^q - x by square-and-multiply."""
    if k < 0:
        raise ValueError("negative exponent")
    result = const(f.ctx, 1)
    base = reduce_qx(f)
    while k:
        if k & 1:
            result = poly_mul(result, base)
        k >>= 1
        if k:
            base = poly_mul(base, base)
    return result


def poly_compose(f: Poly, g: Poly) -> Poly:
    """f(g(x)) modulo x^q - x, by Horner's rule over polynomials."""
    _check(f.ctx, g)
    ctx = f.ctx
    result = zero(ctx)
    for c in reversed(f._c):
        result = poly_mul(result, g)
        if c:
            result = poly_add(result, Poly._make(ctx, (c,)))
    return result


def poly_eval(f: Poly, x) -> FieldElement:
    """Horner evaluation at a single point."""
    ctx = f.ctx
    if isinstance(x, FieldElement):
        if x.ctx != ctx:
            raise FieldError("point and polynomial are over different fields")
        a = x.index
    else:
        a = int(ctx(x))
    acc = 0
    mul, add = ctx.mul, ctx.add
    for c in reversed(f._c):
        acc = add(mul(acc, a), c)
    return FieldElement(ctx, acc)


def tabulate(f: Poly, points=None) -> np.ndarray:
    """Values of f at ``points`` (default: every element, in index order)."""
    ctx = f.ctx
    pts = ctx.all_indices() if points is None else np.asarray(points, dtype=np.int64)
    acc = np.zeros(pts.shape, dtype=np.int64)
    for c in reversed(f._c):
        acc = ctx.vmul(acc, pts)
        if c:
            acc = ctx.vadd(acc, np.full_like(acc, c))
    return acc


def lagrange_interpolate(points) -> Poly:
    """The unique polynomial of degree < len(points) through ``points``.

    ``points`` is a sequence of (FieldElement, FieldElement) pairs.  When it
    covers the whole field the result is built from the closed form
    sum_a y_a (1 - (x - a)^(q-1)); otherwise Newton's divided differences.
    """
    pts = list(points)
    if not pts:
        raise ValueError("no interpolation points")
    ctx = pts[0][0].ctx
    xs, ys = [], []
    for a, b in pts:
        xs.append(int(ctx(a)))
        ys.append(int(ctx(b)))
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae in interpolation points")
    if len(xs) == ctx.q:
        table = np.zeros(ctx.q, dtype=np.int64)
        table[np.array(xs)] = ys
        return interpolate_table(ctx, table)
    return _newton(ctx, xs, ys)


def interpolate_table(ctx: FieldCtx, values) -> Poly:
    """Canonical polynomial taking ``values[a]`` at the element of index a.

    The coefficient of x^i (1 <= i <= q - 1) is -sum_a values[a] * a^(q-1-i);
    the constant term is values[0].
    """
    q = ctx.q
    ys = np.asarray(values, dtype=np.int64)
    if ys.shape != (q,):
        raise ValueError(f"need exactly {q} values")
    out = np.zeros(q, dtype=np.int64)
    out[0] = ys[0]
    nz = ys[1:] != 0
    a = ctx.all_indices()[1:][nz]
    ya = ys[1:][nz]
    # running = y_a * a^k, k = 0 .. q-2, gives coefficient of x^(q-1-k)
    running = ya.copy()
    for k in range(q - 1):
        s = ctx.vsum(running) if len(running) else 0
        out[q - 1 - k] = ctx.neg(int(s))
        running = ctx.vmul(running, a)
    # 0^0 = 1: the point a = 0 contributes -y_0 to x^(q-1)
    if ys[0]:
        out[q - 1] = ctx.sub(int(out[q - 1]), int(ys[0]))
    return Poly._make(ctx, out.tolist())


def _newton(ctx, xs, ys) -> Poly:
    m = len(xs)
    dd = list(ys)
    for j in range(1, m):
        for i in range(m - 1, j - 1, -1):
            num = ctx.sub(dd[i], dd[i - 1])
            den = ctx.sub(xs[i], xs[i - j])
            dd[i] = ctx.div(num, den)
    result = const(ctx, dd[-1])
    for i in range(m - 2, -1, -1):
        lin = Poly._make(ctx, (ctx.neg(xs[i]), 1))
        result = poly_add(poly_mul(result, lin), Poly._make(ctx, (dd[i],)))
    return result


def is_permutation(f: Poly) -> bool:
    vals = tabulate(f)
    return len(np.unique(vals)) == f.ctx.q


def brute_force_inverse(f: Poly) -> Poly:
    """Compositional inverse by inverting the value table and interpolating."""
    ctx = f.ctx
    vals = tabulate(f)
    if len(np.unique(vals)) != ctx.q:
        raise ValueError("polynomial is not a permutation of the field")
    table = np.empty(ctx.q, dtype=np.int64)
    table[vals] = ctx.all_indices()
    return interpolate_table(ctx, table)


def render(f: Poly) -> str:
    """Human form, e.g. ``x^3 + 2*x + 1``; coefficients are element indices."""
    if not f._c:
        return "0"
    parts = []
    for e in range(len(f._c) - 1, -1, -1):
        c = f._c[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
            continue
        mono = "x" if e == 1 else f"x^{e}"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return " + ".join(parts)


def to_json(f: Poly) -> list[int]:
    return list(f._c)

import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ppinv.gf import FieldCtx, FieldError
from ppinv.polyring import (
    NEG_INF,
    Poly,
    brute_force_inverse,
    coeff,
    const,
    equal_mod_qx,
    from_terms,
    is_permutation,
    lagrange_interpolate,
    monomial,
    poly_add,
    poly_compose,
    poly_eval,
    poly_mul,
    poly_powmod,
    poly_scale,
    poly_sub,
    reduce_qx,
    render,
    tabulate,
    x,
    zero,
)

from oracles import SlowField, naive_lagrange


def random_poly(ctx, rng, degree=None):
    degree = ctx.q - 1 if degree is None else degree
    return Poly(ctx, [rng.randrange(ctx.q) for _ in range(degree + 1)])


def naive_eval(ctx, terms, c):
    """Evaluate a raw {exponent: coefficient} dict term by term."""
    total = 0
    for e, v in terms.items():
        total = ctx.add(total, ctx.mul(v, ctx.pow(c, e)))
    return total


def test_eval_identity(gf9):
    X = x(gf9)
    for c in gf9.elements():
        assert poly_eval(X, c) == c


def test_eval_hou_at_zero(gf9):
    X = x(gf9)
    f = (X - X ** 2 - X ** 3) * X ** 4 - X + X ** 2
    assert poly_eval(f, gf9.zero) == gf9.zero


def test_eval_constant(gf27):
    k = const(gf27, 11)
    for c in range(27):
        assert poly_eval(k, c).index == 11


def test_reduce_examples(gf9):
    assert reduce_qx((gf9, {9: 1})) == x(gf9)
    assert reduce_qx((gf9, {17: 1})) == x(gf9)
    assert reduce_qx((gf9, {16: 1})) == monomial(gf9, 8)
    assert reduce_qx((gf9, {0: 5})) == const(gf9, 5)
    assert reduce_qx(const(gf9, 5)) == const(gf9, 5)


def test_x17_pointwise_equals_x(gf9):
    for c in range(9):
        assert gf9.pow(c, 17) == c


def test_compose_inversion_map_is_involution(gf9):
    inv_map = monomial(gf9, 7)
    assert poly_compose(inv_map, inv_map) == x(gf9)


def test_mul_by_zero_and_compose_with_x(gf27):
    rng = random.Random(1)
    f = random_poly(gf27, rng)
    assert poly_mul(f, zero(gf27)).is_zero
    assert poly_compose(f, x(gf27)) == f


def test_powmod_small_cases(gf9):
    rng = random.Random(2)
    f = random_poly(gf9, rng, 5)
    assert poly_powmod(f, 0) == const(gf9, 1)
    assert poly_powmod(f, 1) == f
    xp1 = poly_add(x(gf9), const(gf9, 1))
    assert poly_powmod(xp1, 9) == xp1


def test_interpolation_examples(gf9):
    elems = gf9.elements()
    assert lagrange_interpolate([(c, c) for c in elems]) == x(gf9)
    assert lagrange_interpolate([(c, c ** 3) for c in elems]) == monomial(gf9, 3)
    assert lagrange_interpolate([(gf9(0), gf9(0)), (gf9(1), gf9(1))]) == x(gf9)


def test_interpolation_duplicate_abscissa(gf9):
    with pytest.raises(ValueError):
        lagrange_interpolate([(gf9(1), gf9(1)), (gf9(1), gf9(2))])


def test_coeff_and_equality(gf9):
    X = x(gf9)
    f = X ** 2 + 2 * X
    assert coeff(f, 1).index == 2
    assert coeff(f, 20).index == 0
    assert equal_mod_qx(Poly(gf9, [0] * 9 + [1]), X)


def test_zero_degree_marker(gf9):
    assert zero(gf9).degree == NEG_INF
    assert zero(gf9).indices == ()
    assert const(gf9, 0).degree == NEG_INF
    assert const(gf9, 3).degree == 0


def test_mixed_fields_rejected(gf9, gf27):
    with pytest.raises(FieldError):
        poly_add(x(gf9), x(gf27))
    with pytest.raises(FieldError):
        poly_eval(x(gf9), gf27(1))


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_reduce_agrees_pointwise(n):
    ctx = FieldCtx(3, n)
    rng = random.Random(n)
    for _ in range(5):
        terms = {}
        for _ in range(12):
            terms[rng.randrange(0, 5 * ctx.q)] = rng.randrange(1, ctx.q)
        f = reduce_qx((ctx, terms))
        assert f.degree <= ctx.q - 1
        table = tabulate(f)
        for c in range(ctx.q):
            assert table[c] == naive_eval(ctx, terms, c)


@pytest.mark.parametrize("n", [2, 3])
def test_interpolate_tabulate_roundtrip(n):
    ctx = FieldCtx(3, n)
    rng = random.Random(10 + n)
    for _ in range(10):
        f = random_poly(ctx, rng)
        pts = [(c, poly_eval(f, c)) for c in ctx.elements()]
        assert lagrange_interpolate(pts) == f


def test_full_interpolation_matches_naive_lagrange(gf9):
    slow = SlowField(3, 2, gf9.modulus)
    rng = random.Random(3)
    for _ in range(5):
        ys = [rng.randrange(9) for _ in range(9)]
        got = lagrange_interpolate([(gf9(a), gf9(y)) for a, y in enumerate(ys)])
        assert got.indices == naive_lagrange(slow, list(range(9)), ys)


def test_partial_interpolation_matches_naive_lagrange(gf27):
    slow = SlowField(3, 3, gf27.modulus)
    rng = random.Random(4)
    for size in (1, 2, 5, 11):
        xs = rng.sample(range(27), size)
        ys = [rng.randrange(27) for _ in xs]
        got = lagrange_interpolate([(gf27(a), gf27(b)) for a, b in zip(xs, ys)])
        assert got.degree < size
        assert got.indices == naive_lagrange(slow, xs, ys)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_compose_agreement(n):
    ctx = FieldCtx(3, n)
    rng = random.Random(20 + n)
    for _ in range(4):
        f, g = random_poly(ctx, rng), random_poly(ctx, rng, 6)
        fg = tabulate(poly_compose(f, g))
        assert (fg == tabulate(f, tabulate(g))).all()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_powmod_matches_iterated_mul(n):
    ctx = FieldCtx(3, n)
    rng = random.Random(30 + n)
    f = random_poly(ctx, rng, 4)
    acc = const(ctx, 1)
    for k in range(21):
        assert poly_powmod(f, k) == acc
        acc = poly_mul(acc, f)


def test_mul_matches_pointwise_product(gf81):
    rng = random.Random(5)
    f, g = random_poly(gf81, rng), random_poly(gf81, rng)
    assert (tabulate(poly_mul(f, g)) == gf81.vmul(tabulate(f), tabulate(g))).all()


def test_scale_and_sub(gf27):
    rng = random.Random(6)
    f = random_poly(gf27, rng)
    assert poly_sub(f, f).is_zero
    assert poly_scale(f, 0).is_zero
    assert poly_scale(f, 1) == f


def test_permutation_and_brute_force_inverse(gf27):
    f = monomial(gf27, 5)  # gcd(5, 26) = 1
    assert is_permutation(f)
    g = brute_force_inverse(f)
    assert (tabulate(g, tabulate(f)) == gf27.all_indices()).all()
    assert not is_permutation(monomial(gf27, 2))
    with pytest.raises(ValueError):
        brute_force_inverse(monomial(gf27, 2))


def test_render(gf9):
    assert render(Poly(gf9, [1, 2, 0, 1])) == "x^3 + 2*x + 1"
    assert render(zero(gf9)) == "0"


def test_from_terms_folds(gf9):
    f = from_terms(gf9, [(9, 1), (1, 1), (0, 2)])
    assert f.indices == (2, 2)


poly_lists = st.lists(st.integers(0, 8), max_size=30)


@settings(max_examples=150, deadline=None)
@given(a=poly_lists, b=poly_lists, c=poly_lists)
def test_ring_laws_gf9(gf9, a, b, c):
    f, g, h = Poly(gf9, a), Poly(gf9, b), Poly(gf9, c)
    assert poly_mul(f, g) == poly_mul(g, f)
    assert poly_mul(f, poly_add(g, h)) == poly_add(poly_mul(f, g), poly_mul(f, h))
    assert poly_compose(poly_compose(f, g), h) == poly_compose(f, poly_compose(g, h))


@settings(max_examples=100, deadline=None)
@given(coeffs=poly_lists, point=st.integers(0, 8))
def test_eval_matches_table(gf9, coeffs, point):
    f = Poly(gf9, coeffs)
    assert poly_eval(f, gf9(point)).index == int(tabulate(f, np.array([point]))[0])

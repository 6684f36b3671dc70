"""Exact arithmetic in GF(p^n) for odd primes p.

Elements are stored in the polynomial basis over the prime subfield and
identified with the integer index sum(c_i * p^i).  Scalar operations on
plain indices (``ctx.add(a, b)``, ``ctx.mul(a, b)``, ...) are the hot path
used by the polynomial code; :class:`FieldElement` wraps an index with its
context for ergonomic use.  Batch variants (``vadd``, ``vmul``, ``vsum``)
act on numpy index arrays.
"""

from __future__ import annotations

import itertools
import re
from functools import cached_property

import numpy as np


class FieldError(ValueError):
    """Invalid field construction or element."""


def is_prime(m: int) -> bool:
    if m < 2:
        return False
    if m % 2 == 0:
        return m == 2
    d = 3
    while d * d <= m:
        if m % d == 0:
            return False
        d += 2
    return True


def prime_factors(m: int) -> list[int]:
    """Distinct prime factors of m >= 1, ascending."""
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


# -- small helpers for GF(p)[x], coefficient lists low degree first ---------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a, b, p):
    a = _trim(a)
    b = _trim(b)
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - db
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        a = _trim(a)
    return a


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] += ai * bj
    return _pmod([c % p for c in prod], m, p)


def _pgcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a, e, m, p):
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def is_irreducible(modulus, p: int) -> bool:
    """Rabin-style test: f of degree n is irreducible over GF(p) iff
    gcd(x^(p^i) - x, f) = 1 for all 1 <= i <= n/2."""
    f = _trim(modulus)
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(n // 2):
        xp = _ppowmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_pgcd(f, diff, p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, n: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree n over GF(p),
    coefficients compared low degree first."""
    for low in itertools.product(range(p), repeat=n):
        cand = list(low) + [1]
        if is_irreducible(cand, p):
            return tuple(cand)
    raise FieldError(f"no irreducible polynomial of degree {n} over GF({p})")  # unreachable


class FieldCtx:
    """The field GF(p^n) with a fixed monic irreducible modulus.

    Immutable after construction.  ``xi`` is the smallest-index element of
    multiplicative order q - 1.
    """

    def __init__(self, p: int, n: int, modulus=None):
        if not isinstance(p, int) or not is_prime(p) or p == 2:
            raise FieldError(f"p must be an odd prime, got {p!r}")
        if not isinstance(n, int) or n < 1:
            raise FieldError(f"extension degree must be >= 1, got {n!r}")
        if modulus is None:
            modulus = smallest_irreducible(p, n)
        else:
            modulus = tuple(int(c) for c in modulus)
            if len(modulus) != n + 1 or modulus[-1] % p != 1:
                raise FieldError(f"modulus must be monic of degree {n}")
            if any(not 0 <= c < p for c in modulus):
                raise FieldError(f"modulus coefficients must lie in [0, {p})")
            if not is_irreducible(modulus, p):
                raise FieldError(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.n = n
        self.q = p ** n
        self.modulus = modulus
        self._pw = [p ** i for i in range(n)]
        # index -> coordinate tuple; O(q * n) memory
        self._vec = [tuple((a // w) % p for w in self._pw) for a in range(self.q)]
        # x^k mod modulus for n <= k <= 2n - 2, as coordinate lists
        self._red = {}
        cur = [(-c) % p for c in modulus[:n]]  # x^n
        for k in range(n, 2 * n - 1):
            self._red[k] = cur
            top = cur[-1]
            cur = [0] + cur[:-1]
            if top:
                cur = [(c + top * r) % p for c, r in zip(cur, self._red[n])]
        self._inv_cache = {}
        self.xi = FieldElement(self, self._find_primitive())

    # -- construction helpers -------------------------------------------

    def _find_primitive(self) -> int:
        if self.q == 3:
            return 2
        order = self.q - 1
        tests = [order // r for r in prime_factors(order)]
        for a in range(1, self.q):
            if all(self.pow(a, e) != 1 for e in tests):
                return a
        raise FieldError("no primitive element found")  # unreachable for a field

    def __repr__(self):
        return f"FieldCtx(p={self.p}, n={self.n}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p
                and self.n == other.n and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.n, self.modulus))

    # -- element construction -------------------------------------------

    def __call__(self, value) -> FieldElement:
        """Element from an index, a coordinate sequence, or a FieldElement."""
        if isinstance(value, FieldElement):
            if value.ctx != self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if not 0 <= value < self.q:
                raise FieldError(f"index {value} out of range for GF({self.q})")
            return FieldElement(self, value)
        return FieldElement(self, self.index_of(value))

    def index_of(self, coeffs) -> int:
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) > self.n:
            raise FieldError(f"too many coordinates for GF({self.p}^{self.n})")
        if any(not 0 <= c < self.p for c in coeffs):
            raise FieldError(f"coordinates must lie in [0, {self.p})")
        return sum(c * w for c, w in zip(coeffs, self._pw))

    def coords(self, a: int) -> tuple[int, ...]:
        return self._vec[a]

    @property
    def zero(self) -> FieldElement:
        return FieldElement(self, 0)

    @property
    def one(self) -> FieldElement:
        return FieldElement(self, 1)

    def from_int(self, k: int) -> int:
        """Index of the prime-subfield image of the integer k."""
        return k % self.p

    def elements(self) -> list[FieldElement]:
        return [FieldElement(self, a) for a in range(self.q)]

    # -- scalar arithmetic on indices -----------------------------------

    def add(self, a: int, b: int) -> int:
        if self.n == 1:
            return (a + b) % self.p
        if not a:
            return b
        if not b:
            return a
        p = self.p
        out = 0
        w = 1
        while a or b:
            out += ((a % p + b % p) % p) * w
            a //= p
            b //= p
            w *= p
        return out

    def neg(self, a: int) -> int:
        if self.n == 1:
            return (-a) % self.p
        p = self.p
        out = 0
        w = 1
        while a:
            out += ((-(a % p)) % p) * w
            a //= p
            w *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.n == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        n, p = self.n, self.p
        va, vb = self._vec[a], self._vec[b]
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(va):
            if x:
                for j, y in enumerate(vb):
                    prod[i + j] += x * y
        out = [c % p for c in prod[:n]]
        for k in range(n, 2 * n - 1):
            c = prod[k] % p
            if c:
                for i, r in enumerate(self._red[k]):
                    out[i] += c * r
        idx = 0
        for i in range(n - 1, -1, -1):
            idx = idx * p + out[i] % p
        return idx

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            a = self.inv(a)
            k = -k
        if a == 0:
            return 1 if k == 0 else 0
        k %= self.q - 1
        result = 1
        while k:
            if k & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.n == 1:
            return pow(a, -1, self.p)
        hit = self._inv_cache.get(a)
        if hit is None:
            hit = self.pow(a, self.q - 2)
            self._inv_cache[a] = hit
        return hit

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def eta(self, a: int) -> int:
        """Quadratic character of the element with index a."""
        if a == 0:
            return 0
        r = self.pow(a, (self.q - 1) // 2)
        return 1 if r == 1 else -1

    # -- batch arithmetic on numpy index arrays -------------------------

    @cached_property
    def _vec_array(self) -> np.ndarray:
        return np.array(self._vec, dtype=np.int64).reshape(self.q, self.n)

    @cached_property
    def _pw_array(self) -> np.ndarray:
        return np.array(self._pw, dtype=np.int64)

    @cached_property
    def _red_array(self) -> np.ndarray:
        return np.array([self._red[k] for k in range(self.n, 2 * self.n - 1)],
                        dtype=np.int64).reshape(self.n - 1, self.n)

    def to_coords(self, idx: np.ndarray) -> np.ndarray:
        return self._vec_array[np.asarray(idx, dtype=np.int64)]

    def from_coords(self, coords: np.ndarray) -> np.ndarray:
        """Indices from integer coordinates of width n (any integers)."""
        return (np.asarray(coords) % self.p) @ self._pw_array

    def reduce_wide(self, wide: np.ndarray) -> np.ndarray:
        """Indices from coordinate rows of width 2n - 1 (a raw product)."""
        n = self.n
        low = wide[..., :n] % self.p
        if n > 1:
            high = wide[..., n:] % self.p
            low = low + high @ self._red_array
        return self.from_coords(low)

    def vadd(self, a, b) -> np.ndarray:
        return self.from_coords(self.to_coords(a) + self.to_coords(b))

    def vneg(self, a) -> np.ndarray:
        return self.from_coords(-self.to_coords(a))

    def vmul(self, a, b) -> np.ndarray:
        n = self.n
        A = self.to_coords(a)
        B = self.to_coords(b)
        if n == 1:
            return (A[..., 0] * B[..., 0]) % self.p
        wide = np.zeros(np.broadcast_shapes(A.shape[:-1], B.shape[:-1]) + (2 * n - 1,),
                        dtype=np.int64)
        for i in range(n):
            wide[..., i:i + n] += A[..., i:i + 1] * B
        return self.reduce_wide(wide)

    def vsum(self, a, axis=0):
        """Field sum of index array entries along ``axis``."""
        return self.from_coords(self.to_coords(a).sum(axis=axis))

    def all_indices(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)


class FieldElement:
    """An element of a :class:`FieldCtx`, identified by its integer index."""

    __slots__ = ("ctx", "index")

    def __init__(self, ctx: FieldCtx, index: int):
        self.ctx = ctx
        self.index = index

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.ctx._vec[self.index]

    def __int__(self):
        return self.index

    def __index__(self):
        return self.index

    def __repr__(self):
        return f"FieldElement({self.index} in GF({self.ctx.q}))"

    def __str__(self):
        return str(self.index)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.index == other.index
        if isinstance(other, int):
            return self.index == self.ctx.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.q, self.index))

    def __bool__(self):
        return self.index != 0

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise FieldError("mixed-field arithmetic")
            return other.index
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.add(self.index, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.sub(self.index, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.sub(b, self.index))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.index))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.mul(self.index, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.ctx, self.ctx.div(self.index, b))

    def __pow__(self, k: int):
        return FieldElement(self.ctx, self.ctx.pow(self.index, k))

    def inverse(self) -> FieldElement:
        return FieldElement(self.ctx, self.ctx.inv(self.index))


# -- module-level operations --------------------------------------------

def field_create(p: int, n: int, modulus=None) -> FieldCtx:
    return FieldCtx(p, n, modulus)


def _same(a: FieldElement, b: FieldElement):
    if a.ctx != b.ctx:
        raise FieldError("mixed-field arithmetic")


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    _same(a, b)
    return a + b


def sub(a: FieldElement, b: FieldElement) -> FieldElement:
    _same(a, b)
    return a - b


def neg(a: FieldElement) -> FieldElement:
    return -a


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same(a, b)
    return a * b


def inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def power(a: FieldElement, k: int) -> FieldElement:
    return a ** k


def quadratic_character(ctx: FieldCtx, e: FieldElement | int) -> int:
    """0 at zero, +1 on nonzero squares, -1 on non-squares."""
    return ctx.eta(int(ctx(e)))


def enumerate_field(ctx: FieldCtx) -> list[FieldElement]:
    """All q elements in increasing index order."""
    return ctx.elements()


# -- text formats ---------------------------------------------------------

_FIELD_RE = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*(?::\s*([\d,\s]+))?\s*$")


def parse_field_spec(text: str) -> FieldCtx:
    """``p^n`` or ``p^n:c0,c1,...,cn`` (modulus low degree first)."""
    m = _FIELD_RE.match(text)
    if not m:
        raise FieldError(f"bad field spec {text!r}; expected p^n or p^n:c0,...,cn")
    p, n = int(m.group(1)), int(m.group(2))
    modulus = None
    if m.group(3) is not None:
        modulus = [int(c) for c in m.group(3).replace(" ", "").split(",") if c != ""]
    return FieldCtx(p, n, modulus)


_ELEM_RE = re.compile(r"^\s*(?:(\d+)|\[\s*([\d,\s]*)\]|g\s*\^\s*(-?\d+)|(g))\s*$")


def parse_element(text: str, ctx: FieldCtx) -> FieldElement:
    """Decimal index, ``[c0,c1,...]`` coordinates, or ``g^k`` (power of xi)."""
    m = _ELEM_RE.match(text)
    if not m:
        raise FieldError(f"bad element literal {text!r}")
    if m.group(1) is not None:
        return ctx(int(m.group(1)))
    if m.group(2) is not None:
        parts = [c for c in m.group(2).replace(" ", "").split(",") if c != ""]
        return ctx([int(c) for c in parts])
    k = int(m.group(3)) if m.group(3) is not None else 1
    return ctx.xi ** k

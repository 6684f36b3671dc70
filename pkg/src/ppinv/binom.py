"""Binomial coefficients modulo a prime via Lucas' theorem.

Also provides the predicted supports and residues of the two binomial
families that appear in the closed-form inverse of Hou's permutation
polynomial over GF(3^n):

* C(3i, i - 1) mod 3, nonzero exactly for i = (3^k - 1)/2, 1 <= k <= n;
* C(3i - (3^n - 1)/2, i - (3^n + 1)/2) mod 3 on the upper block
  (3^n + 1)/2 <= i <= (5 * 3^n - 3)/6.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf import is_prime


@dataclass(frozen=True)
class DigitExpansion:
    base: int
    digits: tuple[int, ...]

    @property
    def value(self) -> int:
        return sum(d * self.base ** t for t, d in enumerate(self.digits))


def digits(m: int, p: int, length: int | None = None) -> DigitExpansion:
    """Base-p digits of m >= 0, low digit first, zero-padded to ``length``."""
    if m < 0:
        raise ValueError("digits() needs m >= 0")
    out = []
    v = m
    while v:
        out.append(v % p)
        v //= p
    if length is not None:
        if len(out) > length:
            raise ValueError(f"{m} needs more than {length} base-{p} digits")
        out += [0] * (length - len(out))
    return DigitExpansion(p, tuple(out))


# C(a, b) for 0 <= a, b < p, reduced mod p; small table per prime
_SMALL: dict[int, list[list[int]]] = {}


def _small_table(p: int) -> list[list[int]]:
    tab = _SMALL.get(p)
    if tab is None:
        tab = [[0] * p for _ in range(p)]
        for a in range(p):
            tab[a][0] = 1
            for b in range(1, a + 1):
                tab[a][b] = (tab[a - 1][b - 1] + (tab[a - 1][b] if b <= a - 1 else 0)) % p
        _SMALL[p] = tab
    return tab


def binom_mod_p(m: int, k: int, p: int) -> int:
    """C(m, k) mod p for m, k >= 0, as the product of digit-wise binomials."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if m < 0 or k < 0:
        raise ValueError("binom_mod_p needs m, k >= 0")
    if k > m:
        return 0
    tab = _small_table(p)
    r = 1
    while k:
        mt, kt = m % p, k % p
        if kt > mt:
            return 0
        r = r * tab[mt][kt] % p
        m //= p
        k //= p
    return r


def binom_generalized_mod_p(m: int, k: int, p: int) -> int:
    """m(m-1)...(m-k+1)/k! mod p for any integer m and k >= 0.

    Negative upper indices go through C(-m, k) = (-1)^k C(m + k - 1, k).
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 0:
        raise ValueError("lower index must be >= 0")
    if m >= 0:
        return binom_mod_p(m, k, p)
    r = binom_mod_p(-m + k - 1, k, p)
    return r if k % 2 == 0 else (-r) % p


def shifted_support(n: int) -> set[int]:
    """Predicted {i in [1, 3^n) : C(3i, i - 1) != 0 mod 3}."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return {(3 ** k - 1) // 2 for k in range(1, n + 1)}


def upper_block_range(n: int) -> range:
    """i from (3^n + 1)/2 to (5 * 3^n - 3)/6 inclusive."""
    q = 3 ** n
    return range((q + 1) // 2, (5 * q - 3) // 6 + 1)


def upper_block_binom(i: int, n: int) -> int:
    """C(3i - (3^n - 1)/2, i - (3^n + 1)/2) mod 3."""
    q = 3 ** n
    return binom_mod_p(3 * i - (q - 1) // 2, i - (q + 1) // 2, 3)


def upper_block_index(j: int, k: int, n: int) -> int:
    q = 3 ** n
    return (q + 1) // 2 + (3 ** j - 1) // 2 + (3 ** k - 1) // 2


def upper_block_support(n: int) -> set[int]:
    """Predicted upper-block indices i with a nonzero binomial mod 3:
    (3^n + 1)/2 + (3^j - 1)/2 + (3^k - 1)/2 for 0 <= j <= k <= n - 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return {upper_block_index(j, k, n) for k in range(n) for j in range(k + 1)}


def upper_block_digits(i: int, n: int) -> DigitExpansion:
    """Digits i_0..i_{n-2} of i - (3^n + 1)/2 (exactly n - 1 of them)."""
    q = 3 ** n
    return digits(i - (q + 1) // 2, 3, n - 1)


def digits_nonincreasing(i: int, n: int) -> bool:
    """True iff 2 >= i_0 >= i_1 >= ... >= i_{n-2} >= 0 for the offset digits."""
    d = upper_block_digits(i, n).digits
    return all(d[t] >= d[t + 1] for t in range(len(d) - 1))


def upper_block_value(j: int, k: int) -> int:
    """Predicted unsigned residue: 1 when j = k, 2 when j < k."""
    if not 0 <= j <= k:
        raise ValueError("need 0 <= j <= k")
    return 1 if j == k else 2


def upper_block_signed_value(j: int, k: int, n: int) -> int:
    """Predicted (-1)^(i - (3^n+1)/2) * binomial mod 3 at the support point
    indexed by (j, k): 1 if j = k, else (-1)^(j+k+1) reduced mod 3."""
    if not 0 <= j <= k <= n - 1:
        raise ValueError(f"need 0 <= j <= k <= {n - 1}")
    if j == k:
        return 1
    return 1 if (j + k + 1) % 2 == 0 else 2

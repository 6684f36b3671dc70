"""Independent reference implementations used only by the tests.

None of these share code with the package: they work on plain Python ints
and lists so a bug in the library cannot hide in its own oracle.
"""



def pascal_rows(top, p):
    """Pascal's triangle mod p, rows 0..top."""
    rows = [[1]]
    for m in range(1, top + 1):
        prev = rows[-1]
        rows.append([1] + [(prev[k - 1] + prev[k]) % p for k in range(1, m)] + [1])
    return rows


def generalized_binom(m, k):
    """C(m, k) for any integer m via the falling factorial."""
    num = 1
    for j in range(k):
        num *= m - j
    den = 1
    for j in range(1, k + 1):
        den *= j
    return num // den


def poly_mulmod(a, b, modulus, p):
    """Schoolbook product of coordinate lists reduced by a monic modulus."""
    n = len(modulus) - 1
    prod = [0] * (2 * n)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, n - 1, -1):
        c = prod[d]
        if c:
            for t in range(n + 1):
                prod[d - n + t] = (prod[d - n + t] - c * modulus[t]) % p
    return prod[:n]


def coords(index, p, n):
    return [(index // p ** i) % p for i in range(n)]


def index(cs, p):
    return sum(c * p ** i for i, c in enumerate(cs))


class SlowField:
    """GF(p^n) on coordinate lists, used as an arithmetic oracle."""

    def __init__(self, p, n, modulus):
        self.p, self.n, self.q = p, n, p ** n
        self.modulus = list(modulus)

    def add(self, a, b):
        p, n = self.p, self.n
        return index([(x + y) % p for x, y in zip(coords(a, p, n), coords(b, p, n))], p)

    def mul(self, a, b):
        p, n = self.p, self.n
        return index(poly_mulmod(coords(a, p, n), coords(b, p, n), self.modulus, p), p)

    def pow(self, a, k):
        r = 1
        for _ in range(k):
            r = self.mul(r, a)
        return r


def naive_lagrange(field, xs, ys):
    """Coefficient list (indices) of the Lagrange interpolant, built from
    basis products with scalar arithmetic only."""
    q = field.q
    neg = [0] * q
    for a in range(q):
        for b in range(q):
            if field.add(a, b) == 0:
                neg[a] = b
    inv = [0] * q
    for a in range(1, q):
        for b in range(1, q):
            if field.mul(a, b) == 1:
                inv[a] = b
    total = [0] * len(xs)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            # basis *= (x - xj)
            nxt = [0] * (len(basis) + 1)
            for k, c in enumerate(basis):
                nxt[k + 1] = field.add(nxt[k + 1], c)
                nxt[k] = field.add(nxt[k], field.mul(c, neg[xj]))
            basis = nxt
            denom = field.mul(denom, field.add(xi, neg[xj]))
        scale = field.mul(yi, inv[denom])
        for k, c in enumerate(basis):
            total[k] = field.add(total[k], field.mul(c, scale))
    while total and total[-1] == 0:
        total.pop()
    return tuple(total)



"""Exact linear algebra over the rationals and over prime fields.

Matrices are plain numpy arrays.  Prime-field matrices use ``int64`` with
entries in ``[0, p)`` when products cannot overflow, otherwise Python ints in
an object array.  Rational matrices are object arrays of ``Fraction``.
Every routine takes the field explicitly, so there is no hidden global state.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

import numpy as np

DEFAULT_PRIME = 1000003


class LinearAlgebraError(ValueError):
    """Raised for inconsistent systems, singular matrices and bad shapes."""


class Field:
    """Common interface of the two supported fields."""

    name: str
    dtype: object

    def reduce(self, a: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def scalar(self, x):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def random_scalar(self, rng: random.Random):
        raise NotImplementedError

    def format(self, x) -> str:
        raise NotImplementedError

    def parse(self, s):
        return self.scalar(Fraction(str(s)))

    # array helpers -------------------------------------------------------

    def array(self, data, shape: tuple[int, int] | None = None) -> np.ndarray:
        """Coerce nested lists, ints, Fractions or strings into a field matrix."""
        if isinstance(data, np.ndarray) and data.dtype == self.dtype:
            a = data
        else:
            raw = np.array(data, dtype=object)
            if raw.size == 0:
                a = np.zeros(shape if shape is not None else raw.shape, dtype=self.dtype)
            else:
                flat = [self.scalar(v) for v in raw.ravel()]
                a = np.array(flat, dtype=self.dtype).reshape(raw.shape)
        if shape is not None:
            a = a.reshape(shape)
        return self.reduce(a)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.dtype is object:
            return np.full((rows, cols), self.scalar(0), dtype=object)
        return np.zeros((rows, cols), dtype=self.dtype)

    def eye(self, n: int) -> np.ndarray:
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = self.scalar(1)
        return a

    def random_matrix(self, rows: int, cols: int, rng: random.Random) -> np.ndarray:
        flat = [self.random_scalar(rng) for _ in range(rows * cols)]
        return self.array(np.array(flat, dtype=object).reshape(rows, cols), (rows, cols))

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0:
            return self.zeros(a.shape[0], b.shape[1])
        return self.reduce(a @ b)

    def kron(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.size == 0 or b.size == 0:
            return self.zeros(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1])
        return self.reduce(np.kron(a, b))

    def __eq__(self, other):
        return isinstance(other, Field) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"Field({self.name!r})"


class RationalField(Field):
    """The field Q, with exact ``Fraction`` entries."""

    name = "q"
    dtype = object

    def reduce(self, a):
        return a

    def scalar(self, x):
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, (np.integer,)):
            return Fraction(int(x))
        return Fraction(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(x)

    def random_scalar(self, rng):
        return Fraction(rng.randint(-9, 9))

    def format(self, x) -> str:
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class PrimeField(Field):
    """The field GF(p) for a prime p."""

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if p < 2 or not _is_prime(p):
            raise LinearAlgebraError(f"{p} is not prime")
        self.p = p
        self.name = f"fp:{p}"
        # int64 is safe while a dot product of length 2**15 cannot overflow
        self.dtype = np.int64 if p < 2**24 else object

    def reduce(self, a):
        return a % self.p

    def scalar(self, x):
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            return (x.numerator % self.p) * pow(x.denominator % self.p, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x):
        x = int(x) % self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, self.p - 2, self.p)

    def random_scalar(self, rng):
        return rng.randrange(self.p)

    def format(self, x) -> str:
        return str(int(x) % self.p)

    def signed(self, x) -> int:
        """Symmetric lift of a residue to an integer in (-p/2, p/2]."""
        x = int(x) % self.p
        return x - self.p if x > self.p // 2 else x


QQ = RationalField()


def _is_prime(n: int) -> bool:
    if n < 4:
        return n in (2, 3)
    if n % 2 == 0:
        return False
    # deterministic Miller-Rabin for 64-bit inputs
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def field_from_name(name: str) -> Field:
    """Parse ``"q"`` or ``"fp:<p>"``."""
    if name == "q":
        return QQ
    if name.startswith("fp:"):
        return PrimeField(int(name[3:]))
    raise LinearAlgebraError(f"unknown field {name!r}")


# ---------------------------------------------------------------------------
# elimination


def rref(field: Field, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = field.reduce(np.array(a, dtype=field.dtype, copy=True))
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c] != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        a[r, c:] = field.reduce(a[r, c:] * field.inv(a[r, c]))
        col = a[:, c].copy()
        col[r] = 0
        others = np.flatnonzero(col != 0)
        if others.size:
            a[np.ix_(others, np.arange(c, cols))] = field.reduce(
                a[np.ix_(others, np.arange(c, cols))] - np.outer(col[others], a[r, c:])
            )
        pivots.append(c)
        r += 1
    return a, pivots


def rank(field: Field, a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return len(rref(field, a)[1])


def kernel_basis(field: Field, a: np.ndarray) -> np.ndarray:
    """Columns spanning the right null space of ``a``."""
    rows, cols = a.shape
    if rows == 0:
        return field.eye(cols)
    r, pivots = rref(field, a)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = field.zeros(cols, len(free))
    for j, f in enumerate(free):
        basis[f, j] = field.scalar(1)
        for i, pc in enumerate(pivots):
            basis[pc, j] = -r[i, f]
    return field.reduce(basis)


def left_kernel_basis(field: Field, a: np.ndarray) -> np.ndarray:
    """Rows spanning the left null space of ``a``."""
    return kernel_basis(field, a.T).T


def solve(field: Field, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """One solution ``x`` of ``a @ x == b``; raises if the system is inconsistent."""
    rows, cols = a.shape
    vec = b.ndim == 1
    b2 = b.reshape(rows, 1) if vec else b
    aug = np.concatenate([np.asarray(a, dtype=field.dtype), np.asarray(b2, dtype=field.dtype)], axis=1)
    r, pivots = rref(field, aug)
    if any(p >= cols for p in pivots):
        raise LinearAlgebraError("inconsistent linear system")
    x = field.zeros(cols, b2.shape[1])
    for i, pc in enumerate(pivots):
        x[pc] = r[i, cols:]
    return x.ravel() if vec else x


def inverse(field: Field, a: np.ndarray) -> np.ndarray:
    n = a.shape[0]
    if a.shape != (n, n):
        raise LinearAlgebraError("inverse of a non-square matrix")
    if n == 0:
        return field.zeros(0, 0)
    r, pivots = rref(field, np.concatenate([np.asarray(a, dtype=field.dtype), field.eye(n)], axis=1))
    if pivots[:n] != list(range(n)):
        raise LinearAlgebraError("singular matrix")
    return r[:, n:]


def is_invertible(field: Field, a: np.ndarray) -> bool:
    return a.shape[0] == a.shape[1] and rank(field, a) == a.shape[0]


def row_space_complement(field: Field, a: np.ndarray) -> list[int]:
    """Coordinates whose unit vectors complete the row space of ``a`` to everything."""
    if a.shape[0] == 0:
        return list(range(a.shape[1]))
    pivots = set(rref(field, a)[1])
    return [c for c in range(a.shape[1]) if c not in pivots]


def column_basis(field: Field, a: np.ndarray) -> list[int]:
    """Indices of a maximal independent set of columns, greedy from the left."""
    if a.size == 0:
        return []
    return rref(field, a)[1]


# ---------------------------------------------------------------------------
# characteristic polynomials


def charpoly(field: Field, a: np.ndarray) -> list:
    """Characteristic polynomial det(t - a), coefficients low degree first.

    Uses a similarity reduction to upper Hessenberg form, valid over any field.
    """
    n = a.shape[0]
    if a.shape != (n, n):
        raise LinearAlgebraError("charpoly of a non-square matrix")
    norm = _normalizer(field)
    h = [[norm(v) for v in row] for row in field.reduce(np.asarray(a)).tolist()]
    for j in range(n - 2):
        i = next((i for i in range(j + 1, n) if h[i][j] != 0), None)
        if i is None:
            continue
        if i != j + 1:
            h[i], h[j + 1] = h[j + 1], h[i]
            for row in h:
                row[i], row[j + 1] = row[j + 1], row[i]
        piv_inv = field.inv(h[j + 1][j])
        for k in range(j + 2, n):
            if h[k][j] == 0:
                continue
            f = norm(h[k][j] * piv_inv)
            hk, hj = h[k], h[j + 1]
            for c in range(n):
                hk[c] = norm(hk[c] - f * hj[c])
            for row in h:
                row[j + 1] = norm(row[j + 1] + f * row[k])
    # recurrence on the leading principal minors of t - h
    one, zero = field.scalar(1), field.scalar(0)
    polys: list[list] = [[one]]
    for k in range(1, n + 1):
        prev = polys[k - 1]
        cur = [zero] + list(prev)
        diag = h[k - 1][k - 1]
        for d in range(len(prev)):
            cur[d] = norm(cur[d] - diag * prev[d])
        prod = one
        for i in range(k - 1, 0, -1):
            prod = norm(prod * h[i][i - 1])
            coef = norm(prod * h[i - 1][k - 1])
            if coef == 0:
                continue
            for d, c in enumerate(polys[i - 1]):
                cur[d] = norm(cur[d] - coef * c)
        polys.append(cur)
    return polys[n]


def _normalizer(field: Field):
    if isinstance(field, PrimeField):
        p = field.p
        return lambda x: int(x) % p
    return Fraction


def poly_eval_matrix(field: Field, poly: Sequence, a: np.ndarray) -> np.ndarray:
    """Evaluate a polynomial (low degree first) at a square matrix by Horner."""
    n = a.shape[0]
    result = field.zeros(n, n)
    for c in reversed(list(poly)):
        result = field.matmul(result, a) if n else result
        if c:
            result = field.reduce(result + field.scalar(c) * field.eye(n))
    return result


# ---------------------------------------------------------------------------
# polynomials over GF(p), coefficient lists low degree first


def _trim(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def poly_mod(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    f = _trim([c % p for c in f])
    g = _trim([c % p for c in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    while len(f) - 1 >= dg and f:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        _trim(f)
    return f


def poly_divmod(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    f = _trim([c % p for c in f])
    g = _trim([c % p for c in g])
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    inv = pow(g[-1], p - 2, p)
    dg = len(g) - 1
    q = [0] * max(len(f) - dg, 1)
    while f and len(f) - 1 >= dg:
        c = f[-1] * inv % p
        shift = len(f) - 1 - dg
        q[shift] = c
        for i, gi in enumerate(g):
            f[shift + i] = (f[shift + i] - c * gi) % p
        _trim(f)
    return _trim(q), f


def poly_mul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] = (out[i + j] + a * b) % p
    return _trim(out)


def poly_pow(f: Sequence[int], e: int, p: int) -> list[int]:
    out = [1]
    for _ in range(e):
        out = poly_mul(out, f, p)
    return out


def poly_gcd(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    """Monic gcd."""
    a = _trim([c % p for c in f])
    b = _trim([c % p for c in g])
    while b:
        a, b = b, poly_mod(a, b, p)
    if not a:
        return []
    inv = pow(a[-1], p - 2, p)
    return [c * inv % p for c in a]


def poly_powmod(base: Sequence[int], e: int, mod: Sequence[int], p: int) -> list[int]:
    result = [1]
    b = poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, b, p), mod, p)
        e >>= 1
        if e:
            b = poly_mod(poly_mul(b, b, p), mod, p)
    return result


def _split_linear(g: list[int], p: int, rng: random.Random) -> list[int]:
    """Roots of a monic squarefree product of distinct linear factors."""
    deg = len(g) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [(-g[0]) * pow(g[1], p - 2, p) % p]
    if p == 2:
        return [r for r in (0, 1) if sum(c * pow(r, i, p) for i, c in enumerate(g)) % p == 0]
    while True:
        a = rng.randrange(p)
        h = poly_powmod([a, 1], (p - 1) // 2, g, p)
        h = h + [0] * (1 - len(h)) if not h else h
        h = list(h)
        h[0] = (h[0] - 1) % p
        d = poly_gcd(g, h, p)
        if 0 < len(d) - 1 < deg:
            q, _ = poly_divmod(g, d, p)
            return _split_linear(d, p, rng) + _split_linear(poly_gcd(q, q, p), p, rng)


def factor_squarefree_roots(f: Sequence[int], p: int, seed: int = 0) -> tuple[list[tuple[int, int]], list[int]]:
    """Split a polynomial over GF(p) into its linear part and the rest.

    Returns ``(roots, rest)`` where ``roots`` lists ``(root, multiplicity)`` in
    increasing root order and ``rest`` is the monic cofactor with no roots in
    GF(p).  Roots are found from gcd(f, t^p - t), with t^p reduced modulo f by
    repeated squaring, then split by random equal-degree splitting.
    """
    f = _trim([c % p for c in f])
    if not f:
        raise LinearAlgebraError("zero polynomial")
    inv = pow(f[-1], p - 2, p)
    f = [c * inv % p for c in f]
    if len(f) == 1:
        return [], [1]
    tp = poly_powmod([0, 1], p, f, p)
    tp = tp + [0] * (2 - len(tp))
    tp[1] = (tp[1] - 1) % p
    g = poly_gcd(f, tp, p)
    roots = sorted(_split_linear(g, p, random.Random(seed)))
    rest = f
    out = []
    for r in roots:
        m = 0
        while True:
            q, rem = poly_divmod(rest, [(-r) % p, 1], p)
            if rem:
                break
            rest = q
            m += 1
        out.append((r, m))
    return out, rest

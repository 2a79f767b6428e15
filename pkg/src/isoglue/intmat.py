"""Exact integer and rational matrix kernel.

Everything downstream (lattices, discriminant forms, gluing) sits on top of
the routines here. All arithmetic is arbitrary-precision and exact; there is
no floating point anywhere in the package. Hermite and Smith normal forms
return the unimodular transformations and are verified against their defining
identities before being handed back.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with a*x + b*y = g >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------------------
# raw list-of-list helpers (hot paths use these directly)

def mat_identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_copy(a: Sequence[Sequence[int]]) -> list[list[int]]:
    return [list(row) for row in a]


def mat_mul(a, b):
    """Matrix product of two list-of-list matrices (int or Fraction entries)."""
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    bt = list(zip(*b))
    return [[sum(ra[t] * cb[t] for t in range(k)) for cb in bt] for ra in a]


def mat_vec(a, v):
    return [sum(r[j] * v[j] for j in range(len(v))) for r in a]


def vec_mat(v, a):
    return [sum(v[i] * a[i][j] for i in range(len(v))) for j in range(len(a[0]))]


def mat_transpose(a):
    return [list(col) for col in zip(*a)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_neg(a):
    return [[-x for x in row] for row in a]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(list(ra) == list(rb) for ra, rb in zip(a, b))


def det_bareiss(a: Sequence[Sequence[int]]) -> int:
    """Determinant by fraction-free Gaussian elimination (Bareiss)."""
    n = len(a)
    if n == 0:
        return 1
    m = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


# ---------------------------------------------------------------------------
# matrix wrapper types

@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major, arbitrary precision entries."""

    data: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable[int]]) -> "IntMatrix":
        data = tuple(tuple(int(x) for x in row) for row in rows)
        if data:
            w = len(data[0])
            if any(len(r) != w for r in data):
                raise ValueError("ragged rows")
        return IntMatrix(data)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix.from_rows(mat_identity(n))

    @staticmethod
    def zero(r: int, c: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(0 for _ in range(c)) for _ in range(r)))

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    def tolists(self) -> list[list[int]]:
        return [list(r) for r in self.data]

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix.from_rows(mat_mul(self.data, other.data))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix.from_rows(mat_add(self.data, other.data))

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return IntMatrix.from_rows(mat_sub(self.data, other.data))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix.from_rows(mat_neg(self.data))

    def transpose(self) -> "IntMatrix":
        return IntMatrix.from_rows(mat_transpose(self.data))

    def det(self) -> int:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        return det_bareiss(self.data)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.data[i][j] == self.data[j][i]
            for i in range(self.rows) for j in range(i))


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix; every entry a Fraction in lowest terms."""

    data: tuple[tuple[Fraction, ...], ...]

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "RatMatrix":
        return RatMatrix(tuple(tuple(Fraction(x) for x in row) for row in rows))

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    def tolists(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def __mul__(self, other: "RatMatrix") -> "RatMatrix":
        return RatMatrix.from_rows(mat_mul(self.data, other.data))

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows(mat_transpose(self.data))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for row in self.data for x in row)

    def to_int(self) -> IntMatrix:
        if not self.is_integral():
            raise ValueError("matrix is not integral")
        return IntMatrix.from_rows([[int(x) for x in row] for row in self.data])


# ---------------------------------------------------------------------------
# Hermite normal form

def _hnf_inplace(a: list[list[int]], u: list[list[int]]) -> int:
    """Row-style HNF on a with the same row ops mirrored on u. Returns rank."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        u[r], u[piv] = u[piv], u[r]
        for i in range(r + 1, rows):
            while a[i][c] != 0:
                if a[r][c] != 0 and a[i][c] % a[r][c] == 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [s - q * t for s, t in zip(a[i], a[r])]
                    u[i] = [s - q * t for s, t in zip(u[i], u[r])]
                    continue
                g, x, y = xgcd(a[r][c], a[i][c])
                p, q = a[r][c] // g, a[i][c] // g
                # unimodular 2x2: [x y; -q p], det = x*p + y*q = 1
                ar, ai = a[r], a[i]
                a[r] = [x * s + y * t for s, t in zip(ar, ai)]
                a[i] = [-q * s + p * t for s, t in zip(ar, ai)]
                ur, ui = u[r], u[i]
                u[r] = [x * s + y * t for s, t in zip(ur, ui)]
                u[i] = [-q * s + p * t for s, t in zip(ur, ui)]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [s - q * t for s, t in zip(a[i], a[r])]
                u[i] = [s - q * t for s, t in zip(u[i], u[r])]
        r += 1
        if r == rows:
            break
    return r


def hermite_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form.

    Returns (h, u) with u unimodular, u*m = h, pivots positive and entries
    above each pivot reduced into [0, pivot). Verified before returning.
    For square nonsingular inputs of rank > 8 the reduction runs against the
    determinant modulus to control entry swell, with the transformation
    recovered exactly afterwards.
    """
    a = m.tolists()
    rows, cols = m.rows, m.cols
    if rows == cols and rows > 8:
        d = det_bareiss(a)
        if d != 0:
            return _hnf_mod_det(m, abs(d))
    u = mat_identity(rows)
    _hnf_inplace(a, u)
    h = IntMatrix.from_rows(a)
    uu = IntMatrix.from_rows(u)
    _verify_hnf(m, h, uu)
    return h, uu


def _hnf_mod_det(m: IntMatrix, d: int) -> tuple[IntMatrix, IntMatrix]:
    """HNF of a nonsingular square matrix via the modular-determinant stack.

    Works on the stack [m; d*I], reducing unprocessed rows mod d after each
    pivot (legal: the d*e_j rows stay in the unprocessed region until their
    column is reached). The transform is recovered as h * m^{-1} and the
    result verified exactly.
    """
    n = m.rows
    a = m.tolists() + [[d if i == j else 0 for j in range(n)] for i in range(n)]
    rows = 2 * n
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            while a[i][c] != 0:
                if a[r][c] != 0 and a[i][c] % a[r][c] == 0:
                    q = a[i][c] // a[r][c]
                    a[i] = [s - q * t for s, t in zip(a[i], a[r])]
                    continue
                g, x, y = xgcd(a[r][c], a[i][c])
                p, q = a[r][c] // g, a[i][c] // g
                ar, ai = a[r], a[i]
                a[r] = [x * s + y * t for s, t in zip(ar, ai)]
                a[i] = [-q * s + p * t for s, t in zip(ar, ai)]
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r + 1, rows):
            row = a[i]
            nz = [j for j, x in enumerate(row) if x != 0]
            # never reduce an intact d*e_j stack row: it is the span witness
            # that makes reduction mod d legal in its column
            if len(nz) == 1 and row[nz[0]] == d:
                continue
            a[i] = [x % d for x in row]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [s - q * t for s, t in zip(a[i], a[r])]
        r += 1
    h = IntMatrix.from_rows(a[:n])
    minv = rat_inverse(RatMatrix.from_rows(m.data))
    u = (RatMatrix.from_rows(h.data) * minv).to_int()
    _verify_hnf(m, h, u)
    return h, u


def _verify_hnf(m: IntMatrix, h: IntMatrix, u: IntMatrix) -> None:
    if not mat_eq(mat_mul(u.data, m.data), h.data):
        raise ArithmeticError("HNF verification failed: u*m != h")
    if abs(u.det()) != 1:
        raise ArithmeticError("HNF verification failed: transform not unimodular")


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (s, u, v) with u*m*v = s, s diagonal,
    d_i | d_{i+1}, d_i >= 0, and u, v unimodular. Verified before returning."""
    a = m.tolists()
    rows, cols = m.rows, m.cols
    u = mat_identity(rows)
    v = mat_identity(cols)

    def row_op(i, j, g_entry):
        # clear a[j][t] against pivot a[i][t] via unimodular 2x2
        pass

    t = 0
    while t < min(rows, cols):
        # find a nonzero pivot in the remaining block
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        pi, pj = piv
        a[t], a[pi] = a[pi], a[t]
        u[t], u[pi] = u[pi], u[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        for row in v:
            row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t
            for i in range(t + 1, rows):
                while a[i][t] != 0:
                    if a[t][t] != 0 and a[i][t] % a[t][t] == 0:
                        q = a[i][t] // a[t][t]
                        a[i] = [s - q * w for s, w in zip(a[i], a[t])]
                        u[i] = [s - q * w for s, w in zip(u[i], u[t])]
                        continue
                    g, x, y = xgcd(a[t][t], a[i][t])
                    p, q = a[t][t] // g, a[i][t] // g
                    at, ai = a[t], a[i]
                    a[t] = [x * s + y * w for s, w in zip(at, ai)]
                    a[i] = [-q * s + p * w for s, w in zip(at, ai)]
                    ut, ui = u[t], u[i]
                    u[t] = [x * s + y * w for s, w in zip(ut, ui)]
                    u[i] = [-q * s + p * w for s, w in zip(ut, ui)]
            # clear row t
            changed = False
            for j in range(t + 1, cols):
                while a[t][j] != 0:
                    changed = True
                    if a[t][t] != 0 and a[t][j] % a[t][t] == 0:
                        q = a[t][j] // a[t][t]
                        for row in a:
                            row[j] -= q * row[t]
                        for row in v:
                            row[j] -= q * row[t]
                        continue
                    g, x, y = xgcd(a[t][t], a[t][j])
                    p, q = a[t][t] // g, a[t][j] // g
                    for row in a:
                        s, w = row[t], row[j]
                        row[t], row[j] = x * s + y * w, -q * s + p * w
                    for row in v:
                        s, w = row[t], row[j]
                        row[t], row[j] = x * s + y * w, -q * s + p * w
            if not changed and all(a[i][t] == 0 for i in range(t + 1, rows)):
                break
        t += 1

    # force positivity, push zeros to the end, then repair divisibility
    n = min(rows, cols)
    for i in range(n):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    nz = [i for i in range(n) if a[i][i] != 0]
    for target, src in enumerate(nz):
        if target != src:
            a[target], a[src] = a[src], a[target]
            u[target], u[src] = u[src], u[target]
            for row in a:
                row[target], row[src] = row[src], row[target]
            for row in v:
                row[target], row[src] = row[src], row[target]
    r = len(nz)
    for _ in range(100_000):
        i = next((i for i in range(r - 1)
                  if a[i + 1][i + 1] % a[i][i] != 0), None)
        if i is None:
            break
        _snf_fix_pair(a, u, v, i)
    else:
        raise ArithmeticError("SNF divisibility repair did not terminate")

    s = IntMatrix.from_rows(a)
    uu = IntMatrix.from_rows(u)
    vv = IntMatrix.from_rows(v)
    if not mat_eq(mat_mul(mat_mul(u, m.tolists()), v), s.data):
        raise ArithmeticError("SNF verification failed: u*m*v != s")
    if abs(uu.det()) != 1 or abs(vv.det()) != 1:
        raise ArithmeticError("SNF verification failed: transforms not unimodular")
    diag = [s.data[i][i] for i in range(min(rows, cols))]
    for i in range(len(diag) - 1):
        if diag[i] < 0 or (diag[i] != 0 and diag[i + 1] % diag[i] != 0) or (diag[i] == 0 and diag[i + 1] != 0):
            raise ArithmeticError("SNF verification failed: divisibility chain broken")
    return s, uu, vv


def _snf_fix_pair(a, u, v, i) -> None:
    """Replace the diagonal pair (d_i, d_{i+1}) by (gcd, lcm).

    Only the 2x2 block at (i, i) is nonzero during the repair, so all the
    clearing work stays confined to rows/columns i and i+1.
    """
    j = i + 1
    # column op: col_i += col_j, putting d_{i+1} below the pivot
    for row in a:
        row[i] += row[j]
    for row in v:
        row[i] += row[j]
    for _ in range(256):
        # clear column i below the pivot
        if a[j][i] != 0:
            if a[i][i] != 0 and a[j][i] % a[i][i] == 0:
                q = a[j][i] // a[i][i]
                a[j] = [s - q * w for s, w in zip(a[j], a[i])]
                u[j] = [s - q * w for s, w in zip(u[j], u[i])]
            else:
                g, x, y = xgcd(a[i][i], a[j][i])
                p, q = a[i][i] // g, a[j][i] // g
                ai, aj = a[i], a[j]
                a[i] = [x * s + y * w for s, w in zip(ai, aj)]
                a[j] = [-q * s + p * w for s, w in zip(ai, aj)]
                ui, uj = u[i], u[j]
                u[i] = [x * s + y * w for s, w in zip(ui, uj)]
                u[j] = [-q * s + p * w for s, w in zip(ui, uj)]
        # clear row i beyond the pivot
        if a[i][j] != 0:
            if a[i][i] != 0 and a[i][j] % a[i][i] == 0:
                q = a[i][j] // a[i][i]
                for row in a:
                    row[j] -= q * row[i]
                for row in v:
                    row[j] -= q * row[i]
            else:
                g, x, y = xgcd(a[i][i], a[i][j])
                p, q = a[i][i] // g, a[i][j] // g
                for row in a:
                    s, w = row[i], row[j]
                    row[i], row[j] = x * s + y * w, -q * s + p * w
                for row in v:
                    s, w = row[i], row[j]
                    row[i], row[j] = x * s + y * w, -q * s + p * w
        if a[j][i] == 0 and a[i][j] == 0:
            break
    else:
        raise ArithmeticError("2x2 SNF repair did not terminate")
    for k in (i, j):
        if a[k][k] < 0:
            a[k] = [-x for x in a[k]]
            u[k] = [-x for x in u[k]]


# ---------------------------------------------------------------------------
# solving and kernels

def solve_integer(a: IntMatrix, b: IntMatrix) -> Optional[IntMatrix]:
    """Solve a*x = b over the integers; None when no integral solution exists."""
    if a.rows != b.rows:
        raise ValueError("incompatible shapes")
    s, u, v = smith_normal_form(a)
    ub = mat_mul(u.data, b.data)
    n = a.cols
    k = b.cols
    y = [[0] * k for _ in range(n)]
    r = min(a.rows, a.cols)
    for i in range(a.rows):
        for j in range(k):
            d = s.data[i][i] if i < r else 0
            if d == 0:
                if ub[i][j] != 0:
                    return None
            else:
                if ub[i][j] % d != 0:
                    return None
                if i < n:
                    y[i][j] = ub[i][j] // d
    x = IntMatrix.from_rows(mat_mul(v.data, y))
    if not mat_eq(mat_mul(a.data, x.data), b.data):
        raise ArithmeticError("solve_integer produced a wrong solution")
    return x


def left_kernel_basis(a: IntMatrix) -> IntMatrix:
    """Rows span {x : x*a = 0}; the result is a saturated (primitive) basis."""
    h, u = hermite_normal_form(a)
    rows = []
    for i in range(a.rows):
        if all(x == 0 for x in h.data[i]):
            rows.append(list(u.data[i]))
    return IntMatrix.from_rows(rows) if rows else IntMatrix.zero(0, a.rows)


def right_kernel_basis(a: IntMatrix) -> IntMatrix:
    """Rows v with a*v^T = 0, saturated."""
    return left_kernel_basis(a.transpose())


def saturation_rows(a: IntMatrix) -> IntMatrix:
    """Basis (rows) of the saturation of the row space of a inside Z^cols."""
    s, u, v = smith_normal_form(a)
    r = sum(1 for i in range(min(a.rows, a.cols)) if s.data[i][i] != 0)
    vinv = rat_inverse(RatMatrix.from_rows(v.data)).to_int()
    return IntMatrix.from_rows([list(vinv.data[i]) for i in range(r)])


def row_span_index(sub: IntMatrix, sup: IntMatrix) -> Optional[int]:
    """Index [sup : sub] of row spans when sub <= sup with finite index, else None."""
    # solve x*sup = sub over Z row by row
    sol = solve_integer(sup.transpose(), sub.transpose())
    if sol is None:
        return None
    m = sol.transpose()
    if m.rows != m.cols:
        return None
    d = m.det()
    return abs(d) if d != 0 else None


# ---------------------------------------------------------------------------
# rational linear algebra

def rat_solve(a: RatMatrix, b: RatMatrix) -> Optional[RatMatrix]:
    """Solve a*x = b over Q (a square nonsingular); None when singular."""
    n = a.rows
    m = [list(row) + list(brow) for row, brow in zip(a.tolists(), b.tolists())]
    cols = b.cols
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        inv = Fraction(1) / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return RatMatrix.from_rows([row[n:n + cols] for row in m])


def rat_inverse(a: RatMatrix) -> RatMatrix:
    n = a.rows
    ident = RatMatrix.from_rows(mat_identity(n))
    inv = rat_solve(a, ident)
    if inv is None:
        raise ZeroDivisionError("matrix is singular")
    return inv


def rat_rank(a) -> int:
    """Rank of a list-of-list matrix with Fraction/int entries."""
    m = [[Fraction(x) for x in row] for row in a]
    rows = len(m)
    cols = len(m[0]) if rows else 0
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


def symmetric_signature(gram) -> tuple[int, int, int]:
    """Exact (n_+, n_-, n_0) of a symmetric rational matrix.

    Iterated symmetric pivoting; a hyperbolic 2x2 block (zero diagonal,
    nonzero pairing) contributes (1, 1).
    """
    m = [[Fraction(x) for x in row] for row in gram]
    n = len(m)
    pos = neg = zero = 0
    idx = list(range(n))
    while idx:
        # prefer a nonzero diagonal pivot
        piv = next((i for i in idx if m[i][i] != 0), None)
        if piv is not None:
            d = m[piv][piv]
            if d > 0:
                pos += 1
            else:
                neg += 1
            idx.remove(piv)
            # rank-1 update is symmetric on the remaining block by itself
            for i in idx:
                if m[i][piv] != 0:
                    f = m[i][piv] / d
                    for j in idx:
                        m[i][j] -= f * m[piv][j]
            continue
        # all remaining diagonals are zero: look for a hyperbolic pair
        pair = None
        for ii, i in enumerate(idx):
            for j in idx[ii + 1:]:
                if m[i][j] != 0:
                    pair = (i, j)
                    break
            if pair:
                break
        if pair is None:
            zero += len(idx)
            break
        i, j = pair
        pos += 1
        neg += 1
        b = m[i][j]
        idx.remove(i)
        idx.remove(j)
        for k in idx:
            # split off span(e_i, e_j): x -> x - (x,e_j)/b * e_i - (x,e_i)/b * e_j
            ci = m[k][j] / b
            cj = m[k][i] / b
            if ci or cj:
                for l in idx:
                    m[k][l] -= ci * m[i][l] + cj * m[j][l]
    return pos, neg, zero


# ---------------------------------------------------------------------------
# characteristic / minimal polynomial (Krylov over Q)

def minimal_polynomial(a: Sequence[Sequence[int]]) -> list[Fraction]:
    """Minimal polynomial of an integer matrix, coefficients low-to-high, monic."""
    n = len(a)
    if n == 0:
        return [Fraction(1)]
    poly = [Fraction(1)]  # lcm accumulator, start with 1 (poly "1" means empty)
    current: list[Fraction] = [Fraction(1)]
    for start in range(n):
        e = [Fraction(1) if i == start else Fraction(0) for i in range(n)]
        # Krylov sequence until linear dependence
        seq = [e]
        while True:
            nxt = [sum(Fraction(a[i][j]) * seq[-1][j] for j in range(n)) for i in range(n)]
            seq.append(nxt)
            dep = _linear_dependence(seq)
            if dep is not None:
                local = dep
                break
        current = _poly_lcm(current, local)
        if len(current) == n + 1:
            break
    return current


def _linear_dependence(vectors) -> Optional[list[Fraction]]:
    """If the last vector depends on the previous ones, return the monic
    polynomial coefficients (low-to-high) expressing the dependence."""
    k = len(vectors) - 1
    n = len(vectors[0])
    m = [[vectors[j][i] for j in range(k)] for i in range(n)]
    rhs = [[vectors[k][i]] for i in range(n)]
    # least-squares-free exact solve of possibly non-square system
    aug = [row + r for row, r in zip(m, rhs)]
    rows, cols = n, k
    r = 0
    pivots = []
    for c in range(cols):
        piv = next((i for i in range(r, rows) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = Fraction(1) / aug[r][c]
        aug[r] = [x * inv for x in aug[r]]
        for i in range(rows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, rows):
        if aug[i][cols] != 0:
            return None  # inconsistent: last vector independent
    coeffs = [Fraction(0)] * k
    for row_i, c in enumerate(pivots):
        coeffs[c] = aug[row_i][cols]
    # dependence: v_k = sum coeffs[c] v_c  =>  x^k - sum coeffs[c] x^c = 0
    poly = [-x for x in coeffs] + [Fraction(1)]
    return poly


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(x != 0 for x in a):
        if a[-1] == 0:
            a.pop()
            continue
        d = len(a) - len(b)
        f = a[-1] / b[-1]
        q[d] = f
        for i, x in enumerate(b):
            a[d + i] -= f * x
        a.pop()
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return q, a


def _poly_gcd(a, b):
    a, b = list(a), list(b)
    while any(x != 0 for x in b):
        _, r = _poly_divmod(a, b)
        a, b = b, r
        if len(b) == 1 and b[0] == 0:
            break
    lead = a[-1]
    return [x / lead for x in a]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_lcm(a, b):
    if len(a) == 1:
        return list(b)
    if len(b) == 1:
        return list(a)
    g = _poly_gcd(a, b)
    q, r = _poly_divmod(_poly_mul(a, b), g)
    assert all(x == 0 for x in r)
    lead = q[-1]
    return [x / lead for x in q]


def matrix_order(a: Sequence[Sequence[int]], limit: int = 10_000) -> int:
    """Multiplicative order of an integer matrix; raises if it exceeds limit."""
    n = len(a)
    ident = mat_identity(n)
    p = mat_copy(a)
    k = 1
    while not mat_eq(p, ident):
        p = mat_mul(p, a)
        k += 1
        if k > limit:
            raise ArithmeticError("matrix order exceeds limit")
    return k

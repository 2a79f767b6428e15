"""Non-degenerate integral Z-lattices.

Vectors are integer row tuples in the lattice's own basis; the pairing is
(u, v) = u * G * v^T, and an isometry matrix m acts on the right, v -> v * m
(so m * G * m^T = G). Sublattices carry their coordinates in the ambient
basis: all gluing happens in a fixed ambient rational quadratic space.

All ADE lattices are negative definite by the package-wide sign convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, prod
from typing import Iterable, Optional, Sequence

from .intmat import (
    IntMatrix,
    RatMatrix,
    det_bareiss,
    hermite_normal_form,
    mat_identity,
    mat_mul,
    mat_transpose,
    rat_inverse,
    right_kernel_basis,
    saturation_rows,
    smith_normal_form,
    symmetric_signature,
)
from .torsion import QuadMorphism, TorsionQuadModule


class OddLattice(ValueError):
    """Raised when an odd lattice is passed where an even one is required."""


class DegenerateInput(ValueError):
    """Raised for degenerate sublattices where a nondegenerate one is required."""


class ZeroVector(ValueError):
    pass


@dataclass(frozen=True)
class Lattice:
    """Integral lattice given by its Gram matrix; immutable."""

    gram: tuple[tuple[int, ...], ...]
    name: Optional[str] = None

    @staticmethod
    def from_gram(rows: Iterable[Iterable[int]], name: Optional[str] = None) -> "Lattice":
        g = tuple(tuple(int(x) for x in row) for row in rows)
        n = len(g)
        if any(len(r) != n for r in g):
            raise ValueError("Gram matrix must be square")
        for i in range(n):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise ValueError("Gram matrix must be symmetric")
        if n and det_bareiss([list(r) for r in g]) == 0:
            raise DegenerateInput("Gram matrix is singular")
        return Lattice(g, name)

    # -- cached invariants ---------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def det(self) -> int:
        return _lattice_det(self.gram)

    @property
    def signature(self) -> tuple[int, int]:
        return _lattice_signature(self.gram)

    @property
    def is_even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @property
    def is_definite(self) -> bool:
        p, m = self.signature
        return p == 0 or m == 0

    @property
    def is_negative_definite(self) -> bool:
        return self.signature[0] == 0 and self.rank > 0

    # -- pairing -------------------------------------------------------------

    def inner(self, u: Sequence[int], v: Sequence[int]) -> int:
        g = self.gram
        n = self.rank
        return sum(u[i] * g[i][j] * v[j] for i in range(n) for j in range(n) if u[i])

    def norm(self, v: Sequence[int]) -> int:
        return self.inner(v, v)

    def gram_lists(self) -> list[list[int]]:
        return [list(r) for r in self.gram]

    def is_isometry(self, m: Sequence[Sequence[int]]) -> bool:
        mg = mat_mul(m, self.gram_lists())
        mgmt = mat_mul(mg, mat_transpose(m))
        return mgmt == self.gram_lists()

    # -- constructions -------------------------------------------------------

    def rescale(self, a: int) -> "Lattice":
        if a == 0:
            raise ValueError("rescaling by zero")
        nm = None
        if self.name:
            nm = f"{self.name}({a})"
        return Lattice(tuple(tuple(a * x for x in row) for row in self.gram), nm)

    def direct_sum(self, *others: "Lattice") -> "Lattice":
        return direct_sum([self, *others])

    def dual_basis(self) -> RatMatrix:
        """Rows are the dual basis vectors expressed in lattice coordinates."""
        return rat_inverse(RatMatrix.from_rows(self.gram))

    def discriminant(self) -> "DiscriminantData":
        return discriminant_data(self)

    def divisibility(self, v: Sequence[int]) -> int:
        """gcd of the pairings of v against the whole lattice."""
        if not any(v):
            raise ZeroVector("divisibility of the zero vector")
        pairings = [self.inner(v, e) for e in _unit_rows(self.rank)]
        out = 0
        for x in pairings:
            out = gcd(out, x)
        return out

    def sublattice(self, rows: Iterable[Sequence[int]]) -> "Sublattice":
        return Sublattice.from_rows(self, rows)

    def full_sublattice(self) -> "Sublattice":
        return self.sublattice(mat_identity(self.rank))

    def to_json(self) -> dict:
        out = {"gram": self.gram_lists()}
        if self.name:
            out["name"] = self.name
        return out

    def __repr__(self) -> str:
        nm = self.name or "lattice"
        s = self.signature
        return f"<{nm}: rank {self.rank}, sig ({s[0]},{s[1]}), det {self.det}>"


@lru_cache(maxsize=4096)
def _lattice_det(gram) -> int:
    return det_bareiss([list(r) for r in gram])


@lru_cache(maxsize=4096)
def _lattice_signature(gram) -> tuple[int, int]:
    p, m, z = symmetric_signature([list(r) for r in gram])
    if z:
        raise DegenerateInput("degenerate form has no signature")
    return p, m


def _unit_rows(n: int) -> list[list[int]]:
    return mat_identity(n)


def direct_sum(parts: Sequence[Lattice]) -> Lattice:
    total = sum(l.rank for l in parts)
    rows = [[0] * total for _ in range(total)]
    off = 0
    for l in parts:
        for i in range(l.rank):
            for j in range(l.rank):
                rows[off + i][off + j] = l.gram[i][j]
        off += l.rank
    if total == 0:
        return Lattice((), "0")
    name = "+".join(l.name or "?" for l in parts) if parts else "0"
    return Lattice(tuple(tuple(r) for r in rows), name)


# ---------------------------------------------------------------------------
# sublattices

@dataclass(frozen=True)
class Sublattice:
    """Sublattice given by generator rows in ambient coordinates."""

    ambient: Lattice
    rows: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_rows(ambient: Lattice, rows: Iterable[Sequence[int]]) -> "Sublattice":
        rs = tuple(tuple(int(x) for x in r) for r in rows)
        for r in rs:
            if len(r) != ambient.rank:
                raise ValueError("generator has wrong length")
        return Sublattice(ambient, rs)

    @property
    def rank(self) -> int:
        if not self.rows:
            return 0
        m = IntMatrix.from_rows(self.rows)
        s, _, _ = smith_normal_form(m)
        return sum(1 for i in range(min(m.rows, m.cols)) if s.data[i][i] != 0)

    def basis(self) -> "Sublattice":
        """Reduce the generators to an actual basis (HNF rows, zero rows cut)."""
        if not self.rows:
            return self
        h, _ = hermite_normal_form(IntMatrix.from_rows(self.rows))
        rows = tuple(tuple(r) for r in h.data if any(r))
        return Sublattice(self.ambient, rows)

    def gram(self) -> list[list[int]]:
        g = self.ambient.gram_lists()
        rows = [list(r) for r in self.rows]
        return mat_mul(mat_mul(rows, g), mat_transpose(rows))

    def as_lattice(self, name: Optional[str] = None) -> Lattice:
        b = self.basis()
        return Lattice.from_gram(b.gram(), name)

    def saturation(self) -> "Sublattice":
        if not self.rows:
            return self
        sat = saturation_rows(IntMatrix.from_rows(self.rows))
        return Sublattice(self.ambient, tuple(tuple(r) for r in sat.data))

    def is_primitive(self) -> bool:
        """Primitive iff the generators' elementary divisors are all 1."""
        if not self.rows:
            return True
        b = self.basis()
        s, _, _ = smith_normal_form(IntMatrix.from_rows(b.rows))
        n = min(len(b.rows), self.ambient.rank)
        return all(s.data[i][i] == 1 for i in range(n))

    def is_nondegenerate(self) -> bool:
        g = self.basis().gram()
        return len(g) == 0 or det_bareiss(g) != 0

    def orthogonal_complement(self) -> "Sublattice":
        """Primitive sublattice of everything pairing to zero with this one."""
        if not self.is_nondegenerate():
            raise DegenerateInput("orthogonal complement of a degenerate sublattice")
        if not self.rows:
            return self.ambient.full_sublattice()
        pairing = mat_mul([list(r) for r in self.rows], self.ambient.gram_lists())
        ker = right_kernel_basis(IntMatrix.from_rows(pairing))
        return Sublattice(self.ambient, tuple(tuple(r) for r in ker.data))

    def contains(self, v: Sequence[int]) -> bool:
        from .intmat import solve_integer
        if not self.rows:
            return not any(v)
        m = IntMatrix.from_rows(self.rows).transpose()
        return solve_integer(m, IntMatrix.from_rows([[x] for x in v])) is not None


# ---------------------------------------------------------------------------
# discriminant module with lattice bookkeeping

@dataclass(frozen=True)
class DiscriminantData:
    """D_L = L^dual / L with generator lifts and a coordinate projection."""

    lattice: Lattice
    module: TorsionQuadModule
    lifts: tuple[tuple[Fraction, ...], ...]
    _proj_rows: tuple[tuple[int, ...], ...]

    def coords(self, dual_row: Sequence[Fraction]) -> tuple[int, ...]:
        """Class of an element of the dual lattice (row in L-coordinates)."""
        g = self.lattice.gram
        n = self.lattice.rank
        wg = [sum(Fraction(dual_row[i]) * g[i][j] for i in range(n)) for j in range(n)]
        if any(x.denominator != 1 for x in wg):
            raise ValueError("vector is not in the dual lattice")
        wg = [int(x) for x in wg]
        return tuple(sum(row[j] * wg[j] for j in range(n)) % d
                     for row, d in zip(self._proj_rows, self.module.orders))

    def lift(self, element: Sequence[int]) -> tuple[Fraction, ...]:
        n = self.lattice.rank
        out = [Fraction(0)] * n
        for a, lift in zip(element, self.lifts):
            if a:
                for j in range(n):
                    out[j] += a * lift[j]
        return tuple(out)

    def isometry_action(self, m: Sequence[Sequence[int]]) -> QuadMorphism:
        """Induced isometry of the discriminant module (right action v*m)."""
        images = []
        for lift in self.lifts:
            moved = [sum(lift[i] * m[i][j] for i in range(self.lattice.rank))
                     for j in range(self.lattice.rank)]
            images.append(self.coords(moved))
        return QuadMorphism(self.module, self.module, tuple(images), "isometry")


def discriminant_data(l: Lattice) -> DiscriminantData:
    """The finite quadratic module L^dual/L; requires an even lattice."""
    if not l.is_even:
        raise OddLattice("discriminant form needs an even lattice")
    n = l.rank
    if n == 0:
        return DiscriminantData(l, TorsionQuadModule.trivial(), (), ())
    g = IntMatrix.from_rows(l.gram)
    s, u, v = smith_normal_form(g)
    # L^dual/L ≅ Z^n / G Z^n via w -> w*G; then y = U x diagonalizes
    uinv = rat_inverse(RatMatrix.from_rows(u.data))
    ginv = rat_inverse(RatMatrix.from_rows(l.gram))
    lift_mat = uinv.transpose() * ginv  # row i: generator-i lift in L-coords
    keep = [i for i in range(n) if s.data[i][i] > 1]
    orders = tuple(s.data[i][i] for i in keep)
    lifts = tuple(tuple(lift_mat.data[i]) for i in keep)
    proj_rows = tuple(tuple(u.data[i]) for i in keep)
    qdiag = []
    bm = []
    for i, li in enumerate(lifts):
        qval = sum(li[a] * l.gram[a][b] * li[b] for a in range(n) for b in range(n))
        qdiag.append(qval)
        row = []
        for lj in lifts:
            row.append(sum(li[a] * l.gram[a][b] * lj[b]
                           for a in range(n) for b in range(n)))
        bm.append(row)
    from .torsion import _mod1, _mod2
    module = TorsionQuadModule(
        orders,
        tuple(_mod2(Fraction(x)) for x in qdiag),
        tuple(tuple(_mod1(Fraction(x)) for x in row) for row in bm))
    if module.order() != abs(l.det):
        raise ArithmeticError("discriminant module order mismatch")
    return DiscriminantData(l, module, lifts, proj_rows)


# ---------------------------------------------------------------------------
# named lattices

def _cartan_A(n: int) -> list[list[int]]:
    g = [[0] * n for _ in range(n)]
    for i in range(n):
        g[i][i] = 2
        if i + 1 < n:
            g[i][i + 1] = g[i + 1][i] = -1
    return g


def _cartan_D(n: int) -> list[list[int]]:
    g = _cartan_A(n)
    if n >= 3:
        g[n - 1][n - 2] = g[n - 2][n - 1] = 0
        g[n - 1][n - 3] = g[n - 3][n - 1] = -1
    return g


def _cartan_E(n: int) -> list[list[int]]:
    # chain 0-1-2-3-4(-5)(-6) with the extra node attached to position 2
    g = _cartan_A(n - 1)
    g = [row + [0] for row in g] + [[0] * n]
    g[n - 1][n - 1] = 2
    g[n - 1][2] = g[2][n - 1] = -1
    return g


def _negate(g):
    return [[-x for x in row] for row in g]


_GOLAY_CIRC = {0, 1, 3, 4, 5, 9}  # quadratic residues mod 11, plus 0


def _golay_basis() -> list[list[int]]:
    """Generator rows of the extended binary Golay code [24,12,8]."""
    b = [[0] * 12 for _ in range(12)]
    for j in range(1, 12):
        b[0][j] = 1
        b[j][0] = 1
    for i in range(1, 12):
        for j in range(1, 12):
            b[i][j] = 1 if ((j - i) % 11 in _GOLAY_CIRC) else 0
    return [[1 if k == i else 0 for k in range(12)] + b[i] for i in range(12)]


def _check_golay(rows) -> None:
    # self-dual and doubly even is enough to pin the extended Golay code
    for r in rows:
        if sum(r) % 4 != 0:
            raise ArithmeticError("Golay basis row weight not 0 mod 4")
    for i in range(12):
        for j in range(12):
            if sum(a * b for a, b in zip(rows[i], rows[j])) % 2 != 0:
                raise ArithmeticError("Golay basis not self-orthogonal")
    # minimum weight 8 over the whole code
    for mask in range(1, 1 << 12):
        w = [0] * 24
        mm = mask
        idx = 0
        while mm:
            if mm & 1:
                w = [a ^ b for a, b in zip(w, rows[idx])]
            mm >>= 1
            idx += 1
        wt = sum(w)
        if 0 < wt < 8:
            raise ArithmeticError("Golay minimum weight violated")


_golay_checked = False


def _leech_gram() -> list[list[int]]:
    """Gram of the (positive) Leech lattice from the mod-8 construction."""
    global _golay_checked
    rows = _golay_basis()
    if not _golay_checked:
        _check_golay(rows)
        _golay_checked = True
    gens = []
    for r in rows:
        gens.append([2 * x for x in r])
    for i in range(1, 24):
        gens.append([4 if k in (0, i) else 0 for k in range(24)])
    gens.append([-3] + [1] * 23)
    h, _ = hermite_normal_form(IntMatrix.from_rows(gens))
    basis = [list(r) for r in h.data if any(r)]
    if len(basis) != 24:
        raise ArithmeticError("Leech generators do not span rank 24")
    gram8 = mat_mul(basis, mat_transpose(basis))
    if any(x % 8 for row in gram8 for x in row):
        raise ArithmeticError("Leech Gram not divisible by 8")
    gram = [[x // 8 for x in row] for row in gram8]
    if det_bareiss(gram) != 1:
        raise ArithmeticError("Leech construction is not unimodular")
    if any(gram[i][i] % 2 for i in range(24)):
        raise ArithmeticError("Leech construction is not even")
    return gram


_NAME_CACHE: dict[str, Lattice] = {}


def named_lattice(name: str) -> Lattice:
    """Fixed canonical Grams for the named lattices; ADE negative definite."""
    key = name.strip()
    if key in _NAME_CACHE:
        return _NAME_CACHE[key]
    lat = _build_named(key)
    _NAME_CACHE[key] = lat
    return lat


def _build_named(key: str) -> Lattice:
    if key == "U":
        return Lattice(((0, 1), (1, 0)), "U")
    if key.startswith("U(") and key.endswith(")"):
        k = int(key[2:-1])
        return Lattice(((0, k), (k, 0)), key)
    if key.startswith("<") and key.endswith(">"):
        return Lattice(((int(key[1:-1]),),), key)
    if key.startswith("A") and key[1:].isdigit():
        return Lattice.from_gram(_negate(_cartan_A(int(key[1:]))), key)
    if key.startswith("D") and key[1:].isdigit():
        n = int(key[1:])
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        return Lattice.from_gram(_negate(_cartan_D(n)), key)
    if key in ("E6", "E7", "E8"):
        return Lattice.from_gram(_negate(_cartan_E(int(key[1]))), key)
    if key == "Leech":
        return Lattice.from_gram(_negate(_leech_gram()), "Leech")
    if key == "OG10":
        parts = [named_lattice("A2"), named_lattice("E8"), named_lattice("E8"),
                 named_lattice("U"), named_lattice("U"), named_lattice("U")]
        return Lattice(direct_sum(parts).gram, "OG10")
    if key == "Borcherds":
        parts = [named_lattice("E8")] * 3 + [named_lattice("U")] * 2
        return Lattice(direct_sum(parts).gram, "Borcherds")
    if key == "Pi":
        parts = [named_lattice("E8")] * 3 + [named_lattice("U")] * 3
        return Lattice(direct_sum(parts).gram, "Pi")
    raise KeyError(f"unknown lattice name: {key!r}")


def lattice_from_json(obj: dict) -> Lattice:
    if "gram" in obj:
        return Lattice.from_gram(obj["gram"], obj.get("name"))
    if "name" in obj:
        return named_lattice(obj["name"])
    raise ValueError("lattice JSON needs 'gram' or 'name'")

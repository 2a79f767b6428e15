"""Finite quadratic modules (discriminant forms) and their maps.

A module is presented on a fixed generator system in invariant-factor form:
orders d_1 | d_2 | ... | d_k (all > 1), a quadratic value q(g_i) in Q/2Z and
pairings b(g_i, g_j) in Q/Z. Elements are integer tuples modulo the orders.
Keeping the presentation canonical makes morphism matrices and submodule keys
reproducible, which the double-coset enumeration downstream relies on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .intmat import (
    IntMatrix,
    RatMatrix,
    hermite_normal_form,
    rat_inverse,
    right_kernel_basis,
    smith_normal_form,
    solve_integer,
)


def _mod2(x: Fraction) -> Fraction:
    return x - 2 * (x / 2).__floor__()


def _mod1(x: Fraction) -> Fraction:
    return x - x.__floor__()


class BudgetExceeded(RuntimeError):
    """Raised when a module computation exceeds its element-operation budget."""


@dataclass(frozen=True)
class TorsionQuadModule:
    """Finite quadratic module with Q/2Z-valued form on canonical generators."""

    orders: tuple[int, ...]
    qdiag: tuple[Fraction, ...]
    bmat: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        for i in range(len(self.orders) - 1):
            if self.orders[i + 1] % self.orders[i] != 0:
                raise ValueError("orders must form a divisibility chain")
        if any(d < 2 for d in self.orders):
            raise ValueError("trivial generators must be dropped")

    # -- construction ------------------------------------------------------

    @staticmethod
    def trivial() -> "TorsionQuadModule":
        return TorsionQuadModule((), (), ())

    @staticmethod
    def cyclic(n: int, qgen) -> "TorsionQuadModule":
        q = _mod2(Fraction(qgen))
        return TorsionQuadModule((n,), (q,), ((_mod1(q / 2),),))

    # -- basic structure ----------------------------------------------------

    @property
    def ngens(self) -> int:
        return len(self.orders)

    def order(self) -> int:
        return prod(self.orders) if self.orders else 1

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.ngens

    def normalize(self, x: Sequence[int]) -> tuple[int, ...]:
        return tuple(int(a) % d for a, d in zip(x, self.orders))

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))

    def neg(self, x) -> tuple[int, ...]:
        return tuple((-a) % d for a, d in zip(x, self.orders))

    def smul(self, n: int, x) -> tuple[int, ...]:
        return tuple((n * a) % d for a, d in zip(x, self.orders))

    def elements(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(d) for d in self.orders))

    def element_order(self, x) -> int:
        n = 1
        for a, d in zip(x, self.orders):
            if a:
                m = d // gcd(a, d)
                n = n * m // gcd(n, m)
        return n

    def q(self, x) -> Fraction:
        total = Fraction(0)
        k = self.ngens
        for i in range(k):
            if x[i]:
                total += x[i] * x[i] * self.qdiag[i]
                for j in range(i + 1, k):
                    if x[j]:
                        total += 2 * x[i] * x[j] * self.bmat[i][j]
        return _mod2(total)

    def b(self, x, y) -> Fraction:
        total = Fraction(0)
        k = self.ngens
        for i in range(k):
            if x[i]:
                for j in range(k):
                    if y[j]:
                        total += x[i] * y[j] * self.bmat[i][j]
        return _mod1(total)

    def twist(self) -> "TorsionQuadModule":
        """The same group with negated form (D(-1) in genus bookkeeping)."""
        return TorsionQuadModule(
            self.orders,
            tuple(_mod2(-x) for x in self.qdiag),
            tuple(tuple(_mod1(-x) for x in row) for row in self.bmat))

    def direct_sum(self, other: "TorsionQuadModule") -> "TorsionQuadModule":
        k1, k2 = self.ngens, other.ngens
        orders = list(self.orders) + list(other.orders)
        qdiag = list(self.qdiag) + list(other.qdiag)
        b = [[Fraction(0)] * (k1 + k2) for _ in range(k1 + k2)]
        for i in range(k1):
            for j in range(k1):
                b[i][j] = self.bmat[i][j]
        for i in range(k2):
            for j in range(k2):
                b[k1 + i][k1 + j] = other.bmat[i][j]
        return make_module(orders, qdiag, b)

    def fingerprint(self) -> tuple:
        """Isomorphism-invariant statistics: histogram of (element order, q)."""
        hist: dict[tuple[int, Fraction], int] = {}
        for x in self.elements():
            key = (self.element_order(x), self.q(x))
            hist[key] = hist.get(key, 0) + 1
        return tuple(sorted((o, str(qv), c) for (o, qv), c in hist.items()))

    def is_degenerate(self) -> bool:
        """True when some nonzero element pairs trivially with everything."""
        return self.orthogonal_of(self.full_submodule()).size() > 1

    def dump(self) -> dict:
        return {
            "orders": list(self.orders),
            "q": [[str(self.qdiag[i]) if i == j else str(self.bmat[i][j])
                   for j in range(self.ngens)] for i in range(self.ngens)],
        }

    # -- submodules ----------------------------------------------------------

    def full_submodule(self) -> "Submodule":
        return Submodule.from_generators(self, self.units())

    def zero_submodule(self) -> "Submodule":
        return Submodule.from_generators(self, ())

    def orthogonal_of(self, h: "Submodule") -> "Submodule":
        """All x with b(x, h) = 0, via an exact integer kernel computation."""
        if self.ngens == 0:
            return self.zero_submodule()
        gens = h.gens
        if not gens:
            return self.full_submodule()
        k = self.ngens
        units = self.units()
        bvals = [[self.b(units[j], g) for g in gens] for j in range(k)]
        den = 1
        for row in bvals:
            for val in row:
                den = den * val.denominator // gcd(den, val.denominator)
        ncols = len(gens)
        stack = []
        for j in range(k):
            stack.append([int(v * den) for v in bvals[j]] +
                         [1 if t == j else 0 for t in range(k)])
        for t in range(ncols):
            stack.append([den if c == t else 0 for c in range(ncols)] + [0] * k)
        hh, _ = hermite_normal_form(IntMatrix.from_rows(stack))
        sols = []
        for i in range(hh.rows):
            if all(hh.data[i][c] == 0 for c in range(ncols)):
                sols.append(self.normalize(hh.data[i][ncols:]))
        return Submodule.from_generators(self, tuple(sols))

    def _unit(self, j: int) -> tuple[int, ...]:
        return tuple(1 if i == j else 0 for i in range(self.ngens))

    def units(self) -> list[tuple[int, ...]]:
        return [self._unit(j) for j in range(self.ngens)]


def make_module(orders: Sequence[int], qdiag: Sequence, bmat: Sequence[Sequence]
                ) -> TorsionQuadModule:
    """Build a module from a raw presentation, renormalizing to invariant
    factors via SNF when the given orders do not form a chain."""
    orders = [int(d) for d in orders]
    qdiag = [_mod2(Fraction(x)) for x in qdiag]
    bmat = [[_mod1(Fraction(x)) for x in row] for row in bmat]
    k = len(orders)
    if any(d < 1 for d in orders):
        raise ValueError("orders must be positive")
    keep = [i for i in range(k) if orders[i] > 1]
    orders = [orders[i] for i in keep]
    qdiag = [qdiag[i] for i in keep]
    bmat = [[bmat[i][j] for j in keep] for i in keep]
    k = len(orders)
    chain_ok = all(orders[i + 1] % orders[i] == 0 for i in range(k - 1))
    if chain_ok:
        return TorsionQuadModule(tuple(orders), tuple(qdiag),
                                 tuple(tuple(r) for r in bmat))

    def q_of(x):
        total = Fraction(0)
        for i in range(k):
            if x[i]:
                total += x[i] * x[i] * qdiag[i]
                for j in range(i + 1, k):
                    if x[j]:
                        total += 2 * x[i] * x[j] * bmat[i][j]
        return _mod2(total)

    def b_of(x, y):
        total = Fraction(0)
        for i in range(k):
            if x[i]:
                for j in range(k):
                    if y[j]:
                        total += x[i] * y[j] * bmat[i][j]
        return _mod1(total)

    rel = IntMatrix.from_rows([[orders[i] if i == j else 0 for j in range(k)]
                               for i in range(k)])
    s, u, v = smith_normal_form(rel)
    # relation rows span rel = u^{-1} s v^{-1}; in coordinates z = x v the
    # relations are diagonal, so generator t is the class of v^{-1} row t
    vinv = rat_inverse(RatMatrix.from_rows(v.data)).to_int()
    new_orders = []
    newgens = []
    for t in range(k):
        d = s.data[t][t]
        if d <= 1:
            continue
        new_orders.append(d)
        newgens.append(tuple(vinv.data[t][i] % orders[i] for i in range(k)))
    q2 = [q_of(g) for g in newgens]
    b2 = [[b_of(g1, g2_) for g2_ in newgens] for g1 in newgens]
    return TorsionQuadModule(tuple(new_orders), tuple(q2),
                             tuple(tuple(r) for r in b2))


# ---------------------------------------------------------------------------
# submodules

@dataclass(frozen=True)
class Submodule:
    """Subgroup of a TorsionQuadModule with a canonical HNF key."""

    parent: TorsionQuadModule
    gens: tuple[tuple[int, ...], ...]
    key: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_generators(parent: TorsionQuadModule,
                        gens: Iterable[Sequence[int]]) -> "Submodule":
        k = parent.ngens
        rows = [list(parent.normalize(g)) for g in gens]
        rows = [r for r in rows if any(r)]
        if k == 0:
            return Submodule(parent, (), ())
        stack = rows + [[parent.orders[i] if j == i else 0 for j in range(k)]
                        for i in range(k)]
        h, _ = hermite_normal_form(IntMatrix.from_rows(stack))
        key = tuple(tuple(h.data[i]) for i in range(k))
        return Submodule(parent, tuple(parent.normalize(r) for r in rows), key)

    def size(self) -> int:
        if not self.key:
            return 1
        det = prod(self.key[i][i] for i in range(len(self.key)))
        return self.parent.order() // det

    def contains(self, x: Sequence[int]) -> bool:
        if not self.key:
            return not any(self.parent.normalize(x))
        key_m = IntMatrix.from_rows([list(r) for r in self.key])
        target = IntMatrix.from_rows([[a] for a in self.parent.normalize(x)])
        return solve_integer(key_m.transpose(), target) is not None

    def __le__(self, other: "Submodule") -> bool:
        return all(other.contains(g) for g in self.gens)

    def elements(self) -> list[tuple[int, ...]]:
        out = {self.parent.zero()}
        frontier = [self.parent.zero()]
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.gens:
                    y = self.parent.add(x, g)
                    if y not in out:
                        out.add(y)
                        nxt.append(y)
            frontier = nxt
        return sorted(out)

    def is_isotropic(self) -> bool:
        for x in self.elements():
            if self.parent.q(x) != 0:
                return False
        return True

    def as_module(self) -> tuple[TorsionQuadModule, tuple[tuple[int, ...], ...]]:
        """Standalone module isomorphic to this subgroup, plus generator lifts.

        The subgroup is presented on its own invariant factors; lifts[i] is
        the parent element realizing the i-th new generator.
        """
        if self.size() == 1:
            return TorsionQuadModule.trivial(), ()
        parent = self.parent
        k = parent.ngens
        basis = [list(r) for r in self.key]
        nb = len(basis)
        # relation lattice: all integer x with sum x_i basis_i = 0 in parent
        aug = IntMatrix.from_rows(
            [[basis[i][j] for i in range(nb)] +
             [parent.orders[j] if t == j else 0 for t in range(k)]
             for j in range(k)])
        ker = right_kernel_basis(aug)
        rel = IntMatrix.from_rows([list(r[:nb]) for r in ker.data])
        s, u, v = smith_normal_form(rel)
        # relation rows rel; in coordinates z = x v they are diagonal, so the
        # t-th new generator is sum_i v^{-1}[t][i] basis_i
        vinv = rat_inverse(RatMatrix.from_rows(v.data)).to_int()
        orders = []
        lifts = []
        for t in range(nb):
            d = s.data[t][t] if t < min(s.rows, s.cols) else 0
            if d == 1:
                continue
            if d == 0:
                raise ArithmeticError("subgroup presentation is not finite")
            orders.append(d)
            elem = parent.zero()
            for i in range(nb):
                c = vinv.data[t][i]
                if c:
                    elem = parent.add(elem, parent.smul(c, basis[i]))
            lifts.append(elem)
        qdiag = tuple(parent.q(g) for g in lifts)
        bm = tuple(tuple(parent.b(g1, g2) for g2 in lifts) for g1 in lifts)
        mod = TorsionQuadModule(tuple(orders), qdiag, bm)
        if mod.order() != self.size():
            raise ArithmeticError("subgroup presentation has wrong order")
        return mod, tuple(lifts)

    def quotient(self) -> tuple[TorsionQuadModule, Callable]:
        """Quotient parent/subgroup with the induced form (subgroup isotropic).

        Returns the quotient module and a projection parent-element ->
        quotient coordinates. Only classes of elements orthogonal to the
        subgroup carry a well-defined q; the caller restricts accordingly.
        """
        parent = self.parent
        k = parent.ngens
        rel_rows = [list(r) for r in self.key] if self.key else []
        rel = IntMatrix.from_rows(
            rel_rows + [[parent.orders[i] if j == i else 0 for j in range(k)]
                        for i in range(k)])
        s, u, v = smith_normal_form(rel)
        vinv = rat_inverse(RatMatrix.from_rows(v.data)).to_int()
        orders = []
        gens = []
        proj_rows = []
        for t in range(k):
            d = s.data[t][t] if t < min(s.rows, s.cols) else 0
            if d == 1:
                continue
            if d == 0:
                raise ArithmeticError("quotient of finite module must be finite")
            orders.append(d)
            gens.append(parent.normalize(list(vinv.data[t])))
            proj_rows.append([v.data[i][t] for i in range(k)])
        qdiag = tuple(parent.q(g) for g in gens)
        bm = tuple(tuple(parent.b(g1, g2) for g2 in gens) for g1 in gens)
        quot = TorsionQuadModule(tuple(orders), qdiag, bm)

        def project(x: Sequence[int]) -> tuple[int, ...]:
            xx = parent.normalize(x)
            return tuple(sum(row[i] * xx[i] for i in range(k)) % d
                         for row, d in zip(proj_rows, orders))

        return quot, project


# ---------------------------------------------------------------------------
# morphisms

@dataclass(frozen=True)
class QuadMorphism:
    """Map between finite quadratic modules given by generator images."""

    source: TorsionQuadModule
    target: TorsionQuadModule
    images: tuple[tuple[int, ...], ...]
    kind: str  # "isometry" | "anti-isometry"

    def apply(self, x: Sequence[int]) -> tuple[int, ...]:
        out = self.target.zero()
        for a, img in zip(x, self.images):
            if a:
                out = self.target.add(out, self.target.smul(a, img))
        return out

    def is_well_defined(self) -> bool:
        for d, img in zip(self.source.orders, self.images):
            if any((d * a) % dd for a, dd in zip(img, self.target.orders)):
                return False
        return True

    def check_kind(self) -> bool:
        sgn = -1 if self.kind == "anti-isometry" else 1
        src = self.source
        units = src.units()
        for i, gi in enumerate(units):
            if _mod2(sgn * src.q(gi)) != self.target.q(self.images[i]):
                return False
            for j in range(i + 1, src.ngens):
                if _mod1(sgn * src.b(gi, units[j])) != \
                        self.target.b(self.images[i], self.images[j]):
                    return False
        return True

    def is_bijective(self) -> bool:
        if self.source.order() != self.target.order():
            return False
        return Submodule.from_generators(self.target, self.images).size() \
            == self.target.order()

    def compose(self, inner: "QuadMorphism") -> "QuadMorphism":
        images = tuple(self.apply(img) for img in inner.images)
        sign = (-1 if self.kind == "anti-isometry" else 1) * \
               (-1 if inner.kind == "anti-isometry" else 1)
        kind = "isometry" if sign == 1 else "anti-isometry"
        return QuadMorphism(inner.source, self.target, images, kind)

    def inverse(self) -> "QuadMorphism":
        preim = {}
        for x in self.source.elements():
            preim[self.apply(x)] = x
        images = tuple(preim[g] for g in self.target.units())
        return QuadMorphism(self.target, self.source, images, self.kind)

    def matrix_key(self) -> tuple:
        return self.images


def identity_morphism(m: TorsionQuadModule) -> QuadMorphism:
    return QuadMorphism(m, m, tuple(m.units()), "isometry")


# ---------------------------------------------------------------------------
# isometry search (backtracking over generator images)

def _target_candidates(target: TorsionQuadModule, order: int, qval: Fraction,
                       sign: int) -> list[tuple[int, ...]]:
    want = _mod2(sign * qval)
    return [x for x in target.elements()
            if target.element_order(x) == order and target.q(x) == want]


def all_isometries(source: TorsionQuadModule, target: TorsionQuadModule,
                   anti: bool = False,
                   budget: int = 10_000_000) -> list[QuadMorphism]:
    """All (anti-)isometries source -> target by exhaustive backtracking.

    Desk-scale only; an operation budget guards runaway searches.
    """
    if source.order() != target.order():
        return []
    sign = -1 if anti else 1
    kind = "anti-isometry" if anti else "isometry"
    if source.ngens == 0:
        return [QuadMorphism(source, target, (), kind)]
    k = source.ngens
    units = source.units()
    ops = k * target.order()
    if ops > budget:
        raise BudgetExceeded("isometry search budget exhausted")
    cand_lists = [
        _target_candidates(target, source.orders[i], source.qdiag[i], sign)
        for i in range(k)]
    results: list[QuadMorphism] = []
    counter = [ops]

    def extend(level: int, chosen: list):
        if level == k:
            phi = QuadMorphism(source, target, tuple(chosen), kind)
            if phi.is_well_defined() and phi.is_bijective():
                results.append(phi)
            return
        gi = units[level]
        for cand in cand_lists[level]:
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded("isometry search budget exhausted")
            if all(_mod1(sign * source.b(gi, units[j])) ==
                   target.b(cand, chosen[j]) for j in range(level)):
                chosen.append(cand)
                extend(level + 1, chosen)
                chosen.pop()

    extend(0, [])
    return results


def some_isometry(source, target, anti=False, budget=10_000_000
                  ) -> Optional[QuadMorphism]:
    """First (anti-)isometry found, or None."""
    if source.order() != target.order():
        return None
    sign = -1 if anti else 1
    kind = "anti-isometry" if anti else "isometry"
    if source.ngens == 0:
        return QuadMorphism(source, target, (), kind)
    k = source.ngens
    units = source.units()
    cand_lists = [
        _target_candidates(target, source.orders[i], source.qdiag[i], sign)
        for i in range(k)]
    counter = [k * target.order()]

    def extend(level: int, chosen: list) -> Optional[QuadMorphism]:
        if level == k:
            phi = QuadMorphism(source, target, tuple(chosen), kind)
            if phi.is_well_defined() and phi.is_bijective():
                return phi
            return None
        gi = units[level]
        for cand in cand_lists[level]:
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded("isometry search budget exhausted")
            if all(_mod1(sign * source.b(gi, units[j])) ==
                   target.b(cand, chosen[j]) for j in range(level)):
                chosen.append(cand)
                got = extend(level + 1, chosen)
                chosen.pop()
                if got is not None:
                    return got
        return None

    return extend(0, [])


def orthogonal_group_generators(m: TorsionQuadModule,
                                budget: int = 2_000_000
                                ) -> tuple[list[QuadMorphism], int]:
    """Generators and certified order of O(q).

    Stabilizer-style backtracking over images of the canonical generators:
    for each level the number of images (with identity prefix) extendable to
    a full isometry is the fundamental orbit length, so the per-level counts
    multiply to the group order, and the witnesses generate.
    """
    if m.ngens == 0:
        return [], 1
    k = m.ngens
    units = m.units()
    cand_lists = [
        _target_candidates(m, m.orders[i], m.qdiag[i], 1) for i in range(k)]
    counter = [k * m.order()]
    if counter[0] > budget:
        raise BudgetExceeded("orthogonal group budget exhausted")

    def find_extension(level: int, chosen: list) -> Optional[list]:
        if level == k:
            phi = QuadMorphism(m, m, tuple(chosen), "isometry")
            if phi.is_well_defined() and phi.is_bijective():
                return list(chosen)
            return None
        gi = units[level]
        for cand in cand_lists[level]:
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded("orthogonal group budget exhausted")
            if all(m.b(gi, units[j]) == m.b(cand, chosen[j])
                   for j in range(level)):
                chosen.append(cand)
                got = find_extension(level + 1, chosen)
                chosen.pop()
                if got is not None:
                    return got
        return None

    gens: list[QuadMorphism] = []
    order = 1
    prefix: list[tuple[int, ...]] = []
    for level in range(k):
        gi = units[level]
        count = 0
        for cand in cand_lists[level]:
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded("orthogonal group budget exhausted")
            if any(m.b(gi, units[j]) != m.b(cand, prefix[j])
                   for j in range(level)):
                continue
            got = find_extension(level + 1, prefix + [cand])
            if got is not None:
                count += 1
                if cand != gi:
                    gens.append(QuadMorphism(m, m, tuple(got), "isometry"))
        if count == 0:
            raise ArithmeticError("identity failed to extend; presentation bug")
        order *= count
        prefix.append(gi)
    return gens, order

"""Finite matrix groups through stabilizer chains on faithful finite actions.

Elements are opaque hashables (integer matrix tuples in practice) combined
through caller-supplied ops. Actions are right actions: act(act(p, g), h) ==
act(p, mul(g, h)). Base points are drawn deterministically from an ordered
seed list, so orders, transversals and coset representatives are reproducible
across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Hashable, Iterable, Iterator, Optional, Sequence

from .intmat import IntMatrix, RatMatrix, mat_identity, mat_mul, rat_inverse, solve_integer


class NonFaithfulAction(RuntimeError):
    """A nontrivial generator acts trivially on every available point."""


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class GroupOps:
    mul: Callable
    inv: Callable
    identity: Hashable
    act: Callable


# -- matrix element helpers --------------------------------------------------

def tuplemat(m) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in m)


def mat_inverse_unimodular(m) -> tuple[tuple[int, ...], ...]:
    inv = rat_inverse(RatMatrix.from_rows(m))
    return tuplemat([[int(x) for x in row] for row in inv.data])


def lattice_group_ops(rank: int) -> GroupOps:
    ident = tuplemat(mat_identity(rank))

    def mul(a, b):
        return tuplemat(mat_mul(a, b))

    def act(p, g):
        return tuple(sum(p[i] * g[i][j] for i in range(rank) if p[i])
                     for j in range(rank))

    return GroupOps(mul=mul, inv=mat_inverse_unimodular, identity=ident, act=act)


def module_matrix_inverse(m, orders) -> tuple[tuple[int, ...], ...]:
    """Inverse of an automorphism matrix acting on tuples mod orders."""
    k = len(orders)
    stacked = IntMatrix.from_rows(
        [list(m[i]) for i in range(k)] + [[orders[i] if j == i else 0
                                           for j in range(k)] for i in range(k)])
    cols = []
    for j in range(k):
        target = IntMatrix.from_rows([[1 if i == j else 0] for i in range(k)])
        sol = solve_integer(stacked.transpose(), target)
        if sol is None:
            raise ArithmeticError("module matrix is not invertible")
        cols.append([sol.data[i][0] % orders[i] for i in range(k)])
    return tuplemat([[cols[j][i] for j in range(k)] for i in range(k)])


def module_group_ops(orders: Sequence[int]) -> GroupOps:
    orders = tuple(orders)
    k = len(orders)
    ident = tuplemat(mat_identity(k))

    def mul(a, b):
        return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(k)) % orders[j]
                           for j in range(k)) for i in range(k))

    def act(p, g):
        return tuple(sum(p[i] * g[i][j] for i in range(k) if p[i]) % orders[j]
                     for j in range(k))

    def inv(g):
        return module_matrix_inverse(g, orders)

    return GroupOps(mul=mul, inv=inv, identity=ident, act=act)


def pair_group_ops(ops1: GroupOps, ops2: GroupOps) -> GroupOps:
    """Componentwise ops on pairs; points are tagged (0, p) or (1, p)."""

    def mul(a, b):
        return (ops1.mul(a[0], b[0]), ops2.mul(a[1], b[1]))

    def inv(a):
        return (ops1.inv(a[0]), ops2.inv(a[1]))

    def act(p, g):
        tag, pt = p
        if tag == 0:
            return (0, ops1.act(pt, g[0]))
        return (1, ops2.act(pt, g[1]))

    return GroupOps(mul=mul, inv=inv,
                    identity=(ops1.identity, ops2.identity), act=act)


# -- plain orbits --------------------------------------------------------------

def orbit_of(point, gens, act) -> set:
    seen = {point}
    frontier = [point]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = act(p, g)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def orbit_transversal(point, gens, ops: GroupOps) -> dict:
    """Orbit with, for each point p, an element u with act(point, u) = p."""
    trans = {point: ops.identity}
    frontier = [point]
    while frontier:
        nxt = []
        for p in frontier:
            up = trans[p]
            for g in gens:
                q = ops.act(p, g)
                if q not in trans:
                    trans[q] = ops.mul(up, g)
                    nxt.append(q)
        frontier = nxt
    return trans


# -- stabilizer chain ----------------------------------------------------------

@dataclass
class _Level:
    base: Hashable
    gens: list = field(default_factory=list)
    transversal: dict = field(default_factory=dict)  # point -> (u, u^{-1})
    done: set = field(default_factory=set)           # processed (point, gen-idx)


class ActionGroup:
    """Finitely generated finite group with a faithful right action."""

    def __init__(self, ops: GroupOps, gens: Iterable, seeds: Iterable,
                 name: Optional[str] = None, forced_base: Iterable = ()):
        self.ops = ops
        self.gens = [g for g in dict.fromkeys(gens) if g != ops.identity]
        self.seeds = list(seeds)
        self.name = name
        self.forced_base = list(forced_base)
        self._levels: Optional[list[_Level]] = None

    # -- chain construction ------------------------------------------------

    def _moved_seed(self, g):
        for p in self.seeds:
            if self.ops.act(p, g) != p:
                return p
        return None

    def _chain(self) -> list[_Level]:
        if self._levels is not None:
            return self._levels
        self._levels = []
        for b in self.forced_base:
            lvl = _Level(base=b)
            lvl.transversal[b] = (self.ops.identity, self.ops.identity)
            self._levels.append(lvl)
        for g in self.gens:
            self._insert(0, g)
        return self._levels

    def _insert(self, i: int, g):
        ops = self.ops
        if g == ops.identity:
            return
        levels = self._levels
        while True:
            if i == len(levels):
                base = self._moved_seed(g)
                if base is None:
                    raise NonFaithfulAction(
                        "nontrivial element fixes every seed point")
                lvl = _Level(base=base)
                lvl.transversal[base] = (ops.identity, ops.identity)
                levels.append(lvl)
            lvl = levels[i]
            p = ops.act(lvl.base, g)
            if p in lvl.transversal:
                u, uinv = lvl.transversal[p]
                g = ops.mul(g, uinv)
                if g == ops.identity:
                    return
                i += 1
                continue
            break
        # g is a genuinely new generator for level i
        lvl = levels[i]
        lvl.gens.append(g)
        gi = len(lvl.gens) - 1
        # extend the orbit: new generator over old points, all gens over new
        frontier = list(lvl.transversal.keys())
        while frontier:
            nxt = []
            for p in frontier:
                up, _ = lvl.transversal[p]
                for g2 in lvl.gens:
                    q = ops.act(p, g2)
                    if q not in lvl.transversal:
                        u = ops.mul(up, g2)
                        lvl.transversal[q] = (u, ops.inv(u))
                        nxt.append(q)
            frontier = nxt
        # process unseen Schreier pairs
        for p in list(lvl.transversal.keys()):
            up, _ = lvl.transversal[p]
            for idx, s in enumerate(lvl.gens):
                if (p, idx) in lvl.done:
                    continue
                lvl.done.add((p, idx))
                q = ops.act(p, s)
                _, uq_inv = lvl.transversal[q]
                sg = ops.mul(ops.mul(up, s), uq_inv)
                if sg != ops.identity:
                    self._insert(i + 1, sg)

    # -- queries -------------------------------------------------------------

    def order(self) -> int:
        out = 1
        for lvl in self._chain():
            out *= max(len(lvl.transversal), 1)
        return out

    def sift(self, g):
        """Residue of g after stripping transversal parts; identity iff g in G."""
        ops = self.ops
        residue = g
        for lvl in self._chain():
            p = ops.act(lvl.base, residue)
            if p not in lvl.transversal:
                return residue
            residue = ops.mul(residue, lvl.transversal[p][1])
        return residue

    def contains(self, g) -> bool:
        return self.sift(g) == self.ops.identity

    def is_trivial(self) -> bool:
        return not self.gens or self.order() == 1

    def elements(self, budget: int = 2_000_000) -> Iterator:
        """All elements as transversal products, deterministic order."""
        if self.order() > budget:
            raise BudgetExceeded(f"group order {self.order()} over budget")
        levels = self._chain()
        ops = self.ops
        if not levels:
            yield ops.identity
            return

        def rec(i, acc):
            if i < 0:
                yield acc
                return
            for u, _ in levels[i].transversal.values():
                yield from rec(i - 1, ops.mul(u, acc))

        yield from rec(len(levels) - 1, ops.identity)

    def subgroup(self, gens) -> "ActionGroup":
        return ActionGroup(self.ops, gens, self.seeds)

    def generators(self):
        return list(self.gens)

    def base_points(self):
        return [lvl.base for lvl in self._chain()]


# ---------------------------------------------------------------------------
# homomorphisms via pair groups

class Homomorphism:
    """Group hom given on generators, with kernel/image machinery attached.

    The pair chain is forced to use the image-side base points first; every
    element fixing all of them has identity image part (the image action is
    faithful on its seeds), so the tail of the chain is exactly the kernel.
    """

    def __init__(self, source: ActionGroup, image_ops: GroupOps,
                 image_seeds: Sequence, gen_images: dict):
        self.source = source
        self.image_ops = image_ops
        self.image_seeds = list(image_seeds)
        self.gen_images = gen_images
        ops = pair_group_ops(source.ops, image_ops)
        pair_gens = [(g, gen_images[g]) for g in source.gens]
        seeds = [(1, p) for p in self.image_seeds] + \
                [(0, p) for p in source.seeds]
        self.pair_group = ActionGroup(
            ops, pair_gens, seeds,
            forced_base=[(1, p) for p in self.image_seeds])

    def image_group(self) -> ActionGroup:
        gens = [self.gen_images[g] for g in self.source.gens]
        return ActionGroup(self.image_ops, gens, self.image_seeds)

    def kernel_generators(self) -> list:
        out = []
        for lvl in self.pair_group._chain():
            if lvl.base[0] == 0:
                for g in lvl.gens:
                    if g[1] != self.image_ops.identity:
                        raise AssertionError("kernel extraction: image part alive")
                    out.append(g[0])
        return out

    def kernel_group(self) -> ActionGroup:
        return ActionGroup(self.source.ops, self.kernel_generators(),
                           self.source.seeds)

    def preimage(self, target):
        """Some source element mapping to target, or None."""
        ops = self.pair_group.ops
        residue = (self.source.ops.identity, target)
        for lvl in self.pair_group._chain():
            if lvl.base[0] != 1:
                break
            p = ops.act(lvl.base, residue)
            if p not in lvl.transversal:
                return None
            residue = ops.mul(residue, lvl.transversal[p][1])
        if residue[1] != self.image_ops.identity:
            return None
        return self.source.ops.inv(residue[0])


def homomorphism_image_kernel(group: ActionGroup, image_ops: GroupOps,
                              image_seeds: Sequence, gen_images: dict
                              ) -> tuple[ActionGroup, ActionGroup]:
    """Image and kernel with the |G| = |im|*|ker| identity verified."""
    hom = Homomorphism(group, image_ops, image_seeds, gen_images)
    im = hom.image_group()
    ker = hom.kernel_group()
    if group.order() != im.order() * ker.order():
        raise ArithmeticError("order identity |G| = |im|*|ker| failed")
    return im, ker


# ---------------------------------------------------------------------------
# double cosets

@dataclass(frozen=True)
class DoubleCosetDecomposition:
    representatives: tuple
    coset_sizes: tuple[int, ...]
    domain_size: int

    def __len__(self):
        return len(self.representatives)


def double_cosets(domain: Sequence, left_gens: Sequence, act_left: Callable,
                  right_gens: Sequence, act_right: Callable,
                  key: Callable = lambda x: x) -> DoubleCosetDecomposition:
    """Decompose a finite domain into left x right orbits.

    Representatives are the least elements (by key) of each coset, scanned in
    sorted order, so the output is deterministic.
    """
    items = sorted(domain, key=key)
    index = {key(x): x for x in items}
    if len(index) != len(items):
        raise ValueError("domain keys are not unique")
    unused = dict.fromkeys(key(x) for x in items)
    reps = []
    sizes = []
    while unused:
        k0 = next(iter(unused))
        x0 = index[k0]
        comp = {k0}
        frontier = [x0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in left_gens:
                    y = act_left(x, g)
                    ky = key(y)
                    if ky not in comp:
                        if ky not in index:
                            raise ValueError("action leaves the domain")
                        comp.add(ky)
                        nxt.append(index[ky])
                for g in right_gens:
                    y = act_right(x, g)
                    ky = key(y)
                    if ky not in comp:
                        if ky not in index:
                            raise ValueError("action leaves the domain")
                        comp.add(ky)
                        nxt.append(index[ky])
            frontier = nxt
        rep = index[min(comp)]
        reps.append(rep)
        sizes.append(len(comp))
        for k in comp:
            unused.pop(k, None)
    return DoubleCosetDecomposition(tuple(reps), tuple(sizes), len(items))


# ---------------------------------------------------------------------------
# structure probes (order, abelianization, derived length)

def mulclose(gens, mul, identity, budget: int = 200_000) -> set:
    out = {identity}
    frontier = [identity]
    gens = list(gens)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in out:
                    if len(out) >= budget:
                        raise BudgetExceeded("mulclose budget exhausted")
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return out


def _normal_closure_gens(group: ActionGroup, seeds: list) -> list:
    ops = group.ops
    seen = {s for s in seeds if s != ops.identity}
    frontier = list(seen)
    while frontier:
        nxt = []
        for c in frontier:
            for g in group.gens:
                cg = ops.mul(ops.mul(ops.inv(g), c), g)
                if cg != ops.identity and cg not in seen:
                    seen.add(cg)
                    nxt.append(cg)
        frontier = nxt
    return list(seen)


def derived_subgroup(group: ActionGroup) -> ActionGroup:
    ops = group.ops
    coms = []
    for a in group.gens:
        for b in group.gens:
            c = ops.mul(ops.mul(ops.inv(a), ops.inv(b)), ops.mul(a, b))
            if c != ops.identity:
                coms.append(c)
    return ActionGroup(ops, _normal_closure_gens(group, coms), group.seeds)


def _abelian_invariants_from_orders(card: int, order_count) -> list[int]:
    """Invariant factors of an abelian group of size card from the counting
    function n -> #{x : n*x = 0}."""
    if card == 1:
        return []
    primes = []
    m = card
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.append(m)
    partitions = {}
    for p in primes:
        # logs[k] = log_p #{x : p^k x = 0}; #parts of the p-partition that are
        # >= k equals logs[k] - logs[k-1]
        logs = [0]
        while True:
            c = order_count(p ** len(logs))
            e = 0
            while c % p == 0:
                c //= p
                e += 1
            if e == logs[-1]:
                break
            logs.append(e)
        ge = [logs[k] - logs[k - 1] for k in range(1, len(logs))]
        lam = []
        for k in range(len(ge)):
            exactly = ge[k] - (ge[k + 1] if k + 1 < len(ge) else 0)
            lam.extend([k + 1] * exactly)
        lam.sort(reverse=True)
        partitions[p] = lam
    width = max(len(v) for v in partitions.values())
    invs = []
    for i in range(width):
        f = 1
        for p, lam in partitions.items():
            if i < len(lam):
                f *= p ** lam[i]
        invs.append(f)
    invs.sort()
    return invs


def group_probes(group: ActionGroup, budget: int = 100_000) -> dict:
    """Order plus abelian-invariants and derived-length probes.

    Self-describing output (never small-group database ids). Falls back to
    just the order when the element budget is exceeded.
    """
    ops = group.ops
    order = group.order()
    out = {"order": order}
    if order > budget:
        out["abelian_invariants"] = None
        out["derived_length"] = None
        return out

    # derived length
    length = 0
    current = group
    while current.order() > 1:
        nxt = derived_subgroup(current)
        if nxt.order() == current.order():
            length = None  # perfect
            break
        current = nxt
        length += 1
        if length > 20:
            length = None
            break
    out["derived_length"] = length

    # abelianization: count coset orders in G/[G,G]
    dsub = derived_subgroup(group)
    delems = frozenset(dsub.elements(budget))
    elems = list(group.elements(budget))
    card = order // dsub.order()

    def coset_key(x):
        return min(ops.mul(d, x) for d in delems)

    id_key = coset_key(ops.identity)
    keys = {}
    for e in elems:
        k = coset_key(e)
        if k not in keys:
            keys[k] = e
    powers = {}

    def order_count(n: int) -> int:
        # number of cosets x with n*x = 0 in additive notation
        if n in powers:
            return powers[n]
        c = 0
        for k, rep in keys.items():
            acc = ops.identity
            for _ in range(n):
                acc = ops.mul(acc, rep)
            if coset_key(acc) == id_key:
                c += 1
        powers[n] = c
        return c

    out["abelian_invariants"] = _abelian_invariants_from_orders(card, order_count)
    return out

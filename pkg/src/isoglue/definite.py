"""Algorithms for definite lattices: short vectors, automorphisms, isometry,
neighbor-method genus enumeration.

Internally everything runs positive definite; negative definite inputs are
negated on the way in and results mapped back. The automorphism/isometry
search is the standard backtracking over images of a shell-spanned search
basis, with per-level counts certifying the group order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt, prod
from typing import Iterable, Iterator, Optional, Sequence

from .fingroup import ActionGroup, lattice_group_ops, tuplemat
from .intmat import (
    IntMatrix,
    RatMatrix,
    det_bareiss,
    hermite_normal_form,
    mat_identity,
    mat_mul,
    mat_transpose,
    rat_inverse,
)
from .lattice import Lattice


class IndefiniteLattice(ValueError):
    pass


class MassMismatch(RuntimeError):
    pass


class BudgetExceeded(RuntimeError):
    pass


def _require_definite(l: Lattice) -> tuple[list[list[int]], int]:
    """Return (positive definite Gram, sign) with sign in {1, -1}."""
    if l.rank == 0:
        return [], 1
    p, m = l.signature
    if p and m:
        raise IndefiniteLattice("operation requires a definite lattice")
    if m == 0:
        return l.gram_lists(), 1
    return [[-x for x in row] for row in l.gram_lists()], -1


# ---------------------------------------------------------------------------
# exact LLL on Gram matrices

def lll_gram(gram: Sequence[Sequence[int]], delta: Fraction = Fraction(3, 4)
             ) -> tuple[list[list[int]], list[list[int]]]:
    """LLL-reduce a positive definite Gram matrix.

    Returns (reduced_gram, u) with u unimodular and u*gram*u^T = reduced.
    Exact rational Gram-Schmidt; plumbing for enumeration, not performance.
    """
    n = len(gram)
    if n == 0:
        return [], []
    g = [[Fraction(x) for x in row] for row in gram]
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def gs():
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar = [Fraction(0)] * n
        for i in range(n):
            bstar[i] = g[i][i]
            for k in range(i):
                mu[i][k] = (g[i][k] - sum(mu[i][t] * mu[k][t] * bstar[t]
                                          for t in range(k))) / bstar[k]
                bstar[i] -= mu[i][k] * mu[i][k] * bstar[k]
        return mu, bstar

    def reduce_row(k, j, q):
        # b_k <- b_k - q b_j, updating the Gram symmetrically
        old_kk = g[k][k]
        old_kj = g[k][j]
        for t in range(n):
            g[k][t] -= q * g[j][t]
        for t in range(n):
            g[t][k] = g[k][t]
        g[k][k] = old_kk - 2 * q * old_kj + q * q * g[j][j]
        u[k] = [a - q * b for a, b in zip(u[k], u[j])]

    mu, bstar = gs()
    k = 1
    guard = 0
    while k < n:
        guard += 1
        if guard > 100_000:
            raise ArithmeticError("LLL did not terminate")
        for j in range(k - 1, -1, -1):
            q = (mu[k][j] + Fraction(1, 2)).__floor__()
            if q:
                reduce_row(k, j, q)
                mu, bstar = gs()
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            g[k], g[k - 1] = g[k - 1], g[k]
            for row in g:
                row[k], row[k - 1] = row[k - 1], row[k]
            u[k], u[k - 1] = u[k - 1], u[k]
            mu, bstar = gs()
            k = max(k - 1, 1)
    out = [[int(x) for x in row] for row in g]
    return out, u


# ---------------------------------------------------------------------------
# short vectors (Fincke-Pohst)

@dataclass(frozen=True)
class ShortVectorQuery:
    lattice: Lattice
    bound: int
    divisibility: Optional[int] = None


def _fp_coefficients(gram) -> tuple[list[Fraction], list[list[Fraction]]]:
    """Quadratic-completion data: Q(x) = sum_i q_i (x_i + sum_{j>i} m_ij x_j)^2."""
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    q = [Fraction(0)] * n
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        q[i] = a[i][i]
        if q[i] <= 0:
            raise IndefiniteLattice("Gram is not positive definite")
        for j in range(i + 1, n):
            m[i][j] = a[i][j] / q[i]
        for k in range(i + 1, n):
            for l in range(i + 1, n):
                a[k][l] -= a[k][i] * a[i][l] / q[i]
    return q, m


def short_vectors(l: Lattice, bound: int,
                  divisibility: Optional[int] = None
                  ) -> list[tuple[tuple[int, ...], int]]:
    """All nonzero vectors with |v^2| <= bound, one per {v, -v} pair.

    Exact Fincke-Pohst on the (internally positive) Gram. Norms are reported
    with the lattice's original sign. Optionally filtered by divisibility.
    """
    pos, sign = _require_definite(l)
    if l.rank == 0:
        return []
    q, m = _fp_coefficients(pos)
    n = l.rank
    out = []
    x = [0] * n

    def rec(i: int, remaining: Fraction):
        center = sum(m[i][j] * x[j] for j in range(i + 1, n))
        # (x_i + center)^2 <= remaining / q_i
        lim = remaining / q[i]
        lo, hi = _coeff_range(center, lim)
        for xi in range(lo, hi + 1):
            x[i] = xi
            used = q[i] * (xi + center) ** 2
            if used <= remaining:
                if i == 0:
                    if any(x):
                        out.append(tuple(x))
                else:
                    rec(i - 1, remaining - used)
        x[i] = 0

    rec(n - 1, Fraction(bound))
    result = []
    for v in out:
        # canonical sign: first nonzero coordinate positive
        first = next(a for a in v if a)
        if first < 0:
            v = tuple(-a for a in v)
        nrm = sum(v[i] * pos[i][j] * v[j] for i in range(n) for j in range(n))
        result.append((v, sign * nrm))
    result = sorted(set(result))
    if divisibility is not None:
        result = [(v, nr) for v, nr in result if l.divisibility(v) == divisibility]
    return result


def _coeff_range(center: Fraction, lim: Fraction) -> tuple[int, int]:
    """Integer interval certainly containing {t : (t + center)^2 <= lim}.

    Padded by at most one on each side; callers re-verify each candidate, so
    a slightly generous range is harmless and no loops are needed.
    """
    if lim < 0:
        return 1, 0
    a, b = center.numerator, center.denominator
    c, d = lim.numerator, lim.denominator
    # |b t + a| <= sqrt(b^2 c / d); with X = isqrt(b^2 c d), sqrt = X'/d for
    # some real X' in [X, X+1)
    x = isqrt(b * b * c * d)
    hi = (Fraction(x - a * d, d * b)).__floor__() + 1
    lo = (Fraction(-x - a * d, d * b)).__ceil__() - 1
    return lo, hi


def short_vectors_box_oracle(l: Lattice, bound: int, box: int = 6
                             ) -> list[tuple[tuple[int, ...], int]]:
    """Exhaustive coefficient-box enumeration; independent test oracle."""
    pos, sign = _require_definite(l)
    n = l.rank
    out = set()
    for coeffs in itertools.product(range(-box, box + 1), repeat=n):
        if not any(coeffs):
            continue
        nrm = sum(coeffs[i] * pos[i][j] * coeffs[j]
                  for i in range(n) for j in range(n))
        if nrm <= bound:
            v = coeffs
            first = next(a for a in v if a)
            if first < 0:
                v = tuple(-a for a in v)
            out.add((tuple(v), sign * nrm))
    return sorted(out)


def minimum(l: Lattice) -> int:
    """Minimal nonzero |v^2| (signed per the lattice)."""
    pos, sign = _require_definite(l)
    bound = min(pos[i][i] for i in range(l.rank))
    vecs = short_vectors(l, bound)
    m = min(abs(nr) for _, nr in vecs)
    return sign * m


# ---------------------------------------------------------------------------
# automorphisms and isometries

class _SearchData:
    """Shared state for the image-backtracking searches."""

    def __init__(self, l: Lattice):
        self.lattice = l
        pos, sign = _require_definite(l)
        self.pos = pos
        self.sign = sign
        n = l.rank
        # collect shells of increasing norm until they span full rank
        shells: dict[int, list[tuple[int, ...]]] = {}
        bound = 0
        vecs: list[tuple[int, ...]] = []
        norms: list[int] = []
        while True:
            bound += 1
            found = short_vectors(l, bound)
            if not found:
                continue
            by_norm: dict[int, list] = {}
            for v, nr in found:
                by_norm.setdefault(abs(nr), []).append(v)
            rank = _rank_of([list(v) for v in sorted(set(
                v for vs in by_norm.values() for v in vs))])
            if rank == n:
                norms_sorted = sorted(by_norm)
                vecs = []
                norms = []
                for nr in norms_sorted:
                    for v in sorted(by_norm[nr]):
                        vecs.append(v)
                        norms.append(nr)
                break
            if bound > 4 * max(abs(pos[i][i]) for i in range(n)) + 16:
                raise ArithmeticError("could not span lattice by short shells")
        # signed vector list (both signs) for images
        self.vectors = []
        self.vnorms = []
        for v, nr in zip(vecs, norms):
            self.vectors.append(v)
            self.vnorms.append(nr)
            self.vectors.append(tuple(-a for a in v))
            self.vnorms.append(nr)
        self.index = {v: i for i, v in enumerate(self.vectors)}
        m = len(self.vectors)
        # pairwise inner products in the positive Gram
        self.prods = [[0] * m for _ in range(m)]
        for i in range(m):
            vi = self.vectors[i]
            rowG = [sum(vi[a] * pos[a][b] for a in range(n)) for b in range(n)]
            for j in range(m):
                vj = self.vectors[j]
                self.prods[i][j] = sum(rowG[b] * vj[b] for b in range(n))
        # fingerprint profile per vector: multiset of inner products
        self.profiles = []
        for i in range(m):
            self.profiles.append(tuple(sorted(self.prods[i])))
        # search basis: independent vectors, preferring small candidate sets
        self.basis_idx = self._pick_basis()
        sb = [list(self.vectors[i]) for i in self.basis_idx]
        self.sb = sb
        d = det_bareiss(sb)
        self.sb_det = d
        inv = rat_inverse(RatMatrix.from_rows(sb))
        self.sb_inv = inv  # rational

    def _pick_basis(self) -> list[int]:
        n = self.lattice.rank
        # group vectors by profile; smaller classes first
        class_size: dict[tuple, int] = {}
        for pr in self.profiles:
            class_size[pr] = class_size.get(pr, 0) + 1
        order = sorted(range(len(self.vectors)),
                       key=lambda i: (class_size[self.profiles[i]],
                                      self.vnorms[i], self.vectors[i]))
        chosen: list[int] = []
        rows: list[list[int]] = []
        for i in order:
            cand = rows + [list(self.vectors[i])]
            if _rank_of(cand) == len(cand):
                chosen.append(i)
                rows.append(list(self.vectors[i]))
                if len(chosen) == n:
                    break
        if len(chosen) != n:
            raise ArithmeticError("search basis selection failed")
        return chosen

    def map_from_images(self, image_idx: Sequence[int]
                        ) -> Optional[tuple[tuple[int, ...], ...]]:
        """The lattice map sending search basis -> images, if integral."""
        t = [list(self.vectors[i]) for i in image_idx]
        m = (self.sb_inv * RatMatrix.from_rows(t))
        if not m.is_integral():
            return None
        return tuplemat([[int(x) for x in row] for row in m.data])


def _rank_of(rows) -> int:
    from .intmat import rat_rank
    if not rows:
        return 0
    return rat_rank(rows)


def _search_images(data: _SearchData, target: _SearchData,
                   count_levels: bool):
    """Backtracking core shared by automorphism and isometry search.

    Maps data's search basis into target's vector list. When count_levels is
    set (automorphism mode), returns (generators, order) with the order
    certified by per-level extension counts; otherwise returns the first
    complete map found, or None.
    """
    n = data.lattice.rank
    basis = data.basis_idx
    sprods = data.prods
    tprods = target.prods
    sprofiles = data.profiles
    tprofiles = target.profiles
    m = len(target.vectors)

    base_profiles = [sprofiles[basis[i]] for i in range(n)]
    base_norms = [data.vnorms[basis[i]] for i in range(n)]

    level_candidates = []
    for i in range(n):
        cands = [j for j in range(m)
                 if target.vnorms[j] == base_norms[i]
                 and tprofiles[j] == base_profiles[i]]
        level_candidates.append(cands)

    def compatible(level, j, chosen):
        bi = basis[level]
        for k in range(level):
            if tprods[j][chosen[k]] != sprods[bi][basis[k]]:
                return False
        return True

    def extend(level, chosen) -> Optional[tuple]:
        if level == n:
            return target.map_from_images(chosen) if target is not data \
                else data.map_from_images(chosen)
        for j in level_candidates[level]:
            if compatible(level, j, chosen):
                chosen.append(j)
                got = extend(level + 1, chosen)
                chosen.pop()
                if got is not None:
                    return got
        return None

    if not count_levels:
        return extend(0, [])

    # automorphism mode: per-level counting with identity prefix
    gens = []
    order = 1
    prefix = list(basis)
    for level in range(n):
        count = 0
        for j in level_candidates[level]:
            if not compatible(level, j, prefix[:level]):
                continue
            got = extend(level + 1, prefix[:level] + [j])
            if got is not None:
                count += 1
                if j != basis[level]:
                    gens.append(got)
        if count == 0:
            raise ArithmeticError("identity failed to extend in PS search")
        order *= count
    return gens, order


def automorphism_group(l: Lattice) -> tuple[ActionGroup, int]:
    """Generators of O(l) with certified order, for definite lattices.

    The backtracking counts, per level, how many images of the search basis
    vector extend to full automorphisms; the counts multiply to |O(l)| by
    orbit-stabilizer. The result is cross-checked against the stabilizer
    chain order of the generated group.
    """
    if l.rank == 0:
        ops = lattice_group_ops(0)
        return ActionGroup(ops, [], seeds=[]), 1
    data = _SearchData(l)
    gens, order = _search_images(data, data, count_levels=True)
    ops = lattice_group_ops(l.rank)
    seeds = [tuple(1 if i == j else 0 for j in range(l.rank))
             for i in range(l.rank)]
    group = ActionGroup(ops, [tuplemat(g) for g in gens], seeds=seeds)
    chain_order = group.order()
    if chain_order != order:
        raise ArithmeticError(
            f"automorphism order mismatch: search {order}, chain {chain_order}")
    for g in group.gens:
        if not l.is_isometry([list(r) for r in g]):
            raise ArithmeticError("generator does not preserve the Gram")
    return group, order


def is_isometric(a: Lattice, b: Lattice
                 ) -> Optional[tuple[tuple[int, ...], ...]]:
    """An isometry matrix m with m*Gb*m^T = Ga (rows = images of a's basis in
    b's coordinates), or None."""
    if a.rank != b.rank:
        return None
    if a.rank == 0:
        return ()
    if a.det != b.det or a.signature != b.signature or a.is_even != b.is_even:
        return None
    da = _SearchData(a)
    db = _SearchData(b)
    if sorted(da.vnorms) != sorted(db.vnorms):
        return None
    if sorted(da.profiles) != sorted(db.profiles):
        return None
    # search images of a's basis among b's vectors
    n = a.rank
    got = _search_images_cross(da, db)
    if got is None:
        return None
    m = got
    # verify: m maps a-coords to b-coords with Gram pullback
    mg = mat_mul([list(r) for r in m], b.gram_lists())
    mgmt = mat_mul(mg, mat_transpose([list(r) for r in m]))
    if mgmt != a.gram_lists():
        raise ArithmeticError("isometry verification failed")
    return m


def _search_images_cross(da: _SearchData, db: _SearchData):
    n = da.lattice.rank
    basis = da.basis_idx
    base_profiles = [da.profiles[i] for i in basis]
    base_norms = [da.vnorms[i] for i in basis]
    m = len(db.vectors)
    level_candidates = []
    for i in range(n):
        cands = [j for j in range(m)
                 if db.vnorms[j] == base_norms[i]
                 and db.profiles[j] == base_profiles[i]]
        if not cands:
            return None
        level_candidates.append(cands)

    sb_inv = da.sb_inv

    def leaf(chosen):
        t = [list(db.vectors[j]) for j in chosen]
        mm = sb_inv * RatMatrix.from_rows(t)
        if not mm.is_integral():
            return None
        return tuplemat([[int(x) for x in row] for row in mm.data])

    def extend(level, chosen):
        if level == n:
            return leaf(chosen)
        bi = basis[level]
        for j in level_candidates[level]:
            ok = True
            for k in range(level):
                if db.prods[j][chosen[k]] != da.prods[bi][basis[k]]:
                    ok = False
                    break
            if ok:
                chosen.append(j)
                got = extend(level + 1, chosen)
                chosen.pop()
                if got is not None:
                    return got
        return None

    return extend(0, [])


# ---------------------------------------------------------------------------
# Kneser neighbors

def _isotropic_lines_mod_p(gram, p: int) -> Iterator[tuple[int, ...]]:
    """Representatives of isotropic lines of the Gram mod p, lexicographic,
    first nonzero coordinate 1."""
    n = len(gram)
    for v in itertools.product(range(p), repeat=n):
        if not any(v):
            continue
        first = next(a for a in v if a)
        if first != 1:
            continue
        q = sum(v[i] * gram[i][j] * v[j] for i in range(n) for j in range(n))
        if q % p == 0:
            yield v


def neighbor_lattice(l: Lattice, v: Sequence[int], p: int) -> Lattice:
    """The p-neighbor of an even definite lattice at the isotropic line [v].

    v must satisfy Q(v) = 0 mod p and v not in pL; the representative is
    adjusted so that Q = 0 mod 2p^2, then
    N = {x : (x, v) = 0 mod p} + Z (v/p).
    """
    pos, sign = _require_definite(l)
    n = l.rank
    g = pos
    v = [int(a) for a in v]

    def Q(x):
        return sum(x[i] * g[i][j] * x[j] for i in range(n) for j in range(n))

    def B(x, y):
        return sum(x[i] * g[i][j] * y[j] for i in range(n) for j in range(n))

    if Q(v) % p != 0:
        raise ValueError("line is not isotropic mod p")
    # adjust to Q(v) = 0 mod 2p^2 (even lattice: Q(v) = 0 mod 2p already)
    m = (Q(v) // (2 * p)) % p
    if m:
        w = None
        for j in range(n):
            e = [1 if t == j else 0 for t in range(n)]
            if B(v, e) % p:
                w = e
                break
        if w is None:
            raise ValueError("vector lies in p * dual")
        binv = pow(B(v, w) % p, -1, p)
        t = (-m * binv) % p
        v = [a + p * t * b for a, b in zip(v, w)]
    assert Q(v) % (2 * p * p) == 0
    # work with p*N to stay integral: p*N = p*K + Z v, where K is the kernel
    # lattice {x : B(x, v) = 0 mod p}
    pair = [B([1 if t == j else 0 for t in range(n)], v) % p for j in range(n)]
    stack = [[pair[j]] + [1 if t == j else 0 for t in range(n)]
             for j in range(n)]
    stack.append([p] + [0] * n)
    hh, _ = hermite_normal_form(IntMatrix.from_rows(stack))
    gens = []
    for i in range(hh.rows):
        if hh.data[i][0] == 0 and any(hh.data[i][1:]):
            gens.append([p * a for a in hh.data[i][1:]])
    gens.append(list(v))
    h2, _ = hermite_normal_form(IntMatrix.from_rows(gens))
    basis = [list(r) for r in h2.data if any(r)]
    if len(basis) != n:
        raise ArithmeticError("neighbor basis has wrong rank")
    gram_pn = mat_mul(mat_mul(basis, g), mat_transpose(basis))
    if any(x % (p * p) for row in gram_pn for x in row):
        raise ArithmeticError("neighbor Gram not divisible by p^2")
    gram_n = [[x // (p * p) for x in row] for row in gram_pn]
    red, _ = lll_gram(gram_n)
    out = [[sign * x for x in row] for row in red]
    nl = Lattice.from_gram(out)
    if abs(nl.det) != abs(l.det) or not nl.is_even:
        raise ArithmeticError("neighbor invariants changed")
    return nl


def _shell_fingerprint(l: Lattice, upto: int = 6) -> tuple:
    counts = {}
    for v, nr in short_vectors(l, upto):
        counts[abs(nr)] = counts.get(abs(nr), 0) + 1
    return tuple(sorted(counts.items()))


@dataclass
class GenusEnumeration:
    classes: list[Lattice]
    aut_orders: list[int]
    certified: bool
    mass: Optional[Fraction]
    mass_found: Optional[Fraction]
    message: str = ""


def genus_representatives(seed: Lattice, primes: Sequence[int] = (),
                          mass: Optional[Fraction] = None,
                          line_budget: int = 200_000,
                          max_classes: int = 64) -> GenusEnumeration:
    """Kneser neighbor closure of a definite even lattice's genus.

    When the genus mass is supplied (odd determinant; see the genus module),
    enumeration stops once sum 1/|Aut| reaches it, certifying completeness.
    Otherwise the closure over the given primes is returned flagged
    unverified-complete.
    """
    pos, sign = _require_definite(seed)
    if not seed.is_even:
        raise ValueError("neighbor enumeration implemented for even lattices")
    d = abs(seed.det)
    if seed.rank <= 1:
        g0, o0 = automorphism_group(seed)
        return GenusEnumeration([seed], [o0], True, mass,
                                Fraction(1, o0), "rank <= 1: single class")
    if seed.rank == 2:
        return _binary_genus(seed, sign)
    if not primes:
        p = 2
        while True:
            p += 1
            if _is_prime(p) and d % p and seed.rank > 1:
                break
        primes = (p,)
    classes = [seed]
    groups = []
    g0, o0 = automorphism_group(seed)
    aut_orders = [o0]
    fingerprints = [_shell_fingerprint(seed)]

    def found_mass() -> Fraction:
        return sum(Fraction(1, o) for o in aut_orders)

    if mass is not None and found_mass() == mass:
        return GenusEnumeration(classes, aut_orders, True, mass, found_mass())

    queue = [0]
    lines_used = 0
    while queue:
        idx = queue.pop(0)
        current = classes[idx]
        for p in primes:
            if current.rank < 2 or d % p == 0 or p == 2:
                continue
            for v in _isotropic_lines_mod_p(
                    _require_definite(current)[0], p):
                lines_used += 1
                if lines_used > line_budget:
                    return GenusEnumeration(
                        classes, aut_orders, False, mass, found_mass(),
                        "line budget exhausted")
                nb = neighbor_lattice(current, v, p)
                fp = _shell_fingerprint(nb)
                new = True
                for i, cl in enumerate(classes):
                    if fp == fingerprints[i] and is_isometric(nb, cl) is not None:
                        new = False
                        break
                if new:
                    classes.append(nb)
                    fingerprints.append(fp)
                    _, o = automorphism_group(nb)
                    aut_orders.append(o)
                    queue.append(len(classes) - 1)
                    if len(classes) > max_classes:
                        return GenusEnumeration(
                            classes, aut_orders, False, mass, found_mass(),
                            "class budget exhausted")
                if mass is not None and found_mass() == mass:
                    return GenusEnumeration(classes, aut_orders, True, mass,
                                            found_mass())
                if mass is not None and found_mass() > mass:
                    raise MassMismatch(
                        f"found mass {found_mass()} exceeds genus mass {mass}")
    certified = mass is not None and found_mass() == mass
    msg = "" if certified else "neighbor closure; completeness unverified"
    return GenusEnumeration(classes, aut_orders, certified, mass,
                            found_mass(), msg)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in range(2, isqrt(n) + 1):
        if n % q == 0:
            return False
    return True


def _binary_genus(seed: Lattice, sign: int) -> GenusEnumeration:
    """Complete, certified class list for an even binary definite genus.

    Reduction theory: every class contains a Gram [[2a, b], [b, 2c]] with
    0 <= b <= a <= c, so exhausting that box and filtering by genus equality
    (signature + discriminant form) is complete.
    """
    from .lattice import discriminant_data
    from .torsion import some_isometry

    d = abs(seed.det)  # = 4ac - b^2 for the positive form
    seed_disc = discriminant_data(seed).module
    classes: list[Lattice] = []
    aut_orders: list[int] = []
    a = 1
    while 3 * a * a <= d + a * a:  # 4a^2 - a^2 <= 4ac - b^2 = d when c >= a
        for b in range(0, a + 1):
            rest = d + b * b
            if rest % 4 == 0:
                c = rest // 4 // a if a else 0
                if a and (rest // 4) % a == 0 and c >= a:
                    gram = [[2 * a, b], [b, 2 * c]]
                    if 4 * a * c - b * b != d:
                        continue
                    cand = Lattice.from_gram(
                        [[sign * x for x in row] for row in gram])
                    dm = discriminant_data(cand).module
                    if some_isometry(dm, seed_disc) is None:
                        continue
                    if any(is_isometric(cand, cl) is not None
                           for cl in classes):
                        continue
                    classes.append(cand)
                    _, o = automorphism_group(cand)
                    aut_orders.append(o)
        a += 1
    # sanity: the seed itself must be in the list
    if not any(is_isometric(seed, cl) is not None for cl in classes):
        raise ArithmeticError("binary reduction missed the seed class")
    found = sum(Fraction(1, o) for o in aut_orders)
    return GenusEnumeration(classes, aut_orders, True, None, found,
                            "binary reduction: complete")

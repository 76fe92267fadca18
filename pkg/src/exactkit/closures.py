"""Pointed closure spaces and pointed matroids.

A closure space is stored by its family of closed sets (bitmasks over
the ground set), which must contain the full set and be closed under
intersection.  Pointed means the base element 0 lies in the closure of
the empty set, equivalently in every closed set.  Matroids are given by
independent-set families; their derived closure operators satisfy the
exchange property, which is what the category-level suites rely on.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .core import (CategoryError, Mismatch, Morphism, PullbackData,
                   PushoutData, TableCategory)
from .util import UnionFind, perms_fixing_zero, quotient_map


class NotAMatroid(CategoryError):
    pass


class NotContinuous(CategoryError):
    pass


class InternalDisagreement(CategoryError):
    """The three continuity conditions disagreed; treated as a bug."""


@dataclass(frozen=True, order=True)
class ClosureSpace:
    """Ground set 0..ground-1 with closed sets as sorted bitmasks."""
    ground: int
    flats: tuple

    @property
    def full(self):
        return (1 << self.ground) - 1


def make_closure_space(ground, flats):
    flats = tuple(sorted(set(flats)))
    full = (1 << ground) - 1
    if full not in flats:
        raise CategoryError("the full set must be closed")
    fs = set(flats)
    for a in flats:
        for b in flats:
            if a & b not in fs:
                raise CategoryError("closed sets must be intersection-closed")
    return ClosureSpace(ground, flats)


def closure_of(space, mask):
    """Smallest closed superset of the given subset."""
    out = space.full
    for f in space.flats:
        if f & mask == mask:
            out &= f
    return out


def is_pointed(space):
    bottom = space.full
    for f in space.flats:
        bottom &= f
    return bool(bottom & 1)


def check_exchange(space):
    """Exchange property of the derived closure operator, by exhaustion:
    y in cl(A + x) \\ cl(A) implies x in cl(A + y)."""
    n = space.ground
    for mask in range(1 << n):
        ca = closure_of(space, mask)
        for x in range(n):
            cax = closure_of(space, mask | (1 << x))
            gained = cax & ~ca
            for y in range(n):
                if gained >> y & 1:
                    if not closure_of(space, mask | (1 << y)) >> x & 1:
                        return False
    return True


@dataclass(frozen=True, order=True)
class Matroid:
    """Matroid by its independent sets (bitmasks, downward closed)."""
    ground: int
    independent: tuple

    def rank(self, mask):
        return max(bin(i).count("1")
                   for i in self.independent if i & mask == i)


def make_matroid_from_independent(ground, independent):
    independent = tuple(sorted(set(independent)))
    sets = set(independent)
    if 0 not in sets:
        raise NotAMatroid("the empty set must be independent")
    for i in sets:
        for x in range(ground):
            if i >> x & 1 and i & ~(1 << x) not in sets:
                raise NotAMatroid("independent sets must be downward closed")
    for a in sets:
        for b in sets:
            if bin(a).count("1") < bin(b).count("1"):
                if not any(b >> x & 1 and not a >> x & 1
                           and a | (1 << x) in sets for x in range(ground)):
                    raise NotAMatroid("augmentation fails")
    return Matroid(ground, independent)


def make_matroid_from_rank(ground, rank):
    """Validate a rank table indexed by bitmask: normalized, monotone,
    unit-increase, submodular; then recover the independent sets."""
    if rank[0] != 0:
        raise NotAMatroid("rank of the empty set must be 0")
    for mask in range(1 << ground):
        for x in range(ground):
            if not mask >> x & 1:
                up = rank[mask | (1 << x)]
                if up < rank[mask] or up > rank[mask] + 1:
                    raise NotAMatroid("rank must grow by 0 or 1")
    for a in range(1 << ground):
        for b in range(1 << ground):
            if rank[a | b] + rank[a & b] > rank[a] + rank[b]:
                raise NotAMatroid("rank must be submodular")
    independent = [m for m in range(1 << ground)
                   if rank[m] == bin(m).count("1")]
    return make_matroid_from_independent(ground, independent)


def matroid_closure(m):
    """Closure space of a matroid: cl(A) = elements not raising the rank."""
    flats = []
    for mask in range(1 << m.ground):
        r = m.rank(mask)
        cl = mask
        for x in range(m.ground):
            if not mask >> x & 1 and m.rank(mask | (1 << x)) == r:
                cl |= 1 << x
        if cl == mask:
            flats.append(mask)
    return make_closure_space(m.ground, flats)


def uniform_matroid(rank, ground):
    independent = [m for m in range(1 << ground)
                   if bin(m).count("1") <= rank]
    return make_matroid_from_independent(ground, independent)


def free_matroid(ground):
    return uniform_matroid(ground, ground)


@functools.lru_cache(maxsize=None)
def all_matroids(ground):
    """All labeled matroids on the given ground set, from independent-set
    families (downward-closed plus augmentation)."""
    out = []
    subsets = 1 << ground
    for picks in range(1 << subsets):
        independent = [m for m in range(subsets) if picks >> m & 1]
        if not independent or independent[0] != 0:
            continue
        try:
            out.append(make_matroid_from_independent(ground, independent))
        except NotAMatroid:
            continue
    return tuple(out)


def as_pointed_space(m):
    """Pointed closure space of a matroid; a loop is adjoined as the new
    base element when the matroid has no loop at 0."""
    space = matroid_closure(m)
    if is_pointed(space):
        return space
    shifted = [f << 1 | 1 for f in space.flats]
    return make_closure_space(space.ground + 1, shifted)


def continuity_conditions(table, X, Y):
    """The three continuity conditions of a ground-set map, evaluated
    separately: preimages of closed sets are closed; cl(f^-1 B) inside
    f^-1(cl B); f(cl A) inside cl(f A)."""
    def preimage(mask):
        out = 0
        for x in range(X.ground):
            if mask >> table[x] & 1:
                out |= 1 << x
        return out

    def image(mask):
        out = 0
        for x in range(X.ground):
            if mask >> x & 1:
                out |= 1 << table[x]
        return out

    fx = set(X.flats)
    c1 = all(preimage(F) in fx for F in Y.flats)
    c2 = all(closure_of(X, preimage(B)) & ~preimage(closure_of(Y, B)) == 0
             for B in range(1 << Y.ground))
    c3 = all(image(closure_of(X, A)) & ~closure_of(Y, image(A)) == 0
             for A in range(1 << X.ground))
    return c1, c2, c3


def is_continuous(f_or_table, X=None, Y=None):
    """Continuity with the three-way agreement asserted."""
    if isinstance(f_or_table, Morphism):
        table, X, Y = f_or_table.table, f_or_table.dom, f_or_table.cod
    else:
        table = tuple(f_or_table)
    c1, c2, c3 = continuity_conditions(table, X, Y)
    if not (c1 == c2 == c3):
        raise InternalDisagreement(
            f"continuity conditions disagree: {c1}, {c2}, {c3}")
    return c1


def is_closed_map(table, X, Y):
    """Images of closed sets are closed, equivalently cl(fA) in f(cl A)."""
    def image(mask):
        out = 0
        for x in range(X.ground):
            if mask >> x & 1:
                out |= 1 << table[x]
        return out
    return all(image(F) in set(Y.flats) for F in X.flats)


def _subspace(Y, members):
    """Induced closure on a subset of the ground set: traces of flats."""
    index = {y: i for i, y in enumerate(members)}
    traces = set()
    for F in Y.flats:
        t = 0
        for y in members:
            if F >> y & 1:
                t |= 1 << index[y]
        traces.add(t)
    return make_closure_space(len(members), traces)


def cl_ker_coker(f):
    """Kernel with the induced closure, cokernel with the final closure."""
    X, Y = f.dom, f.cod
    if not is_continuous(f):
        raise NotContinuous("not a continuous pointed map")
    members = tuple(i for i, v in enumerate(f.table) if v == 0)
    K = _subspace(X, members)
    ker = Morphism(K, X, members)

    image = set(f.table)
    survivors = [y for y in range(Y.ground) if y not in image]
    proj = {y: 0 for y in image}
    proj.update({y: j + 1 for j, y in enumerate(survivors)})
    csize = len(survivors) + 1
    table = tuple(proj[y] for y in range(Y.ground))
    fy = set(Y.flats)
    cflats = []
    for G in range(1 << csize):
        pre = 0
        for y in range(Y.ground):
            if G >> table[y] & 1:
                pre |= 1 << y
        if pre in fy:
            cflats.append(G)
    C = make_closure_space(csize, cflats)
    return ker, Morphism(Y, C, table)


class ClosureCategory(TableCategory):
    """Pointed closure spaces, or pointed matroids, with continuous maps."""

    def __init__(self, matroids_only=False):
        super().__init__()
        self.matroids_only = matroids_only
        self.name = "matroid" if matroids_only else "closure"
        self._objects_cache = {}

    def objects(self, bound):
        if bound not in self._objects_cache:
            seen = {}
            for ground in range(1, bound + 1):
                if self.matroids_only:
                    spaces = [matroid_closure(m) for m in all_matroids(ground)]
                    spaces = [s for s in spaces if is_pointed(s)]
                else:
                    spaces = all_pointed_closure_spaces(ground)
                for s in spaces:
                    key = self._canonical(s)
                    if key not in seen:
                        seen[key] = s
            self._objects_cache[bound] = sorted(seen.values())
        return list(self._objects_cache[bound])

    def _canonical(self, s):
        best = None
        for perm in perms_fixing_zero(s.ground):
            flats = tuple(sorted(_relabel_mask(F, perm) for F in s.flats))
            if best is None or flats < best:
                best = flats
        return (s.ground, best)

    def size(self, X):
        return X.ground

    def iso_key(self, X):
        ground, flats = self._canonical(X)
        return f"{ground}:{list(flats)}"

    @property
    def zero_object(self):
        return ClosureSpace(1, (1,))

    def is_valid_morphism(self, X, Y, table):
        if table[0] != 0:
            return False
        fx = set(X.flats)
        for F in Y.flats:
            pre = 0
            for x in range(X.ground):
                if F >> table[x] & 1:
                    pre |= 1 << x
            if pre not in fx:
                return False
        return True

    def kernel(self, f):
        return cl_ker_coker(f)[0]

    def cokernel(self, f):
        return cl_ker_coker(f)[1]

    def canonical_pullback(self, f, g):
        """Fibre product with the closure induced from the product, whose
        closed sets are the boxes F x G."""
        if f.cod != g.cod:
            raise Mismatch("pullback: codomains differ")
        X, Yp = f.dom, g.dom
        pairs = [(x, y) for x in range(X.ground) for y in range(Yp.ground)
                 if f.table[x] == g.table[y]]
        index = {p: k for k, p in enumerate(pairs)}
        traces = set()
        for F in X.flats:
            for G in Yp.flats:
                t = 0
                for p in pairs:
                    if F >> p[0] & 1 and G >> p[1] & 1:
                        t |= 1 << index[p]
                traces.add(t)
        P = make_closure_space(len(pairs), traces)
        p1 = Morphism(P, X, tuple(p[0] for p in pairs))
        p2 = Morphism(P, Yp, tuple(p[1] for p in pairs))

        def pair(a, b):
            if a.dom != b.dom:
                return None
            try:
                table = tuple(index[(a.table[u], b.table[u])]
                              for u in range(a.dom.ground))
            except KeyError:
                return None
            return Morphism(a.dom, P, table)

        return PullbackData(P, p1, p2, pair)

    def canonical_pushout(self, f, g):
        """Quotient of the wedge with the final closure: closed iff the
        preimage is closed in both summands."""
        if f.dom != g.dom:
            raise Mismatch("pushout: domains differ")
        A, B = f.cod, g.cod
        wsize = A.ground + B.ground - 1
        ia = tuple(range(A.ground))
        ib = (0,) + tuple(range(A.ground, wsize))
        uf = UnionFind(wsize)
        for x in range(f.dom.ground):
            uf.union(ia[f.table[x]], ib[g.table[x]])
        proj, classes = quotient_map(uf.representatives())
        wsizeq = len(classes)
        fa, fb = set(A.flats), set(B.flats)
        qflats = []
        for G in range(1 << wsizeq):
            amask = 0
            for a in range(A.ground):
                if G >> proj[ia[a]] & 1:
                    amask |= 1 << a
            bmask = 0
            for b in range(B.ground):
                if G >> proj[ib[b]] & 1:
                    bmask |= 1 << b
            if amask in fa and bmask in fb:
                qflats.append(G)
        W = make_closure_space(wsizeq, qflats)
        i1 = Morphism(A, W, tuple(proj[ia[a]] for a in range(A.ground)))
        i2 = Morphism(B, W, tuple(proj[ib[b]] for b in range(B.ground)))

        def copair(u, v):
            if u.dom != A or v.dom != B or u.cod != v.cod:
                return None
            table = [None] * wsizeq
            for a in range(A.ground):
                c, val = i1.table[a], u.table[a]
                if table[c] is not None and table[c] != val:
                    return None
                table[c] = val
            for b in range(B.ground):
                c, val = i2.table[b], v.table[b]
                if table[c] is not None and table[c] != val:
                    return None
                table[c] = val
            return Morphism(W, u.cod, tuple(table))

        return PushoutData(W, i1, i2, copair)


def _relabel_mask(mask, perm):
    out = 0
    for i, p in enumerate(perm):
        if mask >> i & 1:
            out |= 1 << p
    return out


@functools.lru_cache(maxsize=None)
def all_closure_spaces(ground):
    """All labeled closure spaces on the given ground set."""
    full = (1 << ground) - 1
    others = [m for m in range(full)]
    out = []
    for picks in range(1 << len(others)):
        flats = [full] + [m for i, m in enumerate(others) if picks >> i & 1]
        fs = set(flats)
        if all(a & b in fs for a in flats for b in flats):
            out.append(ClosureSpace(ground, tuple(sorted(fs))))
    return tuple(out)


@functools.lru_cache(maxsize=None)
def all_pointed_closure_spaces(ground):
    return tuple(s for s in all_closure_spaces(ground) if is_pointed(s))


def closure_category(matroids_only=False):
    return ClosureCategory(matroids_only=matroids_only)

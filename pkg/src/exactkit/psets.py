"""Finite pointed sets, their strict subcategory, duality, smash product,
and pointed-monoid actions.

Carriers are 0..n with base element 0.  A map is strict when it is
injective away from the preimage of 0; strict maps are the partial
bijections and form a subcategory with its own duality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (CategoryError, Mismatch, Morphism, PullbackData,
                   PushoutData, TableCategory)
from .util import UnionFind, perms_fixing_zero, quotient_map, relabel_table


class NotStrict(CategoryError):
    pass


class InvalidAction(CategoryError):
    pass


@dataclass(frozen=True, order=True)
class PSet:
    """Pointed set with carrier 0..n and base point 0."""
    n: int

    @property
    def size(self):
        return self.n + 1

    @classmethod
    def of_size(cls, size):
        if size < 1:
            raise ValueError("a pointed set has at least the base point")
        return cls(size - 1)


ZERO = PSet(0)
ONE = PSet(1)


def pset_map(dom, cod, table):
    table = tuple(table)
    if len(table) != dom.size or table[0] != 0 or any(
            v < 0 or v >= cod.size for v in table):
        raise Mismatch(f"not a pointed map {dom.size}->{cod.size}: {table}")
    return Morphism(dom, cod, table)


def domain_of_definition(f):
    """Indices where f is nonzero, plus nothing else: dom(f) = X \\ f^-1(0)."""
    return tuple(i for i, v in enumerate(f.table) if v != 0)


def pset_is_strict(f):
    """Strict iff injective on the domain of definition."""
    seen = set()
    for i in domain_of_definition(f):
        v = f.table[i]
        if v in seen:
            return False
        seen.add(v)
    return True


def pset_ker_coker(f):
    """Kernel inclusion of f^-1(0) and cokernel projection onto Y/f(X).

    Quotient renumbering keeps the smallest surviving index first after
    the base class.
    """
    members = tuple(i for i, v in enumerate(f.table) if v == 0)
    K = PSet(len(members) - 1)
    ker = Morphism(K, f.dom, members)

    image = set(f.table)
    survivors = [y for y in range(f.cod.size) if y not in image]
    C = PSet(len(survivors))
    index = {y: j + 1 for j, y in enumerate(survivors)}
    coker = Morphism(f.cod, C,
                     tuple(index.get(y, 0) for y in range(f.cod.size)))
    return ker, coker


def pset_dual(f):
    """Dual of a strict map: y maps to its unique preimage when y is a
    nonzero value of f, and to 0 otherwise.  Satisfies dual(dual(f)) = f.
    """
    if not pset_is_strict(f):
        raise NotStrict("dual is defined for strict maps only")
    back = {f.table[i]: i for i in domain_of_definition(f)}
    return Morphism(f.cod, f.dom,
                    tuple(back.get(y, 0) for y in range(f.cod.size)))


def pset_smash(X, Y):
    """Smash product: nonzero pairs plus a base point.

    Returns (S, pairs) where pairs[k-1] is the (x, y) named by index k.
    """
    pairs = tuple((x, y)
                  for x in range(1, X.size) for y in range(1, Y.size))
    return PSet(len(pairs)), pairs


def smash_index(X, Y):
    _, pairs = pset_smash(X, Y)
    return {p: k + 1 for k, p in enumerate(pairs)}


@dataclass(frozen=True)
class ProductData:
    obj: PSet
    p1: Morphism
    p2: Morphism
    index: dict


@dataclass(frozen=True)
class CoproductData:
    obj: PSet
    i1: Morphism
    i2: Morphism


def pset_product(X, Y):
    pairs = [(x, y) for x in range(X.size) for y in range(Y.size)]
    P = PSet(len(pairs) - 1)
    index = {p: k for k, p in enumerate(pairs)}
    p1 = Morphism(P, X, tuple(p[0] for p in pairs))
    p2 = Morphism(P, Y, tuple(p[1] for p in pairs))
    return ProductData(P, p1, p2, index)


def pset_coproduct(X, Y):
    """Wedge: disjoint union with the two base points identified."""
    C = PSet(X.size + Y.size - 2)
    i1 = Morphism(X, C, tuple(range(X.size)))
    i2 = Morphism(Y, C, (0,) + tuple(range(X.size, C.size)))
    return CoproductData(C, i1, i2)


def pset_prod_coprod(X, Y):
    return pset_product(X, Y), pset_coproduct(X, Y)


class PSetCategory(TableCategory):
    """Finite pointed sets, optionally restricted to strict maps."""

    def __init__(self, strict_only=False):
        super().__init__()
        self.strict_only = strict_only
        self.name = "psets-strict" if strict_only else "psets"

    def objects(self, bound):
        return [PSet(n) for n in range(bound)]

    def size(self, X):
        return X.size

    def iso_key(self, X):
        return str(X.size)

    @property
    def zero_object(self):
        return ZERO

    def is_valid_morphism(self, X, Y, table):
        if table[0] != 0:
            return False
        if self.strict_only:
            seen = set()
            for v in table:
                if v != 0:
                    if v in seen:
                        return False
                    seen.add(v)
        return True

    def kernel(self, f):
        return pset_ker_coker(f)[0]

    def cokernel(self, f):
        return pset_ker_coker(f)[1]

    def canonical_pullback(self, f, g):
        if f.cod != g.cod:
            raise Mismatch("pullback: codomains differ")
        pairs = [(x, y) for x in range(f.dom.size) for y in range(g.dom.size)
                 if f.table[x] == g.table[y]]
        P = PSet(len(pairs) - 1)
        index = {p: k for k, p in enumerate(pairs)}
        p1 = Morphism(P, f.dom, tuple(p[0] for p in pairs))
        p2 = Morphism(P, g.dom, tuple(p[1] for p in pairs))

        def pair(a, b):
            if a.dom != b.dom:
                return None
            try:
                table = tuple(index[(a.table[u], b.table[u])]
                              for u in range(a.dom.size))
            except KeyError:
                return None
            return Morphism(a.dom, P, table)

        return PullbackData(P, p1, p2, pair)

    def canonical_pushout(self, f, g):
        """Pushout of the span (f: X -> A, g: X -> B): wedge mod f(x) ~ g(x)."""
        if f.dom != g.dom:
            raise Mismatch("pushout: domains differ")
        A, B = f.cod, g.cod
        wedge = pset_coproduct(A, B)
        uf = UnionFind(wedge.obj.size)
        for x in range(f.dom.size):
            uf.union(wedge.i1.table[f.table[x]], wedge.i2.table[g.table[x]])
        proj, classes = quotient_map(uf.representatives())
        W = PSet(len(classes) - 1)
        i1 = Morphism(A, W, tuple(proj[wedge.i1.table[a]] for a in range(A.size)))
        i2 = Morphism(B, W, tuple(proj[wedge.i2.table[b]] for b in range(B.size)))

        def copair(u, v):
            if u.dom != A or v.dom != B or u.cod != v.cod:
                return None
            table = [None] * W.size
            for a in range(A.size):
                c, val = i1.table[a], u.table[a]
                if table[c] is not None and table[c] != val:
                    return None
                table[c] = val
            for b in range(B.size):
                c, val = i2.table[b], v.table[b]
                if table[c] is not None and table[c] != val:
                    return None
                table[c] = val
            return Morphism(W, u.cod, tuple(table))

        return PushoutData(W, i1, i2, copair)


def pset_category(strict_only=False):
    return PSetCategory(strict_only=strict_only)


@dataclass(frozen=True, order=True)
class FinPointedMonoid:
    """Finite monoid with an absorbing zero at index 0 and identity at 1."""
    mul: tuple

    @property
    def size(self):
        return len(self.mul)

    def __post_init__(self):
        n = self.size
        for a in range(n):
            if self.mul[a][0] != 0 or self.mul[0][a] != 0:
                raise InvalidAction("0 must be absorbing")
            if n > 1 and (self.mul[a][1] != a or self.mul[1][a] != a):
                raise InvalidAction("1 must be the identity")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.mul[self.mul[a][b]][c] != self.mul[a][self.mul[b][c]]:
                        raise InvalidAction("multiplication not associative")


def mu_monoid(r):
    """The pointed monoid on the r-th roots of unity: 0, 1, z, ..., z^(r-1)."""
    size = r + 1
    mul = [[0] * size for _ in range(size)]
    for a in range(r):
        for b in range(r):
            mul[1 + a][1 + b] = 1 + (a + b) % r
    return FinPointedMonoid(tuple(tuple(row) for row in mul))


def trivial_pointed_monoid():
    return mu_monoid(1)


@dataclass(frozen=True, order=True)
class GSet:
    """Pointed set with an action of a fixed pointed monoid.

    action[g] is the table of g acting on the carrier; action[0] is the
    constant zero map and action[1] the identity.
    """
    size: int
    action: tuple


def make_gset(monoid, size, action):
    action = tuple(tuple(row) for row in action)
    if len(action) != monoid.size or any(len(row) != size for row in action):
        raise InvalidAction("action table has wrong shape")
    if action[0] != (0,) * size:
        raise InvalidAction("0 must act as the zero map")
    if monoid.size > 1 and action[1] != tuple(range(size)):
        raise InvalidAction("1 must act as the identity")
    for row in action:
        if row[0] != 0:
            raise InvalidAction("the base point must be fixed")
    for g in range(monoid.size):
        for h in range(monoid.size):
            gh = monoid.mul[g][h]
            for x in range(size):
                if action[gh][x] != action[g][action[h][x]]:
                    raise InvalidAction("action not associative")
    return GSet(size, action)


class GSetCategory(TableCategory):
    """Pointed sets with an action of a fixed pointed monoid.

    Kernels and cokernels are computed on underlying pointed sets and
    re-equipped with the induced action.
    """

    def __init__(self, monoid):
        super().__init__()
        self.monoid = monoid
        self.name = f"gset{monoid.size - 1}"
        self._objects_cache = {}

    def objects(self, bound):
        if bound not in self._objects_cache:
            seen = {}
            for size in range(1, bound + 1):
                for obj in self._all_actions(size):
                    key = self._canonical(obj)
                    if key not in seen:
                        seen[key] = obj
            self._objects_cache[bound] = sorted(seen.values())
        return list(self._objects_cache[bound])

    def _all_actions(self, size):
        free = range(2, self.monoid.size)
        zero_row = (0,) * size
        ident = tuple(range(size))
        tables = [[zero_row, ident][:self.monoid.size]]
        for _ in free:
            tables = [t + [(0,) + rest]
                      for t in tables
                      for rest in itertools.product(range(size), repeat=size - 1)]
        for action in tables:
            try:
                yield make_gset(self.monoid, size, action)
            except InvalidAction:
                continue

    def _canonical(self, obj):
        best = None
        for perm in perms_fixing_zero(obj.size):
            cand = tuple(relabel_table(row, perm) for row in obj.action)
            if best is None or cand < best:
                best = cand
        return (obj.size, best)

    def size(self, X):
        return X.size

    def iso_key(self, X):
        size, action = self._canonical(X)
        return f"{size}:{action}"

    @property
    def zero_object(self):
        return make_gset(self.monoid, 1, ((0,),) * self.monoid.size)

    def is_valid_morphism(self, X, Y, table):
        if table[0] != 0:
            return False
        for g in range(self.monoid.size):
            ax, ay = X.action[g], Y.action[g]
            for x in range(X.size):
                if table[ax[x]] != ay[table[x]]:
                    return False
        return True

    def _sub_gset(self, Y, members):
        index = {y: i for i, y in enumerate(members)}
        action = tuple(tuple(index[row[y]] for y in members) for row in Y.action)
        return GSet(len(members), action)

    def kernel(self, f):
        members = tuple(i for i, v in enumerate(f.table) if v == 0)
        K = self._sub_gset(f.dom, members)
        return Morphism(K, f.dom, members)

    def cokernel(self, f):
        image = set(f.table)
        Y = f.cod
        survivors = [y for y in range(Y.size) if y not in image]
        proj = {y: 0 for y in image}
        proj.update({y: j + 1 for j, y in enumerate(survivors)})
        table = tuple(proj[y] for y in range(Y.size))
        action = tuple(
            tuple(table[row[y]] for y in [0] + survivors) for row in Y.action)
        C = GSet(len(survivors) + 1, action)
        return Morphism(Y, C, table)

    def canonical_pullback(self, f, g):
        if f.cod != g.cod:
            raise Mismatch("pullback: codomains differ")
        pairs = [(x, y) for x in range(f.dom.size) for y in range(g.dom.size)
                 if f.table[x] == g.table[y]]
        index = {p: k for k, p in enumerate(pairs)}
        action = tuple(
            tuple(index[(ax[p[0]], ay[p[1]])] for p in pairs)
            for ax, ay in zip(f.dom.action, g.dom.action))
        P = GSet(len(pairs), action)
        p1 = Morphism(P, f.dom, tuple(p[0] for p in pairs))
        p2 = Morphism(P, g.dom, tuple(p[1] for p in pairs))

        def pair(a, b):
            if a.dom != b.dom:
                return None
            try:
                table = tuple(index[(a.table[u], b.table[u])]
                              for u in range(a.dom.size))
            except KeyError:
                return None
            return Morphism(a.dom, P, table)

        return PullbackData(P, p1, p2, pair)

    def canonical_pushout(self, f, g):
        from .util import generate_congruence
        if f.dom != g.dom:
            raise Mismatch("pushout: domains differ")
        A, B = f.cod, g.cod
        wsize = A.size + B.size - 1
        ia = tuple(range(A.size))
        ib = (0,) + tuple(range(A.size, wsize))
        waction = []
        for rowa, rowb in zip(A.action, B.action):
            row = [0] * wsize
            for a in range(A.size):
                row[ia[a]] = ia[rowa[a]]
            for b in range(B.size):
                row[ib[b]] = ib[rowb[b]]
            waction.append(tuple(row))
        pairs = [(ia[f.table[x]], ib[g.table[x]]) for x in range(f.dom.size)]
        rep = generate_congruence(wsize, pairs, [(1, row) for row in waction])
        proj, classes = quotient_map(rep)
        action = tuple(tuple(proj[row[cls[0]]] for cls in classes)
                       for row in waction)
        W = GSet(len(classes), action)
        i1 = Morphism(A, W, tuple(proj[ia[a]] for a in range(A.size)))
        i2 = Morphism(B, W, tuple(proj[ib[b]] for b in range(B.size)))

        def copair(u, v):
            if u.dom != A or v.dom != B or u.cod != v.cod:
                return None
            table = [None] * W.size
            for a in range(A.size):
                c, val = i1.table[a], u.table[a]
                if table[c] is not None and table[c] != val:
                    return None
                table[c] = val
            for b in range(B.size):
                c, val = i2.table[b], v.table[b]
                if table[c] is not None and table[c] != val:
                    return None
                table[c] = val
            return Morphism(W, u.cod, tuple(table))

        return PushoutData(W, i1, i2, copair)


def gset_category(monoid):
    return GSetCategory(monoid)

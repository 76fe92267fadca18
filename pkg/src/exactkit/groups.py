"""Finite groups as a pointed category instance: the negative control.

Kernels are the usual ones; the cokernel of f is the quotient by the
normal closure of the image.  Strict monos are exactly embeddings onto
normal subgroups, and those do not compose: a chain of two normal
inclusions whose composite is not normal shows up at order 8 already,
so the strict-composition suite fails with an explicit witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Mismatch, Morphism, PullbackData, TableCategory
from .util import perms_fixing_zero, quotient_map, relabel_binary


@dataclass(frozen=True, order=True)
class Group:
    """Finite group on 0..n-1 with identity 0."""
    mul: tuple

    @property
    def order(self):
        return len(self.mul)

    def inv(self, a):
        return self.mul[a].index(0)


def cyclic(n):
    return Group(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)))


def direct_product(G, H):
    pairs = [(a, b) for a in range(G.order) for b in range(H.order)]
    index = {p: k for k, p in enumerate(pairs)}
    mul = tuple(
        tuple(index[(G.mul[p[0]][q[0]], H.mul[p[1]][q[1]])] for q in pairs)
        for p in pairs)
    return Group(mul)


def dihedral(n):
    """Symmetries of the regular n-gon, order 2n; element (i, j) is
    rotation^i reflection^j, encoded as 2*i + j."""
    def enc(i, j):
        return 2 * (i % n) + (j % 2)

    mul = [[0] * (2 * n) for _ in range(2 * n)]
    for i1 in range(n):
        for j1 in range(2):
            for i2 in range(n):
                for j2 in range(2):
                    i = i1 + (i2 if j1 == 0 else -i2)
                    mul[enc(i1, j1)][enc(i2, j2)] = enc(i, j1 + j2)
    return Group(tuple(tuple(r) for r in mul))


def quaternion8():
    """Unit quaternions: 1, -1, i, -i, j, -j, k, -k."""
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    base = {("1", "1"): ("1", 1), ("i", "i"): ("1", -1), ("j", "j"): ("1", -1),
            ("k", "k"): ("1", -1), ("i", "j"): ("k", 1), ("j", "i"): ("k", -1),
            ("j", "k"): ("i", 1), ("k", "j"): ("i", -1), ("k", "i"): ("j", 1),
            ("i", "k"): ("j", -1)}

    def split(x):
        return (x[1:], -1) if x.startswith("-") else (x, 1)

    def mul_names(x, y):
        bx, sx = split(x)
        by, sy = split(y)
        if bx == "1":
            bz, sz = by, 1
        elif by == "1":
            bz, sz = bx, 1
        else:
            bz, sz = base[(bx, by)]
        s = sx * sy * sz
        return bz if s == 1 else "-" + bz

    idx = {n: i for i, n in enumerate(names)}
    return Group(tuple(tuple(idx[mul_names(a, b)] for b in names)
                       for a in names))


def groups_demo_objects():
    """One representative per isomorphism class of groups of order <= 8."""
    c2 = cyclic(2)
    return [
        cyclic(1), c2, cyclic(3), cyclic(4), direct_product(c2, c2),
        cyclic(5), cyclic(6), dihedral(3), cyclic(7), cyclic(8),
        direct_product(cyclic(4), c2), direct_product(direct_product(c2, c2), c2),
        dihedral(4), quaternion8(),
    ]


class GroupCategory(TableCategory):

    name = "groups-demo"

    def __init__(self):
        super().__init__()
        self._canon_cache = {}
        self._objects = sorted(groups_demo_objects(),
                               key=lambda g: (g.order, self._canonical(g)))

    def objects(self, bound):
        return [g for g in self._objects if g.order <= bound]

    def _canonical(self, g):
        cached = self._canon_cache.get(g)
        if cached is None:
            cached = min(relabel_binary(g.mul, perm)
                         for perm in perms_fixing_zero(g.order))
            self._canon_cache[g] = cached
        return cached

    def size(self, X):
        return X.order

    def iso_key(self, X):
        flat = ",".join(str(v) for row in self._canonical(X) for v in row)
        return f"{X.order}:{flat}"

    @property
    def zero_object(self):
        return cyclic(1)

    def is_valid_morphism(self, X, Y, table):
        return table[0] == 0 and all(
            table[X.mul[a][b]] == Y.mul[table[a]][table[b]]
            for a in range(X.order) for b in range(X.order))

    def hom(self, X, Y):
        key = (X, Y)
        cached = self._hom_cache.get(key)
        if cached is not None:
            return list(cached)
        n = X.order
        forced = [None] * n
        for k in range(n):
            for a in range(1, k):
                for b in range(1, k):
                    if X.mul[a][b] == k:
                        forced[k] = (a, b)
                        break
                if forced[k]:
                    break
        out = []
        table = [0] * n

        def extend(k):
            if k == n:
                out.append(Morphism(X, Y, tuple(table)))
                return
            if forced[k]:
                a, b = forced[k]
                v = Y.mul[table[a]][table[b]]
                if self._consistent(X, Y, table, k, v):
                    table[k] = v
                    extend(k + 1)
                    table[k] = 0
                return
            for v in range(Y.order):
                if self._consistent(X, Y, table, k, v):
                    table[k] = v
                    extend(k + 1)
                    table[k] = 0

        extend(1)
        self._hom_cache[key] = out
        return list(out)

    @staticmethod
    def _consistent(X, Y, table, k, v):
        for a in range(k):
            p = X.mul[a][k]
            if p < k and Y.mul[table[a]][v] != table[p]:
                return False
            q = X.mul[k][a]
            if q < k and Y.mul[v][table[a]] != table[q]:
                return False
        p = X.mul[k][k]
        if p < k and Y.mul[v][v] != table[p]:
            return False
        return True

    def _subgroup(self, G, members):
        members = tuple(sorted(members))
        index = {g: i for i, g in enumerate(members)}
        mul = tuple(tuple(index[G.mul[a][b]] for b in members) for a in members)
        return Group(mul), members

    def kernel(self, f):
        members = [a for a, v in enumerate(f.table) if v == 0]
        K, members = self._subgroup(f.dom, members)
        return Morphism(K, f.dom, members)

    def normal_closure(self, G, subset):
        conj = set()
        for s in subset:
            for g in range(G.order):
                conj.add(G.mul[G.mul[g][s]][G.inv(g)])
        members = set(conj) | {0}
        grown = True
        while grown:
            grown = False
            for a in list(members):
                for b in list(members):
                    v = G.mul[a][b]
                    if v not in members:
                        members.add(v)
                        grown = True
        return frozenset(members)

    def cokernel(self, f):
        G = f.cod
        N = self.normal_closure(G, set(f.table))
        rep = []
        coset_index = {}
        for g in range(G.order):
            coset = frozenset(G.mul[g][n] for n in N)
            rep.append(coset_index.setdefault(coset, min(coset)))
        proj, classes = quotient_map(tuple(rep))
        reps = [cls[0] for cls in classes]
        mul = tuple(tuple(proj[G.mul[a][b]] for b in reps) for a in reps)
        return Morphism(G, Group(mul), proj)

    def canonical_pullback(self, f, g):
        if f.cod != g.cod:
            raise Mismatch("pullback: codomains differ")
        X, Yp = f.dom, g.dom
        pairs = [(x, y) for x in range(X.order) for y in range(Yp.order)
                 if f.table[x] == g.table[y]]
        index = {p: k for k, p in enumerate(pairs)}
        mul = tuple(
            tuple(index[(X.mul[p[0]][q[0]], Yp.mul[p[1]][q[1]])] for q in pairs)
            for p in pairs)
        P = Group(mul)
        p1 = Morphism(P, X, tuple(p[0] for p in pairs))
        p2 = Morphism(P, Yp, tuple(p[1] for p in pairs))

        def pair(a, b):
            if a.dom != b.dom:
                return None
            try:
                table = tuple(index[(a.table[u], b.table[u])]
                              for u in range(a.dom.order))
            except KeyError:
                return None
            return Morphism(a.dom, P, table)

        return PullbackData(P, p1, p2, pair)


def groups_demo_category():
    return GroupCategory()

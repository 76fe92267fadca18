"""Shared helpers: union-find partitions, congruence closure, relabelings."""

from __future__ import annotations

import itertools


class UnionFind:
    """Union-find over range(size) with deterministic minimum-element roots."""

    def __init__(self, size):
        self.parent = list(range(size))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra > rb:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def representatives(self):
        """rep[i] = smallest element equivalent to i."""
        n = len(self.parent)
        root_min = {}
        for i in range(n):
            r = self.find(i)
            if r not in root_min or i < root_min[r]:
                root_min[r] = i
        return tuple(root_min[self.find(i)] for i in range(n))


def generate_congruence(size, pairs, ops=()):
    """Least equivalence on range(size) containing `pairs` and compatible
    with the given operations.

    ops: iterable of (arity, table); table is nested tuples for arity 2,
    a flat tuple for arity 1, an element for arity 0.  Runs the merge
    fixpoint until no operation maps equivalent tuples to inequivalent
    results.  Returns rep tuple with minimum-element class labels.
    """
    uf = UnionFind(size)
    for a, b in pairs:
        uf.union(a, b)
    ops = [(ar, tb) for ar, tb in ops if ar > 0]
    changed = True
    while changed:
        changed = False
        for arity, table in ops:
            if arity == 1:
                for a in range(size):
                    for b in range(a + 1, size):
                        if uf.find(a) == uf.find(b) and uf.union(table[a], table[b]):
                            changed = True
            elif arity == 2:
                for a in range(size):
                    for b in range(size):
                        fa, fb = uf.find(a), uf.find(b)
                        for c in range(size):
                            if uf.find(c) == fa and uf.union(table[a][b], table[c][b]):
                                changed = True
                            if uf.find(c) == fb and uf.union(table[a][b], table[a][c]):
                                changed = True
            else:
                for tup in itertools.product(range(size), repeat=arity):
                    for i in range(arity):
                        for c in range(size):
                            if uf.find(c) == uf.find(tup[i]):
                                other = tup[:i] + (c,) + tup[i + 1:]
                                va = _op_value(table, tup)
                                vb = _op_value(table, other)
                                if uf.union(va, vb):
                                    changed = True
    return uf.representatives()


def _op_value(table, tup):
    v = table
    for i in tup:
        v = v[i]
    return v


def quotient_map(rep):
    """Renumber classes of a rep tuple by their minimum element.

    Returns (proj, classes): proj[i] is the new index of i's class and
    classes[j] lists the old elements of new class j, ascending.
    """
    mins = sorted(set(rep))
    index = {m: j for j, m in enumerate(mins)}
    proj = tuple(index[r] for r in rep)
    classes = tuple(tuple(i for i in range(len(rep)) if proj[i] == j)
                    for j in range(len(mins)))
    return proj, classes


def perms_fixing_zero(n):
    """All permutations of range(n) with p[0] = 0."""
    for rest in itertools.permutations(range(1, n)):
        yield (0,) + rest


def relabel_table(table, perm):
    """Conjugate a unary table by a permutation: perm o table o perm^-1."""
    n = len(table)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(perm[table[inv[i]]] for i in range(n))


def relabel_binary(table, perm):
    n = len(table)
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(tuple(perm[table[inv[i]][inv[j]]] for j in range(n))
                 for i in range(n))

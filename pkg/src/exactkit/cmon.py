"""Finite commutative monoids, congruences and saturations, modules over
finite semirings, and congruence generation for finite algebras.

The quotient of a monoid Y by a submonoid X uses the one-step relation
y1 ~ y2 iff y1 + x1 = y2 + x2 for some x1, x2 in X; this relation is
already an equivalence (transitivity follows from closure of X under
addition) and is the least congruence containing X x X.  The saturation
of X is the class of 0.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass

from .core import (CategoryError, Mismatch, Morphism, PullbackData,
                   PushoutData, TableCategory)
from .util import (generate_congruence, perms_fixing_zero, quotient_map,
                   relabel_binary)


class NotASubmonoid(CategoryError):
    pass


class NotAHomomorphism(CategoryError):
    pass


class InvalidModule(CategoryError):
    pass


class InvalidSemiring(CategoryError):
    pass


@dataclass(frozen=True, order=True)
class CMon:
    """Commutative monoid on 0..order-1 written additively, zero at 0."""
    add: tuple

    @property
    def order(self):
        return len(self.add)


def make_cmon(add):
    add = tuple(tuple(row) for row in add)
    n = len(add)
    for a in range(n):
        if add[0][a] != a or add[a][0] != a:
            raise InvalidSemiring("0 must be neutral")
        for b in range(n):
            if add[a][b] != add[b][a]:
                raise InvalidSemiring("addition must be commutative")
            for c in range(n):
                if add[add[a][b]][c] != add[a][add[b][c]]:
                    raise InvalidSemiring("addition must be associative")
    return CMon(add)


@functools.lru_cache(maxsize=None)
def all_cmons(order):
    """All commutative monoid tables of the given order, up to iso."""
    if order == 1:
        return (CMon(((0,),)),)
    cells = [(a, b) for a in range(1, order) for b in range(a, order)]
    found = {}
    for values in itertools.product(range(order), repeat=len(cells)):
        add = [[0] * order for _ in range(order)]
        for a in range(order):
            add[0][a] = add[a][0] = a
        for (a, b), v in zip(cells, values):
            add[a][b] = add[b][a] = v
        try:
            m = make_cmon(add)
        except InvalidSemiring:
            continue
        key = canonical_cmon_key(m)
        if key not in found:
            found[key] = m
    return tuple(sorted(found.values()))


def canonical_cmon_key(m):
    return min(relabel_binary(m.add, perm)
               for perm in perms_fixing_zero(m.order))


def submonoid_closure(m, subset):
    """Smallest submonoid of m containing the subset."""
    members = set(subset) | {0}
    grown = True
    while grown:
        grown = False
        for a in list(members):
            for b in list(members):
                v = m.add[a][b]
                if v not in members:
                    members.add(v)
                    grown = True
    return frozenset(members)


def is_submonoid(m, subset):
    return 0 in subset and all(
        m.add[a][b] in subset for a in subset for b in subset)


@dataclass(frozen=True)
class Congruence:
    """Partition of range(size), rep[i] = smallest element of i's class."""
    rep: tuple

    @property
    def size(self):
        return len(self.rep)

    def same(self, a, b):
        return self.rep[a] == self.rep[b]

    def blocks(self):
        return quotient_map(self.rep)[1]

    def block_of(self, a):
        r = self.rep[a]
        return frozenset(i for i in range(self.size) if self.rep[i] == r)


def cmon_congruence(Y, X):
    """Congruence on Y generated by a submonoid X: y1 ~ y2 iff
    y1 + x1 = y2 + x2 for some x1, x2 in X.
    """
    X = frozenset(X)
    if not is_submonoid(Y, X):
        raise NotASubmonoid(f"{sorted(X)} is not a submonoid")
    shifted = []
    for y in range(Y.order):
        shifted.append(frozenset(Y.add[y][x] for x in X))
    rep = []
    for y in range(Y.order):
        r = y
        for z in range(y):
            if shifted[y] & shifted[z]:
                r = rep[z]
                break
        rep.append(r)
    return Congruence(tuple(rep))


def cmon_saturation(Y, X):
    """Saturation of a submonoid: the congruence class of 0."""
    return cmon_congruence(Y, X).block_of(0)


def is_saturated(Y, X):
    return frozenset(X) == cmon_saturation(Y, X)


def quotient_cmon(Y, cong):
    """Quotient monoid and projection table for a compatible congruence."""
    proj, classes = quotient_map(cong.rep)
    reps = [cls[0] for cls in classes]
    add = tuple(tuple(proj[Y.add[a][b]] for b in reps) for a in reps)
    return CMon(add), proj


def is_cmon_hom(X, Y, table):
    return table[0] == 0 and all(
        table[X.add[a][b]] == Y.add[table[a]][table[b]]
        for a in range(X.order) for b in range(X.order))


def sub_cmon(Y, members):
    members = tuple(sorted(members))
    index = {y: i for i, y in enumerate(members)}
    add = tuple(tuple(index[Y.add[a][b]] for b in members) for a in members)
    return CMon(add), members


def cmon_ker_coker(f):
    """Kernel inclusion, cokernel projection, plus the image/coimage data.

    Returns (ker, coker) as morphisms; the image object is the
    saturation of f(X) and the coimage the quotient by f^-1(0), both
    recoverable through the category instance.
    """
    X, Y = f.dom, f.cod
    if not is_cmon_hom(X, Y, f.table):
        raise NotAHomomorphism("not a monoid homomorphism")
    members = tuple(i for i, v in enumerate(f.table) if v == 0)
    K, _ = sub_cmon(X, members)
    ker = Morphism(K, X, members)

    image = frozenset(f.table)
    C, proj = quotient_cmon(Y, cmon_congruence(Y, image))
    coker = Morphism(Y, C, proj)
    return ker, coker


@dataclass(frozen=True)
class FinAlgebra:
    """Finite algebra: carrier 0..size-1 with a finite list of operation
    tables (arity, table)."""
    size: int
    ops: tuple


def cmon_algebra(m):
    return FinAlgebra(m.order, ((2, m.add),))


def talg_congruence_generate(algebra, pairs):
    """Least congruence of a finite algebra containing the given pairs.

    Union-find fixpoint: merge operation values of componentwise-merged
    tuples until stable.
    """
    rep = generate_congruence(algebra.size, pairs, algebra.ops)
    return Congruence(rep)


class CMonCategory(TableCategory):
    """Finite commutative monoids and homomorphisms."""

    name = "cmon"

    def __init__(self):
        super().__init__()
        self._objects_cache = {}

    def objects(self, bound):
        if bound not in self._objects_cache:
            objs = []
            for order in range(1, bound + 1):
                objs.extend(all_cmons(order))
            self._objects_cache[bound] = objs
        return list(self._objects_cache[bound])

    def size(self, X):
        return X.order

    def iso_key(self, X):
        key = canonical_cmon_key(X)
        flat = "".join(str(v) for row in key for v in row)
        return f"{X.order}:{flat}"

    @property
    def zero_object(self):
        return CMon(((0,),))

    def is_valid_morphism(self, X, Y, table):
        return is_cmon_hom(X, Y, table)

    def kernel(self, f):
        return cmon_ker_coker(f)[0]

    def cokernel(self, f):
        return cmon_ker_coker(f)[1]

    def canonical_pullback(self, f, g):
        if f.cod != g.cod:
            raise Mismatch("pullback: codomains differ")
        X, Yp = f.dom, g.dom
        pairs = [(x, y) for x in range(X.order) for y in range(Yp.order)
                 if f.table[x] == g.table[y]]
        index = {p: k for k, p in enumerate(pairs)}
        add = tuple(
            tuple(index[(X.add[a[0]][b[0]], Yp.add[a[1]][b[1]])] for b in pairs)
            for a in pairs)
        P = CMon(add)
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

    def canonical_pushout(self, f, g):
        """Pushout of a span: the direct sum modulo (f(x), 0) ~ (0, g(x))."""
        if f.dom != g.dom:
            raise Mismatch("pushout: domains differ")
        A, B = f.cod, g.cod
        pairs = [(a, b) for a in range(A.order) for b in range(B.order)]
        index = {p: k for k, p in enumerate(pairs)}
        add = tuple(
            tuple(index[(A.add[p[0]][q[0]], B.add[p[1]][q[1]])] for q in pairs)
            for p in pairs)
        gens = [(index[(f.table[x], 0)], index[(0, g.table[x])])
                for x in range(f.dom.order)]
        rep = generate_congruence(len(pairs), gens, ((2, add),))
        proj, classes = quotient_map(rep)
        reps = [cls[0] for cls in classes]
        qadd = tuple(tuple(proj[add[a][b]] for b in reps) for a in reps)
        W = CMon(qadd)
        i1 = Morphism(A, W, tuple(proj[index[(a, 0)]] for a in range(A.order)))
        i2 = Morphism(B, W, tuple(proj[index[(0, b)]] for b in range(B.order)))

        def copair(u, v):
            if u.dom != A or v.dom != B or u.cod != v.cod:
                return None
            V = u.cod
            table = []
            for cls in classes:
                a, b = pairs[cls[0]]
                val = V.add[u.table[a]][v.table[b]]
                for other in cls[1:]:
                    a2, b2 = pairs[other]
                    if V.add[u.table[a2]][v.table[b2]] != val:
                        return None
                table.append(val)
            return Morphism(W, V, tuple(table))

        return PushoutData(W, i1, i2, copair)


def cmon_category():
    return CMonCategory()


@dataclass(frozen=True, order=True)
class Semiring:
    """Finite semiring: (add, 0) a commutative monoid, (mul, one) a
    monoid, distributivity, and 0 absorbing for multiplication."""
    add: tuple
    mul: tuple
    one: int

    @property
    def order(self):
        return len(self.add)


def make_semiring(add, mul, one):
    m = make_cmon(add)
    add, mul = m.add, tuple(tuple(row) for row in mul)
    n = len(add)
    for a in range(n):
        if mul[a][one] != a or mul[one][a] != a:
            raise InvalidSemiring("one must be the multiplicative identity")
        if mul[a][0] != 0 or mul[0][a] != 0:
            raise InvalidSemiring("0 must be absorbing")
        for b in range(n):
            for c in range(n):
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    raise InvalidSemiring("multiplication not associative")
                if mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]]:
                    raise InvalidSemiring("left distributivity fails")
                if mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]]:
                    raise InvalidSemiring("right distributivity fails")
    return Semiring(add, mul, one)


def boolean_semiring():
    """B = {0, 1} with 1 + 1 = 1."""
    return make_semiring(((0, 1), (1, 1)), ((0, 0), (0, 1)), 1)


def f2_semiring():
    return make_semiring(((0, 1), (1, 0)), ((0, 0), (0, 1)), 1)


def trivial_semiring():
    return make_semiring(((0,),), ((0,),), 0)


@dataclass(frozen=True, order=True)
class SModule:
    """Module over a fixed finite semiring: additive monoid plus the
    scalar action rows act[s][m]."""
    add: tuple
    act: tuple

    @property
    def order(self):
        return len(self.add)


def make_module(S, add, act):
    m = make_cmon(add)
    add = m.add
    act = tuple(tuple(row) for row in act)
    n = len(add)
    if len(act) != S.order or any(len(row) != n for row in act):
        raise InvalidModule("action table has wrong shape")
    if act[0] != (0,) * n:
        raise InvalidModule("0 must act as zero")
    if act[S.one] != tuple(range(n)):
        raise InvalidModule("1 must act as the identity")
    for s in range(S.order):
        row = act[s]
        if row[0] != 0:
            raise InvalidModule("scalars must fix 0")
        for a in range(n):
            for b in range(n):
                if row[add[a][b]] != add[row[a]][row[b]]:
                    raise InvalidModule("action not additive in the module")
        for t in range(S.order):
            if act[S.mul[s][t]] != tuple(row[act[t][a]] for a in range(n)):
                raise InvalidModule("action not multiplicative")
            if tuple(act[S.add[s][t]][a] for a in range(n)) != tuple(
                    add[row[a]][act[t][a]] for a in range(n)):
                raise InvalidModule("action not additive in scalars")
    return SModule(add, act)


class SModCategory(TableCategory):
    """Finite modules over a fixed finite semiring."""

    def __init__(self, semiring, name=None):
        super().__init__()
        self.semiring = semiring
        self.name = name or f"mod{semiring.order}"
        self._objects_cache = {}

    def objects(self, bound):
        if bound not in self._objects_cache:
            seen = {}
            for order in range(1, bound + 1):
                for mod in self._all_modules(order):
                    key = self._canonical(mod)
                    if key not in seen:
                        seen[key] = mod
            self._objects_cache[bound] = sorted(seen.values())
        return list(self._objects_cache[bound])

    def _all_modules(self, order):
        S = self.semiring
        free = [s for s in range(S.order) if s not in (0, S.one)]
        for m in all_cmons(order):
            rows = {0: (0,) * order, S.one: tuple(range(order))}
            if not free:
                try:
                    yield make_module(S, m.add, self._rows_tuple(rows))
                except InvalidModule:
                    pass
                continue
            candidates = [rows | dict(zip(free, combo))
                          for combo in itertools.product(
                              [(0,) + rest for rest in itertools.product(
                                  range(order), repeat=order - 1)],
                              repeat=len(free))]
            for cand in candidates:
                try:
                    yield make_module(S, m.add, self._rows_tuple(cand))
                except InvalidModule:
                    continue

    def _rows_tuple(self, rows):
        return tuple(rows[s] for s in range(self.semiring.order))

    def _canonical(self, mod):
        best = None
        for perm in perms_fixing_zero(mod.order):
            add = relabel_binary(mod.add, perm)
            act = tuple(tuple(perm[row[q]] for q in _inverse(perm))
                        for row in mod.act)
            cand = (add, act)
            if best is None or cand < best:
                best = cand
        return best

    def size(self, X):
        return X.order

    def iso_key(self, X):
        add, act = self._canonical(X)
        return f"{X.order}:{add}:{act}"

    @property
    def zero_object(self):
        return make_module(self.semiring, ((0,),),
                           tuple((0,) for _ in range(self.semiring.order)))

    def is_valid_morphism(self, X, Y, table):
        if not is_cmon_hom(CMon(X.add), CMon(Y.add), table):
            return False
        for s in range(self.semiring.order):
            rx, ry = X.act[s], Y.act[s]
            for a in range(X.order):
                if table[rx[a]] != ry[table[a]]:
                    return False
        return True

    def _sub_module(self, Y, members):
        index = {y: i for i, y in enumerate(members)}
        add = tuple(tuple(index[Y.add[a][b]] for b in members) for a in members)
        act = tuple(tuple(index[row[a]] for a in members) for row in Y.act)
        return SModule(add, act)

    def kernel(self, f):
        members = tuple(i for i, v in enumerate(f.table) if v == 0)
        K = self._sub_module(f.dom, members)
        return Morphism(K, f.dom, members)

    def cokernel(self, f):
        Y = f.cod
        image = frozenset(f.table)
        cong = cmon_congruence(CMon(Y.add), image)
        proj, classes = quotient_map(cong.rep)
        reps = [cls[0] for cls in classes]
        add = tuple(tuple(proj[Y.add[a][b]] for b in reps) for a in reps)
        act = tuple(tuple(proj[row[a]] for a in reps) for row in Y.act)
        C = SModule(add, act)
        return Morphism(Y, C, proj)

    def canonical_pullback(self, f, g):
        if f.cod != g.cod:
            raise Mismatch("pullback: codomains differ")
        X, Yp = f.dom, g.dom
        pairs = [(x, y) for x in range(X.order) for y in range(Yp.order)
                 if f.table[x] == g.table[y]]
        index = {p: k for k, p in enumerate(pairs)}
        add = tuple(
            tuple(index[(X.add[a[0]][b[0]], Yp.add[a[1]][b[1]])] for b in pairs)
            for a in pairs)
        act = tuple(
            tuple(index[(rx[p[0]], ry[p[1]])] for p in pairs)
            for rx, ry in zip(X.act, Yp.act))
        P = SModule(add, act)
        p1 = Morphism(P, X, tuple(p[0] for p in pairs))
        p2 = Morphism(P, Yp, tuple(p[1] for p in pairs))

        def pair(a, b):
            if a.dom != b.dom:
                return None
            try:
                table = tuple(index[(a.table[u], b.table[u])]
                              for u in range(self.size(a.dom)))
            except KeyError:
                return None
            return Morphism(a.dom, P, table)

        return PullbackData(P, p1, p2, pair)

    def canonical_pushout(self, f, g):
        if f.dom != g.dom:
            raise Mismatch("pushout: domains differ")
        A, B = f.cod, g.cod
        pairs = [(a, b) for a in range(A.order) for b in range(B.order)]
        index = {p: k for k, p in enumerate(pairs)}
        add = tuple(
            tuple(index[(A.add[p[0]][q[0]], B.add[p[1]][q[1]])] for q in pairs)
            for p in pairs)
        act = tuple(
            tuple(index[(ra[p[0]], rb[p[1]])] for p in pairs)
            for ra, rb in zip(A.act, B.act))
        gens = [(index[(f.table[x], 0)], index[(0, g.table[x])])
                for x in range(self.size(f.dom))]
        ops = [(2, add)] + [(1, row) for row in act]
        rep = generate_congruence(len(pairs), gens, ops)
        proj, classes = quotient_map(rep)
        reps = [cls[0] for cls in classes]
        qadd = tuple(tuple(proj[add[a][b]] for b in reps) for a in reps)
        qact = tuple(tuple(proj[row[a]] for a in reps) for row in act)
        W = SModule(qadd, qact)
        i1 = Morphism(A, W, tuple(proj[index[(a, 0)]] for a in range(A.order)))
        i2 = Morphism(B, W, tuple(proj[index[(0, b)]] for b in range(B.order)))

        def copair(u, v):
            if u.dom != A or v.dom != B or u.cod != v.cod:
                return None
            V = u.cod
            table = []
            for cls in classes:
                a, b = pairs[cls[0]]
                val = V.add[u.table[a]][v.table[b]]
                for other in cls[1:]:
                    a2, b2 = pairs[other]
                    if V.add[u.table[a2]][v.table[b2]] != val:
                        return None
                table.append(val)
            return Morphism(W, V, tuple(table))

        return PushoutData(W, i1, i2, copair)


def _inverse(perm):
    inv = [0] * len(perm)
    for i, p in enumerate(perm):
        inv[p] = i
    return tuple(inv)


def semiring_module_category(S, name=None):
    return SModCategory(S, name=name)

"""Diagram categories: functors from a quiver's path category into a base
instance (kernels and cokernels computed componentwise), quiver
representations valued in strict pointed sets, the wedge/restriction
adjunction with modules over the pointed path semigroup, and
pre-crystals with their own kernel/cokernel constructions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import (Category, CategoryError, Mismatch, Morphism, PullbackData,
                   PushoutData, TableCategory)
from .psets import PSet, pset_category, pset_is_strict
from .util import perms_fixing_zero, relabel_table


class PathBoundExceeded(CategoryError):
    pass


class NotAPreCrystalMorphism(CategoryError):
    pass


class NotStrictArrow(CategoryError):
    pass


@dataclass(frozen=True, order=True)
class Quiver:
    vertices: int
    arrows: tuple

    def __post_init__(self):
        for s, t in self.arrows:
            if not (0 <= s < self.vertices and 0 <= t < self.vertices):
                raise Mismatch("arrow endpoints out of range")

    def is_acyclic(self):
        color = [0] * self.vertices
        out = [[] for _ in range(self.vertices)]
        for s, t in self.arrows:
            out[s].append(t)

        def dfs(v):
            color[v] = 1
            for w in out[v]:
                if color[w] == 1 or (color[w] == 0 and not dfs(w)):
                    return False
            color[v] = 2
            return True

        return all(color[v] or dfs(v) for v in range(self.vertices))


POINT = Quiver(1, ())
ARROW = Quiver(2, ((0, 1),))


@dataclass(frozen=True, order=True)
class FunctorObj:
    """Functor from a path category: one base object per vertex and one
    base morphism table per arrow."""
    components: tuple
    arrows: tuple


class FunctorCategory(Category):
    """Functors [path category of Q, base] with componentwise kernels,
    cokernels and canonical limits.  Strictness is componentwise.
    """

    def __init__(self, quiver, base, name=None):
        self.quiver = quiver
        self.base = base
        self.name = name or f"funcat({base.name})"
        self._hom_cache = {}
        self._classify_cache = {}
        self._kernel_cache = {}
        self._cokernel_cache = {}
        self._objects_cache = {}

    def _component(self, f, i):
        return Morphism(f.dom.components[i], f.cod.components[i], f.table[i])

    def _arrow_morphism(self, X, k):
        s, t = self.quiver.arrows[k]
        return Morphism(X.components[s], X.components[t], X.arrows[k])

    def make_object(self, components, arrows):
        components = tuple(components)
        arrows = tuple(tuple(a) for a in arrows)
        for k, (s, t) in enumerate(self.quiver.arrows):
            if not self.base.is_valid_morphism(components[s], components[t],
                                               arrows[k]):
                raise NotStrictArrow(
                    f"arrow {k} is not a morphism of the base instance")
        return FunctorObj(components, arrows)

    def objects(self, bound):
        if bound not in self._objects_cache:
            base_objs = list(self.base.objects(bound))
            seen = {}
            for components in itertools.product(base_objs,
                                                repeat=self.quiver.vertices):
                arrow_choices = [
                    [m.table for m in self.base.hom(components[s], components[t])]
                    for s, t in self.quiver.arrows]
                for arrows in itertools.product(*arrow_choices):
                    obj = FunctorObj(components, arrows)
                    key = self._canonical(obj)
                    if key not in seen:
                        seen[key] = obj
            self._objects_cache[bound] = sorted(seen.values())
        return list(self._objects_cache[bound])

    def _canonical(self, obj):
        sizes = tuple(self.base.size(c) for c in obj.components)
        perm_lists = [list(perms_fixing_zero(s)) for s in sizes]
        best = None
        for perms in itertools.product(*perm_lists):
            cand = tuple(
                _conjugate(obj.arrows[k], perms[s], perms[t])
                for k, (s, t) in enumerate(self.quiver.arrows))
            if best is None or cand < best:
                best = cand
        return (sizes, best)

    def size(self, X):
        return max((self.base.size(c) for c in X.components), default=1)

    def iso_key(self, X):
        sizes, arrows = self._canonical(X)
        return f"{sizes}:{arrows}"

    @property
    def zero_object(self):
        z = self.base.zero_object
        return FunctorObj((z,) * self.quiver.vertices,
                          ((0,),) * len(self.quiver.arrows))

    def identity(self, X):
        return Morphism(X, X, tuple(
            tuple(range(self.base.size(c))) for c in X.components))

    def zero_morphism(self, X, Y):
        return Morphism(X, Y, tuple(
            (0,) * self.base.size(c) for c in X.components))

    def compose(self, g, f):
        if f.cod != g.dom:
            raise Mismatch("compose: middle objects differ")
        return Morphism(f.dom, g.cod, tuple(
            tuple(g.table[i][v] for v in f.table[i])
            for i in range(self.quiver.vertices)))

    def is_valid_morphism(self, X, Y, tables):
        for i in range(self.quiver.vertices):
            if not self.base.is_valid_morphism(X.components[i],
                                               Y.components[i], tables[i]):
                return False
        for k, (s, t) in enumerate(self.quiver.arrows):
            xa, ya = X.arrows[k], Y.arrows[k]
            ts, tt = tables[s], tables[t]
            for x in range(self.base.size(X.components[s])):
                if tt[xa[x]] != ya[ts[x]]:
                    return False
        return True

    def hom(self, X, Y):
        key = (X, Y)
        cached = self._hom_cache.get(key)
        if cached is None:
            comp_homs = [
                [m.table for m in self.base.hom(X.components[i], Y.components[i])]
                for i in range(self.quiver.vertices)]
            cached = [Morphism(X, Y, tables)
                      for tables in itertools.product(*comp_homs)
                      if self.is_valid_morphism(X, Y, tables)]
            self._hom_cache[key] = cached
        return list(cached)

    def is_mono(self, f):
        return all(self.base.is_mono(self._component(f, i))
                   for i in range(self.quiver.vertices))

    def is_epi(self, f):
        return all(self.base.is_epi(self._component(f, i))
                   for i in range(self.quiver.vertices))

    def is_iso(self, f):
        return all(self.base.is_iso(self._component(f, i))
                   for i in range(self.quiver.vertices))

    def solve_left_through_mono(self, m, h):
        tables = []
        for i in range(self.quiver.vertices):
            u = self.base.solve_left_through_mono(self._component(m, i),
                                                  self._component(h, i))
            if u is None:
                return None
            tables.append(u.table)
        out = Morphism(h.dom, m.dom, tuple(tables))
        if not self.is_valid_morphism(out.dom, out.cod, out.table):
            raise CategoryError(f"{self.name}: componentwise factorization "
                                "is not natural")
        return out

    def solve_right_through_epi(self, e, h):
        tables = []
        for i in range(self.quiver.vertices):
            u = self.base.solve_right_through_epi(self._component(e, i),
                                                  self._component(h, i))
            if u is None:
                return None
            tables.append(u.table)
        out = Morphism(e.cod, h.cod, tuple(tables))
        if not self.is_valid_morphism(out.dom, out.cod, out.table):
            raise CategoryError(f"{self.name}: componentwise factorization "
                                "is not natural")
        return out

    def kernel_of(self, f):
        m = self._kernel_cache.get(f)
        if m is None:
            m = self.kernel(f)
            self._kernel_cache[f] = m
        return m

    def cokernel_of(self, f):
        m = self._cokernel_cache.get(f)
        if m is None:
            m = self.cokernel(f)
            self._cokernel_cache[f] = m
        return m

    def kernel(self, f):
        kers = [self.base.kernel(self._component(f, i))
                for i in range(self.quiver.vertices)]
        arrows = []
        for k, (s, t) in enumerate(self.quiver.arrows):
            comp = self.base.compose(self._arrow_morphism(f.dom, k), kers[s])
            u = self.base.solve_left_through_mono(kers[t], comp)
            if u is None:
                raise CategoryError(f"{self.name}: kernel arrow missing")
            arrows.append(u.table)
        K = FunctorObj(tuple(k.dom for k in kers), tuple(arrows))
        return Morphism(K, f.dom, tuple(k.table for k in kers))

    def cokernel(self, f):
        coks = [self.base.cokernel(self._component(f, i))
                for i in range(self.quiver.vertices)]
        arrows = []
        for k, (s, t) in enumerate(self.quiver.arrows):
            comp = self.base.compose(coks[t], self._arrow_morphism(f.cod, k))
            u = self.base.solve_right_through_epi(coks[s], comp)
            if u is None:
                raise CategoryError(f"{self.name}: cokernel arrow missing")
            arrows.append(u.table)
        C = FunctorObj(tuple(c.cod for c in coks), tuple(arrows))
        return Morphism(f.cod, C, tuple(c.table for c in coks))

    def canonical_pullback(self, f, g):
        if f.cod != g.cod:
            raise Mismatch("pullback: codomains differ")
        pbs = [self.base.canonical_pullback(self._component(f, i),
                                            self._component(g, i))
               for i in range(self.quiver.vertices)]
        arrows = []
        for k, (s, t) in enumerate(self.quiver.arrows):
            a = self.base.compose(self._arrow_morphism(f.dom, k), pbs[s].p1)
            b = self.base.compose(self._arrow_morphism(g.dom, k), pbs[s].p2)
            u = pbs[t].pair(a, b)
            if u is None:
                raise CategoryError(f"{self.name}: pullback arrow missing")
            arrows.append(u.table)
        P = FunctorObj(tuple(pb.obj for pb in pbs), tuple(arrows))
        p1 = Morphism(P, f.dom, tuple(pb.p1.table for pb in pbs))
        p2 = Morphism(P, g.dom, tuple(pb.p2.table for pb in pbs))

        def pair(a, b):
            if a.dom != b.dom:
                return None
            tables = []
            for i in range(self.quiver.vertices):
                u = pbs[i].pair(self._component(a, i), self._component(b, i))
                if u is None:
                    return None
                tables.append(u.table)
            return Morphism(a.dom, P, tuple(tables))

        return PullbackData(P, p1, p2, pair)

    def canonical_pushout(self, f, g):
        if f.dom != g.dom:
            raise Mismatch("pushout: domains differ")
        pos = [self.base.canonical_pushout(self._component(f, i),
                                           self._component(g, i))
               for i in range(self.quiver.vertices)]
        arrows = []
        for k, (s, t) in enumerate(self.quiver.arrows):
            u = pos[s].copair(
                self.base.compose(pos[t].i1, self._arrow_morphism(f.cod, k)),
                self.base.compose(pos[t].i2, self._arrow_morphism(g.cod, k)))
            if u is None:
                raise CategoryError(f"{self.name}: pushout arrow missing")
            arrows.append(u.table)
        W = FunctorObj(tuple(po.obj for po in pos), tuple(arrows))
        i1 = Morphism(f.cod, W, tuple(po.i1.table for po in pos))
        i2 = Morphism(g.cod, W, tuple(po.i2.table for po in pos))

        def copair(u, v):
            if u.cod != v.cod:
                return None
            tables = []
            for i in range(self.quiver.vertices):
                w = pos[i].copair(self._component(u, i), self._component(v, i))
                if w is None:
                    return None
                tables.append(w.table)
            return Morphism(W, u.cod, tuple(tables))

        return PushoutData(W, i1, i2, copair)

    def describe_morphism(self, f):
        return f"{f.table}"


def _conjugate(table, perm_s, perm_t):
    inv = [0] * len(perm_s)
    for i, p in enumerate(perm_s):
        inv[p] = i
    return tuple(perm_t[table[inv[i]]] for i in range(len(table)))


def funcat_category(quiver, base, name=None):
    return FunctorCategory(quiver, base, name=name)


def quiver_rep_category(quiver, name=None):
    """Representations of a quiver on finite pointed sets with strict
    structure maps and strict componentwise morphisms."""
    return FunctorCategory(quiver, pset_category(strict_only=True),
                           name=name or "quiverrep")


@dataclass(frozen=True)
class PathSemigroup:
    """Pointed path semigroup of a quiver, truncated at a length bound.

    Element 0 is the zero; elements 1..V are the trivial paths; longer
    paths follow.  Products are concatenations, zero when incompatible
    or longer than the bound.
    """
    quiver: Quiver
    paths: tuple          # (start_vertex, arrow index tuple) per element, None at 0
    mul: tuple
    trivial: tuple        # element index of e_i per vertex


def path_semigroup(quiver, max_len=4):
    if max_len is None:
        if not quiver.is_acyclic():
            raise PathBoundExceeded(
                "cyclic quiver: a path length bound is required")
        max_len = max(len(quiver.arrows), 1)
    paths = [None] + [(v, ()) for v in range(quiver.vertices)]
    frontier = list(range(1, quiver.vertices + 1))
    for _ in range(max_len):
        new = []
        for idx in frontier:
            start, arrs = paths[idx]
            end = _path_end(quiver, paths[idx])
            for k, (s, t) in enumerate(quiver.arrows):
                if s == end:
                    paths.append((start, arrs + (k,)))
                    new.append(len(paths) - 1)
        frontier = new
    index = {p: i for i, p in enumerate(paths) if p is not None}
    n = len(paths)
    mul = [[0] * n for _ in range(n)]
    for i in range(1, n):
        for j in range(1, n):
            # i after j: defined when j ends where i starts
            if paths[i][0] == _path_end(quiver, paths[j]):
                joined = (paths[j][0], paths[j][1] + paths[i][1])
                mul[i][j] = index.get(joined, 0)
    trivial = tuple(index[(v, ())] for v in range(quiver.vertices))
    return PathSemigroup(quiver, tuple(paths), _freeze(mul), trivial)


def _path_end(quiver, path):
    start, arrs = path
    v = start
    for k in arrs:
        v = quiver.arrows[k][1]
    return v


def _freeze(rows):
    return tuple(tuple(r) for r in rows)


@dataclass(frozen=True)
class PathModule:
    """Pointed set with an associative action of a pointed path semigroup."""
    semigroup: PathSemigroup
    size: int
    act: tuple


def make_path_module(semigroup, size, act):
    act = _freeze(act)
    n = len(semigroup.paths)
    if len(act) != n or any(len(row) != size for row in act):
        raise Mismatch("action table has wrong shape")
    if act[0] != (0,) * size or any(row[0] != 0 for row in act):
        raise Mismatch("zero must act as zero and fix the base point")
    for p in range(n):
        for q in range(n):
            pq = semigroup.mul[p][q]
            for x in range(size):
                if act[pq][x] != act[p][act[q][x]]:
                    raise Mismatch("action not compatible with concatenation")
    return PathModule(semigroup, size, act)


def l_module(quiver, X, max_len=4):
    """Left adjoint on a representation: the wedge of the components with
    the path action.  Returns (module, vertex_embeddings)."""
    sg = path_semigroup(quiver, max_len)
    sizes = [c.size for c in X.components]
    offsets = []
    total = 1
    for s in sizes:
        offsets.append(total)
        total += s - 1
    embed = [
        {x: (0 if x == 0 else offsets[v] + x - 1) for x in range(sizes[v])}
        for v in range(quiver.vertices)]
    vertex_of = {}
    local = {}
    for v in range(quiver.vertices):
        for x in range(1, sizes[v]):
            g = embed[v][x]
            vertex_of[g] = v
            local[g] = x
    act = [[0] * total]
    for idx in range(1, len(sg.paths)):
        start, arrs = sg.paths[idx]
        row = [0] * total
        for g in range(1, total):
            if vertex_of[g] != start:
                continue
            x, v = local[g], start
            for k in arrs:
                x = X.arrows[k][x]
                v = quiver.arrows[k][1]
                if x == 0:
                    break
            row[g] = embed[v][x] if x != 0 else 0
        act.append(tuple(row))
    act[0] = (0,) * total
    module = make_path_module(sg, total, act)
    return module, embed


def lr_unit_check(quiver, X, max_len=4):
    """Restriction after wedge recovers the representation: the carrier of
    e_i acting on LX is exactly the i-th component, with the same arrow
    maps.  Returns True when the identification is an isomorphism."""
    module, embed = l_module(quiver, X, max_len)
    sg = module.semigroup
    for v in range(quiver.vertices):
        row = module.act[sg.trivial[v]]
        fixed = sorted({row[m] for m in range(module.size)})
        expect = sorted({embed[v][x] for x in range(X.components[v].size)})
        if fixed != expect:
            return False
    for k, (s, t) in enumerate(quiver.arrows):
        arrow_elt = None
        for idx in range(1, len(sg.paths)):
            if sg.paths[idx] == (s, (k,)):
                arrow_elt = idx
        row = module.act[arrow_elt]
        for x in range(X.components[s].size):
            if row[embed[s][x]] != embed[t][X.arrows[k][x]]:
                return False
    return True


def lr_counit(module):
    """Restriction then wedge, compared with the module itself.

    Returns (components, arrow_tables, surjective): components are the
    fixed carriers of the trivial idempotents, arrows the induced action
    tables, and surjective says whether their union reaches the module.
    """
    sg = module.semigroup
    quiver = sg.quiver
    carriers = []
    for v in range(quiver.vertices):
        row = module.act[sg.trivial[v]]
        members = sorted({row[m] for m in range(module.size)})
        carriers.append(members)
    components = [PSet(len(c) - 1) for c in carriers]
    arrow_tables = []
    for k, (s, t) in enumerate(quiver.arrows):
        arrow_elt = None
        for idx in range(1, len(sg.paths)):
            if sg.paths[idx] == (s, (k,)):
                arrow_elt = idx
        index_t = {m: j for j, m in enumerate(carriers[t])}
        row = module.act[arrow_elt]
        arrow_tables.append(tuple(index_t[row[m]] for m in carriers[s]))
    reached = set()
    for c in carriers:
        reached.update(c)
    surjective = reached == set(range(module.size))
    return components, arrow_tables, surjective


def lr_counit_rep(module):
    """The restriction as a representation, when the induced arrow maps
    are strict; None otherwise."""
    components, arrow_tables, surjective = lr_counit(module)
    for table in arrow_tables:
        if not pset_is_strict(Morphism(PSet(len(table) - 1),
                                       PSet(max(table)), table)):
            return None, surjective
    return FunctorObj(tuple(components), tuple(arrow_tables)), surjective


@dataclass(frozen=True, order=True)
class PreCrystal:
    """Pointed set with a finite family of strict endomaps."""
    size: int
    ops: tuple


def make_precrystal(size, ops):
    ops = _freeze(ops)
    for table in ops:
        if len(table) != size or table[0] != 0:
            raise Mismatch("operator is not a pointed endomap")
        seen = set()
        for x in range(1, size):
            v = table[x]
            if v != 0:
                if v in seen:
                    raise Mismatch("operator is not strict")
                seen.add(v)
    return PreCrystal(size, ops)


def is_pc_morphism(X, Y, table):
    """The defining condition: when both a value and the value of the
    moved element are nonzero, the map intertwines the operator."""
    for ox, oy in zip(X.ops, Y.ops):
        for x in range(X.size):
            fx, fax = table[x], table[ox[x]]
            if fx != 0 and fax != 0 and fax != oy[fx]:
                return False
    return True


def precrystal_ker_coker(f):
    """Kernel with operators truncated into the kernel; cokernel with
    operators kept where they stay outside the image."""
    X, Y = f.dom, f.cod
    if not is_pc_morphism(X, Y, f.table):
        raise NotAPreCrystalMorphism("the map does not intertwine operators")
    members = tuple(i for i, v in enumerate(f.table) if v == 0)
    index = {m: j for j, m in enumerate(members)}
    kops = tuple(
        tuple(index.get(op[m], 0) for m in members) for op in X.ops)
    K = make_precrystal(len(members), kops)
    ker = Morphism(K, X, members)

    image = set(f.table)
    survivors = [y for y in range(Y.size) if y not in image]
    proj = {y: 0 for y in image}
    proj.update({y: j + 1 for j, y in enumerate(survivors)})
    cops = []
    for op in Y.ops:
        row = [0] * (len(survivors) + 1)
        for y in survivors:
            if op[y] not in image:
                row[proj[y]] = proj[op[y]]
        cops.append(tuple(row))
    C = make_precrystal(len(survivors) + 1, cops)
    coker = Morphism(Y, C, tuple(proj[y] for y in range(Y.size)))
    return ker, coker


class PreCrystalCategory(TableCategory):
    """Pre-crystals for a fixed finite index set.  Canonical limits are
    not part of this instance; the suites use only kernels/cokernels."""

    def __init__(self, index_size=1):
        super().__init__()
        self.index_size = index_size
        self.name = f"precrystal{index_size}"
        self._objects_cache = {}

    def objects(self, bound):
        if bound not in self._objects_cache:
            seen = {}
            for size in range(1, bound + 1):
                endos = [t for t in _strict_endos(size)]
                for ops in itertools.product(endos, repeat=self.index_size):
                    obj = PreCrystal(size, ops)
                    key = self._canonical(obj)
                    if key not in seen:
                        seen[key] = obj
            self._objects_cache[bound] = sorted(seen.values())
        return list(self._objects_cache[bound])

    def _canonical(self, obj):
        best = None
        for perm in perms_fixing_zero(obj.size):
            cand = tuple(relabel_table(op, perm) for op in obj.ops)
            if best is None or cand < best:
                best = cand
        return (obj.size, best)

    def size(self, X):
        return X.size

    def iso_key(self, X):
        size, ops = self._canonical(X)
        return f"{size}:{ops}"

    @property
    def zero_object(self):
        return PreCrystal(1, ((0,),) * self.index_size)

    def is_valid_morphism(self, X, Y, table):
        return table[0] == 0 and is_pc_morphism(X, Y, table)

    def kernel(self, f):
        return precrystal_ker_coker(f)[0]

    def cokernel(self, f):
        return precrystal_ker_coker(f)[1]


def _strict_endos(size):
    for rest in itertools.product(range(size), repeat=size - 1):
        table = (0,) + rest
        seen = set()
        ok = True
        for v in rest:
            if v != 0:
                if v in seen:
                    ok = False
                    break
                seen.add(v)
        if ok:
            yield table


def precrystal_category(index_size=1):
    return PreCrystalCategory(index_size)

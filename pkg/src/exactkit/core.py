"""Generic kernel/cokernel calculus over pointed category instances.

A category instance supplies objects, hom enumeration, composition,
kernels and cokernels.  Everything else here is derived from those
primitives: canonical factorizations, strictness classification,
pullback/pushout squares built from kernels and cokernels, exactness of
pairs, and the two axiom suites

  * check_stability: strict epimorphisms pull back along strict
    monomorphisms to strict epimorphisms, and strict monomorphisms push
    out along strict epimorphisms to strict monomorphisms;
  * check_strict_composition: identities are strict, and composites of
    strict monos (resp. strict epis) are again strict monos (resp. epis).

Structural mono/epi tests (injective/surjective) are used by default.
They may be stricter than categorical cancellation in exotic instances,
but the derived strict-mono/strict-epi classification is exact: a strict
morphism is mono iff injective and epi iff surjective in every instance
shipped here.  Cancellation-based testing is available separately.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field


class CategoryError(Exception):
    """Base class for errors raised by category instances and suites."""


class BoundTooSmall(CategoryError):
    pass


class NotStrictMono(CategoryError):
    pass


class NotStrictEpi(CategoryError):
    pass


class NonCommuting(CategoryError):
    pass


class Mismatch(CategoryError):
    pass


class UnsupportedOperation(CategoryError):
    pass


@dataclass(frozen=True, order=True)
class Morphism:
    """A morphism in a finite concrete category.

    table maps carrier indices of dom to carrier indices of cod.  For
    diagram categories the table is a tuple of component tables.
    """
    dom: object
    cod: object
    table: tuple

    def __repr__(self):
        return f"Morphism({self.table})"


@dataclass(frozen=True)
class MorphismClass:
    is_mono: bool
    is_epi: bool
    is_strict: bool

    @property
    def is_strict_mono(self):
        return self.is_strict and self.is_mono

    @property
    def is_strict_epi(self):
        return self.is_strict and self.is_epi


@dataclass(frozen=True)
class Factorization:
    """f = im o mid o coim with coim a strict epi and im a strict mono."""
    coim: object
    mid: object
    im: object


@dataclass(frozen=True)
class Square:
    """Commuting square: right o top == bottom o left.

    top: X' -> Y', left: X' -> X, bottom: X -> Y, right: Y' -> Y.
    The bottom edge is a pullback of the top edge along nothing in
    particular; orientation is fixed by the constructors below.
    """
    top: object
    left: object
    bottom: object
    right: object


@dataclass(frozen=True)
class PullbackData:
    obj: object
    p1: object          # obj -> X   (first leg, along the bottom's domain)
    p2: object          # obj -> Y'  (second leg)
    pair: object        # callable (a: U->X, b: U->Y') -> U -> obj


@dataclass(frozen=True)
class PushoutData:
    obj: object
    i1: object          # Y' -> obj
    i2: object          # X  -> obj
    copair: object      # callable (u: Y'->V, v: X->V) -> obj -> V


@dataclass
class Check:
    status: str
    suite: str
    axiom: str
    checked: int
    witness: str = ""

    def line(self):
        s = f"{self.status} {self.suite} {self.axiom} checked={self.checked}"
        if self.witness:
            s += f" witness={self.witness}"
        return s


@dataclass
class Report:
    suite: str
    checks: list = field(default_factory=list)

    def record(self, axiom, checked, witnesses):
        if witnesses:
            for w in witnesses[:5]:
                self.checks.append(Check("FAIL", self.suite, axiom, checked, w))
            if len(witnesses) > 5:
                self.checks.append(Check(
                    "FAIL", self.suite, axiom, checked,
                    f"(+{len(witnesses) - 5} more)"))
        else:
            self.checks.append(Check("PASS", self.suite, axiom, checked))

    @property
    def violations(self):
        return sum(1 for c in self.checks if c.status == "FAIL")

    @property
    def ok(self):
        return self.violations == 0

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    def to_text(self):
        return "\n".join(c.line() for c in self.checks)

    def to_json_dict(self):
        return {
            "schema": 1,
            "suite": self.suite,
            "violations": self.violations,
            "checks": [
                {"status": c.status, "suite": c.suite, "axiom": c.axiom,
                 "checked": c.checked, "witness": c.witness}
                for c in self.checks
            ],
        }

    def to_json(self):
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)


class Category:
    """Interface for category instances.

    Concrete instances implement object enumeration, hom enumeration,
    composition, kernel and cokernel.  The solve_* hooks compute unique
    factorizations through monos/epis; they return None when no
    set-level factorization exists and raise CategoryError when a
    factorization exists set-wise but fails to be a morphism (that would
    contradict a universal property, so it is treated as a bug).
    """

    name = "category"

    def objects(self, bound):
        raise UnsupportedOperation(f"{self.name}: no object enumeration")

    def hom(self, X, Y):
        raise UnsupportedOperation(f"{self.name}: no hom enumeration")

    def size(self, X):
        raise NotImplementedError

    def iso_key(self, X):
        raise UnsupportedOperation(f"{self.name}: no iso keys")

    @property
    def zero_object(self):
        raise NotImplementedError

    def identity(self, X):
        raise NotImplementedError

    def zero_morphism(self, X, Y):
        raise NotImplementedError

    def compose(self, g, f):
        raise NotImplementedError

    def kernel(self, f):
        raise NotImplementedError

    def cokernel(self, f):
        raise NotImplementedError

    def is_mono(self, f):
        raise NotImplementedError

    def is_epi(self, f):
        raise NotImplementedError

    def is_iso(self, f):
        raise NotImplementedError

    def solve_left_through_mono(self, m, h):
        raise NotImplementedError

    def solve_right_through_epi(self, e, h):
        raise NotImplementedError

    def canonical_pullback(self, f, g):
        raise UnsupportedOperation(f"{self.name}: no canonical pullbacks")

    def canonical_pushout(self, f, g):
        raise UnsupportedOperation(f"{self.name}: no canonical pushouts")

    def describe_object(self, X):
        return repr(X)

    def describe_morphism(self, f):
        return f"{self.size(f.dom)}->{self.size(f.cod)}{f.table}"


class TableCategory(Category):
    """Default implementations for categories of finite pointed carriers.

    Objects have carriers range(size) with base element 0; morphisms are
    Morphism instances with flat index tables.  Subclasses implement
    objects(), is_valid_morphism(), kernel(), cokernel() and builders
    for the canonical limits where they exist.
    """

    def __init__(self):
        self._hom_cache = {}
        self._classify_cache = {}
        self._kernel_cache = {}
        self._cokernel_cache = {}

    def is_valid_morphism(self, X, Y, table):
        raise NotImplementedError

    def hom(self, X, Y):
        key = (X, Y)
        cached = self._hom_cache.get(key)
        if cached is None:
            nx, ny = self.size(X), self.size(Y)
            if ny ** max(nx - 1, 0) > 2_000_000:
                raise UnsupportedOperation(
                    f"{self.name}: hom enumeration too large ({nx}->{ny})")
            cached = [
                Morphism(X, Y, (0,) + rest)
                for rest in itertools.product(range(ny), repeat=nx - 1)
                if self.is_valid_morphism(X, Y, (0,) + rest)
            ]
            self._hom_cache[key] = cached
        return list(cached)

    def identity(self, X):
        return Morphism(X, X, tuple(range(self.size(X))))

    def zero_morphism(self, X, Y):
        return Morphism(X, Y, (0,) * self.size(X))

    def compose(self, g, f):
        if f.cod != g.dom:
            raise Mismatch("compose: middle objects differ")
        return Morphism(f.dom, g.cod, tuple(g.table[v] for v in f.table))

    def is_mono(self, f):
        return len(set(f.table)) == len(f.table)

    def is_epi(self, f):
        return len(set(f.table)) == self.size(f.cod)

    def is_iso(self, f):
        n = self.size(f.dom)
        if self.size(f.cod) != n or len(set(f.table)) != n:
            return False
        inv = [0] * n
        for i, v in enumerate(f.table):
            inv[v] = i
        return self.is_valid_morphism(f.cod, f.dom, tuple(inv))

    def inverse(self, f):
        inv = [0] * self.size(f.dom)
        for i, v in enumerate(f.table):
            inv[v] = i
        return Morphism(f.cod, f.dom, tuple(inv))

    def solve_left_through_mono(self, m, h):
        """Unique u with m o u = h, for injective m."""
        back = {v: i for i, v in enumerate(m.table)}
        try:
            table = tuple(back[v] for v in h.table)
        except KeyError:
            return None
        if not self.is_valid_morphism(h.dom, m.dom, table):
            raise CategoryError(f"{self.name}: factorization through mono "
                                "exists set-wise but is not a morphism")
        return Morphism(h.dom, m.dom, table)

    def solve_right_through_epi(self, e, h):
        """Unique u with u o e = h, for surjective e constant on fibers."""
        table = [None] * self.size(e.cod)
        for a, b in enumerate(e.table):
            v = h.table[a]
            if table[b] is None:
                table[b] = v
            elif table[b] != v:
                return None
        table = tuple(table)
        if not self.is_valid_morphism(e.cod, h.cod, table):
            raise CategoryError(f"{self.name}: factorization through epi "
                                "exists set-wise but is not a morphism")
        return Morphism(e.cod, h.cod, table)

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


def factorize(cat, f):
    """Canonical factorization of f through its coimage and image."""
    ker = _kernel(cat, f)
    coim = _cokernel(cat, ker)
    cok = _cokernel(cat, f)
    im = _kernel(cat, cok)
    f0 = cat.solve_left_through_mono(im, f)
    if f0 is None:
        raise CategoryError(f"{cat.name}: f does not factor through its image")
    mid = cat.solve_right_through_epi(coim, f0)
    if mid is None:
        raise CategoryError(f"{cat.name}: f does not factor through its coimage")
    return Factorization(coim, mid, im)


def _kernel(cat, f):
    return cat.kernel_of(f) if hasattr(cat, "kernel_of") else cat.kernel(f)


def _cokernel(cat, f):
    return cat.cokernel_of(f) if hasattr(cat, "cokernel_of") else cat.cokernel(f)


def is_strict(cat, f):
    return cat.is_iso(factorize(cat, f).mid)


def classify(cat, f, cancellation_bound=None):
    """Mono/epi/strict classification of a morphism.

    Mono and epi use the instance's structural tests unless a
    cancellation_bound is given, in which case they are decided by
    cancellation against all test objects up to that bound.
    """
    if cancellation_bound is not None:
        if cancellation_bound < 1:
            raise BoundTooSmall("cancellation bound must be >= 1")
        return MorphismClass(
            mono_by_cancellation(cat, f, cancellation_bound),
            epi_by_cancellation(cat, f, cancellation_bound),
            is_strict(cat, f))
    cache = getattr(cat, "_classify_cache", None)
    if cache is not None and f in cache:
        return cache[f]
    mc = MorphismClass(cat.is_mono(f), cat.is_epi(f), is_strict(cat, f))
    if cache is not None:
        cache[f] = mc
    return mc


def mono_by_cancellation(cat, f, bound):
    """f is mono iff f o g = f o h implies g = h over objects at the bound."""
    if bound < 1:
        raise BoundTooSmall("cancellation bound must be >= 1")
    for U in cat.objects(bound):
        maps = cat.hom(U, f.dom)
        seen = {}
        for g in maps:
            fg = cat.compose(f, g)
            if fg in seen:
                return False
            seen[fg] = g
    return True


def epi_by_cancellation(cat, f, bound):
    if bound < 1:
        raise BoundTooSmall("cancellation bound must be >= 1")
    for U in cat.objects(bound):
        seen = {}
        for g in cat.hom(f.cod, U):
            gf = cat.compose(g, f)
            if gf in seen and seen[gf] != g:
                return False
            seen[gf] = g
    return True


def pullback_strict_mono(cat, f, g):
    """Pullback square of a strict mono f: X -> Y along g: Y' -> Y.

    The top edge is ker(coker(f) o g) and the left edge is induced
    through f.  The square is cartesian.
    """
    if f.cod != g.cod:
        raise Mismatch("pullback: codomains differ")
    if not classify(cat, f).is_strict_mono:
        raise NotStrictMono(f"{cat.name}: bottom edge is not a strict mono")
    h = _cokernel(cat, f)
    top = _kernel(cat, cat.compose(h, g))
    left = cat.solve_left_through_mono(f, cat.compose(g, top))
    if left is None:
        raise CategoryError(f"{cat.name}: pullback comparison failed")
    return Square(top=top, left=left, bottom=f, right=g)


def pushout_strict_epi(cat, f, g):
    """Pushout square of a strict epi f: X' -> Y' along g: X' -> X.

    The bottom edge is coker(g o ker(f)) and the right edge is induced
    through f.  The square is cocartesian.
    """
    if f.dom != g.dom:
        raise Mismatch("pushout: domains differ")
    if not classify(cat, f).is_strict_epi:
        raise NotStrictEpi(f"{cat.name}: top edge is not a strict epi")
    k = _kernel(cat, f)
    bottom = _cokernel(cat, cat.compose(g, k))
    right = cat.solve_right_through_epi(f, cat.compose(bottom, g))
    if right is None:
        raise CategoryError(f"{cat.name}: pushout comparison failed")
    return Square(top=f, left=g, bottom=bottom, right=right)


def verify_square(cat, sq):
    """Decide whether a commuting square is cartesian and/or cocartesian.

    Comparison is against the instance's canonical pullback/pushout: the
    square is cartesian iff the induced map into the canonical pullback
    is an isomorphism, and dually.
    """
    if cat.compose(sq.right, sq.top) != cat.compose(sq.bottom, sq.left):
        raise NonCommuting("square does not commute")
    pb = cat.canonical_pullback(sq.bottom, sq.right)
    u = pb.pair(sq.left, sq.top)
    cartesian = u is not None and cat.is_iso(u)
    po = cat.canonical_pushout(sq.top, sq.left)
    v = po.copair(sq.right, sq.bottom)
    cocartesian = v is not None and cat.is_iso(v)
    return {"cartesian": cartesian, "cocartesian": cocartesian}


def is_exact_pair(cat, f, g):
    """True iff f is a kernel of g and g is a cokernel of f."""
    if f.cod != g.dom:
        raise Mismatch("exact pair: objects do not line up")
    if cat.compose(g, f) != cat.zero_morphism(f.dom, g.cod):
        return False
    k = _kernel(cat, g)
    u = cat.solve_left_through_mono(k, f)
    if u is None or not cat.is_iso(u):
        return False
    c = _cokernel(cat, f)
    v = cat.solve_right_through_epi(c, g)
    return v is not None and cat.is_iso(v)


def _strict_monos_into(cat, objs, Y):
    out = []
    for X in objs:
        for f in cat.hom(X, Y):
            if classify(cat, f).is_strict_mono:
                out.append(f)
    return out


def _strict_epis_onto(cat, objs, Y):
    out = []
    for Yp in objs:
        for g in cat.hom(Yp, Y):
            if classify(cat, g).is_strict_epi:
                out.append(g)
    return out


def check_stability(cat, bound):
    """Axiom suite: strict epis are stable under pullback along strict
    monos, and strict monos are stable under pushout along strict epis.

    Exhaustive over hom sets between canonical objects at the bound;
    both properties are invariant under isomorphism of endpoints.
    """
    if bound < 1:
        raise BoundTooSmall("bound must be >= 1")
    objs = list(cat.objects(bound))
    report = Report(cat.name)

    checked, witnesses = 0, []
    for Y in objs:
        monos = _strict_monos_into(cat, objs, Y)
        epis = _strict_epis_onto(cat, objs, Y)
        for f in monos:
            for g in epis:
                sq = pullback_strict_mono(cat, f, g)
                checked += 1
                if not classify(cat, sq.left).is_strict_epi:
                    witnesses.append(
                        f"f={cat.describe_morphism(f)} g={cat.describe_morphism(g)} "
                        f"pullback={cat.describe_morphism(sq.left)}")
    report.record("pullback_strict_epi", checked, witnesses)

    checked, witnesses = 0, []
    for Xp in objs:
        epis = [e for X in objs for e in cat.hom(Xp, X)
                if classify(cat, e).is_strict_epi]
        monos = [m for Yp in objs for m in cat.hom(Xp, Yp)
                 if classify(cat, m).is_strict_mono]
        for e in epis:
            for m in monos:
                sq = pushout_strict_epi(cat, e, m)
                checked += 1
                if not classify(cat, sq.right).is_strict_mono:
                    witnesses.append(
                        f"e={cat.describe_morphism(e)} m={cat.describe_morphism(m)} "
                        f"pushout={cat.describe_morphism(sq.right)}")
    report.record("pushout_strict_mono", checked, witnesses)
    return report


def check_strict_composition(cat, bound):
    """Axiom suite: identities are strict, and strict monos/epis compose.

    Witnesses list an explicit composable pair whose composite fails.
    """
    if bound < 1:
        raise BoundTooSmall("bound must be >= 1")
    objs = list(cat.objects(bound))
    report = Report(cat.name)

    checked, witnesses = 0, []
    for X in objs:
        checked += 1
        mc = classify(cat, cat.identity(X))
        if not (mc.is_strict_mono and mc.is_strict_epi):
            witnesses.append(f"id on {cat.describe_object(X)}")
    report.record("identity_strict", checked, witnesses)

    monos = {}
    epis = {}
    for X in objs:
        for Y in objs:
            hom = cat.hom(X, Y)
            monos[(X, Y)] = [f for f in hom if classify(cat, f).is_strict_mono]
            epis[(X, Y)] = [f for f in hom if classify(cat, f).is_strict_epi]

    checked, witnesses = 0, []
    for X in objs:
        for Y in objs:
            for f in monos[(X, Y)]:
                for Z in objs:
                    for g in monos[(Y, Z)]:
                        checked += 1
                        if not classify(cat, cat.compose(g, f)).is_strict_mono:
                            witnesses.append(
                                f"f={cat.describe_morphism(f)} into "
                                f"{cat.describe_object(Y)} then "
                                f"g={cat.describe_morphism(g)} into "
                                f"{cat.describe_object(Z)}")
    report.record("strict_mono_composition", checked, witnesses)

    checked, witnesses = 0, []
    for X in objs:
        for Y in objs:
            for f in epis[(X, Y)]:
                for Z in objs:
                    for g in epis[(Y, Z)]:
                        checked += 1
                        if not classify(cat, cat.compose(g, f)).is_strict_epi:
                            witnesses.append(
                                f"f={cat.describe_morphism(f)} then "
                                f"g={cat.describe_morphism(g)}")
    report.record("strict_epi_composition", checked, witnesses)
    return report

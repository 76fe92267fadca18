"""Rational vector spaces with centrally symmetric polyhedral unit balls
and linear maps of operator norm at most 1.

A space carries both descriptions of its ball: the vertices (generators)
and the facet inequalities a.y <= 1.  Conversions go through polar
duality and exact vertex enumeration, so every value anywhere is a
Fraction.  Kernels carry the induced ball, cokernels the projected
(quotient) ball, products the max ball, coproducts the l1-sum ball.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import (Category, CategoryError, Mismatch, PullbackData,
                   PushoutData, Report, UnsupportedOperation, classify,
                   pullback_strict_mono, pushout_strict_epi, verify_square)


class NotBounded(CategoryError):
    pass


class DegenerateBall(CategoryError):
    pass


# ---------------------------------------------------------------------------
# exact linear algebra on tuples of Fractions

def vec(entries):
    return tuple(Fraction(e) for e in entries)


def mat(rows):
    return tuple(vec(r) for r in rows)


def mat_vec(M, v):
    return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0))
                 for row in M)


def mat_mul(A, B):
    bt = list(zip(*B)) if B else []
    return tuple(
        tuple(sum((a * b for a, b in zip(row, col)), Fraction(0))
              for col in bt)
        for row in A)


def identity_matrix(d):
    return tuple(tuple(Fraction(int(i == j)) for j in range(d))
                 for i in range(d))


def rref(rows):
    """Reduced row echelon form with first-nonzero pivoting.

    Returns (rows, pivot column list); zero rows are dropped.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r]), pivots


def matrix_rank(M):
    return len(rref(M)[0])


def nullspace(M, width):
    """Basis of {x : Mx = 0} for an arbitrary matrix with `width` columns.

    Deterministic: free variables in ascending order, each basis vector
    has a 1 in its free slot.
    """
    red, pivots = rref(M) if M else ((), [])
    free = [c for c in range(width) if c not in pivots]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * width
        x[fcol] = Fraction(1)
        for row, p in zip(red, pivots):
            x[p] = -row[fcol]
        basis.append(tuple(x))
    return basis


def solve(M, b):
    """One solution of Mx = b, or None."""
    if not M:
        return ()
    width = len(M[0])
    aug = [list(row) + [bv] for row, bv in zip(M, b)]
    red, pivots = rref(aug)
    x = [Fraction(0)] * width
    for row, p in zip(red, pivots):
        if p == width:
            return None
        x[p] = row[width]
    # consistency against the original system
    if mat_vec(M, tuple(x)) != tuple(Fraction(v) for v in b):
        return None
    return tuple(x)


def invert(M):
    d = len(M)
    aug = [list(row) + list(identity_matrix(d)[i]) for i, row in enumerate(M)]
    red, pivots = rref(aug)
    if pivots[:d] != list(range(d)):
        return None
    return tuple(tuple(row[d:]) for row in red)


# ---------------------------------------------------------------------------
# spaces

@dataclass(frozen=True, order=True)
class PolySpace:
    """Q^dim with a full-dimensional symmetric polytope unit ball, stored
    as canonical sorted vertex and facet lists."""
    dim: int
    generators: tuple
    facets: tuple


def _vertex_enum(rows, dim):
    """Vertices of {y : r.y <= 1 for r in rows}; the region must be
    bounded.  Exact: solve every d-subset of tight constraints."""
    verts = set()
    for combo in itertools.combinations(range(len(rows)), dim):
        sub = [rows[i] for i in combo]
        sol = solve(tuple(sub), (Fraction(1),) * dim)
        if sol is None:
            continue
        if matrix_rank(tuple(sub)) < dim:
            continue
        if all(sum((a * b for a, b in zip(r, sol)), Fraction(0)) <= 1
               for r in rows):
            verts.add(sol)
    return tuple(sorted(verts))


def space_from_generators(dim, gens):
    """Canonical space whose ball is the symmetric hull of the points."""
    if dim == 0:
        return PolySpace(0, (), ())
    pts = {vec(g) for g in gens}
    pts |= {tuple(-x for x in p) for p in pts}
    pts.discard((Fraction(0),) * dim)
    if matrix_rank(tuple(pts)) < dim:
        raise DegenerateBall("generators do not span the space")
    facets = _vertex_enum(tuple(sorted(pts)), dim)
    if not facets:
        raise DegenerateBall("polar has no vertices; ball is unbounded")
    verts = _vertex_enum(facets, dim)
    return PolySpace(dim, verts, facets)


def space_from_facets(dim, rows):
    if dim == 0:
        return PolySpace(0, (), ())
    verts = _vertex_enum(tuple(vec(r) for r in rows), dim)
    if not verts:
        raise DegenerateBall("no vertices; the ball is degenerate")
    return space_from_generators(dim, verts)


def norm_eval(space, x):
    """Gauge of the unit ball: the maximum of the facet functionals."""
    x = vec(x)
    if space.dim == 0:
        return Fraction(0)
    return max(sum((a * b for a, b in zip(row, x)), Fraction(0))
               for row in space.facets)


def linf_square(dim, radius=1):
    return space_from_generators(
        dim, [tuple(Fraction(radius) * s for s in signs)
              for signs in itertools.product((-1, 1), repeat=dim)])


def l1_diamond(dim, radius=1):
    gens = []
    for i in range(dim):
        g = [Fraction(0)] * dim
        g[i] = Fraction(radius)
        gens.append(tuple(g))
    return space_from_generators(dim, gens)


def interval(radius=1):
    return space_from_generators(1, [(Fraction(radius),)])


ZERO_SPACE = PolySpace(0, (), ())


@dataclass(frozen=True, order=True)
class LinearMap:
    """Rational matrix of operator norm at most 1 (rows = codomain dim)."""
    dom: PolySpace
    cod: PolySpace
    matrix: tuple


def linear_map(dom, cod, matrix):
    matrix = mat(matrix)
    if len(matrix) != cod.dim or any(len(r) != dom.dim for r in matrix):
        raise Mismatch(f"matrix shape is not {cod.dim}x{dom.dim}")
    for g in dom.generators:
        if norm_eval(cod, mat_vec(matrix, g)) > 1:
            raise NotBounded(f"operator norm exceeds 1 at generator {g}")
    return LinearMap(dom, cod, matrix)


def subspace_space(Y, basis):
    """Subspace with the induced ball, in the coordinates of the basis.

    basis: list of independent vectors in Y.  Returns (S, inclusion).
    """
    k = len(basis)
    if k == 0:
        return ZERO_SPACE, linear_map(ZERO_SPACE, Y,
                                      tuple(() for _ in range(Y.dim)))
    cols = tuple(zip(*basis))           # Y.dim x k
    rows = []
    for a in Y.facets:
        row = tuple(sum((ai * bi for ai, bi in zip(a, b)), Fraction(0))
                    for b in basis)
        rows.append(row)
    S = space_from_facets(k, rows)
    incl = linear_map(S, Y, cols)
    return S, incl


def quotient_space(Y, basis):
    """Quotient of Y by the span of the basis, with the projected ball.

    The representative coordinates are the standard coordinates away
    from the pivots of the row-reduced basis.  Returns (Q, projection).
    """
    red, pivots = rref(tuple(basis)) if basis else ((), [])
    comp = [c for c in range(Y.dim) if c not in pivots]
    q = len(comp)
    if q == 0:
        return ZERO_SPACE, linear_map(Y, ZERO_SPACE, ())
    rows = []
    col_of = {c: j for j, c in enumerate(comp)}
    # class of e_p for a pivot column p is minus the free part of its row
    R = [[Fraction(0)] * Y.dim for _ in range(q)]
    for j, c in enumerate(comp):
        R[j][c] = Fraction(1)
    for row, p in zip(red, pivots):
        for c in comp:
            R[col_of[c]][p] = -row[c]
    R = tuple(tuple(r) for r in R)
    if Y.dim == 0 or not Y.generators:
        Q = ZERO_SPACE
    else:
        Q = space_from_generators(q, [mat_vec(R, g) for g in Y.generators])
    return Q, linear_map(Y, Q, R)


def ns_ker(f):
    """Kernel subspace with the induced ball and its isometric inclusion."""
    basis = nullspace(f.matrix, f.dom.dim)
    return subspace_space(f.dom, basis)


def ns_coker(f):
    """Quotient by the image with the projected (quotient norm) ball."""
    cols = list(zip(*f.matrix)) if f.dom.dim else []
    red, _ = rref(tuple(cols)) if cols else ((), [])
    return quotient_space(f.cod, list(red))


def ns_product(X, Y):
    d = X.dim + Y.dim
    if d == 0:
        return ZERO_SPACE, linear_map(ZERO_SPACE, X, ()), \
            linear_map(ZERO_SPACE, Y, ())
    gens = [g + h for g in (X.generators or ((),))
            for h in (Y.generators or ((),))]
    P = space_from_generators(d, gens)
    p1 = linear_map(P, X, tuple(
        tuple(Fraction(int(i == j)) for j in range(d)) for i in range(X.dim)))
    p2 = linear_map(P, Y, tuple(
        tuple(Fraction(int(i + X.dim == j)) for j in range(d))
        for i in range(Y.dim)))
    return P, p1, p2


def ns_coproduct(X, Y):
    d = X.dim + Y.dim
    if d == 0:
        return ZERO_SPACE, linear_map(X, ZERO_SPACE, ()), \
            linear_map(Y, ZERO_SPACE, ())
    zx = (Fraction(0),) * X.dim
    zy = (Fraction(0),) * Y.dim
    gens = [g + zy for g in X.generators] + [zx + h for h in Y.generators]
    C = space_from_generators(d, gens)
    i1 = linear_map(X, C, tuple(
        tuple(Fraction(int(i == j)) for j in range(X.dim)) for i in range(d)))
    i2 = linear_map(Y, C, tuple(
        tuple(Fraction(int(i == j + X.dim)) for j in range(Y.dim))
        for i in range(d)))
    return C, i1, i2


def ns_prod_coprod(X, Y):
    return ns_product(X, Y), ns_coproduct(X, Y)


class PolyNormCategory(Category):
    """Category instance over polyhedral-normed rational spaces.

    Objects and homs are not enumerable; the instance supports the
    kernel/cokernel calculus, canonical limits and classification, which
    is what the randomized axiom suite drives.
    """

    name = "polynorm"

    def size(self, X):
        return X.dim

    @property
    def zero_object(self):
        return ZERO_SPACE

    def identity(self, X):
        return LinearMap(X, X, identity_matrix(X.dim))

    def zero_morphism(self, X, Y):
        return LinearMap(X, Y, tuple((Fraction(0),) * X.dim
                                     for _ in range(Y.dim)))

    def compose(self, g, f):
        if f.cod != g.dom:
            raise Mismatch("compose: middle objects differ")
        # explicit loops: empty matrices would lose their width under zip
        rows = tuple(
            tuple(sum((g.matrix[i][k] * f.matrix[k][j]
                       for k in range(f.cod.dim)), Fraction(0))
                  for j in range(f.dom.dim))
            for i in range(g.cod.dim))
        return LinearMap(f.dom, g.cod, rows)

    def kernel(self, f):
        return ns_ker(f)[1]

    def cokernel(self, f):
        return ns_coker(f)[1]

    def is_mono(self, f):
        return not nullspace(f.matrix, f.dom.dim)

    def is_epi(self, f):
        return matrix_rank(f.matrix) == f.cod.dim

    def is_iso(self, f):
        if f.dom.dim != f.cod.dim:
            return False
        inv = invert(f.matrix)
        if inv is None:
            return False
        return all(norm_eval(f.dom, mat_vec(inv, g)) <= 1
                   for g in f.cod.generators)

    def solve_left_through_mono(self, m, h):
        """Unique u with m o u = h for injective m: solve columnwise."""
        cols = []
        for j in range(h.dom.dim):
            b = tuple(h.matrix[i][j] for i in range(h.cod.dim))
            if m.dom.dim == 0:
                if any(v != 0 for v in b):
                    return None
                x = ()
            else:
                x = solve(m.matrix, b)
                if x is None:
                    return None
            cols.append(x)
        matrix = tuple(tuple(col[i] for col in cols)
                       for i in range(m.dom.dim))
        try:
            return linear_map(h.dom, m.dom, matrix)
        except NotBounded as exc:
            raise CategoryError(f"polynorm: factorization through mono "
                                f"is unbounded: {exc}")

    def solve_right_through_epi(self, e, h):
        """Unique u with u o e = h for surjective e killing ker(h)."""
        cols = []
        for j in range(e.cod.dim):
            b = tuple(Fraction(int(i == j)) for i in range(e.cod.dim))
            s = solve(e.matrix, b)
            if s is None:
                return None
            cols.append(mat_vec(h.matrix, s))
        matrix = tuple(tuple(col[i] for col in cols)
                       for i in range(h.cod.dim))
        candidate = LinearMap(e.cod, h.cod, matrix)
        if self.compose(candidate, e).matrix != h.matrix:
            return None
        try:
            return linear_map(e.cod, h.cod, matrix)
        except NotBounded as exc:
            raise CategoryError(f"polynorm: factorization through epi "
                                f"is unbounded: {exc}")

    def canonical_pullback(self, f, g):
        """Fibre product inside the max-normed product."""
        if f.cod != g.cod:
            raise Mismatch("pullback: codomains differ")
        P, p1, p2 = ns_product(f.dom, g.dom)
        big = tuple(
            tuple(f.matrix[i]) + tuple(-v for v in g.matrix[i])
            for i in range(f.cod.dim))
        basis = nullspace(big, f.dom.dim + g.dom.dim)
        S, incl = subspace_space(P, basis)
        q1 = self.compose(p1, incl)
        q2 = self.compose(p2, incl)

        def pair(a, b):
            if a.dom != b.dom:
                return None
            stacked = LinearMap(a.dom, P, tuple(a.matrix) + tuple(b.matrix))
            return self.solve_left_through_mono(incl, stacked)

        return PullbackData(S, q1, q2, pair)

    def canonical_pushout(self, f, g):
        """Quotient of the l1-summed coproduct by the difference image."""
        if f.dom != g.dom:
            raise Mismatch("pushout: domains differ")
        C, i1, i2 = ns_coproduct(f.cod, g.cod)
        diff = [tuple(f.matrix[i][j] for i in range(f.cod.dim)) +
                tuple(-g.matrix[i][j] for i in range(g.cod.dim))
                for j in range(f.dom.dim)]
        red, _ = rref(tuple(diff)) if diff else ((), [])
        W, proj = quotient_space(C, list(red))
        j1 = self.compose(proj, i1)
        j2 = self.compose(proj, i2)

        def copair(u, v):
            if u.cod != v.cod:
                return None
            glued = LinearMap(C, u.cod, tuple(
                tuple(u.matrix[i]) + tuple(v.matrix[i])
                for i in range(u.cod.dim)))
            return self.solve_right_through_epi(proj, glued)

        return PushoutData(W, j1, j2, copair)

    def describe_morphism(self, f):
        return f"{f.dom.dim}->{f.cod.dim}:{f.matrix}"


def ns_classify(f, cat=None):
    """Mono/epi/strict classification of a bounded map."""
    return classify(cat or PolyNormCategory(), f)


# ---------------------------------------------------------------------------
# randomized axiom suite

def _rand_frac(rng, span=2, den=4):
    return Fraction(rng.randint(-span * den, span * den), den)


def random_space(rng, dim):
    if dim == 0:
        return ZERO_SPACE
    gens = []
    for i in range(dim):
        g = [Fraction(0)] * dim
        g[i] = Fraction(rng.randint(1, 4), rng.randint(1, 4))
        gens.append(tuple(g))
    for _ in range(rng.randint(0, dim + 1)):
        gens.append(tuple(_rand_frac(rng) for _ in range(dim)))
    return space_from_generators(dim, gens)


def _random_basis_in(rng, Y, k):
    cand = []
    tries = 0
    while len(cand) < k and tries < 40:
        tries += 1
        v = tuple(_rand_frac(rng) for _ in range(Y.dim))
        if any(x != 0 for x in v) and matrix_rank(tuple(cand) + (v,)) > len(cand):
            cand.append(v)
    return cand


def _random_strict_mono_from(rng, X):
    """A strict mono out of X: either the slice of a product with an
    interval, or a bounded graph embedding into such a product."""
    prod, _, _ = ns_product(X, interval(rng.randint(1, 2)))
    w = tuple(Fraction(rng.randint(-1, 1), 4) for _ in range(X.dim))
    rowsafe = all(
        abs(sum((wi * gi for wi, gi in zip(w, g)), Fraction(0))) <= 1
        for g in X.generators)
    if not rowsafe:
        w = (Fraction(0),) * X.dim
    matrix = tuple(tuple(Fraction(int(i == j)) for j in range(X.dim))
                   for i in range(X.dim)) + (w,)
    return linear_map(X, prod, matrix)


def ns_axiom_suite(dim_max=2, sample_budget=200, seed=7):
    """Randomized suite: builds strict mono/epi pairs, forms the
    pullback/pushout squares through the generic calculus, and asserts
    the stability axioms plus the bicartesian property exactly."""
    rng = random.Random(seed)
    cat = PolyNormCategory()
    report = Report(cat.name)
    pb_checked, pb_witness = 0, []
    po_checked, po_witness = 0, []
    bi_checked, bi_witness = 0, []
    for _ in range(sample_budget):
        if rng.random() < 0.5:
            Z = random_space(rng, rng.randint(0, dim_max))
            Q, proj = quotient_space(
                Z, _random_basis_in(rng, Z, rng.randint(0, Z.dim)))
            S, incl = subspace_space(
                Q, _random_basis_in(rng, Q, rng.randint(0, Q.dim)))
            sq = pullback_strict_mono(cat, incl, proj)
            pb_checked += 1
            if not classify(cat, sq.left).is_strict_epi:
                pb_witness.append(cat.describe_morphism(sq.left))
                continue
            flags = verify_square(cat, sq)
            bi_checked += 1
            if not (flags["cartesian"] and flags["cocartesian"]):
                bi_witness.append(f"pullback square flags={flags}")
        else:
            Xp = random_space(rng, rng.randint(0, dim_max))
            X, e = quotient_space(
                Xp, _random_basis_in(rng, Xp, rng.randint(0, Xp.dim)))
            m = _random_strict_mono_from(rng, Xp)
            sq = pushout_strict_epi(cat, e, m)
            po_checked += 1
            if not classify(cat, sq.right).is_strict_mono:
                po_witness.append(cat.describe_morphism(sq.right))
                continue
            flags = verify_square(cat, sq)
            bi_checked += 1
            if not (flags["cartesian"] and flags["cocartesian"]):
                bi_witness.append(f"pushout square flags={flags}")
    report.record("pullback_strict_epi", pb_checked, pb_witness)
    report.record("pushout_strict_mono", po_checked, po_witness)
    report.record("bicartesian", bi_checked, bi_witness)
    return report


def quotient_norm_oracle(Y, image_basis, y):
    """Independent value of the quotient norm of y + span(image_basis).

    Brute force over the finite rational candidate set where the
    piecewise-linear gauge can attain its minimum: breakpoints of pairs
    of facet functionals along each line, plus the exact-membership
    candidate.  Handles image dimensions 0, 1 and full in dim <= 2.
    """
    red, _ = rref(tuple(image_basis)) if image_basis else ((), [])
    y = vec(y)
    if not red:
        return norm_eval(Y, y)
    if len(red) == Y.dim:
        return Fraction(0)
    if len(red) != 1:
        raise UnsupportedOperation("oracle covers image dimension <= 1")
    v = red[0]
    lines = [(sum((a * b for a, b in zip(row, y)), Fraction(0)),
              sum((a * b for a, b in zip(row, v)), Fraction(0)))
             for row in Y.facets]
    candidates = {Fraction(0)}
    for (c1, s1), (c2, s2) in itertools.combinations(lines, 2):
        if s1 != s2:
            candidates.add((c2 - c1) / (s1 - s2))
    best = None
    for s in candidates:
        val = max(c + s * slope for c, slope in lines)
        if best is None or val < best:
            best = val
    return best

"""Element calculus for the finitary submonads cut out by multiplicative
submonoids of (semi)rings: membership with certificates, the
substitution product, unit laws, seeded axiom fuzzing, seminorm
verification, and the unit-ball vs l1-ball comparison over the
rationals.

Tags:
  d        nonnegative rationals summing to exactly 1
  dstar    nonnegative rationals summing to at most 1
  zinf     rationals with l1 norm at most 1
  oprime   same predicate, read as the l1-ball of (Q, usual absolute value)
  f1r:<r>  at most one nonzero entry, an r-th root of unity
  gstar    at most one nonzero entry from a pointed monoid
  boolean  any 0/1 vector over the two-element idempotent semiring
  user     brute-force membership over a finite weak partial semiring

All scalar arithmetic is exact; no floats anywhere.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Report
from .psets import FinPointedMonoid, mu_monoid


class MonadError(Exception):
    pass


class UnsupportedTag(MonadError):
    pass


class TagMismatch(MonadError):
    pass


class ArityMismatch(MonadError):
    pass


class ClosureViolation(MonadError):
    pass


class WitnessSearchFailed(MonadError):
    pass


DEFAULT_SEED = 0
MAX_DENOMINATOR = 16


class MonadTag:
    """Interface: decidable membership in each arity, units, and the
    substitution product on raw entry tuples."""

    name = "tag"
    finite = False

    def membership(self, n, entries):
        raise NotImplementedError

    def unit(self, n, i):
        raise NotImplementedError

    def substitute_entries(self, s, rows, n):
        raise NotImplementedError

    def sample(self, rng, n):
        raise UnsupportedTag(f"{self.name}: no sampler")

    def enumerate_all(self, n):
        raise UnsupportedTag(f"{self.name}: not a finite tag")


class RationalTag(MonadTag):
    """Common machinery for the tags whose entries are exact rationals."""

    def unit(self, n, i):
        return tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))

    def substitute_entries(self, s, rows, n):
        return tuple(sum((si * row[j] for si, row in zip(s, rows)),
                         Fraction(0)) for j in range(n))

    @staticmethod
    def _coerce(entries):
        return tuple(Fraction(e) for e in entries)


class DistributionTag(RationalTag):
    name = "d"

    def membership(self, n, entries):
        entries = self._coerce(entries)
        if any(e < 0 for e in entries):
            return False, "negative entry"
        total = sum(entries, Fraction(0))
        return total == 1, f"sum={total}"

    def sample(self, rng, n):
        if n == 0:
            return None
        q = rng.randint(1, MAX_DENOMINATOR)
        cuts = sorted(rng.randint(0, q) for _ in range(n - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [q])]
        return tuple(Fraction(p, q) for p in parts)


class SubDistributionTag(RationalTag):
    name = "dstar"

    def membership(self, n, entries):
        entries = self._coerce(entries)
        if any(e < 0 for e in entries):
            return False, "negative entry"
        total = sum(entries, Fraction(0))
        return total <= 1, f"sum={total}"

    def sample(self, rng, n):
        full = DistributionTag().sample(rng, n + 1)
        return full[:n]


class L1BallTag(RationalTag):
    name = "zinf"

    def membership(self, n, entries):
        entries = self._coerce(entries)
        norm = sum((abs(e) for e in entries), Fraction(0))
        return norm <= 1, f"l1={norm}"

    def sample(self, rng, n):
        mags = SubDistributionTag().sample(rng, n)
        return tuple(m if rng.random() < 0.5 else -m for m in mags)


class L1BallOfQTag(L1BallTag):
    name = "oprime"


class PointedMonoidTag(MonadTag):
    """Vectors over a pointed monoid with at most one nonzero entry.

    Entries are carrier indices of the monoid; 0 is the zero."""

    finite = True

    def __init__(self, monoid, name="gstar"):
        self.monoid = monoid
        self.name = name

    def membership(self, n, entries):
        entries = tuple(entries)
        if any(not 0 <= e < self.monoid.size for e in entries):
            return False, "entry outside the monoid"
        nonzero = [e for e in entries if e != 0]
        if len(nonzero) > 1:
            return False, f"{len(nonzero)} nonzero entries"
        return True, "zero" if not nonzero else f"e_i({nonzero[0]})"

    def unit(self, n, i):
        return tuple(1 if j == i else 0 for j in range(n))

    def substitute_entries(self, s, rows, n):
        out = [0] * n
        for si, row in zip(s, rows):
            if si == 0:
                continue
            for j in range(n):
                v = self.monoid.mul[si][row[j]]
                if v != 0:
                    if out[j] != 0:
                        raise ClosureViolation(
                            f"{self.name}: undefined sum of nonzero entries")
                    out[j] = v
        return tuple(out)

    def enumerate_all(self, n):
        out = [(0,) * n]
        for i in range(n):
            for g in range(1, self.monoid.size):
                out.append(tuple(g if j == i else 0 for j in range(n)))
        return out

    def sample(self, rng, n):
        return rng.choice(self.enumerate_all(n))


def f1r_tag(r):
    return PointedMonoidTag(mu_monoid(r), name=f"f1r:{r}")


class BooleanTag(MonadTag):
    """The two-element idempotent semiring; every 0/1 vector qualifies."""

    name = "boolean"
    finite = True

    def membership(self, n, entries):
        ok = all(e in (0, 1) for e in entries)
        return ok, "boolean vector" if ok else "entry outside {0,1}"

    def unit(self, n, i):
        return tuple(1 if j == i else 0 for j in range(n))

    def substitute_entries(self, s, rows, n):
        return tuple(
            1 if any(si and row[j] for si, row in zip(s, rows)) else 0
            for j in range(n))

    def enumerate_all(self, n):
        return [tuple(bits) for bits in itertools.product((0, 1), repeat=n)]

    def sample(self, rng, n):
        return tuple(rng.randint(0, 1) for _ in range(n))


@dataclass(frozen=True)
class PartialSemiring:
    """Finite weak partial semiring: total multiplication with absorbing
    zero at index 0 and identity `one`; partial commutative addition
    with None marking the undefined value."""
    mul: tuple
    add: tuple
    one: int

    @property
    def size(self):
        return len(self.mul)


def make_partial_semiring(mul, add, one):
    mul = tuple(tuple(r) for r in mul)
    add = tuple(tuple(r) for r in add)
    n = len(mul)
    for a in range(n):
        if mul[a][0] != 0 or mul[0][a] != 0:
            raise MonadError("0 must absorb multiplication")
        if mul[a][one] != a or mul[one][a] != a:
            raise MonadError("one must be the multiplicative identity")
        if add[a][0] != a or add[0][a] != a:
            raise MonadError("0 must be neutral for the partial addition")
        for b in range(n):
            if add[a][b] != add[b][a]:
                raise MonadError("partial addition must be commutative")
            for c in range(n):
                if mul[mul[a][b]][c] != mul[a][mul[b][c]]:
                    raise MonadError("multiplication not associative")
    return PartialSemiring(mul, add, one)


def pointed_monoid_partial_semiring(monoid):
    """The partial semiring with g + h undefined for nonzero g, h."""
    n = monoid.size
    add = tuple(tuple(b if a == 0 else (a if b == 0 else None)
                      for b in range(n)) for a in range(n))
    return make_partial_semiring(monoid.mul, add, 1)


class UserTag(MonadTag):
    """Brute-force membership for a user-supplied weak partial semiring:
    a vector qualifies when its pairing with every carrier vector is a
    defined carrier element."""

    finite = True

    def __init__(self, ps, name="user"):
        self.ps = ps
        self.name = name

    def _dot(self, t, x):
        total = None
        for ti, xi in zip(reversed(t), reversed(x)):
            v = self.ps.mul[ti][xi]
            total = v if total is None else self.ps.add[v][total]
            if total is None:
                return None
        return 0 if total is None else total

    def membership(self, n, entries):
        entries = tuple(entries)
        if any(not 0 <= e < self.ps.size for e in entries):
            return False, "entry outside the carrier"
        for x in itertools.product(range(self.ps.size), repeat=n):
            if self._dot(entries, x) is None:
                return False, f"undefined at x={x}"
        return True, "total on the carrier"

    def unit(self, n, i):
        return tuple(self.ps.one if j == i else 0 for j in range(n))

    def substitute_entries(self, s, rows, n):
        out = []
        for j in range(n):
            col = tuple(row[j] for row in rows)
            v = self._dot(s, col)
            if v is None:
                raise ClosureViolation(f"{self.name}: undefined sum")
            out.append(v)
        return tuple(out)

    def enumerate_all(self, n):
        return [t for t in itertools.product(range(self.ps.size), repeat=n)
                if self.membership(n, t)[0]]

    def sample(self, rng, n):
        members = self.enumerate_all(n)
        return rng.choice(members) if members else None


_TAGS = {
    "d": DistributionTag,
    "dstar": SubDistributionTag,
    "zinf": L1BallTag,
    "oprime": L1BallOfQTag,
    "boolean": BooleanTag,
}


def tag_by_name(name):
    if name in _TAGS:
        return _TAGS[name]()
    if name.startswith("f1r:"):
        r = int(name.split(":", 1)[1])
        if r < 1:
            raise UnsupportedTag(f"bad root count in {name!r}")
        return f1r_tag(r)
    raise UnsupportedTag(f"unknown monad tag {name!r}")


@dataclass(frozen=True)
class MonadElement:
    tag: MonadTag
    n: int
    entries: tuple

    def __repr__(self):
        return f"MonadElement({self.tag.name}, {self.entries})"


def membership(tag, n, entries):
    """Membership of a vector in the tag's arity-n component, with a
    human-readable certificate."""
    return tag.membership(n, entries)


def element(tag, n, entries):
    ok, cert = tag.membership(n, entries)
    if not ok:
        raise ClosureViolation(f"{tag.name}: not a member ({cert})")
    return MonadElement(tag, n, tuple(entries))


def unit(tag, n, i):
    return element(tag, n, tag.unit(n, i))


def substitute(s, rows, n=None):
    """Substitution product s(rows): arities m and (n,)*m give arity n.

    Raises TagMismatch/ArityMismatch on malformed input and
    ClosureViolation if the result escapes the tag, which would
    contradict closure under substitution and is treated as a bug.
    """
    if any(r.tag is not s.tag and r.tag.name != s.tag.name for r in rows):
        raise TagMismatch("all elements must share one tag")
    if len(rows) != s.n:
        raise ArityMismatch(f"expected {s.n} rows, got {len(rows)}")
    if rows:
        n = rows[0].n
        if any(r.n != n for r in rows):
            raise ArityMismatch("rows have mixed arities")
    elif n is None:
        n = 0
    out = s.tag.substitute_entries(s.entries, [r.entries for r in rows], n)
    ok, cert = s.tag.membership(n, out)
    if not ok:
        raise ClosureViolation(f"{s.tag.name}: substitution escaped ({cert})")
    return MonadElement(s.tag, n, out)


def axiom_fuzz(tag, n_max, trials=None, seed=DEFAULT_SEED):
    """Exact check of the unit, projection and associativity laws.

    trials=None enumerates every combination at arities up to n_max
    (finite tags only); otherwise combinations are sampled with the
    given seed.
    """
    report = Report(tag.name)
    if trials is None:
        _fuzz_exhaustive(tag, n_max, report)
    else:
        _fuzz_sampled(tag, n_max, trials, seed, report)
    return report


def _law_checks(tag, t, n, witnesses_unit, witnesses_proj):
    one = tag.unit(1, 0)
    if tag.substitute_entries(one, [t], n) != tuple(t):
        witnesses_unit.append(f"1({t})")
    units = [tag.unit(n, i) for i in range(n)]
    if tag.substitute_entries(t, units, n) != tuple(t):
        witnesses_proj.append(f"{t}(e_1..e_{n})")


def _fuzz_exhaustive(tag, n_max, report):
    unit_checked = proj_checked = 0
    w_unit, w_proj = [], []
    for n in range(n_max + 1):
        for t in tag.enumerate_all(n):
            unit_checked += 1
            proj_checked += 1
            _law_checks(tag, t, n, w_unit, w_proj)
    report.record("unit_law", unit_checked, w_unit)
    report.record("projection_law", proj_checked, w_proj)

    checked = 0
    witnesses = []
    for m in range(n_max + 1):
        sm = tag.enumerate_all(m)
        for n in range(n_max + 1):
            sn = tag.enumerate_all(n)
            st_by_t = {}
            for t in itertools.product(sn, repeat=m):
                st_by_t[t] = [tag.substitute_entries(s, list(t), n) for s in sm]
            for k in range(n_max + 1):
                sk = tag.enumerate_all(k)
                for x in itertools.product(sk, repeat=n):
                    xl = list(x)
                    ux = {u: tag.substitute_entries(u, xl, k) for u in sn}
                    for t, sts in st_by_t.items():
                        v = [ux[u] for u in t]
                        for s, st in zip(sm, sts):
                            checked += 1
                            if tag.substitute_entries(s, v, k) != ux[st]:
                                witnesses.append(f"s={s} t={t} x={x}")
    report.record("associativity", checked, witnesses)


def _fuzz_sampled(tag, n_max, trials, seed, report):
    rng = random.Random(seed)
    unit_checked = proj_checked = 0
    w_unit, w_proj = [], []
    assoc_checked = 0
    w_assoc = []
    for _ in range(trials):
        n = rng.randint(0, n_max)
        t = tag.sample(rng, n)
        if t is not None:
            unit_checked += 1
            proj_checked += 1
            _law_checks(tag, t, n, w_unit, w_proj)

        m = rng.randint(0, n_max)
        n2 = rng.randint(0, n_max)
        k = rng.randint(0, n_max)
        s = tag.sample(rng, m)
        rows = [tag.sample(rng, n2) for _ in range(m)]
        xs = [tag.sample(rng, k) for _ in range(n2)]
        if s is None or any(r is None for r in rows) or any(
                x is None for x in xs):
            continue
        assoc_checked += 1
        st = tag.substitute_entries(s, rows, n2)
        tx = [tag.substitute_entries(r, xs, k) for r in rows]
        lhs = tag.substitute_entries(s, tx, k)
        rhs = tag.substitute_entries(st, xs, k)
        if lhs != rhs:
            w_assoc.append(f"s={s} t={rows} x={xs}")
    report.record("unit_law", unit_checked, w_unit)
    report.record("projection_law", proj_checked, w_proj)
    report.record("associativity", assoc_checked, w_assoc)


def usual_abs(x):
    return abs(Fraction(x))


def trivial_abs(x):
    return Fraction(0) if x == 0 else Fraction(1)


@dataclass
class SeminormResult:
    report: Report
    multiplicative: bool
    non_archimedean: bool
    is_norm: bool

    @property
    def is_valuation(self):
        return self.multiplicative and self.is_norm


def seminorm_check(absval, samples):
    """Verify the seminorm axioms on a sample set and flag the extras.

    samples: exact scalars including 0 and 1.  Checks |0|=0, |1|=1,
    submultiplicativity and the triangle inequality; flags whether the
    map looks multiplicative, non-archimedean, and definite on the
    samples.
    """
    samples = list(samples)
    report = Report("seminorm")
    w = []
    if absval(0) != 0:
        w.append("|0| != 0")
    if absval(1) != 1:
        w.append("|1| != 1")
    report.record("normalization", 2, w)

    sub_checked, w_sub = 0, []
    tri_checked, w_tri = 0, []
    multiplicative = True
    non_arch = True
    for x in samples:
        for y in samples:
            sub_checked += 1
            ax, ay, axy = absval(x), absval(y), absval(x * y)
            if axy > ax * ay:
                w_sub.append(f"|{x}*{y}|")
            if axy != ax * ay:
                multiplicative = False
            tri_checked += 1
            s = absval(x + y)
            if s > ax + ay:
                w_tri.append(f"|{x}+{y}|")
            if s > max(ax, ay):
                non_arch = False
    report.record("submultiplicative", sub_checked, w_sub)
    report.record("triangle", tri_checked, w_tri)
    is_norm = all(absval(x) != 0 for x in samples if x != 0)
    return SeminormResult(report, multiplicative, non_arch, is_norm)


def unit_ball(absval):
    """Membership predicate of the unit ball of a seminormed domain."""
    return lambda x: absval(x) <= 1


def _sample_unit_ball_point(rng):
    q = rng.randint(1, MAX_DENOMINATOR)
    p = rng.randint(-q, q)
    return Fraction(p, q)


def excess_witness(t, max_halvings=64):
    """For t with l1 norm above 1, a unit-ball vector x with |t(x)| > 1.

    Follows the conjugate recipe x_i = sign(t_i) |t_i| / (|t_i| + eps)
    with a shrinking rational eps.  Raises WitnessSearchFailed if the
    cap is hit, which cannot happen while the l1 norm exceeds 1.
    """
    t = tuple(Fraction(v) for v in t)
    eps = Fraction(1)
    for _ in range(max_halvings):
        x = tuple((abs(v) / (abs(v) + eps)) * (1 if v >= 0 else -1)
                  for v in t)
        value = sum((ti * xi for ti, xi in zip(t, x)), Fraction(0))
        if abs(value) > 1:
            return x, value
        eps /= 2
    raise WitnessSearchFailed(f"no unit-ball witness found for t={t}")


def oK_vs_oKprime(n, trials, seed=DEFAULT_SEED):
    """Evidence that over (Q, usual absolute value) the stabilizer of the
    unit ball is exactly the l1 ball.

    Inclusion side: l1 members never push unit-ball vectors outside the
    ball.  Excess side: every sampled vector of l1 norm above 1 admits
    an explicit unit-ball witness taken outside the ball.
    """
    rng = random.Random(seed)
    report = Report("oprime")
    tag = L1BallOfQTag()

    checked, witnesses = 0, []
    for _ in range(trials):
        t = tag.sample(rng, n)
        x = tuple(_sample_unit_ball_point(rng) for _ in range(n))
        value = sum((ti * xi for ti, xi in zip(t, x)), Fraction(0))
        checked += 1
        if abs(value) > 1:
            witnesses.append(f"t={t} x={x} t(x)={value}")
    report.record("unit_ball_closure", checked, witnesses)

    checked, witnesses = 0, []
    for _ in range(trials):
        while True:
            v = tuple(Fraction(rng.randint(-8, 8), rng.randint(1, 8))
                      for _ in range(n))
            norm = sum((abs(e) for e in v), Fraction(0))
            if norm > 1:
                break
        checked += 1
        try:
            x, value = excess_witness(v)
        except WitnessSearchFailed as exc:
            witnesses.append(str(exc))
            continue
        if any(abs(xi) > 1 for xi in x) or abs(value) <= 1:
            witnesses.append(f"bad witness for t={v}")
    report.record("l1_excess_witness", checked, witnesses)
    return report

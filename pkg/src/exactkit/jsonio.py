"""Versioned JSON text forms for the object kinds the tool exchanges.

Every document carries {"schema": 1, "kind": ...}.  Loaders validate
and return domain objects; dumpers emit canonical dictionaries (sorted
keys, rationals as "p/q" strings).
"""

from __future__ import annotations

import json
from fractions import Fraction

from .closures import ClosureSpace, make_closure_space, \
    make_matroid_from_independent, make_matroid_from_rank
from .cmon import CMon, make_cmon
from .core import Morphism
from .diagrams import PreCrystal, Quiver, make_precrystal
from .polynorm import PolySpace, space_from_generators
from .psets import FinPointedMonoid, GSet, PSet, make_gset


class SchemaError(ValueError):
    pass


def _require(cond, msg):
    if not cond:
        raise SchemaError(msg)


def _intlist(v, msg):
    _require(isinstance(v, list) and all(isinstance(x, int) for x in v), msg)
    return v


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}")
    return load_dict(doc)


def load_dict(doc):
    _require(isinstance(doc, dict), "document must be an object")
    _require(doc.get("schema") == 1, "schema must be 1")
    kind = doc.get("kind")
    loader = _LOADERS.get(kind)
    _require(loader is not None, f"unknown kind {kind!r}")
    return kind, loader(doc)


def _load_pset(doc):
    n = doc.get("psets")
    _require(isinstance(n, int) and n >= 0, "psets must be a natural number")
    return PSet(n)


def _load_pset_map(doc):
    dom = PSet(doc.get("dom", -1))
    cod = PSet(doc.get("cod", -1))
    table = _intlist(doc.get("table"), "table must be an integer array")
    _require(len(table) == dom.size and table[0] == 0
             and all(0 <= v < cod.size for v in table),
             "table is not a pointed map")
    return Morphism(dom, cod, tuple(table))


def _load_gset(doc):
    mul = doc.get("monoid")
    _require(isinstance(mul, list), "monoid must be a table")
    monoid = FinPointedMonoid(tuple(tuple(r) for r in mul))
    size = doc.get("size")
    action = doc.get("action")
    _require(isinstance(size, int) and isinstance(action, list),
             "gset needs size and action")
    return monoid, make_gset(monoid, size, action)


def _load_quiver(doc):
    vertices = doc.get("vertices")
    arrows = doc.get("arrows")
    _require(isinstance(vertices, int) and vertices >= 1,
             "vertices must be a positive integer")
    _require(isinstance(arrows, list) and all(
        isinstance(a, list) and len(a) == 2 for a in arrows),
        "arrows must be [source, target] pairs")
    return Quiver(vertices, tuple((a[0], a[1]) for a in arrows))


def _load_closure(doc):
    ground = doc.get("ground")
    flats = _intlist(doc.get("flats"), "flats must be a bitmask array")
    _require(isinstance(ground, int) and ground >= 1, "bad ground size")
    return make_closure_space(ground, flats)


def _load_matroid(doc):
    ground = doc.get("ground")
    _require(isinstance(ground, int) and ground >= 1, "bad ground size")
    if "independent" in doc:
        ind = _intlist(doc["independent"], "independent must be bitmasks")
        return make_matroid_from_independent(ground, ind)
    rank = _intlist(doc.get("rank"), "need independent or rank")
    _require(len(rank) == 1 << ground, "rank table must cover all subsets")
    return make_matroid_from_rank(ground, rank)


def _load_cmon(doc):
    add = doc.get("add")
    _require(isinstance(add, list), "add must be a table")
    return make_cmon(add)


def _load_precrystal(doc):
    size = doc.get("size")
    ops = doc.get("ops")
    _require(isinstance(size, int) and isinstance(ops, list),
             "precrystal needs size and ops")
    return make_precrystal(size, ops)


def _load_polynorm(doc):
    dim = doc.get("dim")
    gens = doc.get("generators")
    _require(isinstance(dim, int) and dim >= 0, "bad dimension")
    _require(isinstance(gens, list), "generators must be a list of vectors")
    parsed = []
    for g in gens:
        _require(isinstance(g, list) and len(g) == dim, "bad generator arity")
        parsed.append(tuple(Fraction(str(v)) for v in g))
    return space_from_generators(dim, parsed)


_LOADERS = {
    "pset": _load_pset,
    "pset_map": _load_pset_map,
    "gset": _load_gset,
    "quiver": _load_quiver,
    "closure": _load_closure,
    "matroid": _load_matroid,
    "cmon": _load_cmon,
    "precrystal": _load_precrystal,
    "polynorm": _load_polynorm,
}


def dump(obj, extra=None):
    if isinstance(obj, PSet):
        doc = {"schema": 1, "kind": "pset", "psets": obj.n}
    elif isinstance(obj, Quiver):
        doc = {"schema": 1, "kind": "quiver", "vertices": obj.vertices,
               "arrows": [list(a) for a in obj.arrows]}
    elif isinstance(obj, ClosureSpace):
        doc = {"schema": 1, "kind": "closure", "ground": obj.ground,
               "flats": list(obj.flats)}
    elif isinstance(obj, CMon):
        doc = {"schema": 1, "kind": "cmon", "add": [list(r) for r in obj.add]}
    elif isinstance(obj, PreCrystal):
        doc = {"schema": 1, "kind": "precrystal", "size": obj.size,
               "ops": [list(r) for r in obj.ops]}
    elif isinstance(obj, PolySpace):
        doc = {"schema": 1, "kind": "polynorm", "dim": obj.dim,
               "generators": [[str(v) for v in g] for g in obj.generators]}
    elif isinstance(obj, GSet):
        doc = {"schema": 1, "kind": "gset", "size": obj.size,
               "action": [list(r) for r in obj.action]}
    elif isinstance(obj, Morphism) and isinstance(obj.dom, PSet):
        doc = {"schema": 1, "kind": "pset_map", "dom": obj.dom.n,
               "cod": obj.cod.n, "table": list(obj.table)}
    else:
        raise SchemaError(f"no JSON form for {type(obj).__name__}")
    if extra:
        doc.update(extra)
    return json.dumps(doc, sort_keys=True, indent=2)

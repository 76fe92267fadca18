"""Command-line driver.

    exactkit verify --category psets --max-size 4 [--json]
    exactkit hall   --category psets --max-size 4 [--out table.csv]
    exactkit fuzz   --monad zinf --n 5 --trials 1000 --seed 42 [--json]
    exactkit fmt    --in object.json

Exit codes: 0 all checks pass, 1 a mathematical violation was found,
2 usage or input error.  The environment variable EXACTKIT_SEED
overrides the default seed when --seed is not given.  Identical
invocations produce byte-identical reports.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import jsonio
from .closures import closure_category
from .cmon import (boolean_semiring, cmon_category, f2_semiring,
                   semiring_module_category, trivial_semiring)
from .core import (CategoryError, Report, check_stability,
                   check_strict_composition)
from .diagrams import funcat_category, precrystal_category, \
    quiver_rep_category
from .groups import groups_demo_category
from .hall import hall_table
from .monadcalc import (DEFAULT_SEED, MonadError, UnsupportedTag, axiom_fuzz,
                        oK_vs_oKprime, tag_by_name)
from .polynorm import ns_axiom_suite
from .psets import gset_category, mu_monoid, pset_category

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2

DEFAULT_BOUNDS = {
    "psets": 4, "psets-strict": 4, "cmon": 4, "closure": 3, "matroid": 3,
    "precrystal": 3, "groups-demo": 8,
}


class UsageError(Exception):
    pass


def build_category(name):
    if name == "psets":
        return pset_category(False)
    if name == "psets-strict":
        return pset_category(True)
    if name == "precrystal":
        return precrystal_category(1)
    if name == "closure":
        return closure_category(False)
    if name == "matroid":
        return closure_category(True)
    if name == "cmon":
        return cmon_category()
    if name == "groups-demo":
        return groups_demo_category()
    if name.startswith("gset:"):
        spec = name.split(":", 1)[1]
        if spec == "trivial":
            return gset_category(mu_monoid(1))
        if spec.startswith("mu") and spec[2:].isdigit():
            return gset_category(mu_monoid(int(spec[2:])))
        raise UsageError(f"unknown monoid spec {spec!r} (use trivial, mu2, ...)")
    if name.startswith("mod:"):
        spec = name.split(":", 1)[1]
        semirings = {"b": boolean_semiring, "boolean": boolean_semiring,
                     "f2": f2_semiring, "trivial": trivial_semiring}
        if spec not in semirings:
            raise UsageError(f"unknown semiring {spec!r} (use b, f2, trivial)")
        return semiring_module_category(semirings[spec](), name=f"mod:{spec}")
    if name.startswith("quiver:"):
        path = name.split(":", 1)[1]
        try:
            with open(path) as fh:
                kind, quiver = jsonio.loads(fh.read())
        except (OSError, jsonio.SchemaError) as exc:
            raise UsageError(f"cannot load quiver from {path!r}: {exc}")
        if kind != "quiver":
            raise UsageError(f"{path!r} holds a {kind}, not a quiver")
        return quiver_rep_category(quiver)
    if name == "polynorm":
        return None  # handled separately: randomized suite
    raise UsageError(f"unknown category {name!r}")


def default_seed(args_seed):
    if args_seed is not None:
        return args_seed
    env = os.environ.get("EXACTKIT_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"EXACTKIT_SEED must be an integer, got {env!r}")
    return DEFAULT_SEED


def _emit(report, as_json):
    print(report.to_json() if as_json else report.to_text())
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_verify(args):
    seed = default_seed(args.seed)
    if args.category == "polynorm":
        bound = args.max_size if args.max_size is not None else 2
        if bound < 1:
            raise UsageError("--max-size must be >= 1")
        report = ns_axiom_suite(dim_max=bound, sample_budget=args.samples,
                                seed=seed)
        return _emit(report, args.json)
    cat = build_category(args.category)
    bound = args.max_size
    if bound is None:
        bound = DEFAULT_BOUNDS.get(args.category, 3)
    if bound < 1:
        raise UsageError("--max-size must be >= 1")
    report = check_stability(cat, bound)
    report.extend(check_strict_composition(cat, bound))
    return _emit(report, args.json)


def cmd_hall(args):
    if args.category == "polynorm":
        raise UsageError("hall tables need an enumerable category")
    cat = build_category(args.category)
    bound = args.max_size
    if bound is None:
        bound = DEFAULT_BOUNDS.get(args.category, 3)
    if bound < 0:
        raise UsageError("--max-size must be >= 0")
    csv = hall_table(cat, bound).to_csv()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(csv)
    else:
        sys.stdout.write(csv)
    return EXIT_OK


def cmd_fuzz(args):
    seed = default_seed(args.seed)
    try:
        tag = tag_by_name(args.monad)
    except UnsupportedTag as exc:
        raise UsageError(str(exc))
    trials = args.trials
    if trials is None and not tag.finite:
        trials = 1000
    report = axiom_fuzz(tag, args.n, trials=trials, seed=seed)
    if args.monad == "oprime":
        report.extend(oK_vs_oKprime(max(args.n, 1), trials or 1000, seed))
    return _emit(report, args.json)


def cmd_fmt(args):
    try:
        with open(args.infile) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc))
    kind, obj = jsonio.loads(text)
    if kind == "gset":
        monoid, gst = obj
        print(jsonio.dump(gst, extra={
            "monoid": [list(r) for r in monoid.mul]}))
    else:
        print(jsonio.dump(obj))
    return EXIT_OK


def make_parser():
    parser = argparse.ArgumentParser(
        prog="exactkit",
        description="Exact verification of kernel/cokernel calculus in "
                    "finite pointed categories.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the axiom suites on a category")
    p.add_argument("--category", required=True)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--samples", type=int, default=200,
                   help="sample budget for the polynorm suite")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("hall", help="emit the table of subobject counts")
    p.add_argument("--category", required=True)
    p.add_argument("--max-size", type=int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_hall)

    p = sub.add_parser("fuzz", help="fuzz the substitution axioms of a monad tag")
    p.add_argument("--monad", required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--trials", type=int, default=None,
                   help="omit for exhaustive enumeration on finite tags")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("fmt", help="validate and canonicalize a JSON object")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_fmt)
    return parser


def main(argv=None):
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, jsonio.SchemaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CategoryError, MonadError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

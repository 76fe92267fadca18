"""exactkit: exact-arithmetic kernel/cokernel calculus over finite
pointed categories, with axiom suites, Hall counting, monad element
calculus, and polyhedral-normed rational spaces."""

from .core import (BoundTooSmall, CategoryError, Check, Factorization,
                   Mismatch, Morphism, MorphismClass, NonCommuting,
                   NotStrictEpi, NotStrictMono, Report, Square,
                   UnsupportedOperation, check_stability,
                   check_strict_composition, classify, factorize,
                   is_exact_pair, is_strict, pullback_strict_mono,
                   pushout_strict_epi, verify_square)

__all__ = [
    "BoundTooSmall", "CategoryError", "Check", "Factorization", "Mismatch",
    "Morphism", "MorphismClass", "NonCommuting", "NotStrictEpi",
    "NotStrictMono", "Report", "Square", "UnsupportedOperation",
    "check_stability", "check_strict_composition", "classify", "factorize",
    "is_exact_pair", "is_strict", "pullback_strict_mono",
    "pushout_strict_epi", "verify_square",
]

__version__ = "0.1.0"

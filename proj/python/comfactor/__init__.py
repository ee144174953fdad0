"""Detection of commutative factor arguments in discrete factor graphs."""

from comfactor._core import (
    ComfactorError,
    CountedFactor,
    Factor,
    GraphDocument,
    __version__,
    a_decor,
    brute_force,
    buckets,
    cc_decor,
    compress,
    decor_plus,
    find_witness,
    gen_groups,
    gen_single,
    is_commutative,
    load,
    loads,
    make_factor,
    original_decor,
)

__all__ = [
    "ComfactorError",
    "CountedFactor",
    "Factor",
    "GraphDocument",
    "__version__",
    "a_decor",
    "brute_force",
    "buckets",
    "cc_decor",
    "compress",
    "decor_plus",
    "find_witness",
    "gen_groups",
    "gen_single",
    "is_commutative",
    "load",
    "loads",
    "make_factor",
    "original_decor",
]

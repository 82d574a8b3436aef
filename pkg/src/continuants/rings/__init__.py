from .core import (
    DEFAULT_CAP,
    BuildError,
    Ring,
    RingParams,
    build_ring,
    check_axioms,
    nonunits,
    ring_isomorphic_params,
    units,
)
from .spec import (
    GF,
    BivarQuot,
    Product,
    PolyQuot,
    RingSpec,
    SpecError,
    TableRing,
    Zmod,
    parse_spec,
)

__all__ = [
    "DEFAULT_CAP", "BuildError", "Ring", "RingParams", "build_ring", "check_axioms",
    "nonunits", "ring_isomorphic_params", "units", "GF", "BivarQuot", "Product",
    "PolyQuot", "RingSpec", "SpecError", "TableRing", "Zmod", "parse_spec",
]

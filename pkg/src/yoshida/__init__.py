"""Finite groupoids, their algebras, Ω and the Yoshida algebra, crossed
Burnside rings, and exact checks relating their centers."""

from .groupoid import (
    FiniteGroupoid,
    GroupoidError,
    connected_components,
    cyclic,
    disjoint_union,
    klein4,
    pair_groupoid,
    product,
    symmetric,
    transversal,
    validate,
)
from .action import GSet, BoundExceeded, omega, gset_product
from .algebra import (
    SCAlgebra,
    center,
    fingerprint,
    groupoid_algebra,
    yoshida_algebra,
    yoshida_dimension,
)
from .burnside import crossed_burnside, rho
from .dsl import parse_spec, build, load
from .checks import Options, run_checks, VerificationReport

__version__ = "0.1.0"

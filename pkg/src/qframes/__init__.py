"""qframes: a workbench for upper-continuous modular lattices.

Carriers (finite lattices and symbolic ordinal chains), homomorphisms and
quotients, Krull/Gabriel dimension with torsion and localization, crossed
products and their submodule lattices, linear cellular automata with the
reverse-inclusion pipeline, sofic quasi-actions, the main-theorem engine,
and the finite-discrete duality bridge.
"""

__version__ = "0.1.0"

from .ordinals import Ordinal, parse_ordinal
from .lattice import (
    FiniteLattice,
    Segment,
    chain,
    chain_conditions,
    composition_refine,
    diamond_m3,
    divisor_lattice,
    family_props,
    lattice_props,
    length,
    pentagon_n5,
    product,
    socle_series,
    subspace_lattice,
    verify_lattice,
)
from .chains import ChainLattice
from .maps import (
    Congruence,
    QframeHom,
    congruence_closure,
    kernel_and_algebraicity,
    module_hom_lift,
    quotient_by_congruence,
    verify_congruence,
    verify_hom,
)
from .dimension import (
    DimensionValue,
    SerreClass,
    gabriel_dim,
    gdim_le_class,
    is_alpha_simple,
    krull_dim,
    localize,
    primary_class,
    serre_verify,
    torsion,
    torsion_localize_pipeline,
)

__all__ = [
    "Ordinal", "parse_ordinal",
    "FiniteLattice", "Segment", "chain", "chain_conditions",
    "composition_refine", "diamond_m3", "divisor_lattice", "family_props",
    "lattice_props", "length", "pentagon_n5", "product", "socle_series",
    "subspace_lattice", "verify_lattice",
    "ChainLattice",
    "Congruence", "QframeHom", "congruence_closure",
    "kernel_and_algebraicity", "module_hom_lift", "quotient_by_congruence",
    "verify_congruence", "verify_hom",
    "DimensionValue", "SerreClass", "gabriel_dim", "gdim_le_class",
    "is_alpha_simple", "krull_dim", "localize", "primary_class",
    "serre_verify", "torsion", "torsion_localize_pipeline",
]

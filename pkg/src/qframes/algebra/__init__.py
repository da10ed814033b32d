"""Finite rings, groups, crossed products, modules, and finiteness checks."""

from .groups import FiniteGroup
from .rings import GF, MatrixRing, TableRing, Zmod, verify_ring
from .crossed import (
    CrossedProductRing,
    CrossedProductSpec,
    galois_crossed_spec,
    group_ring_spec,
    induced_module,
    verify_crossed,
)
from .modules import (
    FiniteModule,
    ModuleHom,
    all_submodules,
    lattice_hom_from_module_hom,
    lattice_model,
    module_length,
    restrict_to_base_ring,
    span,
    submodule_length,
)
from .finiteness import stable_finiteness_check, surj_implies_inj_check

__all__ = [
    "FiniteGroup", "GF", "MatrixRing", "TableRing", "Zmod", "verify_ring",
    "CrossedProductRing", "CrossedProductSpec", "galois_crossed_spec",
    "group_ring_spec", "induced_module", "verify_crossed",
    "FiniteModule", "ModuleHom", "all_submodules",
    "lattice_hom_from_module_hom", "lattice_model", "module_length",
    "restrict_to_base_ring", "span", "submodule_length",
    "stable_finiteness_check", "surj_implies_inj_check",
]

"""Folding of ADE diagrams, Weyl groups and integral lattices, in exact arithmetic."""

from .dynkin import automorphism_group, build_diagram, cartan_matrix, parse_type
from .folding import fold, recognize_type
from .galois import ComponentSpec, ContractionSpec, compute_galois, fold_component, realize_on_ambient
from .lattice import BilinearLattice, SublatticeEmbedding, bb_reflection, flag_identity_check
from .rootsys import RootLattice, generate_weyl

__all__ = [
    "BilinearLattice",
    "ComponentSpec",
    "ContractionSpec",
    "RootLattice",
    "SublatticeEmbedding",
    "automorphism_group",
    "bb_reflection",
    "build_diagram",
    "cartan_matrix",
    "compute_galois",
    "flag_identity_check",
    "fold",
    "fold_component",
    "generate_weyl",
    "parse_type",
    "realize_on_ambient",
    "recognize_type",
]

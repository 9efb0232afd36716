"""Finite-scale workbench for homogeneous-set problems and their reductions.

Subpackages by concern:

- trees: finite trees of words, homogeneity oracles, exact dyadic densities
- reductions: tree-to-tree and tree-to-tournament transformers with decoders
- sat: trees vs propositional clause lists, satisfiability oracles
- widgets: 3-coloring gadget library and the clause-to-graph compiler
- graphs: colorability, odd-path machinery, graph-side reductions
- adversary: stage-based adversarial graph builders with exact measures
- cli: batch front end (gen / reduce / verify / solve)
"""

from .trees import (
    ColorSet,
    Dyadic,
    FinTree,
    PartialHom,
    Word,
    enumerate_homogeneous,
    full_tree,
    func_homogeneous_to_depth,
    gamma_restrict,
    gamma_tree,
    min_level_density,
    paths_at_horizon,
    prune,
    tree_homogeneous_to_depth,
    validate_tree,
    word_homogeneous,
)
from .graphs import Graph, HomVertexSet, is_k_homogeneous, odd_cycle_exists, odd_path_exists

__all__ = [
    "ColorSet",
    "Dyadic",
    "FinTree",
    "Graph",
    "HomVertexSet",
    "PartialHom",
    "Word",
    "enumerate_homogeneous",
    "full_tree",
    "func_homogeneous_to_depth",
    "gamma_restrict",
    "gamma_tree",
    "is_k_homogeneous",
    "min_level_density",
    "odd_cycle_exists",
    "odd_path_exists",
    "paths_at_horizon",
    "prune",
    "tree_homogeneous_to_depth",
    "validate_tree",
    "word_homogeneous",
]

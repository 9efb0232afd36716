"""Finite trees, homogeneous sets, and exact level densities.

A finite tree is a prefix-closed set of words over an alphabet, truncated
at a horizon.  A homogeneous set is a set of positions plus a color such
that every level up to a depth has a node carrying that color at those
positions.  Run: python3 demos/01_trees_and_homogeneity.py
"""

from treehom.trees import (
    ColorSet,
    PartialHom,
    enumerate_homogeneous,
    full_tree,
    func_homogeneous_to_depth,
    gamma_restrict,
    gamma_tree,
    min_level_density,
    paths_at_horizon,
    tree_homogeneous_to_depth,
    tree_to_text,
)

print("== the full binary tree to depth 3 ==")
t = full_tree(2, 3)
print(tree_to_text(t).strip())

print("\n== homogeneity checks ==")
hom = ColorSet((0, 2), 1)
print(f"positions {hom.positions} color {hom.color} homogeneous to depth 3:",
      tree_homogeneous_to_depth(t, hom, 3))

pinned = gamma_tree({0, 1}, 1, 4)  # every node starts 1 1
print("pinned tree level sizes:", [len(pinned.level(s)) for s in range(5)])
print("its exact min level density:", min_level_density(pinned))

print("\n== the two homogeneity notions agree on constant maps ==")
h = PartialHom.of({0: 1, 1: 1})
print("as ColorSet:", tree_homogeneous_to_depth(pinned, ColorSet((0, 1), 1), 4))
print("as PartialHom:", func_homogeneous_to_depth(pinned, h, 4))

print("\n== brute-force enumeration of every homogeneous set ==")
sols = enumerate_homogeneous(pinned, 4, 3)
for s in sols:
    print(f"  positions {s.positions!s:12} color {s.color}")
print(f"{len(sols)} sets with positions below 3")

print("\n== restriction never raises density ==")
restricted = gamma_restrict(full_tree(2, 5), {1, 3}, 0)
print("density after pinning two positions to 0:", min_level_density(restricted))
print("paths through the restricted tree:", len(paths_at_horizon(restricted)))

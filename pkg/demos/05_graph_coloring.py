"""Graph-side machinery: odd paths, graph localization, coloring trees.

For two colors, homogeneity is exactly odd-path freedom, decided in the
bipartite double cover.  Run: python3 demos/05_graph_coloring.py
"""

from treehom.graphs import (
    Graph,
    clique_augment,
    decode_coloring_hom,
    decode_localized_graph,
    enumerate_odd_pairs,
    graph_to_coloring_tree,
    is_k_homogeneous,
    localize_graph,
    odd_path_exists,
)
from treehom.trees import enumerate_homogeneous

print("== odd paths via the double cover ==")
path = Graph(range(6), [(i, i + 1) for i in range(5)])
for x, y in [(0, 1), (0, 2), (0, 5)]:
    found, witness = odd_path_exists(path, x, y)
    print(f"  odd path {x}..{y}: {found}" + (f" witness {witness}" if found else ""))

print("\n== 2-homogeneity = no odd pair ==")
print("  {0, 2, 4}:", is_k_homogeneous(path, {0, 2, 4}, 2))
print("  {0, 3}:   ", is_k_homogeneous(path, {0, 3}, 2))

print("\n== localizing a graph to a vertex subset ==")
xs = [0, 3, 4]
pairs = enumerate_odd_pairs(path, xs)
print("odd pairs within the subset:", [(x, y) for x, y, _p in pairs])
loc = localize_graph(path, xs, pairs)
print("image edges:", sorted(loc.image.edges))
decoded = decode_localized_graph(loc, [loc.gadget_ids[0][0]])
print("decoding a one-vertex image solution:", decoded,
      "homogeneous:", is_k_homogeneous(path, decoded, 2))

print("\n== a graph becomes its coloring tree ==")
triangle = Graph(range(3), [(0, 1), (1, 2), (0, 2)])
ct = graph_to_coloring_tree(triangle, 3)
print("level sizes (proper colorings of first n vertices):",
      [len(ct.tree.level(s)) for s in range(4)])
for hom0 in enumerate_homogeneous(ct.tree, 3, 2)[:5]:
    if hom0.positions:
        decoded = decode_coloring_hom(ct, hom0)
        print(f"  tree set {hom0.positions}/{hom0.color} -> vertices {decoded.vertices}, "
              f"3-homogeneous: {is_k_homogeneous(triangle, decoded.vertices, 3)}")

print("\n== lifting 3-colorability to k colors with a joined clique ==")
aug, clique = clique_augment(triangle, 5)
print(f"added clique {clique}; now {len(aug.vertices)} vertices, {len(aug.edges)} edges")
print("old vertex set is 5-homogeneous after dropping the clique:",
      is_k_homogeneous(aug, {0}, 5, budget=10))

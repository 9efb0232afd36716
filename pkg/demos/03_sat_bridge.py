"""Trees as clause sets and formula lists as trees.

A word outside the tree becomes the clause falsified exactly by that word;
pinned-atom satisfiability mirrors tree homogeneity in both directions.
Run: python3 demos/03_sat_bridge.py
"""

from treehom.sat import (
    SatHomSet,
    atom,
    clauses_to_dimacs,
    decode_sat_hom,
    disj,
    finitely_satisfiable,
    formulas_to_text,
    formulas_to_tree,
    minimal_clauses,
    neg,
    sat_homogeneous,
    tree_to_clauses,
)
from treehom.trees import FinTree, enumerate_homogeneous, tree_homogeneous_to_depth

print("== a depth-2 tree and its clause set ==")
t = FinTree(2, 2, [(), (0,), (0, 0), (0, 1)])
clauses = tree_to_clauses(t)
print(clauses_to_dimacs(clauses).strip())
print("finitely satisfiable:", finitely_satisfiable(clauses, len(clauses)))
print("after dropping prefix-redundant clauses:", clauses_to_dimacs(minimal_clauses(clauses)).strip())

print("\n== pinned satisfiability = homogeneity ==")
for hom_set, value in [((0,), False), ((0,), True), ((1,), True)]:
    pins = SatHomSet.of(hom_set, value)
    ok = sat_homogeneous(clauses, pins, len(clauses))
    print(f"  atoms {pins.atoms} pinned {value}: satisfiable = {ok}")
    if ok:
        decoded = decode_sat_hom(pins)
        print(
            "    decodes to tree set",
            decoded.positions,
            "color",
            decoded.color,
            "homogeneous:",
            tree_homogeneous_to_depth(t, decoded, 2),
        )

print("\n== a formula list cut into an assignment tree ==")
formulas = [disj(atom(0), atom(1)), neg(atom(0))]
print(formulas_to_text(formulas).strip())
tree = formulas_to_tree(formulas, 3)
for s in range(4):
    print(f"  level {s}: {[''.join(map(str, w)) for w in tree.level(s)]}")
print("every homogeneous set of that tree pins the formulas consistently:")
for hom in enumerate_homogeneous(tree, 3, 2):
    print(f"  positions {hom.positions} color {hom.color}")

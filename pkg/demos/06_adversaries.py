"""Stage-based adversary games with exact dyadic bookkeeping.

The priority builder defeats pair-enumerating adversaries with length-3
bridges; the measure builder defeats oracle-indexed adversaries on more
than 2/5 of oracles, comparing exact fractions against 9/10, 4/5, 2/5.
Run: python3 demos/06_adversaries.py
"""

from fractions import Fraction

from treehom.adversary import (
    AdversarySchedule,
    OracleAdversary,
    avoidance_tree,
    bad_set,
    greedy_homogeneous,
    measure_build,
    priority_build,
    replay_checks,
    subset_decode,
    verify_defeated,
)
from treehom.graphs import odd_path_exists
from treehom.trees import enumerate_homogeneous, gamma_tree, min_level_density, random_positive_measure_tree

print("== priority construction ==")
adv = AdversarySchedule(0, ((6, 3, 5),))
run = priority_build([adv], 10)
for act in run.actions:
    print(f"  stage {act.stage}: adversary {act.adversary} pair {act.pair} bridged via {act.bridge}")
print("  defeated:", verify_defeated(run.graph, adv),
      "odd path:", odd_path_exists(run.graph, 3, 5)[1])

print("\n== measure construction ==")
oracle = OracleAdversary.of(0, [((0,), 20), ((1,), 21), ((0,), 30), ((1,), 31)])
mrun = measure_build([oracle], 6)
for line in mrun.actions:
    print(" ", line)
for check in mrun.checks:
    print(f"  stage {check.stage} {check.kind}: measure {check.measure} vs "
          f"{check.threshold} -> {check.verdict}")
print("  replayed exactly:", replay_checks([oracle], mrun))

print("\n== Bad positions and greedy homogeneous growth ==")
t = gamma_tree({0, 1, 2}, 1, 8)
print("  positions whose zero-pin collapses the density:", bad_set(t, 3))
got = greedy_homogeneous(t, 3, 2)
for step in got.steps:
    print(f"  picked {step.position} (parameter {step.c_param}): density {step.density} >= 1/{step.floor.denominator}")

seeded = random_positive_measure_tree(4, 12, 3)
print("  on a random certified tree:",
      greedy_homogeneous(seeded, 3, 3).hom.positions)

print("\n== avoidance tree: defeating predicted sets ==")
preds = [(0, (0, 1, 2)), (1, (1, 3, 4, 5))]
tree = avoidance_tree(preds, 8)
print("  predicted sets:", [p for _i, p in preds])
print("  min level density:", min_level_density(tree), ">= 1/2")
homs = enumerate_homogeneous(tree, 8, 6)
offenders = [
    h for h in homs for _i, p in preds if set(p) <= set(h.positions)
]
print(f"  {len(homs)} homogeneous sets, {len(offenders)} contain a predicted set")

print("\n== the subset code behind the predictions ==")
print("  first six 2-element sets:", [subset_decode(i, 2) for i in range(6)])

import itertools
import random

import pytest
from fractions import Fraction

from treehom.adversary import (
    AdversarySchedule,
    OracleAdversary,
    SubsetCode,
    avoidance_tree,
    bad_set,
    exact_measure,
    greedy_homogeneous,
    measure_build,
    oracle_from_dict,
    oracle_to_dict,
    prediction_defeated,
    priority_build,
    replay_checks,
    schedule_from_dict,
    schedule_to_dict,
    subset_decode,
    subset_encode,
    validate_oracle_table,
    verify_defeated,
)
from treehom.errors import InputError
from treehom.graphs import Graph, odd_cycle_exists, odd_path_exists
from treehom.trees import (
    ColorSet,
    Dyadic,
    enumerate_homogeneous,
    full_tree,
    gamma_restrict,
    gamma_tree,
    min_level_density,
    random_positive_measure_tree,
    validate_tree,
)


# -- exact measure ----------------------------------------------------------------


def test_exact_measure_examples():
    assert exact_measure(4, lambda w: True) == 1
    assert exact_measure(3, lambda w: w[0] == 1) == Dyadic(1, 1)
    assert exact_measure(5, lambda w: w[0] == 1 and w[2] == 0) == Dyadic(1, 2)


# -- Bad sets and the greedy builder -------------------------------------------------


def test_bad_set_gamma_example():
    t = gamma_tree({0, 1, 2}, 1, 6)
    assert bad_set(t, 3) == [0, 1, 2]


def test_bad_set_full_tree_empty():
    assert bad_set(full_tree(2, 6), 3) == []


@pytest.mark.parametrize("c", [3, 4])
def test_bad_set_claim_sampled(c):
    for seed in range(12):
        t = random_positive_measure_tree(seed, 10, c)
        assert len(bad_set(t, c)) < 2 * c


def test_bad_set_matches_definitional_formula():
    """The sweep agrees with the literal per-position restriction."""
    from treehom.trees import random_tree

    for seed in range(8):
        t = random_tree(seed, 2, 6, thin=0.25)
        for c in (3, 4):
            for pins in ((), (1,)):
                expected = [
                    n
                    for n in range(t.horizon)
                    if min_level_density(
                        gamma_restrict(gamma_restrict(t, pins, 0), {n}, 0)
                    ).as_fraction()
                    < Fraction(1, 1 << (2 * c))
                ]
                assert bad_set(t, c, pins) == expected


def test_greedy_full_tree_takes_least_positions():
    got = greedy_homogeneous(full_tree(2, 6), 3, 3)
    assert got.complete
    assert got.hom == ColorSet((1, 2, 3), 0)


def test_greedy_gamma_example_picks_3():
    got = greedy_homogeneous(gamma_tree({0, 1, 2}, 1, 8), 3, 1)
    assert got.hom.positions == (3,)
    assert got.steps[0].density >= Fraction(1, 64)


def test_greedy_density_certificates():
    for seed in range(6):
        t = random_positive_measure_tree(seed + 50, 12, 3)
        got = greedy_homogeneous(t, 3, 3)
        for s, step in enumerate(got.steps):
            assert step.density.as_fraction() >= step.floor
            assert step.floor == Fraction(1, 1 << (3 * (1 << (s + 1))))


def test_greedy_bad_position_would_violate():
    t = gamma_tree({0, 1, 2}, 1, 8)
    # pinning position 0 to zero empties the tree: the invariant would break
    assert min_level_density(gamma_restrict(t, {0}, 0)).as_fraction() < Fraction(1, 64)


def test_greedy_rejects_thin_trees():
    with pytest.raises(InputError):
        greedy_homogeneous(gamma_tree({0, 1, 2, 3}, 1, 6), 3, 1)


def test_greedy_partial_when_horizon_exhausted():
    got = greedy_homogeneous(full_tree(2, 3), 3, 9)
    assert not got.complete
    assert got.hom.positions == (1, 2)


# -- subset coding ---------------------------------------------------------------------


def test_subset_code_singletons():
    for n in range(10):
        assert subset_encode([n]) == n
        assert subset_decode(n, 1) == (n,)


def test_subset_code_pairs_colex():
    expected = [(0, 1), (0, 2), (1, 2), (0, 3), (1, 3), (2, 3)]
    assert [subset_decode(i, 2) for i in range(6)] == expected
    assert [subset_encode(s) for s in expected] == list(range(6))


def test_subset_code_round_trip():
    for k in (1, 2, 3, 4):
        for i in range(60):
            assert subset_encode(subset_decode(i, k)) == i
    code = SubsetCode.build(3, 20)
    assert code.decode(5) == subset_decode(5, 3)
    assert code.encode(code.decode(31)) == 31


# -- avoidance tree ----------------------------------------------------------------------


def test_avoidance_tree_no_predictions():
    assert avoidance_tree([], 4) == full_tree(2, 4)


def test_avoidance_tree_single_prediction_density():
    t = avoidance_tree([(0, {0, 1, 2})], 6)
    assert validate_tree(t)
    for w in t.nodes:
        if len(w) >= 3:
            assert len({w[0], w[1], w[2]}) == 2
    assert min_level_density(t) == Dyadic(3, 2)  # 3/4


def test_avoidance_tree_density_floor():
    rng = random.Random(5)
    preds = []
    top = 0
    for i in range(3):
        p = sorted(rng.sample(range(10), i + 3))
        preds.append((i, p))
        top = max(top, max(p))
    t = avoidance_tree(preds, max(top + 2, 10))
    assert min_level_density(t).as_fraction() >= Fraction(1, 2)


def test_avoidance_tree_homogeneous_sets_defeat_predictions():
    preds = [(0, (0, 1, 2)), (1, (1, 3, 4, 5))]
    t = avoidance_tree(preds, 7)
    for hom in enumerate_homogeneous(t, 7, 6):
        for pred in preds:
            assert prediction_defeated(hom, pred)


def test_avoidance_tree_validates_sizes():
    with pytest.raises(InputError):
        avoidance_tree([(0, (0, 1))], 4)
    with pytest.raises(InputError):
        avoidance_tree([(0, (0, 1, 2)), (0, (3, 4, 5))], 6)


# -- priority construction ------------------------------------------------------------------


def test_priority_single_adversary_paper_shape():
    adv = AdversarySchedule(0, ((6, 3, 5),))
    run = priority_build([adv], 8)
    assert len(run.actions) == 1
    act = run.actions[0]
    assert (act.stage, act.adversary, act.pair, act.bridge) == (6, 0, (3, 5), (7, 8))
    assert run.graph.edges == frozenset({(3, 7), (7, 8), (5, 8)})
    found, path = odd_path_exists(run.graph, 3, 5)
    assert found and len(path) == 4
    assert verify_defeated(run.graph, adv)


def test_priority_no_events():
    run = priority_build([AdversarySchedule(0, ())], 10)
    assert run.graph.edges == frozenset()


def test_priority_least_index_acts_first():
    a0 = AdversarySchedule(0, ((5, 2, 4),))
    a1 = AdversarySchedule(1, ((5, 8, 9),))
    run = priority_build([a1, a0], 12)
    assert [a.adversary for a in run.actions][0] == 0
    assert {a.adversary for a in run.actions} == {0, 1}
    assert verify_defeated(run.graph, a0) and verify_defeated(run.graph, a1)


def test_priority_graph_acyclic_every_stage():
    rng = random.Random(1)
    advs = []
    base = 4
    for e in range(3):
        x = base + 3 * e
        advs.append(AdversarySchedule(e, ((10 + e, x, x + 1),)))
    run = priority_build(advs, 20)
    for edges in run.edges_by_stage:
        assert not odd_cycle_exists(Graph([], edges))


def test_priority_never_eligible_not_defeated():
    # pair below the adversary's own index is never eligible
    adv = AdversarySchedule(5, ((8, 2, 3),))
    run = priority_build([adv], 15)
    assert run.actions == ()
    assert not verify_defeated(run.graph, adv)


def test_priority_served_once():
    adv = AdversarySchedule(0, ((4, 1, 2), (5, 10, 11)))
    run = priority_build([adv], 12)
    assert len(run.actions) == 1


def test_schedule_validation_and_io():
    with pytest.raises(InputError):
        AdversarySchedule(0, ((5, 1, 2), (3, 4, 5)))
    adv = AdversarySchedule(2, ((3, 4, 5), (6, 7, 8)))
    assert schedule_from_dict(schedule_to_dict(adv)) == adv


# -- measure construction ---------------------------------------------------------------------


def test_measure_half_coverage_never_fires():
    # vertex 3 enters for oracles starting 1, vertex 4 deeper along the same
    # branch: covered measure stays exactly 1/2, below the 9/10 trigger
    adv = OracleAdversary.of(0, [((1,), 3), ((1, 0), 4)])
    run = measure_build([adv], 6)
    assert run.actions == ()
    type1 = [c for c in run.checks if c.kind == "type1"]
    assert type1 and all(not c.verdict for c in type1)
    assert all(c.measure == Dyadic(1, 1) for c in type1[1:])


def test_measure_full_coverage_fires_and_locks():
    adv = OracleAdversary.of(0, [((1,), 3), ((0,), 5)])
    run = measure_build([adv], 4)
    report = run.reports[0]
    assert report.type1_stage == 2
    assert report.locked == (3, 5)


def test_measure_fifteen_sixteenths_locks():
    adv = OracleAdversary.of(
        0,
        [((0,), 10), ((1, 0), 11), ((1, 1, 0), 12), ((1, 1, 1, 0), 13)],
    )
    run = measure_build([adv], 6)
    report = run.reports[0]
    assert report.type1_stage is not None
    assert report.locked == (10, 11, 12, 13)
    fired = [c for c in run.checks if c.kind == "type1" and c.verdict]
    assert fired[0].measure == Dyadic(15, 4)


def test_measure_type2_defeats_two_fifths():
    adv = OracleAdversary.of(
        0,
        [((0,), 20), ((1,), 21), ((0,), 30), ((1,), 31)],
    )
    run = measure_build([adv], 6)
    report = run.reports[0]
    assert report.type2_stage is not None
    assert report.defeated_measure is not None
    assert report.defeated_measure.as_fraction() > Fraction(2, 5)
    assert not odd_cycle_exists(run.graph)
    assert replay_checks([adv], run)


def test_measure_priority_unlocks_lower():
    strong = OracleAdversary.of(0, [((0,), 40), ((1,), 41)])
    weak = OracleAdversary.of(1, [((0,), 50), ((1,), 51)])
    # delay the strong adversary: its events only become visible later via a
    # longer prefix, letting the weak one lock first
    delayed = OracleAdversary.of(0, [((0, 0, 0, 0), 40), ((0, 0, 0, 1), 40),
                                     ((0, 0, 1), 40), ((0, 1), 40), ((1,), 41)])
    run = measure_build([delayed, weak], 8)
    acts = list(run.actions)
    assert any("R1 type I" in a for a in acts)
    assert any("R0 type I" in a for a in acts)
    # the weak lock must have been reset when R0 acted later
    r0 = [a for a in acts if "R0 type I" in a]
    r1 = [a for a in acts if "R1 type I" in a]
    assert acts.index(r1[0]) < acts.index(r0[0])


def test_oracle_table_validation():
    validate_oracle_table({(0,): {1}, (0, 1): {1, 2}})
    with pytest.raises(InputError):
        validate_oracle_table({(0,): {1, 2}, (0, 1): {1}})


def test_oracle_io_round_trip():
    adv = OracleAdversary.of(3, [((0, 1), 7), ((1,), 9)])
    assert oracle_from_dict(oracle_to_dict(adv)) == adv

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from treehom.errors import InputError
from treehom.sat import (
    Literal,
    SatHomSet,
    atom,
    clause_for_word,
    clause_satisfied,
    clause_to_formula,
    clauses_from_dimacs,
    clauses_to_dimacs,
    conj,
    decode_sat_hom,
    disj,
    eval_formula,
    finitely_satisfiable,
    formula_from_text,
    formulas_from_text,
    formulas_homogeneous,
    formulas_to_text,
    formulas_to_tree,
    formula_atoms,
    imp,
    is_two_branching,
    minimal_clauses,
    neg,
    sat_homogeneous,
    tree_to_clauses,
)
from treehom.trees import (
    ColorSet,
    FinTree,
    full_tree,
    gamma_tree,
    enumerate_homogeneous,
    random_tree,
    tree_homogeneous_to_depth,
)


def lits(*specs):
    return tuple(Literal(i, s > 0) for i, s in enumerate(specs))


def test_tree_to_clauses_full_tree_is_empty():
    assert tree_to_clauses(full_tree(2, 2)) == []


def test_tree_to_clauses_example():
    t = FinTree(2, 2, [(), (0,), (0, 0), (0, 1)])
    got = tree_to_clauses(t)
    # missing words are 1, 10, 11
    assert got == [
        (Literal(0, False),),
        (Literal(0, False), Literal(1, True)),
        (Literal(0, False), Literal(1, False)),
    ]
    assert is_two_branching(got)


def test_each_clause_falsified_exactly_by_its_word():
    t = random_tree(8, 2, 4)
    for s in range(1, 5):
        for sigma in itertools.product((0, 1), repeat=s):
            cl = clause_for_word(sigma)
            assert clause_satisfied(cl, sigma) is False
            for other in itertools.product((0, 1), repeat=s):
                if other != sigma:
                    assert clause_satisfied(cl, other) is True


def test_minimal_clauses_removes_prefixed():
    t = FinTree(2, 2, [(), (0,), (0, 0), (0, 1)])
    got = minimal_clauses(tree_to_clauses(t))
    assert got == [(Literal(0, False),)]


def test_tree_to_clauses_finitely_satisfiable_when_levels_alive():
    t = random_tree(3, 2, 4)
    clauses = tree_to_clauses(t)
    assert finitely_satisfiable(clauses, len(clauses))


def test_decode_sat_hom_round_trips():
    for t in [FinTree(2, 2, [(), (0,), (0, 0), (0, 1)]), gamma_tree({0}, 1, 3), random_tree(1, 2, 4)]:
        clauses = tree_to_clauses(t)
        n = len(clauses)
        for atoms in itertools.chain.from_iterable(
            itertools.combinations(range(t.horizon), r) for r in range(3)
        ):
            for value in (False, True):
                hom = SatHomSet.of(atoms, value)
                if sat_homogeneous(clauses, hom, n):
                    decoded = decode_sat_hom(hom)
                    assert tree_homogeneous_to_depth(t, decoded, t.horizon)


def test_sat_hom_color_convention():
    assert decode_sat_hom(SatHomSet.of({1, 3}, True)) == ColorSet((1, 3), 1)
    assert decode_sat_hom(SatHomSet.of({0}, False)) == ColorSet((0,), 0)


def test_finitely_satisfiable_examples():
    contradictory = [(Literal(0, True),), (Literal(0, False),)]
    assert not finitely_satisfiable(contradictory, 2)
    assert finitely_satisfiable(contradictory, 1)
    assert finitely_satisfiable([], 0)


def test_sat_homogeneous_examples():
    clauses = [(Literal(0, False),)]  # !a0
    assert not sat_homogeneous(clauses, SatHomSet.of({0}, True), 1)
    assert sat_homogeneous(clauses, SatHomSet.of({0}, False), 1)
    # empty pin reduces to finite satisfiability
    t = random_tree(5, 2, 4)
    clauses = tree_to_clauses(t)
    assert sat_homogeneous(clauses, SatHomSet.of((), True), len(clauses)) == finitely_satisfiable(
        clauses, len(clauses)
    )


def test_eval_formula_undefined_convention():
    f = disj(atom(0), atom(5))
    assert eval_formula(f, (1,)) is None  # mentions a5 beyond the word
    assert eval_formula(atom(0), (1,)) is True
    assert eval_formula(neg(atom(0)), (1,)) is False
    assert eval_formula(imp(atom(0), atom(1)), (1, 0)) is False
    assert eval_formula(conj(atom(0), neg(atom(1))), (1, 0)) is True


def test_formulas_to_tree_single_atom():
    t = formulas_to_tree([atom(0)], 3)
    assert t == gamma_tree({0}, 1, 3)


def test_formulas_to_tree_example_brute_force():
    fs = [disj(atom(0), atom(1)), neg(atom(0))]
    t = formulas_to_tree(fs, 2)
    expected_level2 = [
        sigma
        for sigma in itertools.product((0, 1), repeat=2)
        if all(eval_formula(f, sigma) is not False for f in fs)
    ]
    assert list(t.level(2)) == sorted(expected_level2) == [(0, 1)]
    # at length 1 the disjunction still mentions a1, hence is not yet false
    assert list(t.level(1)) == [(0,), (1,)]


def test_formulas_to_tree_empty_is_full():
    assert formulas_to_tree([], 3) == full_tree(2, 3)


def test_formulas_to_tree_unsat_prefix_reports_least_n():
    fs = [atom(0), neg(atom(0)), atom(1)]
    with pytest.raises(InputError, match="first 2"):
        formulas_to_tree(fs, 3)


def test_formulas_to_tree_has_node_per_level():
    fs = [disj(atom(0), atom(1)), imp(atom(0), atom(2)), neg(atom(1))]
    t = formulas_to_tree(fs, 4)
    assert all(len(t.level(s)) > 0 for s in range(5))


def test_galois_round_trip_small_trees():
    """tree -> clauses: ColorSets and SatHomSets coincide through decode;
    clauses -> formulas -> tree: image homogeneous sets pin the formula list."""
    for seed in range(6):
        t = random_tree(seed + 20, 2, 4, thin=0.25)
        clauses = tree_to_clauses(t)
        n = len(clauses)
        for hom in enumerate_homogeneous(t, t.horizon, min(3, t.horizon)):
            sat_hom = SatHomSet.of(hom.positions, hom.color == 1)
            assert sat_homogeneous(clauses, sat_hom, n)
            assert decode_sat_hom(sat_hom) == hom
        formulas = [clause_to_formula(cl) for cl in clauses]
        if not formulas:
            continue
        t2 = formulas_to_tree(formulas, t.horizon)
        # largest formula prefix whose atoms the horizon fully covers
        n_ok = 0
        for i, f in enumerate(formulas[: t.horizon]):
            if max(formula_atoms(f)) < t.horizon:
                n_ok = i + 1
            else:
                break
        for hom0 in enumerate_homogeneous(t2, t2.horizon, min(3, t2.horizon)):
            pins = SatHomSet.of(hom0.positions, hom0.color == 1)
            assert formulas_homogeneous(formulas, pins, n_ok)


def test_dimacs_round_trip():
    t = FinTree(2, 2, [(), (0,), (0, 0), (0, 1)])
    clauses = tree_to_clauses(t)
    text = clauses_to_dimacs(clauses)
    assert text.splitlines()[0] == "c two-branching true"
    assert text.splitlines()[1] == "p cnf 2 3"
    assert clauses_from_dimacs(text) == clauses


def test_dimacs_rejects_missing_terminator():
    with pytest.raises(InputError):
        clauses_from_dimacs("p cnf 1 1\n1\n")


def test_formula_text_round_trip():
    fs = [
        atom(3),
        neg(atom(0)),
        disj(neg(atom(0)), conj(atom(1), atom(2))),
        imp(atom(0), neg(atom(4))),
    ]
    text = formulas_to_text(fs)
    assert formulas_from_text(text) == fs


def test_formula_text_rejects_garbage():
    with pytest.raises(InputError):
        formula_from_text("(xor a0 a1)")
    with pytest.raises(InputError):
        formula_from_text("a0 a1")


@given(st.integers(0, 2000), st.integers(1, 4))
@settings(max_examples=40, deadline=None)
def test_two_branching_always(seed, horizon):
    t = random_tree(seed, 2, horizon)
    assert is_two_branching(tree_to_clauses(t))

import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from treehom.errors import DecodeError, InputError
from treehom.reductions import (
    LengthLexEnum,
    TabulatedColoring,
    Tournament,
    TransitiveDecodeResult,
    USequence,
    build_u_sequence,
    chain_code_tree,
    coloring_homogeneous,
    decode_chain_code,
    decode_fixed_color,
    decode_kary,
    decode_localized,
    decode_localized_coloring,
    decode_packed,
    fixed_color_tree,
    homog_from_transitive,
    is_everywhere_packed,
    kary_refine_step,
    kary_to_binary,
    localize_coloring,
    localize_positive_measure,
    localize_tree,
    pack_redundant,
    packed_expansion,
    pad_alphabet,
    stability_last_change,
    tournament_from_tree,
    transitive_subtournament,
)
from treehom.trees import (
    ColorSet,
    Dyadic,
    FinTree,
    PartialHom,
    chain_tree,
    enumerate_homogeneous,
    full_tree,
    gamma_tree,
    homogeneous_sets_via_level,
    min_level_density,
    paths_at_horizon,
    random_tree,
    tree_homogeneous_to_depth,
    validate_tree,
)

from oracles import naive_tree_homogeneous


# -- localization --------------------------------------------------------------


def test_localize_identity():
    t = full_tree(2, 4)
    assert localize_tree(t, (0, 1, 2, 3)) == full_tree(2, 4)


def test_localize_full_sparse():
    assert localize_tree(full_tree(2, 4), (1, 3)) == full_tree(2, 2)


def test_localize_gamma_example():
    got = localize_tree(gamma_tree({1}, 1, 4), (1, 3))
    assert got == gamma_tree({0}, 1, 2)


def test_localize_identity_property_on_random_trees():
    for seed in range(10):
        t = random_tree(seed, 2, 5)
        assert localize_tree(t, tuple(range(5))) == t


def test_localize_requires_increasing():
    with pytest.raises(InputError):
        localize_tree(full_tree(2, 3), (2, 1))


def test_decode_localized_examples():
    t = gamma_tree({1}, 1, 4)
    got = decode_localized(t, (1, 3), ColorSet((0,), 1))
    assert got == ColorSet((1,), 1)
    assert tree_homogeneous_to_depth(t, got, 2)
    assert decode_localized(t, (1, 3), ColorSet((), 0)) == ColorSet((), 0)
    t2 = random_tree(3, 2, 4)
    for hom in enumerate_homogeneous(t2, 4, 3):
        assert decode_localized(t2, tuple(range(4)), hom) == hom


def test_decode_localized_refuses_garbage():
    t = gamma_tree({1}, 1, 4)
    with pytest.raises(DecodeError):
        decode_localized(t, (1, 3), ColorSet((0,), 0))


def test_localize_positive_measure_examples():
    image, bound = localize_positive_measure(full_tree(2, 4), (0, 1, 2, 3))
    assert bound == 1 and min_level_density(image) == 1
    image, bound = localize_positive_measure(gamma_tree({0, 1, 2}, 1, 6), (3, 4, 5))
    assert bound == Dyadic(1, 3)
    assert min_level_density(image) >= bound
    t = random_tree(11, 2, 5)
    image, bound = localize_positive_measure(t, tuple(range(5)))
    assert min_level_density(image) == bound == min_level_density(t)


# -- k-ary to binary -----------------------------------------------------------


def test_kary_full_quaternary():
    assert kary_to_binary(full_tree(4, 1)) == full_tree(2, 2)


def test_kary_single_symbol():
    got = kary_to_binary(FinTree(4, 1, [(), (2,)]))
    assert got.nodes == {(), (1,), (1, 0)}


def test_kary_chain():
    got = kary_to_binary(chain_tree((3, 3), alphabet=4))
    assert got == chain_tree((1, 1, 1, 1))


def test_kary_rejects_non_power_of_two():
    with pytest.raises(InputError):
        kary_to_binary(full_tree(3, 1))
    padded = pad_alphabet(full_tree(3, 1), 4)
    assert kary_to_binary(padded).horizon == 2


def test_kary_refine_empty_hom_is_identity():
    s = kary_to_binary(full_tree(4, 2))
    s2, xs = kary_refine_step(s, ColorSet((), 0), 2)
    assert s2 == s and xs == ()


def test_kary_refine_restricts_density():
    s = full_tree(2, 4)
    s2, xs = kary_refine_step(s, ColorSet((0,), 0), 2)
    assert xs == (1,)
    assert min_level_density(s2) == Dyadic(1, 1)


def test_kary_refine_composes():
    s = kary_to_binary(full_tree(4, 2))
    one, _ = kary_refine_step(s, ColorSet((0, 2), 1), 2)
    two, _ = kary_refine_step(one, ColorSet((0, 2), 1), 2)
    assert one == two  # idempotent on the same set
    a, _ = kary_refine_step(s, ColorSet((0,), 1), 2)
    ab, _ = kary_refine_step(a, ColorSet((2,), 1), 2)
    direct, _ = kary_refine_step(s, ColorSet((0, 2), 1), 2)
    assert ab == direct


def test_kary_refine_congruence_check():
    s = kary_to_binary(full_tree(4, 2))
    with pytest.raises(InputError):
        kary_refine_step(s, ColorSet((0, 1), 0), 2)


def _kary_pipeline_solutions(tree, bits):
    """Drive the staged reduction end to end with brute-force image solvers,
    yielding every decoded source ColorSet with its certified source depth."""
    s = kary_to_binary(tree)
    stage = [(s, tuple(range(0, s.horizon + 1, bits)), [], s.horizon)]
    for level in range(bits):
        nxt = []
        for s_l, xs, colors, _cert in stage:
            xs = tuple(x for x in xs if x < s_l.horizon)
            if not xs:
                continue
            image = localize_tree(s_l, xs)
            cert = xs[image.horizon - 1] + 1 if image.horizon >= 1 else 0
            for hom0 in enumerate_homogeneous(image, image.horizon, image.horizon):
                if not hom0.positions:
                    continue
                hom = decode_localized(s_l, xs, hom0)
                s_next, xs_next = kary_refine_step(s_l, hom, bits)
                nxt.append((s_next, xs_next, colors + [(hom, hom.color)], cert))
        stage = nxt
    for _s, _xs, picked, cert in stage:
        last = picked[-1][0]
        yield decode_kary(last, [c for _h, c in picked], bits), cert // bits


@pytest.mark.parametrize(
    "tree",
    [
        full_tree(4, 2),
        FinTree(4, 2, [(), (2,), (3,), (2, 0), (2, 1), (3, 3)]),
        random_tree(7, 4, 2),
    ],
)
def test_kary_pipeline_round_trip(tree):
    decoded = list(_kary_pipeline_solutions(tree, 2))
    assert decoded
    for hom, cert in decoded:
        depth = min(cert, tree.horizon)
        assert tree_homogeneous_to_depth(tree, hom, depth)
        # cross-check against the brute-force source enumeration
        bound = max(hom.positions, default=-1) + 1
        if bound <= depth:
            assert hom in enumerate_homogeneous(tree, depth, bound)


def test_decode_kary_empty():
    got = decode_kary(ColorSet((), 0), [1, 0], 2)
    assert got == ColorSet((), 2)


# -- packing -------------------------------------------------------------------


def test_u_sequence_paper_values():
    useq = build_u_sequence(lambda n: n // 2, 4)
    assert useq.u == (0, 2, 6, 14, 30)


def test_u_sequence_validates_order_function():
    with pytest.raises(InputError):
        build_u_sequence(lambda n: max(0, 3 - n), 4)  # not nondecreasing
    with pytest.raises(InputError):
        build_u_sequence(lambda n: n + 1, 4)  # exceeds the identity
    with pytest.raises(InputError):
        build_u_sequence(lambda n: 0, 4)  # bounded, never reaches the next block


def test_packed_expansion_paper_string():
    useq = build_u_sequence(lambda n: n // 2, 5)
    got = packed_expansion((1, 0, 1, 0, 1), useq)
    expected = "11" + "0000" + "1" * 8 + "0" * 16 + "1" * 32
    assert "".join(map(str, got)) == expected


def test_pack_identity_order_function():
    t = full_tree(2, 3)
    image, useq = pack_redundant(t, lambda n: n)
    assert useq.u == (0, 1, 2, 3)
    assert image == t


def test_pack_block_constancy():
    t = random_tree(2, 2, 4)
    image, useq = pack_redundant(t, lambda n: n // 2)
    for w in image.nodes:
        for j in range(len(useq.u) - 1):
            lo, hi = useq.block(j)
            seg = w[lo:hi]
            assert len(set(seg)) <= 1


def test_decode_packed_full_path():
    t = full_tree(2, 3)
    image, useq = pack_redundant(t, lambda n: n // 2)
    tau = (1, 0, 1)
    h = PartialHom.of(dict(enumerate(packed_expansion(tau, useq))))
    assert decode_packed(h, image, useq) == tau


def test_decode_packed_sparse():
    t = full_tree(2, 3)
    image, useq = pack_redundant(t, lambda n: n // 2)
    tau = (0, 1, 1)
    full = packed_expansion(tau, useq)
    h = PartialHom.of({p: full[p] for p in range(0, len(full), 2)})
    assert is_everywhere_packed(h, useq.g_table, image.horizon)
    assert decode_packed(h, image, useq) == tau


def test_decode_packed_missing_block_errors():
    t = full_tree(2, 3)
    image, useq = pack_redundant(t, lambda n: n // 2)
    h = PartialHom.of({0: 1, 1: 1})  # nothing in [2, 6) or beyond
    with pytest.raises(DecodeError, match="pigeonhole"):
        decode_packed(h, image, useq)


def test_pack_round_trip_random():
    for seed in range(6):
        t = random_tree(seed + 40, 2, 4, thin=0.2)
        image, useq = pack_redundant(t, lambda n: n // 2)
        for tau in paths_at_horizon(t):
            h = PartialHom.of(dict(enumerate(packed_expansion(tau, useq))))
            assert decode_packed(h, image, useq) == tau


# -- fixed-color coding ----------------------------------------------------------


def test_length_lex_enum():
    enum = LengthLexEnum(2)
    assert enum.table(7) == [(), (0,), (1,), (0, 0), (0, 1), (1, 0), (1, 1)]
    for i in range(40):
        w = enum.word_at(i)
        assert len(w) <= i
        assert enum.index_of(w) == i


def test_fixed_color_tree_full():
    t = fixed_color_tree(full_tree(2, 2))
    assert set(t.level(2)) == {(0, 0), (0, 1)}


def test_fixed_color_tree_never_one_at_root_index():
    t = fixed_color_tree(random_tree(1, 2, 5))
    for w in t.nodes:
        if len(w) >= 1:
            assert w[0] == 0  # the empty word prefixes every witness


def test_fixed_color_no_full_batch_of_ones():
    for seed in range(8):
        src = random_tree(seed, 2, 6, thin=0.2)
        t = fixed_color_tree(src)
        enum = LengthLexEnum(2)
        for w in t.nodes:
            for m in range(4):
                lo, hi = enum.first_index(m), enum.first_index(m + 1)
                if hi <= len(w):
                    assert any(w[i] == 0 for i in range(lo, hi))


def test_decode_fixed_color_chain():
    src = chain_tree((1, 0, 1), horizon=3)
    t = fixed_color_tree(src)
    sols = [h for h in enumerate_homogeneous(t, 3, 3) if h.color == 0 and h.positions]
    assert sols
    for hom in sols:
        path = decode_fixed_color(src, hom)
        assert path in src.nodes


def test_decode_fixed_color_round_trip_random():
    for seed in range(6):
        src = random_tree(seed + 60, 2, 5, thin=0.2)
        t = fixed_color_tree(src)
        for hom in homogeneous_sets_via_level(t, t.horizon, min(4, t.horizon)):
            if hom.color != 0 or not hom.positions:
                continue
            if max(hom.positions) >= t.horizon:
                continue
            path = decode_fixed_color(src, hom)
            for i in range(len(path) + 1):
                assert path[:i] in src.nodes


def test_decode_fixed_color_empty():
    assert decode_fixed_color(full_tree(2, 2), ColorSet((), 0)) == ()


def test_decode_fixed_color_rejects_color1():
    with pytest.raises(DecodeError):
        decode_fixed_color(full_tree(2, 2), ColorSet((0,), 1))


# -- chain coding ----------------------------------------------------------------


def test_chain_code_level_sizes():
    image, bound = chain_code_tree(full_tree(2, 2))
    assert [len(image.level(s)) for s in range(4)] == [1, 1, 2, 4]
    assert bound == tuple((2 ** (i + 1)) - 1 for i in range(3))


def test_chain_code_chain_source():
    image, _ = chain_code_tree(chain_tree((1, 0)))
    # a chain source yields a single chain of index words
    assert all(len(image.level(s)) == 1 for s in range(image.horizon + 1))


def test_chain_code_two_successors():
    image, _ = chain_code_tree(random_tree(5, 2, 5))
    children: dict[tuple, int] = {}
    for w in image.nodes:
        if len(w) >= 1:
            children[w[:-1]] = children.get(w[:-1], 0) + 1
    assert all(v <= 2 for v in children.values())


def test_chain_code_bound_holds():
    image, bound = chain_code_tree(random_tree(9, 2, 4))
    for w in image.nodes:
        for i, a in enumerate(w):
            assert a < bound[i]


def test_decode_chain_code_round_trip():
    src = random_tree(13, 2, 4, thin=0.2)
    image, _ = chain_code_tree(src)
    for tau in paths_at_horizon(src):
        enum = LengthLexEnum(2)
        h = PartialHom.of({i: enum.index_of(tau[:i]) for i in range(len(tau) + 1)})
        assert decode_chain_code(h, image, src) == tau
        sparse = PartialHom.of({i: enum.index_of(tau[:i]) for i in (0, 2, 4)})
        assert decode_chain_code(sparse, image, src) == tau[:4]


def test_decode_chain_code_refuses_non_chain():
    src = full_tree(2, 3)
    image, _ = chain_code_tree(src)
    enum = LengthLexEnum(2)
    bad = PartialHom.of({1: enum.index_of((0,)), 2: enum.index_of((1, 1))})
    with pytest.raises(DecodeError):
        decode_chain_code(bad, image, src)


# -- coloring localization --------------------------------------------------------


def _random_coloring(seed, size, arity=2, colors=2):
    rng = random.Random(seed)
    mapping = {
        tup: rng.randrange(colors)
        for tup in itertools.combinations(range(size), arity)
    }
    return TabulatedColoring.of(arity, colors, size, mapping)


def test_localize_coloring_identity():
    f = _random_coloring(0, 5)
    g = localize_coloring(f, tuple(range(5)))
    assert g == f


def test_localize_coloring_constant():
    f = TabulatedColoring.of(
        2, 2, 6, {t: 1 for t in itertools.combinations(range(6), 2)}
    )
    g = localize_coloring(f, (1, 3, 5))
    assert all(c == 1 for _t, c in g.values)


def test_localize_coloring_homogeneity_transfers():
    for seed in range(10):
        f = _random_coloring(seed, 7)
        xs = (0, 2, 3, 5, 6)
        g = localize_coloring(f, xs)
        for r in range(2, 4):
            for hom0 in itertools.combinations(range(len(xs)), r):
                if coloring_homogeneous(g, hom0):
                    back = decode_localized_coloring(hom0, xs)
                    assert coloring_homogeneous(f, back)
                    assert set(back) <= set(xs)


# -- tournaments -------------------------------------------------------------------


def test_tournament_full_tree():
    r = tournament_from_tree(full_tree(2, 4))
    assert r.validate()
    for s in range(1, 5):
        for x in range(s):
            assert r.beats(s, x)  # leftmost is all zeros


def test_tournament_gamma_one():
    r = tournament_from_tree(gamma_tree({0}, 1, 4))
    for s in range(1, 5):
        assert r.beats(0, s)
        for x in range(1, s):
            assert r.beats(s, x)


def test_tournament_ones_chain():
    r = tournament_from_tree(chain_tree((1, 1, 1, 1)))
    for s in range(1, 5):
        for x in range(s):
            assert r.beats(x, s)


def test_tournament_requires_nodes_per_level():
    with pytest.raises(InputError):
        tournament_from_tree(FinTree(2, 2, [(), (0,)]))


def _random_tournament(seed, n):
    rng = random.Random(seed)
    rel = set()
    for x, y in itertools.combinations(range(n), 2):
        rel.add((x, y) if rng.random() < 0.5 else (y, x))
    return Tournament(n, frozenset(rel))


def test_transitive_subtournament_transitive_input():
    rel = frozenset((x, y) for x, y in itertools.combinations(range(6), 2))
    assert transitive_subtournament(Tournament(6, rel), 6) == (0, 1, 2, 3, 4, 5)


def test_transitive_subtournament_three_cycle():
    cyc = Tournament(3, frozenset({(0, 1), (1, 2), (2, 0)}))
    got = transitive_subtournament(cyc, 2)
    assert len(got) == 2 and cyc.beats(*got)
    with pytest.raises(InputError):
        transitive_subtournament(cyc, 3)


def test_transitive_subtournament_random16():
    for seed in range(5):
        r = _random_tournament(seed, 16)
        got = transitive_subtournament(r, 5)  # floor(log2 16) + 1
        assert len(got) == 5
        for a, b in itertools.combinations(got, 2):
            assert r.beats(a, b)


def test_stability_last_change():
    r = tournament_from_tree(full_tree(2, 4))
    # column orientation never flips on the full tree: leftmost is always all-0
    assert all(v is None for v in stability_last_change(r).values())


def _semo_round_trip(tree):
    r = tournament_from_tree(tree)
    size = max(2, tree.horizon.bit_length())
    u = transitive_subtournament(r, size)
    return homog_from_transitive(tree, r, u, tree.horizon)


def test_homog_from_transitive_full_tree():
    res = _semo_round_trip(full_tree(2, 5))
    assert res.case in ("color0", "color1") and res.hom is not None
    assert res.hom.positions


def test_homog_from_transitive_gamma_and_chain():
    for tree in [gamma_tree({0}, 1, 6), chain_tree((1, 1, 1, 1, 1, 1)), gamma_tree({1, 2}, 0, 6)]:
        res = _semo_round_trip(tree)
        assert res.case in ("color0", "color1")
        assert tree_homogeneous_to_depth(tree, res.hom, tree.horizon)
        assert naive_tree_homogeneous(tree, res.hom.positions, res.hom.color, tree.horizon)


def test_homog_from_transitive_random_trees():
    determined = 0
    for seed in range(20):
        tree = random_tree(seed, 2, 6, thin=0.25)
        res = _semo_round_trip(tree)
        if res.case == "undetermined":
            continue
        determined += 1
        assert tree_homogeneous_to_depth(tree, res.hom, tree.horizon)
    assert determined >= 15  # the split should resolve almost always at this scale


# -- cross-reduction round-trip properties -----------------------------------------


trees_st = st.builds(
    random_tree,
    seed=st.integers(0, 5_000),
    alphabet=st.just(2),
    horizon=st.integers(1, 5),
    thin=st.sampled_from([0.0, 0.25, 0.5]),
)


@given(trees_st, st.data())
@settings(max_examples=50, deadline=None)
def test_localize_round_trip_property(tree, data):
    xs = tuple(
        sorted(
            data.draw(
                st.sets(st.integers(0, tree.horizon - 1), min_size=1, max_size=tree.horizon)
            )
        )
    )
    image = localize_tree(tree, xs)
    for hom0 in homogeneous_sets_via_level(image, image.horizon, min(3, image.horizon)):
        decoded = decode_localized(tree, xs, hom0)
        cert = xs[image.horizon - 1] + 1 if image.horizon >= 1 else 0
        assert tree_homogeneous_to_depth(tree, decoded, cert)
        assert naive_tree_homogeneous(tree, decoded.positions, decoded.color, cert)


@given(trees_st)
@settings(max_examples=30, deadline=None)
def test_pack_round_trip_property(tree):
    image, useq = pack_redundant(tree, lambda n: n // 2)
    assert validate_tree(image)
    for tau in paths_at_horizon(tree):
        h = PartialHom.of(dict(enumerate(packed_expansion(tau, useq))))
        assert decode_packed(h, image, useq) == tau

"""Finite-adversary simulations: the priority graph builder, the
measure-threshold graph builder with exact dyadic bookkeeping, the Bad-set
machinery with its greedy homogeneous builder, the avoidance tree, and the
subset-coding bijections.

Adversaries are explicit finite tables (stage-indexed pair schedules, or
oracle-prefix tables); no machine model is simulated.  All measure
comparisons are exact: the thresholds live as Fractions 9/10, 4/5, 2/5.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import InputError
from .graphs import Graph, bipartition, components, odd_cycle_exists, odd_path_exists
from .trees import ColorSet, Dyadic, FinTree, Word, gamma_restrict, min_level_density

TYPE_I_THRESHOLD = Fraction(9, 10)
OVERLAP_THRESHOLD = Fraction(4, 5)
DEFEAT_THRESHOLD = Fraction(2, 5)


# -- exact measure over oracle prefixes -----------------------------------------


def exact_measure(length: int, pred: Callable[[Word], bool]) -> Dyadic:
    """(number of length-`length` binary words satisfying pred) / 2^length."""
    count = sum(1 for w in itertools.product((0, 1), repeat=length) if pred(w))
    return Dyadic(count, length)


# -- Bad positions and the greedy builder ----------------------------------------


def bad_set(tree: FinTree, c: int, pinned: Iterable[int] = ()) -> list[int]:
    """Positions below the horizon whose zero-pin drops the (already
    zero-pinned) tree's level density below 2^-2c.

    One sweep over the nodes counts, for every position n and level s, the
    level-s survivors of pinning n to zero; equivalent to restricting per
    position but linear in total symbol count.
    """
    base = gamma_restrict(tree, pinned, 0)
    floor = Fraction(1, 1 << (2 * c))
    horizon = tree.horizon
    counts = [[0] * (horizon + 1) for _ in range(horizon)]
    level_sizes = [0] * (horizon + 1)
    for s in range(horizon + 1):
        level = base.level(s)
        level_sizes[s] = len(level)
        for w in level:
            for n in range(s):
                if w[n] == 0:
                    counts[n][s] += 1
    out = []
    for n in range(horizon):
        dens = min(
            min(
                (Fraction(level_sizes[s], 1 << s) for s in range(n + 1)),
                default=Fraction(1),
            ),
            min(Fraction(counts[n][s], 1 << s) for s in range(n + 1, horizon + 1)),
        )
        if dens < floor:
            out.append(n)
    return out


def _zero_pin_density(tree: FinTree, pins: Sequence[int]) -> Fraction:
    """min level density of the tree with the given positions pinned to 0."""
    best = Fraction(1)
    for s in range(tree.horizon + 1):
        active = [p for p in pins if p < s]
        count = sum(
            1 for w in tree.level(s) if all(w[p] == 0 for p in active)
        )
        best = min(best, Fraction(count, 1 << s))
    return best


@dataclass(frozen=True)
class GreedyStep:
    position: int
    c_param: int
    density: Dyadic
    floor: Fraction


@dataclass(frozen=True)
class GreedyResult:
    hom: ColorSet
    steps: tuple[GreedyStep, ...]
    complete: bool


def greedy_homogeneous(tree: FinTree, c: int, steps: int) -> GreedyResult:
    """Grow a color-0 homogeneous set by repeatedly pinning the least fresh
    non-Bad position, doubling the density budget each step.

    Every emitted step certifies density(tree pinned on the set so far)
    >= 2^-(c * 2^step).  Returns a partial result with complete=False when
    the horizon runs out of candidates.
    """
    if c < 3:
        raise InputError("the Bad-set counting argument needs c >= 3")
    if min_level_density(tree).as_fraction() < Fraction(1, 1 << c):
        raise InputError("tree density below 2^-c; greedy growth unsupported")
    chosen: list[int] = []
    log: list[GreedyStep] = []
    for s in range(steps):
        c_s = c * (1 << s)
        # not-Bad at parameter c_s is exactly the next step's density floor
        floor = Fraction(1, 1 << (2 * c_s))
        pick = None
        density = None
        # candidates scanned least-first; a non-Bad one is usually immediate
        for n in range(max(chosen, default=0) + 1, tree.horizon):
            dens = _zero_pin_density(tree, chosen + [n])
            if dens >= floor:
                pick, density = n, dens
                break
        if pick is None:
            return GreedyResult(ColorSet.of(chosen, 0), tuple(log), False)
        chosen.append(pick)
        log.append(GreedyStep(pick, c_s, Dyadic.from_fraction(density), floor))
    return GreedyResult(ColorSet.of(chosen, 0), tuple(log), True)


# -- subset coding (combinatorial number system) -----------------------------------


def subset_encode(subset: Sequence[int]) -> int:
    """Rank of a finite set of naturals in the colexicographic order of
    same-size sets: sum of C(c_i, i+1) over the sorted elements."""
    elems = sorted(subset)
    if len(set(elems)) != len(elems):
        raise InputError("subset elements must be distinct")
    return sum(math.comb(c, i + 1) for i, c in enumerate(elems))


def subset_decode(index: int, k: int) -> tuple[int, ...]:
    """Inverse of subset_encode for k-element sets (greedy on binomials)."""
    if k < 1 or index < 0:
        raise InputError("need k >= 1 and a nonnegative index")
    out = []
    rest = index
    for i in range(k, 0, -1):
        c = i - 1
        while math.comb(c + 1, i) <= rest:
            c += 1
        out.append(c)
        rest -= math.comb(c, i)
    return tuple(reversed(out))


@dataclass(frozen=True)
class SubsetCode:
    """Tabulated slice of the natural-number <-> k-subset bijection."""

    k: int
    table: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, k: int, count: int) -> "SubsetCode":
        return cls(k, tuple(subset_decode(i, k) for i in range(count)))

    def encode(self, subset: Sequence[int]) -> int:
        return subset_encode(subset)

    def decode(self, index: int) -> tuple[int, ...]:
        if index < len(self.table):
            return self.table[index]
        return subset_decode(index, self.k)


# -- avoidance tree -----------------------------------------------------------------


def avoidance_tree(predictions: Sequence[tuple[int, Sequence[int]]], horizon: int) -> FinTree:
    """Binary tree rejecting every word constant on a fully visible
    predicted set.

    Predictions are (index i, set P_i) with |P_i| = i + 3 and distinct
    indices; each costs at most 2^-(i+2) of every level, so the horizon
    density stays >= 1/2.
    """
    seen_idx = set()
    preds: list[tuple[int, tuple[int, ...]]] = []
    for i, p in predictions:
        ps = tuple(sorted(set(p)))
        if len(ps) != i + 3:
            raise InputError(f"prediction {i} must name exactly {i + 3} positions")
        if i in seen_idx:
            raise InputError(f"duplicate prediction index {i}")
        seen_idx.add(i)
        preds.append((i, ps))
    by_top: dict[int, list[tuple[int, ...]]] = {}
    for _i, ps in preds:
        by_top.setdefault(max(ps), []).append(ps)
    level: list[Word] = [()]
    nodes: list[Word] = [()]
    for s in range(1, horizon + 1):
        fresh = by_top.get(s - 1, [])
        nxt = []
        for w in level:
            for b in (0, 1):
                cand = w + (b,)
                if any(len({cand[j] for j in ps}) == 1 for ps in fresh):
                    continue
                nxt.append(cand)
        nodes.extend(nxt)
        level = nxt
    return FinTree(2, horizon, nodes)


def prediction_defeated(hom: ColorSet, prediction: tuple[int, Sequence[int]]) -> bool:
    """A homogeneous set of the avoidance tree never contains a predicted set."""
    _i, ps = prediction
    return not set(ps) <= set(hom.positions)


# -- priority construction -----------------------------------------------------------


@dataclass(frozen=True)
class AdversarySchedule:
    """Stage-indexed pair enumeration: event (s, x, y) puts y into column x
    at stage s."""

    index: int
    events: tuple[tuple[int, int, int], ...]

    def __post_init__(self) -> None:
        stages = [s for s, _x, _y in self.events]
        if stages != sorted(stages):
            raise InputError("event stages must be nondecreasing")
        if any(x == y for _s, x, y in self.events):
            raise InputError("column pairs need distinct members")

    def pairs_by(self, stage: int) -> list[tuple[int, int]]:
        return [(x, y) for s, x, y in self.events if s <= stage]


@dataclass(frozen=True)
class PriorityAction:
    stage: int
    adversary: int
    pair: tuple[int, int]
    bridge: tuple[int, int]


@dataclass
class PriorityRun:
    graph: Graph
    actions: tuple[PriorityAction, ...]
    edges_by_stage: tuple[tuple[tuple[int, int], ...], ...]


def priority_build(adversaries: Sequence[AdversarySchedule], stages: int) -> PriorityRun:
    """Stage loop of the no-recursive-column-witness construction.

    At each stage the least not-yet-served adversary with an eligible pair
    (both ends beyond its index, unconnected, clear of low vertices) gets a
    fresh length-3 bridge between the pair, making it inhomogeneous while
    keeping the graph acyclic.
    """
    indices = [a.index for a in adversaries]
    if len(set(indices)) != len(indices):
        raise InputError("adversary indices must be distinct")
    edges: list[tuple[int, int]] = []
    touched: set[int] = set()
    served: set[int] = set()
    actions: list[PriorityAction] = []
    snapshots: list[tuple[tuple[int, int], ...]] = []

    def connected(a: int, b: int) -> bool:
        if a == b:
            return True
        g = Graph(touched | {a, b}, edges)
        return any(a in comp and b in comp for comp in components(g))

    def connected_to_low(v: int, bound: int) -> bool:
        g = Graph(touched | {v}, edges)
        for comp in components(g):
            if v in comp:
                return any(w <= bound and w != v for w in comp)
        return False

    for stage in range(1, stages + 1):
        chosen = None
        for adv in sorted(adversaries, key=lambda a: a.index):
            if adv.index in served or adv.index >= stage:
                continue
            eligible = [
                (x, y)
                for x, y in adv.pairs_by(stage)
                if adv.index < x < y < stage
                and not connected(x, y)
                and not connected_to_low(x, adv.index)
                and not connected_to_low(y, adv.index)
            ]
            if eligible:
                chosen = (adv.index, min(eligible))
                break
        if chosen is not None:
            e, (x, y) = chosen
            fresh = []
            v = stage + 1
            while len(fresh) < 2:
                if v not in touched:
                    fresh.append(v)
                v += 1
            u, w = fresh
            edges.extend([(x, u), (u, w), (w, y)])
            touched.update((x, y, u, w))
            served.add(e)
            actions.append(PriorityAction(stage, e, (x, y), (u, w)))
        snapshots.append(tuple(edges))
    graph = Graph(touched, edges)
    return PriorityRun(graph, tuple(actions), tuple(snapshots))


def verify_defeated(graph: Graph, adversary: AdversarySchedule) -> bool:
    """True iff some enumerated pair is joined by an odd path (hence can
    never sit inside one homogeneous set)."""
    for _s, x, y in adversary.events:
        if x in graph.vertices and y in graph.vertices:
            found, _ = odd_path_exists(graph, x, y)
            if found:
                return True
    return False


# -- measure construction -------------------------------------------------------------


@dataclass(frozen=True)
class OracleAdversary:
    """Use-bounded oracle enumeration: event (prefix, vertex) enumerates the
    vertex for every oracle extending the prefix, at stage len(prefix)."""

    index: int
    events: tuple[tuple[Word, int], ...]

    @classmethod
    def of(cls, index: int, events: Iterable[tuple[Sequence[int], int]]) -> "OracleAdversary":
        return cls(index, tuple((tuple(p), v) for p, v in events))

    def enumerated(self, oracle_prefix: Word) -> set[int]:
        """Vertices visible at stage len(prefix) along this oracle."""
        out = set()
        for p, v in self.events:
            if len(p) <= len(oracle_prefix) and oracle_prefix[: len(p)] == p:
                out.add(v)
        return out

    def vertices(self) -> set[int]:
        return {v for _p, v in self.events}


def validate_oracle_table(table: dict[Word, set[int]]) -> None:
    """Explicit tables must never retract along prefix extension."""
    for p, vs in table.items():
        for q, ws in table.items():
            if len(p) < len(q) and q[: len(p)] == p and not vs <= ws:
                raise InputError("oracle table retracts an enumeration along an extension")


@dataclass(frozen=True)
class ThresholdCheck:
    stage: int
    adversary: int
    kind: str  # "type1" | "type2" | "overlap" | "branch1" | "branch2"
    measure: Dyadic
    threshold: Fraction
    verdict: bool


@dataclass(frozen=True)
class RequirementReport:
    adversary: int
    locked: tuple[int, ...]
    type1_stage: int | None
    type2_stage: int | None
    defeated_measure: Dyadic | None


@dataclass
class MeasureRun:
    graph: Graph
    reports: tuple[RequirementReport, ...]
    checks: tuple[ThresholdCheck, ...]
    actions: tuple[str, ...]


@dataclass
class _ReqState:
    locked: tuple[int, ...] = ()
    type1_stage: int | None = None
    type2_stage: int | None = None
    defeated: Dyadic | None = None


def _least_cover(
    adv: OracleAdversary, stage: int, allowed: Callable[[int], bool], threshold: Fraction
) -> tuple[list[int], Dyadic] | None:
    """Least-first vertex prefix whose covered oracle measure beats the
    threshold; None if even the full allowed set falls short."""
    usable = sorted(v for v in adv.vertices() if allowed(v))
    best: list[int] = []
    for cut in range(1, len(usable) + 1):
        take = usable[:cut]
        meas = exact_measure(
            stage, lambda w: any(v in take for v in adv.enumerated(w))
        )
        if meas.as_fraction() > threshold:
            return take, meas
    return None


def measure_build(adversaries: Sequence[OracleAdversary], stages: int) -> MeasureRun:
    """Two-step (lock, then merge) construction defeating a fixed fraction of
    oracles per requirement, with every threshold comparison exact and logged.

    Type I fires when > 9/10 of stage-length oracle prefixes enumerate an
    unprotected vertex: the requirement locks a least-first witness set.
    Type II, when > 9/10 enumerate a vertex clear of all locks up to the
    requirement, bridges the locked and new vertices through a, b / c, d and
    picks whichever branch edge makes > 2/5 of prefixes inhomogeneous.
    """
    indices = [a.index for a in adversaries]
    if len(set(indices)) != len(indices):
        raise InputError("adversary indices must be distinct")
    by_index = {a.index: a for a in adversaries}
    state: dict[int, _ReqState] = {e: _ReqState() for e in indices}
    edges: list[tuple[int, int]] = []
    used: set[int] = set()
    for a in adversaries:
        used |= a.vertices()
    checks: list[ThresholdCheck] = []
    actions: list[str] = []

    def current_graph() -> Graph:
        return Graph(used, edges)

    def connected_to_locks(v: int, lock_indices: Iterable[int]) -> bool:
        locked = {w for e in lock_indices for w in state[e].locked}
        if not locked:
            return False
        if v in locked:
            return True
        g = current_graph()
        for comp in components(g):
            if v in comp:
                return any(w in comp for w in locked)
        return False

    for stage_plus in range(1, stages + 1):
        s = stage_plus - 1
        acted = None
        for e in sorted(indices):
            if e >= s:
                continue
            adv = by_index[e]
            st = state[e]
            if not st.locked and st.type2_stage is None:
                got = _least_cover(
                    adv,
                    s,
                    lambda v: not connected_to_locks(v, [k for k in indices if k < e]),
                    TYPE_I_THRESHOLD,
                )
                fired = got is not None
                meas = got[1] if got else exact_measure(
                    s,
                    lambda w: any(
                        not connected_to_locks(v, [k for k in indices if k < e])
                        for v in adv.enumerated(w)
                    ),
                )
                checks.append(
                    ThresholdCheck(stage_plus, e, "type1", meas, TYPE_I_THRESHOLD, fired)
                )
                if fired:
                    st.locked = tuple(got[0])
                    st.type1_stage = stage_plus
                    for k in indices:
                        if k > e:
                            state[k].locked = ()
                            if state[k].type2_stage is None:
                                state[k].type1_stage = None
                    actions.append(f"stage {stage_plus}: R{e} type I locks {st.locked}")
                    acted = e
                    break
            elif st.locked and st.type2_stage is None:
                got = _least_cover(
                    adv,
                    s,
                    lambda v: not connected_to_locks(v, [k for k in indices if k <= e]),
                    TYPE_I_THRESHOLD,
                )
                fired = got is not None
                meas = got[1] if got else exact_measure(
                    s,
                    lambda w: any(
                        not connected_to_locks(v, [k for k in indices if k <= e])
                        for v in adv.enumerated(w)
                    ),
                )
                checks.append(
                    ThresholdCheck(stage_plus, e, "type2", meas, TYPE_I_THRESHOLD, fired)
                )
                if fired:
                    ys, _meas = got
                    xs = list(st.locked)
                    fresh = []
                    v = s + 1
                    while len(fresh) < 4:
                        if v not in used:
                            fresh.append(v)
                        v += 1
                    a_v, b_v, c_v, d_v = fresh
                    used.update(fresh)
                    edges.append((a_v, b_v))
                    edges.append((c_v, d_v))
                    label = bipartition(current_graph())
                    assert label is not None
                    for x in xs:
                        edges.append((x, a_v) if label[x] != label[a_v] else (x, b_v))
                        label = bipartition(current_graph())
                        assert label is not None
                    for y in ys:
                        edges.append((y, c_v) if label[y] != label[c_v] else (y, d_v))
                        label = bipartition(current_graph())
                        assert label is not None
                    overlap = exact_measure(
                        s,
                        lambda w: any(x in adv.enumerated(w) for x in xs)
                        and any(y in adv.enumerated(w) for y in ys),
                    )
                    checks.append(
                        ThresholdCheck(
                            stage_plus,
                            e,
                            "overlap",
                            overlap,
                            OVERLAP_THRESHOLD,
                            overlap.as_fraction() > OVERLAP_THRESHOLD,
                        )
                    )
                    if overlap.as_fraction() <= OVERLAP_THRESHOLD:
                        raise AssertionError(
                            "type II fired without the guaranteed measure overlap"
                        )
                    picked = None
                    for kind, extra in (("branch1", (a_v, c_v)), ("branch2", (a_v, d_v))):
                        g_branch = Graph(used, edges + [extra])
                        meas = _inhomogeneity_measure(g_branch, adv, s)
                        verdict = meas.as_fraction() > DEFEAT_THRESHOLD
                        checks.append(
                            ThresholdCheck(
                                stage_plus, e, kind, meas, DEFEAT_THRESHOLD, verdict
                            )
                        )
                        if verdict and picked is None:
                            picked = (extra, meas)
                    if picked is None:
                        raise AssertionError("neither branch defeats 2/5 of oracles")
                    edges.append(picked[0])
                    st.type2_stage = stage_plus
                    st.defeated = picked[1]
                    actions.append(
                        f"stage {stage_plus}: R{e} type II merges {xs} | {ys} via "
                        f"{fresh}, edge {picked[0]}, defeated measure {picked[1]}"
                    )
                    acted = e
                    break
        if acted is None:
            continue
    graph = current_graph()
    if odd_cycle_exists(graph):
        raise AssertionError("construction produced an odd cycle")
    reports = tuple(
        RequirementReport(
            e,
            state[e].locked,
            state[e].type1_stage,
            state[e].type2_stage,
            state[e].defeated,
        )
        for e in sorted(indices)
    )
    return MeasureRun(graph, reports, tuple(checks), tuple(actions))


def _inhomogeneous(graph: Graph, verts: set[int]) -> bool:
    """Some pair of the vertices sits at odd distance (so no homogeneous set
    contains them all)."""
    vs = sorted(v for v in verts if v in graph.vertices)
    for i, x in enumerate(vs):
        for y in vs[i + 1 :]:
            found, _ = odd_path_exists(graph, x, y)
            if found:
                return True
    return False


def _inhomogeneity_measure(graph: Graph, adv: OracleAdversary, length: int) -> Dyadic:
    """Exact fraction of length-`length` oracle prefixes whose enumerated set
    has an odd-distance pair, via one precomputed parity labeling."""
    label = bipartition(graph)
    assert label is not None  # the construction keeps the graph bipartite
    comp_id: dict[int, int] = {}
    for i, comp in enumerate(components(graph)):
        for v in comp:
            comp_id[v] = i

    def bad(word: Word) -> bool:
        seen: dict[int, int] = {}
        for v in adv.enumerated(word):
            if v not in comp_id:
                continue
            c = comp_id[v]
            if c in seen and seen[c] != label[v]:
                return True
            seen.setdefault(c, label[v])
        return False

    return exact_measure(length, bad)


def replay_checks(adversaries: Sequence[OracleAdversary], run: MeasureRun) -> bool:
    """Re-verify every logged threshold comparison exactly."""
    return all(
        (check.measure.as_fraction() > check.threshold) == check.verdict
        for check in run.checks
    )


# -- text formats ----------------------------------------------------------------------


def schedule_to_dict(adv: AdversarySchedule) -> dict:
    return {"e": adv.index, "events": [list(ev) for ev in adv.events]}


def schedule_from_dict(data: dict) -> AdversarySchedule:
    try:
        return AdversarySchedule(int(data["e"]), tuple((int(s), int(x), int(y)) for s, x, y in data["events"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed schedule document: {exc}") from exc


def oracle_to_dict(adv: OracleAdversary) -> dict:
    """Interchange schema: {e, s_max, events: [(prefix, [vertices...])...]}."""
    grouped: dict[Word, list[int]] = {}
    for p, v in adv.events:
        grouped.setdefault(p, []).append(v)
    return {
        "e": adv.index,
        "s_max": max((len(p) for p, _v in adv.events), default=0),
        "events": [
            ["".join(map(str, p)), sorted(vs)] for p, vs in sorted(grouped.items())
        ],
    }


def oracle_from_dict(data: dict) -> OracleAdversary:
    try:
        events = []
        for p, vs in data["events"]:
            prefix = tuple(int(ch) for ch in p)
            events.extend((prefix, int(v)) for v in vs)
        return OracleAdversary(int(data["e"]), tuple(events))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed oracle document: {exc}") from exc

"""The 3-coloring gadget library and the clause-to-graph compiler.

Three gadgets:

- R (rotator): 6 vertices, 9 edges; with its triangle pinned, input color x
  forces output y and input y forces output z.
- U (disjunction step): chains a literal into a running or-so-far vertex.
- D (clause spine): one U per literal position, with the truth frame
  rotating one step per position and a terminal edge that forbids the
  all-false coloring.

The compiler lays clause spines over a shared literal-vertex base,
overlapping spines along longest common prefixes.  Every auxiliary vertex
gets a decode-table entry built at construction time: observing its color
class pins some literal's truth value (or, for a d vertex at its z role,
excludes one color of its b input, which the spine context resolves).

Edge-set reading: the step gadget embeds a full rotator, including the
rotator's cross edges into the pinned triangle ((x, r) and (y, v)); a
drawing of the composite gadget might elide those for legibility, but they
are load-bearing here and always present.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import BudgetExceededError, DecodeError, InputError
from .graphs import Graph, colorable_with_pins, graph_to_dot, is_k_homogeneous, proper_colorings
from .sat import Clause, Literal, SatHomSet, is_two_branching, sat_homogeneous

COLORING_BUDGET_FREE_VERTICES = 25

# truth frame at clause position i: (X, Y, Z); the ell input means
# "literal false" when colored X and "literal true" when colored Y
FRAMES = {0: (0, 1, 2), 1: (2, 0, 1), 2: (1, 2, 0)}
# rotator frame feeding position i (no rotator at i = 0 mod 3)
R_FRAMES = {1: (1, 0, 2), 2: (0, 1, 2)}
# terminal truth vertex after the last position
TERMINAL = {0: 0, 1: 2, 2: 1}

UNREACHABLE = ("unreachable",)


# -- gadget shapes -------------------------------------------------------------


@dataclass(frozen=True)
class RGadget:
    """Rotator R_{x->y, y->z}(a, u) with internal vertex v."""

    x: int
    y: int
    z: int
    a: int
    u: int
    v: int

    def edges(self) -> list[tuple[int, int]]:
        x, y, z, a, u, v = self.x, self.y, self.z, self.a, self.u, self.v
        return [(x, y), (y, z), (z, x), (a, u), (u, v), (v, a), (x, u), (y, v), (z, a)]

    def vertices(self) -> tuple[int, ...]:
        return (self.x, self.y, self.z, self.a, self.u, self.v)

    def graph(self) -> Graph:
        return Graph(self.vertices(), self.edges())


@dataclass(frozen=True)
class UGadget:
    """Disjunction step U_{x,y,z}(ell, b, u) with internal ellbar, r, v, d."""

    x: int
    y: int
    z: int
    ell: int
    b: int
    u: int
    ellbar: int
    r: int
    v: int
    d: int

    def inner_r(self) -> RGadget:
        return RGadget(self.x, self.y, self.z, self.ell, self.r, self.v)

    def edges(self) -> list[tuple[int, int]]:
        e = [
            (self.x, self.y),
            (self.y, self.z),
            (self.x, self.z),
            (self.z, self.ell),
            (self.ell, self.ellbar),
            (self.ellbar, self.z),
            (self.ellbar, self.u),
            (self.r, self.u),
            (self.ell, self.d),
            (self.d, self.u),
            (self.b, self.d),
        ]
        e.extend(self.inner_r().edges())
        return e

    def vertices(self) -> tuple[int, ...]:
        return (
            self.x,
            self.y,
            self.z,
            self.ell,
            self.b,
            self.u,
            self.ellbar,
            self.r,
            self.v,
            self.d,
        )

    def graph(self) -> Graph:
        return Graph(self.vertices(), self.edges())


def build_R(x: int, y: int, z: int, a: int, u: int, v: int) -> RGadget:
    """Rotator gadget on explicit vertex ids; x, y, z form the pinned triangle."""
    if len({x, y, z, a, u, v}) != 6:
        raise InputError("rotator needs six distinct vertices")
    return RGadget(x, y, z, a, u, v)


def build_U(
    x: int, y: int, z: int, ell: int, b: int, u: int, ellbar: int, r: int, v: int, d: int
) -> UGadget:
    """Disjunction-step gadget on explicit vertex ids."""
    if len({x, y, z, ell, b, u, ellbar, r, v, d}) != 10:
        raise InputError("disjunction step needs ten distinct vertices")
    return UGadget(x, y, z, ell, b, u, ellbar, r, v, d)


# -- decode-table entries --------------------------------------------------------


def _lit(vertex: int, value: int) -> tuple:
    return ("literal", vertex, value)


def _r_decode(rframe: tuple[int, int, int], lit_vertex: int) -> dict[str, dict[int, tuple]]:
    """Case table for a rotator feeding a literal: colors of u and v pin the
    literal; xR/yR double as the literal's false/true colors."""
    xr, yr, zr = rframe
    return {
        "u": {yr: _lit(lit_vertex, xr), zr: _lit(lit_vertex, yr), xr: UNREACHABLE},
        "v": {zr: _lit(lit_vertex, xr), xr: _lit(lit_vertex, yr), yr: UNREACHABLE},
    }


def _u_decode(
    frame: tuple[int, int, int],
    lit_vertex: int,
    b_vertex: int,
    resolved: tuple | None,
) -> dict[str, dict[int, tuple]]:
    """Case table for one disjunction step: every internal vertex pins the
    position's literal except d at role z, which only excludes one color of
    the b input (resolution through the spine supplied by the caller)."""
    x, y, z = frame
    return {
        "ellbar": {x: _lit(lit_vertex, 1), y: _lit(lit_vertex, 0), z: UNREACHABLE},
        "u": {x: _lit(lit_vertex, 0), z: _lit(lit_vertex, 0), y: _lit(lit_vertex, 1)},
        "r": {y: _lit(lit_vertex, 0), z: _lit(lit_vertex, 1), x: UNREACHABLE},
        "v": {z: _lit(lit_vertex, 0), x: _lit(lit_vertex, 1), y: UNREACHABLE},
        "d": {
            x: _lit(lit_vertex, 1),
            y: _lit(lit_vertex, 0),
            z: ("b_neq", b_vertex, z) + ((resolved,) if resolved else ()),
        },
    }


# -- spine construction -----------------------------------------------------------


@dataclass
class _Builder:
    next_id: int
    edges: list[tuple[int, int]] = field(default_factory=list)
    vertices: set[int] = field(default_factory=set)
    roles: dict[int, str] = field(default_factory=dict)
    decode: dict[int, dict[int, tuple]] = field(default_factory=dict)

    def fresh(self, role: str) -> int:
        vid = self.next_id
        self.next_id += 1
        self.vertices.add(vid)
        self.roles[vid] = role
        return vid

    def add(self, vid: int, role: str) -> int:
        self.vertices.add(vid)
        self.roles.setdefault(vid, role)
        return vid

    def connect(self, edges: Iterable[tuple[int, int]]) -> None:
        self.edges.extend(edges)

    def set_decode(self, vid: int, table: dict[int, tuple]) -> None:
        self.decode[vid] = table


@dataclass(frozen=True)
class SpineStep:
    """Per-position record of a clause spine: the literal input, frame, u
    vertex, and the gadgets realizing the step (absent at position 0)."""

    index: int
    lit_vertex: int
    frame: tuple[int, int, int]
    u: int
    ugadget: UGadget | None
    rgadget: RGadget | None


def _spine_step(
    bld: _Builder,
    index: int,
    lit_vertex: int,
    prev_u: int,
    prev_lit_vertex: int,
    tag: str,
) -> SpineStep:
    """Extend a clause spine by one literal position (index >= 1)."""
    res = index % 3
    frame = FRAMES[res]
    rg = None
    ell_in = lit_vertex
    if res != 0:
        rframe = R_FRAMES[res]
        ellp = bld.fresh(f"aux:{tag}.ellprime{index}")
        vr = bld.fresh(f"aux:{tag}.rv{index}")
        rg = build_R(rframe[0], rframe[1], rframe[2], lit_vertex, ellp, vr)
        bld.connect(rg.edges())
        tab = _r_decode(rframe, lit_vertex)
        bld.set_decode(vr, tab["v"])
        ell_in = ellp
    ellbar = bld.fresh(f"aux:{tag}.ellbar{index}")
    r = bld.fresh(f"aux:{tag}.r{index}")
    vu = bld.fresh(f"aux:{tag}.uv{index}")
    d = bld.fresh(f"aux:{tag}.d{index}")
    u = bld.fresh(f"aux:{tag}.u{index}")
    ug = build_U(frame[0], frame[1], frame[2], ell_in, prev_u, u, ellbar, r, vu, d)
    bld.connect(ug.edges())
    resolved = _lit(prev_lit_vertex, 0)
    utab = _u_decode(frame, lit_vertex, prev_u, resolved)
    bld.set_decode(ellbar, utab["ellbar"])
    bld.set_decode(u, utab["u"])
    bld.set_decode(r, utab["r"])
    bld.set_decode(vu, utab["v"])
    bld.set_decode(d, utab["d"])
    if res != 0:
        # the rotated literal copy carries the rotator's u-case table
        bld.set_decode(ell_in, _r_decode(R_FRAMES[res], lit_vertex)["u"])
    return SpineStep(index, lit_vertex, frame, u, ug, rg)


@dataclass
class DGadget:
    """A standalone clause widget over fresh literal vertices."""

    graph: Graph
    truth: tuple[int, int, int]
    lits: tuple[int, ...]
    steps: tuple[SpineStep, ...]
    terminal: int
    decode: dict[int, dict[int, tuple]]
    roles: dict[int, str]


def build_D(n: int) -> DGadget:
    """Clause spine for n fresh literal vertices (ids 3 .. n+2)."""
    if n < 1:
        raise InputError("a clause spine needs at least one literal")
    bld = _Builder(next_id=3 + n)
    for t in (0, 1, 2):
        bld.add(t, f"truth:{t}")
    bld.connect([(0, 1), (1, 2), (0, 2)])
    lits = tuple(range(3, 3 + n))
    for i, lv in enumerate(lits):
        bld.add(lv, f"literal:p{i}")
        bld.connect([(2, lv)])
        bld.set_decode(lv, {0: _lit(lv, 0), 1: _lit(lv, 1), 2: UNREACHABLE})
    steps = [SpineStep(0, lits[0], FRAMES[0], lits[0], None, None)]
    for i in range(1, n):
        steps.append(
            _spine_step(bld, i, lits[i], steps[-1].u, steps[-1].lit_vertex, "d")
        )
    terminal = TERMINAL[(n - 1) % 3]
    bld.connect([(steps[-1].u, terminal)])
    return DGadget(
        Graph(bld.vertices | {0, 1, 2}, bld.edges),
        (0, 1, 2),
        lits,
        tuple(steps),
        terminal,
        bld.decode,
        bld.roles,
    )


# -- coloring oracle ---------------------------------------------------------------


def enumerate_colorings(
    graph: Graph, pinned: dict[int, int] | None = None, budget: int = COLORING_BUDGET_FREE_VERTICES
) -> list[dict[int, int]]:
    """All proper 3-colorings extending the pin, in deterministic order."""
    pins = dict(pinned or {})
    free = len(graph.vertices) - len([v for v in pins if v in graph.vertices])
    if free > budget:
        raise BudgetExceededError(f"{free} free vertices exceed coloring budget {budget}")
    return proper_colorings(graph, 3, pins)


# -- clause compiler -----------------------------------------------------------------


@dataclass
class CompiledGraph:
    """Clause list compiled to a graph, with the decode table carried along."""

    graph: Graph
    clauses: tuple[Clause, ...]
    truth: tuple[int, int, int]
    literal_vertex: dict[tuple[int, bool], int]
    roles: dict[int, str]
    decode: dict[int, dict[int, tuple]]
    r_counts: dict[int, int]

    def vertex_literal(self, vid: int) -> tuple[int, bool] | None:
        for key, v in self.literal_vertex.items():
            if v == vid:
                return key
        return None


def compile_clauses(clauses: Sequence[Clause], atoms: int | None = None) -> CompiledGraph:
    """Lay clause spines over the shared literal base, overlapping along
    longest common prefixes.

    Requires a 2-branching, prefix-free clause list (drop prefixed clauses
    with minimal_clauses first).  `atoms` widens the literal base beyond
    what the clauses mention.
    """
    clauses = tuple(dict.fromkeys(clauses))
    if not is_two_branching(clauses):
        raise InputError("clause list is not 2-branching")
    for a, b in itertools.permutations(range(len(clauses)), 2):
        if clauses[a] and clauses[a] == clauses[b][: len(clauses[a])]:
            raise InputError("a clause is a proper prefix of another; prune first")
    atoms = max(max((len(cl) for cl in clauses), default=0), atoms or 0)
    bld = _Builder(next_id=3 + 2 * atoms)
    for t in (0, 1, 2):
        bld.add(t, f"truth:{t}")
    bld.connect([(0, 1), (1, 2), (0, 2)])
    literal_vertex: dict[tuple[int, bool], int] = {}
    for i in range(atoms):
        pos = bld.add(3 + 2 * i, f"literal:a{i}")
        neg = bld.add(4 + 2 * i, f"literal:!a{i}")
        literal_vertex[(i, True)] = pos
        literal_vertex[(i, False)] = neg
        bld.connect([(2, pos), (pos, neg), (neg, 2)])
        bld.set_decode(pos, {0: _lit(pos, 0), 1: _lit(pos, 1), 2: UNREACHABLE})
        bld.set_decode(neg, {0: _lit(neg, 0), 1: _lit(neg, 1), 2: UNREACHABLE})
    spine: dict[tuple[Literal, ...], SpineStep] = {}
    r_counts: dict[int, int] = {}
    for ci, cl in enumerate(clauses):
        if not cl:
            raise InputError("empty clause cannot be compiled")
        prev = SpineStep(0, literal_vertex[(cl[0].atom, cl[0].positive)], FRAMES[0],
                         literal_vertex[(cl[0].atom, cl[0].positive)], None, None)
        for i in range(1, len(cl)):
            key = cl[: i + 1]
            if key in spine:
                prev = spine[key]
                continue
            lv = literal_vertex[(cl[i].atom, cl[i].positive)]
            step = _spine_step(bld, i, lv, prev.u, prev.lit_vertex, f"c{ci}")
            spine[key] = step
            if step.rgadget is not None:
                r_counts[i] = r_counts.get(i, 0) + 1
            prev = step
        bld.connect([(prev.u, TERMINAL[(len(cl) - 1) % 3])])
    for j, count in r_counts.items():
        # 2-branching prefix sharing: at most 2^(j+1) distinct length-(j+1)
        # prefixes, hence that many rotators at position j
        if count > 1 << (j + 1):
            raise AssertionError(f"rotator count {count} at position {j} breaks the prefix bound")
    return CompiledGraph(
        Graph(bld.vertices | {0, 1, 2}, bld.edges),
        clauses,
        (0, 1, 2),
        literal_vertex,
        bld.roles,
        bld.decode,
        r_counts,
    )


def decode_vertex(source, vertex: int, color: int) -> tuple:
    """Case-table lookup: what sharing a color class with truth vertex
    `color` says about some literal (or, for a d vertex at its z role, which
    color its b input avoids).  `source` is a CompiledGraph, a DGadget, or a
    raw decode table."""
    table = getattr(source, "decode", source)
    try:
        entry = table[vertex][color]
    except KeyError as exc:
        raise DecodeError(f"vertex {vertex} has no decode entry for color {color}") from exc
    if entry[0] == "b_neq":
        return entry[:3]
    return entry


def _resolved_conclusion(decode_table, vertex: int, color: int) -> tuple:
    entry = decode_table[vertex][color]
    if entry[0] == "b_neq" and len(entry) == 4:
        return entry[3]
    return entry


def decode_homogeneous(
    compiled: CompiledGraph, hom: Iterable[int], budget: int = 120
) -> SatHomSet:
    """Pull a homogeneous vertex set of the compiled graph back to a pinned
    atom set for the clause list.

    Normalizes the set to contain exactly one truth vertex (the anchor),
    decodes every other member against the anchor's role, flips negative
    literals, and keeps the larger of the two truth-value classes (verified
    by the satisfiability oracle).
    """
    hset = sorted(set(hom))
    if any(v not in compiled.graph.vertices for v in hset):
        raise DecodeError("solution mentions unknown vertices")
    anchors = [v for v in hset if v in compiled.truth]
    if len(anchors) > 1:
        raise DecodeError("two truth vertices can never share a color class")
    if anchors:
        anchor = anchors[0]
        if not is_k_homogeneous(compiled.graph, hset, 3, budget):
            raise DecodeError("vertex set is not homogeneous for the compiled graph")
    else:
        anchor = None
        for t in compiled.truth:
            if is_k_homogeneous(compiled.graph, hset + [t], 3, budget):
                anchor = t
                break
        if anchor is None:
            raise DecodeError("vertex set is not homogeneous for the compiled graph")
        hset = sorted(hset + [anchor])
    pairs: dict[int, int] = {}
    for w in hset:
        if w == anchor:
            continue
        conclusion = _resolved_conclusion(compiled.decode, w, anchor)
        if conclusion[0] == "unreachable":
            raise DecodeError(
                f"vertex {w} cannot share a color class with truth vertex {anchor}"
            )
        if conclusion[0] != "literal":
            continue
        _kind, lit_vertex, value = conclusion
        key = compiled.vertex_literal(lit_vertex)
        assert key is not None
        atom_index, positive = key
        atom_value = value if positive else 1 - value
        if pairs.get(atom_index, atom_value) != atom_value:
            raise DecodeError("conflicting literal conclusions; set cannot be homogeneous")
        pairs[atom_index] = atom_value
    if hset != [anchor] and not pairs:
        raise DecodeError("degenerate solution: every conclusion was constraint-only")
    candidates = []
    for value in (False, True):
        atoms = tuple(sorted(a for a, v in pairs.items() if bool(v) == value))
        cand = SatHomSet(atoms, value)
        if sat_homogeneous(compiled.clauses, cand, len(compiled.clauses)):
            candidates.append(cand)
    if not candidates:
        raise DecodeError("no truth-value class verified against the clause oracle")
    candidates.sort(key=lambda c: (-len(c.atoms), c.value))
    return candidates[0]


# -- widget lemma verification -----------------------------------------------------


@dataclass(frozen=True)
class LemmaReport:
    name: str
    passed: bool
    counterexample: str | None = None


def _fails(name: str, detail: str) -> LemmaReport:
    return LemmaReport(name, False, detail)


def _ok(name: str) -> LemmaReport:
    return LemmaReport(name, True)


def _check_r_widget(graph: Graph, rg: RGadget, perm: tuple[int, int, int]) -> list[LemmaReport]:
    pins = {rg.x: perm[0], rg.y: perm[1], rg.z: perm[2]}
    tag = f"rotator{perm}"
    full = enumerate_colorings(graph, pins)
    out = []
    bad = [
        nu
        for nu in full
        if (nu[rg.a] == nu[rg.x] and nu[rg.u] != nu[rg.y])
        or (nu[rg.a] == nu[rg.y] and nu[rg.u] != nu[rg.z])
    ]
    out.append(_ok(f"{tag}.forces") if not bad else _fails(f"{tag}.forces", str(bad[0])))
    induced = {c for c in range(3) if c != perm[2]}  # a is adjacent to z
    missing = [
        c for c in induced if not any(nu[rg.a] == c for nu in full)
    ]
    out.append(
        _ok(f"{tag}.extends")
        if not missing
        else _fails(f"{tag}.extends", f"input color {missing[0]} has no extension")
    )
    for probe in ("u", "v"):
        vid = getattr(rg, probe)
        determined = True
        for c in range(3):
            seen = {nu[rg.a] for nu in full if nu[vid] == c}
            if len(seen) > 1:
                determined = False
        out.append(
            _ok(f"{tag}.{probe}-determines-input")
            if determined
            else _fails(f"{tag}.{probe}-determines-input", f"color of {probe} ambiguous")
        )
    if perm == (0, 1, 2):
        out.append(
            _ok(f"{tag}.two-colorings")
            if len(full) == 2
            else _fails(f"{tag}.two-colorings", f"found {len(full)}")
        )
    return out


def _check_u_widget(graph: Graph, ug: UGadget, perm: tuple[int, int, int]) -> list[LemmaReport]:
    pins = {ug.x: perm[0], ug.y: perm[1], ug.z: perm[2]}
    px, py, pz = perm
    tag = f"step{perm}"
    out = []
    full = enumerate_colorings(graph, pins)
    interface = [
        (lc, bc)
        for lc in range(3)
        if lc != pz  # ell is adjacent to z
        for bc in range(3)
    ]
    missing = [
        (lc, bc)
        for lc, bc in interface
        if not any(nu[ug.ell] == lc and nu[ug.b] == bc for nu in full)
    ]
    out.append(
        _ok(f"{tag}.extends")
        if not missing
        else _fails(f"{tag}.extends", f"interface {missing[0]} has no extension")
    )
    bad = [
        nu
        for nu in full
        if nu[ug.ell] == px and nu[ug.b] == py and nu[ug.u] != px
    ]
    out.append(_ok(f"{tag}.carry-false") if not bad else _fails(f"{tag}.carry-false", str(bad[0])))
    ok3 = all(
        any(nu[ug.ell] == px and nu[ug.b] == bc and nu[ug.u] == pz for nu in full)
        for bc in range(3)
        if bc != py
    )
    out.append(_ok(f"{tag}.carry-true") if ok3 else _fails(f"{tag}.carry-true", "no u=z extension"))
    ok4 = all(
        any(nu[ug.ell] == py and nu[ug.b] == bc and nu[ug.u] == py for nu in full)
        for bc in range(3)
    )
    out.append(
        _ok(f"{tag}.literal-true") if ok4 else _fails(f"{tag}.literal-true", "no u=y extension")
    )
    # decode cases: ellbar, u, and the inner rotator vertices pin ell
    for probe in ("ellbar", "u", "r", "v"):
        vid = getattr(ug, probe)
        ambiguous = [
            c for c in range(3) if len({nu[ug.ell] for nu in full if nu[vid] == c}) > 1
        ]
        out.append(
            _ok(f"{tag}.decode-{probe}")
            if not ambiguous
            else _fails(f"{tag}.decode-{probe}", f"color {ambiguous[0]} ambiguous")
        )
    d_cases = [
        (px, lambda nu: nu[ug.ell] == py, "d=x forces ell=y"),
        (py, lambda nu: nu[ug.ell] == px, "d=y forces ell=x"),
        (pz, lambda nu: nu[ug.b] != pz, "d=z forces b!=z"),
    ]
    for color, pred, label in d_cases:
        bad = [nu for nu in full if nu[ug.d] == color and not pred(nu)]
        out.append(
            _ok(f"{tag}.decode-d[{label}]")
            if not bad
            else _fails(f"{tag}.decode-d[{label}]", str(bad[0]))
        )
    return out


def _check_d_widget(n: int) -> list[LemmaReport]:
    dg = build_D(n)
    pins_base = {0: 0, 1: 1, 2: 2}
    tag = f"spine{n}"
    out = []
    for assignment in itertools.product((0, 1), repeat=n):
        pins = dict(pins_base)
        pins.update({lv: c for lv, c in zip(dg.lits, assignment)})
        extendable = colorable_with_pins(dg.graph, 3, pins)
        if any(c == 1 for c in assignment):
            if not extendable:
                out.append(_fails(f"{tag}.satisfied-extends", f"assignment {assignment}"))
                return out
        elif extendable:
            out.append(_fails(f"{tag}.all-false-blocked", f"assignment {assignment} extends"))
            return out
    out.append(_ok(f"{tag}.satisfied-extends"))
    out.append(_ok(f"{tag}.all-false-blocked"))
    # decode: each sub-widget vertex determines the color of its position's
    # literal or the previous position's literal
    for step in dg.steps[1:]:
        vertices = [step.ugadget.ellbar, step.ugadget.r, step.ugadget.v, step.ugadget.d, step.u]
        if step.rgadget is not None:
            vertices.extend([step.rgadget.u, step.rgadget.v])
        lit_now = dg.lits[step.index]
        lit_prev = dg.lits[step.index - 1]
        for w in vertices:
            for c in range(3):
                if not colorable_with_pins(dg.graph, 3, {**pins_base, w: c}):
                    continue
                feas_now = {
                    v for v in (0, 1) if colorable_with_pins(dg.graph, 3, {**pins_base, w: c, lit_now: v})
                }
                feas_prev = {
                    v
                    for v in (0, 1)
                    if colorable_with_pins(dg.graph, 3, {**pins_base, w: c, lit_prev: v})
                }
                if len(feas_now) > 1 and len(feas_prev) > 1:
                    out.append(
                        _fails(
                            f"{tag}.decode",
                            f"vertex {w} color {c} pins neither literal {step.index} nor {step.index - 1}",
                        )
                    )
                    return out
    out.append(_ok(f"{tag}.decode"))
    return out


def _standalone_r() -> tuple[Graph, RGadget]:
    rg = build_R(0, 1, 2, 3, 4, 5)
    return rg.graph(), rg


def _standalone_u() -> tuple[Graph, UGadget]:
    ug = build_U(0, 1, 2, 3, 4, 5, 6, 7, 8, 9)
    return ug.graph(), ug


def _without_edge(graph: Graph, edge: tuple[int, int]) -> Graph:
    e = (min(edge), max(edge))
    if e not in graph.edges:
        raise InputError(f"edge {e} not present")
    return Graph(graph.vertices, [x for x in graph.edges if x != e])


def check_widget_lemmas(max_spine: int = 7, mutations: bool = True) -> list[LemmaReport]:
    """Exhaustively verify every gadget lemma clause; optionally confirm that
    deleting one designated edge per gadget breaks a clause."""
    reports: list[LemmaReport] = []
    rgraph, rg = _standalone_r()
    ugraph, ug = _standalone_u()
    for perm in itertools.permutations((0, 1, 2)):
        reports.extend(_check_r_widget(rgraph, rg, perm))
        reports.extend(_check_u_widget(ugraph, ug, perm))
    for n in range(1, max_spine + 1):
        reports.extend(_check_d_widget(n))
    if mutations:
        mutated_r = _without_edge(rgraph, (rg.y, rg.v))
        broken = [r for r in _check_r_widget(mutated_r, rg, (0, 1, 2)) if not r.passed]
        reports.append(
            _ok("mutation.rotator-detects")
            if broken
            else _fails("mutation.rotator-detects", "deleting (y, v) went unnoticed")
        )
        mutated_u = _without_edge(ugraph, (ug.b, ug.d))
        broken = [r for r in _check_u_widget(mutated_u, ug, (0, 1, 2)) if not r.passed]
        reports.append(
            _ok("mutation.step-detects")
            if broken
            else _fails("mutation.step-detects", "deleting (b, d) went unnoticed")
        )
        dg = build_D(3)
        mutated_d = _without_edge(dg.graph, (dg.steps[-1].u, dg.terminal))
        pins = {0: 0, 1: 1, 2: 2, **{lv: 0 for lv in dg.lits}}
        reports.append(
            _ok("mutation.spine-detects")
            if colorable_with_pins(mutated_d, 3, pins)
            else _fails("mutation.spine-detects", "deleting the terminal edge went unnoticed")
        )
    return reports


# -- export ------------------------------------------------------------------------


def compiled_to_dot(compiled: CompiledGraph) -> str:
    return graph_to_dot(compiled.graph, labels=compiled.roles)


def decode_table_to_dict(compiled: CompiledGraph) -> dict:
    """Sidecar document: vertex id -> color -> conclusion."""
    out: dict[str, dict[str, list]] = {}
    for vid, table in sorted(compiled.decode.items()):
        out[str(vid)] = {str(c): list(entry) for c, entry in sorted(table.items())}
    return out

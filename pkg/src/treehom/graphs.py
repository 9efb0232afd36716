"""Simple graphs, k-colorability, homogeneity checks, and the 2-color machinery.

For k = 2 homogeneity is decided exactly through odd-path reachability in
the bipartite double cover.  For k >= 3 it is decided by exact coloring
search per connected component, guarded by a size budget.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceededError, DecodeError, InputError
from .trees import ColorSet, FinTree

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    if u == v:
        raise InputError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """Undirected simple graph on integer vertices."""

    __slots__ = ("vertices", "edges", "_adj")

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        self.edges = frozenset(_norm_edge(u, v) for u, v in edges)
        verts = set(vertices)
        for u, v in self.edges:
            verts.add(u)
            verts.add(v)
        self.vertices = frozenset(verts)
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = {v: tuple(sorted(ws)) for v, ws in adj.items()}

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return Graph(self.vertices, list(self.edges) + [tuple(e) for e in extra])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertices, self.edges))

    def __repr__(self) -> str:
        return f"Graph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


@dataclass(frozen=True)
class HomVertexSet:
    """A vertex set claimed homogeneous for a graph under k colors."""

    vertices: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if list(self.vertices) != sorted(set(self.vertices)):
            raise InputError("vertices must be sorted and duplicate-free")


def is_proper_coloring(graph: Graph, coloring: dict[int, int], k: int) -> bool:
    """True iff the coloring is total on the vertex set, uses colors < k, and separates edges."""
    if any(v not in coloring or not (0 <= coloring[v] < k) for v in graph.vertices):
        return False
    return all(coloring[u] != coloring[v] for u, v in graph.edges)


def components(graph: Graph) -> list[tuple[int, ...]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen: set[int] = set()
    out = []
    for start in sorted(graph.vertices):
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            for w in graph.neighbors(stack.pop()):
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    stack.append(w)
        out.append(tuple(sorted(comp)))
    return out


def bipartition(graph: Graph) -> dict[int, int] | None:
    """Parity labels per vertex (0/1 within each component), or None on an odd cycle."""
    label: dict[int, int] = {}
    for start in sorted(graph.vertices):
        if start in label:
            continue
        label[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for w in graph.neighbors(v):
                if w not in label:
                    label[w] = 1 - label[v]
                    stack.append(w)
                elif label[w] == label[v]:
                    return None
    return label


def odd_cycle_exists(graph: Graph) -> bool:
    """True iff some component is not 2-colorable."""
    return bipartition(graph) is None


def odd_path_exists(graph: Graph, x: int, y: int) -> tuple[bool, list[int] | None]:
    """Decide odd-length reachability from x to y; witness path included.

    Runs BFS in the bipartite double cover: state (v, p) means v reached by
    a path of parity p.  Exact, unlike enumerating simple paths.
    """
    if x not in graph.vertices or y not in graph.vertices:
        raise InputError("endpoints must be vertices")
    if x == y:
        raise InputError("odd-path queries take a pair of distinct vertices")
    start = (x, 0)
    parent: dict[tuple[int, int], tuple[int, int] | None] = {start: None}
    queue = [start]
    while queue:
        nxt = []
        for v, p in queue:
            for w in graph.neighbors(v):
                state = (w, 1 - p)
                if state not in parent:
                    parent[state] = (v, p)
                    nxt.append(state)
        queue = nxt
    if (y, 1) not in parent:
        return False, None
    path = []
    state: tuple[int, int] | None = (y, 1)
    while state is not None:
        path.append(state[0])
        state = parent[state]
    path.reverse()
    return True, path


def _coloring_search(
    graph: Graph,
    order: Sequence[int],
    k: int,
    pinned: dict[int, int],
) -> Iterator[dict[int, int]]:
    """Backtracking proper-coloring search over `order`; pinned colors fixed.

    Lazily yields colorings as dicts, colors ascending along the vertex
    order; consume one item for an existence check.
    """
    adj = graph._adj
    assign = dict(pinned)
    free = [v for v in order if v not in pinned]
    for u, v in graph.edges:
        if u in pinned and v in pinned and pinned[u] == pinned[v]:
            return

    def rec(i: int) -> Iterator[dict[int, int]]:
        if i == len(free):
            yield dict(assign)
            return
        v = free[i]
        used = {assign[w] for w in adj[v] if w in assign}
        for c in range(k):
            if c in used:
                continue
            assign[v] = c
            yield from rec(i + 1)
            del assign[v]

    yield from rec(0)


def proper_colorings(
    graph: Graph, k: int, pinned: dict[int, int] | None = None
) -> list[dict[int, int]]:
    """All proper k-colorings extending the pin, in deterministic order."""
    pins = dict(pinned or {})
    if any(not (0 <= c < k) for c in pins.values()):
        raise InputError("pinned color outside range")
    order = sorted(graph.vertices)
    return list(_coloring_search(graph, order, k, pins))


def colorable_with_pins(graph: Graph, k: int, pinned: dict[int, int]) -> bool:
    """True iff some proper k-coloring extends the pin."""
    order = sorted(graph.vertices)
    for _ in _coloring_search(graph, order, k, pinned):
        return True
    return False


def parity_structure(graph: Graph) -> tuple[dict[int, int], dict[int, int]] | None:
    """One BFS pass: (parity label, component id) per vertex; None on an odd
    cycle."""
    label: dict[int, int] = {}
    comp: dict[int, int] = {}
    cid = 0
    for start in sorted(graph.vertices):
        if start in label:
            continue
        label[start] = 0
        comp[start] = cid
        stack = [start]
        while stack:
            v = stack.pop()
            for w in graph.neighbors(v):
                if w not in label:
                    label[w] = 1 - label[v]
                    comp[w] = cid
                    stack.append(w)
                elif label[w] == label[v]:
                    return None
        cid += 1
    return label, comp


def is_k_homogeneous(
    graph: Graph, hom: HomVertexSet | Iterable[int], k: int, budget: int = 64
) -> bool:
    """True iff every finite vertex subset induces a k-colorable subgraph
    coloring all its hom vertices color 0.

    k = 2: exact via odd cycles and odd paths.  k >= 3: exact per connected
    component (restriction of a witness coloring handles smaller subsets);
    components larger than the budget raise BudgetExceededError.
    """
    verts = tuple(hom.vertices) if isinstance(hom, HomVertexSet) else tuple(sorted(set(hom)))
    if any(v not in graph.vertices for v in verts):
        raise InputError("homogeneous set must be a subset of the vertices")
    if k == 2:
        structure = parity_structure(graph)
        if structure is None:
            return False
        label, comp_id = structure
        seen: dict[int, int] = {}
        for v in verts:
            c = comp_id[v]
            if c in seen and seen[c] != label[v]:
                return False
            seen.setdefault(c, label[v])
        return True
    hset = set(verts)
    for comp in components(graph):
        if len(comp) > budget:
            raise BudgetExceededError(
                f"component of size {len(comp)} exceeds homogeneity budget {budget}"
            )
        sub = induced_subgraph(graph, comp)
        pins = {v: 0 for v in comp if v in hset}
        if not colorable_with_pins(sub, k, pins):
            return False
    return True


def induced_subgraph(graph: Graph, verts: Iterable[int]) -> Graph:
    vs = set(verts)
    return Graph(vs, [e for e in graph.edges if e[0] in vs and e[1] in vs])


def enumerate_odd_pairs(graph: Graph, xs: Sequence[int]) -> list[tuple[int, int, list[int]]]:
    """All pairs x < y from xs joined by an odd-length path, with witnesses."""
    out = []
    for i, x in enumerate(xs):
        for y in xs[i + 1 :]:
            a, b = (x, y) if x < y else (y, x)
            found, path = odd_path_exists(graph, a, b)
            if found:
                assert path is not None
                out.append((a, b, path))
    return out


@dataclass(frozen=True)
class GraphLocalization:
    """Image graph plus what the decoder needs: the pair gadget ids."""

    image: Graph
    xs: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    gadget_ids: tuple[tuple[int, int], ...]  # (a_n, b_n) per pair


def localize_graph(
    graph: Graph, xs: Sequence[int], odd_pairs: Sequence[tuple[int, int, list[int]]]
) -> GraphLocalization:
    """Re-house odd-path conflicts among xs in a fresh gadget graph.

    For each listed pair (x, y) a fresh two-vertex bridge a_n - b_n is added
    with edges (x, a_n), (a_n, b_n), (b_n, y), so the image has an odd x-y
    path exactly where the source did, and no odd cycle.
    """
    if odd_cycle_exists(graph):
        raise InputError("source graph contains an odd cycle")
    xset = sorted(set(xs))
    base = max(max(xset, default=-1), max(graph.vertices, default=-1)) + 1
    edges: list[Edge] = []
    gadget_ids = []
    pairs = []
    for n, (x, y, _path) in enumerate(odd_pairs):
        if x not in xset or y not in xset:
            raise InputError("odd pair endpoints must lie in the localization set")
        a = base + 2 * n
        b = base + 2 * n + 1
        edges.extend([(x, a), (a, b), (b, y)])
        gadget_ids.append((a, b))
        pairs.append((x, y))
    image = Graph(xset + [v for ab in gadget_ids for v in ab], edges)
    return GraphLocalization(image, tuple(xset), tuple(pairs), tuple(gadget_ids))


def decode_localized_graph(loc: GraphLocalization, hom0: Iterable[int]) -> tuple[int, ...]:
    """Map a homogeneous set for the image back to a subset of xs.

    Picks the parity class of xs vertices attached to hom0 (larger class
    wins, even parity on ties) and adds every x that sits in no listed pair.
    """
    h0 = sorted(set(hom0))
    if any(v not in loc.image.vertices for v in h0):
        raise DecodeError("solution mentions vertices outside the image graph")
    label = bipartition(loc.image)
    assert label is not None  # image is built odd-cycle-free
    comp_id: dict[int, int] = {}
    for i, comp in enumerate(components(loc.image)):
        for v in comp:
            comp_id[v] = i
    for i, u in enumerate(h0):
        for v in h0[i + 1 :]:
            if comp_id[u] == comp_id[v] and label[u] != label[v]:
                raise DecodeError(f"input set has an odd path between {u} and {v}")
    if not loc.pairs:
        return tuple(loc.xs)
    paired = {v for pair in loc.pairs for v in pair}
    free = [x for x in loc.xs if x not in paired]
    classes: dict[int, list[int]] = {0: [], 1: []}
    for x in loc.xs:
        if x not in paired:
            continue
        for h in h0:
            if comp_id[h] == comp_id[x]:
                classes[label[x] ^ label[h]].append(x)
                break
    chosen = classes[0] if len(classes[0]) >= len(classes[1]) else classes[1]
    return tuple(sorted(set(chosen) | set(free)))


@dataclass(frozen=True)
class ColoringTree:
    """Coloring tree of a graph: level-n nodes are proper colorings of the
    first n vertices in the enumeration order."""

    tree: FinTree
    order: tuple[int, ...]
    k: int


def graph_to_coloring_tree(graph: Graph, k: int, order: Sequence[int] | None = None) -> ColoringTree:
    """Tree over k whose level-n nodes are exactly the proper k-colorings of
    the first n vertices."""
    seq = tuple(sorted(graph.vertices)) if order is None else tuple(order)
    if set(seq) != set(graph.vertices):
        raise InputError("order must enumerate the vertex set")
    index = {v: i for i, v in enumerate(seq)}
    back_edges: list[list[int]] = [[] for _ in seq]
    for u, v in graph.edges:
        i, j = index[u], index[v]
        if i > j:
            i, j = j, i
        back_edges[j].append(i)
    levels: list[list[tuple[int, ...]]] = [[()]]
    for n in range(len(seq)):
        nxt = []
        for w in levels[n]:
            taken = {w[i] for i in back_edges[n]}
            nxt.extend(w + (c,) for c in range(k) if c not in taken)
        levels.append(nxt)
    nodes = [w for lv in levels for w in lv]
    return ColoringTree(FinTree(k, len(seq), nodes), seq, k)


def decode_coloring_hom(ct: ColoringTree, hom0: ColorSet) -> HomVertexSet:
    """Positions homogeneous for the coloring tree name vertices homogeneous
    for the graph (color-swap to 0 is implicit in the homogeneity notion)."""
    if any(p >= len(ct.order) for p in hom0.positions):
        raise DecodeError("position beyond the vertex enumeration")
    return HomVertexSet(tuple(sorted(ct.order[p] for p in hom0.positions)), ct.k)


def clique_augment(graph: Graph, k: int) -> tuple[Graph, tuple[int, ...]]:
    """Join k-3 fresh clique vertices to every vertex; identity for k = 3.

    Returns the augmented graph and the fresh clique ids (needed to decode).
    """
    if k < 3:
        raise InputError("clique augmentation needs k >= 3")
    if k == 3:
        return graph, ()
    base = max(graph.vertices, default=-1) + 1
    clique = tuple(range(base, base + (k - 3)))
    edges = list(graph.edges)
    for i, u in enumerate(clique):
        edges.extend((u, v) for v in clique[i + 1 :])
        edges.extend((u, v) for v in graph.vertices)
    return Graph(set(graph.vertices) | set(clique), edges), clique


def decode_clique_augment(hom: Iterable[int], clique: tuple[int, ...]) -> tuple[int, ...]:
    """Drop the clique vertices; what remains is homogeneous for the source."""
    return tuple(sorted(set(hom) - set(clique)))


# -- text formats ------------------------------------------------------------


def graph_to_adjacency_text(graph: Graph) -> str:
    """One line per vertex: '<v>: <sorted neighbors>'; 0-based ids."""
    lines = [
        f"{v}: {' '.join(str(w) for w in graph.neighbors(v))}".rstrip()
        for v in sorted(graph.vertices)
    ]
    return "\n".join(lines) + "\n"


def graph_from_adjacency_text(text: str) -> Graph:
    vertices: set[int] = set()
    edges: list[Edge] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        head, _, rest = line.partition(":")
        try:
            v = int(head)
            ws = [int(tok) for tok in rest.split()]
        except ValueError as exc:
            raise InputError(f"bad adjacency line {line!r}") from exc
        vertices.add(v)
        edges.extend((v, w) for w in ws)
    return Graph(vertices, edges)


def graph_to_dot(graph: Graph, labels: dict[int, str] | None = None, name: str = "G") -> str:
    """DOT export; optional per-vertex label annotations."""
    labels = labels or {}
    lines = [f"graph {name} {{"]
    for v in sorted(graph.vertices):
        if v in labels:
            lines.append(f'  {v} [label="{labels[v]}"];')
        elif not graph.neighbors(v):
            lines.append(f"  {v};")
    lines.extend(f"  {u} -- {v};" for u, v in sorted(graph.edges))
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_from_dot(text: str) -> tuple[Graph, dict[int, str]]:
    """Parse the subset of DOT emitted by graph_to_dot."""
    vertices: set[int] = set()
    edges: list[Edge] = []
    labels: dict[int, str] = {}
    for raw in text.splitlines():
        line = raw.strip().rstrip(";")
        if not line or line.startswith("graph") or line == "}":
            continue
        if "--" in line:
            left, _, right = line.partition("--")
            try:
                edges.append((int(left.strip()), int(right.strip())))
            except ValueError as exc:
                raise InputError(f"bad DOT edge line {raw!r}") from exc
        else:
            head = line.split("[", 1)[0].strip()
            try:
                v = int(head)
            except ValueError as exc:
                raise InputError(f"bad DOT vertex line {raw!r}") from exc
            vertices.add(v)
            if "[" in line and 'label="' in line:
                labels[v] = line.split('label="', 1)[1].split('"', 1)[0]
    return Graph(vertices, edges), labels

"""Instance transformers between trees (and tournaments), each with a decoder.

Every reduction here maps a source instance to an image instance so that
any homogeneous set / matching partial map / path found for the image pulls
back to one for the source.  Decoders validate their preconditions and
refuse garbage rather than guessing.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from .errors import DecodeError, InputError
from .trees import (
    ColorSet,
    Dyadic,
    FinTree,
    PartialHom,
    Word,
    func_homogeneous_to_depth,
    min_level_density,
    tree_homogeneous_to_depth,
)

U_SEARCH_CAP = 1 << 20


# -- localization (positions) ------------------------------------------------


def _check_increasing(xs: Sequence[int]) -> None:
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise InputError("localization positions must be strictly increasing")


def _localize_witness_level(xs: Sequence[int], m: int) -> int:
    # a length-m image node is read off a source witness just long enough
    # to cover its last sampled position
    return 0 if m == 0 else xs[m - 1] + 1


def localize_tree(tree: FinTree, xs: Sequence[int]) -> FinTree:
    """Re-index the tree along sampling positions xs: a length-m node of the
    image is the xs-pattern of a source node covering xs[m-1]."""
    if tree.alphabet != 2:
        raise InputError("localization is defined for binary trees")
    _check_increasing(xs)
    horizon = max(
        (m for m in range(len(xs) + 1) if _localize_witness_level(xs, m) <= tree.horizon),
        default=0,
    )
    nodes: set[Word] = set()
    for m in range(horizon + 1):
        for tau in tree.level(_localize_witness_level(xs, m)):
            nodes.add(tuple(tau[x] for x in xs[:m]))
    return FinTree(2, horizon, nodes)


def decode_localized(tree: FinTree, xs: Sequence[int], hom0: ColorSet) -> ColorSet:
    """Pull a homogeneous set for the localized tree back into xs.

    The result is homogeneous for the source down to the image's last
    witness level, xs[horizon-1] + 1.
    """
    image = localize_tree(tree, xs)
    if any(p >= image.horizon for p in hom0.positions):
        raise DecodeError("solution uses positions beyond the image horizon")
    if not tree_homogeneous_to_depth(image, hom0, image.horizon):
        raise DecodeError("solution is not homogeneous for the localized tree")
    return ColorSet.of((xs[i] for i in hom0.positions), hom0.color)


def localize_positive_measure(tree: FinTree, xs: Sequence[int]) -> tuple[FinTree, Dyadic]:
    """localize_tree plus the exact density floor the image is certified to keep."""
    image = localize_tree(tree, xs)
    bound = min_level_density(tree)
    if min_level_density(image) < bound:
        raise AssertionError("density bound violated; localization is broken")
    return image, bound


# -- k-ary alphabets via binary expansions ------------------------------------


def binary_expansion_word(tree_word: Word, bits: int) -> Word:
    """Concatenate the bits-wide, most-significant-first expansions of the symbols."""
    out: list[int] = []
    for a in tree_word:
        out.extend((a >> (bits - 1 - j)) & 1 for j in range(bits))
    return tuple(out)


def pad_alphabet(tree: FinTree, alphabet: int) -> FinTree:
    """Embed into a larger alphabet (documented plumbing before kary_to_binary)."""
    if alphabet < tree.alphabet:
        raise InputError("padding cannot shrink the alphabet")
    return FinTree(alphabet, tree.horizon, tree.nodes)


def kary_to_binary(tree: FinTree) -> FinTree:
    """Code a tree over alphabet 2^k as the binary tree of expansion prefixes."""
    k = tree.alphabet
    bits = k.bit_length() - 1
    if 1 << bits != k or bits < 1:
        raise InputError("alphabet must be a power of two; pad_alphabet first")
    horizon = bits * tree.horizon
    nodes: set[Word] = set()
    for s in range(tree.horizon + 1):
        for sigma in tree.level(s):
            full = binary_expansion_word(sigma, bits)
            lo = bits * (s - 1) + 1 if s > 0 else 0
            for m in range(lo, bits * s + 1):
                nodes.add(full[:m])
    return FinTree(2, horizon, nodes)


def kary_refine_step(tree: FinTree, hom: ColorSet, bits: int) -> tuple[FinTree, tuple[int, ...]]:
    """Restrict the binary coding tree by one homogeneous set and shift the
    localization positions one step to the next residue class."""
    if hom.positions:
        residues = {p % bits for p in hom.positions}
        if len(residues) != 1:
            raise InputError("homogeneous set mixes residue classes mod the bit width")
    kept = [
        w
        for w in tree.nodes
        if all(w[j] == hom.color for j in hom.positions if j < len(w))
    ]
    return FinTree(2, tree.horizon, kept), tuple(p + 1 for p in hom.positions)


def decode_kary(hom_last: ColorSet, colors: Sequence[int], bits: int) -> ColorSet:
    """Assemble the source homogeneous set from the last-stage set and the
    per-bit colors (most significant first)."""
    if len(colors) != bits or any(c not in (0, 1) for c in colors):
        raise InputError("need one binary color per bit")
    positions = [
        (p - (bits - 1)) // bits for p in hom_last.positions if p % bits == bits - 1
    ]
    if len(positions) != len(hom_last.positions):
        raise DecodeError("last-stage positions must all be = bits-1 mod bits")
    value = 0
    for c in colors:
        value = (value << 1) | c
    return ColorSet.of(positions, value)


# -- redundancy packing --------------------------------------------------------


@dataclass(frozen=True)
class USequence:
    """Block boundaries u for an order function g: u0 = 0 and u_{n+1} is the
    least i with g(i) >= u_n + 1."""

    g_table: tuple[int, ...]
    u: tuple[int, ...]

    def block(self, j: int) -> tuple[int, int]:
        return self.u[j], self.u[j + 1]


def build_u_sequence(g: Callable[[int], int], blocks: int) -> USequence:
    """Tabulate u_0..u_blocks for the order function g (g nondecreasing,
    g(n) <= n, unbounded)."""
    u = [0]
    probe = 0
    while len(u) <= blocks:
        target = u[-1] + 1
        i = u[-1]
        while g(i) < target:
            i += 1
            if i > U_SEARCH_CAP:
                raise InputError("order function never reaches the next block boundary")
        u.append(i)
        probe = max(probe, i)
    table = tuple(g(n) for n in range(probe + 1))
    if any(b < a for a, b in zip(table, table[1:])):
        raise InputError("order function must be nondecreasing")
    if any(table[n] > n for n in range(len(table))):
        raise InputError("order function must satisfy g(n) <= n")
    return USequence(table, tuple(u))


def packed_expansion(tau: Word, useq: USequence) -> Word:
    """Repeat tau(j) across the block [u_j, u_{j+1}); total length u_{|tau|}."""
    out: list[int] = []
    for j, a in enumerate(tau):
        lo, hi = useq.block(j)
        out.extend([a] * (hi - lo))
    return tuple(out)


def pack_redundant(tree: FinTree, g: Callable[[int], int]) -> tuple[FinTree, USequence]:
    """Stretch each source level across a block so that any g-packed matching
    map must pin every block.

    A length-m image node is a truncated block expansion of a source node
    with just enough blocks to cover m, so the image horizon is u[source
    horizon] and every image position is witness-certified.
    """
    if tree.alphabet != 2:
        raise InputError("packing is defined for binary trees")
    useq = build_u_sequence(g, tree.horizon)
    horizon = useq.u[tree.horizon]
    nodes: set[Word] = set()
    expansions: dict[int, list[Word]] = {
        j: [packed_expansion(t, useq) for t in tree.level(j)]
        for j in range(tree.horizon + 1)
    }
    for m in range(horizon + 1):
        j = bisect_left(useq.u, m)
        for full in expansions[j]:
            nodes.add(full[:m])
    return FinTree(2, horizon, nodes), useq


def is_everywhere_packed(hom: PartialHom, g_table: Sequence[int], upto: int) -> bool:
    """True iff |dom(h) restricted below n| >= g(n) for every n <= upto."""
    dom = hom.domain
    return all(
        sum(1 for p in dom if p < n) >= g_table[n] for n in range(min(upto, len(g_table) - 1) + 1)
    )


def decode_packed(hom: PartialHom, image: FinTree, useq: USequence) -> Word:
    """Read one source symbol per block from the least matched position in it.

    A block disjoint from the domain means the everywhere-packed
    precondition failed (the pigeonhole that justifies the decoding).
    """
    blocks = len(useq.u) - 1
    if not func_homogeneous_to_depth(image, hom, image.horizon):
        raise DecodeError("matching map is not homogeneous for the packed tree")
    values = hom.as_dict()
    out = []
    for j in range(blocks):
        lo, hi = useq.block(j)
        if lo >= image.horizon:
            break
        picks = [p for p in hom.domain if lo <= p < hi]
        if not picks:
            raise DecodeError(
                f"block [{lo},{hi}) misses the domain: the everywhere-packed "
                "precondition (pigeonhole) failed"
            )
        out.append(values[min(picks)])
    return tuple(out)


# -- fixed-color coding --------------------------------------------------------


@dataclass(frozen=True)
class LengthLexEnum:
    """Length-lexicographic enumeration of all words over a fixed alphabet."""

    alphabet: int

    def first_index(self, length: int) -> int:
        k = self.alphabet
        if k == 1:
            return length
        return (k**length - 1) // (k - 1)

    def word_at(self, index: int) -> Word:
        if index < 0:
            raise InputError("negative enumeration index")
        n = 0
        while self.first_index(n + 1) <= index:
            n += 1
        rank = index - self.first_index(n)
        digits = []
        for _ in range(n):
            digits.append(rank % self.alphabet)
            rank //= self.alphabet
        return tuple(reversed(digits))

    def index_of(self, word: Word) -> int:
        rank = 0
        for a in word:
            if not (0 <= a < self.alphabet):
                raise InputError("symbol outside alphabet")
            rank = rank * self.alphabet + a
        return self.first_index(len(word)) + rank

    def table(self, count: int) -> list[Word]:
        return [self.word_at(i) for i in range(count)]


def fixed_color_tree(source: FinTree, enum: LengthLexEnum | None = None) -> FinTree:
    """Tree whose nodes put 0 exactly at indices of enumeration words that
    prefix a same-length source witness."""
    if source.alphabet != 2:
        raise InputError("fixed-color coding is defined for binary trees")
    enum = enum or LengthLexEnum(2)
    words = enum.table(source.horizon)
    nodes: set[Word] = set()
    for s in range(source.horizon + 1):
        for tau in source.level(s):
            sigma = tuple(0 if tau[: len(words[i])] == words[i] else 1 for i in range(s))
            nodes.add(sigma)
    return FinTree(2, source.horizon, nodes)


def decode_fixed_color(
    source: FinTree, hom: ColorSet, enum: LengthLexEnum | None = None
) -> Word:
    """Union the enumeration words named by a color-0 homogeneous set; they
    must form a prefix chain inside the source."""
    enum = enum or LengthLexEnum(2)
    if hom.color != 0:
        raise DecodeError("fixed-color decoding needs color 0")
    if not hom.positions:
        return ()
    image = fixed_color_tree(source, enum)
    top = max(hom.positions)
    if top >= image.horizon:
        raise DecodeError("solution position beyond what the horizon certifies")
    if not tree_homogeneous_to_depth(image, hom, top + 1):
        raise DecodeError("solution is not homogeneous for the coded tree")
    words = [enum.word_at(i) for i in hom.positions]
    words.sort(key=len)
    for a, b in zip(words, words[1:]):
        if b[: len(a)] != a:
            raise DecodeError("named words are not a prefix chain")
    path = words[-1]
    if path not in source.nodes:
        raise DecodeError("decoded word left the source tree")
    return path


# -- chain coding (paths as index chains) -------------------------------------


def chain_code_tree(
    source: FinTree, enum: LengthLexEnum | None = None
) -> tuple[FinTree, tuple[int, ...]]:
    """Code source paths as strictly growing chains of enumeration indices.

    Level m >= 1 nodes list, position by position, the indices of an
    increasing prefix chain ending at a level-(m-1) source node.  Returns the
    image and the bounding table g with every position-i symbol < g(i).
    """
    enum = enum or LengthLexEnum(source.alphabet)
    if enum.alphabet != source.alphabet:
        raise InputError("enumeration alphabet must match the source")
    horizon = source.horizon + 1
    nodes: set[Word] = {()}
    for s in range(source.horizon + 1):
        for t in source.level(s):
            nodes.add(tuple(enum.index_of(t[:i]) for i in range(s + 1)))
    bound = tuple(enum.first_index(i + 1) for i in range(horizon))
    alphabet = bound[-1] if bound else 1
    return FinTree(alphabet, horizon, nodes), bound


def decode_chain_code(
    hom: PartialHom, image: FinTree, source: FinTree, enum: LengthLexEnum | None = None
) -> Word:
    """Union the source words named by a matching map for the chain-coded tree."""
    enum = enum or LengthLexEnum(source.alphabet)
    if not func_homogeneous_to_depth(image, hom, image.horizon):
        raise DecodeError("matching map is not homogeneous for the chain-coded tree")
    words = []
    for i, v in hom.entries:
        w = enum.word_at(v)
        if len(w) != i:
            raise DecodeError("index names a word of the wrong length")
        if w not in source.nodes:
            raise DecodeError("index names a word outside the source tree")
        words.append(w)
    words.sort(key=len)
    for a, b in zip(words, words[1:]):
        if b[: len(a)] != a:
            raise DecodeError("named words are not a prefix chain")
    return words[-1] if words else ()


# -- coloring localization -----------------------------------------------------


@dataclass(frozen=True)
class TabulatedColoring:
    """A coloring of increasing arity-n tuples over [0, size) with k colors."""

    arity: int
    colors: int
    size: int
    values: tuple[tuple[Word, int], ...]

    def color(self, tup: Word) -> int:
        return dict(self.values)[tup]

    @classmethod
    def of(cls, arity: int, colors: int, size: int, mapping: dict[Word, int]) -> "TabulatedColoring":
        return cls(arity, colors, size, tuple(sorted(mapping.items())))


def localize_coloring(f: TabulatedColoring, xs: Sequence[int]) -> TabulatedColoring:
    """Re-index a tuple coloring along xs: g(i0,..) = f(x_{i0},..)."""
    _check_increasing(xs)
    if any(x >= f.size for x in xs):
        raise InputError("localization position beyond the coloring table")
    from itertools import combinations

    lut = dict(f.values)
    mapping = {
        tup: lut[tuple(xs[i] for i in tup)]
        for tup in combinations(range(len(xs)), f.arity)
    }
    return TabulatedColoring.of(f.arity, f.colors, len(xs), mapping)


def decode_localized_coloring(hom0: Iterable[int], xs: Sequence[int]) -> tuple[int, ...]:
    """Map index-level homogeneous sets back into xs."""
    return tuple(sorted(xs[i] for i in set(hom0)))


def coloring_homogeneous(f: TabulatedColoring, hom: Iterable[int]) -> bool:
    """True iff all arity-sized increasing tuples from hom share one color."""
    from itertools import combinations

    lut = dict(f.values)
    seen = {lut[t] for t in combinations(sorted(set(hom)), f.arity)}
    return len(seen) <= 1


# -- tournaments ---------------------------------------------------------------


@dataclass(frozen=True)
class Tournament:
    """Total irreflexive orientation on [0, n)."""

    n: int
    relation: frozenset[tuple[int, int]]

    def beats(self, x: int, y: int) -> bool:
        return (x, y) in self.relation

    def validate(self) -> bool:
        from itertools import combinations

        return all(
            ((x, y) in self.relation) != ((y, x) in self.relation)
            for x, y in combinations(range(self.n), 2)
        ) and all(x != y and 0 <= x < self.n and 0 <= y < self.n for x, y in self.relation)


def tournament_from_tree(tree: FinTree) -> Tournament:
    """Orient (x, s) for x < s by the x-th bit of the leftmost level-s node."""
    if tree.alphabet != 2:
        raise InputError("tournament coding is defined for binary trees")
    rel: set[tuple[int, int]] = set()
    for s in range(1, tree.horizon + 1):
        level = tree.level(s)
        if not level:
            raise InputError(f"tree has no node at level {s}")
        leftmost = level[0]
        for x in range(s):
            rel.add((x, s) if leftmost[x] == 1 else (s, x))
    return Tournament(tree.horizon + 1, frozenset(rel))


def stability_last_change(tourney: Tournament) -> dict[int, int | None]:
    """Per column x, the last s at which the orientation toward x flipped;
    None for columns constant within the horizon."""
    out: dict[int, int | None] = {}
    for x in range(tourney.n):
        last = None
        prev = None
        for s in range(x + 1, tourney.n):
            cur = tourney.beats(x, s)
            if prev is not None and cur != prev:
                last = s
            prev = cur
        out[x] = last
    return out


def transitive_subtournament(tourney: Tournament, size: int) -> tuple[int, ...]:
    """Exhaustively find a transitive subtournament of the requested size,
    returned in dominance order (earlier beats later).

    Any n-vertex tournament contains one of size floor(log2 n) + 1.
    """
    best: tuple[int, ...] = ()

    def extend(seq: list[int], candidates: list[int]) -> tuple[int, ...] | None:
        # candidates = vertices beaten by every element of seq; each transitive
        # set is reached exactly once, along its unique dominance order
        nonlocal best
        if len(seq) > len(best):
            best = tuple(seq)
        if len(seq) == size:
            return tuple(seq)
        for v in candidates:
            rest = [w for w in candidates if w != v and tourney.beats(v, w)]
            if len(seq) + 1 + len(rest) < size:
                continue
            got = extend(seq + [v], rest)
            if got is not None:
                return got
        return None

    found = extend([], list(range(tourney.n)))
    if found is not None:
        return found
    raise InputError(f"no transitive subtournament of size {size}; best was {best}")


@dataclass(frozen=True)
class TransitiveDecodeResult:
    """Outcome of the chain-endpoint case split: 'color0', 'color1', or
    'undetermined' when the horizon cannot certify either side."""

    case: str
    hom: ColorSet | None


def homog_from_transitive(
    tree: FinTree, tourney: Tournament, useq: Sequence[int], depth: int
) -> TransitiveDecodeResult:
    """Extract a homogeneous set from a transitive subtournament of the
    tree's tournament.

    A chain endpoint is *marked* when the chain of all its dominance
    predecessors fails color-1 homogeneity at the declared depth.  Marked
    endpoints drive the color-0 candidate (reverse-dominated, per the
    eventual-orientation argument); the tail above all marked endpoints
    drives the color-1 candidate.  Both are certified against the tree
    oracle; the larger certified set wins, and neither certifying reports
    undetermined rather than guessing.
    """
    u = list(useq)
    for a, b in zip(u, u[1:]):
        if not tourney.beats(a, b):
            raise InputError("sequence is not in dominance order")
    marked = []
    for idx, v in enumerate(u):
        prefix = u[: idx + 1]
        if not tree_homogeneous_to_depth(tree, ColorSet.of(prefix, 1), depth):
            marked.append(v)
    cand0: ColorSet | None = None
    if marked:
        chain: list[int] = []
        for y in sorted(marked):
            if all(tourney.beats(y, x) for x in chain):
                chain.append(y)
        cand0 = ColorSet.of(chain, 0)
        if not tree_homogeneous_to_depth(tree, cand0, depth):
            cand0 = None
    bound = max(marked, default=-1)
    tail = [v for v in u if v > bound]
    cand1: ColorSet | None = ColorSet.of(tail, 1) if tail else None
    if cand1 is not None and not tree_homogeneous_to_depth(tree, cand1, depth):
        cand1 = None
    if cand0 is None and cand1 is None:
        return TransitiveDecodeResult("undetermined", None)
    if cand1 is None or (cand0 is not None and len(cand0.positions) >= len(cand1.positions)):
        return TransitiveDecodeResult("color0", cand0)
    return TransitiveDecodeResult("color1", cand1)

"""Finite truncations of trees of words, homogeneity checks, and exact level densities.

A word over alphabet k is a tuple of ints in [0, k).  A FinTree is a
prefix-closed set of words of length <= horizon; it stands in for an
infinite tree, with every claim qualified by the horizon.  Homogeneous
sets come in two flavors: a set of positions with a single color
(ColorSet) and a partial position -> value map (PartialHom).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Iterable

from .errors import BudgetExceededError, InputError

Word = tuple[int, ...]

DEFAULT_ENUM_BUDGET = 1 << 16


@total_ordering
@dataclass(frozen=True)
class Dyadic:
    """Exact rational with a power-of-two denominator: num / 2^log2_den."""

    num: int
    log2_den: int

    def __post_init__(self) -> None:
        if self.num < 0 or self.log2_den < 0:
            raise InputError("dyadic parts must be nonnegative")
        num, log2 = self.num, self.log2_den
        while log2 > 0 and num % 2 == 0:
            num //= 2
            log2 -= 1
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "log2_den", log2)

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.log2_den)

    @classmethod
    def from_fraction(cls, frac: Fraction) -> "Dyadic":
        log2 = frac.denominator.bit_length() - 1
        if (1 << log2) != frac.denominator or frac < 0:
            raise InputError(f"{frac} is not a nonnegative dyadic rational")
        return cls(frac.numerator, log2)

    def _coerce(self, other) -> Fraction:
        if isinstance(other, Dyadic):
            return other.as_fraction()
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        frac = self._coerce(other)
        if frac is NotImplemented:
            return NotImplemented
        return self.as_fraction() == frac

    def __lt__(self, other) -> bool:
        frac = self._coerce(other)
        if frac is NotImplemented:
            return NotImplemented
        return self.as_fraction() < frac

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __str__(self) -> str:
        frac = self.as_fraction()
        return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"


@dataclass(frozen=True)
class ColorSet:
    """Positions plus a single color; the set-homogeneity witness shape."""

    positions: tuple[int, ...]
    color: int

    def __post_init__(self) -> None:
        if list(self.positions) != sorted(set(self.positions)):
            raise InputError("positions must be sorted and duplicate-free")
        if any(p < 0 for p in self.positions):
            raise InputError("positions must be naturals")

    @classmethod
    def of(cls, positions: Iterable[int], color: int) -> "ColorSet":
        return cls(tuple(sorted(set(positions))), color)

    def as_partial_hom(self) -> "PartialHom":
        return PartialHom.of({p: self.color for p in self.positions})


@dataclass(frozen=True)
class PartialHom:
    """Finite partial map position -> value; the function-homogeneity witness shape."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        keys = [p for p, _ in self.entries]
        if keys != sorted(set(keys)):
            raise InputError("entries must be sorted by position, duplicate-free")

    @classmethod
    def of(cls, mapping: dict[int, int]) -> "PartialHom":
        return cls(tuple(sorted(mapping.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.entries)

    @property
    def domain(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.entries)


class FinTree:
    """Prefix-closed set of words of length <= horizon over alphabet k.

    Construction stores the node set as given; use validate_tree to check
    the invariants.  All operations assume a valid tree.
    """

    __slots__ = ("alphabet", "horizon", "nodes", "_levels")

    def __init__(self, alphabet: int, horizon: int, nodes: Iterable[Word]):
        self.alphabet = alphabet
        self.horizon = horizon
        self.nodes = frozenset(tuple(w) for w in nodes)
        levels: list[list[Word]] = [[] for _ in range(horizon + 1)]
        for w in self.nodes:
            if len(w) <= horizon:
                levels[len(w)].append(w)
        self._levels = tuple(tuple(sorted(lv)) for lv in levels)

    def level(self, s: int) -> tuple[Word, ...]:
        """Nodes of length s, sorted lexicographically."""
        return self._levels[s]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinTree)
            and self.alphabet == other.alphabet
            and self.horizon == other.horizon
            and self.nodes == other.nodes
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.horizon, self.nodes))

    def __contains__(self, word: Word) -> bool:
        return tuple(word) in self.nodes

    def __len__(self) -> int:
        return len(self.nodes)

    def __repr__(self) -> str:
        return f"FinTree(alphabet={self.alphabet}, horizon={self.horizon}, nodes={len(self.nodes)})"


def full_tree(alphabet: int, horizon: int) -> FinTree:
    """The complete alphabet-ary tree truncated at the horizon."""
    nodes: list[Word] = []
    for s in range(horizon + 1):
        nodes.extend(itertools.product(range(alphabet), repeat=s))
    return FinTree(alphabet, horizon, nodes)


def chain_tree(word: Word, horizon: int | None = None, alphabet: int = 2) -> FinTree:
    """The tree whose nodes are exactly the prefixes of one word."""
    horizon = len(word) if horizon is None else horizon
    return FinTree(alphabet, horizon, [tuple(word[:i]) for i in range(len(word) + 1)])


def validate_tree(tree: FinTree) -> bool:
    """True iff the FinTree invariants hold (prefix-closed, in-range symbols)."""
    if tree.alphabet < 1 or tree.horizon < 0:
        return False
    for w in tree.nodes:
        if len(w) > tree.horizon:
            return False
        if any(not (0 <= a < tree.alphabet) for a in w):
            return False
        if len(w) > 0 and w[:-1] not in tree.nodes:
            return False
    return True


def word_homogeneous(hom: ColorSet, word: Word) -> bool:
    """True iff word carries hom.color at every hom position below its length."""
    return all(word[i] == hom.color for i in hom.positions if i < len(word))


def word_func_homogeneous(hom: PartialHom, word: Word) -> bool:
    """True iff word agrees with the partial map at every domain position below its length."""
    return all(word[p] == v for p, v in hom.entries if p < len(word))


def tree_homogeneous_to_depth(tree: FinTree, hom: ColorSet, depth: int) -> bool:
    """True iff every level up to depth has a node homogeneous for hom."""
    if depth > tree.horizon:
        raise InputError("depth exceeds horizon")
    return all(
        any(word_homogeneous(hom, w) for w in tree.level(s)) for s in range(depth + 1)
    )


def func_homogeneous_to_depth(tree: FinTree, hom: PartialHom, depth: int) -> bool:
    """True iff every level up to depth has a node matching the partial map."""
    if depth > tree.horizon:
        raise InputError("depth exceeds horizon")
    return all(
        any(word_func_homogeneous(hom, w) for w in tree.level(s)) for s in range(depth + 1)
    )


def enumerate_homogeneous(
    tree: FinTree,
    depth: int,
    bound: int,
    budget: int = DEFAULT_ENUM_BUDGET,
) -> list[ColorSet]:
    """All ColorSets with positions in [0, bound) homogeneous for tree up to depth.

    Exhaustive over 2^bound * alphabet candidates; raises BudgetExceededError
    if 2^bound exceeds the budget.  Output order: lexicographic by position
    tuple, then color.
    """
    if (1 << bound) > budget:
        raise BudgetExceededError(f"2^{bound} candidate sets exceed budget {budget}")
    subsets = sorted(
        itertools.chain.from_iterable(
            itertools.combinations(range(bound), r) for r in range(bound + 1)
        )
    )
    out = []
    for positions in subsets:
        for color in range(tree.alphabet):
            cand = ColorSet(positions, color)
            if tree_homogeneous_to_depth(tree, cand, depth):
                out.append(cand)
    return out


def homogeneous_sets_via_level(tree: FinTree, depth: int, bound: int) -> list[ColorSet]:
    """Same set as enumerate_homogeneous for bound <= depth, via level-node restrictions.

    Every homogeneous candidate with positions below the depth is the
    restriction of some depth-level node, because a witness at the deepest
    level prefixes down.  Much faster than the filter on dense trees.
    """
    if bound > depth:
        raise InputError("level enumeration requires bound <= depth")
    found: set[tuple[tuple[int, ...], int]] = set()
    empty_ok = len(tree.level(depth)) > 0
    for w in tree.level(depth):
        by_color: dict[int, list[int]] = {}
        for i in range(bound):
            by_color.setdefault(w[i], []).append(i)
        for color, pos in by_color.items():
            for r in range(1, len(pos) + 1):
                for subset in itertools.combinations(pos, r):
                    found.add((subset, color))
    out = [ColorSet(p, c) for p, c in found]
    if empty_ok:
        out.extend(ColorSet((), c) for c in range(tree.alphabet))
    return sorted(out, key=lambda h: (h.positions, h.color))


def min_level_density(tree: FinTree) -> Dyadic:
    """Exact min over levels s <= horizon of |T^s| / 2^s.  Binary trees only."""
    if tree.alphabet != 2:
        raise InputError("level density is defined for alphabet 2")
    return min(
        (Dyadic(len(tree.level(s)), s) for s in range(tree.horizon + 1)),
        key=Dyadic.as_fraction,
    )


def gamma_restrict(tree: FinTree, positions: Iterable[int], value: int) -> FinTree:
    """Intersect with the set of words pinned to value on the given positions."""
    if not (0 <= value < tree.alphabet):
        raise InputError("pin value outside alphabet")
    pins = sorted(set(positions))
    kept = [
        w
        for w in tree.nodes
        if all(w[i] == value for i in pins if i < len(w))
    ]
    return FinTree(tree.alphabet, tree.horizon, kept)


def gamma_tree(positions: Iterable[int], value: int, horizon: int) -> FinTree:
    """The full binary tree restricted to words pinned to value on positions."""
    return gamma_restrict(full_tree(2, horizon), positions, value)


def paths_at_horizon(tree: FinTree) -> list[Word]:
    """Nodes of maximal length, the finite stand-in for paths; lexicographic order."""
    return list(tree.level(tree.horizon))


def prune(tree: FinTree) -> FinTree:
    """Keep only nodes extendable to the horizon.  Never applied implicitly."""
    keep: set[Word] = set()
    for w in tree.level(tree.horizon):
        for i in range(len(w) + 1):
            keep.add(w[:i])
    return FinTree(tree.alphabet, tree.horizon, keep)


# -- interchange format ------------------------------------------------------
#
# {"alphabet": k, "horizon": D, "nodes": [...]} with nodes in
# length-lexicographic order.  For k <= 10 a node is a digit string with ""
# for the empty word; for larger alphabets a node is a list of ints.


def word_to_str(word: Word) -> str:
    return "".join(str(a) for a in word)


def str_to_word(text: str) -> Word:
    return tuple(int(ch) for ch in text)


def tree_to_dict(tree: FinTree) -> dict:
    ordered = sorted(tree.nodes, key=lambda w: (len(w), w))
    if tree.alphabet <= 10:
        nodes = [word_to_str(w) for w in ordered]
    else:
        nodes = [list(w) for w in ordered]
    return {"alphabet": tree.alphabet, "horizon": tree.horizon, "nodes": nodes}


def tree_from_dict(data: dict) -> FinTree:
    try:
        alphabet = int(data["alphabet"])
        horizon = int(data["horizon"])
        raw = data["nodes"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed tree document: {exc}") from exc
    nodes = [str_to_word(n) if isinstance(n, str) else tuple(int(a) for a in n) for n in raw]
    tree = FinTree(alphabet, horizon, nodes)
    if not validate_tree(tree):
        raise InputError("tree document violates tree invariants")
    return tree


def tree_to_text(tree: FinTree) -> str:
    return json.dumps(tree_to_dict(tree), sort_keys=True) + "\n"


def tree_from_text(text: str) -> FinTree:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"not a tree document: {exc}") from exc
    return tree_from_dict(data)


# -- seeded generators -------------------------------------------------------


def random_tree(seed: int, alphabet: int, horizon: int, thin: float = 0.3) -> FinTree:
    """Seeded random prefix-closed tree: grow level by level, keeping each child
    with probability 1 - thin but never losing a whole level."""
    rng = random.Random(seed)
    levels: list[list[Word]] = [[()]]
    for s in range(horizon):
        children = [w + (a,) for w in levels[s] for a in range(alphabet)]
        kept = [w for w in children if rng.random() >= thin]
        if not kept and children:
            kept = [rng.choice(children)]
        levels.append(kept)
    return FinTree(alphabet, horizon, [w for lv in levels for w in lv])


def random_positive_measure_tree(seed: int, horizon: int, c: int) -> FinTree:
    """Seeded random binary tree with certified min level density >= 2^-c.

    Grows level by level, keeping a random subset of the surviving children
    but never fewer than ceil(2^(s-c)), so every level density is >= 2^-c by
    construction.  The kept-count bias is quadratic toward the floor to
    exercise thin trees.
    """
    rng = random.Random(seed)
    nodes: list[Word] = [()]
    level: list[Word] = [()]
    for s in range(1, horizon + 1):
        children = [w + (a,) for w in level for a in (0, 1)]
        min_needed = max(1, -((-(1 << s)) // (1 << c)))  # ceil(2^s / 2^c)
        if min_needed >= len(children):
            kept = children
        else:
            u = rng.random()
            t = min_needed + int(u * u * (len(children) - min_needed))
            kept = sorted(rng.sample(children, t))
        nodes.extend(kept)
        level = kept
    return FinTree(2, horizon, nodes)

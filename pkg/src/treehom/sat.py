"""Trees as clause sets and formula lists as trees, with brute-force
satisfiability and homogeneity oracles.

Truth assignments are identified with binary words: position i gives the
value of atom i (1 = true).  A formula evaluated under a word is undefined
(hence not false) whenever it mentions an atom at or beyond the word's
length; the formula-to-tree translation depends on that convention.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InputError
from .trees import ColorSet, FinTree, Word

# -- literals and clauses ------------------------------------------------------


@dataclass(frozen=True)
class Literal:
    atom: int
    positive: bool

    def __str__(self) -> str:
        return f"a{self.atom}" if self.positive else f"!a{self.atom}"


Clause = tuple[Literal, ...]


def is_two_branching(clauses: Sequence[Clause]) -> bool:
    """True iff the i-th literal of every clause is built from atom i."""
    return all(lit.atom == i for cl in clauses for i, lit in enumerate(cl))


def clause_satisfied(clause: Clause, sigma: Word) -> bool | None:
    """Truth value of a clause under a word-assignment; None if some literal's
    atom is out of range and no in-range literal is already true."""
    undefined = False
    for lit in clause:
        if lit.atom >= len(sigma):
            undefined = True
            continue
        if bool(sigma[lit.atom]) == lit.positive:
            return True
    return None if undefined else False


@dataclass(frozen=True)
class SatHomSet:
    """Atoms plus the single truth value they are pinned to."""

    atoms: tuple[int, ...]
    value: bool

    def __post_init__(self) -> None:
        if list(self.atoms) != sorted(set(self.atoms)):
            raise InputError("atoms must be sorted and duplicate-free")

    @classmethod
    def of(cls, atoms: Iterable[int], value: bool) -> "SatHomSet":
        return cls(tuple(sorted(set(atoms))), value)


# -- trees to clauses ----------------------------------------------------------


def clause_for_word(sigma: Word) -> Clause:
    """The clause falsified exactly by the assignment sigma."""
    return tuple(Literal(i, sigma[i] == 0) for i in range(len(sigma)))


def tree_to_clauses(tree: FinTree) -> list[Clause]:
    """One clause per word outside the tree (up to the horizon), in
    length-lexicographic order of the defining word."""
    if tree.alphabet != 2:
        raise InputError("clause coding is defined for binary trees")
    out = []
    for s in range(1, tree.horizon + 1):
        for sigma in itertools.product((0, 1), repeat=s):
            if sigma not in tree.nodes:
                out.append(clause_for_word(sigma))
    return out


def minimal_clauses(clauses: Sequence[Clause]) -> list[Clause]:
    """Drop every clause that has a proper prefix in the list."""
    present = set(clauses)
    out = []
    for cl in clauses:
        if not any(cl[:n] in present for n in range(1, len(cl))):
            out.append(cl)
    return out


def decode_sat_hom(hom: SatHomSet) -> ColorSet:
    """Positive atoms pinned true decode to color 1, pinned false to color 0."""
    return ColorSet.of(hom.atoms, 1 if hom.value else 0)


# -- satisfiability oracles ------------------------------------------------------


def _max_atom(clauses: Sequence[Clause]) -> int:
    return max((lit.atom for cl in clauses for lit in cl), default=-1)


def finitely_satisfiable(clauses: Sequence[Clause], n: int) -> bool:
    """Brute force: the first n clauses have a simultaneous satisfying
    assignment (covering every subset of them)."""
    prefix = list(clauses)[:n]
    width = _max_atom(prefix) + 1
    for sigma in itertools.product((0, 1), repeat=width):
        if all(clause_satisfied(cl, sigma) for cl in prefix):
            return True
    return False


def sat_homogeneous(clauses: Sequence[Clause], hom: SatHomSet, n: int) -> bool:
    """Brute force: the first n clauses are satisfiable with every hom atom
    pinned to the hom value."""
    prefix = list(clauses)[:n]
    width = max(_max_atom(prefix), max(hom.atoms, default=-1)) + 1
    pin = 1 if hom.value else 0
    for sigma in itertools.product((0, 1), repeat=width):
        if any(sigma[a] != pin for a in hom.atoms):
            continue
        if all(clause_satisfied(cl, sigma) for cl in prefix):
            return True
    return False


# -- propositional formulas -------------------------------------------------------

# formulas are nested tuples: ("atom", i), ("not", f), ("and", f, g),
# ("or", f, g), ("imp", f, g)

Formula = tuple


def atom(i: int) -> Formula:
    return ("atom", i)


def neg(f: Formula) -> Formula:
    return ("not", f)


def conj(f: Formula, g: Formula) -> Formula:
    return ("and", f, g)


def disj(f: Formula, g: Formula) -> Formula:
    return ("or", f, g)


def imp(f: Formula, g: Formula) -> Formula:
    return ("imp", f, g)


def formula_atoms(f: Formula) -> set[int]:
    if f[0] == "atom":
        return {f[1]}
    return set().union(*(formula_atoms(sub) for sub in f[1:]))


def eval_formula(f: Formula, sigma: Word) -> bool | None:
    """Evaluate under the word-assignment; None (undefined, hence not false)
    when the formula mentions an atom at or beyond the word's length."""
    if any(a >= len(sigma) for a in formula_atoms(f)):
        return None
    return _eval_total(f, sigma)


def _eval_total(f: Formula, sigma: Word) -> bool:
    op = f[0]
    if op == "atom":
        return bool(sigma[f[1]])
    if op == "not":
        return not _eval_total(f[1], sigma)
    if op == "and":
        return _eval_total(f[1], sigma) and _eval_total(f[2], sigma)
    if op == "or":
        return _eval_total(f[1], sigma) or _eval_total(f[2], sigma)
    if op == "imp":
        return (not _eval_total(f[1], sigma)) or _eval_total(f[2], sigma)
    raise InputError(f"unknown connective {op!r}")


def clause_to_formula(cl: Clause) -> Formula:
    if not cl:
        raise InputError("empty clause has no formula")
    f = atom(cl[0].atom) if cl[0].positive else neg(atom(cl[0].atom))
    for lit in cl[1:]:
        f = disj(f, atom(lit.atom) if lit.positive else neg(atom(lit.atom)))
    return f


def formulas_satisfiable(formulas: Sequence[Formula]) -> bool:
    """Brute force over all assignments wide enough to define every formula."""
    width = max((a for f in formulas for a in formula_atoms(f)), default=-1) + 1
    for sigma in itertools.product((0, 1), repeat=width):
        if all(_eval_total(f, sigma) for f in formulas):
            return True
    return False


def formulas_homogeneous(formulas: Sequence[Formula], hom: SatHomSet, n: int) -> bool:
    """Brute force: the first n formulas are satisfiable with every hom atom
    pinned to the hom value."""
    prefix = list(formulas)[:n]
    width = (
        max(
            max((a for f in prefix for a in formula_atoms(f)), default=-1),
            max(hom.atoms, default=-1),
        )
        + 1
    )
    pin = 1 if hom.value else 0
    for sigma in itertools.product((0, 1), repeat=width):
        if any(sigma[a] != pin for a in hom.atoms):
            continue
        if all(_eval_total(f, sigma) for f in prefix):
            return True
    return False


def formulas_to_tree(formulas: Sequence[Formula], horizon: int) -> FinTree:
    """Assignment words that falsify no formula listed before their length.

    Requires every prefix of the list (up to the horizon) satisfiable;
    raises with the least failing prefix length otherwise.
    """
    for n in range(min(horizon, len(formulas)) + 1):
        if not formulas_satisfiable(formulas[:n]):
            raise InputError(f"unsatisfiable prefix: first {n} formulas")
    level: list[Word] = [()]
    nodes: list[Word] = [()]
    for s in range(1, horizon + 1):
        nxt = []
        for w in level:
            for b in (0, 1):
                cand = w + (b,)
                if all(
                    eval_formula(formulas[i], cand) is not False
                    for i in range(min(s, len(formulas)))
                ):
                    nxt.append(cand)
        nodes.extend(nxt)
        level = nxt
    return FinTree(2, horizon, nodes)


# -- DIMACS CNF ------------------------------------------------------------------


def clauses_to_dimacs(clauses: Sequence[Clause]) -> str:
    """DIMACS CNF with 1-based atoms; records the 2-branching check in a comment."""
    width = _max_atom(clauses) + 1
    lines = [
        f"c two-branching {'true' if is_two_branching(clauses) else 'false'}",
        f"p cnf {width} {len(clauses)}",
    ]
    for cl in clauses:
        lits = " ".join(str(lit.atom + 1 if lit.positive else -(lit.atom + 1)) for lit in cl)
        lines.append(f"{lits} 0".strip())
    return "\n".join(lines) + "\n"


def clauses_from_dimacs(text: str) -> list[Clause]:
    clauses: list[Clause] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith(("c", "p", "%")):
            continue
        try:
            nums = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise InputError(f"bad DIMACS line {line!r}") from exc
        if not nums or nums[-1] != 0:
            raise InputError(f"DIMACS clause must end with 0: {line!r}")
        clauses.append(
            tuple(Literal(abs(v) - 1, v > 0) for v in nums[:-1])
        )
    return clauses


# -- prefix-notation formula lists -------------------------------------------------


def formula_to_text(f: Formula) -> str:
    op = f[0]
    if op == "atom":
        return f"a{f[1]}"
    if op == "not":
        return f"(not {formula_to_text(f[1])})"
    return f"({op} {formula_to_text(f[1])} {formula_to_text(f[2])})"


def formulas_to_text(formulas: Sequence[Formula]) -> str:
    return "\n".join(formula_to_text(f) for f in formulas) + "\n"


def _tokenize(text: str) -> list[str]:
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _parse_tokens(tokens: list[str], pos: int) -> tuple[Formula, int]:
    tok = tokens[pos]
    if tok == "(":
        op = tokens[pos + 1]
        if op == "not":
            inner, nxt = _parse_tokens(tokens, pos + 2)
            f: Formula = ("not", inner)
        elif op in ("and", "or", "imp"):
            left, mid = _parse_tokens(tokens, pos + 2)
            right, nxt = _parse_tokens(tokens, mid)
            f = (op, left, right)
        else:
            raise InputError(f"unknown connective {op!r}")
        if tokens[nxt] != ")":
            raise InputError("missing closing parenthesis")
        return f, nxt + 1
    if tok.startswith("a") and tok[1:].isdigit():
        return ("atom", int(tok[1:])), pos + 1
    raise InputError(f"bad token {tok!r}")


def formula_from_text(line: str) -> Formula:
    tokens = _tokenize(line)
    if not tokens:
        raise InputError("empty formula line")
    f, nxt = _parse_tokens(tokens, 0)
    if nxt != len(tokens):
        raise InputError(f"trailing tokens in {line!r}")
    return f


def formulas_from_text(text: str) -> list[Formula]:
    return [
        formula_from_text(line)
        for line in text.splitlines()
        if line.strip() and not line.lstrip().startswith("#")
    ]

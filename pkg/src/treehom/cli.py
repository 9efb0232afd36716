"""Batch front end: instance generation, reduction invocation with decode
tables, verification suites, and brute-force solvers.

Every command is deterministic given its inputs, seed, and budgets; repeated
runs write byte-identical artifacts.  Exit codes: 0 pass, 1 property
failure, 2 input error, 3 budget exhausted.  Reports carry exact fractions,
never floats.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import adversary as adv
from . import graphs as gr
from . import reductions as red
from . import sat
from . import trees as tr
from . import widgets as wd
from .errors import BudgetExceededError, InputError, TreehomError

EXIT_OK = 0
EXIT_PROPERTY = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _json_text(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


# -- gen -----------------------------------------------------------------------


def _random_clauses(seed: int, depth: int) -> list[sat.Clause]:
    tree = tr.random_tree(seed, 2, depth, thin=0.35)
    return sat.minimal_clauses(sat.tree_to_clauses(tree))


def _random_graph(seed: int, size: int) -> gr.Graph:
    rng = random.Random(seed)
    labels = {v: rng.randint(0, 1) for v in range(size)}
    edges = [
        (u, v)
        for u in range(size)
        for v in range(u + 1, size)
        if labels[u] != labels[v] and rng.random() < 0.4
    ]
    return gr.Graph(range(size), edges)


def _random_tournament(seed: int, size: int) -> red.Tournament:
    rng = random.Random(seed)
    rel = set()
    for x in range(size):
        for y in range(x + 1, size):
            rel.add((x, y) if rng.random() < 0.5 else (y, x))
    return red.Tournament(size, frozenset(rel))


def _random_schedule(seed: int, events: int) -> adv.AdversarySchedule:
    rng = random.Random(seed)
    out = []
    stage = 3
    for _ in range(events):
        stage += rng.randint(1, 3)
        x = rng.randint(1, stage - 2)
        y = rng.randint(x + 1, stage - 1)
        out.append((stage, x, y))
    return adv.AdversarySchedule(0, tuple(out))


FORMAT_FOR_KIND = {
    "tree": "json",
    "positive-measure-tree": "json",
    "clauses": "dimacs",
    "graph": "dot",
    "tournament": "json",
    "adversary": "json",
}


def _check_format(requested: str | None, actual: str) -> None:
    if requested and requested != actual:
        raise InputError(f"this artifact is emitted as {actual}, not {requested}")


def cmd_gen(args) -> int:
    kind = args.kind
    _check_format(args.format, FORMAT_FOR_KIND[kind])
    depth = args.horizon if args.horizon is not None else args.depth
    if kind == "tree":
        artifact = tr.tree_to_text(tr.random_tree(args.seed, 2, depth))
    elif kind == "positive-measure-tree":
        tree = tr.random_positive_measure_tree(args.seed, depth, args.c)
        density = tr.min_level_density(tree)
        if density.as_fraction() < Fraction(1, 1 << args.c):
            raise AssertionError("generator lost its density certificate")
        artifact = tr.tree_to_text(tree)
    elif kind == "clauses":
        artifact = sat.clauses_to_dimacs(_random_clauses(args.seed, depth))
    elif kind == "graph":
        artifact = gr.graph_to_dot(_random_graph(args.seed, max(depth, 2) * 2))
    elif kind == "tournament":
        t = _random_tournament(args.seed, max(depth, 2) * 2)
        artifact = _json_text({"n": t.n, "beats": sorted(map(list, t.relation))})
    elif kind == "adversary":
        artifact = _json_text(adv.schedule_to_dict(_random_schedule(args.seed, args.events)))
    else:
        raise InputError(f"unknown generator kind {kind!r}")
    _emit(artifact, args.out)
    return EXIT_OK


# -- reduce --------------------------------------------------------------------


def _parse_positions(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.split(",") if tok.strip() != "")
    except ValueError as exc:
        raise InputError(f"bad position list {text!r}") from exc


REDUCE_FORMAT = {
    "localize": "json",
    "kary2bin": "json",
    "pack": "json",
    "fixcolor": "json",
    "chaincode": "json",
    "tourney": "json",
    "tree2cnf": "dimacs",
    "cnf2tree": "json",
    "graph2tree": "json",
    "sat2graph": "dot",
}


def cmd_reduce(args) -> int:
    name = args.name
    if name in REDUCE_FORMAT:
        _check_format(args.format, REDUCE_FORMAT[name])
    decode: dict
    if name == "localize":
        tree = tr.tree_from_text(_read(args.input))
        xs = _parse_positions(args.positions) if args.positions else tuple(range(tree.horizon))
        image = red.localize_tree(tree, xs)
        artifact = tr.tree_to_text(image)
        decode = {"kind": "localize", "positions": list(xs)}
    elif name == "kary2bin":
        tree = tr.tree_from_text(_read(args.input))
        k = tree.alphabet
        padded = 1 << max(1, (k - 1).bit_length())
        if padded != k:
            tree = red.pad_alphabet(tree, padded)
        image = red.kary_to_binary(tree)
        decode = {
            "kind": "kary2bin",
            "bits": padded.bit_length() - 1,
            "padded_from": k,
            "alphabet": padded,
        }
        artifact = tr.tree_to_text(image)
    elif name == "pack":
        tree = tr.tree_from_text(_read(args.input))
        g = (lambda n: n) if args.order == "identity" else (lambda n: n // 2)
        image, useq = red.pack_redundant(tree, g)
        artifact = tr.tree_to_text(image)
        decode = {"kind": "pack", "order": args.order, "u": list(useq.u), "g": list(useq.g_table)}
    elif name == "fixcolor":
        tree = tr.tree_from_text(_read(args.input))
        image = red.fixed_color_tree(tree)
        artifact = tr.tree_to_text(image)
        decode = {"kind": "fixcolor", "enumeration": "length-lexicographic-binary"}
    elif name == "chaincode":
        tree = tr.tree_from_text(_read(args.input))
        image, bound = red.chain_code_tree(tree)
        artifact = tr.tree_to_text(image)
        decode = {"kind": "chaincode", "bound": list(bound), "source_alphabet": tree.alphabet}
    elif name == "tourney":
        tree = tr.tree_from_text(_read(args.input))
        t = red.tournament_from_tree(tree)
        artifact = _json_text({"n": t.n, "beats": sorted(map(list, t.relation))})
        decode = {
            "kind": "tourney",
            "stability_last_change": {
                str(k): v for k, v in red.stability_last_change(t).items()
            },
        }
    elif name == "tree2cnf":
        tree = tr.tree_from_text(_read(args.input))
        artifact = sat.clauses_to_dimacs(sat.tree_to_clauses(tree))
        decode = {"kind": "tree2cnf", "atom_positions": "atom i is tree position i"}
    elif name == "cnf2tree":
        clauses = sat.clauses_from_dimacs(_read(args.input))
        formulas = [sat.clause_to_formula(cl) for cl in clauses]
        tree = sat.formulas_to_tree(formulas, args.horizon)
        artifact = tr.tree_to_text(tree)
        decode = {"kind": "cnf2tree", "horizon": args.horizon}
    elif name == "graph2tree":
        graph, _labels = gr.graph_from_dot(_read(args.input))
        ct = gr.graph_to_coloring_tree(graph, args.colors)
        artifact = tr.tree_to_text(ct.tree)
        decode = {"kind": "graph2tree", "order": list(ct.order), "colors": ct.k}
    elif name == "sat2graph":
        clauses = sat.minimal_clauses(sat.clauses_from_dimacs(_read(args.input)))
        compiled = wd.compile_clauses(clauses)
        artifact = wd.compiled_to_dot(compiled)
        decode = {
            "kind": "sat2graph",
            "truth": list(compiled.truth),
            "literal_vertices": {
                f"{'+' if pos else '-'}a{a}": v
                for (a, pos), v in sorted(compiled.literal_vertex.items())
            },
            "table": wd.decode_table_to_dict(compiled),
        }
    else:
        raise InputError(f"unknown reduction {name!r}")
    _emit(artifact, args.out)
    decode_path = (args.out + ".decode.json") if args.out else None
    _emit(_json_text(decode), decode_path)
    return EXIT_OK


# -- verify --------------------------------------------------------------------


def _verify_widgets(args) -> tuple[bool, list[str]]:
    reports = wd.check_widget_lemmas(max_spine=5, mutations=True)
    lines = [f"{'pass' if r.passed else 'FAIL'} {r.name}" for r in reports if not r.passed]
    lines.append(f"widget lemma clauses checked: {len(reports)}")
    return all(r.passed for r in reports), lines


def _verify_reductions(args) -> tuple[bool, list[str]]:
    ok = True
    lines = []
    for seed in range(args.seed, args.seed + 5):
        tree = tr.random_tree(seed, 2, 5, thin=0.25)
        image = red.localize_tree(tree, (0, 2, 4))
        for hom0 in tr.enumerate_homogeneous(image, image.horizon, image.horizon):
            decoded = red.decode_localized(tree, (0, 2, 4), hom0)
            if not tr.tree_homogeneous_to_depth(tree, decoded, 5):
                ok = False
                lines.append(f"FAIL localize round trip seed {seed}: {hom0}")
        packed, useq = red.pack_redundant(tree, lambda n: n // 2)
        for tau in tr.paths_at_horizon(tree):
            h = tr.PartialHom.of(dict(enumerate(red.packed_expansion(tau, useq))))
            if red.decode_packed(h, packed, useq) != tau:
                ok = False
                lines.append(f"FAIL pack round trip seed {seed}")
    if not _round_trip_emitted_decode_table(args.seed):
        ok = False
        lines.append("FAIL emitted decode table round trip")
    lines.append("reduction round trips replayed (including one emitted decode table)")
    return ok, lines


def _round_trip_emitted_decode_table(seed: int) -> bool:
    """Emit a reduction to files exactly as cmd_reduce does, read both back,
    and drive the decoder from the file-level decode table alone."""
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        src = str(Path(tmp) / "t.json")
        out = str(Path(tmp) / "img.json")
        tree = tr.random_tree(seed + 77, 2, 5, thin=0.2)
        Path(src).write_text(tr.tree_to_text(tree))
        parser = build_parser()
        cmd_reduce(parser.parse_args(["reduce", "localize", src, "--positions", "0,2,4", "--out", out]))
        image = tr.tree_from_text(Path(out).read_text())
        table = json.loads(Path(out + ".decode.json").read_text())
        xs = tuple(table["positions"])
        for hom0 in tr.enumerate_homogeneous(image, image.horizon, image.horizon):
            decoded = red.decode_localized(tree, xs, hom0)
            cert = xs[image.horizon - 1] + 1 if image.horizon >= 1 else 0
            if not tr.tree_homogeneous_to_depth(tree, decoded, cert):
                return False
    return True


def _verify_adversarial(args) -> tuple[bool, list[str]]:
    ok = True
    lines = []
    for seed in range(args.seed, args.seed + 5):
        sched = _random_schedule(seed, 3)
        run = adv.priority_build([sched], 25)
        for edges in run.edges_by_stage:
            if gr.odd_cycle_exists(gr.Graph([], edges)):
                ok = False
                lines.append(f"FAIL priority build acyclicity seed {seed}")
        if run.actions and not adv.verify_defeated(run.graph, sched):
            ok = False
            lines.append(f"FAIL priority defeat seed {seed}")
    for seed in range(args.seed, args.seed + 3):
        base = 100 * (seed + 1)
        oracle = adv.OracleAdversary.of(
            0,
            [((0,), base), ((1,), base + 1), ((0,), base + 50), ((1,), base + 51)],
        )
        run = adv.measure_build([oracle], 6)
        if gr.odd_cycle_exists(run.graph) or not adv.replay_checks([oracle], run):
            ok = False
            lines.append(f"FAIL measure build replay seed {seed}")
        for report in run.reports:
            if report.type2_stage is not None and (
                report.defeated_measure is None
                or report.defeated_measure.as_fraction() <= Fraction(2, 5)
            ):
                ok = False
                lines.append(f"FAIL measure defeat threshold seed {seed}")
    lines.append("adversarial stage invariants and measure replays checked")
    return ok, lines


def _verify_claims(args) -> tuple[bool, list[str]]:
    c = args.c
    ok = True
    sizes = []
    for seed in range(args.seed, args.seed + args.budget):
        tree = tr.random_positive_measure_tree(seed, args.depth, c)
        bad = adv.bad_set(tree, c)
        sizes.append(len(bad))
        if len(bad) >= 2 * c:
            ok = False
    lines = [
        f"bad-set sizes over {len(sizes)} trees with density >= 1/{1 << c} "
        f"(horizon {args.depth}): max {max(sizes)}, bound {2 * c}"
    ]
    return ok, lines


def cmd_verify(args) -> int:
    suites = {
        "widgets": _verify_widgets,
        "reductions": _verify_reductions,
        "adversarial": _verify_adversarial,
        "claims": _verify_claims,
    }
    if args.suite not in suites:
        raise InputError(f"unknown suite {args.suite!r}")
    passed, lines = suites[args.suite](args)
    report = "\n".join(lines + [f"suite {args.suite}: {'pass' if passed else 'FAIL'}"]) + "\n"
    _emit(report, args.out)
    return EXIT_OK if passed else EXIT_PROPERTY


# -- solve ---------------------------------------------------------------------


def cmd_solve(args) -> int:
    if args.kind == "homogeneous":
        tree = tr.tree_from_text(_read(args.input))
        bound = args.bound if args.bound is not None else min(tree.horizon, 5)
        depth = args.depth if args.depth is not None else tree.horizon
        sols = tr.enumerate_homogeneous(tree, depth, bound, budget=args.budget)
        artifact = _json_text(
            [{"positions": list(h.positions), "color": h.color} for h in sols]
        )
    elif args.kind == "colorings":
        graph, _labels = gr.graph_from_dot(_read(args.input))
        colorings = wd.enumerate_colorings(graph, {}, budget=args.budget)
        artifact = _json_text(
            [[nu[v] for v in sorted(graph.vertices)] for nu in colorings]
        )
    else:
        raise InputError(f"unknown solve kind {args.kind!r}")
    _emit(artifact, args.out)
    return EXIT_OK


# -- argument wiring --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treehom",
        description="finite homogeneous-set workbench: generate, reduce, verify, solve",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a seeded instance")
    p.add_argument("kind", choices=["tree", "positive-measure-tree", "clauses", "graph", "tournament", "adversary"])
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--horizon", type=int, help="alias for --depth on tree artifacts")
    p.add_argument("--c", type=int, default=3)
    p.add_argument("--events", type=int, default=3)
    p.add_argument("--format", choices=["json", "dimacs", "dot"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("reduce", help="apply a reduction; also writes <out>.decode.json")
    p.add_argument(
        "name",
        choices=[
            "localize",
            "kary2bin",
            "pack",
            "fixcolor",
            "chaincode",
            "tourney",
            "tree2cnf",
            "cnf2tree",
            "graph2tree",
            "sat2graph",
        ],
    )
    p.add_argument("input")
    p.add_argument("--positions", help="comma-separated localization positions")
    p.add_argument("--order", choices=["identity", "half"], default="half")
    p.add_argument("--horizon", type=int, default=4)
    p.add_argument("--colors", type=int, default=3)
    p.add_argument("--format", choices=["json", "dimacs", "dot"])
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("verify", help="run a property suite; exit 1 on failure")
    p.add_argument("suite", choices=["widgets", "reductions", "adversarial", "claims"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c", type=int, default=3)
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--budget", type=int, default=25)
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="brute-force all solutions of an instance")
    p.add_argument("kind", choices=["homogeneous", "colorings"])
    p.add_argument("input")
    p.add_argument("--depth", type=int)
    p.add_argument("--bound", type=int)
    p.add_argument("--budget", type=int, default=1 << 16)
    p.add_argument("--out")
    p.set_defaults(func=cmd_solve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceededError as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TreehomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROPERTY


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands:

    enumerate   list (or count) the invariant tuples of one order
    classify    decide dependent/independent for a single tuple
    build       build an evaluation graph and write the graph file
    stats       sweep (nu_max, D, algorithm) combinations into a CSV
    eval        evaluate a graph file on a particle configuration
    verify      run the built-in verification suites

Exit codes: 0 success, 1 runtime or I/O failure, 2 usage error.  All output
is deterministic for fixed arguments (and fixed --seed where randomness is
involved).
"""

from __future__ import annotations

import argparse
import csv
import math
import random
import sys
from contextlib import nullcontext

from acedag.dependency import class_counts, invariant_splits, is_dependent
from acedag.evaluator import (
    evaluate_graph,
    evaluate_model,
    invariance_check,
    naive_eval,
    pool,
    random_particles,
    read_coefficients,
    read_particles,
    rotate_particles,
)
from acedag.graphbuild import build_graph, graph_stats, read_graph, write_graph
from acedag.indexsets import (
    DegreeSpec,
    Group,
    enumerate_tuples,
    format_elements,
    parse_elements,
    tuple_degree,
)
from acedag.partitions import count_partitions

CSV_COLUMNS = [
    "group", "p", "numax", "D", "alg", "n",
    "num_targets", "num_dependent", "num_independent", "num_aux", "num_total",
    "ratio_dep", "ratio_aux",
]


def _parse_p(text: str) -> float:
    return math.inf if text == "inf" else int(text)


def _format_p(p: float) -> str:
    return "inf" if p == math.inf else str(int(p))


def _format_d(d: float) -> str:
    df = float(d)
    return str(int(df)) if df.is_integer() else repr(df)


def _out_stream(path):
    if path in (None, "-"):
        return nullcontext(sys.stdout)
    return open(path, "w", encoding="utf-8", newline="\n")


def _add_group(p, required=True):
    p.add_argument("--group", choices=[g.value for g in Group], required=required)


def _add_degree(p, required=True):
    p.add_argument("--p", choices=["1", "2", "inf"], default="1")
    p.add_argument("--D", type=float, required=required)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="acedag", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list invariant tuples of one order")
    _add_group(p)
    _add_degree(p)
    p.add_argument("--nu", type=int, required=True, help="tuple order")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--out", default=None)

    p = sub.add_parser("classify", help="classify one tuple as dependent/independent")
    _add_group(p)
    p.add_argument("--tuple", required=True, dest="tuple_text",
                   help="comma-separated components, e.g. -1,0,1")
    p.add_argument("--show-splits", action="store_true")

    p = sub.add_parser("build", help="build an evaluation graph file")
    _add_group(p)
    _add_degree(p)
    p.add_argument("--numax", type=int, required=True)
    p.add_argument("--alg", choices=["orig", "gen"], default="orig")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--out", required=True)

    p = sub.add_parser("stats", help="CSV sweep of graph statistics over D")
    _add_group(p)
    p.add_argument("--p", choices=["1", "2", "inf"], default="1")
    p.add_argument("--numax", required=True,
                   help="maximum order, or comma-separated list (e.g. 3,4,5)")
    p.add_argument("--Dmin", type=float, default=None)
    p.add_argument("--Dmax", type=float, required=True)
    p.add_argument("--alg", choices=["orig", "gen", "both"], default="orig")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--out", default=None)

    p = sub.add_parser("eval", help="evaluate a graph on a particle configuration")
    p.add_argument("--graph", required=True)
    p.add_argument("--config", required=True)
    p.add_argument("--coeffs", default=None)
    p.add_argument("--real-part", action="store_true")
    p.add_argument("--out", default=None)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("--suite", choices=["t-exact-count", "oracle", "invariance", "all"],
                   required=True)
    _add_group(p, required=False)
    p.add_argument("--p", choices=["1", "2", "inf"], default="1")
    p.add_argument("--D", type=float, default=8)
    p.add_argument("--Dmax", type=float, default=20)
    p.add_argument("--numax", type=int, default=4)
    p.add_argument("--alg", choices=["orig", "gen"], default="orig")
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--configs", type=int, default=10)
    p.add_argument("--trials", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    return ap


# --------------------------------------------------------------------------
# Subcommands


def cmd_enumerate(args) -> int:
    spec = DegreeSpec(_parse_p(args.p), args.D)
    tuples = enumerate_tuples(Group(args.group), args.nu, spec)
    with _out_stream(args.out) as out:
        if args.count_only:
            out.write(f"{len(tuples)}\n")
        else:
            for t in tuples:
                out.write(format_elements(t) + "\n")
    return 0


def cmd_classify(args) -> int:
    group = Group(args.group)
    elements = parse_elements(group, args.tuple_text)
    label = "dependent" if is_dependent(elements, group) else "independent"
    print(label)
    if args.show_splits:
        for left, right in invariant_splits(elements, group):
            print(f"{format_elements(left)} | {format_elements(right)}")
    return 0


def cmd_build(args) -> int:
    spec = DegreeSpec(_parse_p(args.p), args.D)
    graph = build_graph(Group(args.group), spec, args.numax, args.alg, args.n)
    write_graph(graph, args.out)
    return 0


def cmd_stats(args) -> int:
    group = Group(args.group)
    p = _parse_p(args.p)
    numax_list = [int(tok) for tok in str(args.numax).split(",")]
    dmin = int(args.Dmin) if args.Dmin is not None else 1
    dmax = int(args.Dmax)
    algs = ["orig", "gen"] if args.alg == "both" else [args.alg]
    rows = []
    for numax in numax_list:
        for d in range(dmin, dmax + 1):
            for alg in algs:
                n = args.n if alg == "gen" else 1
                st = graph_stats(build_graph(group, DegreeSpec(p, d), numax, alg, n))
                rows.append({
                    "group": group.value,
                    "p": _format_p(p),
                    "numax": numax,
                    "D": d,
                    "alg": alg,
                    "n": n,
                    "num_targets": st.num_targets,
                    "num_dependent": st.num_dependent,
                    "num_independent": st.num_independent,
                    "num_aux": st.num_aux,
                    "num_total": st.num_total,
                    "ratio_dep": st.ratio_dep,
                    "ratio_aux": st.ratio_aux,
                })
    rows.sort(key=lambda r: (r["numax"], r["D"], r["alg"]))
    with _out_stream(args.out) as out:
        writer = csv.DictWriter(out, CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return 0


def cmd_eval(args) -> int:
    graph = read_graph(args.graph)
    group, particles = read_particles(args.config)
    if group is not graph.group:
        raise ValueError(
            f"configuration group {group.value} does not match graph group {graph.group.value}"
        )
    with _out_stream(args.out) as out:
        if args.coeffs is not None:
            coeffs = read_coefficients(args.coeffs, group)
            value = evaluate_model(graph, coeffs, particles, real_part=args.real_part)
            if args.real_part:
                out.write(f"{value!r}\n")
            else:
                out.write(f"{value.real!r} {value.imag!r}\n")
        else:
            values = evaluate_graph(graph, pool(group, graph.spec, particles))
            for node in graph.nodes:
                v = values[node.id]
                out.write(
                    f"{node.id} {int(node.auxiliary)} {format_elements(node.elements)} "
                    f"{v.real!r} {v.imag!r}\n"
                )
    return 0


# --------------------------------------------------------------------------
# Verification suites


def _suite_t_exact_count(args):
    """Auxiliary count of the original heuristic on the torus vs closed form."""
    checked = 0
    for numax in range(3, max(3, args.numax) + 1):
        for d in range(4, int(args.Dmax) + 1):
            graph = build_graph(Group.T, DegreeSpec(1, d), numax, "orig")
            expected = 2 * sum(
                count_partitions(k, m)
                for k in range(2, numax)
                for m in range(1, d // 2 + 1)
            )
            got = sum(node.auxiliary for node in graph.nodes)
            if got != expected:
                return False, f"numax={numax} D={d}: aux={got}, expected {expected}"
            checked += 1
    return True, f"{checked} builds match the partition formula"


def _suite_oracle(args):
    """Graph evaluation against the direct-product oracle on random configs."""
    group = Group(args.group) if args.group else Group.T
    spec = DegreeSpec(_parse_p(args.p), args.D)
    rng = random.Random(args.seed)
    worst = 0.0
    for alg, n in (("orig", 1), ("gen", 2)):
        graph = build_graph(group, spec, args.numax, alg, n)
        for _ in range(args.configs):
            particles = random_particles(group, rng)
            pooled = pool(group, spec, particles)
            values = evaluate_graph(graph, pooled)
            for node in graph.nodes:
                ref = naive_eval(node.elements, pooled)
                dev = abs(values[node.id] - ref) / (1.0 + abs(ref))
                if dev > worst:
                    worst = dev
    ok = worst <= 1e-12
    return ok, f"group={group.value} worst deviation {worst:.3e} (tolerance 1e-12)"


def _suite_invariance(args):
    """Rotation (and inversion) invariance of target nodes, with a negative control."""
    group = Group(args.group) if args.group else Group.T
    spec = DegreeSpec(_parse_p(args.p), args.D)
    graph = build_graph(group, spec, args.numax, args.alg, args.n)
    rng = random.Random(args.seed)
    worst = 0.0
    for _ in range(args.configs):
        particles = random_particles(group, rng)
        report = invariance_check(group, graph, particles, trials=args.trials,
                                  seed=rng.randrange(2 ** 32))
        worst = max(worst, report.rotation_max_dev, report.inversion_max_dev or 0.0)
    # Negative control: a non-invariant pair picks up the phase e^(2 i alpha).
    control = {
        Group.T: ((1,), (1,)),
        Group.SO2: ((0, 1), (0, 1)),
        Group.O3: ((0, 1, 1), (0, 1, 1)),
        Group.O3F: ((0, 1, 1, 0), (0, 1, 1, 0)),
    }[group]
    particles = [rotate_particles(group, [_reference_particle(group)], 0.4 * j)[0]
                 for j in range(3)]
    before = naive_eval(control, pool(group, spec, particles))
    after = naive_eval(control, pool(group, spec,
                                     rotate_particles(group, particles, math.pi / 2)))
    control_dev = abs(after - before) / (1.0 + abs(before))
    ok = worst <= 1e-10 and control_dev > 1e-2
    return ok, (
        f"group={group.value} worst invariant deviation {worst:.3e} (tolerance 1e-10), "
        f"negative control {control_dev:.3e} (must exceed 1e-2)"
    )


def _reference_particle(group: Group):
    return {
        Group.T: (0.0,),
        Group.SO2: (0.9, 0.0),
        Group.O3: (0.9, 1.0, 0.0),
        Group.O3F: (0.9, 1.0, 0.0, 0.5),
    }[group]


_SUITES = {
    "t-exact-count": _suite_t_exact_count,
    "oracle": _suite_oracle,
    "invariance": _suite_invariance,
}


def cmd_verify(args) -> int:
    names = list(_SUITES) if args.suite == "all" else [args.suite]
    failed = False
    for name in names:
        ok, detail = _SUITES[name](args)
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
        if not ok:
            failed = True
    return 1 if failed else 0


_COMMANDS = {
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "build": cmd_build,
    "stats": cmd_stats,
    "eval": cmd_eval,
    "verify": cmd_verify,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

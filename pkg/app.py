"""ncsp: non-crossing shortest paths on the union of shortest paths of a plane graph.

    python app.py solve fixtures/fig1.pg --json
    python app.py gen grid --rows 6 --cols 6 --pairs 3 --seed 1 -o grid.pg
    python app.py verify --seeds 500
"""
import argparse
import logging
import sys
from pathlib import Path

import pgio
from config import DEFAULT_BENCH_SIZES, DEFAULT_SEED, MAX_GEN_WEIGHT, check_level
from modules import pipeline
from modules.instance import to_dot, to_text
from modules.plane_graph import NcspError
from utils import dump_json, parse_sizes, setup_logging

logger = logging.getLogger("ncsp")


# --- Subcommands ---

def cmd_solve(args) -> int:
    pg = pgio.read(args.file)
    result = pipeline.solve(pg.data, pg.pairs, args.istar_rank)
    listing = None
    if args.list is not None:
        listing = pipeline.describe_darts(pg.data, pipeline.list_pair(result, args.list))

    if args.json:
        document = result.report.to_json()
        if listing is not None:
            document["list"] = {"i": args.list, "darts": [{"u": u, "v": v, "edge": e} for u, v, e in listing]}
        print(dump_json(document))
    else:
        for entry in result.report.pairs:
            print(f"pair {entry.i}: {entry.s} -> {entry.t}  dist {entry.dist}")
        if listing is not None:
            print(f"path {args.list}:")
            for u, v, e in listing:
                print(f"  {u} -> {v}  (edge {e})")
    logger.info("solved %d pairs, %d darts visited", len(result.report.pairs), result.stats.darts_visited)
    return 0


def cmd_gen(args) -> int:
    from modules import testkit

    if args.kind == "ladder":
        instance = testkit.gen_ladder(args.pairs + 1, args.seed)
    elif args.kind == "caterpillar":
        instance = testkit.gen_caterpillar(args.pairs)
    else:
        if args.kind == "grid":
            graph, pairs = testkit.gen_grid(args.rows, args.cols, args.pairs, args.seed, args.max_weight)
        elif args.kind == "tri":
            graph, pairs = testkit.gen_random_triangulation(args.n, args.pairs, args.seed)
        else:
            graph, pairs = testkit.gen_fig1()
        instance = testkit.union_of_shortest_paths(graph, pairs, args.seed)
    graph, pairs = instance.graph, instance.pairs
    comment = (f"{args.kind} instance, seed {args.seed}\n"
               f"union of {len(pairs)} shortest paths: {len(instance.union.edges)} of {len(graph.edges)} edges\n"
               f"distances {' '.join(map(str, instance.distances))}")
    pgio.write(args.output, instance.union, instance.union_pairs, comment)
    print(f"wrote {args.output}")
    return 0


def _print_report(name: str, report) -> None:
    status = "ok" if report.passed else "FAIL"
    print(f"{name}: {status}")
    for failure in report.failures:
        print(f"  {failure}")


def cmd_verify(args) -> int:
    from modules import testkit

    if args.seeds is not None:
        reports = testkit.verify_seeds(args.seeds, args.first_seed, args.max_vertices)
        failed = [r for r in reports if not r.passed]
        for report in failed:
            _print_report(f"seed {report.seed}", report)
        print(f"{len(reports) - len(failed)}/{len(reports)} instances passed")
        return 0 if not failed else 1

    pg = pgio.read(args.file)
    report = testkit.verify_instance(pg.data, pg.pairs)
    _print_report(args.file, report)
    for name, ok in report.verdicts.items():
        print(f"  {name}: {'ok' if ok else 'FAIL'}")
    return 0 if report.passed else 1


def cmd_bench(args) -> int:
    from modules import bench

    df = bench.run_ladder(args.sizes, args.seed)
    print(df.to_string(index=False))
    exponent = bench.growth_exponent(df)
    if exponent is not None:
        print(f"growth exponent: {exponent:.2f}")
    ratios = bench.doubling_ratios(df)
    if len(ratios):
        print(f"time ratio per step: {', '.join(f'{r:.2f}' for r in ratios)}")
    if args.chart:
        bench.save_chart(df, args.chart)
        print(f"wrote {args.chart}")
    return 0


def cmd_render(args) -> int:
    from modules.render import render

    pg = pgio.read(args.file)
    result = pipeline.solve(pg.data, pg.pairs)
    paths = {entry.i: pipeline.list_pair(result, entry.i) for entry in result.report.pairs}
    Path(args.output).write_text(render(pg.data, paths, args.size))
    print(f"wrote {args.output}")
    return 0


def cmd_validate(args) -> int:
    pg = pgio.read(args.file)
    for number, component in enumerate(pipeline.split_components(pg.data, pg.pairs)):
        tree, tp = pipeline.prepare(component.graph, component.pairs, args.istar_rank)
        if args.dot:
            print(to_dot(tree, tp))
            continue
        print(f"component {number}: {component.graph.edge_count} edges, pairs {list(component.pair_ids)}")
        print(to_text(tree, tp))
    return 0


COMMAND_MAP = {
    "solve": cmd_solve,
    "gen": cmd_gen,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "render": cmd_render,
    "validate": cmd_validate,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ncsp", description="Non-crossing shortest paths in plane graphs.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log at DEBUG level")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="report all terminal-pair distances")
    p.add_argument("file")
    p.add_argument("--list", type=int, metavar="I", help="also list the path of pair I")
    p.add_argument("--json", action="store_true")
    p.add_argument("--istar-rank", type=int, default=0, help="use the R-th qualifying root pair")

    p = sub.add_parser("gen", help="generate an instance and write the union of its shortest paths")
    p.add_argument("kind", choices=("grid", "tri", "fig1", "ladder", "caterpillar"))
    p.add_argument("--rows", type=int, default=8)
    p.add_argument("--cols", type=int, default=8)
    p.add_argument("--n", type=int, default=200)
    p.add_argument("--pairs", type=int, default=3)
    p.add_argument("--max-weight", type=int, default=MAX_GEN_WEIGHT, help="grid weights are drawn from 1..W")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("verify", help="check solver output against the oracles")
    target = p.add_mutually_exclusive_group(required=True)
    target.add_argument("file", nargs="?")
    target.add_argument("--seeds", type=int, metavar="N")
    p.add_argument("--first-seed", type=int, default=0)
    p.add_argument("--max-vertices", type=int, default=400)

    p = sub.add_parser("bench", help="time the solver over a ladder of sizes")
    p.add_argument("--sizes", type=parse_sizes, default=list(DEFAULT_BENCH_SIZES))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--chart", metavar="HTML")

    p = sub.add_parser("render", help="draw the union and the paths as SVG")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--size", type=int, default=800)

    p = sub.add_parser("validate", help="check the instance and print its genealogy tree")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true")
    p.add_argument("--istar-rank", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging(args.verbose)
    logger.debug("check level %s", check_level())
    try:
        return COMMAND_MAP[args.command](args)
    except NcspError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

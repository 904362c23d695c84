"""
Command-line front end: ``carousel-width <command> [options]``.

Every run is determined by its arguments (including ``--seed``); artifacts go
to ``--output`` or ``$CAROUSEL_WIDTH_OUTPUT_DIR``. Exit codes: 0 success,
1 verification failure, 2 usage error.
"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from .carousel import (
    CarouselFlavor,
    CarouselSpec,
    PolicyMode,
    build,
    default_kinds,
    require_valid,
)
from .certify import (
    RankWitness,
    SamplingMode,
    min_order,
    sampled_certificate,
    witness_problem,
)
from .config import Caps, default_log_level, default_output_dir
from .decomposition import certify_lower_bound, rankwidth_exact
from .errors import CarouselWidthError, ConfigurationError, WitnessError
from .families import (
    RingPartition,
    build_ring,
    build_split_dilworth2,
    dilworth_number,
    is_even_hole_free,
    is_split,
    ring_violations,
)
from .formats import GraphFormat, export_graph, import_graph
from .graph import Bipartition, Graph, partition_rank
from .triples import parse_kind

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

SUFFIXES = {GraphFormat.GRAPH6: ".g6", GraphFormat.DIMACS: ".dimacs", GraphFormat.DOT: ".dot"}


def parse_vertices(text: str) -> List[int]:
    """``"1,2,5-7"`` -> ``[1, 2, 5, 6, 7]``."""
    vertices: List[int] = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            if "-" in item:
                low, high = item.split("-", 1)
                vertices.extend(range(int(low), int(high) + 1))
            else:
                vertices.append(int(item))
        except ValueError:
            raise ConfigurationError(f"bad vertex list item {item!r}") from None
    return vertices


def _add_graph_source(parser: argparse.ArgumentParser) -> None:
    source = parser.add_mutually_exclusive_group()
    source.add_argument("--graph6", help="graph given inline in graph6")
    source.add_argument("--graph-file", type=Path, help="graph file (.g6 or .dimacs)")
    source.add_argument("--spec", type=Path, help="carousel spec file")


def _load_graph(args: argparse.Namespace) -> Graph:
    if getattr(args, "graph6", None):
        return import_graph(args.graph6.encode("ascii"), GraphFormat.GRAPH6, "inline")
    if getattr(args, "graph_file", None):
        path: Path = args.graph_file
        fmt = GraphFormat.DIMACS if path.suffix in (".dimacs", ".col") else GraphFormat.GRAPH6
        return import_graph(path.read_bytes(), fmt, path.name)
    if getattr(args, "spec", None):
        return build(CarouselSpec.from_text(args.spec.read_text()))
    raise ConfigurationError("one of --graph6, --graph-file or --spec is required")


def _write(path: Path, data: bytes) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(data)
    logger.info(f"wrote {path}")
    return path


def cmd_build(args: argparse.Namespace, caps: Caps) -> int:
    flavor = CarouselFlavor(args.flavor)
    q: Optional[int] = None
    if args.s is not None:
        s = args.s
    else:
        q, s = min_order(args.n, args.r, flavor)
    kinds = (
        tuple(parse_kind(name) for name in args.kinds.split(","))
        if args.kinds
        else default_kinds(args.n, flavor)
    )
    spec = CarouselSpec(
        n=args.n,
        s=s,
        flavor=flavor,
        kinds=kinds,
        intra_set=PolicyMode(args.intra_set),
        long_range=PolicyMode(args.long_range),
        seed=args.seed,
        density=args.density,
    )
    require_valid(spec)
    path = _write(
        args.output / f"carousel-n{spec.n}-s{spec.s}-{flavor.value}.spec",
        spec.to_text().encode("ascii"),
    )
    print(f"spec {path}")
    if q is not None:
        print(f"q {q}")
    print(f"s {spec.s}")
    print(f"k {spec.k}")
    print(f"vertices {spec.vertex_count}")
    return EXIT_OK


def cmd_rank(args: argparse.Namespace, caps: Caps) -> int:
    graph = _load_graph(args)
    partition = Bipartition.from_y(graph, parse_vertices(args.y))
    print(partition_rank(graph, partition))
    return EXIT_OK


def cmd_rankwidth(args: argparse.Namespace, caps: Caps) -> int:
    graph = _load_graph(args)
    value, tree = rankwidth_exact(graph, caps, threads=args.threads)
    print(value)
    if args.tree and tree is not None:
        _write(args.output / args.tree, tree.to_text().encode("ascii"))
    return EXIT_OK


def cmd_certify_exhaustive(args: argparse.Namespace, caps: Caps) -> int:
    graph = _load_graph(args)
    report = certify_lower_bound(graph, args.r_max, caps)
    print(f"min_balanced_rank {report.min_balanced_rank}")
    print(f"exact {str(report.exact).lower()}")
    print(f"partitions_examined {report.partitions_examined}")
    print("y " + ",".join(str(v) for v in sorted(report.witness_partition.y)))
    return EXIT_OK


def cmd_certify_sample(args: argparse.Namespace, caps: Caps) -> int:
    if args.spec is None:
        raise ConfigurationError("certify sample needs --spec")
    graph = build(CarouselSpec.from_text(args.spec.read_text()))
    report = sampled_certificate(
        graph,
        args.r,
        args.trials,
        args.seed,
        threads=args.threads,
        sampling=SamplingMode(args.sampling),
        caps=caps,
    )
    stem = f"sample-r{args.r}-seed{args.seed}"
    _write(args.output / f"{stem}.txt", report.to_text().encode("ascii"))
    for trial in report.trials:
        witness = trial.certification.witness
        if witness is not None:
            _write(
                args.output / f"{stem}-trial{trial.index}.witness",
                witness.to_text().encode("ascii"),
            )
    print(f"certified {report.certified_count}/{len(report.trials)}")
    return EXIT_OK


def cmd_verify_witness(args: argparse.Namespace, caps: Caps) -> int:
    graph = _load_graph(args)
    witness = RankWitness.from_text(args.witness.read_text())
    partition = Bipartition.from_y(graph, parse_vertices(args.y)) if args.y else None
    problem = witness_problem(graph, witness, partition)
    if problem:
        print(f"invalid: {problem}")
        return EXIT_FAILED
    print(f"ok rank>={witness.claimed_rank_lb}")
    return EXIT_OK


def _report(lines: Dict[str, object]) -> str:
    return "".join(f"{key}: {value}\n" for key, value in lines.items())


def _flag(value: bool) -> str:
    return "true" if value else "false"


def cmd_family(args: argparse.Namespace, caps: Caps) -> int:
    fmt = GraphFormat(args.format)
    results: Dict[str, object] = {}
    if args.family == "split2":
        graph, clique, stable = build_split_dilworth2(args.s)
        stem = f"split2-s{args.s}"
        results["vertices"] = graph.vertex_count
        results["is_split"] = _flag(is_split(graph, clique, stable))
        results["dilworth_number"] = dilworth_number(graph, caps)
    else:
        graph, parts = build_ring(args.n, args.s)
        stem = f"ring-n{args.n}-s{args.s}"
        _write(args.output / f"{stem}.spec", graph.spec.to_text().encode("ascii"))
        violations = ring_violations(graph, parts)
        results["vertices"] = graph.vertex_count
        results["is_ring"] = _flag(not violations)
        for index, violation in enumerate(violations, start=1):
            results[f"violation_{index}"] = violation
        results["dilworth_number"] = dilworth_number(graph, caps)
        if graph.vertex_count <= caps.even_hole:
            results["even_hole_free"] = _flag(is_even_hole_free(graph, caps))
        else:
            results["even_hole_free"] = "skipped"
    _write(args.output / f"{stem}{SUFFIXES[fmt]}", export_graph(graph, fmt, caps))
    text = _report(results)
    _write(args.output / f"{stem}.report", text.encode("ascii"))
    sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args: argparse.Namespace, caps: Caps) -> int:
    graph = _load_graph(args)
    if args.property == "dilworth":
        print(dilworth_number(graph, caps))
        return EXIT_OK
    if args.property == "split":
        if args.clique is None:
            raise ConfigurationError("check split needs --clique")
        clique = set(parse_vertices(args.clique))
        stable = [v for v in graph.vertices() if v not in clique]
        holds = is_split(graph, clique, stable)
    elif args.property == "ring":
        if not args.parts:
            raise ConfigurationError("check ring needs --parts")
        parts = RingPartition(
            tuple(frozenset(parse_vertices(chunk)) for chunk in args.parts.split("|"))
        )
        violations = ring_violations(graph, parts)
        for violation in violations:
            print(violation)
        holds = not violations
    else:
        holds = is_even_hole_free(graph, caps)
    print(_flag(holds))
    return EXIT_OK if holds else EXIT_FAILED


def cmd_export(args: argparse.Namespace, caps: Caps) -> int:
    graph = _load_graph(args)
    fmt = GraphFormat(args.format)
    name = args.name or (args.spec.stem if args.spec else "graph")
    path = _write(args.output / f"{name}{SUFFIXES[fmt]}", export_graph(graph, fmt, caps))
    print(path)
    return EXIT_OK


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=1, help="worker threads (default: 1)")
    common.add_argument("--seed", type=int, default=0, help="64-bit seed (default: 0)")
    common.add_argument(
        "--caps", action="append", default=[], metavar="KEY=VALUE",
        help=f"override a size cap; keys: {', '.join(Caps.names())}",
    )
    common.add_argument(
        "--output", type=Path, default=None,
        help="artifact directory (default: $CAROUSEL_WIDTH_OUTPUT_DIR or .)",
    )
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    verbosity.add_argument("--quiet", "-q", action="store_true", help="warnings only")
    return common


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="carousel-width",
        description="Carousel graphs, cut ranks and rankwidth lower-bound certificates.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = [_common_options()]
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("build", parents=common, help="write a carousel spec file")
    p.add_argument("--n", type=int, required=True, help="number of sets (>= 3)")
    order = p.add_mutually_exclusive_group(required=True)
    order.add_argument("--r", type=int, help="target rankwidth; s is taken from min_order")
    order.add_argument("--s", type=int, help="order s directly")
    p.add_argument("--flavor", choices=[f.value for f in CarouselFlavor], default="even")
    p.add_argument("--kinds", help="comma list of n triple kinds (default: standard)")
    p.add_argument("--intra-set", choices=[m.value for m in PolicyMode], default="empty")
    p.add_argument(
        "--long-range", choices=[PolicyMode.EMPTY.value, PolicyMode.SEEDED_RANDOM.value],
        default="empty",
    )
    p.add_argument(
        "--density", type=Fraction, default=Fraction(1, 2),
        help="edge probability of seeded_random policies, e.g. 1/3 (default: 1/2)",
    )
    p.set_defaults(handler=cmd_build)

    p = commands.add_parser("rank", parents=common, help="cut rank of a partition")
    _add_graph_source(p)
    p.add_argument("--y", required=True, help="side Y, e.g. 1,2,5-7")
    p.set_defaults(handler=cmd_rank)

    p = commands.add_parser("rankwidth", parents=common, help="exact rankwidth of a small graph")
    _add_graph_source(p)
    p.add_argument("--tree", help="file name for the optimal decomposition")
    p.set_defaults(handler=cmd_rankwidth)

    p = commands.add_parser("certify", help="rankwidth lower-bound certificates")
    modes = p.add_subparsers(dest="mode", required=True)
    e = modes.add_parser("exhaustive", parents=common, help="minimum rank over balanced partitions")
    _add_graph_source(e)
    e.add_argument("--r-max", type=int, default=None, help="stop at a rank below this")
    e.set_defaults(handler=cmd_certify_exhaustive)
    m = modes.add_parser("sample", parents=common, help="witnesses for seeded balanced partitions")
    m.add_argument("--spec", type=Path, required=True, help="carousel spec file")
    m.add_argument("--r", type=int, required=True, help="rank threshold")
    m.add_argument("--trials", type=int, default=100)
    m.add_argument("--sampling", choices=[s.value for s in SamplingMode], default="uniform")
    m.set_defaults(handler=cmd_certify_sample)

    p = commands.add_parser(
        "verify-witness", aliases=["witness"], parents=common, help="re-check a witness"
    )
    _add_graph_source(p)
    p.add_argument("--witness", type=Path, required=True, help="witness file")
    p.add_argument("--y", help="also require rows and columns on opposite sides of Y")
    p.set_defaults(handler=cmd_verify_witness)

    p = commands.add_parser("family", help="build a family member and verify it")
    families = p.add_subparsers(dest="family", required=True)
    f = families.add_parser("split2", parents=common, help="split graph of Dilworth number 2")
    f.add_argument("--s", type=int, required=True)
    f.add_argument("--format", choices=[g.value for g in GraphFormat], default="graph6")
    f.set_defaults(handler=cmd_family)
    f = families.add_parser("ring", parents=common, help="ring on n sets")
    f.add_argument("--n", type=int, required=True)
    f.add_argument("--s", type=int, required=True)
    f.add_argument("--format", choices=[g.value for g in GraphFormat], default="graph6")
    f.set_defaults(handler=cmd_family)

    p = commands.add_parser("check", parents=common, help="verify a graph property")
    p.add_argument("property", choices=["split", "dilworth", "ring", "ehf"])
    _add_graph_source(p)
    p.add_argument("--clique", help="clique side for 'split'")
    p.add_argument("--parts", help="ring parts for 'ring', e.g. 1,2|3,4|5,6")
    p.set_defaults(handler=cmd_check)

    p = commands.add_parser("export", parents=common, help="write a graph as graph6, DIMACS or DOT")
    _add_graph_source(p)
    p.add_argument("--format", choices=[g.value for g in GraphFormat], default="graph6")
    p.add_argument("--name", help="output file stem")
    p.set_defaults(handler=cmd_export)
    return parser


def configure_logging(verbose: bool, quiet: bool) -> None:
    if verbose:
        level = logging.DEBUG
    elif quiet:
        level = logging.WARNING
    else:
        level = getattr(logging, default_log_level(), logging.INFO)
    logging.basicConfig(level=level, format="%(asctime)s - %(levelname)s - %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose, args.quiet)
    handler: Callable[[argparse.Namespace, Caps], int] = args.handler
    try:
        caps = Caps.from_env().with_overrides(args.caps)
        if args.threads < 1:
            raise ConfigurationError("--threads must be at least 1")
        args.output = args.output or default_output_dir()
        return handler(args, caps)
    except WitnessError as exc:
        logger.error(f"witness failed re-verification: {exc}")
        return EXIT_FAILED
    except (CarouselWidthError, OSError) as exc:
        logger.error(str(exc))
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

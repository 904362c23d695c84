"""
Graph file formats: graph6, DIMACS edge format and DOT.

Vertex ``v`` of a graph is node ``v - 1`` in graph6 and vertex ``v`` in DIMACS
and DOT.
"""

import enum
import logging
from typing import List, Optional, Tuple

import networkx as nx

from .config import Caps
from .errors import FormatError
from .graph import Graph, MaterializedGraph, Provenance, materialize

logger = logging.getLogger(__name__)

# graph6 can address up to 2^36 - 1 vertices
GRAPH6_MAX_VERTICES = (1 << 36) - 1


class GraphFormat(str, enum.Enum):
    GRAPH6 = "graph6"
    DIMACS = "dimacs"
    DOT = "dot"


def _parse_format(name: str) -> GraphFormat:
    if isinstance(name, GraphFormat):
        return name
    try:
        return GraphFormat(str(name).lower())
    except ValueError:
        raise FormatError(
            f"unknown graph format '{name}', expected one of "
            f"{[f.value for f in GraphFormat]}"
        ) from None


def export_graph(
    graph: Graph, fmt: str, caps: Optional[Caps] = None
) -> bytes:
    """Encode ``graph``. graph6 output has no header and no trailing newline."""
    fmt_enum = _parse_format(fmt)
    if fmt_enum is GraphFormat.GRAPH6 and graph.vertex_count > GRAPH6_MAX_VERTICES:
        raise FormatError(f"graph6 cannot encode {graph.vertex_count} vertices")
    explicit = materialize(graph, caps)
    if fmt_enum is GraphFormat.GRAPH6:
        return _to_graph6(explicit)
    if fmt_enum is GraphFormat.DIMACS:
        return _to_dimacs(explicit)
    return _to_dot(explicit)


def _to_graph6(graph: MaterializedGraph) -> bytes:
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(range(graph.vertex_count))
    nx_graph.add_edges_from((u - 1, v - 1) for u, v in graph.edges())
    return nx.to_graph6_bytes(nx_graph, header=False).rstrip(b"\n")


def _to_dimacs(graph: MaterializedGraph) -> bytes:
    lines = [
        f"c {graph.origin.kind} {graph.origin.detail}".rstrip(),
        f"p edge {graph.vertex_count} {graph.edge_count()}",
    ]
    lines.extend(f"e {u} {v}" for u, v in graph.edges())
    return ("\n".join(lines) + "\n").encode("ascii")


def _to_dot(graph: MaterializedGraph) -> bytes:
    lines = ["graph G {"]
    lines.extend(f"  {v};" for v in graph.vertices())
    lines.extend(f"  {u} -- {v};" for u, v in graph.edges())
    lines.append("}")
    return ("\n".join(lines) + "\n").encode("ascii")


def import_graph(data: bytes, fmt: str, detail: str = "") -> MaterializedGraph:
    """Decode graph6 or DIMACS bytes."""
    fmt_enum = _parse_format(fmt)
    origin = Provenance("file", detail or fmt_enum.value)
    if fmt_enum is GraphFormat.GRAPH6:
        text = data.strip()
        if text.startswith(b">>graph6<<"):
            text = text[len(b">>graph6<<"):]
        try:
            nx_graph = nx.from_graph6_bytes(text)
        except (nx.NetworkXError, ValueError, IndexError) as exc:
            raise FormatError(f"malformed graph6 data: {exc}") from None
        edges = [(u + 1, v + 1) for u, v in nx_graph.edges]
        return MaterializedGraph.from_edges(nx_graph.number_of_nodes(), edges, origin)
    if fmt_enum is GraphFormat.DIMACS:
        vertex_count, edges = _parse_dimacs(data.decode("ascii", errors="replace"))
        return MaterializedGraph.from_edges(vertex_count, edges, origin)
    raise FormatError("DOT is an export-only format")


def _parse_dimacs(text: str) -> Tuple[int, List[Tuple[int, int]]]:
    vertex_count: Optional[int] = None
    edges = []
    for number, line in enumerate(text.splitlines(), start=1):
        fields = line.split()
        if not fields or fields[0] == "c":
            continue
        try:
            if fields[0] == "p":
                vertex_count = int(fields[2])
            elif fields[0] == "e":
                edges.append((int(fields[1]), int(fields[2])))
            else:
                raise FormatError(f"line {number}: unknown DIMACS record '{fields[0]}'")
        except (IndexError, ValueError):
            raise FormatError(f"line {number}: malformed DIMACS line {line!r}") from None
    if vertex_count is None:
        raise FormatError("DIMACS data has no 'p edge' line")
    return vertex_count, edges

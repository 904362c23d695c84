"""
Graphs as adjacency oracles, cut matrices and partition ranks.

Vertices are the flat ids ``1..N``. Structured graphs (carousels) also expose
``VertexRef(i, j)`` with ``id = (i - 1) * k + j``.
"""

import logging
from dataclasses import dataclass
from typing import (
    Callable,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
)

import networkx as nx

from .config import Caps, resolve_caps
from .errors import InvalidPartitionError, ValidationError
from .gf2 import Gf2Matrix, rank_of_rows

logger = logging.getLogger(__name__)


class VertexRef(NamedTuple):
    """Position ``j`` inside set ``X_i`` (both 1-based)."""

    i: int
    j: int

    def to_id(self, k: int) -> int:
        return (self.i - 1) * k + self.j

    @classmethod
    def from_id(cls, vertex: int, k: int) -> "VertexRef":
        i, j = divmod(vertex - 1, k)
        return cls(i + 1, j + 1)


@dataclass(frozen=True)
class Provenance:
    """Where a graph came from: ``spec``, ``family``, ``file`` or ``literal``."""

    kind: str
    detail: str = ""


class Graph:
    """Symmetric, irreflexive adjacency over ``1..vertex_count``.

    Subclasses either evaluate a rule on demand (implicit graphs) or store
    one neighbour bitset per vertex (materialized graphs).
    """

    def __init__(self, vertex_count: int, origin: Provenance):
        if vertex_count < 0:
            raise ValidationError("vertex count must be non-negative")
        self.vertex_count = vertex_count
        self.origin = origin

    @property
    def is_materialized(self) -> bool:
        return False

    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.vertex_count:
            raise ValidationError(f"vertex {v} outside 1..{self.vertex_count}")

    def adjacent(self, u: int, v: int) -> bool:
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            return False
        return self._adjacent(u, v)

    def _adjacent(self, u: int, v: int) -> bool:
        raise NotImplementedError

    def neighbor_mask(self, v: int) -> int:
        """Neighbours of ``v`` as a bitset (bit ``u - 1`` for vertex ``u``)."""
        self.check_vertex(v)
        mask = 0
        for u in self.vertices():
            if u != v and self._adjacent(u, v):
                mask |= 1 << (u - 1)
        return mask

    def neighbors(self, v: int) -> List[int]:
        mask = self.neighbor_mask(v)
        return [u for u in self.vertices() if (mask >> (u - 1)) & 1]

    def __repr__(self) -> str:
        kind = "materialized" if self.is_materialized else "implicit"
        return f"<{type(self).__name__} {kind} N={self.vertex_count} {self.origin.kind}>"


class ImplicitGraph(Graph):
    """Adjacency given by a rule; nothing is stored per vertex."""

    def __init__(
        self,
        vertex_count: int,
        rule: Callable[[int, int], bool],
        origin: Provenance = Provenance("literal"),
    ):
        super().__init__(vertex_count, origin)
        self._rule = rule

    def _adjacent(self, u: int, v: int) -> bool:
        # symmetric closure of the rule
        return bool(self._rule(u, v) or self._rule(v, u))


class MaterializedGraph(Graph):
    """Explicit neighbour bitsets."""

    def __init__(
        self,
        vertex_count: int,
        masks: Sequence[int],
        origin: Provenance = Provenance("literal"),
    ):
        super().__init__(vertex_count, origin)
        if len(masks) != vertex_count:
            raise ValidationError("one neighbour mask per vertex is required")
        self._masks: Tuple[int, ...] = tuple(masks)
        for v, mask in enumerate(self._masks, start=1):
            if (mask >> (v - 1)) & 1:
                raise ValidationError(f"vertex {v} is adjacent to itself")
            if mask >> vertex_count:
                raise ValidationError(f"vertex {v} has neighbours out of range")
        for v, mask in enumerate(self._masks, start=1):
            u_bits = mask
            while u_bits:
                low = u_bits & -u_bits
                u = low.bit_length()
                if not (self._masks[u - 1] >> (v - 1)) & 1:
                    raise ValidationError(f"adjacency between {v} and {u} is not symmetric")
                u_bits ^= low

    @property
    def is_materialized(self) -> bool:
        return True

    @classmethod
    def from_edges(
        cls,
        vertex_count: int,
        edges: Iterable[Tuple[int, int]],
        origin: Provenance = Provenance("literal"),
    ) -> "MaterializedGraph":
        masks = [0] * vertex_count
        for u, v in edges:
            if not (1 <= u <= vertex_count and 1 <= v <= vertex_count):
                raise ValidationError(f"edge ({u}, {v}) outside 1..{vertex_count}")
            if u == v:
                raise ValidationError(f"self-loop at {u}")
            masks[u - 1] |= 1 << (v - 1)
            masks[v - 1] |= 1 << (u - 1)
        return cls(vertex_count, masks, origin)

    @classmethod
    def from_networkx(
        cls, graph: nx.Graph, origin: Provenance = Provenance("literal")
    ) -> "MaterializedGraph":
        """Nodes are numbered 1.. in the graph's node order."""
        index = {node: position for position, node in enumerate(graph.nodes, start=1)}
        edges = [(index[a], index[b]) for a, b in graph.edges if a != b]
        return cls.from_edges(len(index), edges, origin)

    def _adjacent(self, u: int, v: int) -> bool:
        return bool((self._masks[u - 1] >> (v - 1)) & 1)

    def neighbor_mask(self, v: int) -> int:
        self.check_vertex(v)
        return self._masks[v - 1]

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u in self.vertices():
            higher = self._masks[u - 1] >> u
            v = u + 1
            while higher:
                if higher & 1:
                    yield u, v
                higher >>= 1
                v += 1

    def edge_count(self) -> int:
        return sum(bin(mask).count("1") for mask in self._masks) // 2

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(self.vertices())
        graph.add_edges_from(self.edges())
        return graph


def materialize(graph: Graph, caps: Optional[Caps] = None) -> MaterializedGraph:
    """Explicit copy of ``graph``; bounded by the ``materialize`` cap."""
    if isinstance(graph, MaterializedGraph):
        return graph
    resolve_caps(caps).check("materialize", graph.vertex_count)
    logger.debug(f"materializing {graph!r}")
    masks = [graph.neighbor_mask(v) for v in graph.vertices()]
    return MaterializedGraph(graph.vertex_count, masks, graph.origin)


@dataclass(frozen=True)
class Bipartition:
    """A partition ``(Y, Z)`` of ``1..vertex_count``; Z is implied by Y."""

    y: FrozenSet[int]
    vertex_count: int

    @classmethod
    def from_sides(
        cls, graph: Graph, y: Iterable[int], z: Iterable[int]
    ) -> "Bipartition":
        y_set, z_set = frozenset(y), frozenset(z)
        if y_set & z_set:
            raise InvalidPartitionError(f"Y and Z overlap on {sorted(y_set & z_set)}")
        if len(y_set) + len(z_set) != graph.vertex_count:
            raise InvalidPartitionError("Y and Z do not cover every vertex")
        partition = cls(y_set, graph.vertex_count)
        partition.validate(graph)
        for v in z_set:
            graph.check_vertex(v)
        return partition

    @classmethod
    def from_y(cls, graph: Graph, y: Iterable[int]) -> "Bipartition":
        partition = cls(frozenset(y), graph.vertex_count)
        partition.validate(graph)
        return partition

    def validate(self, graph: Graph) -> None:
        if self.vertex_count != graph.vertex_count:
            raise InvalidPartitionError(
                f"partition is over {self.vertex_count} vertices, graph has "
                f"{graph.vertex_count}"
            )
        for v in self.y:
            if not 1 <= v <= self.vertex_count:
                raise InvalidPartitionError(f"vertex {v} out of range")

    @property
    def y_size(self) -> int:
        return len(self.y)

    @property
    def z_size(self) -> int:
        return self.vertex_count - len(self.y)

    def in_y(self, v: int) -> bool:
        return v in self.y

    @property
    def z(self) -> FrozenSet[int]:
        return frozenset(v for v in range(1, self.vertex_count + 1) if v not in self.y)

    def swapped(self) -> "Bipartition":
        return Bipartition(self.z, self.vertex_count)


def ordered_cut_matrix(
    graph: Graph, row_vertices: Sequence[int], col_vertices: Sequence[int]
) -> Gf2Matrix:
    """Adjacency between the two lists, in the given orders."""
    if set(row_vertices) & set(col_vertices):
        raise InvalidPartitionError("row and column vertices overlap")
    rows = []
    for y in row_vertices:
        graph.check_vertex(y)
        bits = 0
        for position, z in enumerate(col_vertices):
            if graph.adjacent(y, z):
                bits |= 1 << position
        rows.append(bits)
    for z in col_vertices:
        graph.check_vertex(z)
    return Gf2Matrix(len(row_vertices), len(col_vertices), tuple(rows))


def cut_matrix(graph: Graph, y: Iterable[int], z: Iterable[int]) -> Gf2Matrix:
    """``M_{G,Y,Z}`` with rows and columns in ascending id order."""
    return ordered_cut_matrix(graph, sorted(set(y)), sorted(set(z)))


def _masked_rank(graph: Graph, y: Iterable[int], z_mask: int) -> int:
    return rank_of_rows(graph.neighbor_mask(v) & z_mask for v in y)


def partition_rank(graph: Graph, partition: Bipartition) -> int:
    """``rk_G(Y, Z)``; symmetric in the two sides."""
    partition.validate(graph)
    if isinstance(graph, MaterializedGraph):
        # row bits are indexed by vertex id rather than column position
        y_mask = 0
        for v in partition.y:
            y_mask |= 1 << (v - 1)
        z_mask = ((1 << graph.vertex_count) - 1) & ~y_mask
        return _masked_rank(graph, partition.y, z_mask)
    return cut_matrix(graph, partition.y, partition.z).rank()


def is_balanced(graph: Graph, partition: Bipartition) -> bool:
    return balanced_sizes(graph.vertex_count, partition.y_size)


def balanced_sizes(vertex_count: int, y_size: int) -> bool:
    """``N/3 <= |Y|, |Z| <= 2N/3`` in integers."""
    z_size = vertex_count - y_size
    return all(
        3 * side >= vertex_count and 3 * side <= 2 * vertex_count
        for side in (y_size, z_size)
    )

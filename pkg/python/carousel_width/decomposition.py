"""
Tree decompositions, exact rankwidth and the exhaustive balanced-cut certificate.

A decomposition is a cubic tree whose leaves are the graph's vertices. Nodes
are ``0..node_count - 1``; ``leaf_map`` sends each leaf node to its vertex.
"""

import itertools
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .config import Caps, resolve_caps
from .errors import FormatError, InvalidDecompositionError, ValidationError
from .graph import (
    Bipartition,
    Graph,
    balanced_sizes,
    materialize,
    partition_rank,
)
from .gf2 import rank_of_rows

logger = logging.getLogger(__name__)

TreeEdge = Tuple[int, int]


def _norm(edge: Sequence[int]) -> TreeEdge:
    a, b = edge
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class TreeDecomposition:
    node_count: int
    edges: Tuple[TreeEdge, ...]
    leaf_map: Dict[int, int] = field(hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "edges", tuple(sorted(_norm(e) for e in self.edges)))
        self._check_shape()

    def _check_shape(self) -> None:
        if self.node_count < 2:
            raise InvalidDecompositionError("a decomposition tree needs at least 2 nodes")
        if len(self.edges) != self.node_count - 1:
            raise InvalidDecompositionError(
                f"{self.node_count} nodes need {self.node_count - 1} edges, "
                f"got {len(self.edges)}"
            )
        if len(set(self.edges)) != len(self.edges):
            raise InvalidDecompositionError("repeated tree edge")
        adjacency = self.adjacency()
        for a, b in self.edges:
            if a == b or not (0 <= a < self.node_count and 0 <= b < self.node_count):
                raise InvalidDecompositionError(f"bad tree edge ({a}, {b})")
        seen = {0}
        stack = [0]
        while stack:
            for w in adjacency[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != self.node_count:
            raise InvalidDecompositionError("decomposition tree is disconnected")
        for node, around in enumerate(adjacency):
            if len(around) not in (1, 3):
                raise InvalidDecompositionError(
                    f"node {node} has degree {len(around)}; internal nodes need 3"
                )
        leaves = {node for node, around in enumerate(adjacency) if len(around) == 1}
        if set(self.leaf_map) != leaves:
            raise InvalidDecompositionError("leaf_map must cover exactly the leaves")
        vertices = sorted(self.leaf_map.values())
        if vertices != list(range(1, len(leaves) + 1)):
            raise InvalidDecompositionError("leaf_map must be a bijection onto 1..N")

    def adjacency(self) -> List[List[int]]:
        around: List[List[int]] = [[] for _ in range(self.node_count)]
        for a, b in self.edges:
            around[a].append(b)
            around[b].append(a)
        return around

    @property
    def vertex_count(self) -> int:
        return len(self.leaf_map)

    def validate(self, graph: Graph) -> None:
        if self.vertex_count != graph.vertex_count:
            raise InvalidDecompositionError(
                f"tree has {self.vertex_count} leaves, graph has {graph.vertex_count} vertices"
            )

    def check_edge(self, edge: Sequence[int]) -> TreeEdge:
        normalized = _norm(edge)
        if normalized not in self.edges:
            raise InvalidDecompositionError(f"{tuple(edge)} is not an edge of the tree")
        return normalized

    def side(self, edge: Sequence[int]) -> FrozenSet[int]:
        """Vertices at leaves on the ``edge[0]`` side once ``edge`` is removed."""
        a, b = edge
        self.check_edge(edge)
        adjacency = self.adjacency()
        seen = {a, b}
        stack = [a]
        found = set()
        while stack:
            node = stack.pop()
            if node in self.leaf_map:
                found.add(self.leaf_map[node])
            for w in adjacency[node]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return frozenset(found)

    def to_text(self) -> str:
        """Parent array rooted at node 0, then one ``leaf <node> <vertex>`` line per leaf."""
        parents = [-1] * self.node_count
        adjacency = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            node = stack.pop()
            for w in adjacency[node]:
                if w not in seen:
                    seen.add(w)
                    parents[w] = node
                    stack.append(w)
        lines = [
            "# tree decomposition",
            f"nodes {self.node_count}",
            "parents " + " ".join(str(p) for p in parents),
        ]
        lines.extend(f"leaf {node} {self.leaf_map[node]}" for node in sorted(self.leaf_map))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TreeDecomposition":
        node_count: Optional[int] = None
        parents: Optional[List[int]] = None
        leaf_map: Dict[int, int] = {}
        try:
            for raw in text.splitlines():
                fields = raw.split()
                if not fields or fields[0].startswith("#"):
                    continue
                if fields[0] == "nodes":
                    node_count = int(fields[1])
                elif fields[0] == "parents":
                    parents = [int(p) for p in fields[1:]]
                elif fields[0] == "leaf":
                    leaf_map[int(fields[1])] = int(fields[2])
                else:
                    raise FormatError(f"unknown tree record '{fields[0]}'")
        except (IndexError, ValueError):
            raise FormatError("malformed tree decomposition text") from None
        if node_count is None or parents is None or len(parents) != node_count:
            raise FormatError("tree text needs 'nodes' and a full 'parents' line")
        edges = [(node, parent) for node, parent in enumerate(parents) if parent >= 0]
        return cls(node_count, tuple(edges), leaf_map)


def edge_width(graph: Graph, tree: TreeDecomposition, edge: Sequence[int]) -> int:
    tree.validate(graph)
    y = tree.side(edge)
    return partition_rank(graph, Bipartition(y, graph.vertex_count))


def width(graph: Graph, tree: TreeDecomposition) -> int:
    tree.validate(graph)
    return max(edge_width(graph, tree, edge) for edge in tree.edges)


def _leaf_counts(tree: TreeDecomposition) -> Tuple[List[int], List[int]]:
    """Parent of every node and leaf count below it, rooted at node 0."""
    adjacency = tree.adjacency()
    parents = [-1] * tree.node_count
    order = [0]
    seen = {0}
    for node in order:
        for w in adjacency[node]:
            if w not in seen:
                seen.add(w)
                parents[w] = node
                order.append(w)
    below = [0] * tree.node_count
    for node in reversed(order):
        if node in tree.leaf_map:
            below[node] += 1
        if parents[node] >= 0:
            below[parents[node]] += below[node]
    return parents, below


def balanced_edge(graph: Graph, tree: TreeDecomposition) -> TreeEdge:
    """An edge whose leaf partition is balanced.

    Unbalanced edges point to their heavy side (> 2N/3 leaves). Following them
    never revisits a node, and the walk ends at an edge that is balanced.
    """
    tree.validate(graph)
    total = tree.vertex_count
    if total < 2:
        raise ValidationError("balanced edges need at least 2 vertices")
    parents, below = _leaf_counts(tree)
    adjacency = tree.adjacency()

    def far_side(node: int, other: int) -> int:
        # leaves reached from ``node`` through ``other``
        if parents[other] == node:
            return below[other]
        return total - below[node]

    node = 0
    for _ in range(tree.node_count):
        step = None
        for other in adjacency[node]:
            far = far_side(node, other)
            if balanced_sizes(total, far):
                return _norm((node, other))
            if 3 * far > 2 * total:
                step = other
        if step is None:
            break
        node = step
    raise AssertionError(f"no balanced edge found; node {node} is an unbalanced sink")


def random_decomposition(vertex_count: int, rng: random.Random) -> TreeDecomposition:
    """A random cubic tree on ``vertex_count`` leaves, built by leaf insertion."""
    if vertex_count < 2:
        raise ValidationError("a decomposition tree needs at least 2 leaves")
    order = list(range(1, vertex_count + 1))
    rng.shuffle(order)
    if vertex_count == 2:
        return TreeDecomposition(2, ((0, 1),), {0: order[0], 1: order[1]})
    edges: List[TreeEdge] = [(0, 3), (1, 3), (2, 3)]
    leaf_map = {0: order[0], 1: order[1], 2: order[2]}
    next_node = 4
    for vertex in order[3:]:
        a, b = edges.pop(rng.randrange(len(edges)))
        middle, leaf = next_node, next_node + 1
        next_node += 2
        edges.extend([(a, middle), (middle, b), (middle, leaf)])
        leaf_map[leaf] = vertex
    return TreeDecomposition(next_node, tuple(edges), leaf_map)


class _Search:
    """Branch and bound over labelled cubic trees.

    Trees are grown by inserting vertices ``4..N`` into edges. Each edge is
    stored as the vertex set below it when the tree hangs from leaf ``1``.
    """

    def __init__(self, masks: Sequence[int], lower_bound: int):
        self.masks = masks
        self.n = len(masks)
        self.lower_bound = lower_bound
        self.ranks: Dict[Tuple[int, int], int] = {}

    def cut_rank(self, below: int, inserted: int) -> int:
        key = (below, inserted)
        cached = self.ranks.get(key)
        if cached is None:
            rest = inserted & ~below
            rows = []
            bits = below
            while bits:
                low = bits & -bits
                rows.append(self.masks[low.bit_length() - 1] & rest)
                bits ^= low
            cached = rank_of_rows(rows)
            self.ranks[key] = cached
        return cached

    def start(self) -> Tuple[List[TreeEdge], List[int]]:
        # leaf nodes 0..N-1 are vertices 1..N; internal nodes follow
        center = self.n
        return [(0, center), (center, 1), (center, 2)], [0b110, 0b010, 0b100]

    @staticmethod
    def insert(
        edges: List[TreeEdge], belows: List[int], index: int, vertex: int, node: int
    ) -> Tuple[List[TreeEdge], List[int]]:
        bit = 1 << (vertex - 1)
        target = belows[index]
        new_belows = [m | bit if m & target == target else m for m in belows]
        parent, child = edges[index]
        new_edges = list(edges)
        new_edges[index] = (parent, node)
        new_edges.extend([(node, child), (node, vertex - 1)])
        new_belows.extend([target, bit])
        return new_edges, new_belows

    def prefixes(self) -> List[Tuple[List[TreeEdge], List[int], int]]:
        edges, belows = self.start()
        if self.n == 3:
            return [(edges, belows, self.width(belows, 3))]
        result = []
        for index in range(len(edges)):
            grown = self.insert(edges, belows, index, 4, self.n + 1)
            result.append((grown[0], grown[1], self.width(grown[1], 4)))
        return result

    def width(self, belows: List[int], count: int) -> int:
        inserted = (1 << count) - 1
        return max(self.cut_rank(m, inserted) for m in belows)

    def run(
        self, edges: List[TreeEdge], belows: List[int], current: int
    ) -> Tuple[Optional[int], Optional[List[TreeEdge]]]:
        best: List[Optional[int]] = [None]
        best_edges: List[Optional[List[TreeEdge]]] = [None]
        first = 4 if self.n == 3 else 5

        def descend(edges: List[TreeEdge], belows: List[int], current: int, vertex: int) -> bool:
            if best[0] is not None and current >= best[0]:
                return False
            if vertex > self.n:
                best[0], best_edges[0] = current, edges
                return current <= self.lower_bound
            inserted = (1 << vertex) - 1
            node = self.n + vertex - 3
            for index in range(len(edges)):
                grown_edges, grown_belows = self.insert(edges, belows, index, vertex, node)
                grown_width = max(
                    current, max(self.cut_rank(m, inserted) for m in grown_belows)
                )
                if descend(grown_edges, grown_belows, grown_width, vertex + 1):
                    return True
            return False

        descend(edges, belows, current, first)
        return best[0], best_edges[0]


def rankwidth_exact(
    graph: Graph, caps: Optional[Caps] = None, threads: int = 1
) -> Tuple[int, Optional[TreeDecomposition]]:
    """Minimum width over all decompositions, with a tree attaining it.

    Graphs with at most one vertex have rankwidth 0 and no tree.
    """
    total = graph.vertex_count
    if total <= 1:
        return 0, None
    caps = resolve_caps(caps)
    caps.check("rankwidth_exact", total)
    explicit = materialize(graph, caps)
    masks = [explicit.neighbor_mask(v) for v in explicit.vertices()]
    leaf_map = {v - 1: v for v in explicit.vertices()}
    if total == 2:
        tree = TreeDecomposition(2, ((0, 1),), leaf_map)
        return (1 if masks[0] else 0), tree

    lower_bound = 1 if any(masks) else 0
    search = _Search(masks, lower_bound)
    prefixes = search.prefixes()
    logger.info(
        f"rankwidth search over {total} vertices in {len(prefixes)} independent prefixes"
    )
    jobs = [lambda p=p: search.run(*p) for p in prefixes]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(lambda job: job(), jobs))
    else:
        results = [job() for job in jobs]

    value, edges = min(
        ((found, tree_edges) for found, tree_edges in results if found is not None),
        key=lambda item: item[0],
    )
    tree = TreeDecomposition(2 * total - 2, tuple(edges), leaf_map)
    logger.debug(f"rankwidth {value} with {len(search.ranks)} cached cut ranks")
    return value, tree


@dataclass(frozen=True)
class CertificateReport:
    """Smallest rank among the balanced partitions examined.

    ``exact`` is false when the search stopped early at a rank below ``r_max``;
    the value is then an upper bound on the true minimum.
    """

    min_balanced_rank: int
    witness_partition: Bipartition
    partitions_examined: int
    exact: bool = True

    @property
    def lower_bound(self) -> int:
        return self.min_balanced_rank if self.exact else 0


def certify_lower_bound(
    graph: Graph, r_max: Optional[int] = None, caps: Optional[Caps] = None
) -> CertificateReport:
    """Minimum rank over balanced partitions; rankwidth is at least this value.

    Vertex 1 is pinned to Y so each partition is seen once.
    """
    total = graph.vertex_count
    if total < 2:
        raise ValidationError("certificates need at least 2 vertices")
    caps = resolve_caps(caps)
    caps.check("certificate", total)
    explicit = materialize(graph, caps)
    masks = [explicit.neighbor_mask(v) for v in explicit.vertices()]
    full = (1 << total) - 1

    best: Optional[int] = None
    best_y: FrozenSet[int] = frozenset()
    examined = 0
    exact = True
    others = list(range(2, total + 1))
    for size in range(1, total + 1):
        if not balanced_sizes(total, size):
            continue
        for rest in itertools.combinations(others, size - 1):
            y = (1,) + rest
            y_mask = 1
            for v in rest:
                y_mask |= 1 << (v - 1)
            z_mask = full & ~y_mask
            value = rank_of_rows(masks[v - 1] & z_mask for v in y)
            examined += 1
            if best is None or value < best:
                best, best_y = value, frozenset(y)
                if r_max is not None and value < r_max:
                    exact = value == 0
                    break
                if value == 0:
                    break
        else:
            continue
        break
    assert best is not None, "every graph with 2 or more vertices has a balanced partition"
    logger.info(
        f"certificate over {total} vertices: min balanced rank {best} "
        f"after {examined} partitions"
    )
    return CertificateReport(best, Bipartition(best_y, total), examined, exact)

"""
Carousel-based graph families and their independent verifiers.

Split graphs of Dilworth number 2 and rings on ``n`` sets are built as
carousels; the verifiers work on any materialized graph.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .carousel import (
    CarouselFlavor,
    CarouselGraph,
    CarouselSpec,
    PolicyMode,
)
from .config import Caps, resolve_caps
from .errors import InvalidPartitionError, ValidationError
from .graph import Graph, Provenance, VertexRef, materialize
from .triples import TripleKind

logger = logging.getLogger(__name__)


class SplitCarousel(CarouselGraph):
    """Even carousel on four sets with ``X_1 + X_3`` a clique and ``X_2 + X_4`` stable."""

    CLIQUE_SETS = (1, 3)

    def _unspecified_adjacent(self, a: VertexRef, b: VertexRef, u: int, v: int) -> bool:
        return a.i in self.CLIQUE_SETS and b.i in self.CLIQUE_SETS

    def _scan_sets(self, i: int) -> Sequence[int]:
        return range(1, self.n + 1)


def split_spec(s: int) -> CarouselSpec:
    return CarouselSpec(
        n=4,
        s=s,
        flavor=CarouselFlavor.EVEN,
        kinds=(TripleKind.REGULAR_CROSSING,) * 3 + (TripleKind.EXPANDING_CROSSING,),
        intra_set=PolicyMode.EMPTY,
        long_range=PolicyMode.EMPTY,
    )


def build_split_dilworth2(s: int) -> Tuple[CarouselGraph, FrozenSet[int], FrozenSet[int]]:
    """The split carousel with its clique side and its stable side."""
    if s < 1:
        raise ValidationError(f"s must be at least 1, got {s}")
    graph = SplitCarousel(split_spec(s), Provenance("family", f"split2 s={s}"))
    clique = frozenset(graph.set_ids(1)) | frozenset(graph.set_ids(3))
    stable = frozenset(graph.set_ids(2)) | frozenset(graph.set_ids(4))
    logger.debug(f"split carousel s={s}: {graph.vertex_count} vertices")
    return graph, clique, stable


@dataclass(frozen=True)
class RingPartition:
    """The cliques ``X_1..X_n`` in cyclic order."""

    parts: Tuple[FrozenSet[int], ...]

    def validate(self, graph: Graph) -> None:
        if len(self.parts) < 3:
            raise InvalidPartitionError(f"a ring needs at least 3 parts, got {len(self.parts)}")
        seen: set = set()
        for index, part in enumerate(self.parts, start=1):
            if seen & part:
                raise InvalidPartitionError(f"part {index} overlaps an earlier part")
            seen |= part
        if seen != set(graph.vertices()):
            raise InvalidPartitionError("ring parts do not cover every vertex exactly once")


def ring_spec(n: int, s: int) -> CarouselSpec:
    """Cliques joined by crossings only; the parity of ``n`` picks the flavor."""
    even = n % 2 == 0
    closing = TripleKind.EXPANDING_CROSSING if even else TripleKind.SKEW_EXPANDING_CROSSING
    return CarouselSpec(
        n=n,
        s=s,
        flavor=CarouselFlavor.EVEN if even else CarouselFlavor.ODD,
        kinds=(TripleKind.REGULAR_CROSSING,) * (n - 1) + (closing,),
        intra_set=PolicyMode.CLIQUE,
        long_range=PolicyMode.EMPTY,
    )


def build_ring(n: int, s: int) -> Tuple[CarouselGraph, RingPartition]:
    if n < 3 or s < 1:
        raise ValidationError(f"rings need n >= 3 and s >= 1, got n={n}, s={s}")
    graph = CarouselGraph(ring_spec(n, s), Provenance("family", f"ring n={n} s={s}"))
    partition = RingPartition(tuple(frozenset(graph.set_ids(i)) for i in range(1, n + 1)))
    return graph, partition


def _closed(masks: Sequence[int]) -> List[int]:
    return [mask | (1 << v) for v, mask in enumerate(masks)]


def is_split(graph: Graph, clique: Iterable[int], stable: Iterable[int]) -> bool:
    clique_set, stable_set = frozenset(clique), frozenset(stable)
    if clique_set & stable_set or clique_set | stable_set != set(graph.vertices()):
        raise InvalidPartitionError("clique and stable sides must partition the vertices")
    for side, want in ((sorted(clique_set), True), (sorted(stable_set), False)):
        for index, u in enumerate(side):
            for v in side[index + 1:]:
                if graph.adjacent(u, v) is not want:
                    return False
    return True


def dilworth_number(graph: Graph, caps: Optional[Caps] = None) -> int:
    """Largest set of vertices pairwise incomparable under ``N(x) <= N[y]``.

    The preorder is condensed into classes and the maximum antichain is read
    off a minimum chain cover (bipartite matching on the strict order).
    """
    if graph.vertex_count < 1:
        raise ValidationError("the Dilworth number needs at least one vertex")
    caps = resolve_caps(caps)
    caps.check("dilworth", graph.vertex_count)
    explicit = materialize(graph, caps)
    masks = [explicit.neighbor_mask(v) for v in explicit.vertices()]
    closed = _closed(masks)

    def below(x: int, y: int) -> bool:
        return masks[x] & ~closed[y] == 0

    classes: List[int] = []
    seen = [False] * len(masks)
    for x in range(len(masks)):
        if seen[x]:
            continue
        classes.append(x)
        for y in range(x, len(masks)):
            if below(x, y) and below(y, x):
                seen[y] = True

    order = nx.Graph()
    left = [("L", a) for a in range(len(classes))]
    order.add_nodes_from(left, bipartite=0)
    order.add_nodes_from((("R", b) for b in range(len(classes))), bipartite=1)
    for a, x in enumerate(classes):
        for b, y in enumerate(classes):
            if a != b and below(x, y):
                order.add_edge(("L", a), ("R", b))
    matching = nx.bipartite.hopcroft_karp_matching(order, top_nodes=left)
    matched = len(matching) // 2
    logger.debug(f"{len(classes)} neighbourhood classes, {matched} chain links")
    return len(classes) - matched


@dataclass(frozen=True)
class RingViolation:
    condition: str
    part: int
    detail: str

    def __str__(self) -> str:
        return f"{self.condition} at X_{self.part}: {self.detail}"


def ring_violations(graph: Graph, partition: RingPartition) -> List[RingViolation]:
    """Every failed ring condition, per part.

    Conditions: each part is a clique; closed neighbourhoods inside a part are
    nested; neighbourhoods stay within the part and its two cyclic neighbours;
    some vertex of the part sees both neighbouring parts entirely.
    """
    partition.validate(graph)
    explicit = materialize(graph)
    masks = {v: explicit.neighbor_mask(v) for v in explicit.vertices()}
    n = len(partition.parts)

    def mask_of(vertices: Iterable[int]) -> int:
        bits = 0
        for v in vertices:
            bits |= 1 << (v - 1)
        return bits

    part_masks = [mask_of(part) for part in partition.parts]
    found: List[RingViolation] = []
    for index, part in enumerate(partition.parts):
        number = index + 1
        members = sorted(part)
        own = part_masks[index]
        near = part_masks[index - 1] | part_masks[(index + 1) % n]
        for v in members:
            if (masks[v] | (1 << (v - 1))) & own != own:
                found.append(RingViolation("clique", number, f"vertex {v} misses part members"))
                break
        closed = {v: masks[v] | (1 << (v - 1)) for v in members}
        for position, u in enumerate(members):
            clash = next(
                (
                    w
                    for w in members[position + 1:]
                    if closed[u] & ~closed[w] and closed[w] & ~closed[u]
                ),
                None,
            )
            if clash is not None:
                found.append(
                    RingViolation("nested", number, f"N[{u}] and N[{clash}] are incomparable")
                )
                break
        for v in members:
            if masks[v] & ~(own | near):
                found.append(
                    RingViolation("confined", number, f"vertex {v} reaches a distant part")
                )
                break
        if not any(masks[v] & near == near for v in members):
            found.append(
                RingViolation("dominating", number, "no vertex sees both neighbouring parts")
            )
    return found


def is_ring(graph: Graph, partition: RingPartition) -> bool:
    return not ring_violations(graph, partition)


def is_even_hole_free(graph: Graph, caps: Optional[Caps] = None) -> bool:
    """No chordless cycle of even length 4 or more."""
    caps = resolve_caps(caps)
    caps.check("even_hole", graph.vertex_count)
    explicit = materialize(graph, caps).to_networkx()
    for cycle in nx.chordless_cycles(explicit):
        if len(cycle) >= 4 and len(cycle) % 2 == 0:
            logger.debug(f"even hole {cycle}")
            return False
    return True

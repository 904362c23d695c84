#!/usr/bin/env python3
"""
Decomposition tests: tree shape checks, widths, balanced edges, the exact
rankwidth search and the exhaustive balanced-cut certificate.
"""

import itertools
import random

import networkx as nx
import pytest

from carousel_width.carousel import CarouselFlavor, CarouselSpec, build, default_kinds
from carousel_width.config import Caps
from carousel_width.decomposition import (
    TreeDecomposition,
    balanced_edge,
    certify_lower_bound,
    edge_width,
    random_decomposition,
    rankwidth_exact,
    width,
)
from carousel_width.errors import (
    CapExceededError,
    FormatError,
    InvalidDecompositionError,
    ValidationError,
)
from carousel_width.graph import (
    Bipartition,
    ImplicitGraph,
    MaterializedGraph,
    balanced_sizes,
    is_balanced,
    partition_rank,
)


def from_nx(graph):
    return MaterializedGraph.from_networkx(graph)


def random_graph(rng, n):
    edges = [(u, v) for u, v in itertools.combinations(range(1, n + 1), 2) if rng.random() < 0.5]
    return MaterializedGraph.from_edges(n, edges)


def caterpillar(n):
    """Leaves 0..n-1 hang off a path of internal nodes n..2n-3 in vertex order."""
    if n == 2:
        return TreeDecomposition(2, ((0, 1),), {0: 1, 1: 2})
    spine = list(range(n, 2 * n - 2))
    edges = [(0, spine[0]), (1, spine[0])]
    edges += list(zip(spine, spine[1:]))
    edges += [(leaf, spine[leaf - 1]) for leaf in range(2, n - 1)]
    edges += [(n - 1, spine[-1])]
    return TreeDecomposition(2 * n - 2, tuple(edges), {v: v + 1 for v in range(n)})


def brute_force_min_balanced_rank(graph):
    """Every Y containing vertex 1, ranks from the cut matrix."""
    total = graph.vertex_count
    best = None
    for size in range(1, total + 1):
        if not balanced_sizes(total, size):
            continue
        for rest in itertools.combinations(range(2, total + 1), size - 1):
            partition = Bipartition(frozenset((1,) + rest), total)
            value = partition_rank(ImplicitGraph(total, graph.adjacent), partition)
            best = value if best is None else min(best, value)
    return best


class TestTreeShape:
    """Cubic tree validation and the text form."""

    def test_caterpillar_is_valid(self):
        tree = caterpillar(6)
        assert tree.node_count == 10
        assert tree.vertex_count == 6
        assert tree.side((6, 7)) == {1, 2}
        assert tree.side((7, 6)) == {3, 4, 5, 6}

    def test_rejects_bad_shapes(self):
        with pytest.raises(InvalidDecompositionError):
            TreeDecomposition(1, (), {0: 1})
        # internal node of degree 2
        with pytest.raises(InvalidDecompositionError):
            TreeDecomposition(3, ((0, 2), (2, 1)), {0: 1, 1: 2})
        # disconnected
        with pytest.raises(InvalidDecompositionError):
            TreeDecomposition(4, ((0, 1), (1, 2), (0, 2)), {0: 1, 1: 2, 2: 3, 3: 4})
        # leaf map misses a leaf
        with pytest.raises(InvalidDecompositionError):
            TreeDecomposition(4, ((0, 3), (1, 3), (2, 3)), {0: 1, 1: 2})
        # leaf map is not onto 1..N
        with pytest.raises(InvalidDecompositionError):
            TreeDecomposition(4, ((0, 3), (1, 3), (2, 3)), {0: 1, 1: 2, 2: 5})

    def test_graph_size_mismatch(self):
        tree = caterpillar(4)
        with pytest.raises(InvalidDecompositionError):
            width(MaterializedGraph.from_edges(5, []), tree)
        with pytest.raises(InvalidDecompositionError):
            tree.side((0, 1))

    def test_text_round_trip(self):
        graph = from_nx(nx.cycle_graph(6))
        _, tree = rankwidth_exact(graph)
        again = TreeDecomposition.from_text(tree.to_text())
        assert again.edges == tree.edges
        assert again.leaf_map == tree.leaf_map
        with pytest.raises(FormatError):
            TreeDecomposition.from_text("nodes 4\n")
        with pytest.raises(FormatError):
            TreeDecomposition.from_text("nodes 2\nparents -1 0\nbranch 1\n")


class TestWidth:
    """Edge widths and tree widths."""

    def test_cycle_central_edge(self):
        graph = from_nx(nx.cycle_graph(5))
        tree = caterpillar(5)
        assert edge_width(graph, tree, (5, 6)) == 2
        assert width(graph, tree) == 2

    def test_small_examples(self):
        assert width(from_nx(nx.complete_graph(4)), caterpillar(4)) == 1
        assert width(from_nx(nx.path_graph(4)), caterpillar(4)) == 1
        assert width(MaterializedGraph.from_edges(2, []), caterpillar(2)) == 0
        assert width(MaterializedGraph.from_edges(2, [(1, 2)]), caterpillar(2)) == 1


class TestBalancedEdge:
    """Every cubic tree has an edge with a balanced leaf partition."""

    def test_fixed_trees(self):
        graph = MaterializedGraph.from_edges(4, [])
        edge = balanced_edge(graph, caterpillar(4))
        assert edge == (4, 5)
        star = TreeDecomposition(4, ((0, 3), (1, 3), (2, 3)), {0: 1, 1: 2, 2: 3})
        edge = balanced_edge(MaterializedGraph.from_edges(3, []), star)
        assert len(star.side(edge)) in (1, 2)

    def test_random_trees(self):
        """10^4 random trees with at most 64 leaves."""
        rng = random.Random(2024)
        for _ in range(10_000):
            total = rng.randint(2, 64)
            tree = random_decomposition(total, rng)
            graph = ImplicitGraph(total, lambda u, v: False)
            edge = balanced_edge(graph, tree)
            assert is_balanced(graph, Bipartition(tree.side(edge), total))

    def test_needs_two_vertices(self):
        with pytest.raises(ValidationError):
            random_decomposition(1, random.Random(0))


class TestRankwidthExact:
    """Branch and bound against known values and tree widths."""

    @pytest.mark.parametrize("n", range(2, 9))
    def test_complete_and_path_graphs(self, n):
        assert rankwidth_exact(from_nx(nx.complete_graph(n)))[0] == 1
        assert rankwidth_exact(from_nx(nx.path_graph(n)))[0] == 1

    def test_known_values(self):
        assert rankwidth_exact(from_nx(nx.cycle_graph(5)))[0] == 2
        assert rankwidth_exact(MaterializedGraph.from_edges(5, []))[0] == 0
        assert rankwidth_exact(MaterializedGraph.from_edges(1, [])) == (0, None)
        assert rankwidth_exact(MaterializedGraph.from_edges(0, [])) == (0, None)

    def test_tree_attains_value(self):
        """200 random graphs on at most 7 vertices."""
        rng = random.Random(99)
        for _ in range(200):
            graph = random_graph(rng, rng.randint(2, 7))
            value, tree = rankwidth_exact(graph)
            assert tree is not None
            assert width(graph, tree) == value
            assert value >= certify_lower_bound(graph).min_balanced_rank

    def test_isomorphism_invariance(self):
        rng = random.Random(5)
        for _ in range(30):
            n = rng.randint(3, 7)
            graph = random_graph(rng, n)
            relabel = list(range(1, n + 1))
            rng.shuffle(relabel)
            shuffled = MaterializedGraph.from_edges(
                n, [(relabel[u - 1], relabel[v - 1]) for u, v in graph.edges()]
            )
            assert rankwidth_exact(shuffled)[0] == rankwidth_exact(graph)[0]

    def test_threads_give_the_same_answer(self):
        graph = from_nx(nx.petersen_graph().subgraph(range(8)).copy())
        single = rankwidth_exact(graph, threads=1)
        pooled = rankwidth_exact(graph, threads=3)
        assert single[0] == pooled[0]
        assert single[1].edges == pooled[1].edges

    def test_cap(self):
        graph = MaterializedGraph.from_edges(11, [])
        with pytest.raises(CapExceededError):
            rankwidth_exact(graph)
        with pytest.raises(CapExceededError):
            rankwidth_exact(from_nx(nx.path_graph(6)), Caps(rankwidth_exact=5))


class TestCertifyLowerBound:
    """Exhaustive minimum over balanced partitions."""

    def test_known_values(self):
        assert certify_lower_bound(from_nx(nx.complete_graph(4))).min_balanced_rank == 1
        assert certify_lower_bound(from_nx(nx.cycle_graph(5))).min_balanced_rank == 2
        assert certify_lower_bound(MaterializedGraph.from_edges(4, [])).min_balanced_rank == 0

    def test_examined_count(self):
        """Vertex 1 is pinned: sizes 2..3 of 5 vertices give C(4,1) + C(4,2)."""
        report = certify_lower_bound(from_nx(nx.cycle_graph(5)))
        assert report.partitions_examined == 10
        assert report.exact
        assert report.lower_bound == 2
        assert 1 in report.witness_partition.y

    def test_early_stop(self):
        graph = from_nx(nx.path_graph(6))
        report = certify_lower_bound(graph, r_max=2)
        assert report.min_balanced_rank == 1
        assert not report.exact
        assert report.lower_bound == 0
        assert report.partitions_examined == 1

    @pytest.mark.parametrize(
        "spec",
        [
            CarouselSpec(3, 2, CarouselFlavor.EVEN, default_kinds(3, CarouselFlavor.EVEN)),
            CarouselSpec(3, 1, CarouselFlavor.ODD, default_kinds(3, CarouselFlavor.ODD)),
        ],
    )
    def test_small_carousels_against_brute_force(self, spec):
        graph = build(spec)
        report = certify_lower_bound(graph)
        assert report.min_balanced_rank == brute_force_min_balanced_rank(graph)
        witness = report.witness_partition
        assert partition_rank(graph, witness) == report.min_balanced_rank

    def test_errors(self):
        with pytest.raises(ValidationError):
            certify_lower_bound(MaterializedGraph.from_edges(1, []))
        with pytest.raises(CapExceededError):
            certify_lower_bound(MaterializedGraph.from_edges(25, []))

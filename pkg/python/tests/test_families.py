#!/usr/bin/env python3
"""
Family tests: split carousels of Dilworth number 2, rings, and the
independent verifiers they are checked with.
"""

import itertools

import networkx as nx
import pytest

from carousel_width.config import Caps
from carousel_width.errors import CapExceededError, InvalidPartitionError, ValidationError
from carousel_width.families import (
    RingPartition,
    build_ring,
    build_split_dilworth2,
    dilworth_number,
    is_even_hole_free,
    is_ring,
    is_split,
    ring_violations,
)
from carousel_width.graph import MaterializedGraph, materialize


def from_nx(graph):
    return MaterializedGraph.from_networkx(graph)


def singletons(count):
    return RingPartition(tuple(frozenset([v]) for v in range(1, count + 1)))


def brute_force_dilworth(graph):
    """Largest clique of the incomparability graph under ``N(x) <= N[y]``."""
    explicit = materialize(graph)
    masks = {v: explicit.neighbor_mask(v) for v in explicit.vertices()}

    def below(x, y):
        return masks[x] & ~(masks[y] | 1 << (y - 1)) == 0

    incomparable = nx.Graph()
    incomparable.add_nodes_from(explicit.vertices())
    for x, y in itertools.combinations(explicit.vertices(), 2):
        if not below(x, y) and not below(y, x):
            incomparable.add_edge(x, y)
    return max(len(clique) for clique in nx.find_cliques(incomparable))


class TestSplitFamily:
    """Split carousels on four sets."""

    @pytest.mark.parametrize("s", [1, 2, 3])
    def test_split_sides(self, s):
        graph, clique, stable = build_split_dilworth2(s)
        assert graph.vertex_count == 4 * (2 ** s - 1)
        assert clique | stable == set(graph.vertices())
        assert is_split(graph, clique, stable)

    def test_smallest_member(self):
        graph, clique, stable = build_split_dilworth2(1)
        assert sorted(materialize(graph).edges()) == [(1, 2), (1, 3), (2, 3), (3, 4)]
        assert clique == {1, 3}
        assert dilworth_number(graph) == 1

    @pytest.mark.parametrize("s", [2, 3])
    def test_dilworth_two(self, s):
        graph, _, _ = build_split_dilworth2(s)
        assert dilworth_number(graph) == 2

    @pytest.mark.parametrize("s", [1, 2])
    def test_dilworth_against_brute_force(self, s):
        graph, _, _ = build_split_dilworth2(s)
        assert dilworth_number(graph) == brute_force_dilworth(graph)

    def test_errors(self):
        with pytest.raises(ValidationError):
            build_split_dilworth2(0)
        cycle = from_nx(nx.cycle_graph(4))
        assert not is_split(cycle, [1, 2], [3, 4])
        with pytest.raises(InvalidPartitionError):
            is_split(cycle, [1, 2], [2, 3, 4])
        with pytest.raises(InvalidPartitionError):
            is_split(cycle, [1], [3, 4])


class TestDilworthNumber:
    """Neighbourhood preorder on small named graphs."""

    @pytest.mark.parametrize("n", range(1, 7))
    def test_complete_graphs(self, n):
        assert dilworth_number(from_nx(nx.complete_graph(n))) == 1

    def test_cycles_and_paths(self):
        assert dilworth_number(from_nx(nx.cycle_graph(4))) == 2
        for graph in (nx.cycle_graph(5), nx.cycle_graph(6), nx.path_graph(6), nx.petersen_graph()):
            explicit = from_nx(graph)
            assert dilworth_number(explicit) == brute_force_dilworth(explicit)

    def test_errors(self):
        with pytest.raises(ValidationError):
            dilworth_number(MaterializedGraph.from_edges(0, []))
        with pytest.raises(CapExceededError):
            dilworth_number(MaterializedGraph.from_edges(5, []), Caps(dilworth=4))


class TestRings:
    """Ring carousels and the ring conditions."""

    def test_small_named_graphs(self):
        assert is_ring(from_nx(nx.complete_graph(3)), singletons(3))
        assert is_ring(from_nx(nx.cycle_graph(5)), singletons(5))
        violations = ring_violations(from_nx(nx.complete_graph(4)), singletons(4))
        assert {v.condition for v in violations} == {"confined"}
        assert len(violations) == 4
        assert str(violations[0]).startswith("confined at X_1")

    def test_clique_and_nested(self):
        # 1-2 missing inside the first part
        graph = MaterializedGraph.from_edges(4, [(1, 3), (2, 3), (3, 4), (4, 1), (4, 2)])
        partition = RingPartition((frozenset({1, 2}), frozenset({3}), frozenset({4})))
        conditions = {v.condition for v in ring_violations(graph, partition)}
        assert "clique" in conditions
        # part {1, 2} is a clique, but 1 sees only part 2 and 2 sees only part 3
        graph = MaterializedGraph.from_edges(4, [(1, 2), (1, 3), (2, 4), (3, 4)])
        violations = ring_violations(graph, partition)
        assert ("nested", 1) in {(v.condition, v.part) for v in violations}
        assert ("dominating", 1) in {(v.condition, v.part) for v in violations}

    @pytest.mark.parametrize("n,s", [(3, 1), (5, 1)])
    def test_odd_single_part_rings(self, n, s):
        graph, partition = build_ring(n, s)
        assert is_ring(graph, partition)
        assert [len(part) for part in partition.parts] == [2] * n

    @pytest.mark.parametrize("n,s", [(3, 2), (4, 1), (4, 2), (6, 1), (6, 2)])
    def test_larger_rings_miss_a_dominating_vertex(self, n, s):
        graph, partition = build_ring(n, s)
        violations = ring_violations(graph, partition)
        assert violations
        assert {v.condition for v in violations} == {"dominating"}

    def test_ring_partition_validation(self):
        graph = from_nx(nx.complete_graph(3))
        with pytest.raises(InvalidPartitionError):
            ring_violations(graph, RingPartition((frozenset({1, 2}), frozenset({3}))))
        with pytest.raises(InvalidPartitionError):
            ring_violations(
                graph,
                RingPartition((frozenset({1, 2}), frozenset({2}), frozenset({3}))),
            )
        with pytest.raises(InvalidPartitionError):
            ring_violations(graph, RingPartition((frozenset({1}), frozenset({2}), frozenset())))
        with pytest.raises(ValidationError):
            build_ring(2, 1)
        with pytest.raises(ValidationError):
            build_ring(3, 0)


class TestEvenHoles:
    """Chordless even cycles."""

    def test_cycles(self):
        assert is_even_hole_free(from_nx(nx.cycle_graph(5)))
        assert is_even_hole_free(from_nx(nx.complete_graph(5)))
        assert not is_even_hole_free(from_nx(nx.cycle_graph(4)))
        assert not is_even_hole_free(from_nx(nx.cycle_graph(6)))
        assert is_even_hole_free(from_nx(nx.path_graph(6)))

    def test_chord_removes_the_hole(self):
        graph = nx.cycle_graph(6)
        graph.add_edge(0, 3)
        # the chord leaves two 4-cycles
        assert not is_even_hole_free(from_nx(graph))
        graph = nx.cycle_graph(6)
        graph.add_edges_from([(0, 2), (2, 4), (4, 0)])
        assert is_even_hole_free(from_nx(graph))

    def test_ring_member(self):
        graph, _ = build_ring(5, 1)
        assert is_even_hole_free(graph)

    def test_cap(self):
        with pytest.raises(CapExceededError):
            is_even_hole_free(MaterializedGraph.from_edges(25, []))

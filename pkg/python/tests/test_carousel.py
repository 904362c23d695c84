#!/usr/bin/env python3
"""
Carousel specification, validation and implicit adjacency tests.
"""

from fractions import Fraction

import pytest

from carousel_width.carousel import (
    CarouselFlavor,
    CarouselGraph,
    CarouselSpec,
    PartRef,
    PolicyMode,
    SetRole,
    bar,
    build,
    closing_role_consistent,
    default_kinds,
    part_ids,
    part_positions,
    part_vertices,
    require_valid,
    set_role,
    set_size,
    tail_fraction,
    tilde_part,
    validate_spec,
)
from carousel_width.errors import FormatError, InvalidSpecError, ValidationError
from carousel_width.graph import Graph, VertexRef
from carousel_width.triples import TripleKind

RC = TripleKind.REGULAR_CROSSING
RM = TripleKind.REGULAR_MATCHING
RA = TripleKind.REGULAR_ANTIMATCHING
EM = TripleKind.EXPANDING_MATCHING
EC = TripleKind.EXPANDING_CROSSING
SEM = TripleKind.SKEW_EXPANDING_MATCHING
SEC = TripleKind.SKEW_EXPANDING_CROSSING

EVEN = CarouselFlavor.EVEN
ODD = CarouselFlavor.ODD


def clauses(spec):
    return {violation.clause for violation in validate_spec(spec)}


class TestValidation:
    """CarouselSpec clauses, one violation at a time."""

    def test_valid_even_spec(self):
        spec = CarouselSpec(3, 2, EVEN, (RC, RM, EC), intra_set=PolicyMode.CLIQUE)
        assert validate_spec(spec) == []
        assert spec.k == 3
        assert spec.vertex_count == 9

    def test_valid_odd_spec(self):
        spec = CarouselSpec(3, 1, ODD, (RC, RM, SEM))
        assert validate_spec(spec) == []
        assert spec.k == 2

    def test_cross_parity(self):
        assert clauses(CarouselSpec(3, 2, EVEN, (RC, RM, EM))) == {"cross_parity"}
        assert clauses(CarouselSpec(3, 2, ODD, (RC, RC, SEM))) == {"cross_parity"}

    def test_first_and_interior_kinds(self):
        assert "first_kind_regular_crossing" in clauses(CarouselSpec(3, 2, EVEN, (RM, RC, EC)))
        assert "interior_kinds_regular" in clauses(CarouselSpec(4, 2, EVEN, (RC, EM, RM, EC)))

    def test_closing_kind(self):
        assert "closing_kind_expanding" in clauses(CarouselSpec(3, 2, EVEN, (RC, RM, RC)))
        assert "closing_kind_skew" in clauses(CarouselSpec(3, 2, ODD, (RC, RM, EM)))

    def test_sizes_and_lengths(self):
        assert "n_at_least_3" in clauses(CarouselSpec(2, 2, EVEN, (RC, EC)))
        assert "s_at_least_1" in clauses(CarouselSpec(3, 0, EVEN, (RC, RM, EC)))
        assert clauses(CarouselSpec(3, 2, EVEN, (RC, EC))) == {"kinds_length"}

    def test_skew_kind_needs_odd_flavor_size(self):
        # even sizes are odd numbers, never 2 mod 4
        assert "kind_size" in clauses(CarouselSpec(3, 2, EVEN, (RC, RC, SEM)))

    def test_policies_and_ranges(self):
        base = dict(n=3, s=2, flavor=EVEN, kinds=(RC, RM, EC))
        assert clauses(CarouselSpec(**base, long_range=PolicyMode.CLIQUE)) == {"long_range_policy"}
        assert clauses(CarouselSpec(**base, density=Fraction(3, 2))) == {"density_range"}
        assert clauses(CarouselSpec(**base, seed=-1)) == {"seed_range"}
        assert clauses(CarouselSpec(**base, seed=1 << 64)) == {"seed_range"}

    def test_require_valid_collects_violations(self):
        spec = CarouselSpec(3, 2, EVEN, (RM, RM, RM), long_range=PolicyMode.CLIQUE)
        with pytest.raises(InvalidSpecError) as info:
            require_valid(spec)
        found = {violation.clause for violation in info.value.violations}
        assert {"first_kind_regular_crossing", "closing_kind_expanding", "long_range_policy"} <= found
        with pytest.raises(InvalidSpecError):
            build(spec)

    @pytest.mark.parametrize("n", range(3, 9))
    def test_default_kinds_valid(self, n):
        for flavor in (EVEN, ODD):
            spec = CarouselSpec(n, 3, flavor, default_kinds(n, flavor))
            assert validate_spec(spec) == []

    def test_set_size(self):
        assert [set_size(EVEN, s) for s in (1, 2, 3, 4)] == [1, 3, 7, 15]
        assert [set_size(ODD, s) for s in (1, 2, 3, 4)] == [2, 6, 14, 30]
        assert all(set_size(ODD, s) % 4 == 2 for s in range(1, 20))


class TestAdjacency:
    """Implicit adjacency of built carousels."""

    def test_small_even_carousel(self):
        """k = 1: a path closed by an expanding matching that never fires."""
        graph = build(CarouselSpec(3, 1, EVEN, (RC, RC, EM)))
        assert graph.vertex_count == 3
        assert graph.adjacent(1, 2)
        assert graph.adjacent(2, 3)
        assert not graph.adjacent(3, 1)

    def test_gap_follows_triple(self):
        graph = build(CarouselSpec(3, 3, EVEN, (RC, RM, EC)))
        k = graph.k
        for j in range(1, k + 1):
            for jp in range(1, k + 1):
                u, v = graph.vertex(1, j), graph.vertex(2, jp)
                assert graph.adjacent(u, v) == (j + jp >= k + 1)
                u, v = graph.vertex(2, j), graph.vertex(3, jp)
                assert graph.adjacent(v, u) == (j == jp)
                u, v = graph.vertex(3, j), graph.vertex(1, jp)
                assert graph.adjacent(u, v) == (2 * j + jp >= 2 * k + 2)

    def test_intra_set_policies(self):
        clique = build(CarouselSpec(3, 2, EVEN, (RC, RM, EC), intra_set=PolicyMode.CLIQUE))
        empty = build(CarouselSpec(3, 2, EVEN, (RC, RM, EC)))
        for i in (1, 2, 3):
            ids = list(clique.set_ids(i))
            for position, u in enumerate(ids):
                for v in ids[position + 1:]:
                    assert clique.adjacent(u, v)
                    assert not empty.adjacent(u, v)

    def test_long_range_empty(self):
        graph = build(CarouselSpec(5, 2, EVEN, default_kinds(5, EVEN)))
        for j in range(1, graph.k + 1):
            for jp in range(1, graph.k + 1):
                assert not graph.adjacent(graph.vertex(1, j), graph.vertex(3, jp))
                assert not graph.adjacent(graph.vertex(2, j), graph.vertex(4, jp))

    def test_seeded_random_is_deterministic(self):
        spec = CarouselSpec(
            5, 2, EVEN, default_kinds(5, EVEN),
            intra_set=PolicyMode.SEEDED_RANDOM,
            long_range=PolicyMode.SEEDED_RANDOM,
            seed=12345,
        )
        first, second = build(spec), build(spec)
        masks = [first.neighbor_mask(v) for v in first.vertices()]
        assert masks == [second.neighbor_mask(v) for v in second.vertices()]
        other = build(CarouselSpec(**{**spec.__dict__, "seed": 54321}))
        assert masks != [other.neighbor_mask(v) for v in other.vertices()]
        # random edges do not touch the triples
        for j in range(1, first.k + 1):
            for jp in range(1, first.k + 1):
                assert first.adjacent(first.vertex(1, j), first.vertex(2, jp)) == (
                    j + jp >= first.k + 1
                )

    def test_density_extremes(self):
        base = dict(
            n=4, s=2, flavor=EVEN, kinds=default_kinds(4, EVEN),
            long_range=PolicyMode.SEEDED_RANDOM, seed=9,
        )
        none = build(CarouselSpec(**base, density=Fraction(0)))
        every = build(CarouselSpec(**base, density=Fraction(1)))
        for j in range(1, 4):
            for jp in range(1, 4):
                assert not none.adjacent(none.vertex(1, j), none.vertex(3, jp))
                assert every.adjacent(every.vertex(1, j), every.vertex(3, jp))

    @pytest.mark.parametrize(
        "spec",
        [
            CarouselSpec(4, 2, EVEN, default_kinds(4, EVEN), intra_set=PolicyMode.CLIQUE),
            CarouselSpec(3, 2, ODD, (RC, RA, SEM), intra_set=PolicyMode.SEEDED_RANDOM, seed=3),
            CarouselSpec(
                5, 1, ODD, default_kinds(5, ODD), long_range=PolicyMode.SEEDED_RANDOM, seed=4
            ),
        ],
    )
    def test_neighbor_mask_matches_full_scan(self, spec):
        graph = build(spec)
        for v in graph.vertices():
            assert graph.neighbor_mask(v) == Graph.neighbor_mask(graph, v)

    def test_vertex_ids(self):
        graph = build(CarouselSpec(3, 3, EVEN, (RC, RM, EC)))
        assert graph.vertex(2, 1) == 8
        assert graph.ref(8) == VertexRef(2, 1)
        assert list(graph.set_ids(3)) == list(range(15, 22))
        assert graph.successor(3) == 1
        with pytest.raises(ValidationError):
            graph.vertex(4, 1)
        assert isinstance(graph, CarouselGraph)


class TestParts:
    """Parts, bars and roles."""

    def test_even_part_positions(self):
        spec = CarouselSpec(3, 3, EVEN, (RC, RM, EC))
        assert part_positions(spec, PartRef(1, 3)) == [4, 5, 6, 7]
        assert part_positions(spec, PartRef(1, 3, True)) == [4, 3, 2, 1]
        assert part_positions(spec, PartRef(2, 1, True)) == [7]
        assert part_ids(spec, PartRef(2, 2)) == [9, 10]
        assert part_vertices(spec, PartRef(3, 2, True)) == [VertexRef(3, 6), VertexRef(3, 5)]
        with pytest.raises(ValidationError):
            part_positions(spec, PartRef(1, 4))

    def test_odd_part_positions(self):
        spec = CarouselSpec(3, 1, ODD, (RC, RM, SEM))
        assert part_positions(spec, PartRef(1, 1)) == [1]
        assert part_positions(spec, PartRef(1, 1, True)) == [2]

    @pytest.mark.parametrize("s", range(1, 7))
    def test_parts_partition_each_set(self, s):
        """Even sets split into s parts; odd sets into s parts and their bars."""
        even = CarouselSpec(3, s, EVEN, default_kinds(3, EVEN))
        covered = sorted(p for j in range(1, s + 1) for p in part_positions(even, PartRef(1, j)))
        assert covered == list(range(1, even.k + 1))
        odd = CarouselSpec(3, s, ODD, default_kinds(3, ODD))
        covered = sorted(
            p
            for j in range(1, s + 1)
            for barred in (False, True)
            for p in part_positions(odd, PartRef(1, j, barred))
        )
        assert covered == list(range(1, odd.k + 1))

    def test_bar(self):
        spec = CarouselSpec(3, 3, EVEN, (RC, RM, EC))
        assert bar(spec, VertexRef(2, 1)) == VertexRef(2, 7)
        assert bar(spec, VertexRef(1, 4)) == VertexRef(1, 4)
        for j in range(1, 8):
            assert bar(spec, bar(spec, VertexRef(3, j))) == VertexRef(3, j)
        with pytest.raises(ValidationError):
            bar(spec, VertexRef(1, 8))

    def test_roles(self):
        spec = CarouselSpec(3, 2, EVEN, (RC, RM, EC))
        assert [set_role(spec, i) for i in (1, 2, 3)] == [SetRole.TOP, SetRole.BOTTOM, SetRole.BOTTOM]
        assert closing_role_consistent(spec)
        assert tilde_part(spec, 1, 2) == PartRef(1, 2, False)
        assert tilde_part(spec, 3, 2) == PartRef(3, 2, True)
        odd = CarouselSpec(3, 2, ODD, (RC, RC, SEC))
        assert [set_role(odd, i) for i in (1, 2, 3)] == [SetRole.TOP, SetRole.BOTTOM, SetRole.TOP]
        # three crossings: the closing gap meets X_1 with the wrong role
        assert not closing_role_consistent(odd)

    @pytest.mark.parametrize("n", range(3, 8))
    def test_even_roles_consistent(self, n):
        spec = CarouselSpec(n, 2, EVEN, default_kinds(n, EVEN))
        assert closing_role_consistent(spec)

    def test_tail_fraction(self):
        assert tail_fraction(2) == 1
        assert tail_fraction(3) == Fraction(6, 7)
        for s in range(2, 31):
            assert tail_fraction(s) > Fraction(3, 4)
        with pytest.raises(ValidationError):
            tail_fraction(1)


class TestSpecText:
    """The key = value spec document."""

    def test_round_trip(self):
        spec = CarouselSpec(
            4, 3, EVEN, (RC, RA, RC, EM),
            intra_set=PolicyMode.SEEDED_RANDOM,
            long_range=PolicyMode.SEEDED_RANDOM,
            seed=77,
            density=Fraction(1, 3),
        )
        text = spec.to_text()
        assert text.splitlines()[1:3] == ["n = 4", "s = 3"]
        assert CarouselSpec.from_text(text) == spec

    def test_defaults(self):
        spec = CarouselSpec.from_text("n = 3\ns = 2\nflavor = even\nkinds = regular_crossing, regular_matching, expanding_crossing\n")
        assert spec.intra_set is PolicyMode.EMPTY
        assert spec.seed == 0
        assert spec.density == Fraction(1, 2)
        assert spec.describe().startswith("even carousel n=3 s=2 k=3")

    @pytest.mark.parametrize(
        "text",
        [
            "n = 3\ns = 2\nflavor = even\n",
            "n = 3\ns = 2\nflavor = even\nkinds = regular_crossing\ncolor = red\n",
            "n = 3\nn = 4\ns = 2\nflavor = even\nkinds = regular_crossing\n",
            "n = three\ns = 2\nflavor = even\nkinds = regular_crossing\n",
            "n = 3\ns = 2\nflavor = even\nkinds = diagonal\n",
            "n 3\n",
        ],
    )
    def test_malformed_text(self, text):
        with pytest.raises(FormatError):
            CarouselSpec.from_text(text)

    def test_gap_index(self):
        spec = CarouselSpec(3, 2, EVEN, (RC, RM, EC))
        assert spec.kind(3) is EC
        with pytest.raises(ValidationError):
            spec.kind(4)

#!/usr/bin/env python3
"""
Performance regression tests for carousel-width.

Timings go through pytest-benchmark; the memory checks guard the implicit
adjacency path, which must never materialize a full-order carousel.
"""

import gc
import os
import random
import time
from dataclasses import dataclass

import psutil
import pytest

from carousel_width.carousel import CarouselFlavor, CarouselSpec, build, default_kinds
from carousel_width.certify import certify_partition, min_order, sample_partition
from carousel_width.gf2 import rank_of_rows
from carousel_width.graph import partition_rank


@dataclass
class PerformanceBaseline:
    """Expected upper bounds."""

    max_memory_growth_mb: float = 300.0  # full-order carousel, one certified trial
    max_rank_seconds: float = 0.05  # 64x64 GF(2) rank


def full_order_carousel(n=3, r=2):
    q, s = min_order(n, r, CarouselFlavor.EVEN)
    return build(CarouselSpec(n, s, CarouselFlavor.EVEN, default_kinds(n, CarouselFlavor.EVEN)))


class TestPerformanceRegression:
    """Kernel timings and memory growth."""

    @pytest.fixture(autouse=True)
    def setup_method(self):
        """Record the resident set before each test."""
        gc.collect()
        self.initial_memory = self.get_memory_usage()
        self.baselines = PerformanceBaseline()

    def get_memory_usage(self) -> float:
        """Current resident memory in MB."""
        process = psutil.Process(os.getpid())
        return process.memory_info().rss / 1024 / 1024

    def test_gf2_rank_speed(self, benchmark):
        rng = random.Random(1)
        rows = [rng.getrandbits(64) for _ in range(64)]
        value = benchmark(rank_of_rows, rows)
        assert 0 <= value <= 64
        start = time.perf_counter()
        for _ in range(20):
            rank_of_rows(rows)
        mean = (time.perf_counter() - start) / 20
        assert mean < self.baselines.max_rank_seconds, f"64x64 rank took {mean * 1000:.2f}ms"

    def test_partition_rank_speed(self, benchmark):
        graph = build(CarouselSpec(3, 6, CarouselFlavor.EVEN, default_kinds(3, CarouselFlavor.EVEN)))
        partition = sample_partition(graph, random.Random(4))
        value = benchmark(partition_rank, graph, partition)
        assert value >= 1

    def test_certified_trial_on_full_order_carousel(self, benchmark):
        graph = full_order_carousel()
        partition = sample_partition(graph, random.Random(7))
        gc.collect()
        certification = benchmark.pedantic(
            certify_partition, args=(graph, partition, 2), rounds=1, iterations=1
        )
        assert certification.certified
        gc.collect()
        growth = self.get_memory_usage() - self.initial_memory
        print(f"\n  Memory growth: {growth:.1f}MB for {graph.vertex_count:,} vertices")
        assert growth < self.baselines.max_memory_growth_mb, (
            f"memory grew by {growth:.1f}MB, carousel may have been materialized"
        )

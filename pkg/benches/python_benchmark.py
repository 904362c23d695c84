#!/usr/bin/env python3
"""
# Certificate Benchmark CLI

Times one certified trial after another on a full-order carousel.
Measures per-trial latency, throughput and peak memory; prints one JSON line.
"""

import json
import os
import random
import time

import psutil
from hdrh.histogram import HdrHistogram

from carousel_width.carousel import CarouselFlavor, CarouselSpec, build, default_kinds
from carousel_width.certify import SamplingMode, certify_partition, min_order, sample_partition

N = int(os.getenv("N", "3"))
R = int(os.getenv("R", "2"))
TRIALS = int(os.getenv("TRIALS", "50"))
SEED = int(os.getenv("SEED", "0"))
FLAVOR = CarouselFlavor(os.getenv("FLAVOR", "even"))
SAMPLING = SamplingMode(os.getenv("SAMPLING", "uniform"))

# nanosecond precision up to 10 minutes per trial
hist = HdrHistogram(1, 600_000_000_000, 3)


def main():
    """Sample, certify and record every trial."""
    q, s = min_order(N, R, FLAVOR)
    graph = build(CarouselSpec(N, s, FLAVOR, default_kinds(N, FLAVOR)))
    process = psutil.Process(os.getpid())
    peak_rss = process.memory_info().rss

    print(
        f"Starting certificate benchmark: n={N}, r={R}, s={s}, "
        f"vertices={graph.vertex_count}, trials={TRIALS}, sampling={SAMPLING.value}"
    )

    methods = {}
    certified = 0
    start = time.perf_counter()
    for index in range(TRIALS):
        rng = random.Random(f"{SEED}/{index}")
        partition = sample_partition(graph, rng, SAMPLING)
        t0 = time.perf_counter_ns()
        result = certify_partition(graph, partition, R, rng)
        hist.record_value(max(1, time.perf_counter_ns() - t0))
        peak_rss = max(peak_rss, process.memory_info().rss)
        if result.certified:
            certified += 1
            methods[result.method.value] = methods.get(result.method.value, 0) + 1
    elapsed = time.perf_counter() - start

    out = {
        "lang": "python",
        "flavor": FLAVOR.value,
        "n": N,
        "r": R,
        "q": q,
        "s": s,
        "vertices": graph.vertex_count,
        "trials": TRIALS,
        "trials_per_sec": TRIALS / elapsed if elapsed > 0 else 0.0,
        "latency_ms": {
            "p50": hist.get_value_at_percentile(50) / 1e6,
            "p95": hist.get_value_at_percentile(95) / 1e6,
            "p99": hist.get_value_at_percentile(99) / 1e6,
        },
        "peak_rss_mb": peak_rss / 1024 / 1024,
        "certified": certified,
        "methods": methods,
    }

    print(json.dumps(out))


if __name__ == "__main__":
    main()

"""Estimators of the expected squared L2 discrepancy of stratified samples.

Two numerical routes are implemented here and cross-checked against the
closed form elsewhere:

  * quasi-Monte Carlo: integrate (1/N^2) sum_i q_i(x)(1 - q_i(x)) over the
    unit square using a fixed node set (Halton bases 2 and 3 by default);
  * Monte Carlo: draw stratified samples, evaluate each with the pairwise
    discrepancy identity, and average.

Closed-form baselines for i.i.d. uniform points, vertical strips, and
jittered grids give the comparison values the ratio statistics are built on.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .lowdisc import HaltonConfig, PointSet, halton, l2_discrepancy_sq_batch
from .partition import (
    generating_set,
    sample_jittered_batch,
    sample_stratified_batch,
    sample_vertical_batch,
)
from .qgeometry import intersection_area_grid

_MC_CHUNK = 4096


class Method(str, enum.Enum):
    """How an expected-discrepancy value was obtained."""

    EXACT = "exact"
    QMC = "qmc"
    MC = "mc"
    BASELINE = "closed-form-baseline"


@dataclass(frozen=True)
class DiscrepancyEstimate:
    """A value of E[L2^2] with its method tag and, for MC, a standard error."""

    value: float
    method: Method
    std_error: float | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.value < 0.0:
            raise ValueError(f"expected squared discrepancy cannot be negative: {self.value}")
        if (self.std_error is not None) != (self.method is Method.MC):
            raise ValueError("std_error must be present exactly for MC estimates")


def expected_l2_sq_qmc(n: int, nodes: PointSet | None = None) -> DiscrepancyEstimate:
    """Node-set average of (1/N^2) sum_i q_i(1 - q_i) over the partition strips.

    The strip loop carries the clipped area at the previous cut, so each cut
    is evaluated once; nodes outside a strip's support contribute exact
    zeros, which keeps the result identical to the naive per-strip loop.
    Defaults to Halton bases (2, 3) with 40000 nodes.
    """
    if n < 2:
        raise ValueError(f"need at least 2 cells, got n={n}")
    if nodes is None:
        nodes = halton(HaltonConfig())
    if nodes.n < 1:
        raise ValueError("node set must be nonempty")
    gs = generating_set(n)
    x = nodes.points[:, 0]
    y = nodes.points[:, 1]
    v_prev = x * y
    acc = np.zeros_like(x)
    for i in range(1, n + 1):
        v_i = np.zeros_like(x) if i == n else intersection_area_grid(gs.boundary(i), x, y)
        q = n * (v_prev - v_i)
        acc += q * (1.0 - q)
        v_prev = v_i
    value = math.fsum(acc.tolist()) / (nodes.n * n * n)
    return DiscrepancyEstimate(
        value=value,
        method=Method.QMC,
        meta={"n": n, "m_nodes": nodes.n},
    )


def expected_l2_sq_mc(
    n: int,
    replicates: int,
    seed: int,
    partition: str = "diagonal",
) -> DiscrepancyEstimate:
    """Average pairwise-identity discrepancy over stratified replicates.

    std_error is the unbiased sample standard deviation divided by
    sqrt(replicates).  All replicates are drawn in one batch per cell, so
    the result is deterministic in (n, replicates, seed, partition).
    """
    if replicates < 2:
        raise ValueError(f"need at least 2 replicates for a standard error, got {replicates}")
    if partition == "diagonal":
        points = sample_stratified_batch(generating_set(n), replicates, seed)
    elif partition == "vertical":
        points = sample_vertical_batch(n, replicates, seed)
    elif partition == "jittered":
        m = math.isqrt(n)
        if m * m != n:
            raise ValueError(f"jittered partition needs a square point count, got n={n}")
        points = sample_jittered_batch(m, replicates, seed)
    else:
        raise ValueError(f"unknown partition kind: {partition!r}")

    values = np.concatenate(
        [l2_discrepancy_sq_batch(points[a:a + _MC_CHUNK]) for a in range(0, replicates, _MC_CHUNK)]
    )
    as_list = values.tolist()
    mean = math.fsum(as_list) / replicates
    variance = math.fsum((v - mean) ** 2 for v in as_list) / (replicates - 1)
    return DiscrepancyEstimate(
        value=mean,
        method=Method.MC,
        std_error=math.sqrt(variance / replicates),
        meta={"n": n, "replicates": replicates, "seed": seed, "partition": partition},
    )


def random_baseline(n: int) -> float:
    """E[L2^2] of n i.i.d. uniform points: 5/(36n)."""
    if n < 1:
        raise ValueError(f"need at least 1 point, got n={n}")
    return 5.0 / (36.0 * n)


def vertical_baseline(n: int) -> float:
    """E[L2^2] of a stratified sample of the n vertical strips: (3n+2)/(36n^2)."""
    if n < 1:
        raise ValueError(f"need at least 1 strip, got n={n}")
    return (3.0 * n + 2.0) / (36.0 * n * n)


def jittered_baseline(m: int) -> float:
    """E[L2^2] of a jittered sample on the m x m grid: ((m/2)^2 - (m/2 - 1/6)^2)/m^4."""
    if m < 1:
        raise ValueError(f"need at least a 1x1 grid, got m={m}")
    half = m / 2.0
    return (half * half - (half - 1.0 / 6.0) ** 2) / float(m) ** 4


def ratio_to_random(n: int, est: DiscrepancyEstimate) -> float:
    """random_baseline(n) divided by the estimate; the headline comparison."""
    if est.value <= 0.0:
        raise ValueError("ratio undefined for a nonpositive estimate")
    return random_baseline(n) / est.value

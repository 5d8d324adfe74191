"""Nonparametric comparison and regression fits for the analysis pipeline.

The Mann-Whitney U test uses midranks for ties, full enumeration for small
samples, and a tie-corrected, continuity-corrected normal approximation
otherwise. Fitts' law fits force a zero intercept and report the index of
performance 1/b.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence


class StatsError(ValueError):
    pass


@dataclass(frozen=True)
class MannWhitneyResult:
    u_statistic: float  # min(U_a, U_b)
    p_two_sided: float
    method: str  # "exact" or "normal_approx"
    n_a: int
    n_b: int
    degenerate: bool = False


@dataclass(frozen=True)
class LinearFit:
    slope: float
    intercept: float
    r_squared: float
    n: int


@dataclass(frozen=True)
class FittsFit:
    b: float  # seconds per bit
    a: float  # fixed at 0
    index_of_performance: float  # bits per second, 1/b
    r_squared: float
    n: int


def index_of_difficulty(distance_deg: float, width_deg: float = 1.0) -> float:
    """Shannon formulation: log2(D/W + 1)."""
    if distance_deg <= 0 or width_deg <= 0:
        raise StatsError("distance and width must be positive")
    return math.log2(distance_deg / width_deg + 1.0)


def _midranks(pooled: Sequence[float]) -> list[float]:
    order = sorted(range(len(pooled)), key=pooled.__getitem__)
    ranks = [0.0] * len(pooled)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and pooled[order[j + 1]] == pooled[order[i]]:
            j += 1
        rank = (i + j) / 2.0 + 1.0  # midrank of the tied block
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def _u_from_rank_sum(rank_sum: float, n_a: int, n_b: int) -> float:
    return rank_sum - n_a * (n_a + 1) / 2.0


def _normal_sf(z: float) -> float:
    return 0.5 * math.erfc(z / math.sqrt(2.0))


def mann_whitney(a: Sequence[float], b: Sequence[float],
                 exact_threshold: int = 8) -> MannWhitneyResult:
    """Two-sided Mann-Whitney U test.

    Exact path: p = P(min(U_A, U_B) <= observed min U) over every one of the
    C(n_a+n_b, n_a) equally likely assignments of the pooled midranks.
    Approximate path: normal with tie-corrected variance and a 0.5
    continuity correction on max(U_A, U_B).
    """
    n_a, n_b = len(a), len(b)
    if n_a < 1 or n_b < 1:
        raise StatsError("both samples must be non-empty")
    pooled = [float(v) for v in a] + [float(v) for v in b]
    for v in pooled:
        if not math.isfinite(v):
            raise StatsError("samples must be finite")
    ranks = _midranks(pooled)
    u_a = _u_from_rank_sum(sum(ranks[:n_a]), n_a, n_b)
    u_b = n_a * n_b - u_a
    u_min = min(u_a, u_b)

    degenerate = len(set(pooled)) == 1
    if degenerate:
        return MannWhitneyResult(u_min, 1.0, "exact" if max(n_a, n_b) <= exact_threshold
                                 else "normal_approx", n_a, n_b, degenerate=True)

    if n_a <= exact_threshold and n_b <= exact_threshold:
        hits = 0
        total = 0
        indices = range(n_a + n_b)
        for combo in itertools.combinations(indices, n_a):
            rank_sum = sum(ranks[i] for i in combo)
            ua = _u_from_rank_sum(rank_sum, n_a, n_b)
            if min(ua, n_a * n_b - ua) <= u_min + 1e-9:
                hits += 1
            total += 1
        return MannWhitneyResult(u_min, hits / total, "exact", n_a, n_b)

    n = n_a + n_b
    tie_term = 0.0
    seen: dict[float, int] = {}
    for v in pooled:
        seen[v] = seen.get(v, 0) + 1
    for count in seen.values():
        tie_term += count ** 3 - count
    var = (n_a * n_b / 12.0) * ((n + 1) - tie_term / (n * (n - 1)))
    if var <= 0.0:
        return MannWhitneyResult(u_min, 1.0, "normal_approx", n_a, n_b, degenerate=True)
    mu = n_a * n_b / 2.0
    z = (max(u_a, u_b) - mu - 0.5) / math.sqrt(var)
    p = min(1.0, max(2.0 * _normal_sf(z), 1e-300))
    return MannWhitneyResult(u_min, p, "normal_approx", n_a, n_b)


def linear_fit(xs: Sequence[float], ys: Sequence[float]) -> LinearFit:
    """Ordinary least squares with centered R^2."""
    n = len(xs)
    if n < 2 or n != len(ys):
        raise StatsError("need at least 2 paired points")
    mx = sum(xs) / n
    my = sum(ys) / n
    sxx = sum((x - mx) ** 2 for x in xs)
    if sxx <= 0.0:
        raise StatsError("xs are all equal; slope undefined")
    sxy = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_tot = sum((y - my) ** 2 for y in ys)
    if ss_tot <= 0.0:
        return LinearFit(slope, intercept, 0.0, n)
    ss_res = sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    return LinearFit(slope, intercept, 1.0 - ss_res / ss_tot, n)


def fitts_fit(points: Sequence[tuple[float, float]]) -> FittsFit:
    """Least squares through the origin on (index of difficulty, movement
    time) pairs; R^2 is reported against the centered total sum of squares
    and clamped to [0, 1]."""
    if not points:
        raise StatsError("need at least one point")
    for x, _ in points:
        if x <= 0:
            raise StatsError("index of difficulty must be positive")
    sxy = sum(x * y for x, y in points)
    sxx = sum(x * x for x, y in points)
    b = sxy / sxx
    if b <= 0:
        raise StatsError("fitted slope must be positive for an index of performance")
    n = len(points)
    my = sum(y for _, y in points) / n
    ss_tot = sum((y - my) ** 2 for _, y in points)
    ss_res = sum((y - b * x) ** 2 for x, y in points)
    if ss_tot <= 0.0:
        r2 = 1.0 if ss_res <= 1e-18 else 0.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return FittsFit(b=b, a=0.0, index_of_performance=1.0 / b, r_squared=r2, n=n)

"""Experiment harness reproducing the approximation-quality benchmarks.

Table-1 style runs draw seeded Dirichlet(1,...,1) histogram pairs per
dimension and score the JFR and Gauss-Bregman centers against the numerical
Jeffreys centroid (relative Jeffreys-loss excess and total variation).
Table-2 style runs score the deterministic two-histogram family
(1/3, 1/3, 1/3) vs (1-alpha, alpha/2, alpha/2).

Per-trial seeds derive from (seed, dim, trial) through a fixed splitting rule,
so identical configurations produce identical reports; timing columns are the
only nondeterministic fields and can be zeroed.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import List, Optional, Sequence

import numpy as np

from .categorical import (
    GB_CAT_EPSILON,
    HistogramSet,
    approximation_factor,
    gb_center_cat,
    jeffreys_centroid_cat,
    jeffreys_loss_cat,
    jfr_center_cat,
    tv_cat,
)
from .errors import DomainError

__all__ = [
    "BenchRecord",
    "RunConfig",
    "Table2Row",
    "DEFAULT_ALPHAS",
    "sample_histogram_pair",
    "run_table1",
    "run_table2",
    "table1_csv",
    "table2_csv",
]

TABLE1_HEADER = "dim,method,avg_info_eps,max_info_eps,avg_tv,max_tv,avg_time_ns,speedup"
TABLE2_HEADER = "alpha,method,info_eps,tv_eps,time_ns,speedup,flagged"

DEFAULT_ALPHAS = tuple(10.0**-k for k in range(1, 17))

_METHODS = ("jeffreys", "jfr", "gb", "arithmetic", "geometric", "unnormalized")


@dataclass(frozen=True)
class BenchRecord:
    """One aggregated row of a Table-1 style report."""

    dim: int
    method: str
    avg_info_eps: float
    max_info_eps: float
    avg_tv: float
    max_tv: float
    avg_time_ns: int
    speedup_vs_jeffreys: float

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if self.max_info_eps < self.avg_info_eps or self.max_tv < self.avg_tv:
            raise ValueError("max column below avg column")


@dataclass(frozen=True)
class RunConfig:
    """Parameters of a randomized benchmark run."""

    seed: int = 0
    trials: int = 1000
    dims: Sequence[int] = (16,)
    epsilon: float = 1e-10
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if any(d < 2 for d in self.dims):
            raise ValueError("every dimension must be >= 2")
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")


@dataclass(frozen=True)
class Table2Row:
    alpha: float
    method: str
    info_eps: float
    tv_eps: float
    time_ns: int
    speedup_vs_jeffreys: float
    flagged: bool


def sample_histogram_pair(seed: int, dim: int, trial: int) -> np.ndarray:
    """Two Dirichlet(1,...,1) histograms; components below 1e-12 trigger resampling."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, dim, trial])))
    rows = rng.dirichlet(np.ones(dim), size=2)
    while rows.min() < 1e-12:
        rows = rng.dirichlet(np.ones(dim), size=2)
    return rows


def _timed(fn):
    t0 = time.perf_counter_ns()
    out = fn()
    return out, time.perf_counter_ns() - t0


def run_table1(
    config: RunConfig,
    gb_epsilon: float = GB_CAT_EPSILON,
    timing: bool = True,
) -> List[BenchRecord]:
    """Score JFR and GB against the numerical Jeffreys centroid per dimension."""
    records: List[BenchRecord] = []
    for dim in config.dims:
        eps = {"jfr": np.empty(config.trials), "gb": np.empty(config.trials)}
        tv = {"jfr": np.empty(config.trials), "gb": np.empty(config.trials)}
        times = {"jeffreys": 0, "jfr": 0, "gb": 0}
        for trial in range(config.trials):
            hset = HistogramSet.uniform(sample_histogram_pair(config.seed, dim, trial))
            ref, t_ref = _timed(lambda: jeffreys_centroid_cat(hset, config.epsilon))
            jfr, t_jfr = _timed(lambda: jfr_center_cat(hset))
            (gb, _), t_gb = _timed(lambda: gb_center_cat(hset, gb_epsilon))
            times["jeffreys"] += t_ref
            times["jfr"] += t_jfr
            times["gb"] += t_gb
            eps["jfr"][trial] = approximation_factor(hset, jfr, ref.center)
            eps["gb"][trial] = approximation_factor(hset, gb, ref.center)
            tv["jfr"][trial] = tv_cat(jfr, ref.center)
            tv["gb"][trial] = tv_cat(gb, ref.center)
        for method in ("jfr", "gb"):
            if timing:
                avg_ns = int(round(times[method] / config.trials))
                speedup = times["jeffreys"] / max(times[method], 1)
            else:
                avg_ns, speedup = 0, 0.0
            records.append(
                BenchRecord(
                    dim=dim,
                    method=method,
                    avg_info_eps=float(eps[method].mean()),
                    max_info_eps=float(eps[method].max()),
                    avg_tv=float(tv[method].mean()),
                    max_tv=float(tv[method].max()),
                    avg_time_ns=avg_ns,
                    speedup_vs_jeffreys=float(speedup),
                )
            )
    return records


def _alpha_flagged(alpha: float) -> bool:
    # The second histogram is built from 1-alpha; flag when the float
    # representation distorts alpha materially or underflows the half bins.
    if alpha / 2.0 == 0.0:
        return True
    recovered = 1.0 - (1.0 - alpha)
    return abs(recovered / alpha - 1.0) > 1e-3


def run_table2(
    alphas: Sequence[float] = DEFAULT_ALPHAS,
    epsilon: float = 1e-10,
    gb_epsilon: float = GB_CAT_EPSILON,
    timing: bool = True,
) -> List[Table2Row]:
    """Deterministic two-histogram benchmark over a list of alphas."""
    rows: List[Table2Row] = []
    for alpha in alphas:
        if not (0.0 < alpha < 1.0):
            raise DomainError(f"alpha must lie in (0, 1), got {alpha!r}")
        flagged = _alpha_flagged(alpha)
        hset = HistogramSet.uniform(
            np.array([[1 / 3, 1 / 3, 1 / 3], [1.0 - alpha, alpha / 2, alpha / 2]])
        )
        ref, t_ref = _timed(lambda: jeffreys_centroid_cat(hset, epsilon))
        jfr, t_jfr = _timed(lambda: jfr_center_cat(hset))
        (gb, _), t_gb = _timed(lambda: gb_center_cat(hset, gb_epsilon))
        # identical inputs have zero reference loss; every center coincides
        degenerate = jeffreys_loss_cat(hset, ref.center) < 1e-15
        for method, center, t in (("jfr", jfr, t_jfr), ("gb", gb, t_gb)):
            rows.append(
                Table2Row(
                    alpha=alpha,
                    method=method,
                    info_eps=0.0
                    if degenerate
                    else approximation_factor(hset, center, ref.center),
                    tv_eps=tv_cat(center, ref.center),
                    time_ns=t if timing else 0,
                    speedup_vs_jeffreys=(t_ref / max(t, 1)) if timing else 0.0,
                    flagged=flagged,
                )
            )
    return rows


def _sci(x: float) -> str:
    return f"{x:.5e}"


def table1_csv(records: Sequence[BenchRecord]) -> str:
    lines = [TABLE1_HEADER]
    for r in records:
        lines.append(
            f"{r.dim},{r.method},{_sci(r.avg_info_eps)},{_sci(r.max_info_eps)},"
            f"{_sci(r.avg_tv)},{_sci(r.max_tv)},{r.avg_time_ns},{_sci(r.speedup_vs_jeffreys)}"
        )
    return "\n".join(lines) + "\n"


def table2_csv(rows: Sequence[Table2Row]) -> str:
    lines = [TABLE2_HEADER]
    for r in rows:
        lines.append(
            f"{_sci(r.alpha)},{r.method},{_sci(r.info_eps)},{_sci(r.tv_eps)},"
            f"{r.time_ns},{_sci(r.speedup_vs_jeffreys)},{int(r.flagged)}"
        )
    return "\n".join(lines) + "\n"

"""Benchmark sweeps over the diamond and polygon-tower families."""

from __future__ import annotations

import csv
import dataclasses
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

from .environments import gen_diamond, gen_polygon_tower, polygon_tower_optimal
from .setcover import DEFAULT_NODE_BUDGET
from .tie import optimal_teach

log = logging.getLogger(__name__)

DEFAULT_TOWER_SIZES = (3, 4, 5, 6, 7, 8, 12, 16, 20, 24, 32, 44)
DEFAULT_DIAMOND_SIZES = tuple(range(1, 7))
EXACT_LIMIT = 12  # exact cover is opt-in from this n upwards


@dataclass
class BenchRecord:
    instance_label: str
    n: int
    num_states: Optional[int] = None
    num_diff_vectors: Optional[int] = None
    num_dedup_rays: Optional[int] = None
    num_extreme_rays: Optional[int] = None
    td_exact: Optional[int] = None
    td_greedy: Optional[int] = None
    td_ground_truth: Optional[int] = None
    runtime_ms_total: Optional[float] = None
    runtime_ms_diff: Optional[float] = None
    runtime_ms_lp: Optional[float] = None
    runtime_ms_cover: Optional[float] = None
    trials: int = 1
    seed: int = 0
    error: str = ""


CSV_COLUMNS = tuple(f.name for f in dataclasses.fields(BenchRecord))

_GENERATORS = {"diamond": gen_diamond, "tower": gen_polygon_tower}


def bench_one(family: str, n: int, trials: int = 3, seed: int = 0,
              exact: Optional[bool] = None,
              node_budget: int = DEFAULT_NODE_BUDGET) -> BenchRecord:
    """Time greedy TIE on one instance (mean over ``trials``), plus an exact run.

    Errors are caught and stored in the record's ``error`` field.
    """
    rec = BenchRecord(f"{family}-{n}", n, trials=trials, seed=seed)
    try:
        if trials < 1:
            raise ValueError("trials must be >= 1")
        inst = _GENERATORS[family](n)
        rec.num_states = inst.num_states
        runs = [optimal_teach(inst, "greedy") for _ in range(trials)]
        first = runs[0]
        rec.num_diff_vectors = first.stats["num_diff_vectors"]
        rec.num_dedup_rays = first.stats["num_dedup_rays"]
        rec.num_extreme_rays = first.stats["num_extreme_rays"]
        rec.td_greedy = first.size
        for key in ("runtime_ms_total", "runtime_ms_diff", "runtime_ms_lp", "runtime_ms_cover"):
            setattr(rec, key, sum(r.stats[key] for r in runs) / trials)
        if exact is None:
            exact = n < EXACT_LIMIT
        if exact:
            rec.td_exact = optimal_teach(inst, "exact", node_budget=node_budget).size
        if family == "tower":
            rec.td_ground_truth = len(polygon_tower_optimal(n))
    except Exception as exc:  # recorded per row, the sweep goes on
        log.warning("bench %s n=%s failed: %s", family, n, exc)
        rec.error = f"{type(exc).__name__}: {exc}"
    return rec


def run_bench(family: str, sizes: Iterable[int], trials: int = 3, seed: int = 0,
              exact: Optional[bool] = None,
              node_budget: int = DEFAULT_NODE_BUDGET) -> list[BenchRecord]:
    if family not in _GENERATORS:
        raise ValueError(f"unknown family {family!r}; choose from {sorted(_GENERATORS)}")
    return [bench_one(family, n, trials, seed, exact, node_budget) for n in sizes]


def _fmt(x):
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.6g}"
    return x


def write_csv(records: Iterable[BenchRecord], path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for rec in records:
            writer.writerow([_fmt(getattr(rec, c)) for c in CSV_COLUMNS])


def read_csv(path) -> list[dict]:
    with open(path, newline="") as fh:
        return list(csv.DictReader(fh))


def plot_data_path(csv_path) -> Path:
    return Path(csv_path).with_suffix(".dat")


def write_plot_data(records: Iterable[BenchRecord], path) -> None:
    """Two whitespace-separated columns ``n runtime_ms_total`` for gnuplot."""
    with open(path, "w") as fh:
        fh.write("# n runtime_ms_total\n")
        for rec in records:
            if rec.runtime_ms_total is not None:
                fh.write(f"{rec.n} {rec.runtime_ms_total:.6g}\n")


def parse_sizes(text: str) -> list[int]:
    """``"3..8"``, ``"3,4,12"`` or a mix such as ``"1..3,8"``; empty string gives []."""
    out = []
    for part in filter(None, (p.strip() for p in text.split(","))):
        if ".." in part:
            lo, hi = part.split("..", 1)
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    return out

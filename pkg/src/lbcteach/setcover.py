"""Unit-cost set cover over a finite universe ``{0, ..., m-1}``.

Subsets are keyed by state id; the mapping's iteration order is the
tie-break order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Hashable, Mapping

from .errors import BudgetExceeded, Uncoverable

DEFAULT_NODE_BUDGET = 10**7


@dataclass(eq=False)
class CoverInstance:
    universe_size: int
    subsets: dict

    def __post_init__(self):
        m = int(self.universe_size)
        if m < 0:
            raise ValueError("universe_size must be nonnegative")
        subsets = {}
        for key, elems in self.subsets.items():
            fs = frozenset(int(e) for e in elems)
            bad = [e for e in fs if not 0 <= e < m]
            if bad:
                raise ValueError(f"subset {key!r} has out-of-range elements {sorted(bad)}")
            subsets[key] = fs
        self.universe_size = m
        self.subsets = subsets

    def uncovered(self) -> list[int]:
        seen = set().union(*self.subsets.values()) if self.subsets else set()
        return [e for e in range(self.universe_size) if e not in seen]


@dataclass(eq=False)
class CoverSolution:
    chosen: tuple
    covered_by: dict
    optimal: bool = False
    nodes: int = 0

    def __len__(self):
        return len(self.chosen)


def _require_coverable(ci: CoverInstance):
    missing = ci.uncovered()
    if missing:
        raise Uncoverable(missing)


def _solution(ci: CoverInstance, chosen, optimal=False, nodes=0) -> CoverSolution:
    covered_by = {}
    for key in chosen:
        for e in sorted(ci.subsets[key]):
            covered_by.setdefault(e, key)
    assert len(covered_by) == ci.universe_size, "chosen subsets do not cover the universe"
    return CoverSolution(tuple(chosen), dict(sorted(covered_by.items())), optimal, nodes)


def is_cover(ci: CoverInstance, chosen) -> bool:
    got = set()
    for key in chosen:
        got |= ci.subsets[key]
    return len(got) == ci.universe_size


def greedy_cover(ci: CoverInstance) -> CoverSolution:
    """Repeatedly take the subset covering the most uncovered elements.

    Ties go to the subset that comes first in ``ci.subsets``.
    """
    _require_coverable(ci)
    keys = list(ci.subsets)
    remaining = set(range(ci.universe_size))
    chosen = []
    while remaining:
        best, best_gain = None, 0
        for key in keys:
            gain = len(ci.subsets[key] & remaining)
            if gain > best_gain:
                best, best_gain = key, gain
        chosen.append(best)
        remaining -= ci.subsets[best]
    return _solution(ci, chosen)


def exact_cover(ci: CoverInstance, budget: int = DEFAULT_NODE_BUDGET) -> CoverSolution:
    """Minimum cover by branch and bound, seeded with the greedy cover.

    Branches on the uncovered element with the fewest covering subsets and
    prunes with ``ceil(#uncovered / largest subset)``.  Raises
    :class:`BudgetExceeded` (carrying the incumbent) after ``budget`` nodes.
    """
    greedy = greedy_cover(ci)
    m = ci.universe_size
    if m == 0:
        return CoverSolution((), {}, True, 0)

    keys = list(ci.subsets)
    masks = [sum(1 << e for e in ci.subsets[k]) for k in keys]
    max_size = max(len(ci.subsets[k]) for k in keys)
    covering = [[i for i, mk in enumerate(masks) if mk >> e & 1] for e in range(m)]
    degree = [len(c) for c in covering]

    best = [keys.index(k) for k in greedy.chosen]
    nodes = 0

    class _Stop(Exception):
        pass

    def dfs(uncovered: int, picked: list):
        nonlocal best, nodes
        nodes += 1
        if nodes > budget:
            raise _Stop
        if uncovered == 0:
            if len(picked) < len(best):
                best = list(picked)
            return
        bound = len(picked) + math.ceil(uncovered.bit_count() / max_size)
        if bound >= len(best):
            return
        elem, fewest = -1, None
        u = uncovered
        while u:
            low = u & -u
            e = low.bit_length() - 1
            if fewest is None or degree[e] < fewest:
                elem, fewest = e, degree[e]
            u ^= low
        branches = sorted(covering[elem], key=lambda i: (-(masks[i] & uncovered).bit_count(), i))
        for i in branches:
            picked.append(i)
            dfs(uncovered & ~masks[i], picked)
            picked.pop()

    try:
        dfs((1 << m) - 1, [])
    except _Stop:
        incumbent = _solution(ci, [keys[i] for i in sorted(best)], False, nodes)
        raise BudgetExceeded(incumbent, nodes) from None
    return _solution(ci, [keys[i] for i in sorted(best)], True, nodes)

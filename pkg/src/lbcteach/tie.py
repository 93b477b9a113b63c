"""Teach using Iterative Elimination, plus an independent LP verifier and brute-force oracle."""

from __future__ import annotations

import enum
import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.spatial import cKDTree

from .cones import EPS_RAY, RaySet, dedupe_rays, minimal_extreme
from .core import (DemonstrationSet, TeachingInstance, check_realizability,
                   difference_arrays)
from .errors import BudgetExceeded, NoneFound, NumericalFailure
from .lp import LinearProgram, Status, solve
from .setcover import DEFAULT_NODE_BUDGET, CoverInstance, exact_cover, greedy_cover


class Method(enum.Enum):
    GREEDY = "greedy"
    EXACT = "exact"


@dataclass(eq=False)
class TeachingResult:
    teaching_set: DemonstrationSet
    extreme_rays: RaySet
    certificate: dict            # ray index -> (state, alt action)
    method: Method
    optimal: bool
    stats: dict = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.teaching_set)

    def to_dict(self) -> dict:
        return {
            "teaching_states": list(self.teaching_set.teach_states),
            "size": self.size,
            "method": self.method.value,
            "optimal": self.optimal,
            "extreme_rays": [r.direction.tolist() for r in self.extreme_rays],
            "certificate": [{"ray": i, "state": s, "alt_action": b}
                            for i, (s, b) in sorted(self.certificate.items())],
            "stats": dict(self.stats),
        }


def _ray_index_per_vector(vecs: np.ndarray, rays: RaySet) -> np.ndarray:
    """Index into ``rays`` of the ray each row of ``vecs`` lies on, -1 if none."""
    n = len(vecs)
    out = np.full(n, -1, dtype=np.int64)
    if n == 0 or len(rays) == 0:
        return out
    if rays.exact and vecs.dtype.kind in "iu":
        v = vecs.astype(np.int64)
        red = v // np.gcd.reduce(np.abs(v), axis=1)[:, None]
        lookup = {r.int_direction: i for i, r in enumerate(rays)}
        for k, row in enumerate(map(tuple, red.tolist())):
            out[k] = lookup.get(row, -1)
        return out
    unit = vecs / np.linalg.norm(vecs, axis=1)[:, None]
    dist, idx = cKDTree(rays.directions()).query(unit, distance_upper_bound=EPS_RAY)
    hit = np.isfinite(dist)
    out[hit] = idx[hit]
    return out


def _coverage(instance: TeachingInstance, rays: RaySet, diffs=None):
    if diffs is None:
        diffs = difference_arrays(instance)
    ray_of = _ray_index_per_vector(diffs.vecs, rays)
    subsets = {s: set() for s in instance.states}
    for i, r in zip(diffs.state_idx.tolist(), ray_of.tolist()):
        if r >= 0:
            subsets[instance.states[i]].add(r)
    return CoverInstance(len(rays), subsets), ray_of, diffs


def build_coverage_sets(instance: TeachingInstance, rays: RaySet) -> CoverInstance:
    """For every state, the indices of ``rays`` hit by one of its difference vectors."""
    return _coverage(instance, rays)[0]


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1e3


def optimal_teach(instance: TeachingInstance, method=Method.EXACT,
                  node_budget: int = DEFAULT_NODE_BUDGET,
                  check: bool = True) -> TeachingResult:
    """Run the full pipeline and return a teaching set with its ray certificate.

    ``method="exact"`` solves the ray cover with branch and bound (size is the
    teaching dimension unless the node budget runs out); ``"greedy"`` uses the
    greedy cover.
    """
    method = Method(method)
    if check:
        check_realizability(instance)
    t_start = time.perf_counter()

    t0 = time.perf_counter()
    diffs = difference_arrays(instance)
    records = diffs.records(instance)
    t_diff = _ms(t0)

    t0 = time.perf_counter()
    stats = {"lp_calls": 0}
    dedup = dedupe_rays(records)
    extreme = minimal_extreme(dedup, stats)
    t_lp = _ms(t0)

    t0 = time.perf_counter()
    ci, ray_of, _ = _coverage(instance, extreme, diffs)
    optimal = False
    if method is Method.EXACT:
        try:
            sol = exact_cover(ci, node_budget)
            optimal = True
        except BudgetExceeded as exc:
            sol = exc.incumbent
    else:
        sol = greedy_cover(ci)
    t_cover = _ms(t0)

    chosen = set(sol.chosen)
    teach = DemonstrationSet(s for s in instance.states if s in chosen)
    certificate = {}
    for k, r in enumerate(ray_of.tolist()):
        if r < 0 or r in certificate:
            continue
        s = instance.states[diffs.state_idx[k]]
        if sol.covered_by.get(r) == s:
            certificate[r] = (s, instance.actions[diffs.alt_idx[k]])

    stats.update({
        "num_diff_vectors": len(diffs),
        "num_dedup_rays": len(dedup),
        "num_extreme_rays": len(extreme),
        "cover_nodes": sol.nodes,
        "runtime_ms_diff": t_diff,
        "runtime_ms_lp": t_lp,
        "runtime_ms_cover": t_cover,
        "runtime_ms_total": _ms(t_start),
    })
    return TeachingResult(teach, extreme, certificate, method, optimal, stats)


class _Valid:
    valid = True

    def __bool__(self):
        return True

    def __repr__(self):
        return "VALID"


VALID = _Valid()


@dataclass(eq=False)
class Counterexample:
    """A weight vector consistent with the demonstrations that fails at ``state``."""

    state: object
    alt_action: object
    w: np.ndarray
    valid = False

    def __bool__(self):
        return False

    def to_dict(self) -> dict:
        return {"valid": False, "state": self.state, "alt_action": self.alt_action,
                "w": self.w.tolist()}


def _unit_rows(vecs) -> np.ndarray:
    v = np.asarray(vecs, dtype=float)
    if len(v) == 0:
        return v
    return v / np.linalg.norm(v, axis=1)[:, None]


def _direction_groups(unit: np.ndarray):
    """Group unit rows that agree to 12 decimals, numbered by first occurrence."""
    rounded = np.round(unit, 12) + 0.0
    _, first, inv = np.unique(rounded, axis=0, return_index=True, return_inverse=True)
    inv = inv.reshape(-1)
    order = np.argsort(first, kind="stable")
    rank = np.empty_like(order)
    rank[order] = np.arange(order.size)
    return rank[inv], first[order]


def _violation_lp(A: np.ndarray, psi: np.ndarray):
    """Find ``w`` with ``A w >= 1`` and ``<w, psi> <= 0``; None if infeasible."""
    rows = np.vstack([A, -psi[None, :]]) if len(A) else -psi[None, :]
    rhs = np.concatenate([np.ones(len(A)), [0.0]])
    out = solve(LinearProgram(np.zeros(psi.size), rows, rhs))
    if out.status is Status.INFEASIBLE:
        return None
    if out.status is Status.OPTIMAL:
        return out.w + 0.0  # no signed zeros in reports
    raise NumericalFailure(f"feasibility LP reported {out.status.value}")


def verify_teaching_set(instance: TeachingInstance, T, threads: int = 1):
    """Check that demonstrating ``T`` pins the target action at every state.

    For each state ``s`` and alternative ``b`` an LP looks for ``w`` that is
    strictly consistent with ``T`` yet has ``<w, psi_sb> <= 0``.  Returns
    ``VALID`` or the first :class:`Counterexample` in (state, action) order.
    Positive rescaling never changes one of these LPs, so (s, b) pairs whose
    difference vectors share a direction are solved once.
    """
    if not isinstance(T, DemonstrationSet):
        T = DemonstrationSet(T)
    A = _unit_rows(difference_arrays(instance, T).vecs)
    if len(A):
        A = np.unique(np.round(A, 15), axis=0)
    allv = difference_arrays(instance)
    if len(allv) == 0:
        return VALID
    unit = _unit_rows(allv.vecs)
    group, first = _direction_groups(unit)

    covered = set()
    if len(A):
        known = {tuple(r) for r in np.round(A, 12).tolist()}
        covered = {g for g, k in enumerate(first.tolist())
                   if tuple(np.round(unit[k], 12).tolist()) in known}

    def check(g):
        if g in covered:
            return None
        return _violation_lp(A, unit[first[g]])

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(check, range(len(first))))
    else:
        results = None
    for g in range(len(first)):
        w = results[g] if results is not None else check(g)
        if w is not None:
            k = int(first[g])
            return Counterexample(instance.states[allv.state_idx[k]],
                                  instance.actions[allv.alt_idx[k]], w)
    return VALID


MAX_BRUTE_FORCE_STATES = 20


def brute_force_min_teaching(instance: TeachingInstance,
                             max_card: Optional[int] = None) -> DemonstrationSet:
    """Smallest valid teaching set by exhaustive search (test oracle).

    Candidates are tried by size, then lexicographically in state order.
    Counterexample witnesses from failed candidates are reused to discard
    later candidates without an LP when they still apply.
    """
    n = instance.num_states
    if n > MAX_BRUTE_FORCE_STATES:
        raise ValueError(f"brute force limited to {MAX_BRUTE_FORCE_STATES} states, got {n}")
    if max_card is None:
        max_card = n
    per_state = [difference_arrays(instance, [s]).vecs.astype(float) for s in instance.states]
    witnesses = []        # (w, psi it violates)

    def refuted(idx) -> bool:
        if not idx:
            return False
        rows = np.vstack([per_state[i] for i in idx])
        for w, psi in witnesses:
            if psi @ w <= 0 and np.min(rows @ w) > 1e-9 * np.linalg.norm(w):
                return True
        return False

    for k in range(0, max_card + 1):
        for idx in itertools.combinations(range(n), k):
            if refuted(idx):
                continue
            T = [instance.states[i] for i in idx]
            res = verify_teaching_set(instance, T)
            if res:
                return DemonstrationSet(T)
            psi = instance.feature(res.state, instance.target_action(res.state)) \
                - instance.feature(res.state, res.alt_action)
            witnesses.append((res.w, np.asarray(psi, dtype=float)))
    raise NoneFound(f"no teaching set with at most {max_card} states")

"""Exit criteria.  Each test prints one PASS/FAIL line; see the terminal summary."""

import functools
import math
import time

import numpy as np
import pytest

from lbcteach import (SetCoverSpec, bench, brute_force_min_teaching, dedupe_rays,
                      difference_vectors, gen_polygon_tower, gen_random_realizable,
                      in_primal_cone, minimal_extreme, optimal_teach,
                      polygon_tower_optimal, reduce_set_cover, verify_teaching_set)

from oracles import diamond_directions, exhaustive_set_cover, polar_extremes_2d, random_pointed_vectors

pytestmark = pytest.mark.acceptance

N_RANDOM_INSTANCES = 200
N_VECTOR_SETS = 200
N_COVERS = 100


def random_instance_params(seed):
    rng = np.random.default_rng(10_000 + seed)
    return int(rng.integers(1, 4)), int(rng.integers(1, 9)), int(rng.integers(2, 5))


def random_cover_spec(seed):
    rng = np.random.default_rng(20_000 + seed)
    m = int(rng.integers(1, 11))
    k = int(rng.integers(1, 9))
    subsets = [set((rng.choice(m, size=int(rng.integers(1, m + 1)), replace=False) + 1).tolist())
               for _ in range(k)]
    for e in set(range(1, m + 1)) - set().union(*subsets):
        subsets[int(rng.integers(k))].add(e)
    return SetCoverSpec(m, tuple(tuple(sorted(s)) for s in subsets))


@functools.cache
def solved(kind, key):
    """(instance, exact result, greedy result), shared across criteria."""
    if kind == "tower":
        inst = gen_polygon_tower(key)
    elif kind == "random":
        inst = gen_random_realizable(*random_instance_params(key), seed=key)
    else:
        inst = reduce_set_cover(random_cover_spec(key))
    return inst, optimal_teach(inst, "exact"), optimal_teach(inst, "greedy")


def test_diamond_teaching_dimension(diamond6, report):
    t0 = time.perf_counter()
    res = optimal_teach(diamond6, "exact")
    ok_ver = bool(verify_teaching_set(diamond6, res.teaching_set))
    elapsed = time.perf_counter() - t0
    ok = res.size == 2 and res.optimal and ok_ver and elapsed < 120
    report("diamond teaching dimension = 2", ok,
           f"T={list(res.teaching_set)} verified={ok_ver} {elapsed:.2f}s")
    assert ok


def test_diamond_extreme_rays(diamond6, report):
    rays = minimal_extreme(dedupe_rays(difference_vectors(diamond6)))
    lo, hi = polar_extremes_2d(diamond_directions(6))
    expected = sorted([np.array(lo) / np.hypot(*lo), np.array(hi) / np.hypot(*hi)], key=tuple)
    got = sorted(rays.directions(), key=tuple)
    err = max((np.abs(g - e).max() for g, e in zip(got, expected)), default=np.inf)
    ok = (len(rays) == 2 and {lo, hi} == {(1, 0), (-5, 1)} and err <= 1e-9)
    report("diamond extreme rays [1,0], [-5,1]/sqrt(26)", ok,
           f"{len(rays)} rays, max err {err:.1e}")
    assert ok


def test_polygon_tower_ground_truth(report):
    t0 = time.perf_counter()
    bad = []
    for n in range(3, 9):
        truth = polygon_tower_optimal(n)
        _, exact, greedy = solved("tower", n)
        if set(exact.teaching_set) != truth or set(greedy.teaching_set) != truth:
            bad.append(n)
    elapsed = time.perf_counter() - t0
    ok = not bad and elapsed < 60 and polygon_tower_optimal(6) == {4, 5, 6}
    report("polygon tower n=3..8 exact == greedy == ground truth", ok,
           f"mismatches={bad} {elapsed:.2f}s")
    assert ok


def test_oracle_equivalence(report):
    bad = []
    for seed in range(N_RANDOM_INSTANCES):
        inst, exact, _ = solved("random", seed)
        truth = len(brute_force_min_teaching(inst))
        if exact.size != truth or not verify_teaching_set(inst, exact.teaching_set):
            bad.append(seed)
    ok = not bad
    report(f"exact TIE == brute force on {N_RANDOM_INSTANCES} random instances", ok,
           f"discrepancies={bad}")
    assert ok


def test_cone_properties(report):
    bad = []
    for seed in range(N_VECTOR_SETS):
        rng = np.random.default_rng(30_000 + seed)
        d, k = int(rng.integers(1, 4)), int(rng.integers(1, 16))
        vecs = random_pointed_vectors(rng, d, k, integer=bool(seed % 2))
        out = minimal_extreme(dedupe_rays(list(vecs)))
        dirs = out.directions()
        shuffled = minimal_extreme(dedupe_rays(list(vecs[rng.permutation(k)]))).directions()
        again = minimal_extreme(out).directions()
        same = (len(shuffled) == len(dirs) == len(again)
                and {tuple(np.round(v, 9)) for v in dirs} == {tuple(np.round(v, 9)) for v in shuffled}
                and np.allclose(again, dirs, atol=1e-12))
        covered = all(in_primal_cone(v, dirs, 1e-7) for v in vecs)
        minimal = all(not in_primal_cone(dirs[i], np.delete(dirs, i, axis=0), 1e-7)
                      for i in range(len(dirs)))
        if not (same and covered and minimal):
            bad.append(seed)
    ok = not bad
    report(f"cone properties on {N_VECTOR_SETS} vector sets", ok, f"failures={bad}")
    assert ok


def test_reduction_faithfulness(report):
    bad = []
    for seed in range(N_COVERS):
        sc = random_cover_spec(seed)
        _, exact, _ = solved("cover", seed)
        opt = exhaustive_set_cover(sc.universe_size,
                                   {i: {e - 1 for e in s} for i, s in enumerate(sc.subsets)})
        if exact.size != opt:
            bad.append(seed)
    ok = not bad
    report(f"reduction TD == set cover optimum on {N_COVERS} covers", ok, f"mismatches={bad}")
    assert ok


def test_greedy_ratio(diamond6, diamond6_exact, report):
    cases = [(diamond6, diamond6_exact, optimal_teach(diamond6, "greedy"))]
    cases += [solved("tower", n) for n in range(3, 9)]
    cases += [solved("random", s) for s in range(N_RANDOM_INSTANCES)]
    cases += [solved("cover", s) for s in range(N_COVERS)]
    # greedy grabs the big middle subset first and needs 3 where 2 suffice
    trap = reduce_set_cover(SetCoverSpec(6, ((1, 2, 3, 4), (1, 2, 5), (3, 4, 6))))
    cases.append((trap, optimal_teach(trap, "exact"), optimal_teach(trap, "greedy")))
    worst, bad = 0.0, 0
    for inst, exact, greedy in cases:
        bound = (1 + math.log(max(inst.num_actions - 1, 2))) * exact.size
        if greedy.size > bound + 1e-12:
            bad += 1
        if exact.size:
            worst = max(worst, greedy.size / exact.size)
    ok = bad == 0
    report("greedy <= (1 + ln max(|A|-1, 2)) x exact", ok,
           f"{len(cases)} instances, violations={bad}, worst ratio {worst:.2f}")
    assert ok


def test_diamond_scaling(report):
    t0 = time.perf_counter()
    records = bench.run_bench("diamond", range(1, 7))
    elapsed = time.perf_counter() - t0
    times = [r.runtime_ms_total for r in records]
    errors = [r.error for r in records if r.error]
    ok = (not errors and all(t is not None for t in times)
          and all(a < b for a, b in zip(times, times[1:])) and elapsed < 300)
    report("diamond bench n=1..6 monotone runtime", ok,
           "ms=" + ",".join(f"{t:.1f}" if t is not None else "-" for t in times)
           + f" wall {elapsed:.1f}s")
    assert ok

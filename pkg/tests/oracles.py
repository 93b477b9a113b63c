"""Slow, independent reference computations used as test oracles.

None of these go through lbcteach's LP layer.
"""

import itertools
import math

import numpy as np
from scipy.optimize import lsq_linear


def nnls_in_cone(x, generators, tol=1e-7):
    """Cone membership by bounded-variable least squares (lam >= 0).

    scipy 1.15's ``nnls`` can stop at non-optimal points, so BVLS is used and
    the residual is recomputed from the returned coefficients.
    """
    x = np.asarray(x, dtype=float)
    G = np.asarray(generators, dtype=float).reshape(-1, x.size)
    if len(G) == 0:
        return False
    lam = lsq_linear(G.T, x, bounds=(0, np.inf), method="bvls", tol=1e-13).x
    resid = np.linalg.norm(G.T @ lam - x)
    return resid <= tol * max(1.0, np.linalg.norm(x))


def brute_force_extreme(vectors):
    """Indices of vectors that are not in the cone of the others, one per direction.

    Duplicated directions are collapsed first (keeping the first occurrence),
    then each remaining vector is tested against all other survivors.
    """
    vecs = np.asarray(vectors, dtype=float)
    unit = vecs / np.linalg.norm(vecs, axis=1)[:, None]
    reps = []
    for k in range(len(unit)):
        if not any(np.linalg.norm(unit[k] - unit[r]) < 1e-9 for r in reps):
            reps.append(k)
    return [k for k in reps
            if not nnls_in_cone(unit[k], [unit[r] for r in reps if r != k])]


def exhaustive_set_cover(universe_size, subsets):
    """Size of the smallest cover by enumerating every subfamily."""
    keys = list(subsets)
    full = set(range(universe_size))
    for k in range(len(keys) + 1):
        for combo in itertools.combinations(keys, k):
            got = set()
            for key in combo:
                got |= set(subsets[key])
            if got == full:
                return k
    return None


def farey_ray_count(n):
    """Distinct angles a/s mod 1 with 2 <= s <= n: 1 + sum of Euler phi(2..n)."""
    def phi(q):
        return sum(1 for k in range(1, q + 1) if math.gcd(k, q) == 1)
    return 1 + sum(phi(q) for q in range(2, n + 1))


def diamond_directions(n):
    """Reduced integer difference directions of the diamond game, by loops."""
    edge = [0, 3, 4, 5, 6]
    dirs = set()
    for board in itertools.product(edge, repeat=n):
        if not any(board):
            continue
        top = max(board)
        t = max(i for i, e in enumerate(board) if e == top)
        for b in range(n):
            if b == t:
                continue
            da, de = t - b, board[t] - board[b]
            g = math.gcd(abs(da), abs(de))
            dirs.add((da // g, de // g))
    return dirs


def polar_extremes_2d(directions):
    """The two boundary directions of a pointed 2-D cone given by direction tuples."""
    ang = {d: math.atan2(d[1], d[0]) for d in directions}
    # all diamond directions have angle in [0, pi)
    return min(ang, key=ang.get), max(ang, key=ang.get)


def random_pointed_vectors(rng, d, k, integer):
    """``k`` nonzero vectors with positive inner product against a hidden direction."""
    w = rng.standard_normal(d)
    w /= np.linalg.norm(w)
    out = []
    while len(out) < k:
        v = rng.integers(-4, 5, size=d) if integer else rng.standard_normal(d)
        if np.any(v) and v @ w > 0.2:
            out.append(v)
    return np.array(out)

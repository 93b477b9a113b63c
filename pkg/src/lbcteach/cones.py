"""Rays of finitely generated cones: deduplication, extreme-ray elimination, membership."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from .core import DifferenceVector
from .errors import SpuriousStatus, ZeroVector
from .lp import TAU_POS, LinearProgram, Status, solve

EPS_RAY = 1e-9
MEMBERSHIP_TOL = 1e-7


class Verdict(enum.Enum):
    KEEP = "keep"
    ELIMINATE = "eliminate"


KEEP = Verdict.KEEP
ELIMINATE = Verdict.ELIMINATE


@dataclass(eq=False)
class Ray:
    """An open ray ``{c * direction : c > 0}`` and the input vectors lying on it.

    ``direction`` is always a float unit vector.  On the exact path
    ``int_direction`` additionally holds the gcd-reduced integer generator.
    """

    direction: np.ndarray
    members: list = field(default_factory=list)
    int_direction: Optional[tuple] = None

    @property
    def key(self):
        if self.int_direction is not None:
            return self.int_direction
        return tuple(self.direction.tolist())


@dataclass(eq=False)
class RaySet:
    rays: tuple = ()

    def __post_init__(self):
        self.rays = tuple(self.rays)

    def __len__(self):
        return len(self.rays)

    def __iter__(self):
        return iter(self.rays)

    def __getitem__(self, i):
        return self.rays[i]

    @property
    def exact(self) -> bool:
        return bool(self.rays) and all(r.int_direction is not None for r in self.rays)

    def directions(self, d: Optional[int] = None) -> np.ndarray:
        if not self.rays:
            return np.zeros((0, d or 0))
        return np.array([r.direction for r in self.rays])


def _vec(item) -> np.ndarray:
    return np.asarray(item.vec if isinstance(item, DifferenceVector) else item)


def canonical_groups(vecs: np.ndarray):
    """Group the rows of ``vecs`` by open ray.

    Returns ``(inverse, reps, int_dirs)``: ``inverse[k]`` is the group of row
    ``k``, groups are numbered by first occurrence, ``reps[g]`` is the first
    row of group ``g`` and ``int_dirs`` the reduced integer generators (or
    ``None`` on the float path).
    """
    vecs = np.asarray(vecs)
    n = vecs.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64), None
    if not np.all(np.any(vecs != 0, axis=1)):
        raise ZeroVector("zero vector has no direction")

    if vecs.dtype.kind in "iu":
        v = vecs.astype(np.int64)
        g = np.gcd.reduce(np.abs(v), axis=1)
        red = v // g[:, None]
        uniq, first, inv = np.unique(red, axis=0, return_index=True, return_inverse=True)
        inv = inv.reshape(-1)
        order = np.argsort(first, kind="stable")
        rank = np.empty_like(order)
        rank[order] = np.arange(order.size)
        return rank[inv], first[order], uniq[order]

    unit = vecs / np.linalg.norm(vecs, axis=1)[:, None]
    tree = cKDTree(unit)
    inverse = np.full(n, -1, dtype=np.int64)
    reps = []
    for k in range(n):
        if inverse[k] >= 0:
            continue
        gid = len(reps)
        reps.append(k)
        near = np.asarray(tree.query_ball_point(unit[k], EPS_RAY), dtype=np.int64)
        near = near[inverse[near] < 0]
        inverse[near] = gid
        inverse[k] = gid
    return inverse, np.array(reps, dtype=np.int64), None


def dedupe_rays(vectors: Sequence) -> RaySet:
    """Group nonzero vectors (or :class:`DifferenceVector` records) by open ray.

    Integer input is grouped exactly by gcd reduction; float input by unit
    direction within ``EPS_RAY``.  Opposite vectors give distinct rays.  Rays
    are ordered by the first vector that lands on them.
    """
    items = list(vectors)
    if not items:
        return RaySet(())
    vecs = np.array([_vec(it) for it in items])
    if vecs.ndim != 2:
        raise ValueError("vectors must share one dimension")
    inverse, reps, int_dirs = canonical_groups(vecs)
    buckets = [[] for _ in range(len(reps))]
    for k, gid in enumerate(inverse.tolist()):
        buckets[gid].append(items[k])
    rays = []
    for gid, rep in enumerate(reps):
        if int_dirs is not None:
            idir = int_dirs[gid].astype(float)
            rays.append(Ray(idir / np.linalg.norm(idir), buckets[gid],
                            tuple(int(c) for c in int_dirs[gid])))
        else:
            v = vecs[rep].astype(float)
            rays.append(Ray(v / np.linalg.norm(v), buckets[gid]))
    return RaySet(rays)


def extreme_ray_lp(x, others):
    """Solve ``min <w, x>`` s.t. ``<w, o> >= 1`` for every row ``o`` of ``others``."""
    others = np.asarray(others, dtype=float)
    return solve(LinearProgram(np.asarray(x, dtype=float), others, np.ones(len(others))))


def extreme_ray_test(x, others) -> Verdict:
    """KEEP if ``x`` lies outside the cone of ``others``, ELIMINATE if inside.

    Decided by whether ``min <w, x>`` over ``{w : <w, o> >= 1}`` is unbounded
    (keep) or strictly positive (eliminate).  Any other outcome raises
    :class:`SpuriousStatus`; it happens when ``others`` does not span a
    pointed cone.
    """
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise ZeroVector("x must be nonzero")
    if len(others) == 0:
        return KEEP
    out = extreme_ray_lp(x, others)
    if out.status is Status.UNBOUNDED:
        return KEEP
    if out.status is Status.OPTIMAL and out.value > TAU_POS:
        return ELIMINATE
    raise SpuriousStatus(
        f"extreme-ray LP gave {out.status.value}"
        + (f" with value {out.value:.3g}" if out.value is not None else "")
        + "; the generators do not span a pointed cone")


def minimal_extreme(rays: RaySet, stats: Optional[dict] = None) -> RaySet:
    """Keep one ray per extreme ray of the cone spanned by ``rays``.

    Single pass in stored order; each ray is tested against the rays still
    alive, itself excluded.  ``rays`` must already be deduplicated.  If
    ``stats`` is given, ``stats["lp_calls"]`` is incremented per LP solved.
    """
    if len(rays) == 0:
        return RaySet(())
    dirs = rays.directions()
    alive = np.ones(len(rays), dtype=bool)
    calls = 0
    for j in range(len(rays)):
        alive[j] = False
        others = dirs[alive]
        if len(others):
            calls += 1
        if extreme_ray_test(dirs[j], others) is KEEP:
            alive[j] = True
    if stats is not None:
        stats["lp_calls"] = stats.get("lp_calls", 0) + calls
    return RaySet([r for r, keep in zip(rays, alive) if keep])


def conic_combination(x, generators):
    """Best nonnegative combination of ``generators`` approximating ``x``.

    Minimises the L1 residual ``|G^T lam - x|`` over ``lam >= 0`` by LP and
    returns ``(lam, max_abs_residual)``.
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    G = np.asarray(generators, dtype=float).reshape(-1, x.size)
    k, d = G.shape
    if k == 0:
        return np.zeros(0), float(np.max(np.abs(x)))
    # variables: lam (k), t (d); min sum t
    c = np.concatenate([np.zeros(k), np.ones(d)])
    eye_t = np.eye(d)
    rows = np.vstack([
        np.hstack([np.eye(k), np.zeros((k, d))]),   # lam >= 0
        np.hstack([-G.T, eye_t]),                   # t - G^T lam >= -x
        np.hstack([G.T, eye_t]),                    # t + G^T lam >= x
    ])
    rhs = np.concatenate([np.zeros(k), -x, x])
    out = solve(LinearProgram(c, rows, rhs))
    if out.status is not Status.OPTIMAL:
        raise SpuriousStatus(f"membership LP gave {out.status.value}")
    lam = np.maximum(out.w[:k], 0.0)
    return lam, float(np.max(np.abs(G.T @ lam - x)))


def in_primal_cone(x, generators, tol: float = MEMBERSHIP_TOL) -> bool:
    """Whether ``x`` is a nonnegative combination of ``generators`` (within ``tol``)."""
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        raise ZeroVector("x must be nonzero")
    _, resid = conic_combination(x, generators)
    return resid <= tol * max(1.0, float(np.max(np.abs(x))))

"""The one LP contract used everywhere: ``min <c, w>`` s.t. ``A w >= b``, ``w`` free.

Backed by HiGHS through :func:`scipy.optimize.linprog`.  Unboundedness is
reported together with a recession direction, because callers use that
direction as a separating witness.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
from scipy.optimize import linprog

from .errors import NumericalFailure

EPS_FEAS = 1e-7
TAU_POS = 1e-7
BOX = 1e6

_HIGHS_OPTIONS = {
    "primal_feasibility_tolerance": 1e-9,
    "dual_feasibility_tolerance": 1e-9,
}


class Status(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """``min <objective, w>`` subject to ``A @ w >= b``."""

    objective: np.ndarray
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.objective, dtype=float).reshape(-1)
        A = np.asarray(self.A, dtype=float)
        if A.size == 0:
            A = A.reshape(0, c.size)
        b = np.asarray(self.b, dtype=float).reshape(-1)
        if A.ndim != 2 or A.shape[1] != c.size or A.shape[0] != b.size:
            raise ValueError(f"inconsistent LP shapes: c {c.shape}, A {A.shape}, b {b.shape}")
        object.__setattr__(self, "objective", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @classmethod
    def from_constraints(cls, objective, constraints: Iterable[tuple]) -> "LinearProgram":
        """Build from ``[(a_i, b_i), ...]`` meaning ``<w, a_i> >= b_i``."""
        c = np.asarray(objective, dtype=float)
        rows, rhs = [], []
        for a, lo in constraints:
            rows.append(np.asarray(a, dtype=float))
            rhs.append(float(lo))
        A = np.array(rows).reshape(len(rows), c.size)
        return cls(c, A, np.array(rhs))

    @property
    def dim(self) -> int:
        return self.objective.size


@dataclass(frozen=True, eq=False)
class LpOutcome:
    status: Status
    value: Optional[float] = None
    w: Optional[np.ndarray] = None


def feasibility_residual(lp: LinearProgram, w) -> float:
    """Largest constraint violation ``max(b - A w)`` (0 when feasible)."""
    if lp.A.shape[0] == 0:
        return 0.0
    return float(max(0.0, np.max(lp.b - lp.A @ np.asarray(w, dtype=float))))


def _highs(c, A, b, bounds):
    if A.shape[0] == 0:
        return linprog(c, bounds=bounds, method="highs", options=_HIGHS_OPTIONS)
    return linprog(c, A_ub=-A, b_ub=-b, bounds=bounds, method="highs",
                   options=_HIGHS_OPTIONS)


def _recession_direction(lp: LinearProgram) -> np.ndarray:
    """A ``w`` with ``A w >= 0`` and ``<c, w> < 0``, scaled to unit max-norm."""
    res = _highs(lp.objective, lp.A, np.zeros(lp.A.shape[0]), (-1.0, 1.0))
    if res.status != 0 or res.fun > -EPS_FEAS:
        raise NumericalFailure("LP reported unbounded but no recession direction was found")
    w = np.asarray(res.x, dtype=float)
    return w / np.max(np.abs(w))


def _optimal(lp: LinearProgram, x) -> LpOutcome:
    w = np.asarray(x, dtype=float)
    viol = feasibility_residual(lp, w)
    if viol > EPS_FEAS:
        raise NumericalFailure(f"optimal point violates constraints by {viol:.3g}")
    return LpOutcome(Status.OPTIMAL, float(lp.objective @ w), w)


def _boxed(lp: LinearProgram) -> LpOutcome:
    res = _highs(lp.objective, lp.A, lp.b, (-BOX, BOX))
    if res.status == 2:
        return LpOutcome(Status.INFEASIBLE)
    if res.status != 0:
        raise NumericalFailure(f"HiGHS failed on boxed re-solve: {res.message}")
    if res.fun <= -1.0:
        return LpOutcome(Status.UNBOUNDED, None, _recession_direction(lp))
    if np.max(np.abs(res.x)) < BOX * (1 - 1e-9):
        return _optimal(lp, res.x)
    raise NumericalFailure("boxed optimum sits on the box but is not negative")


def solve(lp: LinearProgram) -> LpOutcome:
    """Solve ``lp``; every status is certified or :class:`NumericalFailure` is raised."""
    c = lp.objective
    if lp.A.shape[0] == 0:
        if not np.any(c):
            return LpOutcome(Status.OPTIMAL, 0.0, np.zeros(lp.dim))
        return LpOutcome(Status.UNBOUNDED, None, -c / np.max(np.abs(c)))

    res = _highs(c, lp.A, lp.b, (None, None))
    if res.status == 0:
        return _optimal(lp, res.x)
    if res.status == 3:
        return LpOutcome(Status.UNBOUNDED, None, _recession_direction(lp))
    if res.status == 2:
        # HiGHS may fold "infeasible or unbounded" into infeasible; settle it.
        feas = _highs(np.zeros(lp.dim), lp.A, lp.b, (None, None))
        if feas.status == 2:
            return LpOutcome(Status.INFEASIBLE)
        if feas.status == 0:
            return LpOutcome(Status.UNBOUNDED, None, _recession_direction(lp))
    return _boxed(lp)

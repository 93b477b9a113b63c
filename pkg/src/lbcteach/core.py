"""Teaching instances, feature differences and the linear learner's argmax."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import numpy as np

from .errors import InstanceFormatError, NotRealizable, ZeroDifference
from .lp import LinearProgram, Status, solve

EPS_TIE = 1e-9


@dataclass(frozen=True, eq=False)
class TeachingInstance:
    """A finite LBC teaching problem.

    ``features[i, j]`` is the feature vector of action ``actions[j]`` in state
    ``states[i]`` and ``target[i]`` is the index (into ``actions``) of the
    action the teacher wants at ``states[i]``.  Integer feature arrays are
    kept as integers so that difference vectors stay exact.
    """

    states: tuple
    actions: tuple
    features: np.ndarray
    target: np.ndarray

    def __post_init__(self):
        states = tuple(self.states)
        actions = tuple(self.actions)
        if not states or not actions:
            raise InstanceFormatError("need at least one state and one action")
        if len(set(states)) != len(states):
            raise InstanceFormatError("duplicate state identifiers")
        if len(set(actions)) != len(actions):
            raise InstanceFormatError("duplicate action identifiers")

        feats = np.asarray(self.features)
        if feats.dtype == object or feats.ndim != 3:
            raise InstanceFormatError("features must be a (states, actions, d) array")
        if feats.shape[:2] != (len(states), len(actions)) or feats.shape[2] < 1:
            raise InstanceFormatError(
                f"features shape {feats.shape} does not match "
                f"{len(states)} states x {len(actions)} actions x d>=1")
        if feats.dtype.kind == "b":
            feats = feats.astype(np.int64)
        elif feats.dtype.kind not in "iuf":
            raise InstanceFormatError(f"non-numeric features ({feats.dtype})")
        if feats.dtype.kind == "f" and not np.all(np.isfinite(feats)):
            raise InstanceFormatError("features must be finite")

        target = np.asarray(self.target)
        if target.shape != (len(states),) or target.dtype.kind not in "iu":
            raise InstanceFormatError("target must hold one action index per state")
        if target.size and (target.min() < 0 or target.max() >= len(actions)):
            raise InstanceFormatError("target action index out of range")

        feats = np.array(feats, copy=True)
        target = np.array(target, dtype=np.int64, copy=True)
        feats.setflags(write=False)
        target.setflags(write=False)
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "actions", actions)
        object.__setattr__(self, "features", feats)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "_state_pos", {s: i for i, s in enumerate(states)})
        object.__setattr__(self, "_action_pos", {a: j for j, a in enumerate(actions)})

    @classmethod
    def from_mappings(cls, states: Sequence[Hashable], actions: Sequence[Hashable],
                      features: Callable | Mapping, target: Callable | Mapping):
        """Build an instance from ``features(s, a)`` and ``target(s)``.

        Both arguments may be callables or mappings keyed by ``(s, a)`` and
        ``s`` respectively.
        """
        feat = features.__getitem__ if isinstance(features, Mapping) else None
        tgt = target.__getitem__ if isinstance(target, Mapping) else target
        rows = []
        for s in states:
            if feat is not None:
                rows.append([feat((s, a)) for a in actions])
            else:
                rows.append([features(s, a) for a in actions])
        try:
            arr = np.array(rows)
        except ValueError as exc:
            raise InstanceFormatError(f"ragged feature vectors: {exc}") from None
        pos = {a: j for j, a in enumerate(actions)}
        try:
            tidx = np.array([pos[tgt(s)] for s in states], dtype=np.int64)
        except KeyError as exc:
            raise InstanceFormatError(f"target action {exc} not in actions") from None
        return cls(states, actions, arr, tidx)

    @property
    def d(self) -> int:
        return int(self.features.shape[2])

    @property
    def num_states(self) -> int:
        return len(self.states)

    @property
    def num_actions(self) -> int:
        return len(self.actions)

    @property
    def is_integer(self) -> bool:
        """True when feature arithmetic is exact (integer dtype)."""
        return self.features.dtype.kind in "iu"

    def state_index(self, s) -> int:
        try:
            return self._state_pos[s]
        except KeyError:
            raise KeyError(f"unknown state {s!r}") from None

    def action_index(self, a) -> int:
        try:
            return self._action_pos[a]
        except KeyError:
            raise KeyError(f"unknown action {a!r}") from None

    def feature(self, s, a) -> np.ndarray:
        return self.features[self.state_index(s), self.action_index(a)]

    def target_action(self, s):
        return self.actions[self.target[self.state_index(s)]]

    def __repr__(self):
        return (f"TeachingInstance(|S|={self.num_states}, |A|={self.num_actions}, "
                f"d={self.d}, dtype={self.features.dtype})")


@dataclass(frozen=True, eq=False)
class DifferenceVector:
    state: Hashable
    target_action: Hashable
    alt_action: Hashable
    vec: np.ndarray


@dataclass(frozen=True)
class DemonstrationSet:
    teach_states: tuple

    def __init__(self, teach_states: Iterable = ()):
        states = tuple(teach_states)
        if len(set(states)) != len(states):
            raise ValueError("duplicate states in demonstration set")
        object.__setattr__(self, "teach_states", states)

    def __len__(self):
        return len(self.teach_states)

    def __iter__(self):
        return iter(self.teach_states)

    def indices(self, instance: TeachingInstance) -> np.ndarray:
        """State indices in instance order."""
        return np.array(sorted(instance.state_index(s) for s in self.teach_states),
                        dtype=np.int64)


@dataclass(frozen=True, eq=False)
class WeightWitness:
    w: np.ndarray
    margin: float


@dataclass(frozen=True, eq=False)
class DifferenceArrays:
    """Columnar form of a batch of difference vectors.

    ``vecs[k] = features[state_idx[k], target] - features[state_idx[k], alt_idx[k]]``.
    """

    state_idx: np.ndarray
    alt_idx: np.ndarray
    vecs: np.ndarray

    def __len__(self):
        return len(self.state_idx)

    def records(self, instance: TeachingInstance) -> list[DifferenceVector]:
        states, actions = instance.states, instance.actions
        tgt = instance.target
        return [DifferenceVector(states[i], actions[tgt[i]], actions[j], self.vecs[k])
                for k, (i, j) in enumerate(zip(self.state_idx.tolist(), self.alt_idx.tolist()))]


def _as_indices(instance: TeachingInstance, subset) -> np.ndarray:
    if subset is None:
        return np.arange(instance.num_states, dtype=np.int64)
    if not isinstance(subset, DemonstrationSet):
        subset = DemonstrationSet(subset)
    return subset.indices(instance)


def difference_arrays(instance: TeachingInstance, subset=None) -> DifferenceArrays:
    """Vectorised core of :func:`difference_vectors`."""
    idx = _as_indices(instance, subset)
    n_act = instance.num_actions
    d = instance.d
    if n_act == 1 or idx.size == 0:
        empty = np.zeros(0, dtype=np.int64)
        return DifferenceArrays(empty, empty.copy(),
                                np.zeros((0, d), dtype=instance.features.dtype))
    feats = instance.features[idx]                      # (k, A, d)
    tgt = instance.target[idx]
    own = feats[np.arange(idx.size), tgt]               # (k, d)
    diffs = own[:, None, :] - feats                     # (k, A, d)
    alt = np.broadcast_to(np.arange(n_act), (idx.size, n_act))
    keep = alt != tgt[:, None]
    state_idx = np.broadcast_to(idx[:, None], (idx.size, n_act))[keep]
    alt_idx = alt[keep]
    vecs = diffs[keep]
    zero = ~np.any(vecs != 0, axis=1)
    if zero.any():
        k = int(np.argmax(zero))
        raise ZeroDifference(instance.states[state_idx[k]], instance.actions[alt_idx[k]])
    return DifferenceArrays(np.ascontiguousarray(state_idx), np.ascontiguousarray(alt_idx),
                            np.ascontiguousarray(vecs))


def difference_vectors(instance: TeachingInstance, subset=None) -> list[DifferenceVector]:
    """All ``phi(s, target(s)) - phi(s, b)`` for ``s`` in ``subset`` and ``b != target(s)``.

    Ordered by state (instance order) then by alternative action.  ``subset``
    defaults to every state.  Raises :class:`ZeroDifference` on an exact zero.
    """
    return difference_arrays(instance, subset).records(instance)


def check_realizability(instance: TeachingInstance) -> WeightWitness:
    """Find ``w`` with ``<w, psi> >= 1`` for every difference vector.

    Raises :class:`NotRealizable` when no such ``w`` exists.
    """
    diffs = difference_arrays(instance)  # ZeroDifference is a NotRealizable
    if len(diffs) == 0:
        return WeightWitness(np.zeros(instance.d), math.inf)
    rows = np.unique(np.asarray(diffs.vecs, dtype=float), axis=0)
    lp = LinearProgram(np.zeros(instance.d), rows, np.ones(len(rows)))
    out = solve(lp)
    if out.status is Status.INFEASIBLE:
        raise NotRealizable("no weight vector separates the target actions")
    if out.status is not Status.OPTIMAL:
        # a zero objective cannot be unbounded
        raise NotRealizable(f"unexpected LP status {out.status}")
    margin = float(np.min(rows @ out.w))
    return WeightWitness(out.w, margin)


def induced_actions(instance: TeachingInstance, w, s) -> frozenset:
    """The argmax set of ``<w, phi(s, a)>`` over actions, ties within ``EPS_TIE``."""
    w = np.asarray(w, dtype=float)
    if w.shape != (instance.d,):
        raise ValueError(f"w must have length {instance.d}")
    scores = instance.features[instance.state_index(s)] @ w
    best = scores.max()
    tol = EPS_TIE * np.abs(scores).max()
    return frozenset(a for a, v in zip(instance.actions, scores) if v >= best - tol)

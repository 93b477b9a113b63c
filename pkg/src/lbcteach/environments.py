"""Instance generators: pick-the-diamond, polygon tower, random, and set-cover reductions."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .core import TeachingInstance
from .errors import ResampleLimit, UncoverableUniverse


class Diamond(enum.IntEnum):
    """Slot contents; the value is the number of edges."""

    EMPTY = 0
    TRIANGLE = 3
    SQUARE = 4
    PENTAGON = 5
    HEXAGON = 6


_SYMBOL = {Diamond.EMPTY: "o", Diamond.TRIANGLE: "T", Diamond.SQUARE: "S",
           Diamond.PENTAGON: "P", Diamond.HEXAGON: "H"}
_FROM_SYMBOL = {v: k for k, v in _SYMBOL.items()}
# enumeration order of slot contents
_SHAPES = (Diamond.EMPTY, Diamond.TRIANGLE, Diamond.SQUARE, Diamond.PENTAGON, Diamond.HEXAGON)


@dataclass(frozen=True)
class DiamondBoard:
    slots: tuple

    def __post_init__(self):
        slots = tuple(Diamond(s) for s in self.slots)
        if not slots or all(s is Diamond.EMPTY for s in slots):
            raise ValueError("a board needs at least one diamond")
        object.__setattr__(self, "slots", slots)

    @classmethod
    def parse(cls, label: str) -> "DiamondBoard":
        return cls(tuple(_FROM_SYMBOL[c] for c in label))

    @property
    def label(self) -> str:
        return "".join(_SYMBOL[s] for s in self.slots)

    def edges(self) -> np.ndarray:
        return np.array([int(s) for s in self.slots], dtype=np.int64)

    def target(self) -> int:
        """1-based slot of the right-most diamond with the most edges."""
        e = self.edges()
        return int(np.flatnonzero(e == e.max())[-1]) + 1


def gen_diamond(n: int) -> TeachingInstance:
    """All ``5**n - 1`` nonempty boards with features ``[slot, edges at slot]``.

    States are board labels such as ``"ToSoSo"`` (``o`` = empty), enumerated
    in base-5 order with slot 1 most significant.  Actions are slots ``1..n``.
    """
    if not 1 <= n <= 9:
        raise ValueError("gen_diamond supports 1 <= n <= 9")
    codes = np.array(list(itertools.product(range(5), repeat=n)), dtype=np.int64)[1:]
    edges = np.array([int(s) for s in _SHAPES], dtype=np.int64)[codes]   # (S, n)
    symbols = np.array([_SYMBOL[s] for s in _SHAPES])
    labels = ["".join(row) for row in symbols[codes].tolist()]

    slots = np.broadcast_to(np.arange(1, n + 1, dtype=np.int64), edges.shape)
    features = np.stack([slots, edges], axis=2)
    # right-most maximum: argmax over the reversed row
    target = n - 1 - np.argmax(edges[:, ::-1], axis=1)
    return TeachingInstance(labels, list(range(1, n + 1)), features, target)


def gen_polygon_tower(n: int) -> TeachingInstance:
    """States ``2..n``, actions ``1..n+1``; action ``n+1`` sits above an ``s``-gon.

    ``phi(s, n+1) = [0, 0, s]`` and ``phi(s, a) = -s [cos(2 pi a/s), sin(2 pi a/s), 0]``.
    """
    if n < 2:
        raise ValueError("polygon tower needs n >= 2")
    states = list(range(2, n + 1))
    actions = list(range(1, n + 2))
    feats = np.zeros((len(states), n + 1, 3))
    a = np.arange(1, n + 1)
    for i, s in enumerate(states):
        ang = 2 * np.pi * a / s
        feats[i, :n, 0] = -s * np.cos(ang)
        feats[i, :n, 1] = -s * np.sin(ang)
        feats[i, n, 2] = s
    return TeachingInstance(states, actions, feats, np.full(len(states), n, dtype=np.int64))


def polygon_tower_optimal(n: int) -> set:
    """States in ``2..n`` with no proper multiple in ``2..n``."""
    if n < 2:
        raise ValueError("polygon tower needs n >= 2")
    states = range(2, n + 1)
    return {s for s in states if not any(t != s and t % s == 0 for t in states)}


@dataclass(frozen=True)
class SetCoverSpec:
    """Set system over elements ``1..universe_size``."""

    universe_size: int
    subsets: tuple

    def __post_init__(self):
        subs = tuple(tuple(int(e) for e in sub) for sub in self.subsets)
        for sub in subs:
            if not sub:
                raise ValueError("subsets must be nonempty")
            if len(set(sub)) != len(sub):
                raise ValueError(f"repeated element in subset {sub}")
            bad = [e for e in sub if not 1 <= e <= self.universe_size]
            if bad:
                raise ValueError(f"elements {bad} outside 1..{self.universe_size}")
        object.__setattr__(self, "subsets", subs)

    def missing(self) -> list[int]:
        seen = set(itertools.chain.from_iterable(self.subsets))
        return [e for e in range(1, self.universe_size + 1) if e not in seen]


def rim_ray(k: int, m: int) -> np.ndarray:
    ang = 2 * np.pi * k / m
    return np.array([np.cos(ang), np.sin(ang), 10.0])


def reduce_set_cover(sc: SetCoverSpec) -> TeachingInstance:
    """Teaching instance whose teaching sets are exactly the covers of ``sc``.

    Element ``k`` becomes the rim ray ``(cos 2 pi k/|U|, sin 2 pi k/|U|, 10)``.
    State ``i`` (1-based) prefers action ``A = max|V_i| + 1``; its ``b``-th
    alternative differs by the ray of the ``b``-th element of ``V_i``, and
    spare alternatives reuse the last element.
    """
    missing = sc.missing()
    if missing or not sc.subsets:
        raise UncoverableUniverse(missing or list(range(1, sc.universe_size + 1)))
    m = sc.universe_size
    n_act = max(len(sub) for sub in sc.subsets) + 1
    feats = np.zeros((len(sc.subsets), n_act, 3))
    for i, sub in enumerate(sc.subsets):
        for b in range(n_act - 1):
            elem = sub[min(b, len(sub) - 1)]
            feats[i, b] = -rim_ray(elem, m)
    states = list(range(1, len(sc.subsets) + 1))
    actions = list(range(1, n_act + 1))
    return TeachingInstance(states, actions, feats,
                            np.full(len(states), n_act - 1, dtype=np.int64))


DELTA_MARGIN = 1e-3
MAX_RESAMPLES = 1000


def gen_random_realizable(d: int, num_states: int, num_actions: int,
                          seed: int = 0) -> TeachingInstance:
    """Gaussian features labelled by a hidden unit weight vector.

    States whose best and second-best scores are closer than
    ``DELTA_MARGIN`` are redrawn, so the target is strictly realizable.
    """
    if d < 1 or num_states < 1 or num_actions < 2:
        raise ValueError("need d >= 1, num_states >= 1, num_actions >= 2")
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(d)
    w /= np.linalg.norm(w)
    feats = np.empty((num_states, num_actions, d))
    target = np.empty(num_states, dtype=np.int64)
    for i in range(num_states):
        for _ in range(MAX_RESAMPLES):
            phi = rng.standard_normal((num_actions, d))
            scores = phi @ w
            top2 = np.sort(scores)[-2:]
            if top2[1] - top2[0] >= DELTA_MARGIN:
                break
        else:
            raise ResampleLimit(f"state {i}: no sample with margin {DELTA_MARGIN}")
        feats[i] = phi
        target[i] = int(np.argmax(scores))
    return TeachingInstance(list(range(num_states)), list(range(num_actions)), feats, target)


def hidden_weight(d: int, seed: int = 0) -> np.ndarray:
    """The weight vector :func:`gen_random_realizable` draws for ``seed``."""
    rng = np.random.default_rng(seed)
    w = rng.standard_normal(d)
    return w / np.linalg.norm(w)

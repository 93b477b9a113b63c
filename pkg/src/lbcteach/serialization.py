"""JSON formats for instances, set-cover inputs and teaching results."""

from __future__ import annotations

import json
from numbers import Integral, Real
from pathlib import Path

import numpy as np

from .core import TeachingInstance
from .environments import SetCoverSpec
from .errors import InstanceFormatError


def instance_to_dict(instance: TeachingInstance) -> dict:
    return {
        "d": instance.d,
        "states": [str(s) for s in instance.states],
        "actions": [str(a) for a in instance.actions],
        "features": instance.features.tolist(),
        "target": instance.target.tolist(),
    }


def _check_number(x, where):
    if isinstance(x, bool) or not isinstance(x, Real):
        raise InstanceFormatError(f"{where}: expected a number, got {x!r}")


def instance_from_dict(obj: dict) -> TeachingInstance:
    """Parse the instance object, rejecting ragged arrays and bad indices."""
    if not isinstance(obj, dict):
        raise InstanceFormatError("instance must be a JSON object")
    missing = {"d", "states", "actions", "features", "target"} - obj.keys()
    if missing:
        raise InstanceFormatError(f"missing keys: {sorted(missing)}")
    d, states, actions = obj["d"], obj["states"], obj["actions"]
    feats, target = obj["features"], obj["target"]
    if isinstance(d, bool) or not isinstance(d, Integral) or d < 1:
        raise InstanceFormatError("d must be a positive integer")
    for name, ids in (("states", states), ("actions", actions)):
        if not isinstance(ids, list) or not all(isinstance(x, str) for x in ids):
            raise InstanceFormatError(f"{name} must be an array of strings")
    if not isinstance(feats, list) or len(feats) != len(states):
        raise InstanceFormatError("features must have one row per state")
    all_int = True
    for i, row in enumerate(feats):
        if not isinstance(row, list) or len(row) != len(actions):
            raise InstanceFormatError(f"features[{i}] must have one entry per action")
        for j, vec in enumerate(row):
            if not isinstance(vec, list) or len(vec) != d:
                raise InstanceFormatError(f"features[{i}][{j}] must have length {d}")
            for x in vec:
                _check_number(x, f"features[{i}][{j}]")
                all_int = all_int and isinstance(x, Integral)
    if not isinstance(target, list) or len(target) != len(states):
        raise InstanceFormatError("target must have one action index per state")
    for i, t in enumerate(target):
        if isinstance(t, bool) or not isinstance(t, Integral) or not 0 <= t < len(actions):
            raise InstanceFormatError(f"target[{i}] = {t!r} is not a valid action index")
    arr = np.array(feats, dtype=np.int64 if all_int else float).reshape(len(states), len(actions), d)
    return TeachingInstance(states, actions, arr, np.array(target, dtype=np.int64))


def save_instance(instance: TeachingInstance, path) -> None:
    Path(path).write_text(json.dumps(instance_to_dict(instance)))


def load_instance(path) -> TeachingInstance:
    try:
        obj = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: invalid JSON ({exc})") from None
    return instance_from_dict(obj)


def load_cover_spec(path) -> SetCoverSpec:
    """``{"universe": m, "subsets": [[1-based indices], ...]}``."""
    obj = json.loads(Path(path).read_text())
    if not isinstance(obj, dict) or "universe" not in obj or "subsets" not in obj:
        raise InstanceFormatError("set cover file needs 'universe' and 'subsets'")
    try:
        return SetCoverSpec(int(obj["universe"]), tuple(tuple(s) for s in obj["subsets"]))
    except (TypeError, ValueError) as exc:
        raise InstanceFormatError(f"bad set cover input: {exc}") from None


def load_teaching_set(path) -> list:
    """Either a bare JSON list of state ids or a result object with ``teaching_states``."""
    obj = json.loads(Path(path).read_text())
    if isinstance(obj, dict):
        obj = obj.get("teaching_states")
    if not isinstance(obj, list):
        raise InstanceFormatError("teaching set must be a list or have 'teaching_states'")
    return [str(s) for s in obj]


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not JSON serialisable: {type(x).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, default=_jsonable, indent=2)

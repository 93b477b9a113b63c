import numpy as np
import pytest

from lbcteach import (SetCoverSpec, brute_force_min_teaching, check_realizability,
                      gen_diamond, gen_polygon_tower, gen_random_realizable,
                      induced_actions, optimal_teach, polygon_tower_optimal,
                      reduce_set_cover)
from lbcteach.core import difference_arrays
from lbcteach.environments import DiamondBoard, hidden_weight
from lbcteach.errors import UncoverableUniverse

from oracles import exhaustive_set_cover


def test_diamond_sizes(diamond6):
    assert diamond6.num_states == 5**6 - 1
    assert diamond6.num_actions == 6 and diamond6.d == 2


def test_diamond_single_slot():
    inst = gen_diamond(1)
    assert inst.num_states == 4
    assert all(inst.target_action(s) == 1 for s in inst.states)


def test_diamond_features_and_target(diamond6):
    s = "ToSoSo"
    assert diamond6.target_action(s) == 5
    assert diamond6.feature(s, 3).tolist() == [3, 4]
    assert diamond6.feature(s, 2).tolist() == [2, 0]


@pytest.mark.parametrize("n", range(1, 7))
def test_diamond_rule_matches_reference_weight(n):
    inst = gen_diamond(n)
    scores = inst.features @ np.array([1, 10])
    best = scores.argmax(axis=1)
    np.testing.assert_array_equal(best, inst.target)
    # unique argmax
    top2 = np.sort(scores, axis=1)[:, -2:] if n > 1 else None
    if top2 is not None:
        assert np.all(top2[:, 1] > top2[:, 0])


def test_diamond_board_rule_by_hand():
    for label in ("HoooHo", "oPPoTo", "TTTTTT"):
        board = DiamondBoard.parse(label)
        edges = board.edges()
        best = max(i for i in range(len(edges)) if edges[i] == edges.max()) + 1
        assert board.target() == best
    with pytest.raises(ValueError):
        DiamondBoard.parse("ooo")


def test_tower_feature_value():
    inst = gen_polygon_tower(6)
    np.testing.assert_allclose(inst.feature(4, 2), [4, 0, 0], atol=1e-12)
    np.testing.assert_allclose(inst.feature(4, 7), [0, 0, 4])


def test_tower_differences_formula():
    inst = gen_polygon_tower(6)
    for s in inst.states:
        for a in range(1, 7):
            psi = inst.feature(s, 7) - inst.feature(s, a)
            ang = 2 * np.pi * a / s
            np.testing.assert_allclose(psi, [s * np.cos(ang), s * np.sin(ang), s], atol=1e-12)


def test_tower_n2():
    inst = gen_polygon_tower(2)
    assert inst.states == (2,)
    assert set(optimal_teach(inst).teaching_set) == {2}


@pytest.mark.parametrize("n,expected", [(2, {2}), (3, {2, 3}), (4, {3, 4}), (6, {4, 5, 6}),
                                        (8, {5, 6, 7, 8})])
def test_polygon_tower_optimal(n, expected):
    assert polygon_tower_optimal(n) == expected


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_polygon_tower_optimal_vs_brute_force(n):
    found = brute_force_min_teaching(gen_polygon_tower(n))
    assert set(found) == polygon_tower_optimal(n)


def test_reduction_example():
    sc = SetCoverSpec(3, ((1, 2), (2, 3), (3,)))
    inst = reduce_set_cover(sc)
    assert inst.num_states == 3 and inst.num_actions == 3
    res = optimal_teach(inst)
    assert len(res.extreme_rays) == 3
    assert res.size == 2 == exhaustive_set_cover(3, {0: {0, 1}, 1: {1, 2}, 2: {2}})


def test_reduction_single_full_subset():
    inst = reduce_set_cover(SetCoverSpec(4, ((1, 2, 3, 4),)))
    assert optimal_teach(inst).size == 1


def test_reduction_five_element_example():
    sc = SetCoverSpec(5, ((1, 2, 3), (3, 4), (4, 5), (1, 5)))
    assert optimal_teach(reduce_set_cover(sc)).size == 2


def test_reduction_differences_are_rim_rays():
    sc = SetCoverSpec(4, ((1, 2, 3), (4,)))
    inst = reduce_set_cover(sc)
    assert inst.num_actions == 4
    diffs = difference_arrays(inst, [2]).vecs
    # the single-element state repeats its only element on every alternative
    np.testing.assert_allclose(diffs, [[1, 0, 10]] * 3, atol=1e-12)
    diffs = difference_arrays(inst, [1]).vecs
    k = np.arange(1, 4)
    np.testing.assert_allclose(diffs[:, :2], np.c_[np.cos(np.pi * k / 2), np.sin(np.pi * k / 2)],
                               atol=1e-12)
    assert check_realizability(inst).margin > 0


def test_reduction_rejects_gaps():
    with pytest.raises(UncoverableUniverse):
        reduce_set_cover(SetCoverSpec(3, ((1,), (2,))))
    with pytest.raises(ValueError):
        SetCoverSpec(2, ((),))


def test_random_is_deterministic():
    a = gen_random_realizable(3, 5, 4, seed=7)
    b = gen_random_realizable(3, 5, 4, seed=7)
    assert a.features.tobytes() == b.features.tobytes()
    assert a.target.tobytes() == b.target.tobytes()


@pytest.mark.parametrize("seed", range(5))
def test_random_margin_and_realizability(seed):
    inst = gen_random_realizable(2, 6, 3, seed=seed)
    w = hidden_weight(2, seed)
    scores = inst.features @ w
    top2 = np.sort(scores, axis=1)[:, -2:]
    assert np.all(top2[:, 1] - top2[:, 0] >= 1e-3)
    check_realizability(inst)
    for s in inst.states:
        assert induced_actions(inst, w, s) == {inst.target_action(s)}


def test_random_seed7_exact_vs_brute():
    inst = gen_random_realizable(2, 5, 3, seed=7)
    assert optimal_teach(inst).size == len(brute_force_min_teaching(inst))


def test_random_bad_args():
    with pytest.raises(ValueError):
        gen_random_realizable(2, 3, 1)

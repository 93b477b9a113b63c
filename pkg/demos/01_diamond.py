# %% [markdown]
# Pick-the-diamond: six slots, each holding nothing or a polygon.  The teacher
# always picks the rightmost polygon with the most edges.  A linear learner
# sees features [slot, edges] for every action.

# %%
import numpy as np

from lbcteach import (dedupe_rays, difference_vectors, gen_diamond, minimal_extreme,
                      optimal_teach, verify_teaching_set)
from lbcteach.environments import DiamondBoard

inst = gen_diamond(6)
print(inst.num_states, "boards,", inst.num_actions, "actions")
board = DiamondBoard.parse("ToSoSo")
print(board.label, "edges", board.edges().tolist(), "-> pick slot", board.target())

# %% 78120 difference vectors collapse to a few dozen directions, two of them extreme.
rays = dedupe_rays(difference_vectors(inst))
extreme = minimal_extreme(rays)
print(len(rays), "distinct directions,", len(extreme), "extreme:")
for r in extreme:
    print("  ", r.int_direction, np.round(r.direction, 6))

# %% Two boards suffice to pin down the teacher's rule.
res = optimal_teach(inst, "exact")
print("teaching set:", list(res.teaching_set), "optimal:", res.optimal)
print("verified:", bool(verify_teaching_set(inst, res.teaching_set)))
for ray, (s, b) in res.certificate.items():
    print(f"  ray {extreme[ray].int_direction} taught by board {s} vs slot {b}")

# %% A board with only a tie-breaking pair is not enough on its own.
cex = verify_teaching_set(inst, ["ooooTT"])
print("counterexample:", cex.to_dict())

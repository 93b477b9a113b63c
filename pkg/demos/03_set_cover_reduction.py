# %% [markdown]
# Any set cover problem can be posed as a teaching problem: each universe
# element becomes a rim ray and each subset becomes a state that produces
# exactly its elements' rays.  Teaching dimension equals the cover optimum.

# %%
from lbcteach import SetCoverSpec, optimal_teach, reduce_set_cover

sc = SetCoverSpec(6, ((1, 2, 3, 4), (1, 2, 5), (3, 4, 6)))
inst = reduce_set_cover(sc)
print(inst.num_states, "states,", inst.num_actions, "actions, d =", inst.d)

# %% Greedy falls for the big subset; branch and bound does not.
for method in ("greedy", "exact"):
    res = optimal_teach(inst, method)
    chosen = [sc.subsets[s - 1] for s in res.teaching_set]
    print(f"{method:6s} size={res.size} subsets={chosen}")

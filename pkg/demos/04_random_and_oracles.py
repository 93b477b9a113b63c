# %% [markdown]
# Random realizable instances from a hidden weight, checked against the
# exhaustive search over teaching sets.

# %%
from lbcteach import (brute_force_min_teaching, check_realizability, gen_random_realizable,
                      optimal_teach, verify_teaching_set)

mismatches = 0
for seed in range(40):
    inst = gen_random_realizable(d=3, num_states=7, num_actions=4, seed=seed)
    res = optimal_teach(inst, "exact")
    brute = brute_force_min_teaching(inst)
    ok = res.size == len(brute) and bool(verify_teaching_set(inst, res.teaching_set))
    mismatches += not ok
    if seed < 5:
        print(f"seed {seed}: TIE {list(res.teaching_set)}  brute {list(brute)}  "
              f"rays {len(res.extreme_rays)}")
print("mismatches over 40 seeds:", mismatches)

# %% The realizability LP returns a separating weight and its margin.
w = check_realizability(gen_random_realizable(2, 5, 3, seed=1))
print("w =", w.w, "margin =", w.margin)

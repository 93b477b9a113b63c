# %% [markdown]
# Polygon tower: state s places its non-target actions on the vertices of a
# regular s-gon lifted to height s.  Extreme rays are the distinct angles a/s,
# so a state is needed exactly when no larger state is a multiple of it.

# %%
from lbcteach import gen_polygon_tower, optimal_teach, polygon_tower_optimal, verify_teaching_set

for n in range(3, 13):
    inst = gen_polygon_tower(n)
    exact = optimal_teach(inst, "exact")
    greedy = optimal_teach(inst, "greedy")
    print(f"n={n:2d} rays={len(exact.extreme_rays):3d} exact={list(exact.teaching_set)} "
          f"greedy={list(greedy.teaching_set)} rule={sorted(polygon_tower_optimal(n))}")

# %% Dropping a needed state: the verifier hands back a weight that misbehaves.
inst = gen_polygon_tower(6)
cex = verify_teaching_set(inst, [2, 3, 6])
print(cex.to_dict())

"""
Diffusion on a four-object toy
==============================

Three users, four objects, two groups. We score every object for user u1
with each recommender and compare the top lists.
"""

# %%
import numpy as np

from socialrec import assemble_dataset, get_scorer, recommend_top

object_edges = [("u1", "o1"), ("u1", "o2"), ("u2", "o1"), ("u2", "o3"),
                ("u3", "o2"), ("u3", "o3"), ("u3", "o4")]
group_edges = [("u1", "c1"), ("u2", "c1"), ("u2", "c2"), ("u3", "c2")]
ds, report = assemble_dataset(object_edges, group_edges)
print(ds.stats())

# %%
# Mass diffusion hands one unit to each of u1's objects, splits it over
# their collectors, then lets every user split what it got over its own
# objects. The total stays equal to u1's degree (2).
target = ds.user_labels.index("u1")
md = get_scorer("md")(ds, target)
print("MD", np.round(md.scores, 4), "sum", md.scores.sum())

# %%
# Social diffusion adds a second source: each of u1's groups hands 1/k_c
# to every member. The total is now k_objects + k_groups = 3.
sd = get_scorer("sd")(ds, target)
print("SD", np.round(sd.scores, 4), "sum", sd.scores.sum())

# %%
for name, params in [("md", {}), ("hdh", {"lam": 0.0}), ("hdh", {"lam": 0.5}), ("sd", {}),
                     ("ucf", {}), ("icf", {}), ("blend", {"beta": 1.0, "lam": 0.5})]:
    sv = get_scorer(name, **params)(ds, target)
    top = [(ds.object_labels[o], round(s, 4)) for o, s in recommend_top(sv, 2)]
    print(f"{name:6s} {params!s:28s} {top}")

"""Synthetic coupled user-object / user-group networks with planted taste clusters."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import BipartiteGraph, CoupledDataset


@dataclass(frozen=True)
class SynthConfig:
    """Generator settings.

    Objects and groups carry power-law fitness; each user belongs to one
    taste cluster. ``object_taste_strength`` is the chance an object pick
    is made inside the user's cluster, ``group_taste_alignment`` the same
    for group picks. At alignment 0 memberships ignore tastes entirely.
    """

    n_users: int = 2000
    n_objects: int = 1000
    n_groups: int = 100
    object_degree_exponent: float = 2.5
    group_degree_exponent: float = 2.5
    n_taste_clusters: int = 10
    group_taste_alignment: float = 0.8
    seed: int = 42
    object_taste_strength: float = 0.8
    user_object_exponent: float = 2.2
    min_user_objects: int = 1
    max_user_objects: int | None = None
    user_group_exponent: float = 2.5
    max_user_groups: int | None = None

    def __post_init__(self):
        for name in ("n_users", "n_objects", "n_groups", "n_taste_clusters", "min_user_objects"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.n_taste_clusters > self.n_groups:
            raise ValueError("more taste clusters than groups")
        if self.n_taste_clusters > self.n_objects:
            raise ValueError("more taste clusters than objects")
        for name in ("group_taste_alignment", "object_taste_strength"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        for name in ("object_degree_exponent", "group_degree_exponent",
                     "user_object_exponent", "user_group_exponent"):
            if getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be > 1")


def _fitness(rng: np.random.Generator, n: int, exponent: float) -> np.ndarray:
    # rank-size weights r^(-1/(gamma-1)) give degree tail ~ k^-gamma
    w = np.arange(1, n + 1, dtype=float) ** (-1.0 / (exponent - 1.0))
    return rng.permutation(w)


def _clusters(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    # round-robin over a shuffle: every cluster gets at least one node
    return rng.permutation(np.arange(n) % k)


def _power_law_ints(rng: np.random.Generator, size: int, exponent: float,
                    kmin: int, kmax: int) -> np.ndarray:
    u = rng.random(size)
    k = np.floor(kmin * (1.0 - u) ** (-1.0 / (exponent - 1.0))).astype(np.int64)
    return np.clip(k, kmin, kmax)


def _aligned_probs(fitness: np.ndarray, labels: np.ndarray, k: int, strength: float) -> np.ndarray:
    """Per-cluster pick distributions mixing in-cluster and global attachment."""
    glob = fitness / fitness.sum()
    probs = np.empty((k, fitness.size))
    for c in range(k):
        inside = np.where(labels == c, fitness, 0.0)
        probs[c] = strength * inside / inside.sum() + (1.0 - strength) * glob
    return probs


def _draw(rng, probs: np.ndarray, k: int) -> np.ndarray:
    k = min(k, int(np.count_nonzero(probs)))
    return rng.choice(probs.size, size=k, replace=False, p=probs)


def synth_generate(config: SynthConfig) -> CoupledDataset:
    """Draw a coupled dataset; identical configs give identical datasets."""
    rng = np.random.default_rng(config.seed)
    k = config.n_taste_clusters
    user_cluster = rng.integers(0, k, size=config.n_users)
    obj_cluster = _clusters(rng, config.n_objects, k)
    grp_cluster = _clusters(rng, config.n_groups, k)
    obj_fit = _fitness(rng, config.n_objects, config.object_degree_exponent)
    grp_fit = _fitness(rng, config.n_groups, config.group_degree_exponent)
    obj_probs = _aligned_probs(obj_fit, obj_cluster, k, config.object_taste_strength)
    grp_probs = _aligned_probs(grp_fit, grp_cluster, k, config.group_taste_alignment)

    max_obj = config.max_user_objects or max(config.min_user_objects, config.n_objects // 4)
    max_grp = config.max_user_groups or max(1, config.n_groups // 4)
    obj_deg = _power_law_ints(rng, config.n_users, config.user_object_exponent,
                              config.min_user_objects, max_obj)
    grp_deg = _power_law_ints(rng, config.n_users, config.user_group_exponent, 1, max_grp)

    ou, oo, gu, gg = [], [], [], []
    for u in range(config.n_users):
        c = user_cluster[u]
        objs = _draw(rng, obj_probs[c], int(obj_deg[u]))
        grps = _draw(rng, grp_probs[c], int(grp_deg[u]))
        ou.append(np.full(objs.size, u))
        oo.append(objs)
        gu.append(np.full(grps.size, u))
        gg.append(grps)
    uo = BipartiteGraph(config.n_users, config.n_objects, np.concatenate(ou), np.concatenate(oo))
    ug = BipartiteGraph(config.n_users, config.n_groups, np.concatenate(gu), np.concatenate(gg))
    return CoupledDataset(
        uo, ug,
        tuple(f"u{i}" for i in range(config.n_users)),
        tuple(f"o{i}" for i in range(config.n_objects)),
        tuple(f"c{i}" for i in range(config.n_groups)),
    )

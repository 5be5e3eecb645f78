"""Jaccard and Salton similarities, plus the sampled user-pair comparison."""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .binning import CurvePoint, integer_mean, sqrt_log_binned_mean
from .graph import LEFT, RIGHT, BipartiteGraph, CoupledDataset


def _overlap(graph: BipartiteGraph, side: str, i: int, j: int) -> tuple[int, int, int]:
    ni = graph.neighbors(side, i)
    nj = graph.neighbors(side, j)
    common = np.intersect1d(ni, nj, assume_unique=True).size
    return common, ni.size, nj.size


def jaccard(graph: BipartiteGraph, i: int, j: int, side: str = LEFT) -> float:
    """|intersection| / |union| of the two nodes' neighbor sets (0 if both empty)."""
    common, ki, kj = _overlap(graph, side, i, j)
    union = ki + kj - common
    return common / union if union else 0.0


def jaccard_users(graph: BipartiteGraph, i: int, j: int) -> float:
    return jaccard(graph, i, j, LEFT)


def salton(graph: BipartiteGraph, i: int, j: int, side: str = LEFT) -> float:
    common, ki, kj = _overlap(graph, side, i, j)
    if ki == 0 or kj == 0:
        return 0.0
    return common / math.sqrt(ki * kj)


def salton_users(user_object: BipartiteGraph, i: int, j: int) -> float:
    """Common objects over sqrt(k_i * k_j); 0 when either user has no objects."""
    return salton(user_object, i, j, LEFT)


def salton_items(user_object: BipartiteGraph, a: int, b: int) -> float:
    return salton(user_object, a, b, RIGHT)


@dataclass(frozen=True)
class SimilarityPairSample:
    user_i: int
    user_j: int
    s_object: float
    s_group: float


def similarity_correlation_sample(dataset: CoupledDataset, sample_size: int = 50,
                                  seed: int = 42) -> list[SimilarityPairSample]:
    """Object-based vs group-based Jaccard for every pair among sampled users."""
    if sample_size < 0 or sample_size > dataset.n_users:
        raise ValueError(f"sample_size {sample_size} exceeds user count {dataset.n_users}")
    rng = np.random.default_rng(seed)
    users = rng.choice(dataset.n_users, size=sample_size, replace=False).tolist()
    return [
        SimilarityPairSample(
            i, j,
            jaccard_users(dataset.user_object, i, j),
            jaccard_users(dataset.user_group, i, j),
        )
        for i, j in combinations(users, 2)
    ]


def degree_correlation(dataset: CoupledDataset, binning: str = "integer") -> list[CurvePoint]:
    """Mean group degree as a function of object degree.

    ``binning="integer"`` averages users with exactly equal object degree;
    ``"sqrt-log"`` uses the same bins as the influence curve. Users with
    zero collected objects are skipped in the sqrt-log mode.
    """
    ko = dataset.user_object.left_degrees
    kc = dataset.user_group.left_degrees
    if binning == "integer":
        return integer_mean(ko, kc)
    if binning == "sqrt-log":
        keep = ko > 0
        return sqrt_log_binned_mean(ko[keep], kc[keep])
    raise ValueError(f"unknown binning {binning!r}")

"""Diffusion and collaborative-filtering recommenders on the coupled dataset.

Every scorer maps ``(train, target)`` to a :class:`ScoreVector` over all
objects. The target takes part in the diffusion like any other user;
its own objects are only removed when a list is extracted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .graph import LEFT, CoupledDataset


@dataclass
class ScoreVector:
    target: int
    scores: np.ndarray
    collected_mask: np.ndarray
    diagnostics: dict = field(default_factory=dict)

    @property
    def n_uncollected(self) -> int:
        return int(self.collected_mask.size - self.collected_mask.sum())


def _collected(train: CoupledDataset, target: int) -> tuple[np.ndarray, np.ndarray]:
    objs = train.user_object.neighbors(LEFT, target)
    mask = np.zeros(train.n_objects, dtype=bool)
    mask[objs] = True
    return objs, mask


def _safe_inverse(k: np.ndarray, power: float = 1.0) -> np.ndarray:
    out = np.zeros(k.shape, dtype=np.float64)
    nz = k > 0
    out[nz] = 1.0 / (k[nz].astype(np.float64) ** power)
    return out


def _spread_to_objects(train: CoupledDataset, user_resource: np.ndarray) -> tuple[np.ndarray, float]:
    """Each user splits its resource evenly over its objects.

    Resource held by users without objects has nowhere to go; it is
    returned as leakage.
    """
    ku = train.user_object.left_degrees
    leaked = float(user_resource[ku == 0].sum())
    return train.user_object.matrix_t @ (user_resource * _safe_inverse(ku)), leaked


def user_resource_from_objects(train: CoupledDataset, target: int) -> np.ndarray:
    """Resource each user gets when the target's objects split one unit among their collectors."""
    objs = train.user_object.neighbors(LEFT, target)
    x = np.zeros(train.n_objects)
    x[objs] = _safe_inverse(train.user_object.right_degrees[objs])
    return train.user_object.matrix @ x


def user_resource_from_groups(train: CoupledDataset, target: int) -> np.ndarray:
    """Resource each user gets when each of the target's groups gives 1/k_c to its members."""
    groups = train.user_group.neighbors(LEFT, target)
    x = np.zeros(train.n_groups)
    x[groups] = _safe_inverse(train.user_group.right_degrees[groups])
    return train.user_group.matrix @ x


def md_scores(train: CoupledDataset, target: int) -> ScoreVector:
    """Mass diffusion: objects -> users -> objects with even splitting."""
    _, mask = _collected(train, target)
    scores, _ = _spread_to_objects(train, user_resource_from_objects(train, target))
    return ScoreVector(target, scores, mask)


def hdh_scores(train: CoupledDataset, target: int, lam: float) -> ScoreVector:
    """Heat-conduction / mass-diffusion hybrid.

    ``lam=1`` is mass diffusion, ``lam=0`` pure heat conduction. Objects
    without users score 0.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    objs, mask = _collected(train, target)
    ko = train.user_object.right_degrees
    x = np.zeros(train.n_objects)
    x[objs] = _safe_inverse(ko[objs], lam)
    user_res = train.user_object.matrix @ x
    raw, _ = _spread_to_objects(train, user_res)
    prefactor = np.zeros(train.n_objects)
    nz = ko > 0
    prefactor[nz] = ko[nz].astype(np.float64) ** (lam - 1.0)
    return ScoreVector(target, raw * prefactor, mask)


def sd_scores(train: CoupledDataset, target: int) -> ScoreVector:
    """Social diffusion: mass diffusion with extra resource arriving through shared groups."""
    _, mask = _collected(train, target)
    user_res = user_resource_from_objects(train, target) + user_resource_from_groups(train, target)
    scores, leaked = _spread_to_objects(train, user_res)
    return ScoreVector(target, scores, mask, {"leaked_resource": leaked})


def ucf_scores(train: CoupledDataset, target: int) -> ScoreVector:
    """User-based CF with Salton similarity; the target itself is left out of the sum."""
    objs, mask = _collected(train, target)
    A = train.user_object.matrix
    ku = train.user_object.left_degrees
    if objs.size == 0:
        return ScoreVector(target, np.zeros(train.n_objects), mask)
    x = np.zeros(train.n_objects)
    x[objs] = 1.0
    common = A @ x
    sim = common * _safe_inverse(ku, 0.5) / np.sqrt(objs.size)
    sim[target] = 0.0
    return ScoreVector(target, train.user_object.matrix_t @ sim, mask)


def icf_scores(train: CoupledDataset, target: int) -> ScoreVector:
    """Item-based CF: sum of Salton similarities to the target's objects."""
    objs, mask = _collected(train, target)
    ko = train.user_object.right_degrees
    x = np.zeros(train.n_objects)
    x[objs] = _safe_inverse(ko[objs], 0.5)
    co = train.user_object.matrix_t @ (train.user_object.matrix @ x)
    return ScoreVector(target, co * _safe_inverse(ko, 0.5), mask)


@dataclass(frozen=True)
class BlendConfig:
    """Per-user mix of HDH and SD.

    The HDH weight for user i is ``(k_i / max_object_degree) ** beta``.
    With ``normalize`` each method's scores are rescaled to unit sum first.
    ``max_object_degree=None`` means "take it from the training data".
    """

    beta: float
    lambda_hdh: float = 0.5
    max_object_degree: int | None = None
    normalize: bool = True

    def __post_init__(self):
        if self.beta < 0:
            raise ValueError(f"beta must be >= 0, got {self.beta}")
        if not 0.0 <= self.lambda_hdh <= 1.0:
            raise ValueError(f"lambda_hdh must lie in [0, 1], got {self.lambda_hdh}")
        if self.max_object_degree is not None and self.max_object_degree < 1:
            raise ValueError("max_object_degree must be >= 1")

    def weight(self, degree: int) -> float:
        if self.max_object_degree is None:
            raise ValueError("max_object_degree not set")
        # 0 ** 0 == 1: beta = 0 means HDH for everyone
        return (degree / self.max_object_degree) ** self.beta


def _unit_sum(v: np.ndarray) -> np.ndarray:
    s = v.sum()
    return v / s if s > 0 else v


def blend_scores(train: CoupledDataset, target: int, config: BlendConfig) -> ScoreVector:
    if config.max_object_degree is None:
        kmax = int(train.user_object.left_degrees.max(initial=0))
        config = BlendConfig(config.beta, config.lambda_hdh, max(kmax, 1), config.normalize)
    w = config.weight(train.user_object.degree(LEFT, target))
    _, mask = _collected(train, target)
    # a degenerate weight returns that method untouched so rankings match it exactly
    if w == 1.0:
        h = hdh_scores(train, target, config.lambda_hdh)
        return ScoreVector(target, h.scores, mask, {"hdh_weight": w})
    if w == 0.0:
        g = sd_scores(train, target)
        return ScoreVector(target, g.scores, mask, {**g.diagnostics, "hdh_weight": w})
    h = hdh_scores(train, target, config.lambda_hdh).scores
    g_vec = sd_scores(train, target)
    g = g_vec.scores
    if config.normalize:
        h, g = _unit_sum(h), _unit_sum(g)
    return ScoreVector(target, w * h + (1.0 - w) * g, mask, {**g_vec.diagnostics, "hdh_weight": w})


def random_scores(train: CoupledDataset, target: int, seed: int = 0) -> ScoreVector:
    """Uniform random scores; a null model for calibrating the evaluation."""
    _, mask = _collected(train, target)
    rng = np.random.default_rng([seed, target])
    return ScoreVector(target, rng.random(train.n_objects), mask)


def recommend_top(scores: ScoreVector, length: int) -> list[tuple[int, float]]:
    """Best ``length`` uncollected objects; ties go to the lower object index."""
    if length < 0:
        raise ValueError("length must be >= 0")
    cand = np.flatnonzero(~scores.collected_mask)
    order = np.lexsort((cand, -scores.scores[cand]))
    top = cand[order[:length]]
    return [(int(o), float(scores.scores[o])) for o in top]


Scorer = Callable[[CoupledDataset, int], ScoreVector]

ALGORITHMS = ("md", "hdh", "sd", "ucf", "icf", "blend", "random")


def get_scorer(name: str, **params) -> Scorer:
    """Look up a scorer by name, binding its parameters.

    ``hdh`` takes ``lam``; ``blend`` takes ``beta``, ``lam`` (HDH lambda)
    and optionally ``normalize``; ``random`` takes ``seed``.
    """
    if name == "md":
        return md_scores
    if name == "sd":
        return sd_scores
    if name == "ucf":
        return ucf_scores
    if name == "icf":
        return icf_scores
    if name == "hdh":
        lam = float(params.get("lam", 0.5))
        if not 0.0 <= lam <= 1.0:
            raise ValueError(f"lambda must lie in [0, 1], got {lam}")
        return lambda train, target: hdh_scores(train, target, lam)
    if name == "blend":
        cfg = BlendConfig(float(params.get("beta", 0.0)), float(params.get("lam", 0.5)),
                          params.get("max_object_degree"), bool(params.get("normalize", True)))
        return lambda train, target: blend_scores(train, target, cfg)
    if name == "random":
        seed = int(params.get("seed", 0))
        return lambda train, target: random_scores(train, target, seed)
    raise ValueError(f"unknown algorithm {name!r}; choose from {', '.join(ALGORITHMS)}")

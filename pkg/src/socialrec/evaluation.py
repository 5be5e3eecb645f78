"""Train/probe splitting, ranking score, cumulative degree curves and parameter sweeps."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .graph import BipartiteGraph, CoupledDataset
from .recommenders import ScoreVector, Scorer, get_scorer


class ProtocolError(ValueError):
    """Probe object already collected in training."""


@dataclass(eq=False)
class SplitPair:
    train: CoupledDataset
    probe: np.ndarray            # (P, 2) user, object
    fraction: float
    seed: int
    unscorable: np.ndarray       # (P,) bool: probe object has no training edges

    @property
    def n_unscorable(self) -> int:
        return int(self.unscorable.sum())


def split(dataset: CoupledDataset, fraction: float = 0.8, seed: int = 42) -> SplitPair:
    """Random partition of the user-object links; the group graph is kept whole."""
    if not 0.0 < fraction < 1.0:
        raise ValueError(f"fraction must lie in (0, 1), got {fraction}")
    edges = dataset.user_object.edges()
    if len(edges) == 0:
        raise ValueError("dataset has no user-object links to split")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(len(edges))
    n_train = int(math.floor(fraction * len(edges) + 0.5))
    train_idx = np.sort(perm[:n_train])
    probe_idx = np.sort(perm[n_train:])
    tr = edges[train_idx]
    graph = BipartiteGraph(dataset.n_users, dataset.n_objects, tr[:, 0], tr[:, 1])
    probe = edges[probe_idx]
    unscorable = graph.right_degrees[probe[:, 1]] == 0
    return SplitPair(dataset.with_user_object(graph), probe, fraction, seed, unscorable)


@dataclass(frozen=True)
class RankingScore:
    user: int
    object: int
    value: float


def ranking_score(scores: ScoreVector, probe_object: int) -> RankingScore:
    """Relative mid-rank of ``probe_object`` among the target's uncollected objects."""
    if scores.collected_mask[probe_object]:
        raise ProtocolError(f"object {probe_object} is in the training collection of user {scores.target}")
    return RankingScore(scores.target, int(probe_object), _rank_values(scores, [probe_object])[0])


def _rank_values(scores: ScoreVector, probe_objects) -> list[float]:
    cand = scores.scores[~scores.collected_mask]
    n = cand.size
    ordered = np.sort(cand)
    s = scores.scores[np.asarray(probe_objects, dtype=np.int64)]
    below = np.searchsorted(ordered, s, side="left")
    upto = np.searchsorted(ordered, s, side="right")
    greater = n - upto
    equal = upto - below
    return ((greater + (equal + 1) / 2.0) / n).tolist()


@dataclass
class EvaluationResult:
    users: np.ndarray
    objects: np.ndarray
    values: np.ndarray
    n_unscorable: int = 0
    algorithm: str = ""
    params: dict = field(default_factory=dict)

    def __len__(self) -> int:
        return int(self.values.size)

    def records(self) -> list[RankingScore]:
        return [RankingScore(int(u), int(o), float(v))
                for u, o, v in zip(self.users, self.objects, self.values)]

    def mean(self, weighting: str = "link") -> float:
        """Overall mean ranking score, averaged per probe link or per user first."""
        if self.values.size == 0:
            return math.nan
        if weighting == "link":
            return math.fsum(self.values.tolist()) / self.values.size
        if weighting == "user":
            per_user = [math.fsum(self.values[self.users == u].tolist()) / int((self.users == u).sum())
                        for u in np.unique(self.users)]
            return math.fsum(per_user) / len(per_user)
        raise ValueError(f"unknown weighting {weighting!r}")

    def cohort_mean(self, degrees: np.ndarray, max_degree: int) -> float:
        """Link-weighted mean over users whose training degree is at most ``max_degree``."""
        sel = degrees[self.users] <= max_degree
        if not sel.any():
            return math.nan
        return math.fsum(self.values[sel].tolist()) / int(sel.sum())


def _resolve(algorithm, params: dict | None) -> tuple[Scorer, str]:
    if isinstance(algorithm, str):
        return get_scorer(algorithm, **(params or {})), algorithm
    if callable(algorithm):
        return algorithm, getattr(algorithm, "__name__", "custom")
    raise ValueError(f"algorithm must be a name or a scorer, got {algorithm!r}")


def evaluate(algorithm: str | Callable, split_pair: SplitPair, params: dict | None = None) -> EvaluationResult:
    """Ranking score of every scorable probe link.

    Each probe user is scored once on the training data. Links whose
    object has no training edges are skipped and counted.
    """
    scorer, name = _resolve(algorithm, params)
    keep = ~split_pair.unscorable
    probe = split_pair.probe[keep]
    order = np.lexsort((probe[:, 1], probe[:, 0]))
    probe = probe[order]
    values = np.empty(len(probe))
    if len(probe):
        starts = np.flatnonzero(np.r_[True, probe[1:, 0] != probe[:-1, 0]])
        ends = np.r_[starts[1:], len(probe)]
        for s, e in zip(starts.tolist(), ends.tolist()):
            sv = scorer(split_pair.train, int(probe[s, 0]))
            objs = probe[s:e, 1]
            if sv.collected_mask[objs].any():
                raise ProtocolError("probe link overlaps the training set")
            values[s:e] = _rank_values(sv, objs)
    return EvaluationResult(probe[:, 0].copy(), probe[:, 1].copy(), values,
                            split_pair.n_unscorable, name, dict(params or {}))


@dataclass(frozen=True)
class CumulativePoint:
    degree: int
    mean_rs: float
    n: int


def cumulative_rs_curve(result: EvaluationResult, train: CoupledDataset,
                        weighting: str = "link") -> list[CumulativePoint]:
    """Mean ranking score over users whose training degree is at most d, for each d.

    ``n`` counts probe links (``weighting="link"``) or users (``"user"``).
    """
    if len(result) == 0:
        raise ValueError("no ranking scores to aggregate")
    deg = train.user_object.left_degrees[result.users]
    if weighting == "link":
        keys, vals = deg, result.values
    elif weighting == "user":
        users = np.unique(result.users)
        vals = np.array([math.fsum(result.values[result.users == u].tolist()) / int((result.users == u).sum())
                         for u in users])
        keys = train.user_object.left_degrees[users]
    else:
        raise ValueError(f"unknown weighting {weighting!r}")
    order = np.argsort(keys, kind="stable")
    keys, vals = keys[order], vals[order].tolist()
    points = []
    distinct = np.unique(keys)
    ends = np.searchsorted(keys, distinct, side="right")
    for d, end in zip(distinct.tolist(), ends.tolist()):
        points.append(CumulativePoint(int(d), math.fsum(vals[:end]) / end, int(end)))
    return points


@dataclass(frozen=True)
class SweepRow:
    parameter: float
    mean_rs: float
    stddev_rs: float
    n_splits: int


@dataclass
class SweepResult:
    rows: list[SweepRow]
    argmin: float
    parameter_name: str
    seeds: list[int]
    n_unscorable: list[int]


def sweep(algorithm: str, dataset: CoupledDataset, parameter: str, grid: Sequence[float],
          n_splits: int = 5, base_seed: int = 42, fraction: float = 0.8,
          fixed: dict | None = None, weighting: str = "link") -> SweepResult:
    """Overall mean ranking score for each grid value over shared random splits.

    Split ``s`` uses seed ``base_seed + s`` for every grid value, so rows
    are paired. The spread is the population standard deviation across
    splits.
    """
    if not len(grid):
        raise ValueError("parameter grid is empty")
    if n_splits < 1:
        raise ValueError("n_splits must be >= 1")
    seeds = [base_seed + s for s in range(n_splits)]
    splits = [split(dataset, fraction, s) for s in seeds]
    rows = []
    for value in grid:
        params = {**(fixed or {}), parameter: float(value)}
        means = [evaluate(algorithm, sp_, params).mean(weighting) for sp_ in splits]
        rows.append(SweepRow(float(value), math.fsum(means) / len(means),
                             float(np.std(means)), n_splits))
    best = min(rows, key=lambda r: (r.mean_rs, r.parameter))
    return SweepResult(rows, best.parameter, parameter, seeds, [s.n_unscorable for s in splits])

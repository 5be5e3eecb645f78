"""Group influence on object selection under the aspect model.

Latent aspects are replaced by the observed groups: a user picks one of
their groups uniformly, then an object in proportion to how often the
group's members selected it. The user weight p(u) is fixed at 1, so
p(., u) is a distribution over objects for every user.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp

from .binning import DEFAULT_BIN_SCALE, CurvePoint, sqrt_log_binned_mean
from .graph import LEFT, RIGHT, CoupledDataset


class UndefinedDistributionError(ValueError):
    """Group has no members or its members selected nothing."""


class NoMembershipError(ValueError):
    """User joined no group."""


class ExcludedUserError(ValueError):
    """User lacks objects or groups and has no mean influence."""


def _group_object_counts(dataset: CoupledDataset, c: int) -> tuple[np.ndarray, float]:
    members = dataset.user_group.neighbors(RIGHT, c)
    A = dataset.user_object.matrix
    counts = np.asarray(A[members].sum(axis=0)).ravel()
    return counts, float(dataset.user_object.left_degrees[members].sum())


def p_object_given_group(dataset: CoupledDataset, o: int, c: int) -> float:
    """Share of all member-object incidences in group ``c`` that touch ``o``."""
    if not 0 <= o < dataset.n_objects:
        raise IndexError(f"object {o} out of range")
    if dataset.user_group.degree(RIGHT, c) == 0:
        raise UndefinedDistributionError(f"group {c} has no members")
    counts, total = _group_object_counts(dataset, c)
    if total == 0:
        raise UndefinedDistributionError(f"members of group {c} selected no objects")
    return counts[o] / total


@dataclass
class InfluenceDiagnostics:
    # (user, group) memberships skipped because the group's members selected nothing
    empty_group_memberships: int = 0
    excluded_users: int = 0
    excluded_reasons: dict = field(default_factory=dict)


def group_object_distribution(dataset: CoupledDataset) -> tuple[sp.csr_matrix, np.ndarray]:
    """Row-stochastic groups x objects matrix of p(o|c); empty rows for empty groups.

    Also returns the per-group incidence totals.
    """
    B = dataset.user_group.matrix
    A = dataset.user_object.matrix
    counts = (B.T @ A).tocsr()
    totals = np.asarray(counts.sum(axis=1)).ravel()
    inv = np.zeros_like(totals)
    np.divide(1.0, totals, out=inv, where=totals > 0)
    return (sp.diags(inv) @ counts).tocsr(), totals


def influence_distribution(dataset: CoupledDataset, u: int,
                           diagnostics: InfluenceDiagnostics | None = None) -> np.ndarray:
    """p(o, u) for every object o, as a dense vector."""
    groups = dataset.user_group.neighbors(LEFT, u)
    if groups.size == 0:
        raise NoMembershipError(f"user {u} joined no group")
    out = np.zeros(dataset.n_objects)
    weight = 1.0 / groups.size
    for c in groups.tolist():
        counts, total = _group_object_counts(dataset, c)
        if total == 0:
            if diagnostics is not None:
                diagnostics.empty_group_memberships += 1
            continue
        out += counts * (weight / total)
    return out


def influence(dataset: CoupledDataset, u: int, o: int,
              diagnostics: InfluenceDiagnostics | None = None) -> float:
    if not 0 <= o < dataset.n_objects:
        raise IndexError(f"object {o} out of range")
    return float(influence_distribution(dataset, u, diagnostics)[o])


def mean_influence(dataset: CoupledDataset, u: int) -> float:
    """Average of p(o, u) over the objects ``u`` collected."""
    objs = dataset.user_object.neighbors(LEFT, u)
    if objs.size == 0:
        raise ExcludedUserError(f"user {u} collected no objects")
    if dataset.user_group.degree(LEFT, u) == 0:
        raise ExcludedUserError(f"user {u} joined no group")
    dist = influence_distribution(dataset, u)
    return math.fsum(dist[objs].tolist()) / objs.size


def mean_influence_all(dataset: CoupledDataset,
                       diagnostics: InfluenceDiagnostics | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized mean influence for every eligible user.

    Returns ``(users, means)`` in ascending user order. Users with no
    objects or no groups are skipped and counted in ``diagnostics``.
    """
    A = dataset.user_object.matrix
    B = dataset.user_group.matrix
    ko = dataset.user_object.left_degrees
    kc = dataset.user_group.left_degrees
    P, totals = group_object_distribution(dataset)
    # M[c, u] = sum over u's objects of p(o|c)
    M = (P @ A.T).tocsr()
    per_user = np.asarray(B.multiply(M.T.tocsr()).sum(axis=1)).ravel()
    eligible = (ko > 0) & (kc > 0)
    if diagnostics is not None:
        diagnostics.excluded_users += int((~eligible).sum())
        diagnostics.excluded_reasons = {
            "no_objects": int((ko == 0).sum()),
            "no_groups": int((kc == 0).sum()),
        }
        empty = totals == 0
        diagnostics.empty_group_memberships += int(B[:, empty].sum()) if empty.any() else 0
    users = np.flatnonzero(eligible)
    return users, per_user[users] / (ko[users] * kc[users])


def influence_curve(dataset: CoupledDataset, scale: float = DEFAULT_BIN_SCALE,
                    diagnostics: InfluenceDiagnostics | None = None) -> list[CurvePoint]:
    """Mean influence binned by object degree with bins (a(x^2-x), a(x^2+x)]."""
    users, means = mean_influence_all(dataset, diagnostics)
    ko = dataset.user_object.left_degrees[users]
    return sqrt_log_binned_mean(ko, means, scale)

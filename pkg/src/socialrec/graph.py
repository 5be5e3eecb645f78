"""Sparse bipartite graphs and the coupled user-object / user-group dataset."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Sequence

import numpy as np
import scipy.sparse as sp

LEFT = "left"
RIGHT = "right"


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.flags.writeable = False
    return arr


class BipartiteGraph:
    """Immutable binary bipartite adjacency stored in both orientations.

    Left nodes are users; right nodes are objects or groups. Neighbor lists
    are sorted and duplicate-free in both directions, so two graphs built
    from the same edge set compare equal.
    """

    __slots__ = ("_fwd", "_bwd", "left_degrees", "right_degrees")

    def __init__(self, left_count: int, right_count: int, left_idx, right_idx):
        left_idx = np.asarray(left_idx, dtype=np.int64)
        right_idx = np.asarray(right_idx, dtype=np.int64)
        if left_idx.shape != right_idx.shape:
            raise ValueError("edge index arrays differ in length")
        if left_idx.size:
            if left_idx.min() < 0 or left_idx.max() >= left_count:
                raise IndexError("left index out of range")
            if right_idx.min() < 0 or right_idx.max() >= right_count:
                raise IndexError("right index out of range")
        data = np.ones(left_idx.size, dtype=np.float64)
        fwd = sp.csr_matrix((data, (left_idx, right_idx)), shape=(left_count, right_count))
        # coo->csr sums duplicates; binarize
        fwd.data[:] = 1.0
        fwd.sort_indices()
        bwd = fwd.T.tocsr()
        bwd.sort_indices()
        for m in (fwd, bwd):
            for arr in (m.data, m.indices, m.indptr):
                _frozen(arr)
        self._fwd = fwd
        self._bwd = bwd
        self.left_degrees = _frozen(np.diff(fwd.indptr).astype(np.int64))
        self.right_degrees = _frozen(np.diff(bwd.indptr).astype(np.int64))

    @classmethod
    def empty(cls, left_count: int, right_count: int) -> "BipartiteGraph":
        return cls(left_count, right_count, [], [])

    @property
    def left_count(self) -> int:
        return self._fwd.shape[0]

    @property
    def right_count(self) -> int:
        return self._fwd.shape[1]

    @property
    def n_edges(self) -> int:
        return int(self._fwd.nnz)

    @property
    def matrix(self) -> sp.csr_matrix:
        """Left x right binary CSR matrix (read-only buffers)."""
        return self._fwd

    @property
    def matrix_t(self) -> sp.csr_matrix:
        """Right x left binary CSR matrix (read-only buffers)."""
        return self._bwd

    def _side(self, side: str) -> sp.csr_matrix:
        if side == LEFT:
            return self._fwd
        if side == RIGHT:
            return self._bwd
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")

    def degree(self, side: str, node: int) -> int:
        degs = self.left_degrees if side == LEFT else self.right_degrees
        self._side(side)
        if not 0 <= node < degs.size:
            raise IndexError(f"{side} node {node} out of range [0, {degs.size})")
        return int(degs[node])

    def neighbors(self, side: str, node: int) -> np.ndarray:
        """Sorted neighbor indices of ``node`` as a read-only view."""
        m = self._side(side)
        if not 0 <= node < m.shape[0]:
            raise IndexError(f"{side} node {node} out of range [0, {m.shape[0]})")
        return m.indices[m.indptr[node]:m.indptr[node + 1]]

    def edges(self) -> np.ndarray:
        """All edges as an (E, 2) array in canonical (left, right) order."""
        rows = np.repeat(np.arange(self.left_count, dtype=np.int64), self.left_degrees)
        return np.column_stack([rows, self._fwd.indices.astype(np.int64)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, BipartiteGraph):
            return NotImplemented
        return (
            self._fwd.shape == other._fwd.shape
            and np.array_equal(self._fwd.indptr, other._fwd.indptr)
            and np.array_equal(self._fwd.indices, other._fwd.indices)
        )

    __hash__ = None

    def __repr__(self) -> str:
        return (f"BipartiteGraph(left={self.left_count}, right={self.right_count}, "
                f"edges={self.n_edges})")


@dataclass(frozen=True)
class LabeledGraph:
    graph: BipartiteGraph
    left_labels: tuple
    right_labels: tuple
    duplicates: int = 0


def _index_labels(labels: Iterable[Hashable], table: dict, order: list) -> np.ndarray:
    out = []
    for lab in labels:
        idx = table.get(lab)
        if idx is None:
            idx = table[lab] = len(order)
            order.append(lab)
        out.append(idx)
    return np.asarray(out, dtype=np.int64)


def build_graph(edges: Sequence[tuple[Hashable, Hashable]]) -> LabeledGraph:
    """Build a graph from external-id pairs.

    Ids get dense indices in order of first appearance on each side.
    Repeated pairs collapse to one edge; how many were dropped is returned
    in ``duplicates``.
    """
    lt: dict = {}
    rt: dict = {}
    lo: list = []
    ro: list = []
    li = _index_labels((e[0] for e in edges), lt, lo)
    ri = _index_labels((e[1] for e in edges), rt, ro)
    g = BipartiteGraph(len(lo), len(ro), li, ri)
    return LabeledGraph(g, tuple(lo), tuple(ro), len(edges) - g.n_edges)


@dataclass(frozen=True, eq=False)
class CoupledDataset:
    """A user-object graph and a user-group graph over one user index."""

    user_object: BipartiteGraph
    user_group: BipartiteGraph
    user_labels: tuple = field(default=None)
    object_labels: tuple = field(default=None)
    group_labels: tuple = field(default=None)

    def __post_init__(self):
        if self.user_object.left_count != self.user_group.left_count:
            raise ValueError("user counts differ between the two graphs")
        defaults = {
            "user_labels": self.user_object.left_count,
            "object_labels": self.user_object.right_count,
            "group_labels": self.user_group.right_count,
        }
        for name, count in defaults.items():
            labels = getattr(self, name)
            if labels is None:
                labels = tuple(str(i) for i in range(count))
            else:
                labels = tuple(labels)
            if len(labels) != count:
                raise ValueError(f"{name} has {len(labels)} entries, expected {count}")
            if len(set(labels)) != count:
                raise ValueError(f"{name} contains duplicate ids")
            object.__setattr__(self, name, labels)

    @property
    def n_users(self) -> int:
        return self.user_object.left_count

    @property
    def n_objects(self) -> int:
        return self.user_object.right_count

    @property
    def n_groups(self) -> int:
        return self.user_group.right_count

    def user_index(self, label) -> int:
        return self.user_labels.index(label)

    def with_user_object(self, graph: BipartiteGraph) -> "CoupledDataset":
        """Same dataset with the user-object graph replaced (same shape)."""
        if (graph.left_count, graph.right_count) != (self.n_users, self.n_objects):
            raise ValueError("replacement graph has a different shape")
        return CoupledDataset(graph, self.user_group, self.user_labels,
                              self.object_labels, self.group_labels)

    def stats(self) -> dict:
        """Dataset size summary with one entry per column of the usual stats table."""
        return {
            "users": self.n_users,
            "objects": self.n_objects,
            "groups": self.n_groups,
            "user_object_pairs": self.user_object.n_edges,
            "user_group_pairs": self.user_group.n_edges,
        }

    def __eq__(self, other) -> bool:
        if not isinstance(other, CoupledDataset):
            return NotImplemented
        return (self.user_object == other.user_object
                and self.user_group == other.user_group
                and self.user_labels == other.user_labels
                and self.object_labels == other.object_labels
                and self.group_labels == other.group_labels)

    __hash__ = None


def coupled_from_indices(n_users: int, n_objects: int, n_groups: int,
                         object_edges, group_edges) -> CoupledDataset:
    """Convenience constructor from integer (user, object) and (user, group) pairs."""
    oe = np.asarray(object_edges, dtype=np.int64).reshape(-1, 2)
    ge = np.asarray(group_edges, dtype=np.int64).reshape(-1, 2)
    return CoupledDataset(
        BipartiteGraph(n_users, n_objects, oe[:, 0], oe[:, 1]),
        BipartiteGraph(n_users, n_groups, ge[:, 0], ge[:, 1]),
    )

"""Edge-file ingestion and CSV export."""
from __future__ import annotations

import csv
import hashlib
from dataclasses import dataclass, asdict
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .graph import BipartiteGraph, CoupledDataset


class EdgeParseError(ValueError):
    def __init__(self, path, lineno: int, line: str):
        super().__init__(f"{path}:{lineno}: expected 2 fields, got {line!r}")
        self.path = str(path)
        self.lineno = lineno


class EmptyDatasetError(ValueError):
    pass


def parse_edge_file(path, delimiter: str = "\t") -> list[tuple[str, str]]:
    """Read ``left<delim>right`` pairs in file order.

    ``#`` comments and blank lines are skipped; duplicates are kept.
    """
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.lstrip().startswith("#"):
                continue
            fields = [f.strip() for f in line.split(delimiter)]
            if len(fields) != 2 or not all(fields):
                raise EdgeParseError(path, lineno, line)
            pairs.append((fields[0], fields[1]))
    return pairs


@dataclass
class IngestReport:
    raw_object_edges: int
    raw_group_edges: int
    duplicate_object_edges: int
    duplicate_group_edges: int
    removed_users: int
    removed_object_edges: int
    kept_object_edges: int
    kept_group_edges: int

    def as_dict(self) -> dict:
        return asdict(self)


def _dense(labels: Iterable, table: dict, order: list) -> list[int]:
    out = []
    for lab in labels:
        if lab not in table:
            table[lab] = len(order)
            order.append(lab)
        out.append(table[lab])
    return out


def assemble_dataset(user_object_edges: Sequence[tuple], user_group_edges: Sequence[tuple]
                     ) -> tuple[CoupledDataset, IngestReport]:
    """Couple the two edge lists, keeping only users who joined at least one group.

    Users are indexed in first-appearance order over the object file then
    the group file; objects and groups in first-appearance order among the
    kept edges.
    """
    grouped = {u for u, _ in user_group_edges}
    kept_obj = [(u, o) for u, o in user_object_edges if u in grouped]
    users: dict = {}
    user_order: list = []
    _dense((u for u, _ in kept_obj), users, user_order)
    _dense((u for u, _ in user_group_edges), users, user_order)
    if not user_order:
        raise EmptyDatasetError("no user joined any group")
    objects: dict = {}
    object_order: list = []
    groups: dict = {}
    group_order: list = []
    oi = _dense((o for _, o in kept_obj), objects, object_order)
    gi = _dense((c for _, c in user_group_edges), groups, group_order)
    uo = BipartiteGraph(len(user_order), len(object_order),
                        [users[u] for u, _ in kept_obj], oi)
    ug = BipartiteGraph(len(user_order), len(group_order),
                        [users[u] for u, _ in user_group_edges], gi)
    raw_users = {u for u, _ in user_object_edges}
    report = IngestReport(
        raw_object_edges=len(user_object_edges),
        raw_group_edges=len(user_group_edges),
        duplicate_object_edges=len(kept_obj) - uo.n_edges,
        duplicate_group_edges=len(user_group_edges) - ug.n_edges,
        removed_users=len(raw_users - grouped),
        removed_object_edges=len(user_object_edges) - len(kept_obj),
        kept_object_edges=uo.n_edges,
        kept_group_edges=ug.n_edges,
    )
    ds = CoupledDataset(uo, ug, tuple(user_order), tuple(object_order), tuple(group_order))
    return ds, report


def load_dataset(objects_path, groups_path, delimiter: str = "\t") -> tuple[CoupledDataset, IngestReport]:
    return assemble_dataset(parse_edge_file(objects_path, delimiter),
                            parse_edge_file(groups_path, delimiter))


def write_edge_file(path, pairs: Iterable[tuple], delimiter: str = "\t") -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for a, b in pairs:
            fh.write(f"{a}{delimiter}{b}\n")


def dataset_edge_labels(dataset: CoupledDataset) -> tuple[list[tuple], list[tuple]]:
    """Both edge lists of ``dataset`` in external ids, canonical order."""
    ul, ol, gl = dataset.user_labels, dataset.object_labels, dataset.group_labels
    uo = [(ul[u], ol[o]) for u, o in dataset.user_object.edges().tolist()]
    ug = [(ul[u], gl[c]) for u, c in dataset.user_group.edges().tolist()]
    return uo, ug


def file_sha256(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write rows with shortest round-trip float formatting (stable across runs)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])


def degree_histogram(dataset: CoupledDataset) -> list[tuple[str, int, int]]:
    """(kind, degree, count) rows for the four degree sequences of a coupled dataset."""
    seqs = {
        "user_objects": dataset.user_object.left_degrees,
        "user_groups": dataset.user_group.left_degrees,
        "object": dataset.user_object.right_degrees,
        "group": dataset.user_group.right_degrees,
    }
    rows = []
    for kind, degs in seqs.items():
        values, counts = np.unique(degs, return_counts=True)
        rows.extend((kind, int(v), int(c)) for v, c in zip(values, counts))
    return rows

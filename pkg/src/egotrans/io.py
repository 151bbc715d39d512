"""File formats and atomic writes for every pipeline artifact.

All writers go through a temp-file-plus-rename so a crashed run never
leaves a truncated artifact, and all readers (and writers) are
gz-transparent: a ``.gz`` suffix selects gzip.  Floats are rendered with
``repr`` so values round-trip exactly and reruns are byte-identical.
"""

from __future__ import annotations

import csv
import gzip
import io as _io
import json
import os
import tempfile
from typing import Iterable, Sequence

import numpy as np

from .graphs import NodeTable, Snapshot, TemporalGraph
from .synth import ANOMALY, NORMAL

NOISE_TOKEN = "noise"


def open_text(path: str, mode: str = "rt"):
    if str(path).endswith(".gz"):
        return gzip.open(path, mode, encoding="utf-8")
    return open(path, mode, encoding="utf-8")


def atomic_write_text(path: str, text: str) -> None:
    """Write text to ``path`` via a same-directory temp file and rename."""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        if str(path).endswith(".gz"):
            with os.fdopen(fd, "wb") as raw:
                # fixed mtime so identical content gzips identically
                with gzip.GzipFile(fileobj=raw, mode="wb", mtime=0) as zf:
                    zf.write(text.encode("utf-8"))
        else:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def fmt_float(x: float) -> str:
    return repr(float(x))


# -- temporal edge lists ------------------------------------------------

def edge_list_text(g: TemporalGraph) -> str:
    """Edge-list lines ``u v t`` with t = snapshot index."""
    lines = []
    names = g.universe.names
    for t, snap in enumerate(g.snapshots):
        for u, v in sorted(snap.edges):
            lines.append(f"{names[u]} {names[v]} {t}")
    return "\n".join(lines) + ("\n" if lines else "")


def write_edge_list(path: str, g: TemporalGraph) -> None:
    atomic_write_text(path, edge_list_text(g))


# -- labels -------------------------------------------------------------

def labels_text(names: Sequence[str], labels: Sequence[str]) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node", "label"])
    for name, label in zip(names, labels):
        w.writerow([name, label])
    return buf.getvalue()


def write_labels(path: str, names: Sequence[str], labels: Sequence[str]) -> None:
    if len(names) != len(labels):
        raise ValueError("names and labels must have equal length")
    atomic_write_text(path, labels_text(names, labels))


def read_labels(path: str) -> tuple[list[str], list[str]]:
    """Read a node,label CSV; returns (names, labels) in file order."""
    with open_text(path) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:2]] != ["node", "label"]:
            raise ValueError(f"{path}: expected header 'node,label'")
        names, labels = [], []
        for row in reader:
            if not row:
                continue
            if len(row) < 2:
                raise ValueError(f"{path}: short row {row!r}")
            name, label = row[0], row[1]
            if label not in (NORMAL, ANOMALY):
                raise ValueError(
                    f"{path}: label must be '{NORMAL}' or '{ANOMALY}', got {label!r}"
                )
            names.append(name)
            labels.append(label)
    return names, labels


# -- snapshot bundles ---------------------------------------------------

def bundle_obj(g: TemporalGraph) -> dict:
    return {
        "nodes": list(g.universe.names),
        "snapshots": [
            [list(e) for e in sorted(snap.edges)] for snap in g.snapshots
        ],
    }


def write_bundle(path: str, g: TemporalGraph) -> None:
    atomic_write_text(path, json.dumps(bundle_obj(g), indent=1) + "\n")


def read_bundle(path: str) -> TemporalGraph:
    with open_text(path) as fh:
        obj = json.load(fh)
    table = NodeTable(obj["nodes"])
    snaps = [
        Snapshot(len(table), [tuple(e) for e in edges])
        for edges in obj["snapshots"]
    ]
    return TemporalGraph(table, snaps)


# -- embeddings ---------------------------------------------------------

def embeddings_text(names: Sequence[str], matrix: np.ndarray) -> str:
    matrix = np.asarray(matrix, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] != len(names):
        raise ValueError("matrix must be 2-D with one row per name")
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node"] + [f"c{i}" for i in range(matrix.shape[1])])
    for name, row in zip(names, matrix):
        w.writerow([name] + [fmt_float(x) for x in row])
    return buf.getvalue()


def write_embeddings(path: str, names: Sequence[str], matrix: np.ndarray) -> None:
    atomic_write_text(path, embeddings_text(names, matrix))


def read_embeddings(path: str) -> tuple[list[str], np.ndarray]:
    with open_text(path) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or not header or header[0] != "node":
            raise ValueError(f"{path}: expected an embeddings CSV header")
        names, rows = [], []
        for row in reader:
            if not row:
                continue
            names.append(row[0])
            rows.append([float(x) for x in row[1:]])
    if not names:
        raise ValueError(f"{path}: no embedding rows")
    widths = {len(r) for r in rows}
    if len(widths) != 1:
        raise ValueError(f"{path}: ragged embedding rows")
    return names, np.asarray(rows, dtype=float)


def step_vectors_text(
    names: Sequence[str],
    rows: Iterable[tuple[int, int, np.ndarray]],
    dim: int,
) -> str:
    """Step-level dump: one row per (node, step) with integer counts."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node", "step"] + [f"c{i}" for i in range(dim)])
    for node, step, counts in rows:
        w.writerow([names[node], step] + [int(c) for c in counts])
    return buf.getvalue()


# -- cluster assignments ------------------------------------------------

def assignments_text(
    names: Sequence[str], clusters: Sequence[int], predicted: Sequence[str]
) -> str:
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node", "cluster", "predicted"])
    for name, c, pred in zip(names, clusters, predicted):
        w.writerow([name, NOISE_TOKEN if c < 0 else int(c), pred])
    return buf.getvalue()


def write_assignments(
    path: str, names: Sequence[str], clusters: Sequence[int], predicted: Sequence[str]
) -> None:
    atomic_write_text(path, assignments_text(names, clusters, predicted))


def read_assignments(path: str) -> tuple[list[str], list[int], list[str]]:
    with open_text(path) as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header[:3]] != [
            "node",
            "cluster",
            "predicted",
        ]:
            raise ValueError(f"{path}: expected header 'node,cluster,predicted'")
        names, clusters, predicted = [], [], []
        for row in reader:
            if not row:
                continue
            names.append(row[0])
            clusters.append(-1 if row[1] == NOISE_TOKEN else int(row[1]))
            predicted.append(row[2])
    return names, clusters, predicted


# -- 2-D projections ----------------------------------------------------

def projection_text(
    names: Sequence[str],
    coords: np.ndarray,
    clusters: Sequence[int] | None = None,
    predicted: Sequence[str] | None = None,
    truth: Sequence[str] | None = None,
) -> str:
    coords = np.asarray(coords, dtype=float)
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["node", "x", "y", "cluster", "predicted", "truth"])
    for i, name in enumerate(names):
        cluster = "" if clusters is None else (
            NOISE_TOKEN if clusters[i] < 0 else int(clusters[i])
        )
        w.writerow(
            [
                name,
                fmt_float(coords[i, 0]),
                fmt_float(coords[i, 1]),
                cluster,
                "" if predicted is None else predicted[i],
                "" if truth is None else truth[i],
            ]
        )
    return buf.getvalue()


# -- json artifacts -----------------------------------------------------

def write_json(path: str, obj) -> None:
    atomic_write_text(path, json.dumps(obj, indent=1, sort_keys=True) + "\n")


def read_json(path: str):
    with open_text(path) as fh:
        return json.load(fh)

"""Static-graph baseline embedding and 2-D projection utilities.

Static embedding methods need a single graph, so the snapshot sequence is
remodeled as its time-aggregated union: an edge's weight is the number of
snapshots containing it.  The spectral embedding returns coordinates in
the eigenvectors of the (by default symmetric-normalized) Laplacian with
the smallest eigenvalues, trivial eigenvector included; every returned
pair is checked against the residual tolerance.  Isolated nodes have zero
degree and get an all-zero Laplacian row, so they sit in the kernel.

``pca_project`` provides the 2-D view used for plot-data emission.
Externally trained embedding CSVs (random-walk methods and the like) feed
the same clustering and evaluation stages; nothing here retrains them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from sklearn.utils import check_array

from .errors import ConvergenceError
from .graphs import Snapshot, TemporalGraph


@dataclass(frozen=True)
class SpectralParams:
    dim: int = 2
    tol: float = 1e-8
    max_iter: int = 1000  # cap for iterative refinement; the dense solver ignores it
    normalized: bool = True


def union_graph(g: TemporalGraph) -> Snapshot:
    """Collapse the snapshots into one weighted graph.

    Weight of {u, v} = number of snapshots containing the edge; at most T.
    """
    weights: dict[tuple[int, int], int] = {}
    for snap in g.snapshots:
        for e in snap.edges:
            weights[e] = weights.get(e, 0) + 1
    return Snapshot(g.n_nodes, weights.keys(), weights=weights)


def laplacian(graph: Snapshot, normalized: bool = True) -> np.ndarray:
    n = graph.n
    W = np.zeros((n, n))
    for (u, v) in graph.edges:
        w = graph.weights[(u, v)] if graph.weights is not None else 1
        W[u, v] = W[v, u] = float(w)
    deg = W.sum(axis=1)
    if not normalized:
        return np.diag(deg) - W
    inv_sqrt = np.zeros(n)
    nz = deg > 0
    inv_sqrt[nz] = 1.0 / np.sqrt(deg[nz])
    L = -(inv_sqrt[:, None] * W * inv_sqrt[None, :])
    L[np.diag_indices(n)] = np.where(nz, 1.0, 0.0)
    return L


def spectral_embed(
    graph: Snapshot, params: SpectralParams = SpectralParams()
) -> tuple[np.ndarray, np.ndarray]:
    """Node coordinates in the low eigenvectors of the Laplacian.

    Returns (vectors, values): vectors is (n, dim) with column j the
    eigenvector of the j-th smallest eigenvalue, values the eigenvalues.
    """
    if params.dim < 1:
        raise ValueError(f"dim must be >= 1, got {params.dim}")
    if graph.n <= params.dim:
        raise ValueError(
            f"dim must be < node count; got dim={params.dim}, n={graph.n}"
        )
    L = laplacian(graph, normalized=params.normalized)
    try:
        values, vectors = np.linalg.eigh(L)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(float("inf"), params.tol) from exc
    values = values[: params.dim]
    vectors = vectors[:, : params.dim]
    for j in range(params.dim):
        x = vectors[:, j]
        residual = float(np.linalg.norm(L @ x - values[j] * x))
        if residual > params.tol * float(np.linalg.norm(x)):
            raise ConvergenceError(residual, params.tol)
    vectors = _fix_signs(vectors)
    return vectors, values


def _fix_signs(columns: np.ndarray) -> np.ndarray:
    """Flip column signs so the first nonzero entry of each is positive."""
    out = columns.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        nz = np.flatnonzero(np.abs(col) > 1e-12 * max(1.0, float(np.abs(col).max())))
        if len(nz) and col[nz[0]] < 0:
            out[:, j] = -col
    return out


def pca_project(points, out_dim: int = 2) -> np.ndarray:
    """Center the data and project it onto its top principal directions.

    Directions are ordered by descending variance with a deterministic
    sign (first nonzero coordinate positive).  Identical points project to
    all zeros.
    """
    X = check_array(points, dtype=float, ensure_2d=True)
    if X.shape[0] < 2:
        raise ValueError(f"need at least 2 points, got {X.shape[0]}")
    centered = X - X.mean(axis=0)
    if not np.any(np.abs(centered) > 0):
        return np.zeros((X.shape[0], out_dim))
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    directions = _fix_signs(vt[:out_dim].T).T
    coords = centered @ directions.T
    if coords.shape[1] < out_dim:
        pad = np.zeros((X.shape[0], out_dim - coords.shape[1]))
        coords = np.hstack([coords, pad])
    return coords

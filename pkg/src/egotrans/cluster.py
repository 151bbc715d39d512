"""Density-based clustering of embeddings and the cluster-to-anomaly rule.

This is a deliberately plain DBSCAN: neighborhoods are brute-force
Euclidean balls (distance <= eps, the point itself included), points with
at least ``min_pts`` neighbors are core points, and clusters are grown by a
FIFO expansion that scans indices in ascending order.  That makes the
result fully deterministic: cluster ids are numbered by the first core
point reached in input order, and a border point in reach of several
clusters keeps the first cluster that claimed it.

Cluster structure is turned into anomaly predictions by one of two rules:
``noise-only`` flags just the noise points, while ``small-clusters`` also
flags every cluster smaller than a fraction theta of all points.  The
latter is the default: a group of anomalous nodes behaving identically
forms a dense little cluster of its own, which noise-only would miss.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin
from sklearn.utils import check_array

from .synth import ANOMALY, NORMAL

NOISE = -1

RULES = ("noise-only", "small-clusters")


def _as_points(points) -> np.ndarray:
    X = check_array(points, dtype=float, ensure_2d=True)
    return X


def standardize_columns(X: np.ndarray) -> np.ndarray:
    """Z-score each column; zero-variance columns pass through unchanged."""
    X = np.asarray(X, dtype=float)
    mu = X.mean(axis=0)
    sd = X.std(axis=0)
    out = X.copy()
    nz = sd > 0
    out[:, nz] = (X[:, nz] - mu[nz]) / sd[nz]
    return out


def dbscan(points, eps: float, min_pts: int, standardize: bool = False) -> np.ndarray:
    """Cluster points; returns one label per point (NOISE = -1)."""
    X = _as_points(points)
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    if min_pts < 1:
        raise ValueError(f"min_pts must be >= 1, got {min_pts}")
    if standardize:
        X = standardize_columns(X)
    n = X.shape[0]

    d2 = _sq_distances(X)
    reach = d2 <= eps * eps
    neighbor_lists = [np.flatnonzero(reach[i]) for i in range(n)]
    core = np.array([len(nb) >= min_pts for nb in neighbor_lists])

    labels = np.full(n, NOISE, dtype=int)
    claimed = np.zeros(n, dtype=bool)
    next_id = 0
    for seed in range(n):
        if claimed[seed] or not core[seed]:
            continue
        cid = next_id
        next_id += 1
        labels[seed] = cid
        claimed[seed] = True
        queue = [seed]
        head = 0
        while head < len(queue):
            j = queue[head]
            head += 1
            for nb in neighbor_lists[j]:
                if claimed[nb]:
                    continue
                claimed[nb] = True
                labels[nb] = cid
                if core[nb]:
                    queue.append(nb)
    return labels


def _sq_distances(X: np.ndarray) -> np.ndarray:
    # row-by-row differences: accurate at boundary radii, unlike the
    # expanded quadratic form, and symmetric bit for bit
    n = X.shape[0]
    d2 = np.empty((n, n))
    for i in range(n):
        diff = X - X[i]
        d2[i] = np.einsum("ij,ij->i", diff, diff)
    return d2


def kth_neighbor_distances(points, k: int) -> np.ndarray:
    """Distance from each point to its k-th nearest other point."""
    X = _as_points(points)
    n = X.shape[0]
    if k >= n:
        raise ValueError(f"k={k} needs at least k+1 points, got {n}")
    d = np.sqrt(_sq_distances(X))
    np.fill_diagonal(d, np.inf)
    d.sort(axis=1)
    return d[:, k - 1]


def default_eps(points, k: int = 4) -> float:
    """Default eps: the top of the k-NN distance curve.

    This is the smallest radius at which every point clears the core-point
    threshold for min_pts = k, so no point can end up as noise for lack of
    neighbors: a point's nearest neighbor is never farther than its own
    k-distance, hence never farther than this radius.  Separated groups
    still split, because group gaps dwarf within-group k-distances.

    The textbook alternative (the knee of the k-distance curve at its
    maximum second difference, see :func:`knee_eps`) is unstable on
    integer-count embeddings: heavy duplication quantizes the curve and the
    sharpest bend often sits at the quantization step, which shatters the
    main mass into noise.
    """
    X = _as_points(points)
    if X.shape[0] < 2:
        return 1.0
    k = min(k, X.shape[0] - 1)
    eps = float(kth_neighbor_distances(X, k).max())
    return eps if eps > 0 else 1.0


def knee_eps(points, k: int = 4) -> float:
    """The knee of the ascending k-NN distance curve.

    The knee is the curve point with the maximum second difference.  If the
    curve is degenerate there (all zeros up to the knee), fall back to the
    smallest positive k-distance, then to 1.0 when every k-distance is zero.
    Kept for experiments; :func:`default_eps` is what the pipeline uses.
    """
    X = _as_points(points)
    if X.shape[0] < 2:
        return 1.0
    k = min(k, X.shape[0] - 1)
    curve = np.sort(kth_neighbor_distances(X, k))
    eps = 0.0
    if len(curve) >= 3:
        second = curve[2:] - 2.0 * curve[1:-1] + curve[:-2]
        eps = float(curve[1 + int(np.argmax(second))])
    elif len(curve) > 0:
        eps = float(curve[-1])
    if eps <= 0.0:
        positive = curve[curve > 0]
        eps = float(positive[0]) if len(positive) else 1.0
    return eps


def cluster_sizes(labels: np.ndarray) -> dict[int, int]:
    sizes: dict[int, int] = {}
    for lab in labels:
        if lab >= 0:
            sizes[lab] = sizes.get(lab, 0) + 1
    return sizes


def to_anomaly_labels(
    labels, rule: str = "small-clusters", theta: float = 0.5
) -> list[str]:
    """Map a cluster assignment to per-point normal/anomaly predictions."""
    if rule not in RULES:
        raise ValueError(f"rule must be one of {RULES}, got {rule!r}")
    labels = np.asarray(labels, dtype=int)
    if rule == "noise-only":
        return [ANOMALY if lab == NOISE else NORMAL for lab in labels]
    if not 0.0 < theta < 1.0:
        raise ValueError(f"theta must be in (0, 1), got {theta}")
    sizes = cluster_sizes(labels)
    cutoff = theta * len(labels)
    return [
        ANOMALY if lab == NOISE or sizes[lab] < cutoff else NORMAL
        for lab in labels
    ]


class DBSCAN(BaseEstimator, ClusterMixin):
    """Estimator wrapper around :func:`dbscan`.

    ``eps=None`` resolves :func:`default_eps` over the ``min_pts``-NN
    distance curve at fit time; the resolved value lands in ``eps_``.
    """

    def __init__(
        self,
        eps: float | None = None,
        min_pts: int = 4,
        standardize: bool = False,
    ):
        self.eps = eps
        self.min_pts = min_pts
        self.standardize = standardize

    def fit(self, X, y=None):
        X = _as_points(X)
        work = standardize_columns(X) if self.standardize else X
        self.eps_ = float(self.eps) if self.eps is not None else default_eps(
            work, k=self.min_pts
        )
        self.labels_ = dbscan(work, self.eps_, self.min_pts, standardize=False)
        return self

"""DBSCAN tests against a naive closed-form reference.

The reference computes core points by neighborhood counting, labels core
points through union-find components of the eps-graph restricted to cores,
and gives each border point the smallest cluster id among its core
neighbors.  That closed form is exactly what the deterministic scan-order
expansion must produce.
"""

from __future__ import annotations

import random

import numpy as np
import pytest

from egotrans.cluster import (
    DBSCAN,
    NOISE,
    dbscan,
    default_eps,
    knee_eps,
    kth_neighbor_distances,
    standardize_columns,
    to_anomaly_labels,
)
from egotrans.synth import ANOMALY, NORMAL


# -- naive reference ------------------------------------------------------

def naive_dbscan(points, eps, min_pts):
    X = np.asarray(points, dtype=float)
    n = len(X)
    within = [
        [j for j in range(n) if np.linalg.norm(X[i] - X[j]) <= eps]
        for i in range(n)
    ]
    core = [len(within[i]) >= min_pts for i in range(n)]

    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        if not core[i]:
            continue
        for j in within[i]:
            if core[j]:
                ri, rj = find(i), find(j)
                if ri != rj:
                    parent[max(ri, rj)] = min(ri, rj)

    cluster_of_root: dict[int, int] = {}
    labels = [NOISE] * n
    for i in range(n):
        if core[i]:
            root = find(i)
            if root not in cluster_of_root:
                cluster_of_root[root] = len(cluster_of_root)
            labels[i] = cluster_of_root[root]
    for i in range(n):
        if not core[i]:
            candidates = [labels[j] for j in within[i] if core[j]]
            if candidates:
                labels[i] = min(candidates)
    return np.asarray(labels)


def random_points(rng, n, dim, spread=3.0):
    return np.asarray(
        [[rng.uniform(-spread, spread) for _ in range(dim)] for _ in range(n)]
    )


# -- examples -------------------------------------------------------------

def test_all_identical_points_form_one_cluster():
    X = np.zeros((6, 3))
    labels = dbscan(X, eps=0.5, min_pts=6)
    assert list(labels) == [0] * 6


def test_line_with_outlier():
    X = np.array([[0.0], [0.1], [0.2], [10.0]])
    labels = dbscan(X, eps=0.5, min_pts=2)
    assert list(labels[:3]) == [0, 0, 0]
    assert labels[3] == NOISE


def test_min_pts_above_count_gives_all_noise():
    X = np.zeros((3, 2))
    labels = dbscan(X, eps=1.0, min_pts=4)
    assert all(lab == NOISE for lab in labels)


def test_input_validation():
    with pytest.raises(ValueError):
        dbscan(np.zeros((3, 2)), eps=0.0, min_pts=2)
    with pytest.raises(ValueError):
        dbscan(np.zeros((3, 2)), eps=1.0, min_pts=0)
    with pytest.raises(ValueError):
        dbscan([[0.0, 1.0], [1.0]], eps=1.0, min_pts=1)
    with pytest.raises(ValueError):
        dbscan(np.zeros((0, 2)), eps=1.0, min_pts=1)


def test_cluster_ids_follow_first_core_point_order():
    # two groups; the group containing index 0 must be cluster 0
    X = np.array([[0.0], [0.1], [5.0], [5.1]])
    labels = dbscan(X, eps=0.3, min_pts=2)
    assert list(labels) == [0, 0, 1, 1]


def test_border_point_joins_first_discovered_cluster():
    # border point at 1.0 is within eps of cores 0.4 (cluster 0) and 1.6
    # (cluster 1) but not itself core
    X = np.array([[0.0], [0.4], [1.6], [2.0], [1.0]])
    labels = dbscan(X, eps=0.6, min_pts=2)
    assert labels[4] == labels[0] == 0
    assert labels[2] == labels[3] == 1


def test_agreement_with_naive_reference():
    rng = random.Random(100)
    for trial in range(40):
        n = rng.randint(2, 200)
        dim = rng.randint(1, 3)
        X = random_points(rng, n, dim)
        eps = rng.uniform(0.2, 2.5)
        min_pts = rng.randint(1, 6)
        got = dbscan(X, eps, min_pts)
        expected = naive_dbscan(X, eps, min_pts)
        assert np.array_equal(got, expected), (trial, n, dim, eps, min_pts)


def test_core_partition_is_input_order_independent():
    rng = random.Random(8)
    X = random_points(rng, 60, 2)
    base = dbscan(X, eps=1.0, min_pts=3)
    perm = list(range(60))
    rng.shuffle(perm)
    shuffled = dbscan(X[perm], eps=1.0, min_pts=3)
    # noise set and the partition of points into clusters must agree
    assert {i for i in range(60) if base[perm[i]] == NOISE} == {
        i for i in range(60) if shuffled[i] == NOISE
    }
    base_groups = {}
    shuf_groups = {}
    for i in range(60):
        if base[perm[i]] != NOISE:
            base_groups.setdefault(base[perm[i]], set()).add(i)
        if shuffled[i] != NOISE:
            shuf_groups.setdefault(shuffled[i], set()).add(i)
    core_sets = lambda groups: {frozenset(g) for g in groups.values()}
    assert core_sets(base_groups) == core_sets(shuf_groups)


def test_noise_count_monotone_in_eps():
    rng = random.Random(15)
    X = random_points(rng, 80, 2)
    noise_counts = []
    for eps in (0.2, 0.4, 0.8, 1.6, 3.2):
        labels = dbscan(X, eps, min_pts=3)
        noise_counts.append(int(np.sum(labels == NOISE)))
    assert noise_counts == sorted(noise_counts, reverse=True)


def test_standardize_columns_zero_variance_passthrough():
    X = np.array([[1.0, 5.0], [2.0, 5.0], [3.0, 5.0]])
    Z = standardize_columns(X)
    assert np.allclose(Z[:, 1], 5.0)
    assert abs(Z[:, 0].mean()) < 1e-12 and abs(Z[:, 0].std() - 1) < 1e-12


# -- anomaly rules --------------------------------------------------------

def test_noise_only_rule():
    labels = [0, 0, 0, NOISE]
    assert to_anomaly_labels(labels, rule="noise-only") == [
        NORMAL,
        NORMAL,
        NORMAL,
        ANOMALY,
    ]


def test_small_clusters_rule():
    labels = [0] * 90 + [1] * 10
    pred = to_anomaly_labels(labels, rule="small-clusters", theta=0.2)
    assert pred[:90] == [NORMAL] * 90
    assert pred[90:] == [ANOMALY] * 10


def test_small_clusters_rule_flags_noise_too():
    labels = [0] * 9 + [NOISE]
    pred = to_anomaly_labels(labels, rule="small-clusters", theta=0.5)
    assert pred[-1] == ANOMALY


def test_rule_validation():
    with pytest.raises(ValueError):
        to_anomaly_labels([0], rule="smallest")
    with pytest.raises(ValueError):
        to_anomaly_labels([0], rule="small-clusters", theta=1.0)
    with pytest.raises(ValueError):
        to_anomaly_labels([0], rule="small-clusters", theta=0.0)


# -- default eps ----------------------------------------------------------

def test_default_eps_makes_every_point_core():
    rng = random.Random(3)
    X = random_points(rng, 120, 2)
    k = 4
    eps = default_eps(X, k=k)
    kd = kth_neighbor_distances(X, k)
    assert np.all(kd <= eps)
    labels = dbscan(X, eps, min_pts=k)
    assert NOISE not in labels


def test_default_eps_keeps_separated_groups_apart():
    rng = random.Random(4)
    near = random_points(rng, 40, 2, spread=1.0)
    far = random_points(rng, 40, 2, spread=1.0) + 500.0
    X = np.vstack([near, far])
    eps = default_eps(X, k=4)
    labels = dbscan(X, eps, min_pts=4)
    assert set(labels[:40]) != set(labels[40:])
    assert NOISE not in labels


def test_default_eps_degenerate_inputs():
    assert default_eps(np.zeros((10, 3)), k=4) == 1.0
    assert default_eps(np.zeros((1, 3)), k=4) == 1.0


# -- knee heuristic -------------------------------------------------------

def test_knee_eps_lands_before_the_big_jump():
    # dense cloud plus two far points: the knee must separate them
    X = np.array([[0.0], [0.05], [0.1], [0.15], [0.2], [8.0], [9.0]])
    eps = knee_eps(X, k=2)
    assert 0 < eps < 7.0


def test_knee_eps_positive_on_duplicate_heavy_data():
    X = np.zeros((30, 2))
    X[-1] = [5.0, 5.0]
    eps = knee_eps(X, k=4)
    assert eps > 0


def test_knee_eps_degenerate_all_identical():
    assert knee_eps(np.zeros((10, 3)), k=4) == 1.0


def test_dbscan_estimator_resolves_eps():
    X = np.array([[0.0], [0.1], [0.2], [10.0]])
    est = DBSCAN(eps=None, min_pts=2)
    labels = est.fit_predict(X)
    assert est.eps_ > 0
    assert np.array_equal(labels, est.labels_)
    assert est.get_params() == {"eps": None, "min_pts": 2, "standardize": False}

"""Shared fixtures and small test helpers.

``sample_pair`` is the worked example used throughout: an ego v whose
5-star egonet (plus one neighbor-neighbor edge e-f) gains a neighbor g and
several neighbor-neighbor edges one step later.  Its hand-checkable
transition counts are: 1 new ego edge (v-g), 5 new non-ego edges, 3
ego-cherry closures into triangles, and 1 non-ego edge deletion (e-f).
"""

from __future__ import annotations

import itertools
import random

import pytest

from egotrans.graphs import NodeTable, Snapshot, TemporalGraph, padded_pair

# node indices for the sample pair
V, B, C, D, E, F, G = range(7)
SAMPLE_NAMES = ["v", "b", "c", "d", "e", "f", "g"]

SAMPLE_EDGES_T = [(V, B), (V, C), (V, D), (V, E), (V, F), (E, F)]
SAMPLE_EDGES_T1 = [
    (V, B),
    (V, C),
    (V, D),
    (V, E),
    (V, F),
    (V, G),
    (B, C),
    (B, D),
    (B, G),
    (C, D),
    (E, G),
]


def sample_graph() -> TemporalGraph:
    return TemporalGraph(
        NodeTable(SAMPLE_NAMES),
        [Snapshot(7, SAMPLE_EDGES_T), Snapshot(7, SAMPLE_EDGES_T1)],
    )


@pytest.fixture
def sample_tg() -> TemporalGraph:
    return sample_graph()


@pytest.fixture
def sample_pair(sample_tg):
    return padded_pair(sample_tg[0], sample_tg[1], V)


def random_snapshot(rng: random.Random, n: int, p: float) -> Snapshot:
    edges = [
        (u, v) for u, v in itertools.combinations(range(n), 2) if rng.random() < p
    ]
    return Snapshot(n, edges)


def random_temporal_graph(
    rng: random.Random, n: int, T: int, p: float
) -> TemporalGraph:
    names = [f"x{i}" for i in range(n)]
    return TemporalGraph(
        NodeTable(names), [random_snapshot(rng, n, p) for _ in range(T)]
    )


def relabel_temporal_graph(g: TemporalGraph, perm: list[int]) -> TemporalGraph:
    """Apply an index permutation: node i becomes perm[i], names follow."""
    names = [None] * g.n_nodes
    for i, name in enumerate(g.universe.names):
        names[perm[i]] = name
    snaps = [
        Snapshot(g.n_nodes, [(perm[u], perm[v]) for u, v in snap.edges])
        for snap in g.snapshots
    ]
    return TemporalGraph(NodeTable(names), snaps)

"""Synthetic temporal graph with ground-truth normal/anomaly node labels.

Authentic nodes get Erdos-Renyi edges independently per snapshot; the
anomalous block alternates by snapshot parity between the empty graph
(even 0-based index) and a clique (odd index).  Anomalous-authentic edges
are off by default and Erdos-Renyi with the same p when enabled.

Generation is deterministic given the seed: one PCG64 stream, with edge
draws consumed in lexicographic pair order (authentic pairs first, then
cross pairs when enabled) snapshot by snapshot.  The name shuffle, when
requested, consumes the stream first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .graphs import Snapshot, TemporalGraph, NodeTable

NORMAL = "normal"
ANOMALY = "anomaly"

RNG_ALGORITHM = "PCG64"


@dataclass(frozen=True)
class SynthConfig:
    n: int = 500
    p: float = 0.0025
    a: float = 0.05
    T: int = 5
    seed: int = 0
    cross_edges: bool = False
    shuffle: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must be in [0, 1], got {self.p}")
        if not 0.0 <= self.a <= 1.0:
            raise ValueError(f"a must be in [0, 1], got {self.a}")
        if self.T < 2:
            raise ValueError(f"T must be >= 2, got {self.T}")

    @property
    def n_anomalous(self) -> int:
        return math.floor(self.a * self.n)

    @property
    def n_authentic(self) -> int:
        return self.n - self.n_anomalous

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "p": self.p,
            "a": self.a,
            "T": self.T,
            "seed": self.seed,
            "cross_edges": self.cross_edges,
            "shuffle": self.shuffle,
            "rng": RNG_ALGORITHM,
        }


def node_names(cfg: SynthConfig, rng: np.random.Generator | None = None) -> list[str]:
    width = len(str(cfg.n - 1))
    base = [f"n{i:0{width}d}" for i in range(cfg.n)]
    if cfg.shuffle:
        if rng is None:
            raise ValueError("shuffle requires the generator's RNG")
        perm = rng.permutation(cfg.n)
        return [base[perm[i]] for i in range(cfg.n)]
    return base


def generate(cfg: SynthConfig) -> tuple[TemporalGraph, list[str]]:
    """Build the temporal graph and per-node labels (by internal index).

    The anomalous nodes are the last floor(a*n) internal indices; labels
    persist across snapshots.
    """
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    names = node_names(cfg, rng)
    n_anom = cfg.n_anomalous
    n_auth = cfg.n_authentic
    labels = [NORMAL] * n_auth + [ANOMALY] * n_anom

    auth_pairs = list(combinations(range(n_auth), 2))
    anom_pairs = list(combinations(range(n_auth, cfg.n), 2))
    cross_pairs = [(i, j) for i in range(n_auth) for j in range(n_auth, cfg.n)]

    snapshots = []
    for t in range(cfg.T):
        edges: list[tuple[int, int]] = []
        if auth_pairs:
            draws = rng.random(len(auth_pairs))
            edges.extend(
                pair for pair, d in zip(auth_pairs, draws) if d < cfg.p
            )
        if t % 2 == 1:
            edges.extend(anom_pairs)
        if cfg.cross_edges and cross_pairs:
            draws = rng.random(len(cross_pairs))
            edges.extend(
                pair for pair, d in zip(cross_pairs, draws) if d < cfg.p
            )
        snapshots.append(Snapshot(cfg.n, edges))

    return TemporalGraph(NodeTable(names), snapshots), labels

"""Per-node transition counting and aggregation into embeddings.

For each node and each consecutive snapshot pair, every subset S of the
padded egonet pair's union vertex set with 2 <= |S| <= n_max is classified
once: take the edges induced by S on both sides, treat the pair as rooted
when the ego is in S (ego pinned to local index 0), and look the pair up in
the catalog.  Subsets whose two sides are isomorphic describe no change and
are skipped, so a node whose egonet did not change yields the zero vector.

The per-step count vectors are then reduced element-wise (mean by default)
into one embedding per node.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .catalog import ROOTED_AWARE, TransitionCatalog, build_catalog, check_mode
from .errors import UnknownNodeError
from .graphs import PaddedEgonetPair, TemporalGraph, padded_pair

AGGREGATIONS = ("mean", "sum", "min", "max")

THREADS_ENV = "EGOTRANS_THREADS"


@dataclass(frozen=True)
class TransitionCountVector:
    """Sparse nonnegative counts over catalog classes for one node and step.

    ``step`` is 0-based: step t covers the transition from snapshot t to
    snapshot t+1.
    """

    node: int
    step: int
    dim: int
    counts: dict[int, int]

    def to_array(self) -> np.ndarray:
        out = np.zeros(self.dim, dtype=np.int64)
        for cid, c in self.counts.items():
            out[cid] = c
        return out

    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class NodeEmbedding:
    node: int
    aggregation: str
    values: np.ndarray

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, NodeEmbedding)
            and self.node == other.node
            and self.aggregation == other.aggregation
            and np.array_equal(self.values, other.values)
        )


def count_step_vector(
    pair: PaddedEgonetPair, catalog: TransitionCatalog, step: int = 0
) -> TransitionCountVector:
    """Classify every union subset of the pair and tally catalog hits.

    Each subset contributes at most one increment; identical left/right
    masks are skipped outright since equal sides are always excluded.
    """
    members = sorted(pair.union_members)
    root = pair.root
    e_t = pair.edges_t
    e_t1 = pair.edges_t1
    counts: dict[int, int] = {}
    lookup = catalog.lookup_masks
    top = min(catalog.n_max, len(members))
    for k in range(2, top + 1):
        for subset in combinations(members, k):
            rooted = root in subset
            if rooted:
                locs = (root, *(x for x in subset if x != root))
            else:
                locs = subset
            # bit order must stay lexicographic on local pairs, matching
            # catalog.pair_order
            left = 0
            right = 0
            bit = 1
            for i in range(k):
                a = locs[i]
                for j in range(i + 1, k):
                    b = locs[j]
                    e = (a, b) if a < b else (b, a)
                    if e in e_t:
                        left |= bit
                    if e in e_t1:
                        right |= bit
                    bit <<= 1
            if left == right:
                continue
            cid = lookup(k, rooted, left, right)
            if cid is not None:
                counts[cid] = counts.get(cid, 0) + 1
    return TransitionCountVector(
        node=root, step=step, dim=catalog.dim, counts=counts
    )


def aggregate(
    steps: Sequence[TransitionCountVector], kind: str = "mean"
) -> NodeEmbedding:
    """Element-wise mean/sum/min/max of one node's step vectors."""
    if kind not in AGGREGATIONS:
        raise ValueError(f"aggregation must be one of {AGGREGATIONS}, got {kind!r}")
    if not steps:
        raise ValueError("cannot aggregate an empty list of step vectors")
    dim = steps[0].dim
    node = steps[0].node
    for s in steps:
        if s.dim != dim:
            raise ValueError(f"mismatched vector lengths: {s.dim} != {dim}")
        if s.node != node:
            raise ValueError(f"mixed nodes in aggregation: {s.node} != {node}")
    stacked = np.stack([s.to_array() for s in steps])
    if kind == "mean":
        values = stacked.mean(axis=0)
    elif kind == "sum":
        values = stacked.sum(axis=0)
    elif kind == "min":
        values = stacked.min(axis=0)
    else:
        values = stacked.max(axis=0)
    return NodeEmbedding(node=node, aggregation=kind, values=values)


def step_vectors(
    g: TemporalGraph, catalog: TransitionCatalog, v: int
) -> list[TransitionCountVector]:
    """All T-1 per-step count vectors of one node."""
    return [
        count_step_vector(padded_pair(g[t], g[t + 1], v), catalog, step=t)
        for t in range(g.n_snapshots - 1)
    ]


def resolve_workers(workers: int | None) -> int:
    if workers is None:
        workers = int(os.environ.get(THREADS_ENV, "1"))
    return max(1, workers)


def embed_all(
    g: TemporalGraph,
    catalog: TransitionCatalog,
    kind: str = "mean",
    nodes: Iterable[int] | None = None,
    workers: int | None = None,
) -> list[NodeEmbedding]:
    """One embedding per requested node (default: all), by node index.

    Nodes are independent, so the work can be spread over threads
    (``EGOTRANS_THREADS`` or ``workers``); the output order and values do
    not depend on the schedule.
    """
    if nodes is None:
        targets = list(range(g.n_nodes))
    else:
        targets = sorted(set(nodes))
        for v in targets:
            if not (isinstance(v, int) and 0 <= v < g.n_nodes):
                raise UnknownNodeError(v)

    def one(v: int) -> NodeEmbedding:
        return aggregate(step_vectors(g, catalog, v), kind)

    workers = resolve_workers(workers)
    if workers == 1 or len(targets) <= 1:
        return [one(v) for v in targets]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, targets))


class TransitionEmbedder(BaseEstimator, TransformerMixin):
    """Transformer from a TemporalGraph to a (n_nodes, d) count-embedding matrix.

    Parameters
    ----------
    n_max : int
        Largest subset size classified (catalog cap).
    exclusion_mode : str
        'rooted-aware' or 'literal-unrooted'; controls which pairs are
        dropped as isomorphic.
    aggregation : str
        'mean', 'sum', 'min' or 'max' over the per-step count vectors.
    workers : int or None
        Thread count for the per-node loop; None defers to EGOTRANS_THREADS.
    """

    def __init__(
        self,
        n_max: int = 3,
        exclusion_mode: str = ROOTED_AWARE,
        aggregation: str = "mean",
        workers: int | None = None,
    ):
        self.n_max = n_max
        self.exclusion_mode = exclusion_mode
        self.aggregation = aggregation
        self.workers = workers

    def fit(self, X=None, y=None):
        """Build the transition catalog; independent of the data."""
        check_mode(self.exclusion_mode)
        if self.aggregation not in AGGREGATIONS:
            raise ValueError(
                f"aggregation must be one of {AGGREGATIONS}, got {self.aggregation!r}"
            )
        self.catalog_ = build_catalog(self.n_max, self.exclusion_mode)
        self.n_features_out_ = self.catalog_.dim
        return self

    def transform(self, X: TemporalGraph) -> np.ndarray:
        if not hasattr(self, "catalog_"):
            self.fit()
        if not isinstance(X, TemporalGraph):
            raise TypeError(f"expected a TemporalGraph, got {type(X).__name__}")
        embeddings = embed_all(
            X, self.catalog_, kind=self.aggregation, workers=self.workers
        )
        return np.stack([e.values for e in embeddings]).astype(float)

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        if not hasattr(self, "catalog_"):
            self.fit()
        return np.asarray([f"c{i}" for i in range(self.catalog_.dim)], dtype=object)

"""Snapshot / temporal-graph data model and egonet extraction.

Graphs are undirected and simple: edges are normalized to ``(min, max)``
index pairs, duplicates collapse, and self-loops are dropped on
construction.  Everything here is immutable after construction and safe to
share across threads; all operations are pure reads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import UnknownNodeError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class NodeTable:
    """Bijection between external node names and dense indices 0..n-1."""

    __slots__ = ("_names", "_index")

    def __init__(self, names: Iterable[str]):
        self._names = tuple(names)
        self._index = {name: i for i, name in enumerate(self._names)}
        if len(self._index) != len(self._names):
            raise ValueError("duplicate node names in universe")

    def __len__(self) -> int:
        return len(self._names)

    def __contains__(self, name) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return isinstance(other, NodeTable) and self._names == other._names

    def __hash__(self):
        return hash(self._names)

    @property
    def names(self) -> tuple[str, ...]:
        return self._names

    def index(self, name) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownNodeError(name) from None

    def name(self, i: int) -> str:
        return self._names[i]


class Snapshot:
    """One undirected simple graph over node indices ``0..n-1``.

    ``weights`` is optional integer edge weighting used by the
    time-aggregated union graph; plain snapshots leave it ``None``.
    """

    __slots__ = ("n", "_edges", "_adj", "weights")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        weights: Mapping[Edge, int] | None = None,
    ):
        if n < 0:
            raise ValueError(f"node count must be nonnegative, got {n}")
        self.n = n
        normed = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise UnknownNodeError(u if not 0 <= u < n else v)
            if u == v:
                continue
            normed.add(norm_edge(u, v))
        self._edges = frozenset(normed)
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in self._edges:
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(frozenset(s) for s in adj)
        self.weights = dict(weights) if weights is not None else None

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    def neighbors(self, v: int) -> frozenset[int]:
        self._check_node(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self._edges

    def _check_node(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise UnknownNodeError(v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Snapshot)
            and self.n == other.n
            and self._edges == other._edges
            and self.weights == other.weights
        )

    def __repr__(self) -> str:
        return f"Snapshot(n={self.n}, m={len(self._edges)})"


class TemporalGraph:
    """Ordered sequence of snapshots over one shared node universe.

    At least two snapshots are required: a single snapshot has no
    transitions to count.
    """

    __slots__ = ("universe", "snapshots")

    def __init__(self, universe: NodeTable, snapshots: Sequence[Snapshot]):
        snapshots = tuple(snapshots)
        if len(snapshots) < 2:
            raise ValueError(
                f"a temporal graph needs at least 2 snapshots, got {len(snapshots)}"
            )
        for s in snapshots:
            if s.n != len(universe):
                raise ValueError(
                    f"snapshot has {s.n} nodes but universe has {len(universe)}"
                )
        self.universe = universe
        self.snapshots = snapshots

    @classmethod
    def from_edge_lists(
        cls,
        names: Iterable[str],
        edge_lists: Iterable[Iterable[tuple[int, int]]],
    ) -> "TemporalGraph":
        table = NodeTable(names)
        snaps = [Snapshot(len(table), edges) for edges in edge_lists]
        return cls(table, snaps)

    @property
    def n_nodes(self) -> int:
        return len(self.universe)

    @property
    def n_snapshots(self) -> int:
        return len(self.snapshots)

    def __len__(self) -> int:
        return len(self.snapshots)

    def __iter__(self) -> Iterator[Snapshot]:
        return iter(self.snapshots)

    def __getitem__(self, t: int) -> Snapshot:
        return self.snapshots[t]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TemporalGraph)
            and self.universe == other.universe
            and self.snapshots == other.snapshots
        )

    def __repr__(self) -> str:
        return f"TemporalGraph(n={self.n_nodes}, T={self.n_snapshots})"


@dataclass(frozen=True)
class Egonet:
    """Induced subgraph on a node's closed neighborhood ``{v} + N(v)``."""

    root: int
    members: frozenset[int]
    edges: frozenset[Edge]


@dataclass(frozen=True)
class PaddedEgonetPair:
    """A node's egonets at two consecutive times over their union vertex set.

    ``edges_t`` / ``edges_t1`` are each side's own egonet edges; a node that
    belongs to only one side's egonet is therefore isolated on the other
    side.
    """

    root: int
    union_members: frozenset[int]
    edges_t: frozenset[Edge]
    edges_t1: frozenset[Edge]


def egonet(snapshot: Snapshot, v: int) -> Egonet:
    """Extract the induced closed-neighborhood subgraph rooted at ``v``."""
    snapshot._check_node(v)
    members = frozenset(snapshot.neighbors(v)) | {v}
    edges = set()
    for u in members:
        for w in snapshot.neighbors(u):
            if u < w and w in members:
                edges.add((u, w))
    return Egonet(root=v, members=members, edges=frozenset(edges))


def padded_pair(g_t: Snapshot, g_t1: Snapshot, v: int) -> PaddedEgonetPair:
    """Build the union-padded egonet pair of ``v`` between two snapshots."""
    ego_t = egonet(g_t, v)
    ego_t1 = egonet(g_t1, v)
    return PaddedEgonetPair(
        root=v,
        union_members=ego_t.members | ego_t1.members,
        edges_t=ego_t.edges,
        edges_t1=ego_t1.edges,
    )


def induced_edges(
    pair: PaddedEgonetPair, subset: Iterable[int], side: str
) -> frozenset[Edge]:
    """Edges of one side of the pair with both endpoints in ``subset``.

    ``side`` is ``"t"`` or ``"t+1"``.
    """
    members = frozenset(subset)
    if not members:
        raise ValueError("subset must be nonempty")
    if not members <= pair.union_members:
        stray = sorted(members - pair.union_members)
        raise ValueError(f"subset nodes {stray} are not in the padded pair")
    if side == "t":
        edges = pair.edges_t
    elif side == "t+1":
        edges = pair.edges_t1
    else:
        raise ValueError(f"side must be 't' or 't+1', got {side!r}")
    nodes = sorted(members)
    out = set()
    for i, u in enumerate(nodes):
        for w in nodes[i + 1 :]:
            if (u, w) in edges:
                out.add((u, w))
    return frozenset(out)

"""Canonical enumeration of small subgraph-transition isomorphism classes.

A transition is a pair of labeled graphs on a shared node set of size k,
encoded as two edge bitmasks over the C(k,2) possible edges in fixed
lexicographic order: for k=3 the bit order is (0,1), (0,2), (1,2).  A
transition is *rooted* when the node set contains the ego, which is pinned
to local index 0; isomorphisms of rooted transitions must fix index 0.

Canonicalization is brute-force minimization over the admissible
permutations, which is exact and cheap for the tiny k this method uses.
Pairs whose two sides are isomorphic are excluded from the catalog: they
describe no change.  Two exclusion rules are supported:

* ``rooted-aware`` (default): a rooted pair is excluded only when a
  root-preserving isomorphism maps one side to the other, so transitions
  that move an edge between the ego and the rest of the neighborhood still
  count.
* ``literal-unrooted``: a pair is excluded whenever its sides are
  isomorphic as abstract unrooted graphs.

Catalogs built with the same parameters are bit-identical across runs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

MAX_K = 5  # beyond this the class count explodes and enumeration is pointless

ROOTED_AWARE = "rooted-aware"
LITERAL_UNROOTED = "literal-unrooted"
EXCLUSION_MODES = (ROOTED_AWARE, LITERAL_UNROOTED)

_MISS = object()


@lru_cache(maxsize=None)
def pair_order(k: int) -> tuple[tuple[int, int], ...]:
    """Lexicographic order of the C(k,2) index pairs; bit i <-> pair_order[i]."""
    return tuple(itertools.combinations(range(k), 2))


@lru_cache(maxsize=None)
def _pair_bit(k: int) -> dict[tuple[int, int], int]:
    return {pair: i for i, pair in enumerate(pair_order(k))}


def edge_bit(k: int, a: int, b: int) -> int:
    """Bit position of edge {a, b} in a k-node mask."""
    if a > b:
        a, b = b, a
    return _pair_bit(k)[(a, b)]


def n_bits(k: int) -> int:
    return k * (k - 1) // 2


def mask_from_edges(k: int, edges: Iterable[tuple[int, int]]) -> int:
    mask = 0
    for a, b in edges:
        mask |= 1 << edge_bit(k, a, b)
    return mask


def edges_from_mask(k: int, mask: int) -> tuple[tuple[int, int], ...]:
    order = pair_order(k)
    return tuple(order[i] for i in range(len(order)) if mask >> i & 1)


@lru_cache(maxsize=None)
def admissible_perms(k: int, rooted: bool) -> tuple[tuple[int, ...], ...]:
    """All permutations of 0..k-1, or only those fixing index 0 if rooted."""
    perms = itertools.permutations(range(k))
    if rooted:
        return tuple(p for p in perms if p[0] == 0)
    return tuple(perms)


@lru_cache(maxsize=None)
def _mask_tables(k: int, rooted: bool) -> tuple[tuple[int, ...], ...]:
    """Per-permutation lookup tables mapping any edge mask to its image."""
    bits = n_bits(k)
    order = pair_order(k)
    tables = []
    for perm in admissible_perms(k, rooted):
        bit_image = [edge_bit(k, perm[a], perm[b]) for a, b in order]
        table = [0] * (1 << bits)
        for mask in range(1 << bits):
            out = 0
            m = mask
            i = 0
            while m:
                if m & 1:
                    out |= 1 << bit_image[i]
                m >>= 1
                i += 1
            table[mask] = out
        tables.append(tuple(table))
    return tuple(tables)


def permute_mask(k: int, mask: int, perm: tuple[int, ...]) -> int:
    """Image of an edge mask under a node permutation."""
    out = 0
    for i, (a, b) in enumerate(pair_order(k)):
        if mask >> i & 1:
            out |= 1 << edge_bit(k, perm[a], perm[b])
    return out


@dataclass(frozen=True, order=True)
class LabeledTransition:
    """A labeled (left, right) graph pair on k nodes, as two edge bitmasks."""

    k: int
    rooted: bool
    left: int
    right: int

    def __post_init__(self):
        if not 1 <= self.k <= MAX_K:
            raise ValueError(f"k must be in 1..{MAX_K}, got {self.k}")
        limit = 1 << n_bits(self.k)
        if not (0 <= self.left < limit and 0 <= self.right < limit):
            raise ValueError(
                f"masks must use only the low {n_bits(self.k)} bits for k={self.k}"
            )

    @property
    def key(self) -> tuple[int, bool, int, int]:
        return (self.k, self.rooted, self.left, self.right)

    def reversed(self) -> "LabeledTransition":
        return LabeledTransition(self.k, self.rooted, self.right, self.left)


def canonical_code(t: LabeledTransition) -> LabeledTransition:
    """Minimal (left, right) over the admissible permutations; idempotent."""
    left, right = _canonical_masks(t.k, t.rooted, t.left, t.right)
    if left == t.left and right == t.right:
        return t
    return LabeledTransition(t.k, t.rooted, left, right)


def _canonical_masks(k: int, rooted: bool, left: int, right: int) -> tuple[int, int]:
    best = (left, right)
    for table in _mask_tables(k, rooted):
        cand = (table[left], table[right])
        if cand < best:
            best = cand
    return best


def _sides_isomorphic(k: int, rooted: bool, left: int, right: int, mode: str) -> bool:
    """Whether left and right are the 'same graph' under the exclusion mode."""
    if left == right:
        return True
    ignore_root = mode == LITERAL_UNROOTED
    for table in _mask_tables(k, rooted and not ignore_root):
        if table[left] == right:
            return True
    return False


@dataclass(frozen=True)
class TransitionClass:
    """One catalog entry: a canonical transition and its column index."""

    id: int
    canonical: LabeledTransition


class TransitionCatalog:
    """Indexed enumeration of all transition classes on at most n_max nodes.

    Classes are sorted by (k, rooted, left, right) on canonical masks, with
    unrooted before rooted within each k; ids are list positions and the
    catalog length is the embedding dimension.
    """

    def __init__(self, n_max: int, mode: str, classes: list[TransitionClass]):
        self.n_max = n_max
        self.mode = mode
        self.classes = tuple(classes)
        self._index: dict[tuple[int, bool, int, int], int] = {
            c.canonical.key: c.id for c in self.classes
        }
        # Dense labeled->id table for k <= 3 (8K entries); the embedder's
        # subset loop then classifies in one dict probe.  Larger k falls
        # back to canonicalization per call.
        self._labeled: dict[tuple[int, bool, int, int], int | None] = {}
        for k in range(1, min(n_max, 3) + 1):
            limit = 1 << n_bits(k)
            for rooted in (False, True):
                for left in range(limit):
                    for right in range(limit):
                        canon = _canonical_masks(k, rooted, left, right)
                        self._labeled[(k, rooted, left, right)] = self._index.get(
                            (k, rooted, *canon)
                        )

    def __len__(self) -> int:
        return len(self.classes)

    @property
    def dim(self) -> int:
        return len(self.classes)

    def lookup(self, t: LabeledTransition) -> int | None:
        """Id of the class containing ``t``, or None when the pair is excluded."""
        return self.lookup_masks(t.k, t.rooted, t.left, t.right)

    def lookup_masks(self, k: int, rooted: bool, left: int, right: int) -> int | None:
        if k > self.n_max:
            raise ValueError(f"k={k} exceeds catalog n_max={self.n_max}")
        hit = self._labeled.get((k, rooted, left, right), _MISS)
        if hit is not _MISS:
            return hit
        canon = _canonical_masks(k, rooted, left, right)
        return self._index.get((k, rooted, *canon))

    def reversed_id(self, class_id: int) -> int:
        """Id of the class with left and right swapped; always present."""
        c = self.classes[class_id].canonical
        rid = self.lookup(c.reversed())
        assert rid is not None  # exclusion is symmetric in left/right
        return rid

    def to_json_obj(self) -> list[dict]:
        out = []
        for c in self.classes:
            t = c.canonical
            out.append(
                {
                    "id": c.id,
                    "k": t.k,
                    "rooted": t.rooted,
                    "left": [list(e) for e in edges_from_mask(t.k, t.left)],
                    "right": [list(e) for e in edges_from_mask(t.k, t.right)],
                }
            )
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TransitionCatalog)
            and self.n_max == other.n_max
            and self.mode == other.mode
            and self.classes == other.classes
        )

    def __repr__(self) -> str:
        return (
            f"TransitionCatalog(n_max={self.n_max}, mode={self.mode!r}, "
            f"d={self.dim})"
        )


def check_mode(mode: str) -> str:
    if mode not in EXCLUSION_MODES:
        raise ValueError(
            f"exclusion mode must be one of {EXCLUSION_MODES}, got {mode!r}"
        )
    return mode


def build_catalog(n_max: int = 3, mode: str = ROOTED_AWARE) -> TransitionCatalog:
    """Enumerate every non-excluded transition class with k <= n_max.

    Iterating labeled pairs in ascending mask order and keeping only those
    equal to their own canonical form yields a deterministic, sorted
    catalog.  k=1 contributes nothing: one node has no edges, so left and
    right always coincide.
    """
    check_mode(mode)
    if not 1 <= n_max <= MAX_K:
        raise ValueError(f"n_max must be in 1..{MAX_K}, got {n_max}")
    classes: list[TransitionClass] = []
    for k in range(1, n_max + 1):
        limit = 1 << n_bits(k)
        for rooted in (False, True):
            for left in range(limit):
                for right in range(limit):
                    if _canonical_masks(k, rooted, left, right) != (left, right):
                        continue
                    if _sides_isomorphic(k, rooted, left, right, mode):
                        continue
                    classes.append(
                        TransitionClass(
                            id=len(classes),
                            canonical=LabeledTransition(k, rooted, left, right),
                        )
                    )
    return TransitionCatalog(n_max, mode, classes)

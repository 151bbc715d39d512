"""Timestamped edge-stream parsing and discretization into snapshots.

Input format: UTF-8 text, one ``u v t`` record per line, separated by
whitespace or commas; ``#`` starts a comment line and blank lines are
skipped.  Node tokens are kept verbatim, timestamps must be nonnegative
numbers.  Self-loops are dropped and counted rather than rejected, since
interaction logs routinely contain them.

Discretization bins records into an ordered sequence of simple-graph
snapshots: any number of records for an edge inside one bin collapses to a
single edge (optionally thresholded on multiplicity).  A timestamp equal to
an interior bin boundary belongs to the right bin; the range maximum
belongs to the last bin.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ParseError
from .graphs import NodeTable, Snapshot, TemporalGraph


@dataclass(frozen=True)
class TemporalEdgeRecord:
    u: str
    v: str
    t: float


@dataclass
class ParseResult:
    records: list[TemporalEdgeRecord] = field(default_factory=list)
    self_loops_dropped: int = 0


def parse_records(lines: Iterable[str]) -> ParseResult:
    """Parse an edge stream; one record per non-comment, non-blank line."""
    result = ParseResult()
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split(",") if "," in line else line.split()
        fields = [f.strip() for f in fields]
        if len(fields) != 3:
            raise ParseError(line_no, line, f"expected 3 fields, got {len(fields)}")
        u, v, t_text = fields
        if not u or not v:
            raise ParseError(line_no, line, "empty node token")
        try:
            t = float(t_text)
        except ValueError:
            raise ParseError(line_no, line, f"non-numeric timestamp {t_text!r}") from None
        if not math.isfinite(t) or t < 0:
            raise ParseError(line_no, line, f"timestamp must be finite and >= 0, got {t_text}")
        if u == v:
            result.self_loops_dropped += 1
            continue
        result.records.append(TemporalEdgeRecord(u, v, t))
    return result


@dataclass(frozen=True)
class DiscretizationSpec:
    """How to bin timestamps: exactly one of bins / width / boundaries.

    ``t_min``/``t_max`` override the observed range for the bins and width
    modes; records outside the active range are dropped (and counted by
    ``discretize``).
    """

    bins: int | None = None
    width: float | None = None
    boundaries: tuple[float, ...] | None = None
    t_min: float | None = None
    t_max: float | None = None

    def __post_init__(self):
        set_modes = sum(x is not None for x in (self.bins, self.width, self.boundaries))
        if set_modes != 1:
            raise ValueError(
                "exactly one of bins, width, or boundaries must be given"
            )
        if self.bins is not None and self.bins < 2:
            raise ValueError(f"bin count must be >= 2, got {self.bins}")
        if self.width is not None and self.width <= 0:
            raise ValueError(f"bin width must be positive, got {self.width}")
        if self.boundaries is not None:
            b = self.boundaries
            if len(b) < 3:
                raise ValueError("need at least 3 boundaries (>= 2 bins)")
            if any(b[i] >= b[i + 1] for i in range(len(b) - 1)):
                raise ValueError("boundaries must be strictly increasing")


@dataclass
class DiscretizeResult:
    graph: TemporalGraph
    out_of_range_dropped: int = 0
    below_multiplicity_dropped: int = 0


def _resolve_boundaries(
    spec: DiscretizationSpec, records: Sequence[TemporalEdgeRecord]
) -> list[float]:
    if spec.boundaries is not None:
        return list(spec.boundaries)
    lo = spec.t_min if spec.t_min is not None else min(r.t for r in records)
    hi = spec.t_max if spec.t_max is not None else max(r.t for r in records)
    if lo >= hi:
        raise ValueError(
            "all timestamps are equal (or the range is empty); "
            "pass explicit boundaries to bin such data"
        )
    if spec.bins is not None:
        b = spec.bins
        # endpoints pinned exactly; lo + (hi-lo)*b/b can round below hi
        return [lo] + [lo + (hi - lo) * i / b for i in range(1, b)] + [hi]
    assert spec.width is not None
    b = math.ceil((hi - lo) / spec.width)
    if b < 2:
        raise ValueError(
            f"width {spec.width} yields {b} bin(s) over [{lo}, {hi}]; need >= 2"
        )
    return [lo + spec.width * i for i in range(b)] + [hi]


def discretize(
    records: Sequence[TemporalEdgeRecord],
    spec: DiscretizationSpec,
    nodes: Sequence[str] | None = None,
    min_multiplicity: int = 1,
) -> DiscretizeResult:
    """Bin records into a TemporalGraph.

    The node universe defaults to the endpoint tokens in order of first
    appearance.  Passing ``nodes`` fixes the universe (and its order)
    explicitly, which keeps nodes that are isolated in every snapshot; a
    record endpoint missing from an explicit universe is an error.
    """
    if not records:
        raise ValueError("no records to discretize")
    if min_multiplicity < 1:
        raise ValueError(f"min_multiplicity must be >= 1, got {min_multiplicity}")
    boundaries = _resolve_boundaries(spec, records)
    n_bins = len(boundaries) - 1
    lo, hi = boundaries[0], boundaries[-1]

    if nodes is not None:
        table = NodeTable(nodes)
    else:
        seen: dict[str, None] = {}
        for r in records:
            if lo <= r.t <= hi:
                seen.setdefault(r.u)
                seen.setdefault(r.v)
        table = NodeTable(seen.keys())

    multiplicity: list[dict[tuple[int, int], int]] = [dict() for _ in range(n_bins)]
    dropped = 0
    for r in records:
        if r.t < lo or r.t > hi:
            dropped += 1
            continue
        b = bisect_right(boundaries, r.t) - 1
        if b == n_bins:  # t == hi joins the last bin
            b -= 1
        u, v = table.index(r.u), table.index(r.v)
        e = (u, v) if u < v else (v, u)
        multiplicity[b][e] = multiplicity[b].get(e, 0) + 1

    thin = 0
    snapshots = []
    for bucket in multiplicity:
        edges = [e for e, m in bucket.items() if m >= min_multiplicity]
        thin += len(bucket) - len(edges)
        snapshots.append(Snapshot(len(table), edges))

    return DiscretizeResult(
        graph=TemporalGraph(table, snapshots),
        out_of_range_dropped=dropped,
        below_multiplicity_dropped=thin,
    )

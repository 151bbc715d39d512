"""Temporal egonet transition embeddings and anomaly detection.

Nodes of a snapshot sequence are embedded by counting, for every
consecutive snapshot pair, how each small subset of the node's padded
egonet pair transitions between non-isomorphic induced subgraphs.  The
resulting count vectors feed density-based clustering to flag nodes whose
temporal behavior is unusual.
"""

from .baselines import SpectralParams, pca_project, spectral_embed, union_graph
from .catalog import (
    EXCLUSION_MODES,
    LITERAL_UNROOTED,
    ROOTED_AWARE,
    LabeledTransition,
    TransitionCatalog,
    TransitionClass,
    build_catalog,
    canonical_code,
)
from .cluster import DBSCAN, NOISE, dbscan, default_eps, knee_eps, to_anomaly_labels
from .embedding import (
    AGGREGATIONS,
    NodeEmbedding,
    TransitionCountVector,
    TransitionEmbedder,
    aggregate,
    count_step_vector,
    embed_all,
    step_vectors,
)
from .errors import ConvergenceError, ParseError, UnknownNodeError
from .graphs import (
    Egonet,
    NodeTable,
    PaddedEgonetPair,
    Snapshot,
    TemporalGraph,
    egonet,
    induced_edges,
    padded_pair,
)
from .ingest import (
    DiscretizationSpec,
    TemporalEdgeRecord,
    discretize,
    parse_records,
)
from .metrics import EvalReport, evaluate, render_table
from .synth import ANOMALY, NORMAL, SynthConfig, generate

__version__ = "0.1.0"

__all__ = [
    "AGGREGATIONS",
    "ANOMALY",
    "ConvergenceError",
    "DBSCAN",
    "DiscretizationSpec",
    "Egonet",
    "EvalReport",
    "EXCLUSION_MODES",
    "LITERAL_UNROOTED",
    "LabeledTransition",
    "NodeEmbedding",
    "NodeTable",
    "NOISE",
    "NORMAL",
    "PaddedEgonetPair",
    "ParseError",
    "ROOTED_AWARE",
    "Snapshot",
    "SpectralParams",
    "SynthConfig",
    "TemporalEdgeRecord",
    "TemporalGraph",
    "TransitionCatalog",
    "TransitionClass",
    "TransitionCountVector",
    "TransitionEmbedder",
    "UnknownNodeError",
    "aggregate",
    "build_catalog",
    "canonical_code",
    "count_step_vector",
    "dbscan",
    "default_eps",
    "discretize",
    "egonet",
    "embed_all",
    "evaluate",
    "generate",
    "induced_edges",
    "knee_eps",
    "padded_pair",
    "parse_records",
    "pca_project",
    "render_table",
    "spectral_embed",
    "step_vectors",
    "to_anomaly_labels",
    "union_graph",
]

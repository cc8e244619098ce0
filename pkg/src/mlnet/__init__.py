"""Multi-layer social network analysis toolkit.

Core pieces: a weighted directed multigraph with labelled layers
(`MultiLayerNetwork`), single-layer and cross-layer neighbourhood
queries, cross-layer degree centralities with batch evaluation,
distribution/summary reports with CSV, JSON and figure export, a
deterministic scale-free generator, and the ``mlnet`` command line
frontend.
"""

from .errors import (
    AlphaOutOfRangeError,
    ConfigInvalidError,
    DegenerateNetworkError,
    DuplicateEdgeError,
    InvalidWeightError,
    LoopRejectedError,
    MlnetError,
    NetworkFrozenError,
    ParseError,
    UnknownLayerError,
    UnknownNodeError,
)
from .model import MultiLayerNetwork, NetworkCounts
from .neighborhood import NeighborSet, layer_support, local_neighborhood, multi_layer_neighborhood
from .centrality import CentralityScore, cldc, cldc_batch, cldc_in, cldc_out
from .io import IngestOptions, load_node_manifest, parse_edge_list, write_edge_list
from .generator import GeneratorConfig, generate

__version__ = "0.1.0"

__all__ = [
    "MultiLayerNetwork",
    "NetworkCounts",
    "NeighborSet",
    "local_neighborhood",
    "layer_support",
    "multi_layer_neighborhood",
    "CentralityScore",
    "cldc",
    "cldc_in",
    "cldc_out",
    "cldc_batch",
    "IngestOptions",
    "parse_edge_list",
    "write_edge_list",
    "load_node_manifest",
    "GeneratorConfig",
    "generate",
    "MlnetError",
    "LoopRejectedError",
    "DuplicateEdgeError",
    "InvalidWeightError",
    "UnknownNodeError",
    "UnknownLayerError",
    "AlphaOutOfRangeError",
    "DegenerateNetworkError",
    "NetworkFrozenError",
    "ParseError",
    "ConfigInvalidError",
    "__version__",
]

"""Cross-layer degree centrality.

For a node x and a layer-count threshold alpha, the score is the sum of
the weights of every edge (on any layer, in a given direction set)
between x and the members of its cross-layer neighbourhood at alpha,
normalised by (m - 1) * |L| where m is the total node count, isolated
nodes included.

Variants:
    total  incoming and outgoing edges
    in     incoming edges only
    out    outgoing edges only

All three sum over every layer on which a qualifying neighbour is
connected, not just the alpha layers that made it qualify. Weights of
zero keep a neighbour in the neighbourhood but contribute nothing.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateNetworkError
from .model import MultiLayerNetwork
from .neighborhood import check_alpha

VARIANTS = ("total", "in", "out")

THREADS_ENV_VAR = "MLNET_THREADS"


@dataclass(frozen=True)
class CentralityScore:
    node: str
    alpha: int
    variant: str
    value: float


def default_thread_count() -> int:
    """Thread count from the environment, defaulting to 1."""
    raw = os.environ.get(THREADS_ENV_VAR, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _check(network: MultiLayerNetwork, alpha: int, variant: str = "total"):
    if network.num_nodes < 2:
        raise DegenerateNetworkError(
            f"centrality needs at least 2 nodes, network has {network.num_nodes}")
    check_alpha(network, alpha)
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def _denominator(network: MultiLayerNetwork) -> float:
    return float((network.num_nodes - 1) * network.num_layers)


def _node_score(network: MultiLayerNetwork, node: str, alpha: int, variant: str) -> float:
    _check(network, alpha, variant)
    x = network._require_node(node)
    idx = network._get_index()
    return idx.node_weight_sum(x, alpha, variant) / _denominator(network)


def cldc(network: MultiLayerNetwork, node: str, alpha: int) -> float:
    """Cross-layer degree centrality (incoming plus outgoing weights)."""
    return _node_score(network, node, alpha, "total")


def cldc_in(network: MultiLayerNetwork, node: str, alpha: int) -> float:
    """Cross-layer indegree centrality (incoming weights only)."""
    return _node_score(network, node, alpha, "in")


def cldc_out(network: MultiLayerNetwork, node: str, alpha: int) -> float:
    """Cross-layer outdegree centrality (outgoing weights only)."""
    return _node_score(network, node, alpha, "out")


def cldc_batch_array(network: MultiLayerNetwork, alpha: int,
                     variant: str = "total", threads: int | None = None) -> np.ndarray:
    """Scores for every node, indexed by internal node id.

    Bitwise identical to calling the single-node function per node, for
    any thread count: scores never mix contributions across nodes, and
    each node's weights are accumulated in one fixed order.
    """
    _check(network, alpha, variant)
    idx = network._get_index()
    denom = _denominator(network)
    if threads is None:
        threads = default_thread_count()
    m = network.num_nodes
    if threads <= 1 or m < 2 * threads:
        return idx.batch_weight_sums(alpha, variant) / denom

    bounds = np.linspace(0, m, threads + 1, dtype=np.int64)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(pool.map(
            lambda i: idx.batch_weight_sums(alpha, variant, int(bounds[i]), int(bounds[i + 1])),
            range(threads)))
    return np.concatenate(parts) / denom


def cldc_batch(network: MultiLayerNetwork, alpha: int,
               variant: str = "total", threads: int | None = None) -> dict[str, float]:
    """Scores for every node as a label-keyed mapping (zeros included)."""
    values = cldc_batch_array(network, alpha, variant, threads)
    return dict(zip(network.node_labels, values.tolist()))

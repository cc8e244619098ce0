"""Neighbourhood queries over a multi-layer network.

Two constructions are provided, both direction-agnostic:

* the single-layer neighbourhood of a node: everyone adjacent to it on
  that layer, in either direction;
* the cross-layer neighbourhood at threshold alpha: everyone adjacent to
  it on at least alpha distinct layers.

The layer-support count (distinct layers on which a pair is adjacent) is
exposed separately because analytics and the generator tests use it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AlphaOutOfRangeError
from .model import MultiLayerNetwork


@dataclass(frozen=True)
class NeighborSet:
    """Result of a neighbourhood query.

    Exactly one of ``layer`` / ``alpha`` is set, matching the query that
    produced it. ``members`` holds node labels in ascending internal
    index order (deterministic for a given network).
    """

    owner: str
    layer: str | None
    alpha: int | None
    members: tuple[str, ...]

    def as_set(self) -> set[str]:
        return set(self.members)

    def __len__(self) -> int:
        return len(self.members)


def check_alpha(network: MultiLayerNetwork, alpha: int):
    """Reject thresholds outside [1, number of layers]."""
    if not isinstance(alpha, int) or isinstance(alpha, bool):
        raise AlphaOutOfRangeError(f"alpha must be an integer, got {alpha!r}")
    if alpha < 1 or alpha > network.num_layers:
        raise AlphaOutOfRangeError(
            f"alpha {alpha} outside [1, {network.num_layers}]")


def local_neighborhood(network: MultiLayerNetwork, node: str, layer: str) -> NeighborSet:
    """Nodes adjacent to ``node`` on ``layer``, in either direction."""
    x = network._require_node(node)
    l = network._require_layer(layer)
    idx = network._get_index()
    members = tuple(network.node_label(i) for i in idx.neighbors_on_layer(x, l))
    return NeighborSet(owner=node, layer=layer, alpha=None, members=members)


def layer_support(network: MultiLayerNetwork, node: str, other: str) -> int:
    """Number of distinct layers on which the two nodes are adjacent.

    A layer counts once even when edges exist in both directions on it.
    Always 0 for a node paired with itself (loops are impossible).
    """
    x = network._require_node(node)
    y = network._require_node(other)
    if x == y:
        return 0
    return network._get_index().pair_support(x, y)


def multi_layer_neighborhood(network: MultiLayerNetwork, node: str, alpha: int) -> NeighborSet:
    """Nodes adjacent to ``node`` on at least ``alpha`` distinct layers."""
    x = network._require_node(node)
    check_alpha(network, alpha)
    idx = network._get_index()
    members = tuple(network.node_label(i) for i in idx.multi_layer_neighbors(x, alpha))
    return NeighborSet(owner=node, layer=None, alpha=alpha, members=members)

"""Core multi-layer network structure.

A network is a weighted directed multigraph over a shared node set: each
edge is a (source, target, layer) triple with a non-negative weight, at
most one edge per ordered triple, and no self-loops. Nodes and layers are
identified by opaque text labels mapped to dense internal indices.

Networks are built incrementally (``add_node`` / ``add_layer`` /
``add_edge``) or in bulk from arrays (ingestion and generation use the
bulk path). ``freeze()`` makes the structure immutable; after that any
number of threads may query it concurrently. Queries on an unfrozen
network work too, at the cost of rebuilding the internal index after
each mutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import (
    DuplicateEdgeError,
    InvalidWeightError,
    LoopRejectedError,
    NetworkFrozenError,
    UnknownLayerError,
    UnknownNodeError,
)


@dataclass(frozen=True)
class NetworkCounts:
    """Node/layer/edge totals plus the per-layer edge breakdown."""

    nodes: int
    layers: int
    edges: int
    edges_per_layer: dict[str, int]


def _ordered_sum(values: np.ndarray) -> float:
    # Strict left-to-right accumulation. np.bincount adds its weights
    # sequentially in input order, which is the exact operation the
    # whole-network batch path performs per node; using the same kernel
    # here makes single-node and batch results bitwise identical.
    if values.size == 0:
        return 0.0
    acc = np.bincount(np.zeros(values.size, dtype=np.intp), weights=values, minlength=1)
    return float(acc[0])


class _FrozenIndex:
    """Read-only adjacency tables derived from the edge arrays.

    Two tables, both grouped by owning node and sorted by
    (owner, neighbour, layer):

    * triple table: one row per distinct (owner, neighbour, layer)
      adjacency, with incoming/outgoing weight sums for that layer.
    * pair table: one row per distinct (owner, neighbour) adjacency,
      with the layer-support count and weight sums over all layers.

    Every neighbourhood and centrality query is a slice of one of these.
    """

    def __init__(self, num_nodes: int, num_layers: int,
                 src: np.ndarray, dst: np.ndarray,
                 lay: np.ndarray, wgt: np.ndarray):
        self.num_nodes = num_nodes
        self.num_layers = num_layers
        self.src = src
        self.dst = dst
        self.lay = lay
        self.wgt = wgt
        self.layer_edge_counts = np.bincount(lay, minlength=num_layers).astype(np.int64)

        # Each edge is seen from both endpoints.
        own = np.concatenate([src, dst])
        nbr = np.concatenate([dst, src])
        lab = np.concatenate([lay, lay])
        win = np.concatenate([np.zeros_like(wgt), wgt])
        wout = np.concatenate([wgt, np.zeros_like(wgt)])

        order = np.lexsort((lab, nbr, own))
        own, nbr, lab = own[order], nbr[order], lab[order]
        win, wout = win[order], wout[order]

        # Collapse the at-most-two rows (one per direction) that share an
        # (owner, neighbour, layer) triple.
        if own.size:
            new = np.empty(own.size, dtype=bool)
            new[0] = True
            new[1:] = (own[1:] != own[:-1]) | (nbr[1:] != nbr[:-1]) | (lab[1:] != lab[:-1])
            starts = np.flatnonzero(new)
            self.t_own = own[starts]
            self.t_nbr = nbr[starts]
            self.t_lay = lab[starts]
            self.t_win = np.add.reduceat(win, starts)
            self.t_wout = np.add.reduceat(wout, starts)
        else:
            self.t_own = own
            self.t_nbr = nbr
            self.t_lay = lab
            self.t_win = win
            self.t_wout = wout

        # Collapse layers into (owner, neighbour) rows. Support is the
        # number of distinct layers; weights are summed in ascending
        # layer order (fixed summation order for reproducible floats).
        if self.t_own.size:
            pnew = np.empty(self.t_own.size, dtype=bool)
            pnew[0] = True
            pnew[1:] = (self.t_own[1:] != self.t_own[:-1]) | (self.t_nbr[1:] != self.t_nbr[:-1])
            pstarts = np.flatnonzero(pnew)
            self.p_own = self.t_own[pstarts]
            self.p_nbr = self.t_nbr[pstarts]
            bounds = np.append(pstarts, self.t_own.size)
            self.p_support = np.diff(bounds).astype(np.int32)
            self.p_win = np.add.reduceat(self.t_win, pstarts)
            self.p_wout = np.add.reduceat(self.t_wout, pstarts)
        else:
            self.p_own = self.t_own
            self.p_nbr = self.t_nbr
            self.p_support = np.zeros(0, dtype=np.int32)
            self.p_win = self.t_win
            self.p_wout = self.t_wout
        self.p_wtot = self.p_win + self.p_wout

        self.t_indptr = np.zeros(num_nodes + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.t_own, minlength=num_nodes), out=self.t_indptr[1:])
        self.p_indptr = np.zeros(num_nodes + 1, dtype=np.int64)
        np.cumsum(np.bincount(self.p_own, minlength=num_nodes), out=self.p_indptr[1:])

    # -- node-level queries ------------------------------------------------

    def neighbors_on_layer(self, node: int, layer: int) -> np.ndarray:
        lo, hi = self.t_indptr[node], self.t_indptr[node + 1]
        rows = slice(lo, hi)
        return self.t_nbr[rows][self.t_lay[rows] == layer]

    def pair_support(self, node: int, other: int) -> int:
        lo, hi = self.p_indptr[node], self.p_indptr[node + 1]
        pos = lo + np.searchsorted(self.p_nbr[lo:hi], other)
        if pos < hi and self.p_nbr[pos] == other:
            return int(self.p_support[pos])
        return 0

    def multi_layer_neighbors(self, node: int, alpha: int) -> np.ndarray:
        lo, hi = self.p_indptr[node], self.p_indptr[node + 1]
        rows = slice(lo, hi)
        return self.p_nbr[rows][self.p_support[rows] >= alpha]

    def weight_column(self, variant: str) -> np.ndarray:
        if variant == "total":
            return self.p_wtot
        if variant == "in":
            return self.p_win
        if variant == "out":
            return self.p_wout
        raise ValueError(f"unknown variant {variant!r}")

    def node_weight_sum(self, node: int, alpha: int, variant: str) -> float:
        lo, hi = self.p_indptr[node], self.p_indptr[node + 1]
        rows = slice(lo, hi)
        mask = self.p_support[rows] >= alpha
        return _ordered_sum(self.weight_column(variant)[rows][mask])

    def batch_weight_sums(self, alpha: int, variant: str,
                          node_lo: int = 0, node_hi: int | None = None) -> np.ndarray:
        """Qualifying-weight sums for nodes in [node_lo, node_hi).

        Accumulation order per node matches ``node_weight_sum`` exactly,
        so partitioning the node range (e.g. across threads) cannot
        change any result bit.
        """
        if node_hi is None:
            node_hi = self.num_nodes
        rows = slice(self.p_indptr[node_lo], self.p_indptr[node_hi])
        mask = self.p_support[rows] >= alpha
        owners = self.p_own[rows][mask] - node_lo
        weights = self.weight_column(variant)[rows][mask]
        return np.bincount(owners, weights=weights, minlength=node_hi - node_lo)

    def mn_sizes(self, alpha: int) -> np.ndarray:
        """|MN(x, alpha)| for every node, as one array."""
        mask = self.p_support >= alpha
        return np.bincount(self.p_own[mask], minlength=self.num_nodes)

    def active_mask(self) -> np.ndarray:
        return np.diff(self.t_indptr) > 0

    def layer_active_counts(self) -> np.ndarray:
        """Number of nodes with at least one incident edge, per layer."""
        if self.t_own.size == 0:
            return np.zeros(self.num_layers, dtype=np.int64)
        packed = self.t_own.astype(np.int64) * self.num_layers + self.t_lay
        uniq = np.unique(packed)
        return np.bincount((uniq % self.num_layers).astype(np.int64),
                           minlength=self.num_layers)


class MultiLayerNetwork:
    """Weighted directed multigraph with labelled nodes and layers."""

    def __init__(self):
        self._node_labels: list[str] = []
        self._node_ids: dict[str, int] = {}
        self._layer_labels: list[str] = []
        self._layer_ids: dict[str, int] = {}
        # Bulk edge storage (numpy) plus a small staging list for
        # incremental add_edge calls; merged lazily.
        self._src = np.zeros(0, dtype=np.int32)
        self._dst = np.zeros(0, dtype=np.int32)
        self._lay = np.zeros(0, dtype=np.int32)
        self._wgt = np.zeros(0, dtype=np.float64)
        self._staged: list[tuple[int, int, int, float]] = []
        self._edge_keys: set[tuple[int, int, int]] | None = None
        self._frozen = False
        self._index: _FrozenIndex | None = None

    # -- construction ------------------------------------------------------

    @classmethod
    def _from_arrays(cls, node_labels: list[str], layer_labels: list[str],
                     src: np.ndarray, dst: np.ndarray,
                     lay: np.ndarray, wgt: np.ndarray,
                     frozen: bool = True) -> "MultiLayerNetwork":
        """Bulk constructor; the caller guarantees the edge invariants."""
        net = cls()
        net._node_labels = list(node_labels)
        net._node_ids = {label: i for i, label in enumerate(net._node_labels)}
        net._layer_labels = list(layer_labels)
        net._layer_ids = {label: i for i, label in enumerate(net._layer_labels)}
        net._src = np.ascontiguousarray(src, dtype=np.int32)
        net._dst = np.ascontiguousarray(dst, dtype=np.int32)
        net._lay = np.ascontiguousarray(lay, dtype=np.int32)
        net._wgt = np.ascontiguousarray(wgt, dtype=np.float64)
        net._frozen = frozen
        return net

    def _check_mutable(self):
        if self._frozen:
            raise NetworkFrozenError("network is frozen")

    def add_node(self, label: str) -> int:
        """Register a node label; returns its internal id. Idempotent."""
        existing = self._node_ids.get(label)
        if existing is not None:
            return existing
        self._check_mutable()
        idx = len(self._node_labels)
        self._node_labels.append(label)
        self._node_ids[label] = idx
        self._index = None
        return idx

    def add_layer(self, label: str) -> int:
        """Register a layer label; returns its internal id. Idempotent."""
        existing = self._layer_ids.get(label)
        if existing is not None:
            return existing
        self._check_mutable()
        idx = len(self._layer_labels)
        self._layer_labels.append(label)
        self._layer_ids[label] = idx
        self._index = None
        return idx

    def add_edge(self, source: str, target: str, layer: str, weight: float = 1.0):
        """Store one directed edge on one layer.

        Raises LoopRejectedError for source == target, DuplicateEdgeError
        if the (source, target, layer) triple already exists, and
        InvalidWeightError for negative or non-finite weights. Endpoints
        and layer must already be registered.
        """
        self._check_mutable()
        s = self._require_node(source)
        t = self._require_node(target)
        l = self._require_layer(layer)
        if s == t:
            raise LoopRejectedError(f"loop edge {source!r} -> {source!r} on {layer!r}")
        w = float(weight)
        if not np.isfinite(w) or w < 0.0:
            raise InvalidWeightError(f"weight {weight!r} for edge {source!r} -> {target!r}")
        if self._edge_keys is None:
            self._edge_keys = set(zip(self._src.tolist(), self._dst.tolist(), self._lay.tolist()))
            self._edge_keys.update((a, b, c) for a, b, c, _ in self._staged)
        key = (s, t, l)
        if key in self._edge_keys:
            raise DuplicateEdgeError(
                f"edge {source!r} -> {target!r} already present on layer {layer!r}")
        self._edge_keys.add(key)
        self._staged.append((s, t, l, w))
        self._index = None

    def freeze(self) -> "MultiLayerNetwork":
        """Make the network immutable and build its query index."""
        self._merge_staged()
        self._frozen = True
        self._edge_keys = None
        self._get_index()
        return self

    @property
    def frozen(self) -> bool:
        return self._frozen

    # -- lookups -----------------------------------------------------------

    def _require_node(self, label: str) -> int:
        idx = self._node_ids.get(label)
        if idx is None:
            raise UnknownNodeError(f"unknown node {label!r}")
        return idx

    def _require_layer(self, label: str) -> int:
        idx = self._layer_ids.get(label)
        if idx is None:
            raise UnknownLayerError(f"unknown layer {label!r}")
        return idx

    def has_node(self, label: str) -> bool:
        return label in self._node_ids

    def has_layer(self, label: str) -> bool:
        return label in self._layer_ids

    def node_label(self, idx: int) -> str:
        return self._node_labels[idx]

    def layer_label(self, idx: int) -> str:
        return self._layer_labels[idx]

    @property
    def node_labels(self) -> tuple[str, ...]:
        return tuple(self._node_labels)

    @property
    def layer_labels(self) -> tuple[str, ...]:
        return tuple(self._layer_labels)

    @property
    def num_nodes(self) -> int:
        return len(self._node_labels)

    @property
    def num_layers(self) -> int:
        return len(self._layer_labels)

    @property
    def num_edges(self) -> int:
        return int(self._src.size) + len(self._staged)

    # -- structural queries ------------------------------------------------

    def counts(self) -> NetworkCounts:
        """Exact node/layer/edge totals; per-layer counts sum to the total."""
        self._merge_staged()
        per_layer = np.bincount(self._lay, minlength=self.num_layers)
        return NetworkCounts(
            nodes=self.num_nodes,
            layers=self.num_layers,
            edges=int(self._src.size),
            edges_per_layer={label: int(per_layer[i])
                             for i, label in enumerate(self._layer_labels)},
        )

    def active_nodes(self) -> set[str]:
        """Labels of nodes with at least one incident edge on any layer."""
        idx = self._get_index()
        mask = idx.active_mask()
        return {self._node_labels[i] for i in np.flatnonzero(mask)}

    def layer_subnetwork(self, layer: str) -> "MultiLayerNetwork":
        """One-layer network: same node set, only that layer's edges."""
        l = self._require_layer(layer)
        self._merge_staged()
        keep = self._lay == l
        return MultiLayerNetwork._from_arrays(
            self._node_labels, [layer],
            self._src[keep], self._dst[keep],
            np.zeros(int(keep.sum()), dtype=np.int32), self._wgt[keep],
        )

    def edges(self) -> Iterator[tuple[str, str, str, float]]:
        """Yield (source, target, layer, weight) for every stored edge."""
        self._merge_staged()
        nl, ll = self._node_labels, self._layer_labels
        for s, t, l, w in zip(self._src.tolist(), self._dst.tolist(),
                              self._lay.tolist(), self._wgt.tolist()):
            yield nl[s], nl[t], ll[l], w

    def edge_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Internal-index edge arrays (src, dst, layer, weight); read-only use."""
        self._merge_staged()
        return self._src, self._dst, self._lay, self._wgt

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiLayerNetwork):
            return NotImplemented
        if set(self._node_labels) != set(other._node_labels):
            return False
        if set(self._layer_labels) != set(other._layer_labels):
            return False
        return dict(self._edge_items()) == dict(other._edge_items())

    __hash__ = None

    def _edge_items(self):
        for s, t, l, w in self.edges():
            yield (s, t, l), w

    # -- internals ----------------------------------------------------------

    def _merge_staged(self):
        if not self._staged:
            return
        stage = np.array(self._staged, dtype=np.float64)
        self._src = np.concatenate([self._src, stage[:, 0].astype(np.int32)])
        self._dst = np.concatenate([self._dst, stage[:, 1].astype(np.int32)])
        self._lay = np.concatenate([self._lay, stage[:, 2].astype(np.int32)])
        self._wgt = np.concatenate([self._wgt, stage[:, 3]])
        self._staged = []

    def _get_index(self) -> _FrozenIndex:
        if self._index is None:
            self._merge_staged()
            self._index = _FrozenIndex(self.num_nodes, self.num_layers,
                                       self._src, self._dst, self._lay, self._wgt)
        return self._index

"""Deterministic synthetic multi-layer network generator.

Each layer starts from a directed clique over the first ``seed_clique``
node ids, then grows by arrivals: the remaining nodes join in id order
and the per-layer edge budget is spread evenly over them. Every budget
edge either

* attaches preferentially: the target is drawn proportional to
  (in-degree + 1) among the nodes present so far, the source uniformly
  at random among them; or
* with probability ``overlap``, copies a source/target pair that
  already exists somewhere in the network onto this layer, which is
  what gives pairs adjacency on several layers.

Arrivals are processed in fixed-size blocks, round-robin across layers,
and the attachment weights are frozen at the start of each block so a
whole block can be drawn with vectorised RNG calls. Candidate edges
that collide (self-loop, or pair already present on the layer) are
redrawn a bounded number of times, falling back to plain preferential
attachment, then dropped; the budget is therefore an upper bound.

Randomness comes from numpy's PCG64 generator seeded with the config
seed. The block size and retry count below are part of the algorithm:
the same config always yields the same network, byte for byte once
serialised.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigInvalidError
from .model import MultiLayerNetwork

RNG_ALGORITHM = "pcg64"
BLOCK_ARRIVALS = 1024
RETRY_ROUNDS = 4

WEIGHT_MODES = ("constant", "exponential")


@dataclass(frozen=True)
class GeneratorConfig:
    """Parameters of one deterministic generation run."""

    nodes: int
    layers: int
    edges_per_layer: int
    seed_clique: int = 2
    overlap: float = 0.0
    seed: int = 0
    weight_mode: str = "constant"
    weight_scale: float = 1.0

    def validate(self):
        if self.seed_clique < 2:
            raise ConfigInvalidError(f"seed_clique must be >= 2, got {self.seed_clique}")
        if self.nodes < self.seed_clique:
            raise ConfigInvalidError(
                f"nodes ({self.nodes}) must be >= seed_clique ({self.seed_clique})")
        if self.layers < 1:
            raise ConfigInvalidError(f"layers must be >= 1, got {self.layers}")
        if self.edges_per_layer < 0:
            raise ConfigInvalidError("edges_per_layer must be >= 0")
        if not 0.0 <= self.overlap <= 1.0:
            raise ConfigInvalidError(f"overlap must be in [0, 1], got {self.overlap}")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigInvalidError("seed must be a 64-bit non-negative integer")
        if self.weight_mode not in WEIGHT_MODES:
            raise ConfigInvalidError(f"weight_mode must be one of {WEIGHT_MODES}")
        if self.weight_mode == "exponential" and not self.weight_scale > 0:
            raise ConfigInvalidError("weight_scale must be > 0 for exponential weights")
        if self.weight_scale < 0 or not np.isfinite(self.weight_scale):
            raise ConfigInvalidError("weight_scale must be finite and >= 0")


class _LayerState:
    """Mutable per-layer buffers while a layer is being grown."""

    def __init__(self, capacity: int):
        self.src = np.empty(capacity, dtype=np.int64)
        self.dst = np.empty(capacity, dtype=np.int64)
        self.wgt = np.empty(capacity, dtype=np.float64)
        self.count = 0
        self.keys = np.empty(0, dtype=np.int64)            # sorted packed pairs
        self.targets = np.empty(capacity, dtype=np.int64)  # in-degree history
        self.target_count = 0

    def accept(self, src: np.ndarray, dst: np.ndarray, sorted_keys: np.ndarray):
        e = src.size
        self.src[self.count:self.count + e] = src
        self.dst[self.count:self.count + e] = dst
        self.targets[self.target_count:self.target_count + e] = dst
        self.count += e
        self.target_count += e
        pos = np.searchsorted(self.keys, sorted_keys)
        self.keys = np.insert(self.keys, pos, sorted_keys)

    def contains(self, keys: np.ndarray) -> np.ndarray:
        pos = np.searchsorted(self.keys, keys)
        inside = pos < self.keys.size
        hit = np.zeros(keys.size, dtype=bool)
        hit[inside] = self.keys[pos[inside]] == keys[inside]
        return hit


def _node_labels(n: int) -> list[str]:
    width = len(str(max(n - 1, 1)))
    return [f"n{i:0{width}d}" for i in range(n)]


def _clique_pairs(s: int) -> tuple[np.ndarray, np.ndarray]:
    src = np.repeat(np.arange(s, dtype=np.int64), s - 1)
    dst = np.concatenate([np.delete(np.arange(s, dtype=np.int64), i) for i in range(s)])
    return src, dst


def generate(config: GeneratorConfig) -> MultiLayerNetwork:
    """Grow a frozen network from the config; equal seeds, equal output."""
    config.validate()
    n = config.nodes
    k = config.layers
    s = config.seed_clique
    budget = config.edges_per_layer
    exponential = config.weight_mode == "exponential"
    rng = np.random.Generator(np.random.PCG64(config.seed))

    capacity = s * (s - 1) + budget
    layers = [_LayerState(capacity) for _ in range(k)]
    pool = np.empty(k * capacity, dtype=np.int64)
    pool_count = 0

    cl_src, cl_dst = _clique_pairs(s)
    cl_keys = cl_src * n + cl_dst
    for state in layers:
        state.accept(cl_src, cl_dst, np.sort(cl_keys))
        if exponential:
            state.wgt[:state.count] = rng.exponential(config.weight_scale, state.count)
        pool[pool_count:pool_count + cl_keys.size] = cl_keys
        pool_count += cl_keys.size

    arrivals = np.arange(s, n, dtype=np.int64)
    if arrivals.size and budget:
        base, rem = divmod(budget, arrivals.size)
        per_arrival = np.full(arrivals.size, base, dtype=np.int64)
        per_arrival[:rem] += 1
        edge_arrival = np.repeat(arrivals, per_arrival)
    else:
        edge_arrival = np.empty(0, dtype=np.int64)

    num_blocks = (arrivals.size + BLOCK_ARRIVALS - 1) // BLOCK_ARRIVALS
    for block in range(num_blocks):
        block_lo = s + block * BLOCK_ARRIVALS
        block_hi = min(s + (block + 1) * BLOCK_ARRIVALS, n)
        lo = np.searchsorted(edge_arrival, block_lo, side="left")
        hi = np.searchsorted(edge_arrival, block_hi, side="left")
        if lo == hi:
            continue
        for state in layers:
            accepted = _grow_block(rng, state, edge_arrival[lo:hi], n,
                                   config.overlap, pool, pool_count)
            if accepted:
                new_src = state.src[state.count - accepted:state.count]
                new_dst = state.dst[state.count - accepted:state.count]
                pool[pool_count:pool_count + accepted] = new_src * n + new_dst
                pool_count += accepted
                if exponential:
                    state.wgt[state.count - accepted:state.count] = \
                        rng.exponential(config.weight_scale, accepted)

    return _assemble(config, layers)


def _grow_block(rng, state: _LayerState, arrival: np.ndarray, n: int,
                overlap: float, pool: np.ndarray, pool_count: int) -> int:
    """Draw one block of candidate edges for one layer; returns accepted count."""
    target_len = state.target_count      # frozen for the whole block
    frozen_targets = state.targets[:target_len].copy()
    pending = arrival
    total_accepted = 0
    for round_no in range(RETRY_ROUNDS):
        if pending.size == 0:
            break
        p = pending.size
        present = pending + 1            # nodes 0..v are present when v arrives

        if round_no == 0 and overlap > 0.0 and pool_count > 0:
            copy_mode = rng.random(p) < overlap
        else:
            copy_mode = np.zeros(p, dtype=bool)

        smooth = present / (present + target_len)
        pick_uniform = rng.random(p) < smooth
        tgt = np.where(pick_uniform,
                       rng.integers(0, present),
                       frozen_targets[rng.integers(0, max(target_len, 1), size=p)])
        src = rng.integers(0, present)
        if copy_mode.any():
            pair = pool[rng.integers(0, pool_count, size=p)]
            src = np.where(copy_mode, pair // n, src)
            tgt = np.where(copy_mode, pair % n, tgt)

        keys = src * n + tgt
        ok = (src != tgt) & ~state.contains(keys)
        if ok.any():
            # deduplicate inside the round, keeping first occurrences
            cand = np.flatnonzero(ok)
            _, first_pos = np.unique(keys[cand], return_index=True)
            chosen = cand[np.sort(first_pos)]
            state.accept(src[chosen], tgt[chosen], np.sort(keys[chosen]))
            total_accepted += chosen.size
            ok_mask = np.zeros(p, dtype=bool)
            ok_mask[chosen] = True
            pending = pending[~ok_mask]
        # rejected candidates keep their arrival slot and are redrawn
    return total_accepted


def _assemble(config: GeneratorConfig, layers: list[_LayerState]) -> MultiLayerNetwork:
    counts = [state.count for state in layers]
    total = sum(counts)
    if total:
        src = np.concatenate([state.src[:state.count] for state in layers])
        dst = np.concatenate([state.dst[:state.count] for state in layers])
        lay = np.repeat(np.arange(config.layers, dtype=np.int64), counts)
        if config.weight_mode == "constant":
            wgt = np.full(total, config.weight_scale, dtype=np.float64)
        else:
            wgt = np.concatenate([state.wgt[:state.count] for state in layers])
    else:
        src = dst = lay = np.empty(0, dtype=np.int64)
        wgt = np.empty(0, dtype=np.float64)

    node_labels = _node_labels(config.nodes)
    layer_labels = [f"l{j + 1}" for j in range(config.layers)]
    return MultiLayerNetwork._from_arrays(node_labels, layer_labels,
                                          src, dst, lay, wgt).freeze()

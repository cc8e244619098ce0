"""Edge-list and node-manifest text formats.

Edge list: UTF-8, one record per line, tab-separated, 3 or 4 fields:

    source<TAB>target<TAB>layer[<TAB>weight]

A missing weight means 1.0. Lines starting with "#" are comments and
blank lines are ignored. The writer additionally emits directive
comments ("#%layer<TAB>label", "#%node<TAB>label") that register layers
and nodes explicitly; any other tool can ignore them as ordinary
comments, but they let a round trip preserve isolated nodes, empty
layers and registration order. Weights are written with the shortest
decimal representation that parses back to the same float.

Node manifest: one non-empty label per line, "#" comments allowed.

Every error raised while reading carries the 1-based line number of the
offending record, and with the default policies parsing fails on the
first violating line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

import numpy as np

from .errors import (
    DuplicateEdgeError,
    InvalidWeightError,
    LoopRejectedError,
    MlnetError,
    ParseError,
)
from .model import MultiLayerNetwork

DUPLICATE_POLICIES = ("error", "sum", "max", "first")
LOOP_POLICIES = ("error", "skip")

_LAYER_DIRECTIVE = "#%layer\t"
_NODE_DIRECTIVE = "#%node\t"


@dataclass
class IngestOptions:
    """Knobs controlling how an edge-list stream becomes a network."""

    duplicate_policy: str = "error"
    loop_policy: str = "error"
    node_manifest: Sequence[str] | None = field(default=None)

    def validate(self):
        if self.duplicate_policy not in DUPLICATE_POLICIES:
            raise ValueError(f"duplicate_policy must be one of {DUPLICATE_POLICIES}")
        if self.loop_policy not in LOOP_POLICIES:
            raise ValueError(f"loop_policy must be one of {LOOP_POLICIES}")


def _check_label(text: str, what: str, lineno: int) -> str:
    if not text:
        raise ParseError(f"empty {what} label", line=lineno)
    if "\t" in text or "\n" in text or "\r" in text:
        raise ParseError(f"{what} label contains tab or newline", line=lineno)
    return text


def load_node_manifest(stream: Iterable[str]) -> list[str]:
    """Read node labels, one per line; comments and blanks skipped."""
    labels = []
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        labels.append(_check_label(line, "node", lineno))
    return labels


def parse_edge_list(stream: Iterable[str],
                    options: IngestOptions | None = None) -> MultiLayerNetwork:
    """Build a frozen network from an edge-list stream.

    Node and layer ids follow first appearance (manifest nodes first,
    then directives and edge fields in stream order). Duplicate
    (source, target, layer) records are resolved per
    ``options.duplicate_policy``; with "error", parsing reports the
    first line that repeats an earlier record.
    """
    options = options or IngestOptions()
    options.validate()

    node_ids: dict[str, int] = {}
    node_labels: list[str] = []
    layer_ids: dict[str, int] = {}
    layer_labels: list[str] = []

    def intern_node(label: str) -> int:
        idx = node_ids.get(label)
        if idx is None:
            idx = len(node_labels)
            node_ids[label] = idx
            node_labels.append(label)
        return idx

    def intern_layer(label: str) -> int:
        idx = layer_ids.get(label)
        if idx is None:
            idx = len(layer_labels)
            layer_ids[label] = idx
            layer_labels.append(label)
        return idx

    if options.node_manifest is not None:
        for label in options.node_manifest:
            intern_node(label)

    srcs: list[int] = []
    dsts: list[int] = []
    lays: list[int] = []
    wgts: list[float] = []
    lines: list[int] = []

    # The scan stops at the first structurally bad line; duplicates in
    # the prefix before it may still be the earlier violation, so the
    # error is stashed rather than raised immediately.
    stashed: MlnetError | None = None
    for lineno, raw in enumerate(stream, 1):
        line = raw.rstrip("\r\n")
        if not line.strip():
            continue
        if line.startswith("#"):
            if line.startswith(_LAYER_DIRECTIVE):
                intern_layer(_check_label(line[len(_LAYER_DIRECTIVE):], "layer", lineno))
            elif line.startswith(_NODE_DIRECTIVE):
                intern_node(_check_label(line[len(_NODE_DIRECTIVE):], "node", lineno))
            continue
        parts = line.split("\t")
        if len(parts) not in (3, 4):
            stashed = ParseError(f"expected 3 or 4 tab-separated fields, got {len(parts)}",
                                 line=lineno)
            break
        src_label, dst_label, lay_label = parts[0], parts[1], parts[2]
        try:
            _check_label(src_label, "source", lineno)
            _check_label(dst_label, "target", lineno)
            _check_label(lay_label, "layer", lineno)
        except ParseError as exc:
            stashed = exc
            break
        if len(parts) == 4:
            try:
                weight = float(parts[3])
            except ValueError:
                stashed = ParseError(f"unparseable weight {parts[3]!r}", line=lineno)
                break
            if not np.isfinite(weight) or weight < 0.0:
                stashed = InvalidWeightError(f"weight {parts[3]} is negative or non-finite",
                                             line=lineno)
                break
        else:
            weight = 1.0
        if src_label == dst_label:
            if options.loop_policy == "skip":
                intern_node(src_label)
                intern_layer(lay_label)
                continue
            stashed = LoopRejectedError(f"loop edge on node {src_label!r}", line=lineno)
            break
        srcs.append(intern_node(src_label))
        dsts.append(intern_node(dst_label))
        lays.append(intern_layer(lay_label))
        wgts.append(weight)
        lines.append(lineno)

    src = np.array(srcs, dtype=np.int64)
    dst = np.array(dsts, dtype=np.int64)
    lay = np.array(lays, dtype=np.int64)
    wgt = np.array(wgts, dtype=np.float64)
    line_no = np.array(lines, dtype=np.int64)

    src, dst, lay, wgt = _resolve_duplicates(
        src, dst, lay, wgt, line_no,
        len(node_labels), len(layer_labels),
        options.duplicate_policy, stashed)
    if stashed is not None:
        raise stashed

    return MultiLayerNetwork._from_arrays(
        node_labels, layer_labels,
        src, dst, lay, wgt).freeze()


def _resolve_duplicates(src, dst, lay, wgt, line_no, n_nodes, n_layers,
                        policy: str, stashed: MlnetError | None):
    """Collapse repeated (src, dst, layer) records per policy.

    With policy "error" a DuplicateEdgeError for the first repeated line
    is raised here, unless a structural error on an earlier line was
    already stashed by the caller.
    """
    if src.size == 0:
        return src, dst, lay, wgt
    key = (src * n_layers + lay) * max(n_nodes, 1) + dst
    order = np.argsort(key, kind="stable")  # stable keeps file order within a key
    k = key[order]
    first = np.empty(k.size, dtype=bool)
    first[0] = True
    first[1:] = k[1:] != k[:-1]

    if policy == "error":
        repeats = ~first
        if repeats.any():
            dup_line = int(line_no[order][repeats].min())
            if stashed is None or dup_line < (stashed.line or 0):
                raise DuplicateEdgeError("repeats an earlier source/target/layer record",
                                         line=dup_line)
        return src, dst, lay, wgt
    if stashed is not None:
        # A structural error precedes any aggregation outcome.
        raise stashed

    starts = np.flatnonzero(first)
    keep = order[starts]
    if policy == "sum":
        agg = np.add.reduceat(wgt[order], starts)
    elif policy == "max":
        agg = np.maximum.reduceat(wgt[order], starts)
    else:  # first
        agg = wgt[keep]
    # Restore first-appearance file order for deterministic edge ids.
    refile = np.argsort(line_no[keep], kind="stable")
    keep = keep[refile]
    return src[keep], dst[keep], lay[keep], agg[refile]


def write_edge_list(network: MultiLayerNetwork, stream: TextIO):
    """Serialise a network so that parsing it back yields an equal one.

    Layers and nodes are declared first (directive comments, in
    registration order), then edges sorted by (layer, source label,
    target label).
    """
    stream.write("# mlnet edge list: source\ttarget\tlayer\tweight\n")
    for label in network.layer_labels:
        stream.write(f"{_LAYER_DIRECTIVE}{label}\n")
    for label in network.node_labels:
        stream.write(f"{_NODE_DIRECTIVE}{label}\n")

    src, dst, lay, wgt = network.edge_arrays()
    if src.size == 0:
        return
    node_rank = np.empty(network.num_nodes, dtype=np.int64)
    node_rank[np.argsort(np.array(network.node_labels))] = np.arange(network.num_nodes)
    order = np.lexsort((node_rank[dst], node_rank[src], lay))

    labels = network.node_labels
    layer_names = network.layer_labels
    out = []
    for s, t, l, w in zip(src[order].tolist(), dst[order].tolist(),
                          lay[order].tolist(), wgt[order].tolist()):
        out.append(f"{labels[s]}\t{labels[t]}\t{layer_names[l]}\t{w!r}\n")
        if len(out) >= 65536:
            stream.write("".join(out))
            out.clear()
    stream.write("".join(out))


def read_edge_file(path, options: IngestOptions | None = None) -> MultiLayerNetwork:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_edge_list(fh, options)


def write_edge_file(network: MultiLayerNetwork, path):
    with open(path, "w", encoding="utf-8", newline="") as fh:
        write_edge_list(network, fh)

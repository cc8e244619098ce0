"""Distribution and summary reports over a multi-layer network.

Reports mirror the shape of typical large-network write-ups: per-layer
edge/active-node tables, rank distributions of neighbourhood sizes and
centrality scores, three-tier bucketed histograms, empty/non-empty
neighbourhood occupancy per threshold, and per-threshold centrality
min/max summaries. Each report knows how to emit itself as CSV rows and
as a JSON-ready object with the same field names.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import TextIO

import numpy as np

from .centrality import cldc_batch_array
from .model import MultiLayerNetwork
from .neighborhood import check_alpha

HIST_TIER1_WIDTH = 10     # buckets (0,10] .. (90,100]
HIST_TIER2_WIDTH = 100    # buckets (100,200] .. (900,1000]
HIST_TIER3_WIDTH = 1000   # buckets (1000,2000] .. up to the observed max


@dataclass(frozen=True)
class LayerStatsRow:
    layer: str
    edges: int
    active_nodes: int


@dataclass(frozen=True)
class LayerStatsTable:
    """Per-layer edge and active-node counts plus totals."""

    rows: tuple[LayerStatsRow, ...]
    total_edges: int
    total_active_entries: int
    num_nodes: int

    csv_header = ("layer", "edges", "active_nodes")

    def csv_rows(self):
        for r in self.rows:
            yield (r.layer, r.edges, r.active_nodes)
        yield ("TOTAL", self.total_edges, self.total_active_entries)

    def json_obj(self):
        return {
            "layers": [{"layer": r.layer, "edges": r.edges, "active_nodes": r.active_nodes}
                       for r in self.rows],
            "total_edges": self.total_edges,
            "total_active_entries": self.total_active_entries,
            "num_nodes": self.num_nodes,
        }


@dataclass(frozen=True)
class RankDistribution:
    """Per-node values sorted descending; zero values are omitted.

    Ties are broken by ascending internal node index, so output order is
    deterministic for a given network.
    """

    alpha: int
    variant: str | None            # None for neighbourhood sizes
    entries: tuple[tuple[str, int | float], ...]

    csv_header = ("rank", "node", "value")

    def csv_rows(self):
        for rank, (node, value) in enumerate(self.entries, 1):
            yield (rank, node, value)

    def json_obj(self):
        return {
            "alpha": self.alpha,
            "variant": self.variant,
            "entries": [{"rank": i, "node": n, "value": v}
                        for i, (n, v) in enumerate(self.entries, 1)],
        }

    def values(self) -> np.ndarray:
        return np.array([v for _, v in self.entries], dtype=np.float64)


@dataclass(frozen=True)
class HistogramReport:
    """Counts of nodes per neighbourhood-size bucket.

    Buckets are half-open (lo, hi]: width 10 up to 100, width 100 up to
    1000, width 1000 beyond that, extended to cover the observed
    maximum. Counts sum to the number of nodes with a non-empty
    neighbourhood.
    """

    alpha: int
    buckets: tuple[tuple[int, int, int], ...]   # (lo, hi, count)

    csv_header = ("bucket_lo", "bucket_hi", "count")

    def csv_rows(self):
        yield from self.buckets

    def json_obj(self):
        return {
            "alpha": self.alpha,
            "buckets": [{"bucket_lo": lo, "bucket_hi": hi, "count": c}
                        for lo, hi, c in self.buckets],
        }


@dataclass(frozen=True)
class OccupancyRow:
    alpha: int
    nonempty: int
    empty: int
    pct_nonempty: float


@dataclass(frozen=True)
class OccupancyReport:
    """Empty vs non-empty cross-layer neighbourhoods per threshold."""

    rows: tuple[OccupancyRow, ...]

    csv_header = ("alpha", "nonempty", "empty", "pct_nonempty")

    def csv_rows(self):
        for r in self.rows:
            yield (r.alpha, r.nonempty, r.empty, r.pct_nonempty)

    def json_obj(self):
        return {"rows": [{"alpha": r.alpha, "nonempty": r.nonempty,
                          "empty": r.empty, "pct_nonempty": r.pct_nonempty}
                         for r in self.rows]}


@dataclass(frozen=True)
class CentralitySummaryRow:
    alpha: int
    min: float      # over positive scores; 0.0 when none
    max: float
    count: int      # nodes with a positive score


@dataclass(frozen=True)
class CentralitySummary:
    """Per-threshold min/max of positive scores and their count."""

    variant: str
    rows: tuple[CentralitySummaryRow, ...]

    csv_header = ("alpha", "min", "max", "count")

    def csv_rows(self):
        for r in self.rows:
            yield (r.alpha, r.min, r.max, r.count)

    def json_obj(self):
        return {"variant": self.variant,
                "rows": [{"alpha": r.alpha, "min": r.min, "max": r.max, "count": r.count}
                         for r in self.rows]}


# -- report construction ----------------------------------------------------

def layer_stats(network: MultiLayerNetwork) -> LayerStatsTable:
    """Edge count and active-node count for every layer, with totals."""
    idx = network._get_index()
    active = idx.layer_active_counts()
    rows = tuple(
        LayerStatsRow(layer=label,
                      edges=int(idx.layer_edge_counts[i]),
                      active_nodes=int(active[i]))
        for i, label in enumerate(network.layer_labels))
    return LayerStatsTable(rows=rows,
                           total_edges=int(idx.layer_edge_counts.sum()),
                           total_active_entries=int(active.sum()),
                           num_nodes=network.num_nodes)


def _rank_order(values: np.ndarray) -> np.ndarray:
    """Indices of positive entries, by descending value then ascending index."""
    keep = np.flatnonzero(values > 0)
    return keep[np.lexsort((keep, -values[keep]))]


def mn_size_distribution(network: MultiLayerNetwork, alpha: int) -> RankDistribution:
    """Sizes of non-empty cross-layer neighbourhoods, ranked descending."""
    check_alpha(network, alpha)
    sizes = network._get_index().mn_sizes(alpha)
    order = _rank_order(sizes)
    entries = tuple((network.node_label(int(i)), int(sizes[i])) for i in order)
    return RankDistribution(alpha=alpha, variant=None, entries=entries)


def cldc_distribution(network: MultiLayerNetwork, alpha: int,
                      variant: str = "total",
                      threads: int | None = None) -> RankDistribution:
    """Positive centrality scores, ranked descending."""
    values = cldc_batch_array(network, alpha, variant, threads)
    order = _rank_order(values)
    entries = tuple((network.node_label(int(i)), float(values[i])) for i in order)
    return RankDistribution(alpha=alpha, variant=variant, entries=entries)


def _bucket_edges(max_size: int) -> list[int]:
    edges = [0] + list(range(HIST_TIER1_WIDTH, 101, HIST_TIER1_WIDTH))
    edges += list(range(200, 1001, HIST_TIER2_WIDTH))
    top = 1000
    while top < max_size:
        top += HIST_TIER3_WIDTH
        edges.append(top)
    return edges


def mn_histogram(network: MultiLayerNetwork, alpha: int) -> HistogramReport:
    """Three-tier bucket counts of non-empty neighbourhood sizes."""
    check_alpha(network, alpha)
    sizes = network._get_index().mn_sizes(alpha)
    sizes = sizes[sizes > 0]
    edges = _bucket_edges(int(sizes.max()) if sizes.size else 0)
    if sizes.size:
        # Sizes are integers, so shifting the bin edges by 0.5 turns
        # numpy's [lo, hi) bins into the (lo, hi] buckets wanted here.
        counts, _ = np.histogram(sizes, bins=np.asarray(edges) + 0.5)
    else:
        counts = np.zeros(len(edges) - 1, dtype=np.int64)
    buckets = tuple((edges[i], edges[i + 1], int(counts[i])) for i in range(len(edges) - 1))
    return HistogramReport(alpha=alpha, buckets=buckets)


def mn_occupancy(network: MultiLayerNetwork, alphas: list[int]) -> OccupancyReport:
    """Empty/non-empty neighbourhood counts over all nodes, per alpha."""
    idx = network._get_index()
    m = network.num_nodes
    rows = []
    for alpha in alphas:
        check_alpha(network, alpha)
        nonempty = int((idx.mn_sizes(alpha) > 0).sum())
        pct = 100.0 * nonempty / m if m else 0.0
        rows.append(OccupancyRow(alpha=alpha, nonempty=nonempty,
                                 empty=m - nonempty, pct_nonempty=pct))
    return OccupancyReport(rows=tuple(rows))


def cldc_summary(network: MultiLayerNetwork, alphas: list[int],
                 variant: str = "total",
                 threads: int | None = None) -> CentralitySummary:
    """Min/max over positive scores and the positive count, per alpha."""
    rows = []
    for alpha in alphas:
        values = cldc_batch_array(network, alpha, variant, threads)
        positive = values[values > 0]
        rows.append(CentralitySummaryRow(
            alpha=alpha,
            min=float(positive.min()) if positive.size else 0.0,
            max=float(positive.max()) if positive.size else 0.0,
            count=int(positive.size)))
    return CentralitySummary(variant=variant, rows=tuple(rows))


# -- rank-size fitting --------------------------------------------------------

def fit_rank_size(values) -> tuple[float, float]:
    """Least-squares slope and R^2 of log10(value) against log10(rank).

    Values are sorted descending and non-positive ones dropped. Used to
    eyeball how heavy-tailed a distribution is; a steep negative slope
    with high R^2 on a log-log rank plot is the usual scale-free
    signature.
    """
    v = np.sort(np.asarray(values, dtype=np.float64))[::-1]
    v = v[v > 0]
    if v.size < 2:
        return 0.0, 0.0
    x = np.log10(np.arange(1, v.size + 1, dtype=np.float64))
    y = np.log10(v)
    slope, intercept = np.polyfit(x, y, 1)
    fitted = slope * x + intercept
    ss_res = float(np.sum((y - fitted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else 1.0
    return float(slope), r2


def layer_degree_values(network: MultiLayerNetwork, layer: str,
                        direction: str = "in") -> np.ndarray:
    """Positive per-node degree counts on one layer.

    direction: "in" (edges received), "out" (edges sent) or "both"
    (distinct neighbours, either direction).
    """
    l = network._require_layer(layer)
    src, dst, lay, _ = network.edge_arrays()
    on_layer = lay == l
    if direction == "in":
        deg = np.bincount(dst[on_layer], minlength=network.num_nodes)
    elif direction == "out":
        deg = np.bincount(src[on_layer], minlength=network.num_nodes)
    elif direction == "both":
        idx = network._get_index()
        mask = idx.t_lay == l
        deg = np.bincount(idx.t_own[mask], minlength=network.num_nodes)
    else:
        raise ValueError(f"direction must be in/out/both, got {direction!r}")
    return deg[deg > 0]


# -- export -------------------------------------------------------------------

def _format_cell(value) -> str:
    # Full precision for floats: repr round-trips exactly.
    if isinstance(value, float):
        return repr(value)
    return str(value)


def write_report_csv(report, stream: TextIO):
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(report.csv_header)
    for row in report.csv_rows():
        writer.writerow([_format_cell(c) for c in row])


def write_report_json(report, stream: TextIO):
    json.dump(report.json_obj(), stream, indent=2)
    stream.write("\n")


def report_csv_text(report) -> str:
    import io as _io
    buf = _io.StringIO()
    write_report_csv(report, buf)
    return buf.getvalue()

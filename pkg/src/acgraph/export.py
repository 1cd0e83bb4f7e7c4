"""Graph and statistics files.

All writers produce UTF-8 text with LF line endings and are byte-deterministic
for a given graph.
"""

from __future__ import annotations

import csv
import json
from enum import Enum
from pathlib import Path
from xml.sax.saxutils import quoteattr

import numpy as np

from .erasure import ErasureReport
from .errors import AcgraphError
from .graph import GenerationReport, MultiDigraph
from .metrics import EmpiricalSummary


class IoError(AcgraphError, OSError):
    category = "io"


class GraphFormat(str, Enum):
    EDGE_LIST_CSV = "edges-csv"
    NODE_LIST_CSV = "nodes-csv"
    GRAPHML = "graphml"
    DOT = "dot"


def _open(path, mode="w"):
    try:
        return open(path, mode, encoding="utf-8", newline="")
    except OSError as exc:
        raise IoError(f"cannot open {path}: {exc.strerror}") from exc


def _edge_labels(g: MultiDigraph, out_out: bool) -> list[str]:
    k = g.out_degree[g.sources]
    second = g.out_degree[g.targets] if out_out else g.in_degree[g.targets]
    return [f"{a},{b}" for a, b in zip(k.tolist(), second.tolist())]


def edge_list_csv(g: MultiDigraph) -> str:
    lines = ["source,target"]
    lines += [f"{s},{t}" for s, t in zip(g.sources.tolist(), g.targets.tolist())]
    return "\n".join(lines) + "\n"


def node_list_csv(g: MultiDigraph) -> str:
    lines = ["node,in_degree,out_degree"]
    lines += [
        f"{v},{j},{k}" for v, (j, k) in enumerate(zip(g.in_degree.tolist(), g.out_degree.tolist()))
    ]
    return "\n".join(lines) + "\n"


def graphml(g: MultiDigraph, out_out: bool = False) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns"'
        ' xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"'
        ' xsi:schemaLocation="http://graphml.graphdrawing.org/xmlns'
        ' http://graphml.graphdrawing.org/xmlns/1.0/graphml.xsd">',
        '  <key id="j" for="node" attr.name="j" attr.type="int"/>',
        '  <key id="k" for="node" attr.name="k" attr.type="int"/>',
        '  <key id="etype" for="edge" attr.name="etype" attr.type="string"/>',
        '  <graph id="G" edgedefault="directed">',
    ]
    for v, (j, k) in enumerate(zip(g.in_degree.tolist(), g.out_degree.tolist())):
        lines.append(
            f'    <node id="n{v}"><data key="j">{j}</data><data key="k">{k}</data></node>'
        )
    labels = _edge_labels(g, out_out)
    for e, (s, t) in enumerate(zip(g.sources.tolist(), g.targets.tolist())):
        lines.append(
            f'    <edge id="e{e}" source="n{s}" target="n{t}">'
            f'<data key="etype">{labels[e]}</data></edge>'
        )
    lines += ["  </graph>", "</graphml>"]
    return "\n".join(lines) + "\n"


def dot(g: MultiDigraph, out_out: bool = False) -> str:
    lines = ["digraph G {"]
    for v, (j, k) in enumerate(zip(g.in_degree.tolist(), g.out_degree.tolist())):
        lines.append(f"  {v} [j={j}, k={k}];")
    labels = _edge_labels(g, out_out)
    for e, (s, t) in enumerate(zip(g.sources.tolist(), g.targets.tolist())):
        lines.append(f"  {s} -> {t} [etype={quoteattr(labels[e])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


_RENDERERS = {
    GraphFormat.EDGE_LIST_CSV: lambda g, out_out: edge_list_csv(g),
    GraphFormat.NODE_LIST_CSV: lambda g, out_out: node_list_csv(g),
    GraphFormat.GRAPHML: graphml,
    GraphFormat.DOT: dot,
}


def export_graph(g: MultiDigraph, fmt, path, out_out: bool = False) -> None:
    """Write ``g`` to ``path`` in format ``fmt``.

    ``out_out`` selects the ``(k_v, k_w)`` edge-type label used by the
    out-out variant; otherwise edges are labelled ``"k,j"``.
    """
    text = _RENDERERS[GraphFormat(fmt)](g, out_out)
    with _open(path) as fh:
        fh.write(text)


def read_graph(edges_path, nodes_path) -> MultiDigraph:
    """Rebuild a graph from an edge-list CSV and a node-list CSV."""
    try:
        with _open(nodes_path, "r") as fh:
            rows = list(csv.reader(fh))
        if not rows or rows[0] != ["node", "in_degree", "out_degree"]:
            raise IoError(f"{nodes_path}: bad header")
        nodes = np.array([[int(x) for x in r] for r in rows[1:]], dtype=np.int64).reshape(-1, 3)
        with _open(edges_path, "r") as fh:
            rows = list(csv.reader(fh))
        if not rows or rows[0] != ["source", "target"]:
            raise IoError(f"{edges_path}: bad header")
        edges = np.array([[int(x) for x in r] for r in rows[1:]], dtype=np.int64).reshape(-1, 2)
    except ValueError as exc:
        raise IoError(f"malformed graph file: {exc}") from exc
    if not np.array_equal(nodes[:, 0], np.arange(nodes.shape[0])):
        raise IoError(f"{nodes_path}: nodes must be listed as 0 .. n-1 in order")
    n = nodes.shape[0]
    if edges.size and (edges.min() < 0 or edges.max() >= n):
        raise IoError(f"{edges_path}: edge endpoint outside 0 .. {n - 1}")
    return MultiDigraph(
        in_degree=nodes[:, 1].copy(),
        out_degree=nodes[:, 2].copy(),
        sources=edges[:, 0].copy(),
        targets=edges[:, 1].copy(),
    )


def stats_document(
    summary: EmpiricalSummary,
    gen_report: GenerationReport | None = None,
    erase_report: ErasureReport | None = None,
    out_out: bool = False,
) -> dict:
    """Fixed-schema statistics record; see :func:`write_stats`."""
    edges_before = erase_report.edges_before if erase_report else summary.edge_count
    second = "k_prime" if out_out else "j"
    offset = 0 if out_out else 1
    q_rows, q_cols = np.nonzero(summary.q_hat)
    return {
        "n": summary.n,
        "accepted": gen_report.accepted if gen_report else None,
        "n_prime": gen_report.n_prime if gen_report else None,
        "n_doubleprime": gen_report.n_doubleprime if gen_report else None,
        "edges_before": edges_before,
        "edges_after": erase_report.edges_after if erase_report else edges_before,
        "self_loops_removed": erase_report.self_loops_removed if erase_report else 0,
        "excess_parallel_removed": erase_report.excess_parallel_removed if erase_report else 0,
        "p_hat": [{"j": j, "k": k, "value": v} for j, k, v in summary.p_entries()],
        "q_hat": [
            {"k": int(r) + 1, second: int(c) + offset, "value": float(summary.q_hat[r, c])}
            for r, c in zip(q_rows, q_cols)
        ],
        "rho_hat": summary.rho_hat,
        "deviation": summary.deviation,
        "edge_types": "out-out" if out_out else "out-in",
        "attempts": gen_report.attempts if gen_report else None,
        "seed": gen_report.seed if gen_report else None,
        "multi_pairs": erase_report.multi_pairs if erase_report else None,
    }


def write_stats(
    summary: EmpiricalSummary,
    gen_report: GenerationReport | None,
    erase_report: ErasureReport | None,
    path,
    out_out: bool = False,
) -> None:
    """Write the statistics JSON.

    Fields: ``n``, ``accepted``, ``n_prime``, ``n_doubleprime``,
    ``edges_before``, ``edges_after``, ``self_loops_removed``,
    ``excess_parallel_removed``, ``p_hat`` (list of ``{j, k, value}``),
    ``q_hat`` (list of ``{k, j, value}``; ``{k, k_prime, value}`` for the
    out-out variant), ``rho_hat`` (``null`` if undefined) and ``deviation``,
    followed by a few provenance fields.  Without an erasure report,
    ``edges_after`` equals ``edges_before``.
    """
    doc = stats_document(summary, gen_report, erase_report, out_out)
    with _open(path) as fh:
        json.dump(doc, fh, indent=2)
        fh.write("\n")

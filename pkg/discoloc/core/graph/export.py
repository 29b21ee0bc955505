# Copyright (c) 2026 The discoloc contributors.
# All rights reserved.
#
# This file is part of discoloc
# (discrepancy localization for large numerical model codes).
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
#
# For any clarifications or special considerations,
# please open an issue on the project tracker.

"""
    Module: export.py

    DOT and JSON serialization of metagraphs. Output is deterministic:
    nodes and edges are written in lexicographic NodeId order, so identical
    graphs give byte-identical files.

    The DOT writer can also style a graph the way the community figures are
    drawn: nodes colored by community, the most central nodes enlarged and,
    for presentation, weakly connected clusters below a size threshold left
    out.

    Functions:
        export_graph: Serialize a MetaGraph to bytes.
        write_graph: Serialize and write to a file.
        load_graph: Read a graph JSON file back into a MetaGraph.
        community_colors: Hex color per community index.

    Dependencies:
        - networkx: weakly connected components for presentation trimming
        - matplotlib: qualitative colormap for community colors

    Authors:
        - discoloc contributors

    Version Info:
        - 15/Oct/2026: Initial version

"""

import json
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Set

import networkx as nx
from matplotlib import colormaps
from matplotlib import colors as mcolors

from ..errors import SourceIoError
from .metagraph import MetaGraph, NodeMeta

FORMATS = ("dot", "json")
PRESENTATION_THRESHOLD = 4


def community_colors(count: int) -> List[str]:
    """``count`` distinct hex colors from matplotlib's tab20 colormap (cycled)."""
    cmap = colormaps["tab20"]
    return [mcolors.to_hex(cmap(i % cmap.N)) for i in range(count)]


def _presentation_nodes(g: MetaGraph, threshold: int) -> Set[str]:
    keep: Set[str] = set()
    for component in nx.weakly_connected_components(g.digraph):
        if len(component) >= threshold:
            keep |= component
    return keep


def _dot(
    g: MetaGraph,
    communities: Optional[Sequence[Iterable[str]]],
    highlight: Optional[Mapping[str, float]],
    presentation_threshold: Optional[int],
) -> str:
    visible = set(g.meta)
    if presentation_threshold:
        visible = _presentation_nodes(g, presentation_threshold)

    fill: Dict[str, str] = {}
    if communities:
        palette = community_colors(len(communities))
        for color, members in zip(palette, communities):
            for node in members:
                fill[node] = color

    scale: Dict[str, float] = {}
    if highlight:
        top = max(highlight.values(), default=0.0) or 1.0
        scale = {node: 1.0 + 2.0 * score / top for node, score in highlight.items()}

    lines = ["digraph metagraph {"]
    for node in sorted(visible):
        info: NodeMeta = g.meta[node]
        attrs = [f'label="{info.canonical_name}"', f'module="{info.module}"']
        if node in fill:
            attrs.append(f'style=filled, fillcolor="{fill[node]}"')
        if node in scale:
            attrs.append(f"width={scale[node]:.3f}, fontsize={int(round(14 * scale[node]))}")
        lines.append(f"  {node} [{', '.join(attrs)}];")
    for u, v in g.edges:
        if u in visible and v in visible:
            lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _json(g: MetaGraph) -> str:
    document = {
        "nodes": [g.meta[node].to_dict(node) for node in g.nodes],
        "edges": [[u, v] for u, v in g.edges],
        "traversed": [[u, v] for u, v in sorted(g.traversed)],
    }
    return json.dumps(document, indent=2) + "\n"


def export_graph(
    g: MetaGraph,
    format: str = "json",
    communities: Optional[Sequence[Iterable[str]]] = None,
    highlight: Optional[Mapping[str, float]] = None,
    presentation_threshold: Optional[int] = None,
) -> bytes:
    """
    Serialize a graph.

    Args:
        g (MetaGraph): Graph to export.
        format (str): ``"dot"`` or ``"json"``.
        communities (Optional[Sequence[Iterable[str]]]): DOT only, node sets
            to color.
        highlight (Optional[Mapping[str, float]]): DOT only, node scores; the
            listed nodes are drawn larger in proportion to their score.
        presentation_threshold (Optional[int]): DOT only, omit weakly
            connected clusters smaller than this.

    Returns:
        bytes: UTF-8 encoded document.
    """
    if format == "dot":
        text = _dot(g, communities, highlight, presentation_threshold)
    elif format == "json":
        text = _json(g)
    else:
        raise ValueError(f"Unknown graph format '{format}', expected one of {FORMATS}")
    return text.encode("utf-8")


def write_graph(g: MetaGraph, path, format: Optional[str] = None, **styling) -> Path:
    """
    Export ``g`` to ``path``; the format defaults to the file suffix.

    Raises:
        SourceIoError: If the file cannot be written.
    """
    path = Path(path)
    format = format or path.suffix.lstrip(".") or "json"
    payload = export_graph(g, format, **styling)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(payload)
    except OSError as exc:
        raise SourceIoError(f"cannot write graph to {path}: {exc}") from exc
    return path


def load_graph(path) -> MetaGraph:
    """
    Read a graph JSON document written by export_graph.

    Raises:
        SourceIoError: Missing file or malformed JSON.
    """
    path = Path(path)
    try:
        document = json.loads(path.read_text(encoding="utf-8"))
        nodes = document["nodes"]
        edges = document["edges"]
    except (OSError, json.JSONDecodeError, KeyError, TypeError) as exc:
        raise SourceIoError(f"cannot read graph {path}: {exc}") from exc

    graph = nx.DiGraph()
    meta = {}
    for entry in nodes:
        meta[entry["id"]] = NodeMeta(
            entry["canonical"], entry["module"], entry.get("subprogram"), entry.get("lines", [])
        )
        graph.add_node(entry["id"])
    for u, v in edges:
        if u not in meta or v not in meta:
            raise SourceIoError(f"graph {path} has an edge with an unknown endpoint: {u} -> {v}")
        graph.add_edge(u, v, lines=frozenset())
    traversed = [tuple(edge) for edge in document.get("traversed", [])]
    return MetaGraph(graph, meta, traversed=traversed)

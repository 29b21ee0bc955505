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
    Module: slicer.py

    Backward static slicing over the metagraph. A slice keeps every node that
    lies on some shortest directed path ending at a terminal, where the
    terminals are the nodes whose canonical name is one of the requested
    targets.

    The union over all sources of their shortest paths to a terminal set is
    computed with one multi-source BFS on the reversed graph: a node is kept
    when it has a finite distance to the terminal set. Every such node is
    itself the source of a shortest path, so no per-source enumeration is
    needed.

    Classes:
        SliceRequest: Target canonical names and optional module filter.
        Slice: Induced subgraph with its terminals and path-node union.

    Functions:
        terminal_nodes: Nodes carrying a canonical name, after name mapping.
        shortest_path_union: Distance of every node that reaches a node set.
        backward_slice: Slice a graph for a request.
        induce: Induced-subgraph Slice on a node set.
        paths_to: All shortest paths from one node to another.
        load_name_map: Read an output-name to internal-name JSON map.

    Dependencies:
        - networkx: multi-source BFS and shortest path enumeration

    Authors:
        - discoloc contributors

    Version Info:
        - 15/Oct/2026: Initial version

"""

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional

import networkx as nx

from ..errors import EmptySlice, SourceIoError
from ..utils.log_utils import get_logger
from .metagraph import MetaGraph

logger = get_logger(__name__)


@dataclass(frozen=True)
class SliceRequest:
    """
    Attributes:
        targets (FrozenSet[str]): Canonical names the paths must end on.
        scope_filter (Optional[FrozenSet[str]]): Modules to keep after the union.
    """

    targets: FrozenSet[str]
    scope_filter: Optional[FrozenSet[str]] = None

    def __post_init__(self):
        targets = frozenset(t.lower() for t in self.targets)
        if not targets:
            raise ValueError("A slice request needs at least one target.")
        object.__setattr__(self, "targets", targets)
        if self.scope_filter is not None:
            object.__setattr__(self, "scope_filter", frozenset(m.lower() for m in self.scope_filter))


@dataclass(frozen=True)
class Slice:
    """
    Attributes:
        graph (MetaGraph): Induced subgraph on the kept nodes.
        terminals (FrozenSet[str]): Terminal NodeIds inside the slice.
        paths_nodes (FrozenSet[str]): Union of the shortest-path node sets,
            before the scope filter.
        distance (Dict[str, int]): Hop distance of every path node to the
            nearest terminal.
        targets (FrozenSet[str]): Canonical names the slice was requested for.
    """

    graph: MetaGraph
    terminals: FrozenSet[str] = frozenset()
    paths_nodes: FrozenSet[str] = frozenset()
    distance: Dict[str, int] = field(default_factory=dict)
    targets: FrozenSet[str] = frozenset()

    @property
    def nodes(self) -> FrozenSet[str]:
        return frozenset(self.graph.meta)

    def __len__(self) -> int:
        return len(self.graph)


def terminal_nodes(
    g: MetaGraph, name: str, name_map: Optional[Mapping[str, str]] = None
) -> FrozenSet[str]:
    """
    Nodes whose canonical name is ``name``.

    The name map (output variable name to internal canonical name) is applied
    first. An unknown name gives an empty set and a warning.
    """
    name = name.lower()
    if name_map:
        name = name_map.get(name, name)
    found = g.name_index.get(name, frozenset())
    if not found:
        logger.warning("no node has canonical name '%s'", name)
    return found


def shortest_path_union(g: MetaGraph, terminals: Iterable[str]) -> Dict[str, int]:
    """
    Hop distance to the terminal set for every node lying on a shortest path
    that ends on a terminal. Terminals have distance 0.
    """
    sources = sorted({t for t in terminals if t in g})
    if not sources:
        return {}
    reverse = g.digraph.reverse(copy=False)
    layers = nx.bfs_layers(reverse, sources)
    return {node: depth for depth, layer in enumerate(layers) for node in layer}


def backward_slice(
    g: MetaGraph, req: SliceRequest, name_map: Optional[Mapping[str, str]] = None
) -> Slice:
    """
    Backward slice of ``g`` for the targets of ``req``.

    Args:
        g (MetaGraph): Graph to slice.
        req (SliceRequest): Targets and optional module filter.
        name_map (Optional[Mapping[str, str]]): Output name to canonical name.

    Returns:
        Slice: Induced subgraph on the path-node union (filtered by module).

    Raises:
        EmptySlice: If no target matches a node, or the scope filter removes
            every terminal.
    """
    terminals = frozenset().union(*(terminal_nodes(g, t, name_map) for t in sorted(req.targets)))
    if not terminals:
        raise EmptySlice(f"no node matches any of the targets {sorted(req.targets)}")

    distance = shortest_path_union(g, terminals)
    paths_nodes = frozenset(distance)
    kept = paths_nodes
    if req.scope_filter is not None:
        kept = frozenset(n for n in paths_nodes if g.meta[n].module in req.scope_filter)
    kept_terminals = terminals & kept
    if not kept_terminals:
        raise EmptySlice(f"scope filter {sorted(req.scope_filter)} removes every terminal")

    logger.info(
        "slice for %s: %d terminals, %d of %d nodes",
        sorted(req.targets),
        len(kept_terminals),
        len(kept),
        len(g),
    )
    return Slice(
        graph=g.subgraph(kept),
        terminals=kept_terminals,
        paths_nodes=paths_nodes,
        distance={n: distance[n] for n in kept},
        targets=req.targets,
    )


def induce(g: MetaGraph, nodes: Iterable[str], terminals: Iterable[str] = ()) -> Slice:
    """
    Slice holding the subgraph of ``g`` induced by ``nodes``: every edge of
    ``g`` with both endpoints kept, and no other.
    """
    kept = frozenset(n for n in nodes if n in g)
    return Slice(
        graph=g.subgraph(kept),
        terminals=frozenset(terminals) & kept,
        paths_nodes=kept,
    )


def paths_to(g: MetaGraph, source: str, terminal: str) -> List[List[str]]:
    """All shortest directed paths from ``source`` to ``terminal`` (empty if unreachable)."""
    try:
        return sorted(nx.all_shortest_paths(g.digraph, source, terminal))
    except nx.NetworkXNoPath:
        return []


def load_name_map(path) -> Dict[str, str]:
    """
    Read a JSON object mapping output names to internal canonical names,
    e.g. ``{"flds": "flwds"}``.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SourceIoError(f"cannot read name map {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise SourceIoError(f"name map {path} must be a JSON object")
    return {str(k).lower(): str(v).lower() for k, v in data.items()}

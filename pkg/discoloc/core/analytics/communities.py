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
    Module: communities.py

    Girvan-Newman community detection on the undirected view of a slice.

    One G-N iteration repeatedly removes the edge with the highest edge
    betweenness until the number of connected components strictly increases.
    After each removal betweenness is recomputed only inside the component
    that lost the edge; the other components are unchanged. Ties are broken
    by the lexicographically smallest edge so partitions are reproducible.

    Classes:
        CommunityPartition: Communities, removed edges and all components.
        GirvanNewman: Configurable detector with the usual fit/run interface.

    Functions:
        undirected_view: Weakly connected (undirected) view of a digraph.
        edge_betweenness: Unnormalized edge betweenness.
        girvan_newman: Functional wrapper around GirvanNewman.

    Dependencies:
        - networkx: Brandes edge betweenness and connected components

    Authors:
        - discoloc contributors

    Version Info:
        - 15/Oct/2026: Initial version

"""

from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Tuple

import networkx as nx

from ..errors import EmptyGraph, NoEdges
from ..utils.log_utils import get_logger

logger = get_logger(__name__)

UEdge = Tuple[str, str]

# relative tolerance for treating two betweenness values as tied
_TIE_RTOL = 1e-9


def _key(u, v) -> UEdge:
    return (u, v) if str(u) <= str(v) else (v, u)


def _component_order(component) -> Tuple[int, str]:
    return (-len(component), min(str(n) for n in component))


@dataclass(frozen=True)
class CommunityPartition:
    """
    Attributes:
        communities (List[FrozenSet[str]]): Components with at least
            ``min_size`` nodes, largest first.
        removed_edges (List[UEdge]): Undirected edges in removal order.
        min_size (int): Size threshold used.
        components (List[FrozenSet[str]]): Every component after removal,
            including those below the threshold.
    """

    communities: List[FrozenSet[str]]
    removed_edges: List[UEdge] = field(default_factory=list)
    min_size: int = 3
    components: List[FrozenSet[str]] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        for community in self.communities:
            if len(community) < self.min_size:
                raise ValueError("Every community must reach min_size.")
            if seen & community:
                raise ValueError("Communities must be pairwise disjoint.")
            seen |= community

    @property
    def nodes(self) -> FrozenSet[str]:
        return frozenset().union(*self.communities) if self.communities else frozenset()

    def to_json(self) -> List[List[str]]:
        return [sorted(community) for community in self.communities]


def undirected_view(g) -> nx.Graph:
    """
    Undirected graph with an edge u-v whenever u->v or v->u.

    Accepts a networkx digraph or a MetaGraph; antiparallel edges collapse
    into one.
    """
    g = getattr(g, "digraph", g)
    view = nx.Graph()
    view.add_nodes_from(sorted(g.nodes, key=str))
    view.add_edges_from(sorted((_key(u, v) for u, v in g.edges), key=lambda e: (str(e[0]), str(e[1]))))
    return view


def edge_betweenness(g: nx.Graph) -> Dict[UEdge, float]:
    """
    Edge betweenness of an undirected, unweighted graph: for each edge, the
    number of unordered node pairs' shortest paths through it, each pair
    weighted by the fraction of its shortest paths that use the edge.

    Returns:
        Dict[UEdge, float]: Keyed by the edge with its endpoints in sorted order.
    """
    scores = nx.edge_betweenness_centrality(g, normalized=False)
    return {_key(u, v): float(value) for (u, v), value in scores.items()}


class GirvanNewman:
    """
    Girvan-Newman divisive community detection.

    Args:
        min_size (int): Smallest component reported as a community.
        iterations (int): G-N iterations. Each iteration after the first
            repeats the split inside every component left by the previous one.
        strict (bool): Raise NoEdges on an edgeless graph instead of warning.
    """

    def __init__(self, min_size: int = 3, iterations: int = 1, strict: bool = False) -> None:
        if min_size < 1:
            raise ValueError("min_size must be at least 1")
        if iterations < 1:
            raise ValueError("iterations must be at least 1")
        self.min_size = min_size
        self.iterations = iterations
        self.strict = strict
        self.partition = None

    def get_model_params(self) -> Dict[str, Any]:
        return {"min_size": self.min_size, "iterations": self.iterations}

    @staticmethod
    def split_once(work: nx.Graph) -> List[UEdge]:
        """
        One G-N iteration on ``work`` (modified in place).

        Returns:
            List[UEdge]: Edges removed, in order.
        """
        removed: List[UEdge] = []
        target = nx.number_connected_components(work) + 1
        scores = edge_betweenness(work)
        while scores:
            best = max(scores.values())
            tied = [edge for edge, value in scores.items() if value >= best - _TIE_RTOL * max(1.0, best)]
            u, v = min(tied, key=lambda e: (str(e[0]), str(e[1])))
            work.remove_edge(u, v)
            removed.append((u, v))
            del scores[(u, v)]
            if nx.number_connected_components(work) >= target:
                break
            component = nx.node_connected_component(work, u)
            for edge in [e for e in scores if e[0] in component]:
                del scores[edge]
            scores.update(edge_betweenness(work.subgraph(component)))
        return removed

    def fit(self, g) -> CommunityPartition:
        g = getattr(g, "digraph", g)
        if g.number_of_nodes() == 0:
            raise EmptyGraph("community detection on an empty graph")
        work = undirected_view(g) if g.is_directed() else nx.Graph(g)
        work.remove_edges_from(list(nx.selfloop_edges(work)))

        removed: List[UEdge] = []
        if work.number_of_edges() == 0:
            partition = self._partition(work, removed)
            logger.warning("graph has no edges; every node is its own component")
            if self.strict:
                raise NoEdges("Girvan-Newman needs at least one edge", partition)
            self.partition = partition
            return partition

        removed.extend(self.split_once(work))
        for _ in range(1, self.iterations):
            components = sorted(nx.connected_components(work), key=_component_order)
            for component in components:
                piece = work.subgraph(component).copy()
                if piece.number_of_edges() == 0:
                    continue
                cut = self.split_once(piece)
                work.remove_edges_from(cut)
                removed.extend(cut)

        partition = self._partition(work, removed)
        logger.debug(
            "G-N removed %d edges, %d communities of size >= %d",
            len(removed),
            len(partition.communities),
            self.min_size,
        )
        self.partition = partition
        return partition

    def _partition(self, work: nx.Graph, removed: List[UEdge]) -> CommunityPartition:
        components = sorted((frozenset(c) for c in nx.connected_components(work)), key=_component_order)
        return CommunityPartition(
            communities=[c for c in components if len(c) >= self.min_size],
            removed_edges=removed,
            min_size=self.min_size,
            components=components,
        )

    def run(self, g) -> Dict[str, Any]:
        partition = self.fit(g)
        return {
            "params": self.get_model_params(),
            "communities": partition.to_json(),
            "removed_edges": [list(e) for e in partition.removed_edges],
        }


def girvan_newman(g, min_size: int = 3, iterations: int = 1, strict: bool = False) -> CommunityPartition:
    """
    Girvan-Newman communities of ``g`` (directed graphs use their undirected view).

    Args:
        g: networkx graph or MetaGraph.
        min_size (int): Smallest component reported as a community.
        iterations (int): Number of G-N iterations.
        strict (bool): Raise NoEdges on an edgeless graph.

    Returns:
        CommunityPartition: Communities and removed edges.

    Raises:
        EmptyGraph: ``g`` has no nodes.
        NoEdges: ``g`` has no edges and ``strict`` is set.
    """
    return GirvanNewman(min_size, iterations, strict).fit(g)

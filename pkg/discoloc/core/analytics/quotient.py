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
    Module: quotient.py

    Module quotient graph (graph minor): every variable node is replaced by
    its module, edges inside a module are deleted and parallel edges between
    two modules collapse into one. Centrality on the quotient ranks modules.

    Classes:
        QuotientGraph: Module nodes, module edges and the node-to-module map.

    Functions:
        quotient_by_module: Build the quotient of a MetaGraph.

    Dependencies:
        - networkx: quotient digraph container

    Authors:
        - discoloc contributors

    Version Info:
        - 15/Oct/2026: Initial version

"""

from dataclasses import dataclass, field
from typing import Dict, Tuple

import networkx as nx


@dataclass(frozen=True)
class QuotientGraph:
    """
    Attributes:
        nodes (Tuple[str, ...]): Module names, sorted.
        edges (Tuple[Tuple[str, str], ...]): Module pairs (M1, M2) with M1 != M2, sorted.
        class_map (Dict[str, str]): Variable NodeId to module.
    """

    nodes: Tuple[str, ...]
    edges: Tuple[Tuple[str, str], ...] = ()
    class_map: Dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if any(u == v for u, v in self.edges):
            raise ValueError("A quotient graph has no self-loops.")

    @property
    def digraph(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(self.nodes)
        graph.add_edges_from(self.edges)
        return graph

    @property
    def is_edgeless(self) -> bool:
        return not self.edges


def quotient_by_module(g) -> QuotientGraph:
    """
    Quotient of a MetaGraph by the "same module" relation.

    An edge M1 -> M2 exists exactly when some variable edge u -> v has
    module(u) = M1 != M2 = module(v).
    """
    class_map = {node: info.module for node, info in g.meta.items()}
    edges = {
        (class_map[u], class_map[v])
        for u, v in g.digraph.edges
        if class_map[u] != class_map[v]
    }
    return QuotientGraph(
        nodes=tuple(sorted(set(class_map.values()))),
        edges=tuple(sorted(edges)),
        class_map=class_map,
    )

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
    Module: sampling.py

    Simulated instrumentation. With the bug locations known, a sampled node
    would show a different value exactly when some bug reaches it along a
    directed path of the full metagraph. Bug nodes reach themselves.

    Authors:
        - discoloc contributors

    Version Info:
        - 16/Oct/2026: Initial version

"""

from typing import FrozenSet, Iterable

import networkx as nx

from ..graph.metagraph import MetaGraph
from .config import BugSpec


def reachable_from(g: MetaGraph, sources: Iterable[str]) -> FrozenSet[str]:
    """Nodes reachable from ``sources`` by forward BFS, sources included."""
    sources = sorted({s for s in sources if s in g})
    if not sources:
        return frozenset()
    return frozenset(node for layer in nx.bfs_layers(g.digraph, sources) for node in layer)


def simulate_sampling(candidates: Iterable[str], bugs: BugSpec, g: MetaGraph) -> FrozenSet[str]:
    """
    Candidates that would differ from the accepted runs.

    Args:
        candidates (Iterable[str]): Instrumented NodeIds, all in ``g``.
        bugs (BugSpec): Bug locations.
        g (MetaGraph): The full metagraph, not the current slice.

    Returns:
        FrozenSet[str]: Candidates reached from some bug.
    """
    candidates = frozenset(candidates)
    unknown = sorted(c for c in candidates if c not in g)
    if unknown:
        raise ValueError(f"candidates not in the graph: {unknown[:5]}")
    return candidates & reachable_from(g, bugs.bug_nodes)

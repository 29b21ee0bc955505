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
    Module: test_communities.py

    Tests for Girvan-Newman community detection on the undirected view of
    a slice, with a brute-force edge betweenness oracle.

    Authors:
        - discoloc contributors

    Version Info:
        - 17/Oct/2026: Initial version
"""

from collections import defaultdict
from itertools import combinations

import networkx as nx
import pytest

from discoloc.core.analytics.communities import (
    CommunityPartition,
    GirvanNewman,
    edge_betweenness,
    girvan_newman,
    undirected_view,
)
from discoloc.core.errors import EmptyGraph, NoEdges
from discoloc.core.synthetic.generators import barbell_graph, preferential_attachment_digraph


def _brute_force_betweenness(graph):
    totals = defaultdict(float)
    for s, t in combinations(sorted(graph.nodes, key=str), 2):
        if not nx.has_path(graph, s, t):
            continue
        paths = list(nx.all_shortest_paths(graph, s, t))
        for path in paths:
            for u, v in zip(path, path[1:]):
                key = (u, v) if str(u) <= str(v) else (v, u)
                totals[key] += 1.0 / len(paths)
    return totals


def test_barbell_splits_at_the_bridge():
    partition = girvan_newman(barbell_graph(5))
    assert partition.removed_edges == [("n4__bar", "n5__bar")]
    assert [len(c) for c in partition.communities] == [5, 5]
    assert partition.communities[0] == frozenset(f"n{i}__bar" for i in range(5))
    assert partition.nodes == frozenset(barbell_graph(5).nodes)


def test_edge_betweenness_matches_brute_force():
    graph = undirected_view(preferential_attachment_digraph(n=30, m=2, seed=4))
    expected = _brute_force_betweenness(graph)
    actual = edge_betweenness(graph)
    assert set(actual) == set(expected)
    for edge, value in expected.items():
        assert actual[edge] == pytest.approx(value)


@pytest.mark.parametrize("seed", range(500))
def test_edge_betweenness_matches_brute_force_on_small_graphs(seed):
    n = 3 + seed % 8
    digraph = nx.gnp_random_graph(n, 0.15 + 0.1 * (seed % 5), seed=seed, directed=True)
    graph = undirected_view(nx.relabel_nodes(digraph, {v: f"v{v}" for v in digraph.nodes}))
    expected = _brute_force_betweenness(graph)
    actual = edge_betweenness(graph)
    assert set(actual) == {tuple(sorted(edge)) for edge in graph.edges}
    for edge, value in actual.items():
        assert value == pytest.approx(expected.get(edge, 0.0))


def test_undirected_view_collapses_antiparallel_edges():
    view = undirected_view(nx.DiGraph([("b", "a"), ("a", "b"), ("b", "c")]))
    assert sorted(view.edges) == [("a", "b"), ("b", "c")]


def test_edgeless_graph(caplog):
    graph = nx.DiGraph()
    graph.add_nodes_from(["a", "b", "c"])
    partition = girvan_newman(graph)
    assert partition.communities == []
    assert len(partition.components) == 3
    assert "no edges" in caplog.text

    with pytest.raises(NoEdges) as info:
        girvan_newman(graph, strict=True)
    assert len(info.value.partition.components) == 3

    with pytest.raises(EmptyGraph):
        girvan_newman(nx.DiGraph())


def test_small_components_are_not_communities():
    partition = girvan_newman(nx.DiGraph([("a", "b"), ("b", "c")]))
    # both edges tie, the lexicographically smallest goes first
    assert partition.removed_edges == [("a", "b")]
    assert partition.communities == []
    assert [len(c) for c in partition.components] == [2, 1]

    relaxed = girvan_newman(nx.DiGraph([("a", "b"), ("b", "c")]), min_size=2)
    assert relaxed.communities == [frozenset({"b", "c"})]


def test_second_iteration_splits_each_component():
    partition = GirvanNewman(iterations=2).fit(barbell_graph(5))
    assert len(partition.components) >= 4
    assert partition.removed_edges[0] == ("n4__bar", "n5__bar")


def test_partition_is_deterministic():
    graph = preferential_attachment_digraph(n=60, m=2, seed=11)
    first = GirvanNewman().run(graph)
    second = GirvanNewman().run(graph)
    assert first == second
    assert first["params"] == {"min_size": 3, "iterations": 1}


def test_partition_validation():
    with pytest.raises(ValueError):
        CommunityPartition([frozenset({"a", "b"})], min_size=3)
    with pytest.raises(ValueError):
        CommunityPartition([frozenset({"a", "b", "c"}), frozenset({"c", "d", "e"})])
    with pytest.raises(ValueError):
        GirvanNewman(min_size=0)

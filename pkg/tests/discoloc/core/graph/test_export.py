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

import json

import pytest

from discoloc.core.errors import SourceIoError
from discoloc.core.graph.export import (
    PRESENTATION_THRESHOLD,
    community_colors,
    export_graph,
    load_graph,
    write_graph,
)
from discoloc.core.graph.metagraph import MetaGraph

EDGES = [
    ("b__m", "c__m"),
    ("a__m", "b__m"),
    ("c__m", "d__m"),
    ("x__m", "y__m"),
]


@pytest.fixture
def graph():
    return MetaGraph.from_edges(EDGES)


def test_json_document(graph):
    document = json.loads(export_graph(graph, "json"))
    assert [node["id"] for node in document["nodes"]] == graph.nodes
    assert document["edges"] == [list(e) for e in sorted(EDGES)]
    assert document["nodes"][0] == {
        "id": "a__m",
        "canonical": "a",
        "module": "m",
        "subprogram": None,
        "lines": [],
    }


def test_dot_is_sorted_and_deterministic(graph):
    text = export_graph(graph, "dot").decode()
    assert text.startswith("digraph metagraph {\n")
    assert text.rstrip().endswith("}")
    edge_lines = [line.strip() for line in text.splitlines() if "->" in line]
    assert edge_lines == [f"{u} -> {v};" for u, v in sorted(EDGES)]
    assert export_graph(MetaGraph.from_edges(list(reversed(EDGES))), "dot").decode() == text


def test_presentation_drops_small_clusters(graph):
    text = export_graph(graph, "dot", presentation_threshold=PRESENTATION_THRESHOLD).decode()
    assert "a__m ->" in text
    assert "x__m" not in text


def test_community_styling(graph):
    colors = community_colors(2)
    text = export_graph(
        graph, "dot", communities=[["a__m", "b__m"], ["x__m", "y__m"]], highlight={"b__m": 1.0}
    ).decode()
    assert f'fillcolor="{colors[0]}"' in text
    assert f'fillcolor="{colors[1]}"' in text
    assert "width=3.000" in text
    assert len(set(community_colors(25))) == 20


def test_write_and_load(tmp_path, graph):
    path = write_graph(graph, tmp_path / "out" / "graph.json")
    loaded = load_graph(path)
    assert loaded.nodes == graph.nodes
    assert loaded.edges == graph.edges
    assert loaded.meta["a__m"].module == "m"

    dot = write_graph(graph, tmp_path / "graph.dot")
    assert dot.read_text().startswith("digraph")


def test_format_and_io_errors(tmp_path, graph):
    with pytest.raises(ValueError):
        export_graph(graph, "graphml")
    with pytest.raises(SourceIoError):
        load_graph(tmp_path / "missing.json")
    (tmp_path / "bad.json").write_text(json.dumps({"nodes": [], "edges": [["a", "b"]]}))
    with pytest.raises(SourceIoError):
        load_graph(tmp_path / "bad.json")


def test_traversed_edges_survive_a_round_trip(tmp_path, graph):
    marked = graph.with_traversed([("a__m", "b__m")])
    assert json.loads(export_graph(graph, "json"))["traversed"] == []
    loaded = load_graph(write_graph(marked, tmp_path / "marked.json"))
    assert loaded.traversed == frozenset({("a__m", "b__m")})

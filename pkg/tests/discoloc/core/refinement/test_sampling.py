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

import pytest

from discoloc.core.graph.metagraph import MetaGraph
from discoloc.core.refinement.config import BugSpec
from discoloc.core.refinement.sampling import reachable_from, simulate_sampling


@pytest.fixture
def graph():
    # bug -> a -> b, c isolated from the bug, d -> bug
    return MetaGraph.from_edges(
        [("bug__m", "a__m"), ("a__m", "b__m"), ("c__m", "b__m"), ("d__m", "bug__m")]
    )


def test_reachable_includes_sources(graph):
    assert reachable_from(graph, ["bug__m"]) == frozenset({"bug__m", "a__m", "b__m"})
    assert reachable_from(graph, ["ghost__m"]) == frozenset()


def test_only_downstream_samples_differ(graph):
    bugs = BugSpec.of(["bug__m"])
    differing = simulate_sampling(["b__m", "c__m", "d__m", "bug__m"], bugs, graph)
    assert differing == frozenset({"b__m", "bug__m"})
    assert simulate_sampling([], bugs, graph) == frozenset()


def test_reachability_uses_the_full_graph(graph):
    # a sample in a slice without the bug still differs through the full graph
    part = graph.subgraph(["b__m", "c__m"])
    assert "bug__m" not in part
    assert simulate_sampling(part.nodes, BugSpec.of(["bug__m"]), graph) == frozenset({"b__m"})


def test_unknown_candidates_are_rejected(graph):
    with pytest.raises(ValueError):
        simulate_sampling(["nowhere__m"], BugSpec.of(["bug__m"]), graph)

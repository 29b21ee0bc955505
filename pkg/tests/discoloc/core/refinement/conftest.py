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
    Hand-built graphs for the refinement tests. Every fixture returns the
    full metagraph; the tests refine a slice covering all of it.
"""

import pytest

from discoloc.core.graph.metagraph import MetaGraph
from discoloc.core.synthetic.generators import barbell_graph


def _chain(prefix, length):
    return [(f"{prefix}{i}", f"{prefix}{i + 1}") for i in range(1, length)]


def _tournament(names):
    return [(u, v) for i, u in enumerate(names) for v in names[i + 1 :]]


def _module(edges):
    return MetaGraph.from_edges([(f"{u}__m", f"{v}__m") for u, v in edges])


@pytest.fixture
def unreachable_first():
    # the first samples sit downstream of p and y but not of the z cluster
    edges = _chain("p", 8) + [("p1", "p3"), ("p3", "p5"), ("p5", "p7")]
    edges += [("p2", "p4"), ("p4", "p6"), ("p6", "p8"), ("p8", "y1")]
    edges += _chain("y", 8) + [("y1", "y3")]
    edges += [("z1", "z2"), ("z2", "z3"), ("z1", "z3"), ("z3", "z4"), ("y1", "z2")]
    return _module(edges)


@pytest.fixture
def two_cliques():
    # K5 on n0..n4 and K7 on n5..n11, edges low to high, joined by n5 -> n4
    small = _tournament([f"n{i}" for i in range(5)])
    large = _tournament([f"n{i}" for i in range(5, 12)])
    return _module(small + large + [("n5", "n4")])


@pytest.fixture
def barbell():
    return barbell_graph(5)


@pytest.fixture
def barbell_with_isolated_bug():
    bar = barbell_graph(5)
    return MetaGraph.from_edges(bar.edges + [("w__bar", "bug__bar")])


@pytest.fixture
def sink_cluster():
    # the bug is the sink of a 14-node tournament, next to an unrelated barbell
    tournament = [(f"{u}__m", f"{v}__m") for u, v in _tournament([f"t{i}" for i in range(14)])]
    return MetaGraph.from_edges(tournament + barbell_graph(5).edges)

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
    Module: test_engine.py

    Tests for the refinement loop on hand-built graphs whose outcome can be
    traced step by step: both contraction branches, every terminal status
    and the report written at the end.

    Authors:
        - discoloc contributors

    Version Info:
        - 17/Oct/2026: Initial version
"""

import json

import pytest

from discoloc.core.analytics.communities import CommunityPartition
from discoloc.core.errors import EmptySlice
from discoloc.core.graph.metagraph import MetaGraph
from discoloc.core.graph.slicer import induce
from discoloc.core.refinement.config import BugSpec, RefinementConfig
from discoloc.core.refinement.engine import (
    BRANCH_DISCARD,
    BRANCH_RETAIN,
    RefinementState,
    Status,
    contract,
    history_rows,
    refine_step,
    run_refinement,
    sample_communities,
)


def _refine(g, bug, **settings):
    return run_refinement(induce(g, g.nodes), RefinementConfig(**settings), BugSpec.of([bug]), g)


def test_contract_branches():
    g = MetaGraph.from_edges([("a__m", "b__m"), ("b__m", "c__m"), ("d__m", "c__m")], nodes=["e__m"])
    branch, kept = contract(g, frozenset({"b__m"}), frozenset())
    assert branch == BRANCH_DISCARD
    assert kept == frozenset({"c__m", "d__m", "e__m"})

    branch, kept = contract(g, frozenset({"b__m", "c__m"}), frozenset({"c__m"}))
    assert branch == BRANCH_RETAIN
    assert kept == frozenset({"a__m", "b__m", "c__m", "d__m"})


def test_retain_branch_shrinks_to_the_bug_clique(two_cliques):
    report = _refine(two_cliques, "n6__m", m=3)
    (record,) = report.state.history
    assert record.community_sizes == [7, 5]
    assert record.sampled == ("n10__m", "n11__m", "n2__m", "n3__m", "n4__m", "n9__m")
    assert record.differing == ("n10__m", "n11__m", "n9__m")
    assert record.branch == BRANCH_RETAIN
    assert (record.nodes_before, record.nodes_after) == (12, 7)
    assert report.status is Status.CONVERGED_SMALL
    assert set(report.candidates) == {f"n{i}__m" for i in range(5, 12)}
    assert history_rows(report.state.history) == [[1, 2, 6, 3, "8b", 12, 7, "converged_small"]]


def test_discard_branch_then_bug_sampled(unreachable_first):
    report = _refine(unreachable_first, "z1__m", m=3, stop_size=3)
    first, second = report.state.history
    assert first.community_sizes == [12, 8]
    assert first.branch == BRANCH_DISCARD
    assert first.differing == ()
    assert first.nodes_after == 4
    assert first.status is Status.RUNNING

    assert second.communities == (("z1__m", "z2__m", "z3__m"),)
    assert second.status is Status.BUG_INSTRUMENTED
    assert report.status is Status.BUG_INSTRUMENTED
    assert report.state.iteration == 2
    assert report.candidates == ["z1__m", "z2__m", "z3__m"]


def test_stalled_when_every_node_is_kept(barbell):
    report = _refine(barbell, "n0__bar", m=2, stop_size=3)
    (record,) = report.state.history
    assert record.branch == BRANCH_RETAIN
    assert record.nodes_after == 10
    assert report.status is Status.STALLED
    assert len(report.candidates) == 10


def test_isolated_bug_exhausts_communities(barbell_with_isolated_bug):
    report = _refine(barbell_with_isolated_bug, "bug__bar", m=2, stop_size=1)
    first, second = report.state.history
    assert first.branch == BRANCH_DISCARD
    assert first.status is Status.RUNNING
    assert second.branch is None
    assert second.communities == ()
    assert report.status is Status.DISCONNECTED_EXHAUSTED
    # the graph is left as it was
    assert report.candidates == ["bug__bar", "w__bar"]


def test_bug_at_the_sink_is_sampled_first(sink_cluster):
    report = _refine(sink_cluster, "t13__m")
    (record,) = report.state.history
    assert "t13__m" in record.sampled
    assert record.differing == ("t13__m",)
    assert report.status is Status.BUG_INSTRUMENTED
    assert len(report.candidates) == 14


def test_iteration_cap_leaves_the_loop_running(unreachable_first, caplog):
    report = _refine(unreachable_first, "z1__m", m=3, stop_size=3, max_iterations=1)
    assert report.status is Status.RUNNING
    assert report.state.iteration == 1
    assert "iteration cap" in caplog.text


def test_report_and_iteration_files(unreachable_first, tmp_path):
    g = unreachable_first
    report = run_refinement(
        induce(g, g.nodes),
        RefinementConfig(m=3, stop_size=3),
        BugSpec.of(["z1__m"]),
        g,
        dot_dir=tmp_path,
    )
    assert [p.name for p in report.dot_files] == ["iter_1.dot", "iter_2.dot"]
    assert (tmp_path / "iter_1.dot").read_text().startswith("digraph")

    document = json.loads(report.write(tmp_path / "report.json").read_text())
    assert document["status"] == "bug_instrumented"
    assert document["iterations"] == 2
    assert document["bug_nodes"] == ["z1__m"]
    assert [entry["branch"] for entry in document["history"]] == ["8a", "8b"]
    assert document["config"]["m"] == 3


def test_refinement_is_deterministic(two_cliques, unreachable_first):
    for g, bug in ((two_cliques, "n6__m"), (unreachable_first, "z1__m")):
        first = _refine(g, bug, m=3, stop_size=3).to_dict()
        second = _refine(g, bug, m=3, stop_size=3).to_dict()
        assert first == second


def test_invalid_starts(barbell):
    with pytest.raises(EmptySlice):
        run_refinement(induce(barbell, []), RefinementConfig(), BugSpec.of(["n0__bar"]), barbell)
    with pytest.raises(ValueError):
        _refine(barbell, "ghost__bar")

    done = RefinementState(1, induce(barbell, barbell.nodes), status=Status.STALLED)
    with pytest.raises(ValueError):
        refine_step(done, RefinementConfig(), BugSpec.of(["n0__bar"]), barbell)


def test_empty_partition_samples_nothing(barbell):
    assert sample_communities(barbell, CommunityPartition([]), RefinementConfig()) == (frozenset(), {})


def test_state_rejects_unsampled_differences(barbell):
    with pytest.raises(ValueError):
        RefinementState(
            0,
            induce(barbell, barbell.nodes),
            sampled=frozenset(),
            differing=frozenset({"n0__bar"}),
        )

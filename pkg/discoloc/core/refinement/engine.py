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
    Module: engine.py

    Iterative search-space refinement. Each step

        1. splits the current subgraph into Girvan-Newman communities,
        2. samples the ``m`` most in-central nodes of every community,
        3. simulates which samples differ, by reachability from the bugs,
        4. contracts the subgraph:
           - no sample differs ("8a"): drop every node that lies on a
             shortest path ending at a sample,
           - some samples differ ("8b"): keep only the nodes on shortest
             paths ending at a differing sample.

    The loop stops when a bug is sampled, the subgraph is small enough,
    contraction stalls, no community is left, or the iteration cap is hit.

    Classes:
        Status: Terminal and running states.
        IterationRecord: What one step saw and did.
        RefinementState: Immutable loop state.
        RefinementReport: Final state with its JSON rendering.

    Functions:
        sample_communities: Top-m in-central nodes per community.
        contract: Next node set for a sampling outcome.
        refine_step: One refinement iteration.
        run_refinement: Iterate to a terminal status.

    Dependencies:
        - networkx (through the analytics and graph packages)
        - tqdm: iteration progress
        - concurrent.futures: per-community centrality in parallel

    Key Features:
        - Deterministic: community order, centrality ties and contraction
          are all ordered by NodeId
        - Reachability for sampling uses the full metagraph
        - Optional per-iteration DOT files ``iter_<k>.dot``

    Authors:
        - discoloc contributors

    Version Info:
        - 16/Oct/2026: Initial version

"""

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

from tqdm import tqdm

from ..analytics.centrality import EigenvectorCentrality
from ..analytics.communities import CommunityPartition, GirvanNewman
from ..errors import EmptySlice, SourceIoError
from ..graph.export import write_graph
from ..graph.metagraph import MetaGraph
from ..graph.slicer import Slice, induce, shortest_path_union
from ..utils.log_utils import get_logger
from .config import BugSpec, RefinementConfig
from .sampling import simulate_sampling

logger = get_logger(__name__)

BRANCH_DISCARD = "8a"
BRANCH_RETAIN = "8b"


class Status(str, Enum):
    RUNNING = "running"
    CONVERGED_SMALL = "converged_small"
    BUG_INSTRUMENTED = "bug_instrumented"
    STALLED = "stalled"
    DISCONNECTED_EXHAUSTED = "disconnected_exhausted"


@dataclass(frozen=True)
class IterationRecord:
    iteration: int
    communities: Tuple[Tuple[str, ...], ...]
    sampled: Tuple[str, ...]
    differing: Tuple[str, ...]
    branch: Optional[str]
    nodes_before: int
    nodes_after: int
    status: Status
    centrality: Dict[str, float] = field(default_factory=dict)

    @property
    def community_sizes(self) -> List[int]:
        return [len(c) for c in self.communities]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "iteration": self.iteration,
            "communities": [list(c) for c in self.communities],
            "community_sizes": self.community_sizes,
            "sampled": list(self.sampled),
            "differing": list(self.differing),
            "branch": self.branch,
            "nodes_before": self.nodes_before,
            "nodes_after": self.nodes_after,
            "status": self.status.value,
        }


@dataclass(frozen=True)
class RefinementState:
    """
    Attributes:
        iteration (int): Steps taken so far.
        current (Slice): Current search space.
        sampled (FrozenSet[str]): Nodes sampled in the last step.
        differing (FrozenSet[str]): Sampled nodes that differed, a subset of ``sampled``.
        history (Tuple[IterationRecord, ...]): One record per step.
        status (Status): Loop status.
    """

    iteration: int
    current: Slice
    sampled: FrozenSet[str] = frozenset()
    differing: FrozenSet[str] = frozenset()
    history: Tuple[IterationRecord, ...] = ()
    status: Status = Status.RUNNING

    def __post_init__(self):
        if not self.differing <= self.sampled:
            raise ValueError("Differing nodes must be sampled nodes.")

    @classmethod
    def initial(cls, current: Slice) -> "RefinementState":
        return cls(0, current)

    @property
    def candidates(self) -> List[str]:
        return self.current.graph.nodes


def _community_sample(
    g: MetaGraph, community: FrozenSet[str], cfg: RefinementConfig
) -> Tuple[List[str], Dict[str, float]]:
    # centrality on the community's own directed induced subgraph
    ranking = EigenvectorCentrality("in", cfg.tol, cfg.max_iter).fit(g.subgraph(community))
    top = ranking.top(cfg.m)
    return top, {node: ranking.scores[node] for node in top}


def sample_communities(
    g: MetaGraph, partition: CommunityPartition, cfg: RefinementConfig, max_workers: Optional[int] = None
) -> Tuple[FrozenSet[str], Dict[str, float]]:
    """
    Union of the top-``cfg.m`` in-central nodes of every community.

    Returns:
        Tuple[FrozenSet[str], Dict[str, float]]: Sampled nodes and their
        community-local scores.
    """
    if not partition.communities:
        return frozenset(), {}
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        results = list(executor.map(lambda c: _community_sample(g, c, cfg), partition.communities))
    sampled = frozenset(node for top, _ in results for node in top)
    scores = {node: score for _, ranked in results for node, score in ranked.items()}
    return sampled, scores


def contract(
    g: MetaGraph, sampled: FrozenSet[str], differing: FrozenSet[str]
) -> Tuple[str, FrozenSet[str]]:
    """
    Node set kept after a sampling outcome, with the branch taken.

    Shortest paths are taken inside ``g``; a node lies on a shortest path
    ending at a set exactly when it reaches the set.
    """
    if differing:
        return BRANCH_RETAIN, frozenset(shortest_path_union(g, differing))
    return BRANCH_DISCARD, frozenset(g.meta) - frozenset(shortest_path_union(g, sampled))


def refine_step(
    state: RefinementState,
    cfg: RefinementConfig,
    bugs: BugSpec,
    g: MetaGraph,
    max_workers: Optional[int] = None,
) -> RefinementState:
    """
    One refinement iteration.

    Args:
        state (RefinementState): Running state.
        cfg (RefinementConfig): Loop parameters.
        bugs (BugSpec): Known bug locations.
        g (MetaGraph): Full metagraph used for sampling reachability.
        max_workers (Optional[int]): Threads for per-community centrality.

    Returns:
        RefinementState: Next state; every terminal condition is a status.
    """
    if state.status is not Status.RUNNING:
        raise ValueError(f"refine_step needs a running state, got {state.status.value}")

    iteration = state.iteration + 1
    current = state.current.graph
    before = len(current)

    partition = GirvanNewman(cfg.min_community, cfg.gn_iterations).fit(current) if before else None
    communities = tuple(tuple(sorted(c)) for c in partition.communities) if partition else ()

    if not communities:
        logger.info("iteration %d: no community of at least %d nodes", iteration, cfg.min_community)
        record = IterationRecord(
            iteration, (), (), (), None, before, before, Status.DISCONNECTED_EXHAUSTED
        )
        return replace(
            state,
            iteration=iteration,
            sampled=frozenset(),
            differing=frozenset(),
            history=state.history + (record,),
            status=Status.DISCONNECTED_EXHAUSTED,
        )

    sampled, scores = sample_communities(current, partition, cfg, max_workers)
    differing = simulate_sampling(sampled, bugs, g)
    branch, kept = contract(current, sampled, differing)
    _log_dropped_bugs(current, bugs, kept)

    if sampled & bugs.bug_nodes:
        status = Status.BUG_INSTRUMENTED
    elif not kept:
        status = Status.DISCONNECTED_EXHAUSTED
    elif len(kept) <= cfg.stop_size:
        status = Status.CONVERGED_SMALL
    elif kept == frozenset(current.meta):
        status = Status.STALLED
    else:
        status = Status.RUNNING

    logger.info(
        "iteration %d: %d communities, %d sampled, %d differing, branch %s, %d -> %d nodes (%s)",
        iteration,
        len(communities),
        len(sampled),
        len(differing),
        branch,
        before,
        len(kept),
        status.value,
    )
    record = IterationRecord(
        iteration,
        communities,
        tuple(sorted(sampled)),
        tuple(sorted(differing)),
        branch,
        before,
        len(kept),
        status,
        scores,
    )
    return RefinementState(
        iteration=iteration,
        current=induce(current, kept, state.current.terminals),
        sampled=sampled,
        differing=differing,
        history=state.history + (record,),
        status=status,
    )


def _log_dropped_bugs(current: MetaGraph, bugs: BugSpec, kept: FrozenSet[str]) -> None:
    # bugs inside the subgraph reach differing nodes only by paths that leave it
    dropped = sorted((bugs.bug_nodes & frozenset(current.meta)) - kept)
    if dropped:
        logger.info("bug nodes %s dropped by contraction", dropped)


@dataclass(frozen=True)
class RefinementReport:
    """
    Attributes:
        state (RefinementState): Final loop state.
        config (RefinementConfig): Parameters used.
        bugs (BugSpec): Bug locations used for sampling.
        dot_files (Tuple[Path, ...]): Per-iteration DOT files written.
    """

    state: RefinementState
    config: RefinementConfig
    bugs: BugSpec
    dot_files: Tuple[Path, ...] = ()

    @property
    def status(self) -> Status:
        return self.state.status

    @property
    def candidates(self) -> List[str]:
        return self.state.candidates

    def to_dict(self) -> Dict[str, Any]:
        return {
            "status": self.status.value,
            "iterations": self.state.iteration,
            "config": self.config.to_dict(),
            "bug_nodes": sorted(self.bugs.bug_nodes),
            "candidates": self.candidates,
            "history": [record.to_dict() for record in self.state.history],
            "dot_files": [p.name for p in self.dot_files],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def write(self, path) -> Path:
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            path.write_text(self.to_json(), encoding="utf-8")
        except OSError as exc:
            raise SourceIoError(f"cannot write report to {path}: {exc}") from exc
        return path


def _iteration_dot(before: MetaGraph, record: IterationRecord, directory: Path) -> Path:
    return write_graph(
        before,
        directory / f"iter_{record.iteration}.dot",
        format="dot",
        communities=[list(c) for c in record.communities],
        highlight=record.centrality,
    )


def run_refinement(
    current: Slice,
    cfg: RefinementConfig,
    bugs: BugSpec,
    g: MetaGraph,
    dot_dir=None,
    progress: bool = False,
    max_workers: Optional[int] = None,
) -> RefinementReport:
    """
    Refine ``current`` until a terminal status or ``cfg.max_iterations``.

    Args:
        current (Slice): Starting search space, usually a backward slice.
        cfg (RefinementConfig): Loop parameters.
        bugs (BugSpec): Bug locations, validated against ``g``.
        g (MetaGraph): Full metagraph.
        dot_dir: Directory for ``iter_<k>.dot`` files, none written if None.
        progress (bool): Show a tqdm progress bar.
        max_workers (Optional[int]): Threads for per-community centrality.

    Returns:
        RefinementReport: Final state and history. The status stays
        ``running`` when the iteration cap is reached first.

    Raises:
        EmptySlice: The starting slice has no nodes.
    """
    if len(current) == 0:
        raise EmptySlice("refinement needs a nonempty slice")
    bugs.validate(g)

    state = RefinementState.initial(current)
    dot_files: List[Path] = []
    directory = Path(dot_dir) if dot_dir is not None else None

    for _ in tqdm(range(cfg.max_iterations), desc="Refining", disable=not progress):
        before = state.current.graph
        state = refine_step(state, cfg, bugs, g, max_workers)
        if directory is not None:
            dot_files.append(_iteration_dot(before, state.history[-1], directory))
        if state.status is not Status.RUNNING:
            break
    else:
        logger.warning("refinement stopped at the iteration cap (%d)", cfg.max_iterations)

    logger.info(
        "refinement finished: %s after %d iterations, %d candidates",
        state.status.value,
        state.iteration,
        len(state.current),
    )
    return RefinementReport(state, cfg, bugs, tuple(dot_files))


def history_rows(history: Sequence[IterationRecord]) -> List[List[Any]]:
    """Rows for a console table of the refinement history."""
    return [
        [
            r.iteration,
            len(r.communities),
            len(r.sampled),
            len(r.differing),
            r.branch or "-",
            r.nodes_before,
            r.nodes_after,
            r.status.value,
        ]
        for r in history
    ]

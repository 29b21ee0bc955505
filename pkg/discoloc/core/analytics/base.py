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
    Module: base.py

    This module provides the abstract base class for the centrality measures
    of discoloc together with the ranking record they produce.

    Shared functionality:
        - Graph preparation (node order, empty-graph checks)
        - Shifted power iteration with an infinity-norm stopping rule
        - Closed-form limit of that iteration for nilpotent (acyclic) matrices
        - Deterministic ordering of scores

    Classes:
        CentralityRanking: Scores, ordering and convergence record.
        Centrality: Abstract base class for centrality measures.

    Dependencies:
        - numpy, scipy.sparse, networkx

    Key Features:
        - Consistent interface: subclasses implement ``fit`` and ``get_model_params``
        - Non-convergence is a flag on the ranking; ``strict`` turns it into NotConverged

    Authors:
        - discoloc contributors

    Version Info:
        - 15/Oct/2026: Initial version

"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import networkx as nx
import numpy as np
from scipy import sparse

from ..errors import EmptyGraph, NotConverged
from ..utils.log_utils import get_logger

logger = get_logger(__name__)

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITER = 1000

# scores closer than this are treated as ties and broken by node id
TIE_DECIMALS = 12


def rank_order(scores: Dict[str, float]) -> List[str]:
    """Nodes by descending score, ties broken lexicographically by node id."""
    return sorted(scores, key=lambda n: (-round(scores[n], TIE_DECIMALS), str(n)))


@dataclass(frozen=True)
class CentralityRanking:
    """
    Attributes:
        scores (Dict[str, float]): Node to score, unit 2-norm.
        ordering (List[str]): Nodes sorted by descending score.
        method (str): eigen_in | eigen_out | nonbacktracking_in | nonbacktracking_out.
        converged (bool): Whether the iteration reached the tolerance.
        iterations (int): Iterations performed.
    """

    scores: Dict[str, float]
    ordering: List[str] = field(default_factory=list)
    method: str = "eigen_in"
    converged: bool = True
    iterations: int = 0

    def __post_init__(self):
        if not self.ordering:
            object.__setattr__(self, "ordering", rank_order(self.scores))
        if set(self.ordering) != set(self.scores):
            raise ValueError("Ordering must list exactly the scored nodes.")

    def top(self, m: int) -> List[str]:
        return self.ordering[:m]

    def rows(self) -> List[Tuple[str, float, int]]:
        """(node, score, rank) rows, rank starting at 1."""
        return [(node, self.scores[node], rank) for rank, node in enumerate(self.ordering, start=1)]


class Centrality(ABC):
    """
    Abstract base class for centrality measures.

    Subclasses must:
      1. Implement ``fit(graph)`` returning a CentralityRanking.
      2. Implement ``get_model_params()`` for logging and reports.

    Attributes:
        method (str): Identifier stored on the rankings.
        tol (float): Infinity-norm tolerance on successive iterates.
        max_iter (int): Iteration cap.
        strict (bool): Raise NotConverged instead of flagging.
    """

    def __init__(
        self,
        method: str,
        tol: float = DEFAULT_TOL,
        max_iter: int = DEFAULT_MAX_ITER,
        strict: bool = False,
    ) -> None:
        if tol <= 0:
            raise ValueError("tol must be positive")
        if max_iter < 1:
            raise ValueError("max_iter must be at least 1")
        self.method = method
        self.tol = tol
        self.max_iter = max_iter
        self.strict = strict
        self.ranking: Optional[CentralityRanking] = None

    @staticmethod
    def prepare_graph(graph) -> nx.DiGraph:
        """Accept a networkx graph or anything with a ``digraph`` attribute."""
        graph = getattr(graph, "digraph", graph)
        if graph.number_of_nodes() == 0:
            raise EmptyGraph("centrality of an empty graph is undefined")
        if not graph.is_directed():
            graph = graph.to_directed()
        return graph

    def power_iteration(self, matrix: sparse.spmatrix) -> Tuple[np.ndarray, bool, int]:
        """
        Leading eigenvector of ``matrix`` by iterating x <- (M + I) x / ||.||_2.

        The identity shift leaves the eigenvectors unchanged and keeps
        periodic matrices (cycles, bipartite structures) from oscillating.

        Returns:
            Tuple[np.ndarray, bool, int]: Vector, converged flag, iterations.
        """
        size = matrix.shape[0]
        x = np.full(size, 1.0 / np.sqrt(size))
        for iteration in range(1, self.max_iter + 1):
            x_next = matrix @ x + x
            norm = np.linalg.norm(x_next)
            if norm == 0.0:
                return x_next, False, iteration
            x_next /= norm
            if np.max(np.abs(x_next - x)) < self.tol:
                return x_next, True, iteration
            x = x_next
        return x, False, self.max_iter

    @staticmethod
    def nilpotent_limit(matrix: sparse.spmatrix) -> List[np.ndarray]:
        """
        Terms of the shifted iteration for a nilpotent ``matrix``.

        (M + I)^k x expands into sum_j C(k, j) M^j x, so for nilpotent M the
        iterate turns towards M^L x, L being the largest power with
        M^L x != 0, and only at an algebraic rate. The terms M^L x, ...,
        M^0 x are returned, each scaled to a maximum of 1: the first is the
        limit direction and the rest order nodes it leaves tied.
        """
        terms = [np.ones(matrix.shape[0])]
        while True:
            following = matrix @ terms[-1]
            peak = np.max(following) if following.size else 0.0
            if peak <= 0:
                return terms[::-1]
            terms.append(following / peak)

    def finish(
        self,
        scores: Dict[str, float],
        converged: bool,
        iterations: int,
        ordering: Optional[List[str]] = None,
    ) -> CentralityRanking:
        ranking = CentralityRanking(
            scores,
            ordering=ordering or [],
            method=self.method,
            converged=converged,
            iterations=iterations,
        )
        self.ranking = ranking
        if not converged:
            logger.warning(
                "%s did not converge in %d iterations (tol %.1e)", self.method, iterations, self.tol
            )
            if self.strict:
                raise NotConverged(f"{self.method} did not converge", ranking)
        return ranking

    @abstractmethod
    def fit(self, graph) -> CentralityRanking:
        """
        Compute the centrality of every node of ``graph``.

        Args:
            graph: networkx graph or MetaGraph.

        Returns:
            CentralityRanking: Scores and ordering.
        """

    @abstractmethod
    def get_model_params(self) -> Dict[str, Any]:
        """Parameters of the measure for logging and reports."""

    def run(self, graph) -> Dict[str, Any]:
        """Fit and return a summary dict in the form the reports use."""
        ranking = self.fit(graph)
        return {
            "params": self.get_model_params(),
            "converged": ranking.converged,
            "iterations": ranking.iterations,
            "ordering": ranking.ordering,
        }

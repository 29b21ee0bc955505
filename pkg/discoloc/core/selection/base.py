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

    This module provides the abstract base class for the variable selection
    methods of discoloc and the result record they share.

    Classes:
        SelectionResult: Ranked (variable, score) list with method metadata.
        VariableSelector: Abstract base class for selection methods.

    Functions:
        ordering_agreement: Compare two selections (top-k overlap, Kendall tau).

    Dependencies:
        - pandas: CSV output of results
        - scipy.stats: Kendall tau

    Key Features:
        - Consistent interface: subclasses implement ``select`` and ``get_model_params``
        - ``run`` accepts a table or a CSV path, like the clustering and
          classification bases this follows

    Authors:
        - discoloc contributors

    Version Info:
        - 16/Oct/2026: Initial version

"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd
from scipy.stats import kendalltau

from .ensemble import EnsembleTable

METHODS = ("raw_diff", "median_distance", "lasso")


@dataclass(frozen=True)
class SelectionResult:
    """
    Attributes:
        ranked (Tuple[Tuple[str, float], ...]): (variable, score), descending score.
        method (str): raw_diff | median_distance | lasso.
        lam (Optional[float]): Regularization strength of the chosen lasso fit.
        tuned (bool): False when lasso tuning missed the target band.
        history (Tuple[Tuple[float, int], ...]): Evaluated (lambda, nnz) pairs.
    """

    ranked: Tuple[Tuple[str, float], ...]
    method: str
    lam: Optional[float] = None
    tuned: bool = True
    history: Tuple[Tuple[float, int], ...] = ()

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"Unknown selection method '{self.method}'.")
        ranked = tuple(sorted(((str(n), float(s)) for n, s in self.ranked), key=lambda r: (-r[1], r[0])))
        object.__setattr__(self, "ranked", ranked)
        object.__setattr__(self, "history", tuple(self.history))

    @property
    def names(self) -> List[str]:
        return [name for name, _ in self.ranked]

    def __len__(self) -> int:
        return len(self.ranked)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(rank, name, score) for rank, (name, score) in enumerate(self.ranked, start=1)],
            columns=["rank", "variable", "score"],
        )

    def write_csv(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)
        return path


class VariableSelector(ABC):
    """
    Abstract base class for variable selection methods.

    Subclasses must:
      1. Implement ``select(table) -> SelectionResult``.
      2. Implement ``get_model_params() -> Dict[str, Any]``.

    Attributes:
        method (str): Identifier written on results.
        result (Optional[SelectionResult]): Last result.
    """

    def __init__(self, method: str) -> None:
        if method not in METHODS:
            raise ValueError(f"Unknown selection method '{method}'.")
        self.method = method
        self.result: Optional[SelectionResult] = None

    def prepare_data(self, path) -> EnsembleTable:
        return EnsembleTable.read_csv(path)

    @abstractmethod
    def select(self, table: EnsembleTable) -> SelectionResult:
        """Rank the variables of ``table`` by how strongly the experiment departs from the ensemble."""

    @abstractmethod
    def get_model_params(self) -> Dict[str, Any]:
        """Parameters for logging and reports."""

    def run(self, table: Optional[EnsembleTable] = None, path: Optional[str] = None) -> Dict[str, Any]:
        """
        Select from a table or a CSV file.

        Raises:
            ValueError: If neither ``table`` nor ``path`` is given.
        """
        if table is None and path is None:
            raise ValueError("Either 'table' or 'path' must be provided.")
        table = table if table is not None else self.prepare_data(path)
        self.result = self.select(table)
        return {
            "params": self.get_model_params(),
            "selected": self.result.names,
            "tuned": self.result.tuned,
        }


def ordering_agreement(
    first: SelectionResult, second: SelectionResult, k: Optional[int] = None
) -> Dict[str, Any]:
    """
    How similar two selections are.

    Args:
        first (SelectionResult): e.g. median-distance selection.
        second (SelectionResult): e.g. lasso selection.
        k (Optional[int]): Prefix length, defaults to the shorter result.

    Returns:
        Dict[str, Any]: ``overlap`` (fraction of shared variables in the two
        top-k lists), ``shared`` (their names) and ``kendall_tau`` of the
        shared variables' ranks (None with fewer than two shared variables).
    """
    k = k if k is not None else min(len(first), len(second))
    top_first, top_second = first.names[:k], second.names[:k]
    shared = [name for name in top_first if name in top_second]
    tau = None
    if len(shared) >= 2:
        statistic = kendalltau(
            [top_first.index(n) for n in shared], [top_second.index(n) for n in shared]
        ).statistic
        tau = float(statistic)
    return {
        "k": k,
        "overlap": len(shared) / k if k else 0.0,
        "shared": shared,
        "kendall_tau": tau,
    }

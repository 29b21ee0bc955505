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
    Module: raw_diff.py

    First-time-step pre-check: compare one ensemble member with one
    experimental run value by value. A variable is reported when its
    normalized difference ``|e - x| / max(|e|, floor)`` exceeds ``rel_tol``.

    Classes:
        RawDifference: VariableSelector for the normalized comparison.

    Functions:
        raw_diff: Functional form.

    Authors:
        - discoloc contributors

    Version Info:
        - 16/Oct/2026: Initial version

"""

from typing import Any, Dict

import numpy as np

from ..utils.log_utils import get_logger
from .base import SelectionResult, VariableSelector
from .ensemble import EnsembleTable

logger = get_logger(__name__)

DEFAULT_REL_TOL = 1e-6
DEFAULT_FLOOR = 1e-12


class RawDifference(VariableSelector):
    """
    Attributes:
        member_index (int): Ensemble member to compare.
        run_index (int): Experimental run to compare.
        rel_tol (float): Threshold on the normalized difference.
        floor (float): Lower bound of the normalizing magnitude.
    """

    def __init__(
        self,
        member_index: int = 0,
        run_index: int = 0,
        rel_tol: float = DEFAULT_REL_TOL,
        floor: float = DEFAULT_FLOOR,
    ) -> None:
        super().__init__("raw_diff")
        if rel_tol < 0:
            raise ValueError("rel_tol must be non-negative.")
        if floor <= 0:
            raise ValueError("floor must be positive.")
        self.member_index = member_index
        self.run_index = run_index
        self.rel_tol = rel_tol
        self.floor = floor

    def select(self, table: EnsembleTable) -> SelectionResult:
        if not 0 <= self.member_index < table.ensemble_size:
            raise ValueError(
                f"member_index {self.member_index} out of range "
                f"for {table.ensemble_size} members"
            )
        if not 0 <= self.run_index < table.experiment_size:
            raise ValueError(f"run_index {self.run_index} out of range for {table.experiment_size} runs")

        member = table.matrix("ensemble")[self.member_index]
        run = table.matrix("experiment")[self.run_index]
        relative = np.abs(member - run) / np.maximum(np.abs(member), self.floor)
        ranked = [(name, float(r)) for name, r in zip(table.variables, relative) if r > self.rel_tol]
        logger.info("raw_diff: %d of %d variables differ", len(ranked), len(table.variables))
        return SelectionResult(ranked, self.method)

    def get_model_params(self) -> Dict[str, Any]:
        return {
            "member_index": self.member_index,
            "run_index": self.run_index,
            "rel_tol": self.rel_tol,
            "floor": self.floor,
        }


def raw_diff(
    table: EnsembleTable, member_index: int = 0, run_index: int = 0, rel_tol: float = DEFAULT_REL_TOL
) -> SelectionResult:
    return RawDifference(member_index, run_index, rel_tol).select(table)

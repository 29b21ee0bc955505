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
    Module: median_distance.py

    Standardized median distance with an interquartile-range overlap filter.

    Both samples of a variable are standardized by the ensemble mean and
    standard deviation. Variables whose ensemble and experimental IQRs
    ``[Q1, Q3]`` are disjoint are kept and scored by the absolute distance
    between their standardized medians. Quartiles use linear interpolation.

    Classes:
        MedianDistance: VariableSelector for the IQR-filtered median distance.

    Functions:
        median_distance: Functional form.
        quartiles: Q1, median and Q3 per column.

    Dependencies:
        - scikit-learn: StandardScaler fitted on the ensemble
        - numpy: percentiles

    Authors:
        - discoloc contributors

    Version Info:
        - 16/Oct/2026: Initial version

"""

from typing import Any, Dict

import numpy as np
from sklearn.preprocessing import StandardScaler

from ..utils.log_utils import get_logger
from .base import SelectionResult, VariableSelector
from .ensemble import EnsembleTable

logger = get_logger(__name__)


def quartiles(values: np.ndarray) -> np.ndarray:
    """Rows Q1, median, Q3 of each column of ``values``."""
    return np.percentile(values, [25, 50, 75], axis=0, method="linear")


class MedianDistance(VariableSelector):
    """
    Attributes:
        scaler (StandardScaler): Scaler fitted on the ensemble of the last table.
        excluded (list): Zero-variance variables skipped in the last call.
    """

    def __init__(self) -> None:
        super().__init__("median_distance")
        self.scaler = StandardScaler()
        self.excluded = []

    def select(self, table: EnsembleTable) -> SelectionResult:
        ensemble = table.matrix("ensemble")
        experiment = table.matrix("experiment")

        self.scaler.fit(ensemble)
        constant = self.scaler.var_ == 0
        self.excluded = [name for name, c in zip(table.variables, constant) if c]
        if self.excluded:
            logger.warning("excluding zero-variance variables: %s", ", ".join(self.excluded))

        ens_q = quartiles(self.scaler.transform(ensemble))
        exp_q = quartiles(self.scaler.transform(experiment))
        disjoint = (ens_q[2] < exp_q[0]) | (exp_q[2] < ens_q[0])
        distance = np.abs(exp_q[1] - ens_q[1])

        ranked = [
            (name, float(d))
            for name, d, keep, skip in zip(table.variables, distance, disjoint, constant)
            if keep and not skip
        ]
        logger.info(
            "median_distance: %d of %d variables have disjoint IQRs",
            len(ranked),
            len(table.variables),
        )
        return SelectionResult(ranked, self.method)

    def get_model_params(self) -> Dict[str, Any]:
        return {"quartiles": "linear", "excluded": list(self.excluded)}


def median_distance(table: EnsembleTable) -> SelectionResult:
    return MedianDistance().select(table)

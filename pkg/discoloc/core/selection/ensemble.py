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
    Module: ensemble.py

    Ensemble tables: per-variable output values of the accepted ensemble and
    of the experimental runs.

    CSV layouts accepted by ``EnsembleTable.read_csv``:
        - long: columns ``variable,role,value``, one row per (variable, run);
        - wide: columns ``variable,role,<run columns...>``, one row per
          (variable, role).
    ``role`` is ``ensemble`` or ``experiment``. Runs keep file order.

    Classes:
        EnsembleTable: Validated container with matrix accessors.

    Dependencies:
        - pandas: CSV input and output
        - numpy: value arrays

    Authors:
        - discoloc contributors

    Version Info:
        - 16/Oct/2026: Initial version

"""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Tuple

import numpy as np
import pandas as pd

from ..errors import SourceIoError

ROLES = ("ensemble", "experiment")
MIN_ENSEMBLE = 3


@dataclass(frozen=True)
class EnsembleTable:
    """
    Attributes:
        variables (Tuple[str, ...]): Variable names in table order.
        ensemble (Dict[str, np.ndarray]): Name to E ensemble values.
        experiment (Dict[str, np.ndarray]): Name to X experimental values.
    """

    variables: Tuple[str, ...]
    ensemble: Dict[str, np.ndarray]
    experiment: Dict[str, np.ndarray]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("Variable names must be unique.")
        if set(self.ensemble) != set(self.variables) or set(self.experiment) != set(self.variables):
            raise ValueError("Ensemble and experiment must cover exactly the same variables.")
        ensemble = {k: np.asarray(v, dtype=float) for k, v in self.ensemble.items()}
        experiment = {k: np.asarray(v, dtype=float) for k, v in self.experiment.items()}
        shapes = ({v.shape for v in ensemble.values()}, {v.shape for v in experiment.values()})
        if any(len(group) > 1 for group in shapes):
            raise ValueError("All variables need the same number of runs per role.")
        object.__setattr__(self, "ensemble", ensemble)
        object.__setattr__(self, "experiment", experiment)
        if self.variables and self.ensemble_size < MIN_ENSEMBLE:
            raise ValueError(
                f"An ensemble needs at least {MIN_ENSEMBLE} members, got {self.ensemble_size}."
            )
        if self.variables and self.experiment_size < 1:
            raise ValueError("At least one experimental run is required.")

    @property
    def ensemble_size(self) -> int:
        return len(next(iter(self.ensemble.values()))) if self.ensemble else 0

    @property
    def experiment_size(self) -> int:
        return len(next(iter(self.experiment.values()))) if self.experiment else 0

    def matrix(self, role: str) -> np.ndarray:
        """Runs x variables matrix of one role, columns in ``variables`` order."""
        source = {"ensemble": self.ensemble, "experiment": self.experiment}[role]
        return np.column_stack([source[name] for name in self.variables])

    @classmethod
    def from_matrices(cls, variables, ensemble: np.ndarray, experiment: np.ndarray) -> "EnsembleTable":
        variables = tuple(variables)
        ensemble = np.asarray(ensemble, dtype=float)
        experiment = np.asarray(experiment, dtype=float)
        return cls(
            variables,
            {name: ensemble[:, j] for j, name in enumerate(variables)},
            {name: experiment[:, j] for j, name in enumerate(variables)},
        )

    @classmethod
    def from_frame(cls, frame: pd.DataFrame) -> "EnsembleTable":
        if not {"variable", "role"} <= set(frame.columns):
            raise ValueError("Ensemble CSV needs 'variable' and 'role' columns.")
        unknown = set(frame["role"]) - set(ROLES)
        if unknown:
            raise ValueError(f"Unknown roles {sorted(unknown)}, expected {ROLES}.")
        variables = tuple(dict.fromkeys(frame["variable"].astype(str)))
        values: Dict[str, Dict[str, np.ndarray]] = {role: {} for role in ROLES}
        run_columns = [c for c in frame.columns if c not in ("variable", "role")]
        long_format = run_columns == ["value"]
        for (name, role), rows in frame.groupby(["variable", "role"], sort=False):
            if long_format:
                data = rows["value"].to_numpy(dtype=float)
            else:
                data = rows[run_columns].to_numpy(dtype=float).ravel()
                data = data[~np.isnan(data)]
            values[role][str(name)] = data
        return cls(variables, values["ensemble"], values["experiment"])

    @classmethod
    def read_csv(cls, path) -> "EnsembleTable":
        """
        Raises:
            SourceIoError: File missing or unreadable.
            ValueError: Content violates the table invariants.
        """
        path = Path(path)
        try:
            frame = pd.read_csv(path)
        except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
            raise SourceIoError(f"cannot read ensemble table {path}: {exc}") from exc
        return cls.from_frame(frame)

    def to_frame(self) -> pd.DataFrame:
        """Long-format frame ``variable,role,value``."""
        rows = []
        for role, source in (("ensemble", self.ensemble), ("experiment", self.experiment)):
            for name in self.variables:
                rows.extend((name, role, float(v)) for v in source[name])
        return pd.DataFrame(rows, columns=["variable", "role", "value"])

    def write_csv(self, path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)
        return path

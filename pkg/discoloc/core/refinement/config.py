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
    Module: config.py

    Configuration records of the refinement loop.

    Classes:
        RefinementConfig: Sampling, community and stopping parameters.
        BugSpec: Known bug locations used to simulate sampling.

    Dependencies:
        - pyyaml: configuration and bug files (JSON is read as YAML)

    Authors:
        - discoloc contributors

    Version Info:
        - 16/Oct/2026: Initial version

"""

from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterable, Mapping

import yaml

from ..analytics.base import DEFAULT_MAX_ITER, DEFAULT_TOL
from ..errors import SourceIoError


def read_yaml(path) -> Any:
    """Parse a YAML (or JSON) file, mapping I/O and syntax errors to SourceIoError."""
    path = Path(path)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return yaml.safe_load(handle)
    except (OSError, yaml.YAMLError) as exc:
        raise SourceIoError(f"cannot read {path}: {exc}") from exc


@dataclass(frozen=True)
class RefinementConfig:
    """
    Attributes:
        m (int): Nodes sampled per community.
        min_community (int): Smallest component that counts as a community.
        stop_size (int): Stop once the subgraph has at most this many nodes.
        max_iterations (int): Iteration cap.
        gn_iterations (int): Girvan-Newman iterations per refinement step.
        tol (float): Centrality tolerance.
        max_iter (int): Centrality iteration cap.
    """

    m: int = 10
    min_community: int = 3
    stop_size: int = 30
    max_iterations: int = 20
    gn_iterations: int = 1
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER

    def __post_init__(self):
        for name in ("m", "min_community", "stop_size", "max_iterations", "gn_iterations", "max_iter"):
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")
        if not self.tol > 0:
            raise ValueError(f"tol must be positive, got {self.tol!r}")

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> "RefinementConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(values) - known
        if unknown:
            raise ValueError(f"Unknown refinement settings: {sorted(unknown)}")
        if "tol" in values:
            values = {**values, "tol": float(values["tol"])}
        return cls(**values)

    @classmethod
    def from_yaml(cls, path) -> "RefinementConfig":
        """
        Read a config file. Settings may sit at the top level or under a
        ``refinement`` key.
        """
        data = read_yaml(path) or {}
        if not isinstance(data, dict):
            raise ValueError(f"{path}: expected a mapping")
        return cls.from_mapping(data.get("refinement", data))

    def replace(self, **overrides) -> "RefinementConfig":
        """Copy with the given settings replaced; ``None`` values are ignored."""
        values = self.to_dict()
        values.update({k: v for k, v in overrides.items() if v is not None})
        return self.from_mapping(values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class BugSpec:
    """
    Attributes:
        bug_nodes (FrozenSet[str]): NodeIds of the bug locations.
    """

    bug_nodes: FrozenSet[str]

    def __post_init__(self):
        object.__setattr__(self, "bug_nodes", frozenset(self.bug_nodes))
        if not self.bug_nodes:
            raise ValueError("A bug spec needs at least one node.")

    def validate(self, g) -> "BugSpec":
        """
        Check that every bug node exists in the full graph ``g``. The nodes
        need not be part of the slice being refined.
        """
        missing = sorted(n for n in self.bug_nodes if n not in g)
        if missing:
            raise ValueError(f"bug nodes not in the graph: {missing}")
        return self

    @classmethod
    def of(cls, nodes: Iterable[str]) -> "BugSpec":
        return cls(frozenset(nodes))

    @classmethod
    def from_file(cls, path) -> "BugSpec":
        """Read ``[node, ...]`` or ``{"bug_nodes": [node, ...]}`` from YAML or JSON."""
        data = read_yaml(path)
        if isinstance(data, dict):
            data = data.get("bug_nodes")
        if not isinstance(data, list):
            raise SourceIoError(f"{path}: expected a list of bug nodes")
        return cls(frozenset(str(n) for n in data))

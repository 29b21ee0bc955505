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
File: io_utils.py
Purpose: This file contains helpers to read and write the CSV and JSON
artifacts exchanged between pipeline stages.

Functions:
    - write_ranking: Centrality ranking as CSV ``node,score,rank``
    - read_ranking: CSV ranking back into a dataframe
    - write_json: Pretty-printed, key-sorted JSON document
    - read_json: JSON document with errors mapped to SourceIoError
    - read_selection: Variable names of a selection CSV ``rank,variable,score``

Authors:
    discoloc contributors

Version Info:
    16/Oct/2026: Initial version
"""

import json
from pathlib import Path
from typing import Any, List, Optional

import pandas as pd

from ..analytics.base import CentralityRanking
from ..errors import SourceIoError


def write_ranking(ranking: CentralityRanking, path, top_k: Optional[int] = None) -> Path:
    rows = ranking.rows()[:top_k] if top_k else ranking.rows()
    frame = pd.DataFrame(rows, columns=["node", "score", "rank"])
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False, float_format="%.12g")
    except OSError as exc:
        raise SourceIoError(f"cannot write {path}: {exc}") from exc
    return path


def read_ranking(path) -> pd.DataFrame:
    try:
        return pd.read_csv(path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise SourceIoError(f"cannot read ranking {path}: {exc}") from exc


def write_json(document: Any, path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(document, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise SourceIoError(f"cannot write {path}: {exc}") from exc
    return path


def read_json(path) -> Any:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SourceIoError(f"cannot read {path}: {exc}") from exc


def read_selection(path) -> List[str]:
    """Variable names of a selection CSV in rank order."""
    try:
        frame = pd.read_csv(path)
    except (OSError, pd.errors.ParserError, pd.errors.EmptyDataError) as exc:
        raise SourceIoError(f"cannot read selection {path}: {exc}") from exc
    if "variable" not in frame.columns:
        raise SourceIoError(f"selection {path} has no 'variable' column")
    if "rank" in frame.columns:
        frame = frame.sort_values("rank", kind="stable")
    return [str(v).lower() for v in frame["variable"]]

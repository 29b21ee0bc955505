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
    Module: coverage.py

    Coverage filtering. A coverage report lists the modules and subprograms
    that executed during a reference run; everything else is removed from the
    corpus before the metagraph is built, which keeps the search space to
    code that can actually have influenced the outputs.

    Coverage JSON schema::

        {"modules": [{"name": "micro_mg", "subprograms": ["tend", "sed"]}, ...]}

    A module entry without a ``subprograms`` key keeps all of its subprograms;
    an empty list keeps none.

    Classes:
        CoverageReport: Executed modules and subprograms.

    Functions:
        load_coverage: Read a coverage JSON file.
        apply_coverage: Drop unexecuted modules and subprograms.
        corpus_summary: Counts before and after filtering.

    Authors:
        - discoloc contributors

    Version Info:
        - 14/Oct/2026: Initial version

"""

import json
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, FrozenSet, Mapping, Optional

from ..errors import SourceIoError
from ..utils.log_utils import get_logger
from .units import SourceCorpus

logger = get_logger(__name__)


@dataclass(frozen=True)
class CoverageReport:
    """
    Executed code at module and subprogram granularity.

    Attributes:
        executed_modules (FrozenSet[str]): Modules that ran.
        executed_subprograms (Mapping[str, FrozenSet[str]]): Per module, the
            subprograms that ran. Modules missing from the mapping keep every
            subprogram.
    """

    executed_modules: FrozenSet[str] = frozenset()
    executed_subprograms: Mapping[str, FrozenSet[str]] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "executed_modules", frozenset(self.executed_modules))
        object.__setattr__(
            self,
            "executed_subprograms",
            {k: frozenset(v) for k, v in self.executed_subprograms.items()},
        )
        stray = set(self.executed_subprograms) - self.executed_modules
        if stray:
            raise ValueError(
                f"Subprogram coverage given for modules that did not execute: {sorted(stray)}"
            )

    @classmethod
    def from_dict(cls, data: Mapping) -> "CoverageReport":
        """Build a report from the parsed coverage JSON document."""
        if not isinstance(data, Mapping) or not isinstance(data.get("modules"), list):
            raise ValueError('Coverage JSON must be an object with a "modules" list.')
        modules, subprograms = set(), {}
        for entry in data["modules"]:
            if not isinstance(entry, Mapping) or "name" not in entry:
                raise ValueError(f"Coverage entry without a name: {entry!r}")
            name = str(entry["name"]).lower()
            modules.add(name)
            if "subprograms" in entry:
                subprograms.setdefault(name, set()).update(
                    str(s).lower() for s in entry["subprograms"]
                )
        return cls(frozenset(modules), subprograms)

    def to_dict(self) -> Dict:
        entries = []
        for name in sorted(self.executed_modules):
            entry = {"name": name}
            if name in self.executed_subprograms:
                entry["subprograms"] = sorted(self.executed_subprograms[name])
            entries.append(entry)
        return {"modules": entries}


def load_coverage(path) -> CoverageReport:
    """
    Read a coverage report.

    Raises:
        SourceIoError: File missing or not valid JSON.
        ValueError: JSON does not follow the coverage schema.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise SourceIoError(f"cannot read coverage report {path}: {exc}") from exc
    return CoverageReport.from_dict(data)


def apply_coverage(corpus: SourceCorpus, report: CoverageReport) -> SourceCorpus:
    """
    Keep only executed modules, and within them only executed subprograms.

    Module-level statements and all line numbers are untouched. Names in the
    report that the corpus does not know are logged and ignored. Applying the
    same report twice gives the same corpus.

    Args:
        corpus (SourceCorpus): Parsed corpus.
        report (CoverageReport): Executed modules and subprograms.

    Returns:
        SourceCorpus: Filtered corpus.
    """
    known = set(corpus.module_names)
    for name in sorted(report.executed_modules - known):
        logger.warning("coverage lists unknown module '%s', ignored", name)

    kept = []
    for unit in corpus:
        if unit.module_name not in report.executed_modules:
            continue
        executed: Optional[FrozenSet[str]] = report.executed_subprograms.get(unit.module_name)
        if executed is None:
            kept.append(unit)
            continue
        present = {sub.name for sub in unit.subprograms}
        for name in sorted(executed - present):
            logger.warning(
                "coverage lists unknown subprogram '%s' of module '%s', ignored",
                name,
                unit.module_name,
            )
        dropped = present - executed
        kept.append(
            replace(
                unit,
                subprograms=tuple(s for s in unit.subprograms if s.name in executed),
                public_symbols=unit.public_symbols - dropped,
            )
        )
    filtered = SourceCorpus(tuple(kept))
    logger.info(
        "coverage kept %d of %d modules", len(filtered), len(corpus)
    )
    return filtered


def corpus_summary(
    before: SourceCorpus, after: Optional[SourceCorpus] = None
) -> Dict[str, Dict[str, int]]:
    """
    Size of the search space before and after coverage filtering.

    Args:
        before (SourceCorpus): Unfiltered corpus.
        after (Optional[SourceCorpus]): Filtered corpus, ``None`` when no
            filtering was applied.

    Returns:
        Dict[str, Dict[str, int]]: ``{"before": {...}, "after": {...}}`` with
        module, subprogram, statement, assignment and line counts.
    """
    first = before.summary()
    return {"before": first, "after": after.summary() if after is not None else dict(first)}

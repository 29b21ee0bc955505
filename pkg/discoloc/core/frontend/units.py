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
    Module: units.py

    Compilation-unit level containers of the MiniFort frontend: diagnostics,
    subprogram definitions, use statements, source units and the corpus.

    Classes:
        Severity: INFO | WARNING | ERROR.
        Diagnostic: ``SEVERITY module:line message`` record.
        SubprogramDef: A function or subroutine with its formals and body.
        UseStatement: ``use`` with optional only-list and renames.
        SourceUnit: One parsed module (one .mf90 file).
        SourceCorpus: The set of parsed units, keyed by module name.

    Authors:
        - discoloc contributors

    Version Info:
        - 14/Oct/2026: Initial version

"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Iterator, List, Optional, Tuple

from .ast_nodes import Declared, Statement, StatementKind


class Severity(str, Enum):
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"


@dataclass(frozen=True)
class Diagnostic:
    severity: Severity
    module: str
    line: int
    message: str

    def __str__(self) -> str:
        return f"{self.severity.value} {self.module}:{self.line} {self.message}"


def _declarations(statements: Tuple[Statement, ...]) -> Dict[str, Declared]:
    declared = {}
    for stmt in statements:
        if stmt.kind is StatementKind.DECLARATION:
            for entity in stmt.declared:
                declared[entity.name] = entity
    return declared


@dataclass(frozen=True)
class SubprogramDef:
    """
    A function or subroutine.

    Attributes:
        name (str): Subprogram name.
        kind (str): ``"function"`` or ``"subroutine"``.
        module (str): Module containing the definition.
        args (Tuple[str, ...]): Formal parameter names in positional order.
        result_name (Optional[str]): ``result(...)`` variable of a function.
        statements (Tuple[Statement, ...]): Body, header and end statements included.
        line (int): Header line.
        end_line (int): Line of the matching ``end``.
    """

    name: str
    kind: str
    module: str
    args: Tuple[str, ...] = ()
    result_name: Optional[str] = None
    statements: Tuple[Statement, ...] = ()
    line: int = 1
    end_line: int = 1

    def __post_init__(self):
        if self.kind not in ("function", "subroutine"):
            raise ValueError(f"Unknown subprogram kind '{self.kind}'.")

    @property
    def is_function(self) -> bool:
        return self.kind == "function"

    @property
    def result_variable(self) -> Optional[str]:
        """Name that holds the function result inside the body."""
        if not self.is_function:
            return None
        return self.result_name or self.name

    @property
    def declarations(self) -> Dict[str, Declared]:
        return _declarations(self.statements)

    def intent_of(self, formal: str) -> str:
        """Declared intent of a formal; undeclared intents are treated as inout."""
        entity = self.declarations.get(formal)
        if entity is None or entity.intent is None:
            return "inout"
        return entity.intent

    @property
    def local_names(self) -> FrozenSet[str]:
        """Formals, declared locals and the result variable."""
        names = set(self.args) | set(self.declarations)
        if self.is_function:
            names.add(self.result_variable)
        return frozenset(names)

    @property
    def array_names(self) -> FrozenSet[str]:
        return frozenset(n for n, d in self.declarations.items() if d.is_array)


@dataclass(frozen=True)
class UseStatement:
    """
    ``use source_module [, only: ...] [, local => remote ...]``.

    Attributes:
        source_module (str): Module being imported.
        only_list (Optional[Tuple[Tuple[str, str], ...]]): (remote, local) pairs,
            None when there is no only-list.
        renames (Tuple[Tuple[str, str], ...]): (remote, local) renames outside an only-list.
        line (int): Source line.
        scope (Optional[str]): Subprogram containing the statement, None at module level.
    """

    source_module: str
    only_list: Optional[Tuple[Tuple[str, str], ...]] = None
    renames: Tuple[Tuple[str, str], ...] = ()
    line: int = 1
    scope: Optional[str] = None

    @property
    def renames_map(self) -> Dict[str, str]:
        return dict(self.renames)


@dataclass(frozen=True)
class SourceUnit:
    """
    One MiniFort module.

    Attributes:
        module_name (str): Unique within a corpus.
        path (str): File the unit was parsed from.
        statements (Tuple[Statement, ...]): Module-level statements.
        subprograms (Tuple[SubprogramDef, ...]): Subprograms after ``contains``.
        uses (Tuple[UseStatement, ...]): Every use statement of the unit.
        public_symbols (FrozenSet[str]): Names visible to importers.
        diagnostics (Tuple[Diagnostic, ...]): Parser diagnostics.
        line_count (int): Physical lines of the source file.
    """

    module_name: str
    path: str = "<string>"
    statements: Tuple[Statement, ...] = ()
    subprograms: Tuple[SubprogramDef, ...] = ()
    uses: Tuple[UseStatement, ...] = ()
    public_symbols: FrozenSet[str] = frozenset()
    diagnostics: Tuple[Diagnostic, ...] = ()
    line_count: int = 0

    def __post_init__(self):
        names = [sub.name for sub in self.subprograms]
        if len(names) != len(set(names)):
            raise ValueError(
                f"Duplicate subprogram names in module '{self.module_name}'."
            )

    def subprogram(self, name: str) -> Optional[SubprogramDef]:
        for sub in self.subprograms:
            if sub.name == name:
                return sub
        return None

    @property
    def declarations(self) -> Dict[str, Declared]:
        return _declarations(self.statements)

    @property
    def module_variables(self) -> FrozenSet[str]:
        """Variables declared or assigned at module level."""
        names = set(self.declarations)
        for stmt in self.statements:
            if stmt.kind is StatementKind.ASSIGNMENT:
                names.add(stmt.lhs.base_name)
        return frozenset(names)

    @property
    def array_names(self) -> FrozenSet[str]:
        names = {n for n, d in self.declarations.items() if d.is_array}
        for sub in self.subprograms:
            names |= sub.array_names
        return frozenset(names)

    def all_statements(self) -> Iterator[Statement]:
        yield from self.statements
        for sub in self.subprograms:
            yield from sub.statements

    @property
    def bad_statements(self) -> List[Statement]:
        return [s for s in self.all_statements() if s.diagnostic is not None]

    @property
    def source_lines(self) -> int:
        """Lines spanned by module-level code plus retained subprograms."""
        lines = {s.line for s in self.statements}
        for sub in self.subprograms:
            lines.update(range(sub.line, sub.end_line + 1))
        return len(lines)


@dataclass(frozen=True)
class SourceCorpus:
    """
    A set of SourceUnits with unique module names, kept sorted by name so
    that every traversal is deterministic.
    """

    units: Tuple[SourceUnit, ...] = field(default_factory=tuple)

    def __post_init__(self):
        ordered = tuple(sorted(self.units, key=lambda unit: unit.module_name))
        names = [unit.module_name for unit in ordered]
        duplicates = sorted({n for n in names if names.count(n) > 1})
        if duplicates:
            raise ValueError(f"Module names must be unique, repeated: {duplicates}")
        object.__setattr__(self, "units", ordered)

    def __iter__(self) -> Iterator[SourceUnit]:
        return iter(self.units)

    def __len__(self) -> int:
        return len(self.units)

    def __contains__(self, module_name: str) -> bool:
        return any(unit.module_name == module_name for unit in self.units)

    def unit(self, module_name: str) -> Optional[SourceUnit]:
        for unit in self.units:
            if unit.module_name == module_name:
                return unit
        return None

    @property
    def module_names(self) -> Tuple[str, ...]:
        return tuple(unit.module_name for unit in self.units)

    @property
    def diagnostics(self) -> Tuple[Diagnostic, ...]:
        return tuple(d for unit in self.units for d in unit.diagnostics)

    def summary(self) -> Dict[str, int]:
        """Module, subprogram, statement and source-line counts."""
        return {
            "modules": len(self.units),
            "subprograms": sum(len(u.subprograms) for u in self.units),
            "statements": sum(
                1 for u in self.units for _ in u.all_statements()
            ),
            "assignments": sum(
                1
                for u in self.units
                for s in u.all_statements()
                if s.kind is StatementKind.ASSIGNMENT
            ),
            "lines": sum(u.source_lines for u in self.units),
        }

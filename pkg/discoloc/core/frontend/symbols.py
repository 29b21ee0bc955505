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
    Module: symbols.py

    Cross-module symbol resolution: the registries of functions, subroutines
    and intrinsics, the rename-aware alias map built from ``use`` statements,
    and callable classification for ``name(args)`` expressions.

    Use statements are resolved one link at a time: if ``n`` uses ``m`` and
    ``m`` uses ``k``, names imported into ``n`` point at ``m`` and are never
    followed further into ``k``.

    Classes:
        CallableKind: function | subroutine | intrinsic | array | unknown.
        SymbolTable: Registries and alias map of a corpus.

    Functions:
        resolve_uses: Build the SymbolTable of a corpus.
        classify_callable: Decide what ``name(...)`` means inside a module.

    Authors:
        - discoloc contributors

    Version Info:
        - 14/Oct/2026: Initial version

"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, FrozenSet, Optional, Set, Tuple

from ..utils.log_utils import get_logger
from .units import Diagnostic, Severity, SourceCorpus, SubprogramDef

logger = get_logger(__name__)

INTRINSICS = frozenset({"min", "max", "abs", "sqrt", "exp", "log", "sum"})

AliasKey = Tuple[str, str]


class CallableKind(str, Enum):
    FUNCTION = "function"
    SUBROUTINE = "subroutine"
    INTRINSIC = "intrinsic"
    ARRAY = "array"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class SymbolTable:
    """
    Symbols of a resolved corpus.

    Attributes:
        functions (Dict[str, SubprogramDef]): Function name to definition.
        subroutines (Dict[str, SubprogramDef]): Subroutine name to definition.
        intrinsics (FrozenSet[str]): Intrinsic whitelist.
        local_alias (Dict[AliasKey, AliasKey]): (module, local name) to
            (defining module, remote name).
        arrays (Dict[str, FrozenSet[str]]): Names declared with dimensions, per module.
        module_variables (Dict[str, FrozenSet[str]]): Module-level variables, per module.
        subprograms (Dict[AliasKey, SubprogramDef]): (module, name) to definition.
        unresolved (FrozenSet[AliasKey]): Alias keys whose target does not exist.
        diagnostics (Tuple[Diagnostic, ...]): Resolution diagnostics.
    """

    functions: Dict[str, SubprogramDef] = field(default_factory=dict)
    subroutines: Dict[str, SubprogramDef] = field(default_factory=dict)
    intrinsics: FrozenSet[str] = INTRINSICS
    local_alias: Dict[AliasKey, AliasKey] = field(default_factory=dict)
    arrays: Dict[str, FrozenSet[str]] = field(default_factory=dict)
    module_variables: Dict[str, FrozenSet[str]] = field(default_factory=dict)
    subprograms: Dict[AliasKey, SubprogramDef] = field(default_factory=dict)
    unresolved: FrozenSet[AliasKey] = frozenset()
    diagnostics: Tuple[Diagnostic, ...] = ()

    def __post_init__(self):
        overlap = set(self.functions) & set(self.subroutines)
        if overlap:
            raise ValueError(f"Names registered as both function and subroutine: {sorted(overlap)}")

    def resolve_alias(self, module: str, name: str) -> Optional[AliasKey]:
        return self.local_alias.get((module, name))

    def lookup_subprogram(self, name: str, context: str) -> Optional[SubprogramDef]:
        """
        Definition that ``name`` refers to inside module ``context``.

        Lookup order: use-alias, subprograms of ``context`` itself, then the
        global registries.
        """
        target = self.resolve_alias(context, name)
        if target is not None:
            found = self.subprograms.get(target)
            if found is not None:
                return found
            name = target[1]
        local = self.subprograms.get((context, name))
        if local is not None:
            return local
        return self.functions.get(name) or self.subroutines.get(name)

    def is_array(self, name: str, context: str) -> bool:
        if name in self.arrays.get(context, frozenset()):
            return True
        target = self.resolve_alias(context, name)
        return target is not None and target[1] in self.arrays.get(target[0], frozenset())


def resolve_uses(corpus: SourceCorpus) -> SymbolTable:
    """
    Build the symbol table of a corpus.

    With an only-list, exactly the listed names are imported (renames
    applied). Without one, every public symbol of the source module is
    imported under its own name, or under its local name when renamed.
    Targets that do not exist are recorded as unresolved diagnostics.

    Units are visited in module-name order, so the table does not depend on
    the order the units were supplied in.

    Args:
        corpus (SourceCorpus): Parsed (and usually coverage-filtered) corpus.

    Returns:
        SymbolTable: Registries, alias map and diagnostics.
    """
    diagnostics = []
    functions: Dict[str, SubprogramDef] = {}
    subroutines: Dict[str, SubprogramDef] = {}
    subprograms: Dict[AliasKey, SubprogramDef] = {}

    for unit in corpus:
        for sub in unit.subprograms:
            subprograms[(unit.module_name, sub.name)] = sub
            registry = functions if sub.is_function else subroutines
            other = subroutines if sub.is_function else functions
            existing = registry.get(sub.name) or other.get(sub.name)
            if existing is not None:
                diagnostics.append(
                    Diagnostic(
                        Severity.WARNING,
                        unit.module_name,
                        sub.line,
                        f"{sub.kind} '{sub.name}' also defined in module "
                        f"'{existing.module}', global lookup keeps '{existing.module}'",
                    )
                )
                continue
            registry[sub.name] = sub

    alias: Dict[AliasKey, AliasKey] = {}
    unresolved: Set[AliasKey] = set()

    def bind(module: str, line: int, local: str, target: AliasKey, exists: bool) -> None:
        key = (module, local)
        if key in alias and alias[key] != target:
            diagnostics.append(
                Diagnostic(
                    Severity.WARNING,
                    module,
                    line,
                    f"'{local}' already imported from '{alias[key][0]}', "
                    f"ignoring import from '{target[0]}'",
                )
            )
            return
        alias[key] = target
        if not exists:
            unresolved.add(key)
            diagnostics.append(
                Diagnostic(
                    Severity.WARNING,
                    module,
                    line,
                    f"unresolved import '{target[1]}' from module '{target[0]}'",
                )
            )

    for unit in corpus:
        for use in sorted(unit.uses, key=lambda u: u.line):
            source = corpus.unit(use.source_module)
            public = source.public_symbols if source is not None else frozenset()
            if source is None and use.only_list is None:
                diagnostics.append(
                    Diagnostic(
                        Severity.WARNING,
                        unit.module_name,
                        use.line,
                        f"unresolved module '{use.source_module}'",
                    )
                )
                continue
            if use.only_list is not None:
                for remote, local in use.only_list:
                    bind(
                        unit.module_name,
                        use.line,
                        local,
                        (use.source_module, remote),
                        remote in public,
                    )
                continue
            renames = use.renames_map
            for remote in sorted(public):
                local = renames.get(remote, remote)
                bind(unit.module_name, use.line, local, (use.source_module, remote), True)
            for remote in sorted(set(renames) - public):
                bind(unit.module_name, use.line, renames[remote], (use.source_module, remote), False)

    table = SymbolTable(
        functions=functions,
        subroutines=subroutines,
        intrinsics=INTRINSICS,
        local_alias=alias,
        arrays={unit.module_name: unit.array_names for unit in corpus},
        module_variables={unit.module_name: unit.module_variables for unit in corpus},
        subprograms=subprograms,
        unresolved=frozenset(unresolved),
        diagnostics=tuple(diagnostics),
    )
    logger.info(
        "resolved %d imports (%d unresolved), %d functions, %d subroutines",
        len(alias),
        len(unresolved),
        len(functions),
        len(subroutines),
    )
    return table


def classify_callable(name: str, context: str, table: SymbolTable) -> CallableKind:
    """
    Decide what ``name(...)`` means inside module ``context``.

    Checked in order: function, subroutine, intrinsic, declared array.
    Anything else is ``UNKNOWN``, which callers treat as an array.

    Args:
        name (str): Lower-case identifier.
        context (str): Module the expression appears in.
        table (SymbolTable): Resolved symbols.

    Returns:
        CallableKind: Classification.
    """
    definition = table.lookup_subprogram(name, context)
    if definition is not None:
        return CallableKind.FUNCTION if definition.is_function else CallableKind.SUBROUTINE
    if name in table.intrinsics:
        return CallableKind.INTRINSIC
    if table.is_array(name, context):
        return CallableKind.ARRAY
    return CallableKind.UNKNOWN

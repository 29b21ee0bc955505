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
    Module: ast_nodes.py

    Expression and statement nodes produced by the MiniFort parser.

    Expression trees have VariableRef, Literal and CallNode leaves joined by
    Operation nodes. Array index expressions never reach the tree: an indexed
    reference to a known array becomes a VariableRef with ``is_indexed`` set,
    so arrays are atomic everywhere downstream.

    Classes:
        VariableRef: Reference to a variable, possibly through a derived-type chain.
        Literal: Numeric, logical or character constant.
        CallNode: ``name(args)`` whose meaning (function, intrinsic, array) is
                  decided later by the symbol table.
        Operation: Operator applied to operands.
        StatementKind: assignment | call | declaration | other.
        Declared: One entity of a declaration statement.
        Statement: One logical MiniFort statement with its line number.

    Functions:
        variable_refs: All VariableRefs of an expression, including call arguments.
        call_nodes: All CallNodes of an expression, depth-first.
        canonical_of: Canonical name of a VariableRef.

    Authors:
        - discoloc contributors

    Version Info:
        - 14/Oct/2026: Initial version

"""

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional, Tuple, Union


@dataclass(frozen=True)
class VariableRef:
    """
    A variable reference.

    Attributes:
        base_name (str): Leading identifier, e.g. ``elem`` in ``elem(ie)%derived%omega_p``.
        derived_path (Tuple[str, ...]): Component identifiers after ``%``.
        is_indexed (bool): True when any part of the reference carried indices.
    """

    base_name: str
    derived_path: Tuple[str, ...] = ()
    is_indexed: bool = False

    @property
    def canonical_name(self) -> str:
        return canonical_of(self)


@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class CallNode:
    """
    ``name(args)`` where name is not a known local array.

    Attributes:
        name (str): Callable or array name, lower case.
        args (Tuple[Expression, ...]): Positional actual arguments.
        keywords (Tuple[Tuple[str, Expression], ...]): ``formal=actual`` arguments.
    """

    name: str
    args: Tuple["Expression", ...] = ()
    keywords: Tuple[Tuple[str, "Expression"], ...] = ()

    @property
    def arity(self) -> int:
        return len(self.args) + len(self.keywords)


@dataclass(frozen=True)
class Operation:
    operator: str
    operands: Tuple["Expression", ...]


Expression = Union[VariableRef, Literal, CallNode, Operation]


class StatementKind(str, Enum):
    ASSIGNMENT = "assignment"
    CALL = "call"
    DECLARATION = "declaration"
    OTHER = "other"


@dataclass(frozen=True)
class Declared:
    """One declared entity: ``real, intent(in) :: x(10)`` gives name x, array, intent in."""

    name: str
    type_spec: str
    is_array: bool = False
    intent: Optional[str] = None
    is_pointer: bool = False
    visibility: Optional[str] = None


@dataclass(frozen=True)
class Statement:
    """
    One logical statement.

    Only the fields relevant to ``kind`` are populated: ``lhs``/``rhs`` for
    assignments, ``callee``/``args``/``keywords`` for calls, ``declared`` for
    declarations. ``diagnostic`` is set only on statements the parser could
    not understand.
    """

    kind: StatementKind
    line: int
    text: str = ""
    lhs: Optional[VariableRef] = None
    rhs: Optional[Expression] = None
    callee: Optional[str] = None
    args: Tuple[Expression, ...] = ()
    keywords: Tuple[Tuple[str, Expression], ...] = ()
    declared: Tuple[Declared, ...] = ()
    diagnostic: Optional[str] = None

    def __post_init__(self):
        if self.line < 1:
            raise ValueError("Statement line numbers start at 1.")
        if self.kind is StatementKind.ASSIGNMENT and (
            self.lhs is None or self.rhs is None
        ):
            raise ValueError("An assignment needs exactly one lhs and an rhs.")

    def as_call(self) -> CallNode:
        """Return the call statement as a CallNode."""
        if self.kind is not StatementKind.CALL:
            raise ValueError("Only call statements convert to CallNode.")
        return CallNode(self.callee, self.args, self.keywords)


def canonical_of(ref: VariableRef) -> str:
    """
    Canonical name of a reference: the last derived-type component when there
    is one, otherwise the base name. Indices never take part.

    Args:
        ref (VariableRef): The reference.

    Returns:
        str: e.g. ``omega_p`` for ``elem(ie)%derived%omega_p``.
    """
    return ref.derived_path[-1] if ref.derived_path else ref.base_name


def variable_refs(expr: Optional[Expression]) -> Iterator[VariableRef]:
    """Yield every VariableRef in ``expr``, descending into call arguments."""
    if expr is None or isinstance(expr, Literal):
        return
    if isinstance(expr, VariableRef):
        yield expr
    elif isinstance(expr, Operation):
        for operand in expr.operands:
            yield from variable_refs(operand)
    elif isinstance(expr, CallNode):
        for arg in expr.args:
            yield from variable_refs(arg)
        for _, arg in expr.keywords:
            yield from variable_refs(arg)


def call_nodes(expr: Optional[Expression]) -> Iterator[CallNode]:
    """Yield every CallNode in ``expr``, outermost first."""
    if isinstance(expr, CallNode):
        yield expr
        for arg in expr.args:
            yield from call_nodes(arg)
        for _, arg in expr.keywords:
            yield from call_nodes(arg)
    elif isinstance(expr, Operation):
        for operand in expr.operands:
            yield from call_nodes(operand)


def call_depth(expr: Optional[Expression]) -> int:
    """Nesting depth of CallNodes in ``expr`` (0 when there is none)."""
    if isinstance(expr, CallNode):
        inner = [call_depth(a) for a in expr.args] + [
            call_depth(a) for _, a in expr.keywords
        ]
        return 1 + max(inner, default=0)
    if isinstance(expr, Operation):
        return max((call_depth(o) for o in expr.operands), default=0)
    return 0

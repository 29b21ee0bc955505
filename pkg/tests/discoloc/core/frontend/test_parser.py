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
    Module: test_parser.py

    Tests for the MiniFort parser: module structure, declarations and
    intents, use statements, continuation lines, expression shapes and the
    recovery from statements the parser does not understand.

    Authors:
        - discoloc contributors

    Version Info:
        - 17/Oct/2026: Initial version
"""

import pytest

from discoloc.core.errors import FatalSyntax, SourceIoError
from discoloc.core.frontend.ast_nodes import (
    CallNode,
    Literal,
    Operation,
    StatementKind,
    VariableRef,
    call_depth,
    canonical_of,
    variable_refs,
)
from discoloc.core.frontend.parser import parse_corpus, parse_unit

PHYSICS = """module physics
  use state, only: t, qv => q
  implicit none
  private
  public :: tend
  real :: profile(10)
contains
  subroutine tend(x, y)
    real, intent(in) :: x
    real, intent(out) :: y
    y = x * t + &
        qv  ! continued
    profile(3) = y; y = y + 1.0
    if (y > 0.0) y = sqrt(y)
    call helper(y)
  end subroutine tend
  subroutine helper(z)
    real :: z
    z = z * scale_factor(z)
  end subroutine helper
end module physics
"""


def _assignments(sub):
    return [s for s in sub.statements if s.kind is StatementKind.ASSIGNMENT]


@pytest.fixture
def physics():
    return parse_unit(PHYSICS, "physics.mf90")


def test_module_structure(physics):
    assert physics.module_name == "physics"
    assert physics.path == "physics.mf90"
    assert [sub.name for sub in physics.subprograms] == ["tend", "helper"]
    assert physics.bad_statements == []
    assert physics.public_symbols == frozenset({"tend"})
    assert physics.line_count == 21


def test_formals_and_intents(physics):
    tend = physics.subprogram("tend")
    helper = physics.subprogram("helper")
    assert tend.args == ("x", "y")
    assert tend.intent_of("x") == "in"
    assert tend.intent_of("y") == "out"
    # undeclared intent
    assert helper.intent_of("z") == "inout"
    assert tend.line == 8
    assert tend.end_line == 16


def test_use_with_only_list_and_rename(physics):
    (use,) = physics.uses
    assert use.source_module == "state"
    assert use.only_list == (("t", "t"), ("q", "qv"))
    assert use.scope is None


def test_assignments_keep_their_starting_line(physics):
    tend = physics.subprogram("tend")
    lines = [(s.line, s.lhs.base_name) for s in _assignments(tend)]
    assert lines == [(11, "y"), (13, "profile"), (13, "y"), (14, "y")]

    first = _assignments(tend)[0]
    assert sorted(ref.base_name for ref in variable_refs(first.rhs)) == ["qv", "t", "x"]


def test_array_element_is_not_a_call(physics):
    element = _assignments(physics.subprogram("tend"))[1]
    assert element.lhs == VariableRef("profile", (), True)
    assert "profile" in physics.array_names


def test_single_line_if_carries_the_assignment(physics):
    guarded = _assignments(physics.subprogram("tend"))[3]
    assert isinstance(guarded.rhs, CallNode)
    assert guarded.rhs.name == "sqrt"


def test_call_statement(physics):
    calls = [s for s in physics.subprogram("tend").statements if s.kind is StatementKind.CALL]
    assert len(calls) == 1
    assert calls[0].callee == "helper"
    assert calls[0].args == (VariableRef("y"),)
    assert calls[0].as_call().arity == 1


def test_derived_type_reference():
    unit = parse_unit(
        "module dyn\ncontains\n  subroutine step(elem, ie)\n    integer :: ie\n"
        "    elem(ie)%derived%omega_p = elem(ie)%state%t * 2.0\n"
        "  end subroutine step\nend module dyn\n"
    )
    (assignment,) = _assignments(unit.subprogram("step"))
    assert assignment.lhs.canonical_name == "omega_p"
    assert assignment.lhs.derived_path == ("derived", "omega_p")
    assert assignment.lhs.is_indexed
    assert [ref.canonical_name for ref in variable_refs(assignment.rhs)] == ["t"]


def test_pointer_assignment_and_function_header():
    unit = parse_unit(
        "module ptr\ncontains\n  real(r8) function ratio(a, b) result(r)\n"
        "    real, intent(in) :: a, b\n    r = a / b\n  end function ratio\n"
        "  subroutine link(p, x)\n    p => x\n  end subroutine link\nend module ptr\n"
    )
    ratio = unit.subprogram("ratio")
    assert ratio.is_function
    assert ratio.result_variable == "r"
    assert ratio.args == ("a", "b")
    (pointer,) = _assignments(unit.subprogram("link"))
    assert pointer.lhs.base_name == "p"
    assert pointer.rhs == VariableRef("x")


def test_expression_precedence():
    unit = parse_unit("module e\n  y = -a + b * c ** 2\nend module e\n")
    (assignment,) = [s for s in unit.statements if s.kind is StatementKind.ASSIGNMENT]
    expected = Operation(
        "+",
        (
            Operation("neg", (VariableRef("a"),)),
            Operation("*", (VariableRef("b"), Operation("**", (VariableRef("c"), Literal("2"))))),
        ),
    )
    assert assignment.rhs == expected


def test_nested_call_depth():
    unit = parse_unit("module n\n  w = alpha(b(c, d) * e(f(g + h)))\nend module n\n")
    (assignment,) = [s for s in unit.statements if s.kind is StatementKind.ASSIGNMENT]
    assert call_depth(assignment.rhs) == 3


def test_bad_statement_becomes_other_with_diagnostic():
    unit = parse_unit(
        "module broken\ncontains\n  subroutine s()\n    real :: a, b\n"
        "    a = = b\n    b = a + 1.0\n  end subroutine s\nend module broken\n"
    )
    bad = unit.bad_statements
    assert len(bad) == 1
    assert bad[0].kind is StatementKind.OTHER
    assert bad[0].line == 5
    assert unit.diagnostics
    # parsing continues after the bad statement
    assert [s.line for s in _assignments(unit.subprogram("s"))] == [6]


def test_missing_end_module_is_a_diagnostic():
    unit = parse_unit("module open\n  real :: a\n  a = 1.0\n")
    assert any("not terminated" in d.message for d in unit.diagnostics)


@pytest.mark.parametrize(
    "text",
    ["", "! comment only\n", "subroutine s()\nend subroutine s\n", "module\n", "module a b\n"],
)
def test_malformed_header_is_fatal(text):
    with pytest.raises(FatalSyntax):
        parse_unit(text, "bad.mf90")


def test_parse_corpus(tmp_path):
    (tmp_path / "b.mf90").write_text("module beta\n  real :: x\nend module beta\n")
    (tmp_path / "sub").mkdir()
    (tmp_path / "sub" / "a.mf90").write_text("module alpha\n  real :: y\nend module alpha\n")
    (tmp_path / "notes.txt").write_text("not a source file")

    corpus = parse_corpus(tmp_path)
    assert corpus.module_names == ("alpha", "beta")
    assert corpus.summary()["modules"] == 2


def test_parse_corpus_input_errors(tmp_path):
    with pytest.raises(SourceIoError):
        parse_corpus(tmp_path / "missing")
    with pytest.raises(SourceIoError):
        parse_corpus(tmp_path)

    (tmp_path / "one.mf90").write_text("module same\nend module same\n")
    (tmp_path / "two.mf90").write_text("module same\nend module same\n")
    with pytest.raises(ValueError):
        parse_corpus(tmp_path)


@pytest.mark.parametrize(
    "ref, expected",
    [
        (VariableRef("x"), "x"),
        (VariableRef("q", (), True), "q"),
        (VariableRef("elem", ("derived", "omega_p"), True), "omega_p"),
    ],
)
def test_canonical_of(ref, expected):
    assert canonical_of(ref) == expected
    assert ref.canonical_name == expected

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

import pytest

from discoloc.core.frontend.parser import parse_unit
from discoloc.core.frontend.symbols import CallableKind, classify_callable, resolve_uses
from discoloc.core.frontend.units import SourceCorpus

STATE = """module state
  real :: t, q
  real, private :: hidden
end module state
"""

LIB = """module lib
contains
  function f(x)
    real, intent(in) :: x
    real :: f
    f = x
  end function f
  subroutine s(y)
    real :: y
    y = 1.0
  end subroutine s
end module lib
"""

MOD_A = """module mod_a
  use state, qq => q
  use lib
  real :: arr(5)
end module mod_a
"""

MOD_B = """module mod_b
  use state, only: hidden
  use nowhere
end module mod_b
"""


def _corpus(*sources):
    return SourceCorpus(tuple(parse_unit(text) for text in sources))


@pytest.fixture(scope="module")
def table():
    return resolve_uses(_corpus(STATE, LIB, MOD_A, MOD_B))


def test_public_symbols_respect_private_attribute():
    unit = parse_unit(STATE)
    assert unit.public_symbols == frozenset({"t", "q"})


def test_rename_without_only_list(table):
    assert table.resolve_alias("mod_a", "qq") == ("state", "q")
    assert table.resolve_alias("mod_a", "t") == ("state", "t")
    assert table.resolve_alias("mod_a", "q") is None
    assert table.resolve_alias("mod_a", "hidden") is None


def test_unresolved_imports_are_diagnostics(table):
    assert ("mod_b", "hidden") in table.unresolved
    messages = [d.message for d in table.diagnostics]
    assert any("unresolved module 'nowhere'" in m for m in messages)
    assert any("unresolved import 'hidden'" in m for m in messages)


@pytest.mark.parametrize(
    "name, kind",
    [
        ("f", CallableKind.FUNCTION),
        ("s", CallableKind.SUBROUTINE),
        ("sqrt", CallableKind.INTRINSIC),
        ("arr", CallableKind.ARRAY),
        ("zz", CallableKind.UNKNOWN),
    ],
)
def test_classify_callable(table, name, kind):
    assert classify_callable(name, "mod_a", table) is kind


def test_registries(table):
    assert set(table.functions) == {"f"}
    assert set(table.subroutines) == {"s"}
    assert table.arrays["mod_a"] == frozenset({"arr"})
    assert table.module_variables["state"] == frozenset({"t", "q", "hidden"})


def test_duplicate_definition_keeps_first_module():
    other = LIB.replace("module lib", "module lib2")
    table = resolve_uses(_corpus(LIB, other))
    assert table.functions["f"].module == "lib"
    assert any("also defined" in d.message for d in table.diagnostics)
    # inside its own module the local definition wins
    assert table.lookup_subprogram("f", "lib2").module == "lib2"


def test_resolution_does_not_depend_on_input_order():
    forward = resolve_uses(_corpus(STATE, LIB, MOD_A, MOD_B))
    backward = resolve_uses(_corpus(MOD_B, MOD_A, LIB, STATE))
    assert forward.local_alias == backward.local_alias
    assert forward.unresolved == backward.unresolved

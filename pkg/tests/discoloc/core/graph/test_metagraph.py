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
    Module: test_metagraph.py

    Tests for compiling a resolved corpus into the metagraph: argument
    association by intent, nested calls, localized intrinsics, use-aliases
    and deterministic output.

    Authors:
        - discoloc contributors

    Version Info:
        - 17/Oct/2026: Initial version
"""

import pytest

from discoloc.core.frontend.parser import parse_unit
from discoloc.core.frontend.symbols import resolve_uses
from discoloc.core.frontend.units import SourceCorpus
from discoloc.core.graph.export import export_graph
from discoloc.core.errors import ArityMismatch
from discoloc.core.frontend.ast_nodes import CallNode, VariableRef
from discoloc.core.graph.metagraph import (
    MetaGraph,
    build_metagraph,
    map_call,
    node_id,
    split_node_id,
)
from discoloc.core.synthetic.generators import composite_call_corpus

LIB = """module lib
contains
  subroutine s(a, b, c)
    real, intent(in) :: a
    real, intent(out) :: b
    real, intent(inout) :: c
    b = a + c
  end subroutine s
end module lib
"""

BODY_EDGES = {("a__s", "b__s"), ("c__s", "b__s")}


def _build(*sources):
    corpus = SourceCorpus(tuple(parse_unit(text) for text in sources))
    return build_metagraph(corpus, resolve_uses(corpus))


def _caller(statement):
    return (
        "module app\n  use lib\ncontains\n  subroutine run()\n    real :: x, y, z, w\n"
        f"    {statement}\n  end subroutine run\nend module app\n"
    )


def test_composite_call_edges():
    g = _build(*composite_call_corpus().sources.values())
    assert set(g.edges) == {
        ("g__driver", "x__f"),
        ("h__driver", "x__f"),
        ("f_result__f", "x__e"),
        ("c__driver", "p1__b"),
        ("d__driver", "p2__b"),
        ("b_result__b", "x__alpha"),
        ("e_result__e", "x__alpha"),
        ("alpha_result__alpha", "w__driver"),
    }


@pytest.mark.parametrize("statement", ["call s(x, y, z)", "call s(x, c=z, b=y)"])
def test_intent_directions(statement):
    g = _build(LIB, _caller(statement))
    assert set(g.edges) == BODY_EDGES | {
        ("x__run", "a__s"),
        ("b__s", "y__run"),
        ("z__run", "c__s"),
        ("c__s", "z__run"),
    }


def test_arity_mismatch_skips_the_call():
    g = _build(LIB, _caller("call s(x, y, z, w)"))
    assert set(g.edges) == BODY_EDGES
    assert any("call skipped" in d.message for d in g.diagnostics)


def test_intrinsic_calls_are_localized_per_line():
    g = _build(
        "module m\ncontains\n  subroutine k()\n    real :: a, b, y\n"
        "    y = max(a, b)\n  end subroutine k\nend module m\n"
    )
    assert set(g.edges) == {("a__k", "max_5__m"), ("b__k", "max_5__m"), ("max_5__m", "y__k")}
    assert g.meta["max_5__m"].canonical_name == "max_5"


def test_use_alias_routes_to_defining_module():
    state = "module state\n  real :: t, q\nend module state\n"
    phys = (
        "module phys\n  use state, qq => q\ncontains\n  subroutine tend()\n    real :: x\n"
        "    x = t + qq\n  end subroutine tend\nend module phys\n"
    )
    g = _build(state, phys)
    assert set(g.edges) == {("t__state", "x__tend"), ("q__state", "x__tend")}
    assert g.meta["q__state"].module == "state"
    assert g.meta["x__tend"].subprogram == "tend"
    assert g.meta["x__tend"].lines == frozenset({6})


def test_derived_type_component_node():
    g = _build(
        "module dyn\ncontains\n  subroutine step(elem, w)\n"
        "    elem(1)%derived%omega_p = w\n  end subroutine step\nend module dyn\n"
    )
    assert set(g.edges) == {("w__step", "omega_p__step")}
    assert g.name_index["omega_p"] == frozenset({"omega_p__step"})


def test_unknown_callable_is_treated_as_array():
    g = _build("module m\n  real :: y, i\n  y = lookup(i)\nend module m\n")
    assert ("lookup__m", "y__m") in set(g.edges)
    assert any("unknown callable 'lookup'" in d.message for d in g.diagnostics)


def test_build_is_deterministic():
    sources = list(composite_call_corpus().sources.values())
    first = export_graph(_build(*sources), "json")
    second = export_graph(_build(*reversed(sources)), "json")
    assert first == second


def test_node_ids():
    assert node_id("max_5", "m") == "max_5__m"
    assert split_node_id("max_5__m") == ("max_5", "m")
    assert split_node_id("a__b__sub") == ("a__b", "sub")
    assert split_node_id("plain") == ("plain", "")


def test_subgraph_is_induced():
    g = MetaGraph.from_edges([("a__m", "b__m"), ("b__m", "c__m"), ("a__m", "c__m")])
    sub = g.subgraph(["a__m", "c__m", "unknown__m"])
    assert sub.nodes == ["a__m", "c__m"]
    assert sub.edges == [("a__m", "c__m")]
    assert sub.meta["a__m"].module == "m"


def test_metadata_must_cover_every_node():
    g = MetaGraph.from_edges([("a__m", "b__m")])
    with pytest.raises(ValueError):
        MetaGraph(g.digraph, {"a__m": g.meta["a__m"]})


def test_read_and_write_in_one_statement_makes_a_self_loop():
    g = _build(
        "module m\ncontains\n  subroutine k()\n    real :: x, dt\n"
        "    x = x + dt\n  end subroutine k\nend module m\n"
    )
    assert set(g.edges) == {("x__k", "x__k"), ("dt__k", "x__k")}


def test_traversed_edges_must_exist():
    g = MetaGraph.from_edges([("a__m", "b__m"), ("b__m", "c__m")])
    marked = g.with_traversed([("a__m", "b__m"), ("c__m", "a__m")])
    assert marked.traversed == frozenset({("a__m", "b__m")})
    assert not g.traversed
    assert marked.subgraph(["b__m", "c__m"]).traversed == frozenset()


def test_map_call_outside_a_build():
    callee = parse_unit(LIB).subprograms[0]
    actuals = tuple(VariableRef(name) for name in ("x", "y", "z"))
    edges = map_call(CallNode("s", actuals), callee)
    assert set(edges) == {
        ("x__main", "a__s"),
        ("b__s", "y__main"),
        ("z__main", "c__s"),
        ("c__s", "z__main"),
    }
    with pytest.raises(ArityMismatch):
        map_call(CallNode("s", actuals + (VariableRef("w"),)), callee)


def test_same_subprogram_name_in_two_modules_stays_apart():
    def init_module(module, source):
        return (
            f"module {module}\ncontains\n  subroutine init()\n    real :: x, {source}\n"
            f"    x = {source} + 1\n  end subroutine init\nend module {module}\n"
        )

    g = _build(init_module("a", "p"), init_module("b", "q"))
    assert set(g.edges) == {("p__a_init", "x__a_init"), ("q__b_init", "x__b_init")}
    assert g.name_index["x"] == frozenset({"x__a_init", "x__b_init"})
    assert g.meta["x__a_init"].module == "a"
    assert g.meta["x__b_init"].module == "b"
    assert g.meta["x__b_init"].subprogram == "init"
    assert any("defined in several modules" in d.message for d in g.diagnostics)

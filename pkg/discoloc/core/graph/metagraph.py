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
    Module: metagraph.py

    Compiles a resolved MiniFort corpus into the metagraph: one node per
    (canonical name, scope) and a directed edge u -> v whenever the value of u
    can influence the value of v through an assignment or an argument
    association.

    Node identifiers are ``<canonical>__<suffix>`` where the suffix is the
    subprogram containing the variable, or the module for module-level
    variables. Subprogram names defined in several modules are suffixed
    ``<module>_<subprogram>``. Formal parameters live in the callee's scope
    (``a__sub``), function results are ``<f>_result__<f>`` and every
    intrinsic call is localized to ``<intrinsic>_<line>__<module>``.

    Classes:
        NodeMeta: Location and canonical name of a node.
        MetaGraph: Frozen networkx digraph plus metadata and symbols.
        CallerScope: Module and subprogram a statement is compiled in.
        MetaGraphBuilder: Single-use compiler from corpus to MetaGraph.

    Functions:
        build_metagraph: Compile a corpus.
        map_call: Edges of one call against its callee definition.
        node_id: Compose a node identifier.
        split_node_id: Inverse of node_id.

    Dependencies:
        - networkx: digraph container

    Authors:
        - discoloc contributors

    Version Info:
        - 14/Oct/2026: Initial version

"""

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import networkx as nx

from ..errors import ArityMismatch
from ..frontend.ast_nodes import (
    CallNode,
    Expression,
    Literal,
    Operation,
    Statement,
    StatementKind,
    VariableRef,
    canonical_of,
)
from ..frontend.symbols import CallableKind, SymbolTable, classify_callable
from ..frontend.units import Diagnostic, Severity, SourceCorpus, SubprogramDef
from ..utils.log_utils import get_logger

logger = get_logger(__name__)

SEPARATOR = "__"

Edge = Tuple[str, str]


def node_id(canonical: str, suffix: str) -> str:
    return f"{canonical}{SEPARATOR}{suffix}"


def split_node_id(node: str) -> Tuple[str, str]:
    """Split ``canonical__suffix`` at the last separator."""
    canonical, sep, suffix = node.rpartition(SEPARATOR)
    if not sep or not canonical:
        return node, ""
    return canonical, suffix


@dataclass(frozen=True)
class NodeMeta:
    """
    Attributes:
        canonical_name (str): Identifier before scope suffixing.
        module (str): Module containing the variable.
        subprogram (Optional[str]): Containing subprogram, None at module level.
        lines (FrozenSet[int]): Lines where the node is assigned.
    """

    canonical_name: str
    module: str
    subprogram: Optional[str] = None
    lines: FrozenSet[int] = frozenset()

    def __post_init__(self):
        if not self.canonical_name:
            raise ValueError("canonical_name must not be empty")
        object.__setattr__(self, "lines", frozenset(self.lines))

    def to_dict(self, node: str) -> Dict:
        return {
            "id": node,
            "canonical": self.canonical_name,
            "module": self.module,
            "subprogram": self.subprogram,
            "lines": sorted(self.lines),
        }


class MetaGraph:
    """
    Variable dependency digraph with node metadata.

    The digraph is frozen on construction; analytics only ever read it.
    ``name_index`` maps every canonical name to the nodes carrying it.

    Args:
        digraph (nx.DiGraph): Nodes are NodeIds, an edge u -> v means u influences v.
            Edge attribute ``lines`` holds the source lines that produced it.
        meta (Dict[str, NodeMeta]): Metadata for every node.
        symbols (Optional[SymbolTable]): Table the graph was built with.
        diagnostics (Iterable[Diagnostic]): Build diagnostics.
        traversed (Iterable[Edge]): Edges known to be exercised at runtime.
    """

    def __init__(
        self,
        digraph: nx.DiGraph,
        meta: Dict[str, NodeMeta],
        symbols: Optional[SymbolTable] = None,
        diagnostics: Iterable[Diagnostic] = (),
        traversed: Iterable[Edge] = (),
    ):
        missing = set(digraph.nodes) ^ set(meta)
        if missing:
            raise ValueError(f"Nodes and metadata disagree on {sorted(missing)[:5]}")
        self.digraph = nx.freeze(digraph)
        self.meta = dict(meta)
        self.symbols = symbols if symbols is not None else SymbolTable()
        self.diagnostics = tuple(diagnostics)
        self.traversed = frozenset(e for e in traversed if digraph.has_edge(*e))
        index: Dict[str, Set[str]] = defaultdict(set)
        for node, info in self.meta.items():
            index[info.canonical_name].add(node)
        self.name_index: Dict[str, FrozenSet[str]] = {k: frozenset(v) for k, v in index.items()}

    def __len__(self) -> int:
        return self.digraph.number_of_nodes()

    def __contains__(self, node: str) -> bool:
        return node in self.meta

    @property
    def nodes(self) -> List[str]:
        return sorted(self.digraph.nodes)

    @property
    def edges(self) -> List[Edge]:
        return sorted(self.digraph.edges)

    @property
    def number_of_edges(self) -> int:
        return self.digraph.number_of_edges()

    @property
    def modules(self) -> List[str]:
        return sorted({info.module for info in self.meta.values()})

    def subgraph(self, nodes: Iterable[str]) -> "MetaGraph":
        """Induced subgraph on ``nodes`` (unknown ids are ignored)."""
        keep = [n for n in nodes if n in self.meta]
        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(keep))
        graph.add_edges_from(
            (u, v, dict(data)) for u, v, data in sorted(self.digraph.subgraph(keep).edges(data=True))
        )
        return MetaGraph(
            graph,
            {n: self.meta[n] for n in keep},
            self.symbols,
            self.diagnostics,
            (e for e in self.traversed if e[0] in graph and e[1] in graph),
        )

    def with_traversed(self, edges: Iterable[Edge]) -> "MetaGraph":
        """Copy of the graph with ``edges`` marked as traversed."""
        graph = nx.DiGraph(self.digraph)
        traversed = set(self.traversed) | set(edges)
        return MetaGraph(graph, self.meta, self.symbols, self.diagnostics, traversed)

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[Edge],
        nodes: Iterable[str] = (),
        module: Optional[str] = None,
    ) -> "MetaGraph":
        """
        Build a graph straight from NodeId pairs.

        Metadata is derived from the ids: the canonical name is the part
        before the last ``__`` and the suffix is used as module unless
        ``module`` is given.
        """
        graph = nx.DiGraph()
        graph.add_nodes_from(nodes)
        graph.add_edges_from(edges, lines=frozenset())
        meta = {}
        for node in graph.nodes:
            canonical, suffix = split_node_id(node)
            owner = module or suffix or "main"
            meta[node] = NodeMeta(canonical, owner, suffix if suffix and suffix != owner else None)
        return cls(graph, meta)


@dataclass(frozen=True)
class CallerScope:
    module: str
    subprogram: Optional[SubprogramDef] = None

    @property
    def suffix(self) -> str:
        return self.subprogram.name if self.subprogram is not None else self.module


@dataclass
class _BuildState:
    meta: Dict[str, Dict] = field(default_factory=dict)
    edges: Dict[Edge, Set[int]] = field(default_factory=lambda: defaultdict(set))
    diagnostics: List[Diagnostic] = field(default_factory=list)
    intrinsic_uses: Dict[str, int] = field(default_factory=lambda: defaultdict(int))


class MetaGraphBuilder:
    """
    Compiles statements into metagraph nodes and edges.

    Variables are resolved in this order: the function result variable,
    locals and formals of the current subprogram, module-level variables of
    the current module, use-aliases (routed to the defining module's node),
    and finally an implicit local of the current scope.

    Subprogram-scoped nodes are suffixed with the subprogram name. A name
    defined in more than one module is suffixed with ``module_subprogram``
    instead, so NodeIds stay globally unique.

    Args:
        table (SymbolTable): Resolved symbols of the corpus.
    """

    def __init__(self, table: SymbolTable):
        self.table = table
        self.state = _BuildState()
        counts = Counter(name for _, name in table.subprograms)
        self.shared_names = frozenset(name for name, n in counts.items() if n > 1)

    def scope_suffix(self, sub: SubprogramDef) -> str:
        """NodeId suffix of variables local to ``sub``."""
        if sub.name in self.shared_names:
            return f"{sub.module}_{sub.name}"
        return sub.name

    # -- nodes ---------------------------------------------------------------
    def _register(self, node: str, canonical: str, module: str, subprogram: Optional[str]) -> str:
        if node not in self.state.meta:
            self.state.meta[node] = {
                "canonical": canonical,
                "module": module,
                "subprogram": subprogram,
                "lines": set(),
            }
        return node

    def _diagnose(self, scope: CallerScope, line: int, message: str) -> None:
        self.state.diagnostics.append(Diagnostic(Severity.WARNING, scope.module, line, message))

    def variable_node(self, ref: VariableRef, scope: CallerScope) -> str:
        """NodeId of a variable reference seen inside ``scope``."""
        base = ref.base_name
        canonical = canonical_of(ref)
        sub = scope.subprogram
        if sub is not None and not ref.derived_path and base == sub.result_variable:
            return self.result_node(sub)
        if sub is not None and base in sub.local_names:
            node = node_id(canonical, self.scope_suffix(sub))
            return self._register(node, canonical, scope.module, sub.name)
        if base in self.table.module_variables.get(scope.module, frozenset()):
            return self._register(node_id(canonical, scope.module), canonical, scope.module, None)
        target = self.table.resolve_alias(scope.module, base)
        if target is not None:
            owner, remote = target
            canonical = canonical if ref.derived_path else remote
            return self._register(node_id(canonical, owner), canonical, owner, None)
        if sub is not None:
            node = node_id(canonical, self.scope_suffix(sub))
            return self._register(node, canonical, scope.module, sub.name)
        return self._register(node_id(canonical, scope.module), canonical, scope.module, None)

    def result_node(self, function: SubprogramDef) -> str:
        canonical = f"{function.name}_result"
        return self._register(
            node_id(canonical, self.scope_suffix(function)),
            canonical,
            function.module,
            function.name,
        )

    def formal_node(self, formal: str, callee: SubprogramDef) -> str:
        node = node_id(formal, self.scope_suffix(callee))
        return self._register(node, formal, callee.module, callee.name)

    def intrinsic_node(self, name: str, line: int, scope: CallerScope) -> str:
        canonical = f"{name}_{line}"
        node = node_id(canonical, scope.module)
        self.state.intrinsic_uses[node] += 1
        if self.state.intrinsic_uses[node] == 2:
            self._diagnose(scope, line, f"several '{name}' calls on one line share node {node}")
        sub = scope.subprogram.name if scope.subprogram is not None else None
        return self._register(node, canonical, scope.module, sub)

    # -- expressions ---------------------------------------------------------
    def sources(
        self, expr: Optional[Expression], scope: CallerScope, line: int, edges: List[Edge]
    ) -> List[str]:
        """
        Nodes whose values flow out of ``expr``.

        Nested calls are expanded depth-first: their argument edges are
        appended to ``edges`` and the call contributes its output node
        (function result or localized intrinsic).
        """
        if expr is None or isinstance(expr, Literal):
            return []
        if isinstance(expr, VariableRef):
            return [self.variable_node(expr, scope)]
        if isinstance(expr, Operation):
            found: List[str] = []
            for operand in expr.operands:
                for node in self.sources(operand, scope, line, edges):
                    if node not in found:
                        found.append(node)
            return found
        if isinstance(expr, CallNode):
            return self._call_sources(expr, scope, line, edges)
        raise TypeError(f"Unexpected expression node {expr!r}")

    def _call_sources(
        self, call: CallNode, scope: CallerScope, line: int, edges: List[Edge]
    ) -> List[str]:
        kind = classify_callable(call.name, scope.module, self.table)
        if kind is CallableKind.FUNCTION:
            callee = self.table.lookup_subprogram(call.name, scope.module)
            try:
                edges.extend(self.map_call(call, callee, scope, line))
            except ArityMismatch as exc:
                self._diagnose(scope, line, str(exc))
            return [self.result_node(callee)]
        if kind is CallableKind.INTRINSIC:
            node = self.intrinsic_node(call.name, line, scope)
            arguments = list(call.args) + [value for _, value in call.keywords]
            for argument in arguments:
                for source in self.sources(argument, scope, line, edges):
                    edges.append((source, node))
            return [node]
        if kind is CallableKind.SUBROUTINE:
            self._diagnose(scope, line, f"subroutine '{call.name}' used as a value, treated as an array")
        elif kind is CallableKind.UNKNOWN:
            self._diagnose(scope, line, f"unknown callable '{call.name}' treated as an array")
        return [self.variable_node(VariableRef(call.name, (), True), scope)]

    def _target_node(self, actual: Expression, scope: CallerScope) -> Optional[str]:
        """Node written by an out-association, None when the actual is not a variable."""
        if isinstance(actual, VariableRef):
            return self.variable_node(actual, scope)
        if isinstance(actual, CallNode):
            kind = classify_callable(actual.name, scope.module, self.table)
            if kind in (CallableKind.ARRAY, CallableKind.UNKNOWN):
                return self.variable_node(VariableRef(actual.name, (), True), scope)
        return None

    # -- calls ---------------------------------------------------------------
    def map_call(
        self, call: CallNode, callee: SubprogramDef, scope: CallerScope, line: int
    ) -> List[Edge]:
        """
        Edges of ``call`` against the definition ``callee``.

        Actuals associate with formals by position, then by keyword. Intent
        ``in`` gives actual -> formal for every source node of the actual,
        ``out`` gives formal -> actual when the actual is a variable, and
        ``inout`` (also the default for undeclared intents) gives both.

        Raises:
            ArityMismatch: More actuals than formals, an unknown keyword, or a
                formal associated twice.
        """
        formals = callee.args
        if len(call.args) > len(formals):
            raise ArityMismatch(
                f"call to '{callee.name}' passes {len(call.args)} positional arguments, "
                f"'{callee.name}' declares {len(formals)}"
            )
        pairs: List[Tuple[str, Expression]] = list(zip(formals, call.args))
        bound = {formal for formal, _ in pairs}
        for keyword, actual in call.keywords:
            if keyword not in formals or keyword in bound:
                raise ArityMismatch(f"call to '{callee.name}' has a bad keyword argument '{keyword}'")
            bound.add(keyword)
            pairs.append((keyword, actual))

        edges: List[Edge] = []
        for formal, actual in pairs:
            intent = callee.intent_of(formal)
            target = self.formal_node(formal, callee)
            if intent in ("in", "inout"):
                for source in self.sources(actual, scope, line, edges):
                    edges.append((source, target))
            if intent in ("out", "inout"):
                written = self._target_node(actual, scope)
                if written is not None:
                    edges.append((target, written))
                    self.state.meta[written]["lines"].add(line)
        return edges

    # -- statements ----------------------------------------------------------
    def _add_edges(self, edges: Iterable[Edge], line: int) -> None:
        for edge in edges:
            self.state.edges[edge].add(line)

    def compile_statement(self, statement: Statement, scope: CallerScope) -> None:
        line = statement.line
        if statement.kind is StatementKind.ASSIGNMENT:
            edges: List[Edge] = []
            sources = self.sources(statement.rhs, scope, line, edges)
            target = self.variable_node(statement.lhs, scope)
            self.state.meta[target]["lines"].add(line)
            edges.extend((source, target) for source in sources)
            self._add_edges(edges, line)
        elif statement.kind is StatementKind.CALL:
            call = statement.as_call()
            kind = classify_callable(call.name, scope.module, self.table)
            if kind not in (CallableKind.SUBROUTINE, CallableKind.FUNCTION):
                self._diagnose(scope, line, f"call to undefined subroutine '{call.name}' skipped")
                return
            callee = self.table.lookup_subprogram(call.name, scope.module)
            edges = []
            try:
                edges = self.map_call(call, callee, scope, line)
            except ArityMismatch as exc:
                self._diagnose(scope, line, f"{exc}, call skipped")
                return
            self._add_edges(edges, line)

    def build(self, corpus: SourceCorpus) -> MetaGraph:
        for unit in corpus:
            module_scope = CallerScope(unit.module_name)
            for statement in unit.statements:
                self.compile_statement(statement, module_scope)
            for sub in unit.subprograms:
                scope = CallerScope(unit.module_name, sub)
                if sub.name in self.shared_names:
                    self._diagnose(
                        scope,
                        sub.line,
                        f"'{sub.name}' is defined in several modules, "
                        f"its nodes use suffix '{self.scope_suffix(sub)}'",
                    )
                for statement in sub.statements:
                    self.compile_statement(statement, scope)

        graph = nx.DiGraph()
        graph.add_nodes_from(sorted(self.state.meta))
        for (u, v) in sorted(self.state.edges):
            graph.add_edge(u, v, lines=frozenset(self.state.edges[(u, v)]))
        meta = {
            node: NodeMeta(info["canonical"], info["module"], info["subprogram"], info["lines"])
            for node, info in self.state.meta.items()
        }
        diagnostics = list(self.table.diagnostics) + self.state.diagnostics
        for diagnostic in self.state.diagnostics:
            logger.debug(str(diagnostic))
        logger.info(
            "metagraph has %d nodes and %d edges (%d build diagnostics)",
            graph.number_of_nodes(),
            graph.number_of_edges(),
            len(self.state.diagnostics),
        )
        return MetaGraph(graph, meta, self.table, diagnostics)


def build_metagraph(corpus: SourceCorpus, table: SymbolTable) -> MetaGraph:
    """
    Compile a coverage-filtered, resolved corpus into a MetaGraph.

    Statements that cannot be compiled are skipped with a diagnostic.

    Args:
        corpus (SourceCorpus): Corpus to compile.
        table (SymbolTable): Output of resolve_uses on the same corpus.

    Returns:
        MetaGraph: The compiled graph.
    """
    return MetaGraphBuilder(table).build(corpus)


def map_call(
    call: CallNode,
    callee: SubprogramDef,
    table: Optional[SymbolTable] = None,
    scope: Optional[CallerScope] = None,
    line: int = 1,
) -> List[Edge]:
    """
    Edge list of a single call, computed outside of a full build.

    Args:
        call (CallNode): The call.
        callee (SubprogramDef): Definition of the called subprogram.
        table (Optional[SymbolTable]): Symbols used to classify nested calls.
        scope (Optional[CallerScope]): Caller scope, defaults to a module
            named ``main``.
        line (int): Line used for localized intrinsic nodes.

    Raises:
        ArityMismatch: More actuals than formals.
    """
    builder = MetaGraphBuilder(table if table is not None else SymbolTable())
    return builder.map_call(call, callee, scope or CallerScope("main"), line)

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
    Module: generators.py

    Seeded generators of test inputs: MiniFort corpora with an injected
    bug, the composite-call corpus, reference graphs and ensemble tables
    with shifted variables.

    Random corpus layout: a ``state`` module declares shared inputs
    ``t, q, u`` and one output ``out_k`` per physics module. Every
    ``phys_k`` module has a subroutine ``tend_k`` whose locals form layers;
    the first layer reads one of the shared inputs, every later variable reads one
    or two variables of the layer before, and the last layer feeds
    ``out_k``. The bug is a local of one ``tend_k``.

    Classes:
        SyntheticCorpus: Generated sources with the bug and slice targets.

    Functions:
        generate_corpus: Random layered corpus with one injected bug.
        composite_call_corpus: ``w = alpha(b(c, d) * e(f(g + h)))`` with stub functions.
        barbell_graph: Two cliques joined by one edge.
        preferential_attachment_digraph: Power-law digraph pointing at hubs.
        shifted_ensemble: Gaussian ensemble table with shifted experiment means.

    Dependencies:
        - numpy: random generator
        - networkx: reference graph constructors

    Authors:
        - discoloc contributors

    Version Info:
        - 16/Oct/2026: Initial version

"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, List, Mapping, Optional, Tuple

import networkx as nx
import numpy as np

from ..frontend.parser import SOURCE_SUFFIX, parse_unit
from ..frontend.units import SourceCorpus
from ..graph.metagraph import MetaGraph, node_id
from ..selection.ensemble import EnsembleTable

SHARED_INPUTS = ("t", "q", "u")


@dataclass(frozen=True)
class SyntheticCorpus:
    """
    Attributes:
        sources (Dict[str, str]): Module name to source text.
        bug_nodes (FrozenSet[str]): NodeIds of the injected bug.
        targets (Tuple[str, ...]): Canonical names of the output variables.
        seed (Optional[int]): Seed the corpus was generated with.
    """

    sources: Dict[str, str]
    bug_nodes: FrozenSet[str] = frozenset()
    targets: Tuple[str, ...] = ()
    seed: Optional[int] = None

    def parse(self) -> SourceCorpus:
        units = (
            parse_unit(text, f"{name}{SOURCE_SUFFIX}") for name, text in self.sources.items()
        )
        return SourceCorpus(tuple(units))

    def write(self, directory) -> List[Path]:
        """Write one ``<module>.mf90`` file per module."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        written = []
        for name, text in sorted(self.sources.items()):
            path = directory / f"{name}{SOURCE_SUFFIX}"
            path.write_text(text, encoding="utf-8")
            written.append(path)
        return written


def _layers(rng: np.random.Generator, count: int) -> List[List[str]]:
    names = [f"v{i}" for i in range(1, count + 1)]
    layers, start = [], 0
    while start < count:
        width = int(rng.integers(3, 5))
        if count - (start + width) < 2:
            width = count - start
        layers.append(names[start : start + width])
        start += width
    return layers


def _branch_module(k: int, rng: np.random.Generator) -> Tuple[str, List[str]]:
    count = int(rng.integers(14, 19))
    layers = _layers(rng, count)
    lines = [
        f"module phys_{k}",
        "  use state",
        "  implicit none",
        "contains",
        f"  subroutine tend_{k}()",
    ]
    lines.append("    real :: " + ", ".join(v for layer in layers for v in layer))

    previous = [str(rng.choice(SHARED_INPUTS))]
    for depth, layer in enumerate(layers):
        reads = {}
        unused = list(previous)
        for name in layer:
            picks = min(int(rng.integers(1, 3)), len(previous))
            chosen = [str(c) for c in rng.choice(previous, size=picks, replace=False)]
            if depth > 0 and unused and not set(chosen) & set(unused):
                chosen[0] = unused[0]
            unused = [c for c in unused if c not in chosen]
            reads[name] = chosen
        # every variable of the previous layer feeds this one
        if depth > 0:
            reads[layer[-1]] += unused
        for name in layer:
            coefficient = float(rng.uniform(0.1, 2.0))
            lines.append(f"    {name} = {coefficient:.3f} * (" + " + ".join(sorted(reads[name])) + ")")
        previous = layer
    lines.append(f"    out_{k} = " + " + ".join(previous))
    lines += [f"  end subroutine tend_{k}", f"end module phys_{k}", ""]
    locals_ = [v for layer in layers for v in layer]
    return "\n".join(lines), locals_


def generate_corpus(seed: int = 0, branches: Optional[int] = None) -> SyntheticCorpus:
    """
    Random layered corpus of roughly 150 to 300 graph nodes with one bug.

    Args:
        seed (int): Random seed.
        branches (Optional[int]): Number of ``phys_k`` modules, random in
            [9, 14] when None.

    Returns:
        SyntheticCorpus: Sources, bug NodeId and the ``out_k`` targets.
    """
    rng = np.random.default_rng(seed)
    count = int(rng.integers(9, 15)) if branches is None else branches
    if count < 1:
        raise ValueError("At least one branch module is required.")

    outputs = [f"out_{k}" for k in range(1, count + 1)]
    state = ["module state", "  implicit none", "  real :: " + ", ".join(SHARED_INPUTS)]
    state.append("  real :: " + ", ".join(outputs))
    state += ["end module state", ""]
    sources = {"state": "\n".join(state)}

    locals_by_branch = {}
    for k in range(1, count + 1):
        sources[f"phys_{k}"], locals_by_branch[k] = _branch_module(k, rng)

    bug_branch = int(rng.integers(1, count + 1))
    bug_local = str(rng.choice(locals_by_branch[bug_branch]))
    return SyntheticCorpus(
        sources,
        frozenset({node_id(bug_local, f"tend_{bug_branch}")}),
        tuple(outputs),
        seed,
    )


COMPOSITE_CALL_SOURCES = {
    "funcs": """module funcs
  implicit none
contains
  function alpha(x)
    real, intent(in) :: x
    real :: alpha
    alpha = 1.0
  end function alpha
  function b(p1, p2)
    real, intent(in) :: p1, p2
    real :: b
    b = 1.0
  end function b
  function e(x)
    real, intent(in) :: x
    real :: e
    e = 1.0
  end function e
  function f(x)
    real, intent(in) :: x
    real :: f
    f = 1.0
  end function f
end module funcs
""",
    "main": """module main
  use funcs
  implicit none
contains
  subroutine driver()
    real :: w, c, d, g, h
    w = alpha(b(c, d) * e(f(g + h)))
  end subroutine driver
end module main
""",
}


def composite_call_corpus() -> SyntheticCorpus:
    """
    ``w = alpha(b(c, d) * e(f(g + h)))`` with constant function bodies, so
    that only the call mapping contributes edges.
    """
    return SyntheticCorpus(dict(COMPOSITE_CALL_SOURCES), targets=("w",))


def barbell_graph(clique: int = 5, module: str = "bar") -> MetaGraph:
    """Two ``clique``-node cliques joined by a single edge, edges oriented low to high."""
    graph = nx.barbell_graph(clique, 0)
    names = {n: node_id(f"n{n}", module) for n in graph.nodes}
    edges = [(names[min(u, v)], names[max(u, v)]) for u, v in graph.edges]
    return MetaGraph.from_edges(edges, module=module)


def preferential_attachment_digraph(
    n: int = 200, m: int = 2, seed: int = 0, module: str = "pa"
) -> MetaGraph:
    """
    Barabasi-Albert graph with every edge directed from the newer node to
    the older one, so early hubs collect in-edges.
    """
    graph = nx.barabasi_albert_graph(n, m, seed=seed)
    names = {v: node_id(f"n{v}", module) for v in graph.nodes}
    edges = [(names[max(u, v)], names[min(u, v)]) for u, v in graph.edges]
    return MetaGraph.from_edges(edges, nodes=names.values(), module=module)


def shifted_ensemble(
    n_variables: int = 40,
    shifts: Optional[Mapping[str, float]] = None,
    ensemble_size: int = 30,
    experiment_size: int = 15,
    seed: int = 0,
    scales: Optional[Mapping[str, Tuple[float, float]]] = None,
) -> EnsembleTable:
    """
    Standard normal samples for ``var00, var01, ...``.

    Args:
        n_variables (int): Number of variables.
        shifts (Optional[Mapping[str, float]]): Experiment mean shift per
            variable, in ensemble standard deviations.
        ensemble_size (int): Members E.
        experiment_size (int): Runs X.
        seed (int): Random seed.
        scales (Optional[Mapping[str, Tuple[float, float]]]): Per-variable
            affine map ``(a, b)`` applied to both samples as ``a * v + b``.
    """
    rng = np.random.default_rng(seed)
    width = max(2, len(str(n_variables - 1)))
    variables = [f"var{i:0{width}d}" for i in range(n_variables)]
    unknown = set(shifts or {}) - set(variables)
    if unknown:
        raise ValueError(f"Unknown variables in shifts: {sorted(unknown)}")
    ensemble = rng.standard_normal((ensemble_size, n_variables))
    experiment = rng.standard_normal((experiment_size, n_variables))
    for j, name in enumerate(variables):
        experiment[:, j] += (shifts or {}).get(name, 0.0)
        if scales and name in scales:
            a, b = scales[name]
            ensemble[:, j] = a * ensemble[:, j] + b
            experiment[:, j] = a * experiment[:, j] + b
    return EnsembleTable.from_matrices(variables, ensemble, experiment)

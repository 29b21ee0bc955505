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

from discoloc.core.frontend.parser import parse_corpus
from discoloc.core.frontend.symbols import resolve_uses
from discoloc.core.graph.metagraph import build_metagraph
from discoloc.core.synthetic.generators import (
    barbell_graph,
    composite_call_corpus,
    generate_corpus,
    preferential_attachment_digraph,
    shifted_ensemble,
)


def _graph(corpus):
    parsed = corpus.parse()
    return build_metagraph(parsed, resolve_uses(parsed))


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_random_corpus_shape(seed):
    corpus = generate_corpus(seed)
    g = _graph(corpus)
    assert 130 <= len(g) <= 280
    assert corpus.bug_nodes <= set(g.nodes)
    assert all(target in g.name_index for target in corpus.targets)


def test_random_corpus_is_seeded():
    assert generate_corpus(5).sources == generate_corpus(5).sources
    assert generate_corpus(5).sources != generate_corpus(6).sources
    assert len(generate_corpus(0, branches=2).targets) == 2
    with pytest.raises(ValueError):
        generate_corpus(0, branches=0)


def test_written_corpus_parses_back(tmp_path):
    corpus = generate_corpus(3)
    written = corpus.write(tmp_path)
    assert len(written) == len(corpus.sources)
    assert parse_corpus(tmp_path).module_names == corpus.parse().module_names


def test_composite_corpus_modules():
    assert sorted(composite_call_corpus().sources) == ["funcs", "main"]


def test_reference_graphs():
    bar = barbell_graph(4)
    assert len(bar) == 8
    assert bar.number_of_edges == 2 * 6 + 1
    pa = preferential_attachment_digraph(n=50, m=2, seed=1)
    assert len(pa) == 50
    assert all(int(u[1:].split("__")[0]) > int(v[1:].split("__")[0]) for u, v in pa.edges)


def test_shifted_ensemble():
    table = shifted_ensemble(n_variables=12, shifts={"var05": 3.0}, ensemble_size=20, experiment_size=6)
    assert table.variables[0] == "var00"
    assert table.matrix("ensemble").shape == (20, 12)
    assert table.experiment["var05"].mean() > table.experiment["var04"].mean()
    with pytest.raises(ValueError):
        shifted_ensemble(n_variables=4, shifts={"var09": 1.0})

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

import json

import pytest

from discoloc.core.errors import SourceIoError
from discoloc.core.frontend.coverage import (
    CoverageReport,
    apply_coverage,
    corpus_summary,
    load_coverage,
)
from discoloc.core.frontend.parser import parse_unit
from discoloc.core.frontend.units import SourceCorpus

MODULE_A = """module a
  real :: g
contains
  subroutine s1()
    g = 1.0
  end subroutine s1
  subroutine s2()
    g = 2.0
  end subroutine s2
end module a
"""

MODULE_B = """module b
  real :: h
end module b
"""


@pytest.fixture
def corpus():
    return SourceCorpus((parse_unit(MODULE_A), parse_unit(MODULE_B)))


@pytest.fixture
def report():
    return CoverageReport.from_dict({"modules": [{"name": "A", "subprograms": ["S1"]}]})


def test_filtering_keeps_executed_code_only(corpus, report):
    filtered = apply_coverage(corpus, report)
    assert filtered.module_names == ("a",)
    unit = filtered.unit("a")
    assert [s.name for s in unit.subprograms] == ["s1"]
    assert "s2" not in unit.public_symbols
    # line numbers are untouched
    assert unit.subprograms[0].line == 4


def test_filtering_is_idempotent(corpus, report):
    once = apply_coverage(corpus, report)
    twice = apply_coverage(once, report)
    assert once == twice


def test_module_without_subprogram_list_is_kept_whole(corpus):
    report = CoverageReport.from_dict({"modules": [{"name": "a"}, {"name": "b"}]})
    filtered = apply_coverage(corpus, report)
    assert filtered.module_names == ("a", "b")
    assert len(filtered.unit("a").subprograms) == 2


def test_summary_before_and_after(corpus, report):
    summary = corpus_summary(corpus, apply_coverage(corpus, report))
    assert summary["before"]["modules"] == 2
    assert summary["after"]["modules"] == 1
    assert summary["before"]["subprograms"] == 2
    assert summary["after"]["subprograms"] == 1
    assert summary["before"]["assignments"] == 2
    assert summary["after"]["assignments"] == 1

    unfiltered = corpus_summary(corpus)
    assert unfiltered["after"] == unfiltered["before"]


def test_unknown_names_are_ignored(corpus, caplog):
    report = CoverageReport.from_dict(
        {"modules": [{"name": "a", "subprograms": ["s1", "ghost"]}, {"name": "nowhere"}]}
    )
    with caplog.at_level("WARNING", logger="discoloc"):
        filtered = apply_coverage(corpus, report)
    assert filtered.module_names == ("a",)
    assert "nowhere" in caplog.text
    assert "ghost" in caplog.text


def test_report_validation():
    with pytest.raises(ValueError):
        CoverageReport.from_dict({"files": []})
    with pytest.raises(ValueError):
        CoverageReport.from_dict({"modules": [{"subprograms": ["x"]}]})
    with pytest.raises(ValueError):
        CoverageReport(frozenset({"a"}), {"b": frozenset({"x"})})


def test_load_coverage(tmp_path, report):
    path = tmp_path / "coverage.json"
    path.write_text(json.dumps(report.to_dict()))
    assert load_coverage(path) == report

    with pytest.raises(SourceIoError):
        load_coverage(tmp_path / "missing.json")
    (tmp_path / "broken.json").write_text("{not json")
    with pytest.raises(SourceIoError):
        load_coverage(tmp_path / "broken.json")

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

import numpy as np
import pytest

from discoloc.core.errors import SourceIoError
from discoloc.core.selection.ensemble import EnsembleTable

LONG = """variable,role,value
a,ensemble,1.0
a,ensemble,2.0
a,ensemble,3.0
b,ensemble,0.5
b,ensemble,0.5
b,ensemble,0.75
a,experiment,4.0
b,experiment,1.5
"""

WIDE = """variable,role,r0,r1,r2
a,ensemble,1.0,2.0,3.0
a,experiment,4.0,5.0,
b,ensemble,0.5,0.5,0.75
b,experiment,1.5,2.5,
"""


def test_long_format(tmp_path):
    path = tmp_path / "long.csv"
    path.write_text(LONG)
    table = EnsembleTable.read_csv(path)
    assert table.variables == ("a", "b")
    assert table.ensemble_size == 3
    assert table.experiment_size == 1
    np.testing.assert_allclose(table.matrix("ensemble"), [[1.0, 0.5], [2.0, 0.5], [3.0, 0.75]])


def test_wide_format_drops_padding(tmp_path):
    path = tmp_path / "wide.csv"
    path.write_text(WIDE)
    table = EnsembleTable.read_csv(path)
    assert table.experiment_size == 2
    np.testing.assert_allclose(table.experiment["b"], [1.5, 2.5])


def test_written_table_reads_back(tmp_path):
    table = EnsembleTable.from_matrices(["x", "y"], np.arange(6.0).reshape(3, 2), [[9.0, 8.0]])
    loaded = EnsembleTable.read_csv(table.write_csv(tmp_path / "out" / "table.csv"))
    assert loaded.variables == table.variables
    np.testing.assert_allclose(loaded.matrix("experiment"), [[9.0, 8.0]])


@pytest.mark.parametrize(
    "text",
    [
        "variable,value\na,1.0\n",
        "variable,role,value\na,control,1.0\n",
        "variable,role,value\na,ensemble,1.0\na,ensemble,2.0\na,experiment,3.0\n",
    ],
    ids=["no-role-column", "unknown-role", "ensemble-too-small"],
)
def test_invalid_tables(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text)
    with pytest.raises(ValueError):
        EnsembleTable.read_csv(path)


def test_unreadable_files(tmp_path):
    with pytest.raises(SourceIoError):
        EnsembleTable.read_csv(tmp_path / "missing.csv")
    (tmp_path / "empty.csv").write_text("")
    with pytest.raises(SourceIoError):
        EnsembleTable.read_csv(tmp_path / "empty.csv")


def test_roles_must_cover_the_same_variables():
    with pytest.raises(ValueError):
        EnsembleTable(("a",), {"a": [1.0, 2.0, 3.0]}, {})
    with pytest.raises(ValueError):
        EnsembleTable(("a", "a"), {"a": [1.0, 2.0, 3.0]}, {"a": [1.0]})

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
    Module: test_selectors.py

    Tests for the raw difference pre-check, the IQR-filtered median
    distance and the agreement between two selections.

    Authors:
        - discoloc contributors

    Version Info:
        - 17/Oct/2026: Initial version
"""

import numpy as np
import pytest

from discoloc.core.selection.base import SelectionResult, ordering_agreement
from discoloc.core.selection.ensemble import EnsembleTable
from discoloc.core.selection.median_distance import MedianDistance, median_distance, quartiles
from discoloc.core.selection.raw_diff import RawDifference, raw_diff
from discoloc.core.synthetic.generators import shifted_ensemble


@pytest.fixture
def first_step():
    member = np.array([1.0, 100.0, 0.0, 5.0])
    run = np.array([1.001, 100.00001, 1e-9, 5.0])
    return EnsembleTable.from_matrices(["a", "b", "c", "z"], np.tile(member, (3, 1)), run[None, :])


def test_raw_diff_uses_relative_threshold(first_step):
    result = raw_diff(first_step)
    # c differs from an exact zero, so the floor sets its scale
    assert result.names == ["c", "a"]
    assert dict(result.ranked)["a"] == pytest.approx(1e-3)
    assert dict(result.ranked)["c"] == pytest.approx(1e3)
    assert raw_diff(first_step, rel_tol=1e-2).names == ["c"]


def test_raw_diff_index_checks(first_step):
    with pytest.raises(ValueError):
        RawDifference(member_index=5).select(first_step)
    with pytest.raises(ValueError):
        RawDifference(run_index=1).select(first_step)
    with pytest.raises(ValueError):
        RawDifference(rel_tol=-1.0)


def test_quartiles_interpolate_linearly():
    np.testing.assert_allclose(quartiles(np.arange(1.0, 6.0)), [2.0, 3.0, 4.0])
    np.testing.assert_allclose(quartiles(np.array([1.0, 2.0, 3.0, 4.0])), [1.75, 2.5, 3.25])


def test_median_distance_finds_shifted_variables():
    table = shifted_ensemble(n_variables=20, shifts={"var03": 4.0, "var11": 3.0}, seed=1)
    result = median_distance(table)
    assert set(result.names[:2]) == {"var03", "var11"}
    assert result.method == "median_distance"


def test_median_distance_ignores_affine_rescaling():
    shifts = {"var03": 4.0, "var11": 3.0}
    plain = median_distance(shifted_ensemble(n_variables=20, shifts=shifts, seed=2))
    scaled = median_distance(
        shifted_ensemble(n_variables=20, shifts=shifts, seed=2, scales={"var03": (100.0, 5.0)})
    )
    assert scaled.names == plain.names
    for (_, a), (_, b) in zip(plain.ranked, scaled.ranked):
        assert a == pytest.approx(b)


def test_zero_variance_variables_are_excluded(caplog):
    ensemble = np.column_stack([np.ones(6), np.linspace(-1.0, 1.0, 6)])
    experiment = np.column_stack([np.full(4, 2.0), np.full(4, 10.0)])
    selector = MedianDistance()
    result = selector.select(EnsembleTable.from_matrices(["flat", "moved"], ensemble, experiment))
    assert selector.excluded == ["flat"]
    assert result.names == ["moved"]
    assert "flat" in caplog.text


def test_selection_run_from_csv(tmp_path):
    path = shifted_ensemble(n_variables=10, shifts={"var02": 5.0}).write_csv(tmp_path / "table.csv")
    summary = MedianDistance().run(path=path)
    assert summary["selected"][0] == "var02"
    with pytest.raises(ValueError):
        MedianDistance().run()


def test_ordering_agreement():
    first = SelectionResult((("a", 3.0), ("b", 2.0), ("c", 1.0)), "median_distance")
    second = SelectionResult((("a", 0.9), ("c", 0.5), ("b", 0.1)), "lasso")
    agreement = ordering_agreement(first, second)
    assert agreement["k"] == 3
    assert agreement["overlap"] == 1.0
    assert agreement["kendall_tau"] == pytest.approx(1 / 3)

    partial = ordering_agreement(first, SelectionResult((("c", 1.0), ("x", 0.5)), "lasso"), k=2)
    assert partial["shared"] == []
    assert partial["kendall_tau"] is None


def test_result_is_sorted_and_written(tmp_path):
    result = SelectionResult((("b", 1.0), ("a", 1.0), ("c", 2.0)), "raw_diff")
    assert result.names == ["c", "a", "b"]
    frame = result.to_frame()
    assert list(frame.columns) == ["rank", "variable", "score"]
    assert result.write_csv(tmp_path / "sel.csv").exists()
    with pytest.raises(ValueError):
        SelectionResult((), "pca")

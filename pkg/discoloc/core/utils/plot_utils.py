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
File: plot_utils.py
Purpose: This file contains utility functions to plot graph statistics.

Functions:
    - plot_degree_distribution: Log-log degree histogram with the fitted power law
    - plot_centrality_comparison: Sorted scores of two centrality rankings

Authors:
    discoloc contributors

Version Info:
    16/Oct/2026: Initial version
"""

from pathlib import Path

import matplotlib.pyplot as plt
import numpy as np
from cycler import cycler

from ..analytics.base import CentralityRanking
from ..analytics.degree import DegreeHistogram

plt.rcParams["xtick.labelsize"] = 14
plt.rcParams["axes.titlesize"] = 16
plt.rcParams["axes.labelsize"] = 14

plt.rcParams["legend.fontsize"] = 12
plt.rcParams["ytick.labelsize"] = 14
plt.rcParams["axes.prop_cycle"] = cycler(
    color=[
        "darkblue",
        "#d62728",
        "#2ca02c",
        "#ff7f0e",
        "#bcbd22",
        "#8c564b",
        "#17becf",
        "#9467bd",
        "#e377c2",
        "#7f7f7f",
    ]
)


def plot_degree_distribution(
    histogram: DegreeHistogram, output_path, title: str = "Degree distribution"
) -> Path:
    """
    This function plots the degree histogram on log-log axes.

    Args:
        histogram: DegreeHistogram: Counts and optional fitted exponent
        output_path: directory to save the plot in
        title: str: Title of the plot

    Returns:
        Path: the written ``degree_distribution.png``
    """
    positive = {d: c for d, c in histogram.counts.items() if d >= 1}
    degrees = np.array(list(positive.keys()), dtype=float)
    counts = np.array(list(positive.values()), dtype=float)

    plt.figure(figsize=(6.4, 4.8))
    plt.loglog(degrees, counts, "o", label="nodes")
    if histogram.fitted_exponent is not None and len(degrees):
        # fit line through the geometric mean of the points
        exponent = histogram.fitted_exponent
        anchor = np.exp(np.mean(np.log(counts)) + exponent * np.mean(np.log(degrees)))
        grid = np.linspace(degrees.min(), degrees.max(), 50)
        plt.loglog(grid, anchor * grid ** (-exponent), "--", label=f"slope -{exponent:.2f}")
    plt.xlabel("Degree")
    plt.ylabel("Number of nodes")
    plt.title(title)
    plt.legend()
    plt.grid(which="both", alpha=0.3)
    plt.tight_layout()

    path = Path(output_path) / "degree_distribution.png"
    path.parent.mkdir(parents=True, exist_ok=True)
    plt.savefig(path, dpi=300)
    plt.close()
    return path


def plot_centrality_comparison(first: CentralityRanking, second: CentralityRanking, output_path) -> Path:
    """
    This function plots score against rank for two centrality measures,
    e.g. eigenvector against non-backtracking centrality.

    Args:
        first: CentralityRanking: first measure
        second: CentralityRanking: second measure
        output_path: directory to save the plot in

    Returns:
        Path: the written ``centrality_comparison.png``
    """
    plt.figure(figsize=(6.4, 4.8))
    for ranking in (first, second):
        scores = [abs(ranking.scores[node]) for node in ranking.ordering]
        plt.plot(np.arange(1, len(scores) + 1), scores, label=ranking.method)
    plt.yscale("log")
    plt.xlabel("Rank")
    plt.ylabel("|centrality|")
    plt.title("Centrality comparison")
    plt.legend()
    plt.grid()
    plt.tight_layout()

    path = Path(output_path) / "centrality_comparison.png"
    path.parent.mkdir(parents=True, exist_ok=True)
    plt.savefig(path, dpi=300)
    plt.close()
    return path

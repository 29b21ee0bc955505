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
    Module: degree.py

    Degree distribution of a metagraph and a power-law exponent estimate,
    used to check that the dependency graph of a code base is scale-free
    (which is what makes non-backtracking centrality worth computing).

    Classes:
        DegreeHistogram: Degree counts and fitted exponent.

    Functions:
        degree_distribution: Histogram of total degree with a log-log fit.
        log_binned: Powers-of-two binning of a degree histogram.

    Dependencies:
        - numpy: binning and least-squares fit

    Authors:
        - discoloc contributors

    Version Info:
        - 15/Oct/2026: Initial version

"""

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np

from ..errors import DegenerateFit
from ..utils.log_utils import get_logger

logger = get_logger(__name__)

MIN_DISTINCT_DEGREES = 3
MIN_BINS = 3


@dataclass(frozen=True)
class DegreeHistogram:
    """
    Attributes:
        counts (Dict[int, int]): Degree to number of nodes.
        fitted_exponent (Optional[float]): Magnitude of the log-log slope,
            None when the fit is degenerate.
    """

    counts: Dict[int, int]
    fitted_exponent: Optional[float] = None

    @property
    def node_count(self) -> int:
        return sum(self.counts.values())

    def to_dict(self) -> Dict:
        return {
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "fitted_exponent": self.fitted_exponent,
        }


def log_binned(degrees: np.ndarray, counts: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Node density per bin [2^j, 2^(j+1)) at the geometric centre of the
    integer degrees the bin covers. Empty bins are dropped.
    """
    edges = 2.0 ** np.arange(0, np.floor(np.log2(degrees.max())) + 2)
    totals, _ = np.histogram(degrees, bins=edges, weights=counts)
    widths = np.diff(edges)
    centers = np.sqrt(edges[:-1] * (edges[1:] - 1))
    keep = totals > 0
    return centers[keep], totals[keep] / widths[keep]


def degree_distribution(g, strict: bool = False) -> DegreeHistogram:
    """
    Histogram of total degree (in + out for digraphs) with a power-law fit.

    The exponent is minus the least-squares slope of log(density) against
    log(degree) over powers-of-two degree bins, where the density of a bin is
    its node count divided by the number of integer degrees it spans.
    Histograms spanning fewer than 3 bins are fitted on the raw counts of
    every degree >= 1 that occurs.

    Args:
        g: networkx graph or MetaGraph.
        strict (bool): Raise DegenerateFit instead of returning no exponent.

    Raises:
        DegenerateFit: Fewer than 3 distinct positive degrees, strict mode only.
    """
    g = getattr(g, "digraph", g)
    counts = dict(sorted(Counter(d for _, d in g.degree()).items()))
    positive = {d: c for d, c in counts.items() if d >= 1}
    if len(positive) < MIN_DISTINCT_DEGREES:
        histogram = DegreeHistogram(counts, None)
        message = f"{len(positive)} distinct degrees, need {MIN_DISTINCT_DEGREES} for a power-law fit"
        logger.warning(message)
        if strict:
            raise DegenerateFit(message, histogram)
        return histogram
    degrees = np.fromiter(positive.keys(), dtype=float)
    frequencies = np.fromiter(positive.values(), dtype=float)
    centers, densities = log_binned(degrees, frequencies)
    if len(centers) < MIN_BINS:
        centers, densities = degrees, frequencies
    slope, _ = np.polyfit(np.log(centers), np.log(densities), 1)
    return DegreeHistogram(counts, float(-slope))

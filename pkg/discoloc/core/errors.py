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
    Module: errors.py

    Exception hierarchy shared by every discoloc component. All errors derive
    from DiscolocError, itself a ValueError, so callers that only guard against
    invalid input keep working.

    Classes:
        DiscolocError: Base class.
        FatalSyntax: A MiniFort unit cannot be identified (bad module header).
        SourceIoError: A source, coverage, ensemble or graph file cannot be read.
        ArityMismatch: More actual arguments than formal parameters.
        EmptySlice: No terminal node matched any slice target.
        EmptyGraph: An analytic received a graph without nodes.
        NoEdges: Girvan-Newman received an edgeless graph (strict mode only).
        NotConverged: A power iteration hit max_iter (strict mode only).
        ZeroSpectralRadius: The non-backtracking matrix is nilpotent.
        DegenerateFit: Too few distinct degrees for a power-law fit (strict mode only).
        DegenerateLabels: Lasso received an empty class.
        TuningFailed: Lasso bisection missed the target band (strict mode only).

    Authors:
        - discoloc contributors

    Version Info:
        - 14/Oct/2026: Initial version

"""

from typing import Any, Optional


class DiscolocError(ValueError):
    """Base class for all discoloc errors."""


class FatalSyntax(DiscolocError):
    """Raised when a MiniFort unit has no well-formed module header."""

    def __init__(self, path: str, line: int, message: str) -> None:
        super().__init__(f"{path}:{line}: {message}")
        self.path = path
        self.line = line


class SourceIoError(DiscolocError):
    """Raised when an input file is missing or unreadable."""


class ArityMismatch(DiscolocError):
    """Raised when a call passes more actual arguments than the callee declares."""


class EmptySlice(DiscolocError):
    """Raised when no slice target matches a node of the metagraph."""


class EmptyGraph(DiscolocError):
    """Raised when an analytic is applied to a graph without nodes."""


class NoEdges(DiscolocError):
    """Raised in strict mode when community detection receives an edgeless graph."""

    def __init__(self, message: str, partition: Optional[Any] = None) -> None:
        super().__init__(message)
        self.partition = partition


class NotConverged(DiscolocError):
    """Raised in strict mode when a power iteration does not reach tolerance.

    The partial ranking is attached as ``ranking``.
    """

    def __init__(self, message: str, ranking: Optional[Any] = None) -> None:
        super().__init__(message)
        self.ranking = ranking


class ZeroSpectralRadius(DiscolocError):
    """Raised when the non-backtracking matrix has no cycles (any DAG or tree)."""


class DegenerateFit(DiscolocError):
    """Raised in strict mode when a degree histogram has fewer than 3 distinct degrees."""

    def __init__(self, message: str, histogram: Optional[Any] = None) -> None:
        super().__init__(message)
        self.histogram = histogram


class DegenerateLabels(DiscolocError):
    """Raised when the ensemble or the experiment class is empty."""


class TuningFailed(DiscolocError):
    """Raised in strict mode when lasso bisection misses the target band.

    The closest result is attached as ``result``.
    """

    def __init__(self, message: str, result: Optional[Any] = None) -> None:
        super().__init__(message)
        self.result = result

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
    Module: lasso.py

    L1-regularized logistic regression separating ensemble members (label 0)
    from experimental runs (label 1). The regularization strength is tuned by
    bisection in log space until the number of nonzero coefficients is close
    to a requested count; the variables are ranked by ``|beta|``.

    The objective is ``mean logistic loss + lam * ||beta||_1`` with an
    unpenalized intercept. It is minimized by proximal gradient descent with
    step ``1/L``, ``L = sigma_max([1 X])**2 / (4 n)``, optionally with
    Nesterov momentum.

    Classes:
        L1Fit: Coefficients of one fit.
        LassoSelector: VariableSelector tuned to a target count.

    Functions:
        soft_threshold: Proximal map of the L1 norm.
        lambda_max: Smallest lambda giving an all-zero fit.
        fit_l1_logistic: Single fit at a fixed lambda.
        lasso_select: Functional form of LassoSelector.

    Dependencies:
        - numpy: linear algebra
        - scipy.special: numerically stable logistic function
        - scikit-learn: StandardScaler for per-variable standardization

    Key Features:
        - Bisection keeps the closest count seen; ties go to the larger count
        - Tuning misses are flagged on the result, raised only when strict

    Authors:
        - discoloc contributors

    Version Info:
        - 16/Oct/2026: Initial version

"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from scipy.special import expit
from sklearn.preprocessing import StandardScaler

from ..errors import DegenerateLabels, TuningFailed
from ..utils.log_utils import get_logger
from .base import SelectionResult, VariableSelector
from .ensemble import EnsembleTable

logger = get_logger(__name__)

MIN_SAMPLES = 8
MIN_EXPERIMENT = 4
LOWER_BRACKET = 1e-4


def soft_threshold(x: np.ndarray, t: float) -> np.ndarray:
    return np.sign(x) * np.maximum(np.abs(x) - t, 0.0)


def _check_labels(labels: np.ndarray) -> None:
    classes = set(np.unique(labels).tolist())
    if not classes <= {0, 1}:
        raise ValueError("Labels must be 0 or 1.")
    if len(classes) < 2:
        raise DegenerateLabels(f"only class {classes.pop() if classes else None} present")


def lambda_max(features: np.ndarray, labels: np.ndarray) -> float:
    """
    ``||X^T (y - mean(y))||_inf / n``: the gradient of the loss at
    ``beta = 0`` with the optimal intercept. Any larger lambda zeroes every
    coefficient.
    """
    labels = np.asarray(labels, dtype=float)
    return float(np.max(np.abs(features.T @ (labels - labels.mean()))) / len(labels))


@dataclass(frozen=True)
class L1Fit:
    """
    Attributes:
        lam (float): Regularization strength.
        intercept (float): Unpenalized intercept.
        coef (np.ndarray): Coefficients, one per feature.
        iterations (int): Proximal steps taken.
        converged (bool): Whether the step size criterion was met.
    """

    lam: float
    intercept: float
    coef: np.ndarray
    iterations: int
    converged: bool

    @property
    def nnz(self) -> int:
        return int(np.count_nonzero(self.coef))


def fit_l1_logistic(
    features: np.ndarray,
    labels: np.ndarray,
    lam: float,
    max_iter: int = 20000,
    tol: float = 1e-8,
    accelerated: bool = True,
) -> L1Fit:
    """
    Proximal gradient fit of the L1-penalized logistic regression.

    Args:
        features (np.ndarray): n x p design, already standardized.
        labels (np.ndarray): n labels in {0, 1}.
        lam (float): Penalty on ``||beta||_1``.
        max_iter (int): Iteration cap.
        tol (float): Stop once the largest parameter change is below
            ``tol * (1 + max |parameter|)``.
        accelerated (bool): Nesterov momentum (FISTA) instead of plain ISTA.

    Raises:
        DegenerateLabels: If one class is empty.
    """
    features = np.asarray(features, dtype=float)
    labels = np.asarray(labels, dtype=float)
    _check_labels(labels)
    if lam < 0:
        raise ValueError("lam must be non-negative.")

    n, p = features.shape
    design = np.hstack([np.ones((n, 1)), features])
    lipschitz = np.linalg.norm(design, 2) ** 2 / (4.0 * n)
    step = 1.0 / lipschitz

    mean = labels.mean()
    theta = np.zeros(p + 1)
    theta[0] = np.log(mean / (1.0 - mean))
    momentum = theta.copy()
    converged = False
    iteration = 0
    for iteration in range(1, max_iter + 1):
        gradient = design.T @ (expit(design @ momentum) - labels) / n
        update = momentum - step * gradient
        new = np.concatenate(([update[0]], soft_threshold(update[1:], step * lam)))
        change = np.max(np.abs(new - theta))
        if accelerated:
            momentum = new + (iteration - 1) / (iteration + 2) * (new - theta)
        else:
            momentum = new
        theta = new
        if change <= tol * (1.0 + np.max(np.abs(theta))):
            converged = True
            break
    return L1Fit(float(lam), float(theta[0]), theta[1:], iteration, converged)


class LassoSelector(VariableSelector):
    """
    Attributes:
        target_count (int): Requested number of selected variables.
        band (int): Accepted distance between selected and requested counts.
        max_bisection (int): Bisection step cap.
        strict (bool): Raise TuningFailed instead of flagging the result.
        fits (List[L1Fit]): Every fit evaluated in the last call.
    """

    def __init__(
        self,
        target_count: int = 5,
        band: int = 2,
        max_bisection: int = 40,
        max_iter: int = 20000,
        tol: float = 1e-8,
        accelerated: bool = True,
        strict: bool = False,
    ) -> None:
        super().__init__("lasso")
        if target_count < 1:
            raise ValueError("target_count must be at least 1.")
        if band < 0 or max_bisection < 1:
            raise ValueError("band must be non-negative and max_bisection positive.")
        self.target_count = target_count
        self.band = band
        self.max_bisection = max_bisection
        self.max_iter = max_iter
        self.tol = tol
        self.accelerated = accelerated
        self.strict = strict
        self.fits: List[L1Fit] = []

    def design(self, table: EnsembleTable) -> Tuple[np.ndarray, np.ndarray]:
        """Standardized feature matrix (ensemble rows first) and labels."""
        if table.ensemble_size + table.experiment_size < MIN_SAMPLES:
            raise ValueError(f"lasso needs at least {MIN_SAMPLES} runs in total")
        if table.experiment_size < MIN_EXPERIMENT:
            raise ValueError(f"lasso needs at least {MIN_EXPERIMENT} experimental runs")
        raw = np.vstack([table.matrix("ensemble"), table.matrix("experiment")])
        labels = np.concatenate([np.zeros(table.ensemble_size), np.ones(table.experiment_size)])
        return StandardScaler().fit_transform(raw), labels

    def _fit(self, features, labels, lam) -> L1Fit:
        fit = fit_l1_logistic(features, labels, lam, self.max_iter, self.tol, self.accelerated)
        if not fit.converged:
            logger.debug("fit at lambda=%.3e stopped after %d iterations", lam, fit.iterations)
        self.fits.append(fit)
        return fit

    def _closer(self, candidate: L1Fit, best: Optional[L1Fit]) -> bool:
        if best is None:
            return True
        gap, best_gap = abs(candidate.nnz - self.target_count), abs(best.nnz - self.target_count)
        return gap < best_gap or (gap == best_gap and candidate.nnz > best.nnz)

    def select(self, table: EnsembleTable) -> SelectionResult:
        """
        Raises:
            ValueError: Too few runs.
            TuningFailed: Only when strict and no fit lands in the band.
        """
        features, labels = self.design(table)
        self.fits = []
        high = lambda_max(features, labels)
        low = high * LOWER_BRACKET
        best: Optional[L1Fit] = None

        if high > 0:
            for _ in range(self.max_bisection):
                lam = float(np.sqrt(low * high))
                fit = self._fit(features, labels, lam)
                if self._closer(fit, best):
                    best = fit
                if fit.nnz == self.target_count:
                    break
                if fit.nnz > self.target_count:
                    low = lam
                else:
                    high = lam
        if best is None:
            best = self._fit(features, labels, high)

        tuned = abs(best.nnz - self.target_count) <= self.band
        ranked = [(name, float(abs(c))) for name, c in zip(table.variables, best.coef) if c != 0]
        result = SelectionResult(
            ranked,
            self.method,
            lam=best.lam,
            tuned=tuned,
            history=[(f.lam, f.nnz) for f in self.fits],
        )
        if not tuned:
            message = (
                f"lasso selected {best.nnz} variables for a target of {self.target_count} "
                f"after {len(self.fits)} fits"
            )
            if self.strict:
                raise TuningFailed(message, result)
            logger.warning(message)
        else:
            logger.info("lasso: %d variables at lambda=%.4e", best.nnz, best.lam)
        return result

    def get_model_params(self) -> Dict[str, Any]:
        return {
            "target_count": self.target_count,
            "band": self.band,
            "max_bisection": self.max_bisection,
            "max_iter": self.max_iter,
            "tol": self.tol,
            "accelerated": self.accelerated,
        }


def lasso_select(
    table: EnsembleTable, target_count: int = 5, strict: bool = False, **kwargs
) -> SelectionResult:
    return LassoSelector(target_count=target_count, strict=strict, **kwargs).select(table)

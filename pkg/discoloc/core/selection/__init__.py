from .ensemble import EnsembleTable
from .base import SelectionResult, VariableSelector, ordering_agreement
from .raw_diff import RawDifference, raw_diff
from .median_distance import MedianDistance, median_distance
from .lasso import LassoSelector, lasso_select

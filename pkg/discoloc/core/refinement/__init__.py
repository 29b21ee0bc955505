from .config import BugSpec, RefinementConfig
from .sampling import simulate_sampling
from .engine import RefinementReport, RefinementState, Status, refine_step, run_refinement

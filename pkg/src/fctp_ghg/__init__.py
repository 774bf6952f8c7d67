"""Two-stage fixed-charge transportation under an emission cap.

Exact cost/emission evaluation, Nearest Neighbor construction heuristics,
a brute-force oracle for small instances and an unpaired t-test harness.
"""

from .evaluator import (
    CostBreakdown,
    FeasibilityReport,
    GhgMode,
    Indicators,
    check_feasibility,
    ghg_emissions,
    indicators,
    stage1_flows,
    total_cost,
)
from .exact import OracleResult, brute_force_optimum
from .heuristics import (
    ConstructionState,
    SolveResult,
    Variant,
    assign_from_center,
    construct_solution,
    select_center,
    selection_weights,
)
from .instances import GenSpec, default_emissions, generate_instance, generate_preset
from .model import (
    Customer,
    DistributionCenter,
    EmissionParams,
    FormatError,
    Instance,
    Solution,
    ValidationReport,
    parse_instance,
    parse_solution,
    serialize_instance,
    serialize_solution,
    validate_instance,
)
from .stats import (
    TrialTable,
    TTestResult,
    compare_vs_baseline,
    run_experiment,
    unpaired_t_test,
)

__version__ = "0.1.0"

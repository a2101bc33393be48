"""Opinion dynamics with asymmetric confirmation and negativity bias."""

from .bias import (
    BiasFamily,
    CompositeBias,
    CubicAbs,
    Decomposed,
    HKIndicator,
    LinearSymmetric,
    NegTanhQuadratic,
    TanhQuadratic,
    composite_weight,
    dandekar_coefficient,
    eval_conf,
    eval_dandekar_step,
    eval_neg,
    family_from_spec,
)
from .dynamics import (
    InfeasibleNormalization,
    ModelConfig,
    ModelError,
    SimulationState,
    Trajectory,
    compute_weight_matrix,
    normalize_row,
    run,
    step,
)
from .network import InfluenceGraph, parse_edge_list, sensed_expectation, sensed_expectations
from .verifier import (
    ConditionReport,
    GridSpec,
    check_confirmation,
    check_negativity,
    check_theorem1,
    check_theorem2,
    hk_equal_weight_witness,
)

__version__ = "0.1.0"

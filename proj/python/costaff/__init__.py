"""Staffing and threshold-outsourcing policies for Erlang-A systems with an
uncertain arrival rate: exact birth-death analysis, the diffusion-based
universal policy U, benchmark policies D and NV, and a simulation oracle."""

from ._costaff import (
    ArrivalDistribution,
    BetaSolution,
    ComparisonReport,
    CostParams,
    CostaffError,
    Estimate,
    ExactSolution,
    MdpSolution,
    PerformanceMeasures,
    PolicyReportRow,
    QuadratureRule,
    SimEstimate,
    StaffingCostPoint,
    StaffingPolicy,
    analyze,
    approx_total_cost,
    beta_star,
    compare_policies,
    effective_abandon_cost,
    evaluate_policy,
    expected_cost_for_staffing,
    make_quadrature,
    mdp_oracle,
    optimal_staffing,
    policy_d,
    policy_nv,
    policy_u,
    realize_threshold_u,
    regime_guard,
    reproduce_table,
    reproduce_table_ids,
    simulate,
    stationary_probs,
    that_star,
    threshold_search,
    zhat,
    zhat_inf,
    zhat_min,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"

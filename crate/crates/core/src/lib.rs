//! Minimization of decomposable submodular functions under parametric
//! quadratic penalties, by reduction to approximate parametric min-cut.

pub mod base;
pub mod cut_graph;
pub mod error;
pub mod flow;
pub mod instance;
pub mod normalize;
pub mod oracle;
pub mod parametric;
pub mod penalty;
pub mod rational;
pub mod solver;

pub use base::{
    bruteforce_parametric_min, greedy_base_vertex, in_base_polytope, lovasz_extension,
    lovasz_extension_sum, minimize_with_linear,
};
pub use cut_graph::{combine_graphs, graph_approx_shifted, CutGraph};
pub use error::{Error, Result};
pub use flow::{
    ArcCap, ContractLog, FlowNetwork, LinearCap, MaxFlowResult, Node, ParametricNetwork,
};
pub use instance::{
    generate_instance, generate_network, network_from_json, network_to_json, GeneratorParams,
    Instance, ResultJson,
};
pub use normalize::{normalize_instance, NormalizedInstance};
pub use oracle::{GroundSet, OracleDescription, SubmodularOracle};
pub use parametric::{
    apx_parametric_min_cut, compare_to_exact, exact_parametric_min_cut_discrete, grid_sweep_cut,
    verify_cut, Instrumentation, ParametricCut, Tau,
};
pub use penalty::{PenaltyFamily, QuadraticPenalty};
pub use rational::{format_rat, int, parse_rat, rat, Rat};
pub use solver::{
    cut_to_dual, dual_to_primal, error_budget, find_min_cuts, progress_step, solve, threshold_set,
    zeta_from_epsilon, DualDecomposition, MinCutsOutcome, SolveOptions, SolveResult, StepOutcome,
};

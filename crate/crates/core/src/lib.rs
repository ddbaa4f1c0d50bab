//! m-eternal domination games on finite graphs and on four infinite regular
//! grids: validity predicates, an exact solver, floating-guard strategies,
//! hardness gadgets and grid patrol patterns.

pub mod domination;
pub mod error;
pub mod game;
pub mod graph;
pub mod grid;
pub mod io;
pub mod reduction;
pub mod solver;
pub mod strategy;

pub use domination::{
    min_connected_dominating_set, static_number, validate_config, GuardConfig, Kind, StaticResult,
    Variant,
};
pub use error::{Error, Result};
pub use game::{apply_defense, legal_attacks, transition_feasible, DefenseMove};
pub use graph::Graph;
pub use grid::{
    grid_defend, simulate_grid, verify_window, Coord, GridAttacker, GridKind, PatrolState,
    WindowReport,
};
pub use io::{parse_attack_script, parse_graph, AttackScript, RunReport};
pub use reduction::{build_reduction, verify_reduction, Construction, ReductionInstance};
pub use solver::{
    eternal_number, oracle_minimax, safe_family, strategy_upper_bound, EternalResult, SafeFamily,
    SolverOptions,
};
pub use strategy::{make_floating_policy, simulate, Attacker, Policy, PolicyCore, Transcript};

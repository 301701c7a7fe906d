//! Simplex ratios, randomized inequality checks, extremal constructions and
//! best-constant estimation.

mod check;
mod construct;
mod kind;
mod lambda;
mod ratio;
mod reproduce;
pub mod rng;
mod search;

pub use check::{check_simplex_inequality, sample_configuration, CheckReport, Sampler, VIOLATION_TOL};
pub use construct::{construct, Construction, CIRCLE_ARC_EPSILON, FIGURE4_EPSILON};
pub use kind::{evaluate, proven_bounds, rho, DistanceKind, ProvenBounds};
pub use lambda::{lambda_bound_table, solve_lambda_n, LambdaBound, TABLE1_NS};
pub use ratio::{simplex_ratio, simplex_sum, Configuration, RatioWitness};
pub use reproduce::{
    constants, table1, Comparison, ConstantRow, ConstantsReport, Table1Report, Table1Row,
    ATTAINED_TOL, CIRCLE_ARC_TOL, FIGURE4_EPSILONS, FIGURE4_TOL, LAMBDA_CLOSED_FORM_TOL,
    TABLE1_TOL, TABLE1_VALUES,
};
pub use search::{estimate_best_constant, BestConstantReport, SearchOptions};

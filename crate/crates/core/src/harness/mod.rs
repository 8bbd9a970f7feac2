//! Random profile families, experiment sweeps and CSV reporting.

pub mod csv;
pub mod experiments;
pub mod random;

pub use experiments::{
    bounds_row, check_bounds, competitive_row, duel, order_model, separation_row, si_separation, sweep_competitive,
    sweep_separation, ExperimentConfig, ProfileSource,
};
pub use random::{random_profile, random_profile_m, rng_for, seed_from_env};

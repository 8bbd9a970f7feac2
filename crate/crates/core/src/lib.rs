//! Comparison-model laboratory for duplicate-sensitive element distinctness.
//!
//! Algorithms are written as `async fn`s over a [`probe::Probe`], so they can
//! be driven one comparison at a time by a [`oracle::CountingOracle`], by the
//! round-robin scheduler of the oblivious algorithm, or by an adaptive
//! adversary. See [`probe`] for the mechanism.

pub mod adversary;
pub mod algorithms;
pub mod error;
pub mod harness;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod probe;
pub mod profile;
pub mod setint;

pub use error::{Error, Result};
pub use instance::{realize_instance, verify_graph, Instance, Value};
pub use oracle::{replay_transcript, CountingOracle, Outcome, RunReport, Transcript};
pub use profile::ClusterProfile;

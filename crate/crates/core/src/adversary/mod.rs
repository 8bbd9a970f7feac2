//! The binary-tree adversary: answers comparisons without ever revealing an
//! equality, then realizes an input consistent with every answer.

pub mod game;
pub mod packing;
pub mod path;
pub mod realize;
pub mod si;

pub use game::{few_deep_index, play_game, separation_budget, AdversaryState, Game};
pub use packing::{pack_greedy, pack_isomorphic, reconstruct, Assignment, Reconstruction};
pub use path::{answer, TreePath};
pub use realize::realize;
pub use si::{si_adversary_game, si_budget, SiGame};

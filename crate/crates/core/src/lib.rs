pub mod error;
mod eval;
pub mod formula;
pub mod model;
pub mod action_semantics;
pub mod neighborhood_semantics;
pub mod gam;
pub mod sam_snm;
pub mod clear_tree;
pub mod represent;
pub mod fixtures;
pub mod io;
pub mod harness;
pub mod cli;

pub use error::{Error, Result};

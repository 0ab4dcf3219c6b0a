//! Max-Cut/Flip to TSP/k-Opt reduction toolkit.

pub mod dot;
pub mod error;
pub mod gadget;
pub mod io;
pub mod maxcut;
pub mod reduction;
pub mod tsp;
pub mod verify;
pub mod weight;

pub use error::{Error, Result};
pub use weight::ExactWeight;

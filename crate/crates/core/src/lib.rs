pub mod colouring;
pub mod error;
pub mod euclid;
pub mod hyp;
pub mod io;
pub mod linegraph;
pub mod reduction;
pub mod verify;
pub mod voltage;

pub use error::{Error, Result};

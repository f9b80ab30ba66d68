pub mod clifford;
pub mod conesol;
pub mod error;
pub mod exact;
pub mod identities;
pub mod killing;
pub mod modelspace;
pub mod suite;
pub mod svforms;

pub use error::{Error, Result};

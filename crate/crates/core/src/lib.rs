pub mod cli;
pub mod diagcat;
pub mod error;
pub mod meshcat;
pub mod modcat;
pub mod quiverrep;
pub mod ringlin;
pub mod scat;

pub use error::{Error, Result};

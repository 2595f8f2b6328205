pub mod cli;
pub mod error;
pub mod fuzzy;
pub mod radial;
pub mod scattering;
pub mod special;
pub mod spectrum;

pub use error::{Error, Result};

pub mod asymptotics;
pub mod barriers;
pub mod classifier;
pub mod cli;
pub mod error;
pub mod hardy;
pub mod numerics;
pub mod params;
pub mod region;
pub mod spectral;

pub use error::{Error, Result};

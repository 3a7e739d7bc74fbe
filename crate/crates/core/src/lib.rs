pub mod asymptotics;
pub mod cli;
pub mod continuation;
pub mod error;
pub mod gbeta;
pub mod kernel;
pub mod linalg;
pub mod mittag;
pub mod quad;
pub mod rhp;
pub mod solver;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};

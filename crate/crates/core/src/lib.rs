pub mod cli;
pub mod error;
pub mod heteroclinic;
pub mod interval;
pub mod linop;
pub mod manifold;
pub mod model;
pub mod pointproofs;
pub mod rpa;
pub mod scalar;
pub mod seqspace;

pub use error::{Error, Result};

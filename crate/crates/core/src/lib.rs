pub mod cli;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod mixed;
pub mod modes;
mod optim;
pub mod pure;
pub mod unitary;
pub mod witness;

pub use error::{Error, Result};

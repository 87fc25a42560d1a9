//! Exact Moyal-Clifford algebra on the 4D phase space `(q1, q2, p1, p2)`.

pub mod cli;
pub mod clifford;
pub mod error;
pub mod expr;
pub mod jc;
pub mod mc;
pub mod scalar;
pub mod star;
pub mod susy;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use star::{Envelope, ExactScalar, HbarMode, Moyal, PhaseSpaceFunction, Var};

//! Laurent-coefficient algebra, exact Bernoulli numbers, and a Borel
//! summation engine for the divergent Bernoulli series attached to ζ(n).

pub mod bernoulli;
pub mod borel;
pub mod cli;
pub mod error;
pub mod exact;
pub mod laurent;
pub mod quadrature;
pub mod real;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
pub use exact::BigRational;

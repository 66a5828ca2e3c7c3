pub mod algebra;
pub mod coupling;
pub mod elliptic;
pub mod error;
pub mod jack;
pub mod oracle;
pub mod perturbation;
pub mod ratfunc;
pub mod symmetric;

pub use coupling::{Coupling, Rational};
pub use error::{Error, Result};

pub mod analysis;
pub mod cli;
pub mod error;
pub mod field;
pub mod generate;
pub mod gin;
pub mod groebner;
pub mod homology;
pub mod ideal;
pub mod linalg;
pub mod monomial_ideal;
pub mod poly;

pub use error::{Error, Result};

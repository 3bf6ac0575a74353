//! Exact algebra around the canonical multiplicative character from the
//! algebraic closure of a prime field into the roots of unity.

pub mod character;
pub mod cyclotomic;
pub mod error;
pub mod exact;
pub mod finite_field;
pub mod ideal;
pub mod limits;
pub mod mann;
pub mod mult_lattice;
pub mod parse;
pub mod pcset;
pub mod rank;
pub mod verify;

pub use error::{Error, Result};
pub use limits::Limits;

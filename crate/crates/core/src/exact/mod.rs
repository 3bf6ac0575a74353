//! Exact rationals, integer lattices and sparse polynomials.

pub mod arith;
pub mod lattice;
pub mod mpoly;
pub mod rat;

pub use lattice::{hnf, kernel_in_group, kernel_mod, ExponentLattice, IntMatrix};
pub use mpoly::{Coeff, FieldCoeff, MPoly, Monomial, MonomialOrder};
pub use rat::Rat;

//! Exact computer algebra for the linear generalized symmetries of the
//! Kolmogorov equation `u_t + x u_y = u_xx`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything is exact: scalars are
//! arbitrary-precision rationals, coefficients are multivariate polynomials.
//!
//! * [`poly`] and [`linalg`]: rationals, polynomials in `(t, x, y)`, exact
//!   elimination.
//! * [`weyl`]: the algebra generated by the recursion operators `P3, P2, P1, P0`
//!   in normal-ordered form, the generic Weyl algebra `W(n)`, named elements,
//!   order bases and their dimensions.
//! * [`diffop`]: differential operators with polynomial coefficients, the
//!   realization of the algebra, the equation operator `F`.
//! * [`solutions`]: exp-polynomial solutions, polynomial solution bases, the
//!   point-symmetry action, the determining-equation solver and kernel checks.
//! * [`parse`]: the shared text grammar for all of the above.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod diffop;
mod error;
pub mod linalg;
pub mod parse;
pub mod poly;
pub mod solutions;
pub mod weyl;

pub use error::{Error, Result};
pub use poly::{Degree, Monomial, Poly, Rational, Ring};

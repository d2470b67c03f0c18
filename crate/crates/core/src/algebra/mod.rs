//! Exact-arithmetic kernel: arbitrary-precision rationals, multivariate
//! polynomials, rational functions, and linear algebra over the
//! rational-function field.
//!
//! All values are immutable after construction; operations are pure
//! functions, so everything here is freely shareable between threads.

pub mod matrix;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod scalar;

pub use matrix::RfMatrix;
pub use poly::{Monomial, Polynomial};
pub use ratfunc::RationalFunction;
pub use ring::{Ring, RingRef, VarClass};
pub use scalar::{format_scalar, parse_scalar, Scalar};

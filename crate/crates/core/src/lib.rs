//! Exact symbolic toolkit for special 2-flags: singularity-class
//! combinatorics, explicit chart construction, distribution geometry,
//! infinitesimal symmetries, and rescaling normalization, all over exact
//! rational arithmetic.

pub mod algebra;
pub mod charts;
pub mod error;
pub mod flagcomb;
pub mod geometry;
pub mod normalization;
pub mod symmetry;

pub use algebra::{
    format_scalar, parse_scalar, Monomial, Polynomial, RationalFunction, RfMatrix, Ring, RingRef,
    Scalar, VarClass,
};
pub use error::{Error, Result};
pub use flagcomb::{count_codes, enumerate_codes, validate_code, ClassCode, SandwichCode};

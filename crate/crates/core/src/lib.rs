//! Fourth fundamental solution of the bi-axially symmetric equation
//! `u_xx + u_yy + (2α/x) u_x + (2β/y) u_y = 0` in the first quadrant, its
//! double-layer potential and a Nyström solver for the Dirichlet problem.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bie;
pub mod error;
pub mod geometry;
pub mod kernel;
pub mod potential;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};

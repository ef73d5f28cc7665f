//! Exact analysis of continuous two-piece piecewise-linear maps
//!
//! ```text
//! f(x) = A x + b |x1| + c,    x in R^n, n >= 2
//! ```
//!
//! [`analysis::classify`] decides whether `f` has a fixed point, or returns
//! a linear functional `u` and increment `s > 0` with `u . f(x) >= u . x + s`
//! for every `x`, which proves that every orbit diverges. All verdicts are
//! computed in exact rational arithmetic.
//!
//! Around the classifier sit orbit simulation and periodic-orbit search
//! ([`dynamics`]), border-collision scans ([`bcb`]), a seeded oracle
//! harness ([`verify`]) and the `pwlfix` command line ([`cli`]).
//!
//! The `examples/` directory has one runnable program per capability.

pub mod analysis;
pub mod bcb;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod pwlmap;
pub mod report;
pub mod scalar;
pub mod verify;

pub use analysis::{classify, fixed_points, Classification, Verdict};
pub use error::{Error, Result};
pub use linalg::{Matrix, Vector};
pub use pwlmap::{PwlMap, Side};
pub use scalar::{Rational, Scalar};

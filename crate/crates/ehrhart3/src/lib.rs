//! Exact Ehrhart polynomials of 3-dimensional simple integral convex polytopes.
//!
//! Given the integer vertices of a simple 3-polytope `P`, this crate computes
//! the cubic `|lP ∩ Z³| = c₃l³ + c₂l² + c₁l + c₀` in exact rational
//! arithmetic. The quadratic and cubic coefficients come from relative facet
//! volumes and the volume; the linear coefficient is assembled from a closed
//! formula: a Dedekind-sum term per edge plus a tridiagonal-determinant
//! correction per facet. A brute-force lattice-point counter doubles as an
//! independent oracle for every result.
//!
//! ```
//! use ehrhart3::{cli, polytope, ehrhart, oracle};
//!
//! let points = cli::tetra_vertices(1, 1, 1).unwrap();
//! let p = polytope::build(&points).unwrap();
//! let poly = ehrhart::ehrhart_polynomial(&p).unwrap();
//! assert_eq!(poly.c3, ehrhart3::ratio(1, 6));
//! assert!(oracle::verify(&p).unwrap().is_match);
//! ```
//!
//! All arithmetic is arbitrary-precision; there is no floating point anywhere
//! in the computation path. The `parallel` feature (on by default) lets the
//! counting oracle and the coefficient sums fan out over rayon; disabling it
//! leaves a purely sequential build with identical results.

pub mod cli;
pub mod dedekind;
pub mod ehrhart;
mod error;
pub mod intlinalg;
pub mod oracle;
pub mod polytope;

pub use error::Error;
pub use intlinalg::{vec3, Integer, Rational, Vec3i, Vec3r};

/// Shorthand for building a rational from machine integers.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

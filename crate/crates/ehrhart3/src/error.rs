use std::fmt;

use crate::intlinalg::{Integer, Vec3i};

/// Everything that can go wrong while building a polytope or evaluating the
/// coefficient formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `primitive` was asked to scale the zero vector.
    ZeroVector,
    /// Two vectors that must span a plane are parallel.
    DependentVectors,
    /// The 3×3 system handed to `dual_functional` is singular.
    SingularSystem,
    /// Dedekind sum requested with modulus q < 1.
    InvalidModulus { q: Integer },
    /// Fast Dedekind evaluation needs gcd(p mod q, q) = 1.
    NotCoprime { p: Integer, q: Integer },
    /// Fewer than 4 distinct points were supplied.
    TooFewPoints { got: usize },
    /// All input points lie in a common plane (or worse).
    NotFullDimensional,
    /// A hull vertex lies on 4 or more facets.
    NotSimple { vertex: Vec3i, facet_count: usize },
    /// An input point is not a vertex of the hull (strict mode).
    NonVertexInput { point: Vec3i },
    /// Neither cyclic direction of a facet makes every ε positive.
    OrientationFailure { facet: usize },
    /// `off_facet_neighbor` was queried with a vertex not on the facet.
    VertexNotOnFacet,
    /// A walk-coefficient denominator vanished; signals corrupted structure.
    ZeroDenominator,
    /// Tridiagonal determinant called with inconsistent slice lengths.
    LengthMismatch { diag: usize, offdiag: usize },
    /// Tetrahedron closed form requires gcd(a, b, c) = 1.
    GcdNotOne,
    /// A generator family constraint was violated.
    InvalidParameter(&'static str),
    /// The counting scan would touch more cells than the configured cap.
    OracleTooLarge { cells: Integer, cap: Integer },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroVector => write!(f, "cannot normalize the zero vector"),
            Error::DependentVectors => write!(f, "vectors are linearly dependent"),
            Error::SingularSystem => write!(f, "singular 3x3 system"),
            Error::InvalidModulus { q } => write!(f, "Dedekind sum modulus must be >= 1, got {q}"),
            Error::NotCoprime { p, q } => {
                write!(f, "Dedekind arguments not coprime: gcd({p}, {q}) > 1")
            }
            Error::TooFewPoints { got } => {
                write!(f, "need at least 4 distinct points, got {got}")
            }
            Error::NotFullDimensional => write!(f, "points do not span a 3-dimensional polytope"),
            Error::NotSimple {
                vertex,
                facet_count,
            } => write!(
                f,
                "polytope is not simple: vertex {vertex} lies on {facet_count} facets"
            ),
            Error::NonVertexInput { point } => {
                write!(f, "input point {point} is not a vertex of the hull")
            }
            Error::OrientationFailure { facet } => {
                write!(f, "no cyclic orientation of facet {facet} has all epsilons positive")
            }
            Error::VertexNotOnFacet => write!(f, "vertex does not lie on the facet"),
            Error::ZeroDenominator => write!(f, "zero denominator in walk coefficients"),
            Error::LengthMismatch { diag, offdiag } => write!(
                f,
                "tridiagonal slices mismatched: {diag} diagonal vs {offdiag} off-diagonal entries"
            ),
            Error::GcdNotOne => write!(f, "tetrahedron parameters must satisfy gcd(a, b, c) = 1"),
            Error::InvalidParameter(msg) => write!(f, "{msg}"),
            Error::OracleTooLarge { cells, cap } => {
                write!(f, "counting scan of {cells} cells exceeds cap {cap}")
            }
        }
    }
}

impl std::error::Error for Error {}

//! Exact integer and rational linear algebra on `Z³`.
//!
//! Everything here is arbitrary precision: user-supplied coordinates can make
//! determinants overflow any fixed width, so there is no fast path. The two
//! nontrivial constructions are [`saturated_pair_basis`], which extends a
//! primitive vector to a basis of the saturated rank-2 lattice spanned by a
//! pair of normals, and [`plane_lattice_basis`], which produces an integral
//! basis of the lattice orthogonal to a primitive vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as IntegerOps;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::Error;

/// Arbitrary-precision signed integer; the scalar type of all lattice data.
pub type Integer = BigInt;

/// Arbitrary-precision fraction, always reduced with positive denominator.
pub type Rational = BigRational;

/// A point or vector of `Z³`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec3i {
    pub x: Integer,
    pub y: Integer,
    pub z: Integer,
}

/// Builds a [`Vec3i`] from anything convertible to [`Integer`].
pub fn vec3<T: Into<Integer>>(x: T, y: T, z: T) -> Vec3i {
    Vec3i {
        x: x.into(),
        y: y.into(),
        z: z.into(),
    }
}

impl Vec3i {
    pub fn zero() -> Self {
        vec3(0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &Vec3i) -> Integer {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &Vec3i) -> Vec3i {
        Vec3i {
            x: &self.y * &other.z - &self.z * &other.y,
            y: &self.z * &other.x - &self.x * &other.z,
            z: &self.x * &other.y - &self.y * &other.x,
        }
    }

    pub fn scale(&self, k: &Integer) -> Vec3i {
        Vec3i {
            x: k * &self.x,
            y: k * &self.y,
            z: k * &self.z,
        }
    }

    /// Exact division by a nonzero scalar that divides every coordinate.
    fn div_exact(&self, k: &Integer) -> Vec3i {
        debug_assert!(!k.is_zero());
        debug_assert!((&self.x % k).is_zero() && (&self.y % k).is_zero() && (&self.z % k).is_zero());
        Vec3i {
            x: &self.x / k,
            y: &self.y / k,
            z: &self.z / k,
        }
    }

    pub fn coords(&self) -> [&Integer; 3] {
        [&self.x, &self.y, &self.z]
    }
}

impl<'a> Add for &'a Vec3i {
    type Output = Vec3i;
    fn add(self, rhs: &'a Vec3i) -> Vec3i {
        Vec3i {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &self.z + &rhs.z,
        }
    }
}

impl<'a> Sub for &'a Vec3i {
    type Output = Vec3i;
    fn sub(self, rhs: &'a Vec3i) -> Vec3i {
        Vec3i {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
            z: &self.z - &rhs.z,
        }
    }
}

impl Neg for &Vec3i {
    type Output = Vec3i;
    fn neg(self) -> Vec3i {
        Vec3i {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

impl fmt::Display for Vec3i {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl From<[i64; 3]> for Vec3i {
    fn from(a: [i64; 3]) -> Self {
        vec3(a[0], a[1], a[2])
    }
}

/// A vector of `Q³`; shows up in the dual functional and identity checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vec3r {
    pub x: Rational,
    pub y: Rational,
    pub z: Rational,
}

impl Vec3r {
    pub fn zero() -> Self {
        Vec3r {
            x: Rational::zero(),
            y: Rational::zero(),
            z: Rational::zero(),
        }
    }

    pub fn from_int(v: &Vec3i) -> Self {
        Vec3r {
            x: Rational::from_integer(v.x.clone()),
            y: Rational::from_integer(v.y.clone()),
            z: Rational::from_integer(v.z.clone()),
        }
    }

    pub fn dot_int(&self, v: &Vec3i) -> Rational {
        &self.x * Rational::from_integer(v.x.clone())
            + &self.y * Rational::from_integer(v.y.clone())
            + &self.z * Rational::from_integer(v.z.clone())
    }

    pub fn scale(&self, k: &Rational) -> Vec3r {
        Vec3r {
            x: k * &self.x,
            y: k * &self.y,
            z: k * &self.z,
        }
    }
}

impl<'a> Add for &'a Vec3r {
    type Output = Vec3r;
    fn add(self, rhs: &'a Vec3r) -> Vec3r {
        Vec3r {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
            z: &self.z + &rhs.z,
        }
    }
}

impl Mul<&Vec3i> for &Rational {
    type Output = Vec3r;
    fn mul(self, v: &Vec3i) -> Vec3r {
        Vec3r {
            x: self * Rational::from_integer(v.x.clone()),
            y: self * Rational::from_integer(v.y.clone()),
            z: self * Rational::from_integer(v.z.clone()),
        }
    }
}

/// Extension of a primitive `v₁` to a basis of the saturated plane lattice.
///
/// With `e₁ = v₁` and `e₂` the stored vector, `{e₁, e₂}` is an integral basis
/// of `(Rv₁ + Rv₂) ∩ Z³` and `v₂ = p·e₁ + q·e₂` with `q > p ≥ 0`. The value
/// `q` is the lattice index of `Zv₁ + Zv₂` in its saturation; only `s(p, q)`
/// is determined by the pair, `p` itself depends on the construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisPair {
    pub e2: Vec3i,
    pub p: Integer,
    pub q: Integer,
}

/// gcd of the absolute coordinate values; 0 for the zero vector.
pub fn content(v: &Vec3i) -> Integer {
    v.x.gcd(&v.y).gcd(&v.z)
}

/// Scales a nonzero vector down to content 1, preserving direction.
pub fn primitive(v: &Vec3i) -> Result<Vec3i, Error> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let c = content(v);
    Ok(v.div_exact(&c))
}

/// Determinant of the 3×3 matrix with columns `a`, `b`, `c`.
pub fn det3(a: &Vec3i, b: &Vec3i, c: &Vec3i) -> Integer {
    a.dot(&b.cross(c))
}

/// Lattice index of `Zv₁ + Zv₂` in `(Rv₁ + Rv₂) ∩ Z³` for primitive `v₁`.
///
/// Equals the gcd of the three 2×2 minors of the matrix with rows `v₁`, `v₂`
/// (up to sign these are the coordinates of `v₁ × v₂`): the first Smith
/// invariant of that matrix is 1 because `v₁` is primitive, so the minor gcd
/// is the second invariant, which is the index.
pub fn minor_gcd(v1: &Vec3i, v2: &Vec3i) -> Result<Integer, Error> {
    debug_assert!(content(v1).is_one(), "minor_gcd expects primitive v1");
    let cross = v1.cross(v2);
    if cross.is_zero() {
        return Err(Error::DependentVectors);
    }
    Ok(content(&cross))
}

/// Extended gcd: returns `(g, s, t)` with `g = gcd(a, b) ≥ 0` and
/// `s·a + t·b = g`.
pub fn ext_gcd(a: &Integer, b: &Integer) -> (Integer, Integer, Integer) {
    let e = a.extended_gcd(b);
    (e.gcd, e.x, e.y)
}

/// Integral basis of the rank-2 lattice `{w ∈ Z³ : ⟨w, n⟩ = 0}`.
///
/// Requires `n` primitive. The pair `(u₁, u₂)` satisfies `u₁ × u₂ = ±n`,
/// which certifies it generates the full orthogonal lattice.
pub fn plane_lattice_basis(n: &Vec3i) -> (Vec3i, Vec3i) {
    debug_assert!(content(n).is_one(), "plane_lattice_basis expects a primitive normal");
    if n.y.is_zero() && n.z.is_zero() {
        // n = ±e_x
        return (vec3(0, 1, 0), vec3(0, 0, 1));
    }
    let (g, s, t) = ext_gcd(&n.y, &n.z);
    let u1 = Vec3i {
        x: Integer::zero(),
        y: &n.z / &g,
        z: -(&n.y / &g),
    };
    let u2 = Vec3i {
        x: g,
        y: -(&n.x * &s),
        z: -(&n.x * &t),
    };
    debug_assert!(u1.dot(n).is_zero() && u2.dot(n).is_zero());
    debug_assert_eq!(content(&u1.cross(&u2)), Integer::one());
    (u1, u2)
}

/// Integer coordinates of `w` in the plane basis `(u₁, u₂)` with normal `n`.
///
/// `w` must lie in the lattice generated by the basis; the divisions are
/// exact by construction.
pub fn plane_coords(w: &Vec3i, u1: &Vec3i, u2: &Vec3i, n: &Vec3i) -> (Integer, Integer) {
    let d = det3(u1, u2, n);
    debug_assert!(!d.is_zero());
    let alpha = det3(w, u2, n);
    let beta = det3(u1, w, n);
    debug_assert!((&alpha % &d).is_zero() && (&beta % &d).is_zero());
    (alpha / &d, beta / d)
}

/// Basis extension of Definition-style saturated pairs.
///
/// For primitive, independent `v₁`, `v₂`: finds `e₂` such that `{v₁, e₂}` is
/// a basis of `(Rv₁ + Rv₂) ∩ Z³` and `v₂ = p·v₁ + q·e₂` with `q > p ≥ 0`.
/// `q` always equals [`minor_gcd`] of the pair.
pub fn saturated_pair_basis(v1: &Vec3i, v2: &Vec3i) -> Result<BasisPair, Error> {
    debug_assert!(content(v1).is_one() && content(v2).is_one());
    let cross = v1.cross(v2);
    if cross.is_zero() {
        return Err(Error::DependentVectors);
    }
    let n = primitive(&cross)?;
    let (u1, u2) = plane_lattice_basis(&n);

    // 2D coordinates of the pair in the saturated lattice.
    let (a1, b1) = plane_coords(v1, &u1, &u2, &n);
    let (a2, b2) = plane_coords(v2, &u1, &u2, &n);

    // Complete (a1, b1) to a unimodular 2D basis: a1·d - b1·c = 1.
    let (g, d, negc) = ext_gcd(&a1, &b1);
    debug_assert!(g.is_one(), "coordinates of a primitive saturated vector are coprime");
    let c = -negc;

    // v2 in the basis (v1, e2'): invert [[a1, c], [b1, d]].
    let mut p = &d * &a2 - &c * &b2;
    let mut q = &a1 * &b2 - &b1 * &a2;
    let mut e2 = &u1.scale(&c) + &u2.scale(&d);
    if q.is_negative() {
        q = -q;
        e2 = -&e2;
    }
    debug_assert!(!q.is_zero());

    // Shift e2 by multiples of v1 until 0 <= p < q.
    let p_red = p.mod_floor(&q);
    let k = (&p - &p_red) / &q;
    if !k.is_zero() {
        e2 = &e2 + &v1.scale(&k);
    }
    p = p_red;

    debug_assert_eq!(&v1.scale(&p) + &e2.scale(&q), v2.clone());
    Ok(BasisPair { e2, p, q })
}

/// The rational functional `u` with `⟨u,v⟩ = 1`, `⟨u,v₁⟩ = ⟨u,v₂⟩ = 0`,
/// solved by Cramer's rule: `u = (v₁ × v₂) / det(v, v₁, v₂)`.
pub fn dual_functional(v: &Vec3i, v1: &Vec3i, v2: &Vec3i) -> Result<Vec3r, Error> {
    let den = det3(v, v1, v2);
    if den.is_zero() {
        return Err(Error::SingularSystem);
    }
    let cross = v1.cross(v2);
    let den = Rational::from_integer(den);
    Ok(Vec3r {
        x: Rational::from_integer(cross.x) / &den,
        y: Rational::from_integer(cross.y) / &den,
        z: Rational::from_integer(cross.z) / &den,
    })
}

//! The coefficient formulas.
//!
//! For a facet walk with neighboring normals `n₁, …, n_r` (cyclic) around a
//! facet with inward normal `v`, the walk coefficients are
//!
//! ```text
//! ε_i = det(v, n_{i+1}, n_i) > 0,
//! a_i = det(n_{i+1}, n_i, n_{i-1}) / (ε_{i-1} ε_i),
//! b_i = det(v, n_{i+1}, n_{i-1}) / (ε_{i-1} ε_i),
//! ```
//!
//! tied together by the exact relation
//! `ε_{i-1}⁻¹ n_{i-1} + ε_i⁻¹ n_{i+1} = a_i v + b_i n_i`. The facet
//! correction combines them with tridiagonal determinants (diagonal `b`,
//! off-diagonal `ε⁻¹`) and per-edge relative volumes and lattice indices; the
//! linear coefficient of the lattice-point polynomial is the sum of
//! `(s(E) + 1/4)·Vol(E)` over edges plus one twelfth of the sum of facet
//! corrections. In debug builds every `a_i`, `b_i` is cross-checked against
//! its inner-product form, which uses actual edge vectors of the polytope.

use num_integer::Integer as IntegerOps;
use num_traits::{One, Signed, Zero};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::dedekind::{dedekind_fast, edge_dedekind};
use crate::intlinalg::{det3, minor_gcd, Integer, Rational, Vec3i};
use crate::polytope::{
    edge_rel_volume, facet_rel_volume, facet_walk, volume, Edge, FacetWalk, Polytope,
};
use crate::Error;

/// The four coefficients of the lattice-point counting cubic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    pub c0: Rational,
    pub c1: Rational,
    pub c2: Rational,
    pub c3: Rational,
}

impl EhrhartPolynomial {
    pub fn eval(&self, l: &Integer) -> Rational {
        let l = Rational::from_integer(l.clone());
        ((&self.c3 * &l + &self.c2) * &l + &self.c1) * &l + &self.c0
    }

    pub fn coefficients(&self) -> [&Rational; 4] {
        [&self.c0, &self.c1, &self.c2, &self.c3]
    }
}

/// ε, a, b around one facet, indexed like the walk (cyclic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCoefficients {
    pub eps: Vec<Integer>,
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

/// Walk coefficients from the determinant formulas.
///
/// Debug builds recompute `a` and `b` from the edge-vector quotients and
/// assert agreement.
pub fn walk_coefficients(p: &Polytope, w: &FacetWalk) -> Result<WalkCoefficients, Error> {
    let r = w.len();
    let normal = |i: usize| -> &Vec3i { &p.facets[w.edge_facets[i]].normal };
    let mut eps = Vec::with_capacity(r);
    for i in 0..r {
        let e = det3(&w.normal, normal((i + 1) % r), normal(i));
        if e.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        eps.push(e);
    }
    let mut a = Vec::with_capacity(r);
    let mut b = Vec::with_capacity(r);
    for i in 0..r {
        let prev = (i + r - 1) % r;
        let next = (i + 1) % r;
        let den = &eps[prev] * &eps[i];
        a.push(Rational::new(
            det3(normal(next), normal(i), normal(prev)),
            den.clone(),
        ));
        b.push(Rational::new(
            det3(&w.normal, normal(next), normal(prev)),
            den,
        ));
    }
    let coefs = WalkCoefficients { eps, a, b };
    debug_assert_eq!(coefs, walk_coefficients_geometric(p, w)?);
    Ok(coefs)
}

/// Walk coefficients from the defining inner-product quotients; needs the
/// actual edge vectors. Slower route kept as a cross-check of
/// [`walk_coefficients`].
pub fn walk_coefficients_geometric(p: &Polytope, w: &FacetWalk) -> Result<WalkCoefficients, Error> {
    let r = w.len();
    let normal = |i: usize| -> &Vec3i { &p.facets[w.edge_facets[i]].normal };
    let vert = |i: usize| -> &Vec3i { &p.vertices[w.verts[i]] };
    let mut eps = Vec::with_capacity(r);
    for i in 0..r {
        let e = det3(&w.normal, normal((i + 1) % r), normal(i));
        if e.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        eps.push(e);
    }
    let mut a = Vec::with_capacity(r);
    let mut b = Vec::with_capacity(r);
    for i in 0..r {
        let prev = (i + r - 1) % r;
        let next = (i + 1) % r;
        // Edge from the previous walk vertex to its off-facet neighbor.
        let up = &p.vertices[w.off_verts[prev]] - vert(prev);
        let a_den = &eps[i] * up.dot(&w.normal);
        // Edge along the facet boundary from vertex i to vertex i+1.
        let along = vert(next) - vert(i);
        let b_den = &eps[prev] * along.dot(normal(i));
        if a_den.is_zero() || b_den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        a.push(Rational::new(up.dot(normal(next)), a_den));
        b.push(Rational::new(along.dot(normal(prev)), b_den));
    }
    Ok(WalkCoefficients { eps, a, b })
}

/// Symmetric tridiagonal determinant with the given diagonal and reciprocal
/// integer off-diagonal entries; 1 for the empty slice.
pub fn tridiag_det(diag: &[Rational], offdiag: &[Integer]) -> Result<Rational, Error> {
    if offdiag.len() != diag.len().saturating_sub(1) {
        return Err(Error::LengthMismatch {
            diag: diag.len(),
            offdiag: offdiag.len(),
        });
    }
    let mut prev2 = Rational::one();
    let mut prev = Rational::one();
    for (k, d) in diag.iter().enumerate() {
        let cur = if k == 0 {
            d.clone()
        } else {
            let e = &offdiag[k - 1];
            d * &prev - Rational::new(Integer::one(), e * e) * &prev2
        };
        prev2 = std::mem::replace(&mut prev, cur);
    }
    Ok(prev)
}

/// The facet correction from an already-oriented walk.
///
/// Double sum over walk positions `1 ≤ i < j ≤ r-1` (zero-based) of
/// `a_i · D(i+1, j-1) · ε_i⋯ε_{j-1} · Vol(E_j)/m(E_j)`, negated, where `E_j`
/// is the boundary edge from walk vertex `j-1` to `j` and `D` is the
/// tridiagonal determinant over the positions strictly between `i` and `j`.
pub fn facet_correction_from_walk(p: &Polytope, w: &FacetWalk) -> Result<Rational, Error> {
    let coefs = walk_coefficients(p, w)?;
    let r = w.len();
    let mut total = Rational::zero();
    for i in 1..r - 1 {
        if coefs.a[i].is_zero() {
            continue;
        }
        // D for the growing slice b[i+1 ..= j-1], built by the recurrence.
        let mut d_prev2 = Rational::one();
        let mut d_prev = Rational::one();
        let mut eps_prod = coefs.eps[i].clone();
        for j in i + 1..r {
            let d = if j == i + 1 {
                Rational::one()
            } else if j == i + 2 {
                coefs.b[i + 1].clone()
            } else {
                let e = &coefs.eps[j - 2];
                &coefs.b[j - 1] * &d_prev - Rational::new(Integer::one(), e * e) * &d_prev2
            };

            let vol = edge_rel_volume_between(p, w.verts[j - 1], w.verts[j]);
            let m = minor_gcd(&w.normal, &p.facets[w.edge_facets[j]].normal)?;
            let term = &coefs.a[i]
                * &d
                * Rational::new(&eps_prod * &vol, m);
            total += term;

            d_prev2 = std::mem::replace(&mut d_prev, d);
            eps_prod *= &coefs.eps[j];
        }
    }
    Ok(-total)
}

fn edge_rel_volume_between(p: &Polytope, a: usize, b: usize) -> Integer {
    let e = p
        .edge_between(a, b)
        .expect("walk boundary pairs are edges");
    edge_rel_volume(p, &p.edges[e])
}

/// Correction attached to one facet.
pub fn facet_correction(p: &Polytope, facet: usize) -> Result<Rational, Error> {
    let w = facet_walk(p, facet)?;
    facet_correction_from_walk(p, &w)
}

/// `(s(E) + 1/4) · Vol(E)` for one edge.
pub fn edge_term(p: &Polytope, e: &Edge) -> Result<Rational, Error> {
    let arith = edge_dedekind(
        &p.facets[e.facets.0].normal,
        &p.facets[e.facets.1].normal,
    )?;
    let quarter = Rational::new(Integer::one(), Integer::from(4));
    Ok((arith.dedekind_sum + quarter) * Rational::from_integer(edge_rel_volume(p, e)))
}

/// The linear coefficient: edge terms plus a twelfth of the facet
/// corrections. Exact rational arithmetic makes the summation order
/// irrelevant, so the sums may fan out over threads.
pub fn c1(p: &Polytope) -> Result<Rational, Error> {
    #[cfg(feature = "parallel")]
    let edge_terms: Result<Vec<Rational>, Error> =
        p.edges.par_iter().map(|e| edge_term(p, e)).collect();
    #[cfg(not(feature = "parallel"))]
    let edge_terms: Result<Vec<Rational>, Error> =
        p.edges.iter().map(|e| edge_term(p, e)).collect();

    #[cfg(feature = "parallel")]
    let corrections: Result<Vec<Rational>, Error> = (0..p.facets.len())
        .into_par_iter()
        .map(|f| facet_correction(p, f))
        .collect();
    #[cfg(not(feature = "parallel"))]
    let corrections: Result<Vec<Rational>, Error> =
        (0..p.facets.len()).map(|f| facet_correction(p, f)).collect();

    let edges: Rational = edge_terms?.into_iter().sum();
    let facets: Rational = corrections?.into_iter().sum();
    Ok(edges + facets / Rational::from_integer(Integer::from(12)))
}

/// All four coefficients: `c₀ = 1`, `c₁` from the closed formula, `c₂` half
/// the facet relative volumes, `c₃` the volume.
pub fn ehrhart_polynomial(p: &Polytope) -> Result<EhrhartPolynomial, Error> {
    let half = Rational::new(Integer::one(), Integer::from(2));
    let c2 = p
        .facets
        .iter()
        .map(|f| facet_rel_volume(p, f))
        .sum::<Rational>()
        * &half;
    let poly = EhrhartPolynomial {
        c0: Rational::one(),
        c1: c1(p)?,
        c2,
        c3: volume(p),
    };
    debug_assert!(poly.c3.is_positive());
    debug_assert!((&poly.c3 * Rational::from_integer(Integer::from(6))).is_integer());
    debug_assert!((&poly.c2 * Rational::from_integer(Integer::from(4))).is_integer());
    Ok(poly)
}

/// Closed form for the linear coefficient of the axis tetrahedron with legs
/// `a`, `b`, `c` (gcd 1): quarter-perimeter, three Dedekind-sum edge terms,
/// and the `(ab/c + ac/b + bc/a + d²/abc)/12` block.
pub fn closed_form_tetra_c1(a: i64, b: i64, c: i64) -> Result<Rational, Error> {
    debug_assert!(a >= 1 && b >= 1 && c >= 1);
    if num_integer::gcd(num_integer::gcd(a, b), c) != 1 {
        return Err(Error::GcdNotOne);
    }
    let (a, b, c) = (Integer::from(a), Integer::from(b), Integer::from(c));
    let big_a = b.gcd(&c);
    let big_b = a.gcd(&c);
    let big_c = a.gcd(&b);
    let d = &big_a * &big_b * &big_c;
    let quarter = Rational::new(Integer::one(), Integer::from(4));
    let frac = |n: Integer, den: Integer| Rational::new(n, den);

    let s1 = dedekind_fast(&(&a * &b / &d), &(&c * &big_c / &d))?;
    let s2 = dedekind_fast(&(&a * &c / &d), &(&b * &big_b / &d))?;
    let s3 = dedekind_fast(&(&b * &c / &d), &(&a * &big_a / &d))?;

    let perimeter = frac(&a + &b + &c, Integer::from(4));
    let edge_terms = (&quarter - s1) * Rational::from_integer(big_c.clone())
        + (&quarter - s2) * Rational::from_integer(big_b.clone())
        + (&quarter - s3) * Rational::from_integer(big_a.clone());
    let block = (frac(&a * &b, c.clone())
        + frac(&a * &c, b.clone())
        + frac(&b * &c, a.clone())
        + frac(&d * &d, &a * &b * &c))
        / Rational::from_integer(Integer::from(12));
    Ok(perimeter + edge_terms + block)
}

/// Closed form for the linear coefficient of the twisted prism family:
/// `3a/2 + gcd(b, c)`.
pub fn closed_form_prism_c1(a: i64, b: i64, c: i64) -> Rational {
    debug_assert!(a >= 1 && c >= 1 && b >= 0);
    Rational::new(Integer::from(3 * a), Integer::from(2))
        + Rational::from_integer(Integer::from(num_integer::gcd(b, c)))
}

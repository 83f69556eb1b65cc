//! Exact Dedekind sums.
//!
//! `s(p, q) = Σ_{i=1}^{q} ((i/q)) ((pi/q))` with `((x))` the sawtooth
//! function. [`dedekind_direct`] evaluates the sum term by term and serves as
//! the oracle; [`dedekind_fast`] applies the classical reciprocity recursion
//! and finishes in `O(log q)` arithmetic steps. [`edge_dedekind`] packages the
//! pair `(m(E), s(E))` attached to an edge from its two facet normals.

use num_integer::Integer as IntegerOps;
use num_traits::{One, Zero};

use crate::intlinalg::{self, Integer, Rational, Vec3i};
use crate::Error;

/// Lattice index and Dedekind sum of an edge, keyed by its facet-normal pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeArith {
    /// Index `m(E)` of `Zv₁ + Zv₂` in its saturation; `≥ 1`.
    pub lattice_index: Integer,
    /// `s(E) = s(p, q)`; zero whenever the index is 1.
    pub dedekind_sum: Rational,
}

/// Sawtooth `((x))`: `x - ⌊x⌋ - 1/2` for non-integers, 0 at integers.
pub fn sawtooth(x: &Rational) -> Rational {
    if x.is_integer() {
        return Rational::zero();
    }
    x - x.floor() - Rational::new(Integer::one(), Integer::from(2))
}

/// Term-by-term Dedekind sum; the reference evaluator.
///
/// For `0 < k < q` the sawtooth is `((k/q)) = (2k - q)/(2q)`, so every term
/// has denominator `4q²` and the whole sum accumulates as one integer
/// numerator. `r` tracks `p·i mod q` incrementally.
pub fn dedekind_direct(p: &Integer, q: &Integer) -> Result<Rational, Error> {
    if q < &Integer::one() {
        return Err(Error::InvalidModulus { q: q.clone() });
    }
    let p_mod = p.mod_floor(q);
    let two = Integer::from(2);
    let mut num = Integer::zero();
    let mut r = Integer::zero();
    let mut i = Integer::one();
    // The i = q term vanishes: ((q/q)) = 0.
    while &i < q {
        r += &p_mod;
        if &r >= q {
            r -= q;
        }
        if !r.is_zero() {
            let left = &two * &i - q;
            let right = &two * &r - q;
            num += left * right;
        }
        i += 1;
    }
    Ok(Rational::new(num, Integer::from(4) * q * q))
}

/// Reciprocity-based Dedekind sum, `O(log q)` steps.
///
/// `p` may be any representative mod `q`. Requires `gcd(p mod q, q) = 1`
/// unless `p ≡ 0`, in which case the sum is 0.
pub fn dedekind_fast(p: &Integer, q: &Integer) -> Result<Rational, Error> {
    if q < &Integer::one() {
        return Err(Error::InvalidModulus { q: q.clone() });
    }
    let mut p = p.mod_floor(q);
    let mut q = q.clone();
    if !p.is_zero() && !p.gcd(&q).is_one() {
        return Err(Error::NotCoprime { p, q });
    }

    // s(p, q) = (p² + q² + 1)/(12pq) - 1/4 - s(q mod p, p), Euclid-style.
    let quarter = Rational::new(Integer::one(), Integer::from(4));
    let twelve = Integer::from(12);
    let mut acc = Rational::zero();
    let mut sign = 1i32;
    while !p.is_zero() {
        let num = &p * &p + &q * &q + Integer::one();
        let den = &twelve * &p * &q;
        let step = Rational::new(num, den) - &quarter;
        if sign > 0 {
            acc += step;
        } else {
            acc -= step;
        }
        sign = -sign;
        let r = q.mod_floor(&p);
        q = std::mem::replace(&mut p, r);
    }
    Ok(acc)
}

/// `(m(E), s(E))` for the edge whose incident facets have primitive inward
/// normals `v1`, `v2`.
pub fn edge_dedekind(v1: &Vec3i, v2: &Vec3i) -> Result<EdgeArith, Error> {
    let m = intlinalg::minor_gcd(v1, v2)?;
    let basis = intlinalg::saturated_pair_basis(v1, v2)?;
    debug_assert_eq!(basis.q, m, "saturation index must match the minor gcd");
    let s = dedekind_fast(&basis.p, &basis.q)?;
    Ok(EdgeArith {
        lattice_index: m,
        dedekind_sum: s,
    })
}

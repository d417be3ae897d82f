//! Kostant partition functions of `Δ⁺(A,B)`.
//!
//! - [`partition_count`]: exact count at one point
//! - [`tope_polynomial`]: the polynomial valid on a tope, along a ray
//! - [`volume_polynomial`]: the top-degree (volume) part along a ray
//! - [`partition_count_bruteforce`]: independent oracle

mod brute;
mod residue;

pub use brute::{partition_count_bruteforce, BruteForce};
pub use residue::{iterated_residue, kostant_fraction, Exponential, Kernel, KostantFraction, Numeric, Symbolic};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{AffineExponent, Rational, UniPoly};
use crate::mpns::{mpns_all, OrderedBasis};
use crate::roots::{delta_n_plus, rho_n, ABPattern, DeformedVector, RootList};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PartitionError {
    #[error("point is not integral")]
    NotIntegral,
    #[error("point does not have total sum zero")]
    NonZeroSum,
    #[error("point has {got} coordinates, expected {want}")]
    Length { got: usize, want: usize },
    #[error("coordinate too large for an exponent")]
    Overflow,
}

/// `Δ⁺(A,B)` with its half sum.
#[derive(Clone, Debug)]
pub struct NoncompactSystem {
    pub pattern: ABPattern,
    pub roots: RootList,
    pub rho: Vec<Rational>,
}

impl NoncompactSystem {
    pub fn new(pattern: ABPattern) -> Self {
        let roots = delta_n_plus(&pattern);
        let rho = rho_n(&roots);
        NoncompactSystem { pattern, roots, rho }
    }

    pub fn n(&self) -> usize {
        self.pattern.n()
    }

    /// `pq - (p+q-1)`, the degree bound of every tope polynomial.
    pub fn degree_bound(&self) -> usize {
        self.roots.len() - self.roots.rank()
    }

    /// Bases of the tope selected by `point` (a deformed `h + ρ_n`).
    pub fn bases(&self, point: &DeformedVector) -> Vec<OrderedBasis> {
        mpns_all(point, &self.pattern)
    }

    fn check(&self, h: &[Rational]) -> Result<Vec<i64>, PartitionError> {
        let n = self.n();
        let h = expand(h, n)?;
        h.iter()
            .map(|x| {
                if !x.is_integer() {
                    Err(PartitionError::NotIntegral)
                } else {
                    x.to_integer().to_i64().ok_or(PartitionError::Overflow)
                }
            })
            .collect()
    }
}

/// Accepts ambient (`n`) or reduced (`n-1`) coordinates and returns ambient ones.
pub fn expand(h: &[Rational], n: usize) -> Result<Vec<Rational>, PartitionError> {
    if h.len() == n {
        if !h.iter().sum::<Rational>().is_zero() {
            return Err(PartitionError::NonZeroSum);
        }
        Ok(h.to_vec())
    } else if h.len() + 1 == n {
        let mut v = h.to_vec();
        v.push(-h.iter().sum::<Rational>());
        Ok(v)
    } else {
        Err(PartitionError::Length { got: h.len(), want: n })
    }
}

fn as_rationals(h: &[i64]) -> Vec<Rational> {
    h.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// Sum of iterated residues over `bases`, in parallel.
pub fn sum_residues<K: Kernel>(bases: &[OrderedBasis], f: &KostantFraction, kernel: &K) -> K::C {
    bases
        .par_iter()
        .map(|b| iterated_residue(b, f, kernel))
        .reduce(
            || kernel.zero(),
            |mut a, b| {
                kernel.add_assign(&mut a, &b);
                a
            },
        )
}

/// `N(h)` for `Δ⁺(A,B)`, with `h` integral (ambient or reduced coordinates).
pub fn partition_count(sys: &NoncompactSystem, h: &[Rational]) -> Result<BigInt, PartitionError> {
    let hi = sys.check(h)?;
    let point: Vec<Rational> = as_rationals(&hi).iter().zip(&sys.rho).map(|(a, b)| a + b).collect();
    let bases = sys.bases(&DeformedVector::deform(&point));
    Ok(count_on_bases(sys, &hi, &bases))
}

/// Residue sum at the integral point `h` over an already chosen set of bases:
/// the polynomial of their tope evaluated at `h`, wherever `h` lies.
pub fn count_on_bases(sys: &NoncompactSystem, h: &[i64], bases: &[OrderedBasis]) -> BigInt {
    if bases.is_empty() {
        return BigInt::zero();
    }
    let exps: Vec<AffineExponent> = h.iter().map(|&x| AffineExponent::constant(x)).collect();
    let f = kostant_fraction(&sys.roots, &exps);
    sum_residues(bases, &f, &Numeric)
}

/// Polynomial `P(t)` with `N(h0 + t v) = P(t)` on the tope of `h0 + sample_t·v + ρ_n`.
pub fn tope_polynomial(
    sys: &NoncompactSystem,
    h0: &[i64],
    v: &[i64],
    sample_t: &Rational,
) -> Result<UniPoly, PartitionError> {
    let point = ray_point(sys, h0, v, sample_t)?;
    tope_polynomial_at(sys, h0, v, &DeformedVector::deform(&point))
}

/// Polynomial along `h0 + t v` for the tope containing the deformed `point`.
pub fn tope_polynomial_at(
    sys: &NoncompactSystem,
    h0: &[i64],
    v: &[i64],
    point: &DeformedVector,
) -> Result<UniPoly, PartitionError> {
    let f = ray_fraction(sys, h0, v)?;
    let bases = sys.bases(point);
    Ok(sum_residues(&bases, &f, &Symbolic))
}

/// Top-degree part of the tope polynomial along `h0 + t v`: the volume of
/// the partition polytope, a homogeneous polynomial of degree `pq-(p+q-1)` in `h`.
pub fn volume_polynomial(
    sys: &NoncompactSystem,
    h0: &[i64],
    v: &[i64],
    sample_t: &Rational,
) -> Result<UniPoly, PartitionError> {
    let point = ray_point(sys, h0, v, sample_t)?;
    let n = sys.n();
    let h0 = sys.check(&as_rationals(h0))?;
    let v = sys.check(&as_rationals(v))?;
    let exps: Vec<AffineExponent> = (0..n).map(|i| AffineExponent::new(h0[i], v[i])).collect();
    let f = KostantFraction { n, exps, forms: sys.roots.roots.clone() };
    let bases = sys.bases(&DeformedVector::deform(&point));
    Ok(sum_residues(&bases, &f, &Exponential))
}

fn ray_point(sys: &NoncompactSystem, h0: &[i64], v: &[i64], t: &Rational) -> Result<Vec<Rational>, PartitionError> {
    let n = sys.n();
    let h0 = sys.check(&as_rationals(h0))?;
    let v = sys.check(&as_rationals(v))?;
    Ok((0..n).map(|i| Rational::from_integer(h0[i].into()) + t * Rational::from_integer(v[i].into()) + &sys.rho[i]).collect())
}

fn ray_fraction(sys: &NoncompactSystem, h0: &[i64], v: &[i64]) -> Result<KostantFraction, PartitionError> {
    let n = sys.n();
    let h0 = sys.check(&as_rationals(h0))?;
    let v = sys.check(&as_rationals(v))?;
    let exps: Vec<AffineExponent> = (0..n).map(|i| AffineExponent::new(h0[i], v[i])).collect();
    Ok(kostant_fraction(&sys.roots, &exps))
}

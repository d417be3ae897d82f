//! Blattner's formula for discrete series of `U(p,q)`.
//!
//! `m(μ) = Σ_{w ∈ S_p×S_q} ε(w) N(wμ - λ - ρ_n)` where `N` is the partition
//! function of the noncompact positive roots for `λ`.
//!
//! - [`discretemult`]: multiplicity of one K-type
//! - [`lowest_k_type`], [`vogan_lowest_k_type`]
//! - [`valid_permutations`]: the `w` whose term can be nonzero
//! - [`multiplicity_direction`]: piecewise polynomial along `μ_lowest + t v`

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use num_traits::ToPrimitive;

use crate::algebra::{
    ceil_int, floor_int, frac, parse_rational, rat_to_string, to_i64, AffineExponent, Piece, PiecewisePolynomial, Rational, UniPoly,
};
use crate::partition::{count_on_bases, kostant_fraction, sum_residues, BruteForce, NoncompactSystem, Symbolic};
use crate::roots::{chamber_pattern, in_positive_cone, noncompact_walls, DeformedVector, RootError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BlattnerError {
    #[error("{which} must have blocks of sizes {p} and {q}, got {got_p} and {got_q}")]
    Shape { which: &'static str, p: usize, q: usize, got_p: usize, got_q: usize },
    #[error("{which}: block {block} is not strictly decreasing at position {index}")]
    NotStrictlyDecreasing { which: &'static str, block: usize, index: usize },
    #[error("{which}: entry {value} in block {block} has the wrong parity (expected {expected})")]
    Parity { which: &'static str, block: usize, value: String, expected: &'static str },
    #[error("lambda is not regular: {0} occurs twice")]
    NonRegular(String),
    #[error("direction: {0}")]
    Direction(String),
    #[error("p and q must be positive")]
    Empty,
}

impl From<RootError> for BlattnerError {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NonRegular(v) => BlattnerError::NonRegular(v),
            other => BlattnerError::Direction(other.to_string()),
        }
    }
}

/// Harish-Chandra parameter of a discrete series of `U(p,q)`: `[[α],[γ]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcParamG {
    pub alpha: Vec<Rational>,
    pub gamma: Vec<Rational>,
}

/// Harish-Chandra parameter of an irreducible representation of `U(p)×U(q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HcParamK {
    pub a: Vec<Rational>,
    pub b: Vec<Rational>,
}

impl HcParamG {
    pub fn new(alpha: Vec<Rational>, gamma: Vec<Rational>) -> Self {
        HcParamG { alpha, gamma }
    }

    pub fn flat(&self) -> Vec<Rational> {
        self.alpha.iter().chain(&self.gamma).cloned().collect()
    }
}

impl HcParamK {
    pub fn new(a: Vec<Rational>, b: Vec<Rational>) -> Self {
        HcParamK { a, b }
    }

    pub fn flat(&self) -> Vec<Rational> {
        self.a.iter().chain(&self.b).cloned().collect()
    }

    pub fn from_flat(v: &[Rational], p: usize) -> Self {
        HcParamK { a: v[..p].to_vec(), b: v[p..].to_vec() }
    }

    pub fn blocks(&self) -> Vec<Vec<String>> {
        vec![self.a.iter().map(rat_to_string).collect(), self.b.iter().map(rat_to_string).collect()]
    }
}

impl Serialize for HcParamK {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.blocks().serialize(s)
    }
}

impl<'de> Deserialize<'de> for HcParamK {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        let [a, b] = <[Vec<String>; 2]>::try_from(raw).map_err(|_| de::Error::custom("expected two blocks"))?;
        let parse = |v: Vec<String>| {
            v.iter().map(|x| parse_rational(x).map_err(de::Error::custom)).collect::<Result<Vec<_>, _>>()
        };
        Ok(HcParamK::new(parse(a)?, parse(b)?))
    }
}

fn fmt_blocks(f: &mut fmt::Formatter<'_>, x: &[Rational], y: &[Rational]) -> fmt::Result {
    let s = |v: &[Rational]| v.iter().map(rat_to_string).collect::<Vec<_>>().join(",");
    write!(f, "[[{}],[{}]]", s(x), s(y))
}

impl fmt::Display for HcParamK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_blocks(f, &self.a, &self.b)
    }
}

impl fmt::Display for HcParamG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_blocks(f, &self.alpha, &self.gamma)
    }
}

fn is_half_odd(x: &Rational) -> bool {
    *x.denom() == BigInt::from(2)
}

fn check_block(
    which: &'static str,
    block: usize,
    v: &[Rational],
    integral: bool,
) -> Result<(), BlattnerError> {
    for (k, w) in v.windows(2).enumerate() {
        if w[0] <= w[1] {
            return Err(BlattnerError::NotStrictlyDecreasing { which, block, index: k + 1 });
        }
    }
    for x in v {
        let ok = if integral { x.is_integer() } else { is_half_odd(x) };
        if !ok {
            let expected = if integral { "integer" } else { "half-odd integer" };
            return Err(BlattnerError::Parity { which, block, value: rat_to_string(x), expected });
        }
    }
    Ok(())
}

fn check_shape(which: &'static str, x: &[Rational], y: &[Rational], p: usize, q: usize) -> Result<(), BlattnerError> {
    if p == 0 || q == 0 {
        return Err(BlattnerError::Empty);
    }
    if x.len() != p || y.len() != q {
        return Err(BlattnerError::Shape { which, p, q, got_p: x.len(), got_q: y.len() });
    }
    Ok(())
}

/// Checks ordering, parity (integers iff `p+q` is odd) and regularity of `λ`.
pub fn validate_lambda(lambda: &HcParamG, p: usize, q: usize) -> Result<(), BlattnerError> {
    check_shape("lambda", &lambda.alpha, &lambda.gamma, p, q)?;
    let integral = (p + q) % 2 == 1;
    check_block("lambda", 1, &lambda.alpha, integral)?;
    check_block("lambda", 2, &lambda.gamma, integral)?;
    chamber_pattern(&lambda.alpha, &lambda.gamma)?;
    Ok(())
}

/// Checks ordering and parity of `μ` (block of size `k` integral iff `k` is odd).
pub fn validate_mu(mu: &HcParamK, p: usize, q: usize) -> Result<(), BlattnerError> {
    check_shape("mu", &mu.a, &mu.b, p, q)?;
    check_block("mu", 1, &mu.a, p % 2 == 1)?;
    check_block("mu", 2, &mu.b, q % 2 == 1)?;
    Ok(())
}

/// Validates a pair. A mismatch of total sums is not an error: the
/// multiplicity is then 0.
pub fn validate(lambda: &HcParamG, mu: &HcParamK, p: usize, q: usize) -> Result<(), BlattnerError> {
    validate_lambda(lambda, p, q)?;
    validate_mu(mu, p, q)
}

/// Everything about `λ` needed by the formula.
#[derive(Clone, Debug)]
pub struct Setting {
    pub p: usize,
    pub q: usize,
    /// `sigma[k]`: original index of the `k`-th largest entry of `λ`.
    pub sigma: Vec<usize>,
    pub sys: NoncompactSystem,
    /// `λ` in sorted (relabeled) order.
    pub lambda_sorted: Vec<Rational>,
}

impl Setting {
    pub fn new(lambda: &HcParamG, p: usize, q: usize) -> Result<Self, BlattnerError> {
        validate_lambda(lambda, p, q)?;
        let (pattern, sigma) = chamber_pattern(&lambda.alpha, &lambda.gamma)?;
        let flat = lambda.flat();
        let lambda_sorted = sigma.iter().map(|&s| flat[s].clone()).collect();
        Ok(Setting { p, q, sigma, sys: NoncompactSystem::new(pattern), lambda_sorted })
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }

    /// `ρ_n` in original coordinates.
    pub fn rho_original(&self) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n()];
        for (k, &s) in self.sigma.iter().enumerate() {
            out[s] = self.sys.rho[k].clone();
        }
        out
    }

    /// Relabeled `wμ - λ` as a deformed vector, `μ` given in K order.
    fn point(&self, w: &SignedPermutation, mu: &DeformedVector) -> DeformedVector {
        let nu: Vec<usize> = self.sigma.iter().map(|&s| w.image(s, self.p)).collect();
        let neg: Vec<Rational> = self.lambda_sorted.iter().map(|x| -x).collect();
        mu.permute(&nu).add_exact(&neg)
    }

    /// Relabeled `w v` for an exact vector in K order.
    pub fn permuted(&self, w: &SignedPermutation, v: &[Rational]) -> Vec<Rational> {
        self.sigma.iter().map(|&s| v[w.image(s, self.p)].clone()).collect()
    }
}

/// Element of `S_p × S_q` with its sign.
///
/// Acting on `μ = [[a],[b]]`, `(wμ)` has `a[pa[i]]` in slot `i` of the first
/// block and `b[pb[i]]` in slot `i` of the second.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SignedPermutation {
    pub pa: Vec<usize>,
    pub pb: Vec<usize>,
    pub sign: i32,
}

impl SignedPermutation {
    pub fn identity(p: usize, q: usize) -> Self {
        SignedPermutation { pa: (0..p).collect(), pb: (0..q).collect(), sign: 1 }
    }

    /// Index into the flat `μ` that lands at flat position `s`.
    fn image(&self, s: usize, p: usize) -> usize {
        if s < p {
            self.pa[s]
        } else {
            p + self.pb[s - p]
        }
    }

    pub fn apply(&self, mu: &HcParamK) -> HcParamK {
        HcParamK {
            a: self.pa.iter().map(|&k| mu.a[k].clone()).collect(),
            b: self.pb.iter().map(|&k| mu.b[k].clone()).collect(),
        }
    }

    pub fn from_perms(pa: Vec<usize>, pb: Vec<usize>) -> Self {
        let sign = perm_sign(&pa) * perm_sign(&pb);
        SignedPermutation { pa, pb, sign }
    }
}

pub fn perm_sign(p: &[usize]) -> i32 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                cur.push(k);
                go(n, cur, used, out);
                cur.pop();
                used[k] = false;
            }
        }
    }
    go(n, &mut cur, &mut used, &mut out);
    out
}

/// Every element of `S_p × S_q`.
pub fn compact_weyl_group(p: usize, q: usize) -> Vec<SignedPermutation> {
    let pb = permutations(q);
    permutations(p)
        .into_iter()
        .flat_map(|a| pb.iter().map(move |b| SignedPermutation::from_perms(a.clone(), b.clone())))
        .collect()
}

/// `λ + ρ_n` with each block sorted decreasingly.
pub fn lowest_k_type(lambda: &HcParamG, p: usize, q: usize) -> Result<HcParamK, BlattnerError> {
    let set = Setting::new(lambda, p, q)?;
    let rho = set.rho_original();
    let v: Vec<Rational> = lambda.flat().iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut a = v[..p].to_vec();
    let mut b = v[p..].to_vec();
    a.sort_by(|x, y| y.cmp(x));
    b.sort_by(|x, y| y.cmp(x));
    Ok(HcParamK { a, b })
}

/// `((k-1)/2, (k-3)/2, …, -(k-1)/2)`.
pub fn rho_block(k: usize) -> Vec<Rational> {
    (0..k).map(|i| frac(k as i64 - 1 - 2 * i as i64, 2)).collect()
}

/// Highest weight of the lowest K-type: `lowest_k_type(λ) - ρ_c`.
pub fn vogan_lowest_k_type(lambda: &HcParamG, p: usize, q: usize) -> Result<HcParamK, BlattnerError> {
    let low = lowest_k_type(lambda, p, q)?;
    let sub = |x: &[Rational], r: Vec<Rational>| x.iter().zip(r).map(|(a, b)| a - b).collect();
    Ok(HcParamK { a: sub(&low.a, rho_block(p)), b: sub(&low.b, rho_block(q)) })
}

/// The `w` with `wμ - λ` in the cone spanned by all positive roots.
///
/// Other terms of the sum vanish. Slots are filled in the order of `λ`, so a
/// negative partial sum prunes the branch.
pub fn valid_permutations(set: &Setting, mu: &HcParamK) -> Vec<SignedPermutation> {
    if mu.flat().iter().sum::<Rational>() != set.lambda_sorted.iter().sum::<Rational>() {
        return Vec::new();
    }
    let mut search = PermSearch {
        set,
        mu,
        pa: vec![0; set.p],
        pb: vec![0; set.q],
        used_a: vec![false; set.p],
        used_b: vec![false; set.q],
        out: Vec::new(),
    };
    search.go(0, Rational::zero());
    search.out
}

struct PermSearch<'a> {
    set: &'a Setting,
    mu: &'a HcParamK,
    pa: Vec<usize>,
    pb: Vec<usize>,
    used_a: Vec<bool>,
    used_b: Vec<bool>,
    out: Vec<SignedPermutation>,
}

impl PermSearch<'_> {
    fn go(&mut self, k: usize, acc: Rational) {
        let (n, p) = (self.set.n(), self.set.p);
        if k == n {
            self.out.push(SignedPermutation::from_perms(self.pa.clone(), self.pb.clone()));
            return;
        }
        let s = self.set.sigma[k];
        let in_a = s < p;
        let size = if in_a { p } else { self.set.q };
        for c in 0..size {
            let used = if in_a { self.used_a[c] } else { self.used_b[c] };
            if used {
                continue;
            }
            let entry = if in_a { &self.mu.a[c] } else { &self.mu.b[c] };
            let next = &acc + entry - &self.set.lambda_sorted[k];
            if k + 1 < n && next.is_negative() {
                continue;
            }
            if in_a {
                self.used_a[c] = true;
                self.pa[s] = c;
            } else {
                self.used_b[c] = true;
                self.pb[s - p] = c;
            }
            self.go(k + 1, next);
            if in_a {
                self.used_a[c] = false;
            } else {
                self.used_b[c] = false;
            }
        }
    }
}

/// Outcome of Blattner's formula for one K-type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityResult {
    /// The multiplicity, `|signed|`.
    pub value: BigInt,
    /// The signed sum, as produced by the formula for the given `μ`.
    pub signed: BigInt,
    /// Nonzero terms `ε(w) N(wμ - λ - ρ_n)`.
    pub contributions: Vec<(SignedPermutation, BigInt)>,
}

/// Multiplicity of the K-type `μ` in the discrete series `λ`.
pub fn discretemult(mu: &HcParamK, lambda: &HcParamG, p: usize, q: usize) -> Result<MultiplicityResult, BlattnerError> {
    validate(lambda, mu, p, q)?;
    let set = Setting::new(lambda, p, q)?;
    Ok(discretemult_in(&set, mu))
}

/// [`discretemult`] for a prepared setting (no validation of `μ`).
pub fn discretemult_in(set: &Setting, mu: &HcParamK) -> MultiplicityResult {
    let valid = valid_permutations(set, mu);
    let mu_reg = DeformedVector::deform(&mu.flat());
    let mut contributions: Vec<(SignedPermutation, BigInt)> = valid
        .into_par_iter()
        .filter_map(|w| {
            let point = set.point(&w, &mu_reg);
            let h: Vec<i64> = point
                .base()
                .iter()
                .zip(&set.sys.rho)
                .map(|(x, r)| to_i64(&(x - r)).expect("wμ - λ - ρ_n is integral"))
                .collect();
            let bases = set.sys.bases(&point);
            let c = count_on_bases(&set.sys, &h, &bases);
            if c.is_zero() {
                None
            } else {
                Some((w.clone(), c * BigInt::from(w.sign)))
            }
        })
        .collect();
    contributions.sort_by(|a, b| (&a.0.pa, &a.0.pb).cmp(&(&b.0.pa, &b.0.pb)));
    let signed: BigInt = contributions.iter().map(|(_, c)| c).sum();
    MultiplicityResult { value: signed.abs(), signed, contributions }
}

/// Oracle: `Σ_{w ∈ S_p×S_q} ε(w) N(wμ - λ - ρ_n)` with `N` counted directly.
///
/// Uses neither valid-permutation pruning nor residues.
pub fn discretemult_bruteforce(set: &Setting, mu: &HcParamK, bf: &mut BruteForce) -> BigInt {
    let total: Rational = mu.flat().iter().sum();
    if total != set.lambda_sorted.iter().sum::<Rational>() {
        return BigInt::zero();
    }
    let flat = mu.flat();
    let mut sum = BigInt::zero();
    for w in compact_weyl_group(set.p, set.q) {
        let h: Vec<i64> = set
            .permuted(&w, &flat)
            .iter()
            .zip(&set.lambda_sorted)
            .zip(&set.sys.rho)
            .map(|((m, l), r)| to_i64(&(m - l - r)).expect("wμ - λ - ρ_n is integral"))
            .collect();
        let c = bf.count(&h);
        if w.sign > 0 {
            sum += c;
        } else {
            sum -= c;
        }
    }
    sum
}

fn parse_direction(v: &HcParamK, p: usize, q: usize) -> Result<Vec<i64>, BlattnerError> {
    if v.a.len() != p || v.b.len() != q {
        return Err(BlattnerError::Shape { which: "v", p, q, got_p: v.a.len(), got_q: v.b.len() });
    }
    let flat = v.flat();
    let ints: Vec<i64> = flat
        .iter()
        .map(|x| to_i64(x).ok_or_else(|| BlattnerError::Direction(format!("entry {} is not an integer", rat_to_string(x)))))
        .collect::<Result<_, _>>()?;
    if ints.iter().sum::<i64>() != 0 {
        return Err(BlattnerError::Direction("entries must sum to zero".into()));
    }
    Ok(ints)
}

/// Times `t > 0` at which `w(μ0 + t v) - λ` crosses a noncompact wall while
/// inside the cone of positive roots, for some `w`; `0` is prepended.
pub fn wall_crossing_times(set: &Setting, mu0: &HcParamK, v: &[i64]) -> Vec<Rational> {
    let n = set.n();
    let vq: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x.into())).collect();
    let mu0 = mu0.flat();
    let walls = noncompact_walls(&set.sys.pattern);
    let group = compact_weyl_group(set.p, set.q);
    let mut times: Vec<Rational> = group
        .par_iter()
        .flat_map_iter(|w| {
            let x0: Vec<Rational> = set
                .permuted(w, &mu0)
                .iter()
                .zip(&set.lambda_sorted)
                .map(|(a, b)| a - b)
                .collect();
            let xv = set.permuted(w, &vq);
            let mut ts = Vec::new();
            for wall in &walls {
                let b = wall.eval(&xv);
                if b.is_zero() {
                    continue;
                }
                let t = -wall.eval(&x0) / b;
                if !t.is_positive() {
                    continue;
                }
                let x: Vec<Rational> = (0..n).map(|k| &x0[k] + &t * &xv[k]).collect();
                if in_positive_cone(&x).unwrap_or(false) {
                    ts.push(t);
                }
            }
            ts
        })
        .collect();
    times.push(Rational::zero());
    times.sort();
    times.dedup();
    times
}

/// The raw piecewise polynomial `t ↦ m(μ_lowest + t v)` for integers `t ≥ 0`.
pub fn multiplicity_direction(
    lambda: &HcParamG,
    v: &HcParamK,
    p: usize,
    q: usize,
) -> Result<PiecewisePolynomial, BlattnerError> {
    let set = Setting::new(lambda, p, q)?;
    let v = parse_direction(v, p, q)?;
    let mu0 = lowest_k_type(lambda, p, q)?;
    let times = wall_crossing_times(&set, &mu0, &v);
    let mut pieces = Vec::new();
    for (k, t) in times.iter().enumerate() {
        let next = times.get(k + 1);
        let lo = ceil_int(t);
        let hi = next.map(floor_int);
        if hi.as_ref().is_some_and(|h| *h < lo) {
            continue;
        }
        let sample = match next {
            Some(u) => (t + u) / Rational::from_integer(2.into()),
            None => t + Rational::one(),
        };
        let poly = direction_polynomial(&set, &mu0, &v, &sample);
        let lo = lo.to_u64().expect("interval start fits in u64");
        let hi = hi.map(|h| h.to_u64().expect("interval end fits in u64"));
        pieces.push(Piece::new(poly, lo, hi));
    }
    Ok(PiecewisePolynomial::new(pieces))
}

/// `Σ_w ε(w) P_w(t)` with each tope fixed by `w(μ0 + sample·v)` deformed.
pub fn direction_polynomial(set: &Setting, mu0: &HcParamK, v: &[i64], sample: &Rational) -> UniPoly {
    let n = set.n();
    let mu0f = mu0.flat();
    let vq: Vec<Rational> = v.iter().map(|&x| Rational::from_integer(x.into())).collect();
    let mu_s: Vec<Rational> = mu0f.iter().zip(&vq).map(|(a, b)| a + sample * b).collect();
    let mu_reg = DeformedVector::deform(&mu_s);
    let group = compact_weyl_group(set.p, set.q);
    let terms: Vec<UniPoly> = group
        .par_iter()
        .filter_map(|w| {
            let point = set.point(w, &mu_reg);
            if !point.in_positive_cone().unwrap_or(false) {
                return None;
            }
            let bases = set.sys.bases(&point);
            if bases.is_empty() {
                return None;
            }
            let x0 = set.permuted(w, &mu0f);
            let xv = set.permuted(w, &vq);
            let exps: Vec<AffineExponent> = (0..n)
                .map(|k| {
                    let c = &x0[k] - &set.lambda_sorted[k] - &set.sys.rho[k];
                    AffineExponent::new(to_i64(&c).expect("integral ray"), to_i64(&xv[k]).expect("integral direction"))
                })
                .collect();
            let f = kostant_fraction(&set.sys.roots, &exps);
            let poly = sum_residues(&bases, &f, &Symbolic);
            Some(if w.sign > 0 { poly } else { -&poly })
        })
        .collect();
    terms.iter().fold(UniPoly::zero(), |acc, p| &acc + p)
}

/// Whether `v` is an asymptotic direction: the last piece is nonzero.
pub fn is_asymptotic_direction(
    lambda: &HcParamG,
    v: &HcParamK,
    p: usize,
    q: usize,
) -> Result<(bool, UniPoly), BlattnerError> {
    let pw = multiplicity_direction(lambda, v, p, q)?;
    let last = pw.last_poly().cloned().unwrap_or_default();
    Ok((!last.is_zero(), last))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, rat};

    fn g(a: &[(i64, i64)], b: &[(i64, i64)]) -> HcParamG {
        HcParamG::new(a.iter().map(|&(x, y)| frac(x, y)).collect(), b.iter().map(|&(x, y)| frac(x, y)).collect())
    }

    fn k(a: &[(i64, i64)], b: &[(i64, i64)]) -> HcParamK {
        HcParamK::new(a.iter().map(|&(x, y)| frac(x, y)).collect(), b.iter().map(|&(x, y)| frac(x, y)).collect())
    }

    #[test]
    fn lowest_and_vogan() {
        let l = g(&[(5, 2), (-3, 2)], &[(3, 2), (-5, 2)]);
        assert_eq!(lowest_k_type(&l, 2, 2).unwrap(), k(&[(7, 2), (-3, 2)], &[(3, 2), (-7, 2)]));
        assert_eq!(vogan_lowest_k_type(&l, 2, 2).unwrap(), k(&[(3, 1), (-1, 1)], &[(1, 1), (-3, 1)]));
        let l = g(&[(11, 2), (7, 2), (3, 2)], &[(9, 2), (5, 2), (1, 2)]);
        assert_eq!(lowest_k_type(&l, 3, 3).unwrap(), k(&[(7, 1), (4, 1), (1, 1)], &[(5, 1), (2, 1), (-1, 1)]));
        assert_eq!(vogan_lowest_k_type(&l, 3, 3).unwrap(), k(&[(6, 1), (4, 1), (2, 1)], &[(4, 1), (2, 1), (0, 1)]));
    }

    #[test]
    fn validation_errors() {
        let l = g(&[(3, 2), (3, 2)], &[(1, 2), (-1, 2)]);
        assert!(matches!(validate_lambda(&l, 2, 2), Err(BlattnerError::NotStrictlyDecreasing { .. })));
        let l = g(&[(3, 1), (1, 1)], &[(2, 1), (0, 1)]);
        assert!(matches!(validate_lambda(&l, 2, 2), Err(BlattnerError::Parity { .. })));
        let l = g(&[(3, 2), (1, 2)], &[(3, 2), (-1, 2)]);
        assert!(matches!(validate_lambda(&l, 2, 2), Err(BlattnerError::NonRegular(_))));
        let l = g(&[(5, 2), (-3, 2)], &[(3, 2), (-5, 2)]);
        let m = k(&[(207, 2), (-3, 2)], &[(3, 2), (-207, 2)]);
        assert!(validate(&l, &m, 2, 2).is_ok());
    }

    #[test]
    fn first_golden_value() {
        let l = g(&[(5, 2), (-3, 2)], &[(3, 2), (-5, 2)]);
        let m = k(&[(207, 2), (-3, 2)], &[(3, 2), (-207, 2)]);
        let r = discretemult(&m, &l, 2, 2).unwrap();
        assert_eq!(r.value, BigInt::from(101));
        let low = lowest_k_type(&l, 2, 2).unwrap();
        assert_eq!(discretemult(&low, &l, 2, 2).unwrap().value, BigInt::one());
    }

    #[test]
    fn sums_must_match() {
        let l = g(&[(5, 2), (-3, 2)], &[(3, 2), (-5, 2)]);
        let m = k(&[(9, 2), (-3, 2)], &[(3, 2), (-7, 2)]);
        let r = discretemult(&m, &l, 2, 2).unwrap();
        assert!(r.value.is_zero() && r.contributions.is_empty());
    }

    #[test]
    fn identity_is_valid_at_lowest() {
        let l = g(&[(9, 1), (7, 1)], &[(-1, 1), (-2, 1), (-13, 1)]);
        let set = Setting::new(&l, 2, 3).unwrap();
        let low = lowest_k_type(&l, 2, 3).unwrap();
        assert!(valid_permutations(&set, &low).contains(&SignedPermutation::identity(2, 3)));
    }

    #[test]
    fn direction_examples() {
        let l = g(&[(5, 2), (-3, 2)], &[(3, 2), (-5, 2)]);
        let v = k(&[(1, 1), (0, 1)], &[(0, 1), (-1, 1)]);
        let pw = multiplicity_direction(&l, &v, 2, 2).unwrap();
        assert_eq!(pw.pieces, vec![Piece::new(UniPoly::from_ints(&[1, 1]), 0, None)]);
        let l = g(&[(9, 1), (7, 1)], &[(-1, 1), (-2, 1), (-13, 1)]);
        let v = k(&[(1, 1), (0, 1)], &[(0, 1), (0, 1), (-1, 1)]);
        let pw = multiplicity_direction(&l, &v, 2, 3).unwrap();
        let first = UniPoly::from_coeffs(vec![rat(1), frac(1, 2), frac(-1, 2)]);
        assert_eq!(pw.pieces, vec![Piece::new(first, 0, Some(0)), Piece::new(UniPoly::one(), 1, None)]);
        assert_eq!(pw.streamline().pieces, vec![Piece::new(UniPoly::one(), 0, None)]);
    }
}

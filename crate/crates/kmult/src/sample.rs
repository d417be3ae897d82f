//! Random valid inputs for property tests and the self-test.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{frac, rat, Rational};
use crate::blattner::{lowest_k_type, HcParamG, HcParamK};
use crate::roots::{ABPattern, Root};

/// A Harish-Chandra parameter with entries in a window of width `spread`.
pub fn random_lambda<R: Rng>(rng: &mut R, p: usize, q: usize, spread: u32) -> HcParamG {
    let n = p + q;
    let width = (spread as i64).max(n as i64 - 1);
    let mut pool: Vec<i64> = (0..=width).collect();
    pool.shuffle(rng);
    let mut vals: Vec<i64> = pool[..n].to_vec();
    vals.shuffle(rng);
    // integers when p+q is odd, half-odd integers otherwise
    let shift = if n % 2 == 1 { rat(-(width / 2)) } else { frac(1 - width, 2) };
    let block = |v: &[i64]| {
        let mut b: Vec<Rational> = v.iter().map(|&x| rat(x) + &shift).collect();
        b.sort_by(|x, y| y.cmp(x));
        b
    };
    let alpha = block(&vals[..p]);
    let gamma = block(&vals[p..]);
    HcParamG::new(alpha, gamma)
}

/// A uniformly random AB-pattern with `p` letters `a` and `q` letters `b`.
pub fn random_pattern<R: Rng>(rng: &mut R, p: usize, q: usize) -> ABPattern {
    let mut in_a: Vec<bool> = (0..p + q).map(|k| k < p).collect();
    in_a.shuffle(rng);
    ABPattern::new(in_a)
}

/// A K-type for `λ`: the lowest one plus a few noncompact roots (so usually
/// of nonzero multiplicity), or plus an arbitrary sum-zero perturbation.
///
/// Returns `None` when the result is not strictly decreasing in each block.
pub fn random_mu<R: Rng>(rng: &mut R, lambda: &HcParamG, p: usize, q: usize, steps: u32) -> Option<HcParamK> {
    let low = lowest_k_type(lambda, p, q).ok()?;
    let mut v = low.flat();
    let n = p + q;
    if rng.gen_bool(0.75) {
        let mut order: Vec<(usize, Rational)> = lambda.flat().into_iter().enumerate().collect();
        order.sort_by(|x, y| y.1.cmp(&x.1));
        let idx: Vec<usize> = order.iter().map(|x| x.0).collect();
        let roots: Vec<Root> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| Root::new(i, j)))
            .filter(|r| (idx[r.i] < p) != (idx[r.j] < p))
            .collect();
        for _ in 0..rng.gen_range(0..=steps) {
            let r = roots.choose(rng)?;
            v[idx[r.i]] += rat(1);
            v[idx[r.j]] -= rat(1);
        }
    } else {
        for _ in 0..rng.gen_range(0..=steps) {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            v[i] += rat(1);
            v[j] -= rat(1);
        }
    }
    let mut a = v[..p].to_vec();
    let mut b = v[p..].to_vec();
    a.sort_by(|x, y| y.cmp(x));
    b.sort_by(|x, y| y.cmp(x));
    let strict = |x: &[Rational]| x.windows(2).all(|w| w[0] > w[1]);
    (strict(&a) && strict(&b)).then(|| HcParamK::new(a, b))
}

/// Random integral vector in `[-bound, bound]^{n-1}` completed to sum zero.
pub fn random_point<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    let mut h: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-bound..=bound)).collect();
    h.push(-h.iter().sum::<i64>());
    h
}

/// Random direction: nonzero, integral, sum zero.
pub fn random_direction<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<i64> {
    loop {
        let v = random_point(rng, n, bound);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Random K-dominant direction: weakly decreasing blocks, nonzero, sum zero.
pub fn random_dominant_direction<R: Rng>(rng: &mut R, p: usize, q: usize, bound: i64) -> Vec<i64> {
    let mut v = random_direction(rng, p + q, bound);
    v[..p].sort_by(|x, y| y.cmp(x));
    v[p..].sort_by(|x, y| y.cmp(x));
    v
}

//! Oracle and invariant suites shared by the test targets and `kmult selftest`.
//!
//! Every suite returns a [`SuiteReport`]; a failure carries a reproducer.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rat, rat_to_string, Rational};
use crate::blattner::{discretemult_bruteforce, discretemult_in, lowest_k_type, multiplicity_direction, HcParamK, Setting};
use crate::partition::{
    count_on_bases, partition_count, tope_polynomial, tope_polynomial_at, volume_polynomial, BruteForce,
    NoncompactSystem,
};
use crate::roots::{noncompact_walls, ABPattern, DeformedVector};
use crate::sample::{
    random_direction, random_dominant_direction, random_lambda, random_mu, random_pattern, random_point,
};

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub cases: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    fn new(name: &str, cases: usize, failure: Option<String>) -> Self {
        SuiteReport { name: name.to_string(), cases, failure }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Settings of [`run_all`].
#[derive(Clone, Debug)]
pub struct Config {
    /// Largest `p+q`.
    pub max_n: usize,
    /// Coordinate bound for partition points.
    pub bound: i64,
    pub seed: u64,
    /// Random samples per randomized suite.
    pub samples: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_n: 4, bound: 4, seed: 1, samples: 40 }
    }
}

fn fmt_vec(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn rationals(h: &[i64]) -> Vec<Rational> {
    h.iter().map(|&x| rat(x)).collect()
}

/// Patterns with `p, q ≥ 1` and `2 ≤ p+q ≤ max_n`.
pub fn all_patterns(max_n: usize) -> Vec<ABPattern> {
    (2..=max_n).flat_map(|n| (1..n).flat_map(move |p| ABPattern::all(p, n - p))).collect()
}

/// All points of `[-bound, bound]^{n-1}` completed to sum zero, by increasing size.
pub fn box_points(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut pts: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n - 1 {
        pts = pts.into_iter().flat_map(|p| (-bound..=bound).map(move |x| [p.clone(), vec![x]].concat())).collect();
    }
    let mut out: Vec<Vec<i64>> = pts
        .into_iter()
        .map(|mut p| {
            p.push(-p.iter().sum::<i64>());
            p
        })
        .collect();
    out.sort_by_key(|p| (p.iter().map(|x| x.abs()).max().unwrap_or(0), p.clone()));
    out
}

/// Residue count against the direct count on every box point of every pattern.
pub fn partition_oracle(max_n: usize, bound: i64) -> SuiteReport {
    partition_oracle_with(max_n, bound, |sys, h| partition_count(sys, &rationals(h)).expect("valid point"))
}

/// [`partition_oracle`] with the tested counter supplied by the caller.
pub fn partition_oracle_with<F>(max_n: usize, bound: i64, count: F) -> SuiteReport
where
    F: Fn(&NoncompactSystem, &[i64]) -> BigInt + Sync,
{
    let mut cases = 0;
    for pat in all_patterns(max_n) {
        let sys = NoncompactSystem::new(pat.clone());
        let pts = box_points(sys.n(), bound);
        let got: Vec<BigInt> = pts.par_iter().map(|h| count(&sys, h)).collect();
        let mut bf = BruteForce::new(&sys.roots);
        for (h, g) in pts.iter().zip(&got) {
            cases += 1;
            let want = bf.count(h);
            if *g != want {
                let msg = format!("pattern {pat}, h {}: residues {g}, direct count {want}", fmt_vec(h));
                return SuiteReport::new("partition-oracle", cases, Some(msg));
            }
        }
    }
    SuiteReport::new("partition-oracle", cases, None)
}

/// Blattner's formula against the unpruned signed sum of direct counts.
pub fn blattner_oracle(groups: &[(usize, usize)], samples: usize, spread: u32, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    let mut nonzero = 0;
    for &(p, q) in groups {
        let mut done = 0;
        while done < samples {
            let lambda = random_lambda(&mut rng, p, q, spread);
            let steps = rng.gen_range(0..=spread.min(12));
            let Some(mu) = random_mu(&mut rng, &lambda, p, q, steps) else { continue };
            let set = Setting::new(&lambda, p, q).expect("sampled parameters are valid");
            let got = discretemult_in(&set, &mu);
            let mut bf = BruteForce::new(&set.sys.roots);
            let want = discretemult_bruteforce(&set, &mu, &mut bf);
            done += 1;
            cases += 1;
            if got.signed != want {
                let msg = format!("U({p},{q}) lambda {lambda} mu {mu}: formula {}, direct sum {want}", got.signed);
                return SuiteReport::new("blattner-oracle", cases, Some(msg));
            }
            if !want.is_zero() {
                nonzero += 1;
            }
        }
    }
    let fail = (cases > 0 && nonzero == 0).then(|| "every sampled multiplicity was zero".to_string());
    SuiteReport::new("blattner-oracle", cases, fail)
}

fn random_shape<R: Rng>(rng: &mut R, max_n: usize) -> (usize, usize) {
    let n = rng.gen_range(2..=max_n.max(2));
    let p = rng.gen_range(1..n);
    (p, n - p)
}

/// The lowest K-type occurs exactly once.
pub fn lowest_is_one(max_n: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let (p, q) = random_shape(&mut rng, max_n);
        let lambda = random_lambda(&mut rng, p, q, 30);
        let set = Setting::new(&lambda, p, q).expect("sampled parameters are valid");
        let low = lowest_k_type(&lambda, p, q).expect("valid");
        let m = discretemult_in(&set, &low).value;
        if m != BigInt::from(1) {
            let msg = format!("U({p},{q}) lambda {lambda}: lowest K-type {low} has multiplicity {m}");
            return SuiteReport::new("lowest-is-one", k + 1, Some(msg));
        }
    }
    SuiteReport::new("lowest-is-one", samples, None)
}

/// `x` pushed to one side of a wall first, then deformed as usual.
fn pushed(x: &[Rational], d: &[Rational]) -> DeformedVector {
    let base = DeformedVector::deform(x);
    let mut comps = vec![base.comps[0].clone(), d.to_vec()];
    comps.extend(base.comps[1..].iter().cloned());
    DeformedVector { comps }
}

/// At integral `h` with `h + ρ_n` on a noncompact wall, the topes on both
/// sides give the same count, equal to the direct count.
pub fn wall_agreement(max_n: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    let mut attempts = 0;
    while cases < samples && attempts < 50 * samples {
        attempts += 1;
        let (p, q) = random_shape(&mut rng, max_n.max(3));
        if p + q < 3 {
            continue;
        }
        let pat = random_pattern(&mut rng, p, q);
        let sys = NoncompactSystem::new(pat.clone());
        let n = sys.n();
        let walls = noncompact_walls(&pat);
        if walls.is_empty() {
            continue;
        }
        let wall = &walls[rng.gen_range(0..walls.len())];
        let ind = wall.indicator(n);
        let mut h = random_point(&mut rng, n, 5);
        let s: Rational = (0..n).filter(|&k| ind[k]).map(|k| rat(h[k]) + &sys.rho[k]).sum();
        if !s.is_integer() {
            continue;
        }
        let e: i64 = s.to_integer().try_into().expect("small");
        let (l0, m0) = (wall.set[0], (0..n).find(|&k| !ind[k]).expect("proper wall"));
        h[l0] -= e;
        h[m0] += e;
        let x: Vec<Rational> = (0..n).map(|k| rat(h[k]) + &sys.rho[k]).collect();
        let mut d = vec![Rational::zero(); n];
        d[l0] = rat(1);
        d[m0] = rat(-1);
        let minus: Vec<Rational> = d.iter().map(|z| -z).collect();
        let one = count_on_bases(&sys, &h, &sys.bases(&pushed(&x, &d)));
        let other = count_on_bases(&sys, &h, &sys.bases(&pushed(&x, &minus)));
        let want = BruteForce::new(&sys.roots).count(&h);
        cases += 1;
        if one != other || one != want {
            let msg = format!(
                "pattern {pat}, wall {:?}, h {}: sides give {one} and {other}, direct count {want}",
                wall.one_based(),
                fmt_vec(&h)
            );
            return SuiteReport::new("wall-agreement", cases, Some(msg));
        }
    }
    SuiteReport::new("wall-agreement", cases, None)
}

/// Every tope polynomial along a ray has degree at most `pq - (p+q-1)`.
pub fn degree_bound(max_n: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let (p, q) = random_shape(&mut rng, max_n);
        let sys = NoncompactSystem::new(random_pattern(&mut rng, p, q));
        let n = sys.n();
        let h0 = random_point(&mut rng, n, 6);
        let v = random_direction(&mut rng, n, 4);
        let t = Rational::new(rng.gen_range(1..40).into(), 3.into());
        let poly = tope_polynomial(&sys, &h0, &v, &t).expect("valid ray");
        let bound = sys.degree_bound();
        if poly.degree().unwrap_or(0) > bound {
            let msg = format!("pattern {}, ray {} + t {}: degree {:?} > {bound}", sys.pattern, fmt_vec(&h0), fmt_vec(&v), poly.degree());
            return SuiteReport::new("degree-bound", k + 1, Some(msg));
        }
    }
    SuiteReport::new("degree-bound", samples, None)
}

/// The top coefficient of a tope polynomial along a ray is the volume's.
///
/// Rays of lower degree are skipped, so `cases` counts generic rays only.
pub fn leading_term_volume(max_n: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    let mut attempts = 0;
    while cases < samples && attempts < 50 * samples {
        attempts += 1;
        let (p, q) = random_shape(&mut rng, max_n);
        let sys = NoncompactSystem::new(random_pattern(&mut rng, p, q));
        let n = sys.n();
        let h0 = random_point(&mut rng, n, 3);
        let v = random_direction(&mut rng, n, 6);
        let t = Rational::new(rng.gen_range(20..60).into(), 1.into());
        let poly = tope_polynomial(&sys, &h0, &v, &t).expect("valid ray");
        let d = sys.degree_bound();
        // only rays along which the count grows at full degree
        if poly.degree() != Some(d) {
            continue;
        }
        let vol = volume_polynomial(&sys, &h0, &v, &t).expect("valid ray");
        cases += 1;
        if poly.coeff(d) != vol.coeff(d) || vol.degree().unwrap_or(0) > d {
            let msg = format!(
                "pattern {}, ray {} + t {}: leading {} vs volume {}",
                sys.pattern,
                fmt_vec(&h0),
                fmt_vec(&v),
                rat_to_string(&poly.coeff(d)),
                rat_to_string(&vol.coeff(d))
            );
            return SuiteReport::new("leading-term-volume", cases, Some(msg));
        }
    }
    SuiteReport::new("leading-term-volume", cases, None)
}

/// `∏_{α ∉ H} ∇_α P = 0` for a tope polynomial `P` and any noncompact wall `H`,
/// with `∇_α f(h) = f(h) - f(h - α)`.
pub fn dahmen_micchelli(max_n: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    let mut attempts = 0;
    while cases < samples && attempts < 50 * samples {
        attempts += 1;
        let (p, q) = random_shape(&mut rng, max_n.max(3));
        if p + q < 3 {
            continue;
        }
        let pat = random_pattern(&mut rng, p, q);
        let sys = NoncompactSystem::new(pat.clone());
        let n = sys.n();
        let h = random_point(&mut rng, n, 4);
        let x: Vec<Rational> = (0..n).map(|k| rat(h[k]) + &sys.rho[k]).collect();
        let bases = sys.bases(&DeformedVector::deform(&x));
        if bases.is_empty() {
            continue;
        }
        let walls = noncompact_walls(&pat);
        let wall = &walls[rng.gen_range(0..walls.len())];
        let ind = wall.indicator(n);
        // the roots off the wall form a cocircuit
        let outside: Vec<_> = sys.roots.roots.iter().filter(|r| r.sum_over(&ind) != 0).copied().collect();
        // with more factors than the degree the identity holds trivially
        if outside.len() > sys.degree_bound() || outside.len() > 12 {
            continue;
        }
        let g = random_point(&mut rng, n, 6);
        let mut total = BigInt::zero();
        for mask in 0u32..(1 << outside.len()) {
            let mut pt = g.clone();
            for (k, r) in outside.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    pt[r.i] -= 1;
                    pt[r.j] += 1;
                }
            }
            let c = count_on_bases(&sys, &pt, &bases);
            if mask.count_ones() % 2 == 0 {
                total += c;
            } else {
                total -= c;
            }
        }
        cases += 1;
        if !total.is_zero() {
            let msg = format!("pattern {pat}, tope of {}, wall {:?}, at {}: {total}", fmt_vec(&h), wall.one_based(), fmt_vec(&g));
            return SuiteReport::new("dahmen-micchelli", cases, Some(msg));
        }
    }
    SuiteReport::new("dahmen-micchelli", cases, None)
}

/// Tope polynomial along a ray agrees with exact counts on the ray's tope.
pub fn ray_agreement(max_n: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for k in 0..samples {
        let (p, q) = random_shape(&mut rng, max_n);
        let sys = NoncompactSystem::new(random_pattern(&mut rng, p, q));
        let n = sys.n();
        let h0 = random_point(&mut rng, n, 4);
        let v = random_direction(&mut rng, n, 3);
        let t = rng.gen_range(0..6i64);
        let point: Vec<Rational> = (0..n).map(|i| rat(h0[i] + t * v[i]) + &sys.rho[i]).collect();
        let poly = tope_polynomial_at(&sys, &h0, &v, &DeformedVector::deform(&point)).expect("valid ray");
        let h: Vec<i64> = (0..n).map(|i| h0[i] + t * v[i]).collect();
        let want = BruteForce::new(&sys.roots).count(&h);
        let got = poly.eval(&rat(t));
        if got != Rational::from_integer(want.clone()) {
            let msg = format!("pattern {}, h {}: ray polynomial {}, direct count {want}", sys.pattern, fmt_vec(&h), rat_to_string(&got));
            return SuiteReport::new("ray-agreement", k + 1, Some(msg));
        }
    }
    SuiteReport::new("ray-agreement", samples, None)
}

/// Along random directions from the lowest K-type, every piece matches the
/// exact multiplicity at its own endpoints, so neighbours sharing an
/// endpoint agree there.
pub fn endpoint_agreement(max_n: usize, samples: usize, seed: u64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    for _ in 0..samples {
        let (p, q) = random_shape(&mut rng, max_n);
        let lambda = random_lambda(&mut rng, p, q, 16);
        let v = random_dominant_direction(&mut rng, p, q, 3);
        let vk = HcParamK::from_flat(&rationals(&v), p);
        let pw = multiplicity_direction(&lambda, &vk, p, q).expect("sampled parameters are valid");
        let set = Setting::new(&lambda, p, q).expect("valid");
        let low = lowest_k_type(&lambda, p, q).expect("valid").flat();
        let exact = |t: u64| {
            let mu: Vec<Rational> = low.iter().zip(&v).map(|(a, &b)| a + rat(b * t as i64)).collect();
            discretemult_in(&set, &HcParamK::from_flat(&mu, p)).signed
        };
        for piece in &pw.pieces {
            for t in std::iter::once(piece.lo).chain(piece.hi) {
                cases += 1;
                let want = Rational::from_integer(exact(t));
                let got = piece.poly.eval(&rat(t as i64));
                if got != want {
                    let msg = format!(
                        "U({p},{q}) lambda {lambda}, v {}: piece [{}, {:?}] gives {} at t = {t}, multiplicity {want}",
                        fmt_vec(&v),
                        piece.lo,
                        piece.hi,
                        rat_to_string(&got)
                    );
                    return SuiteReport::new("endpoint-agreement", cases, Some(msg));
                }
            }
        }
    }
    SuiteReport::new("endpoint-agreement", cases, None)
}

/// Runs every suite; Blattner groups are all `(p,q)` with `p+q ≤ max_n`.
pub fn run_all(cfg: &Config) -> Vec<SuiteReport> {
    let groups: Vec<(usize, usize)> =
        (2..=cfg.max_n).flat_map(|n| (1..n).map(move |p| (p, n - p))).collect();
    vec![
        partition_oracle(cfg.max_n, cfg.bound),
        blattner_oracle(&groups, cfg.samples, 20, cfg.seed),
        lowest_is_one(cfg.max_n, cfg.samples, cfg.seed),
        wall_agreement(cfg.max_n, cfg.samples, cfg.seed),
        degree_bound(cfg.max_n, cfg.samples, cfg.seed),
        leading_term_volume(cfg.max_n, cfg.samples, cfg.seed),
        ray_agreement(cfg.max_n, cfg.samples, cfg.seed),
        endpoint_agreement(cfg.max_n.min(5), cfg.samples, cfg.seed),
        dahmen_micchelli(cfg.max_n, cfg.samples, cfg.seed),
    ]
}

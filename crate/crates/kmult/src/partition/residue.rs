//! Kostant fractions and their iterated residues.
//!
//! After the substitution `1+z_i = e^{u_i}` the Kostant function of a list of
//! roots `e_i - e_j` becomes
//!
//! ```text
//!   Π_i (1+u_i)^{h_i+t_i} / Π_{(i,j)} (u_i - u_j),     u_n = 0,
//! ```
//!
//! with `t_i` the number of roots starting at `i` minus one. An ordered basis
//! of roots is a spanning tree; taking residues along it amounts to
//! contracting its edges one at a time. Each term of the running sum keeps,
//! per class of already contracted vertices, a derivative count on its
//! numerator factor, and per pair of classes the exponent of the linear form
//! `U_x - U_z` in the denominator. When edge `k` joins classes `a` and `b`,
//! the potential of the non-pinned class moves by the new coordinate `y`,
//! the pole order in `y` is read off the `a`–`b` exponent and the residue is
//! the matching Taylor coefficient, spread over the factors that depend on
//! `y`. Moving a single class potential is a triangular change of the
//! residue coordinates, which leaves iterated residues unchanged.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{binomial_int, binomial_poly, factorial, AffineExponent, Rational, UniPoly};
use crate::mpns::OrderedBasis;
use crate::roots::{Root, RootList};

/// Numerator exponents and denominator forms of a Kostant fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostantFraction {
    pub n: usize,
    /// Exponent of `(1+u_i)` for `i < n-1`; the entry for the pinned index is unused.
    pub exps: Vec<AffineExponent>,
    /// Denominator linear forms `u_i - u_j`, with multiplicity.
    pub forms: Vec<Root>,
}

/// Builds the Kostant fraction of `roots` at the (possibly `t`-dependent) point `h`.
///
/// `h` may be given with `n` ambient coordinates or `n-1` reduced ones.
pub fn kostant_fraction(roots: &RootList, h: &[AffineExponent]) -> KostantFraction {
    let n = roots.n;
    assert!(h.len() == n || h.len() + 1 == n, "point has the wrong length");
    let mut exps = vec![AffineExponent::default(); n];
    for i in 0..n - 1 {
        let t = roots.out_degree(i) as i64 - 1;
        exps[i] = h[i] + AffineExponent::constant(t);
    }
    KostantFraction { n, exps, forms: roots.roots.clone() }
}

/// Coefficient ring of a residue computation.
pub trait Kernel: Sync {
    type C: Clone + Send + Sync;
    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn is_zero(&self, c: &Self::C) -> bool;
    fn add_assign(&self, acc: &mut Self::C, c: &Self::C);
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    fn mul_int(&self, a: &Self::C, k: &BigInt) -> Self::C;
    /// Coefficient of `y^j` contributed by a class numerator with exponent `e`
    /// already differentiated `shift` times (sign of `y` excluded).
    fn numerator(&self, e: &AffineExponent, shift: i64, j: usize) -> Self::C;
}

/// Integer exponents, integer results.
pub struct Numeric;

impl Kernel for Numeric {
    type C = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, c: &BigInt) -> bool {
        c.is_zero()
    }
    fn add_assign(&self, acc: &mut BigInt, c: &BigInt) {
        *acc += c;
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn mul_int(&self, a: &BigInt, k: &BigInt) -> BigInt {
        a * k
    }
    fn numerator(&self, e: &AffineExponent, shift: i64, j: usize) -> BigInt {
        debug_assert_eq!(e.slope, 0);
        binomial_int(&BigInt::from(e.constant - shift), j)
    }
}

/// Exponents affine in `t`; results are polynomials in `t`.
pub struct Symbolic;

impl Kernel for Symbolic {
    type C = UniPoly;
    fn zero(&self) -> UniPoly {
        UniPoly::zero()
    }
    fn one(&self) -> UniPoly {
        UniPoly::one()
    }
    fn is_zero(&self, c: &UniPoly) -> bool {
        c.is_zero()
    }
    fn add_assign(&self, acc: &mut UniPoly, c: &UniPoly) {
        *acc += c;
    }
    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a * b
    }
    fn mul_int(&self, a: &UniPoly, k: &BigInt) -> UniPoly {
        a.scale(&Rational::from_integer(k.clone()))
    }
    fn numerator(&self, e: &AffineExponent, shift: i64, j: usize) -> UniPoly {
        binomial_poly(e, shift, j)
    }
}

/// Numerator `e^{E u}` instead of `(1+u)^E`: yields the volume polynomial.
pub struct Exponential;

impl Kernel for Exponential {
    type C = UniPoly;
    fn zero(&self) -> UniPoly {
        UniPoly::zero()
    }
    fn one(&self) -> UniPoly {
        UniPoly::one()
    }
    fn is_zero(&self, c: &UniPoly) -> bool {
        c.is_zero()
    }
    fn add_assign(&self, acc: &mut UniPoly, c: &UniPoly) {
        *acc += c;
    }
    fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        a * b
    }
    fn mul_int(&self, a: &UniPoly, k: &BigInt) -> UniPoly {
        a.scale(&Rational::from_integer(k.clone()))
    }
    fn numerator(&self, e: &AffineExponent, _shift: i64, j: usize) -> UniPoly {
        let mut acc = UniPoly::one();
        let lin = e.to_poly();
        for _ in 0..j {
            acc = &acc * &lin;
        }
        acc.scale(&Rational::new(BigInt::one(), factorial(j)))
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    shift: Vec<u16>,
    edge: Vec<u8>,
}

/// Per-step data of the contraction, shared by all terms.
struct Step {
    mover: usize,
    stay: usize,
    /// `+1` when the mover holds the first index of the basis root.
    sigma: i64,
    /// Summed numerator exponent of the mover's class.
    mover_exp: AffineExponent,
    stay_pinned: bool,
}

fn plan(basis: &OrderedBasis, f: &KostantFraction) -> Vec<Step> {
    let n = f.n;
    let pinned = n - 1;
    // slot[v]: class slot of vertex v; the pinned class always uses slot n-1,
    // every other class uses its smallest vertex.
    let mut slot: Vec<usize> = (0..n).collect();
    let mut exp: Vec<AffineExponent> = f.exps.clone();
    let mut steps = Vec::with_capacity(basis.roots.len());
    for r in &basis.roots {
        let (a, b) = (slot[r.i], slot[r.j]);
        assert_ne!(a, b, "basis roots are not independent");
        let (mover, stay) = if a == pinned || (b != pinned && a < b) { (b, a) } else { (a, b) };
        let sigma = if mover == a { 1 } else { -1 };
        steps.push(Step { mover, stay, sigma, mover_exp: exp[mover], stay_pinned: stay == pinned });
        if stay != pinned {
            exp[stay] = exp[stay] + exp[mover];
        }
        for s in slot.iter_mut() {
            if *s == mover {
                *s = stay;
            }
        }
    }
    steps
}

#[inline]
fn eidx(n: usize, a: usize, b: usize) -> usize {
    if a < b {
        a * n + b
    } else {
        b * n + a
    }
}

/// `binomial(-e, j)` as an integer.
fn neg_binom(e: u32, j: usize) -> BigInt {
    let v = binomial_int(&BigInt::from(e as i64 + j as i64 - 1), j);
    if j % 2 == 1 {
        -v
    } else {
        v
    }
}

/// `Ires` of `f` along `basis` in the coefficient ring of `kernel`.
pub fn iterated_residue<K: Kernel>(basis: &OrderedBasis, f: &KostantFraction, kernel: &K) -> K::C {
    let n = f.n;
    assert_eq!(basis.roots.len() + 1, n, "basis has the wrong size");
    let steps = plan(basis, f);
    let mut init = State { shift: vec![0; n], edge: vec![0; n * n] };
    for r in &f.forms {
        init.edge[eidx(n, r.i, r.j)] += 1;
    }
    let mut terms: HashMap<State, K::C> = HashMap::new();
    terms.insert(init, kernel.one());
    for st in &steps {
        let mut next: HashMap<State, K::C> = HashMap::with_capacity(terms.len());
        for (state, coef) in terms {
            contract(&state, &coef, st, n, f, kernel, &mut next);
        }
        next.retain(|_, c| !kernel.is_zero(c));
        terms = next;
        if terms.is_empty() {
            return kernel.zero();
        }
    }
    let mut total = kernel.zero();
    for (state, c) in &terms {
        debug_assert!(state.edge.iter().all(|&e| e == 0));
        kernel.add_assign(&mut total, c);
    }
    total
}

fn contract<K: Kernel>(
    state: &State,
    coef: &K::C,
    st: &Step,
    n: usize,
    _f: &KostantFraction,
    kernel: &K,
    out: &mut HashMap<State, K::C>,
) {
    let (m, s) = (st.mover, st.stay);
    let pole = state.edge[eidx(n, m, s)] as usize;
    if pole == 0 {
        return;
    }
    // (U_lo - U_hi) = tau * y on the pole edge.
    let tau = if m < s { st.sigma } else { -st.sigma };
    let mut base = state.clone();
    base.edge[eidx(n, m, s)] = 0;
    let mover_shift = base.shift[m] as i64;
    base.shift[m] = 0;
    // Edges from the mover to third classes: (x, e, orientation sign).
    let mut inc: Vec<(usize, u32, i64)> = Vec::new();
    for x in 0..n {
        if x == m || x == s {
            continue;
        }
        let e = base.edge[eidx(n, m, x)];
        if e > 0 {
            let omega = if m < x || e.is_multiple_of(2) { 1 } else { -1 };
            inc.push((x, e as u32, omega));
            base.edge[eidx(n, m, x)] = 0;
        }
    }
    let budget = pole - 1;
    // Constant sign: tau^{-pole} * sigma^{budget} * Π omega.
    let mut sign = 1i64;
    if tau < 0 && pole % 2 == 1 {
        sign = -sign;
    }
    if st.sigma < 0 && budget % 2 == 1 {
        sign = -sign;
    }
    for &(_, _, o) in &inc {
        sign *= o;
    }
    let mut js = vec![0usize; inc.len()];
    distribute(budget, 0, &mut js, &mut |js: &[usize]| {
        let j0 = budget - js.iter().sum::<usize>();
        let num = kernel.numerator(&st.mover_exp, mover_shift, j0);
        if kernel.is_zero(&num) {
            return;
        }
        let mut k = BigInt::from(sign);
        let mut next = base.clone();
        if !st.stay_pinned {
            next.shift[s] += (mover_shift + j0 as i64) as u16;
        }
        for (&(x, e, _), &j) in inc.iter().zip(js) {
            k *= neg_binom(e, j);
            let tot = e as usize + j;
            if s > x && tot % 2 == 1 {
                k = -k;
            }
            let idx = eidx(n, s, x);
            next.edge[idx] = (next.edge[idx] as usize + tot) as u8;
        }
        let c = kernel.mul_int(&kernel.mul(coef, &num), &k);
        match out.get_mut(&next) {
            Some(acc) => kernel.add_assign(acc, &c),
            None => {
                out.insert(next, c);
            }
        }
    });
}

/// Calls `f` with every `js` (entries `≥ 0`) whose sum is at most `budget`.
fn distribute(budget: usize, pos: usize, js: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if pos == js.len() {
        f(js);
        return;
    }
    for j in 0..=budget {
        js[pos] = j;
        distribute(budget - j, pos + 1, js, f);
    }
    js[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_dependence_of_iterated_residues() {
        // 1/(u1 (u1 - u2)) = -1/(x (y - x)) with x = u1, y = u2.
        let f = KostantFraction {
            n: 3,
            exps: vec![AffineExponent::default(); 3],
            forms: vec![Root::new(0, 2), Root::new(0, 1)],
        };
        let xy = OrderedBasis::new(vec![Root::new(0, 2), Root::new(1, 2)]);
        let yx = OrderedBasis::new(vec![Root::new(1, 2), Root::new(0, 2)]);
        assert_eq!(iterated_residue(&xy, &f, &Numeric), BigInt::from(-1));
        assert_eq!(iterated_residue(&yx, &f, &Numeric), BigInt::from(0));
    }

    #[test]
    fn wrong_degree_vanishes() {
        let f = KostantFraction {
            n: 3,
            exps: vec![AffineExponent::default(); 3],
            forms: vec![Root::new(0, 2), Root::new(0, 1), Root::new(1, 2)],
        };
        let b = OrderedBasis::new(vec![Root::new(0, 2), Root::new(1, 2)]);
        assert_eq!(iterated_residue(&b, &f, &Numeric), BigInt::from(0));
    }

    #[test]
    fn single_root() {
        let roots = RootList::new(2, vec![Root::new(0, 1)]);
        let b = OrderedBasis::new(vec![Root::new(0, 1)]);
        for h in 0..10 {
            let f = kostant_fraction(&roots, &[AffineExponent::constant(h), AffineExponent::constant(-h)]);
            assert_eq!(iterated_residue(&b, &f, &Numeric), BigInt::one());
        }
        let f = kostant_fraction(&roots, &[AffineExponent::new(0, 1)]);
        assert_eq!(iterated_residue(&b, &f, &Symbolic), UniPoly::one());
    }

    #[test]
    fn fraction_exponents() {
        let roots = RootList::full(4);
        let h: Vec<_> = [5, 1, -2].iter().map(|&x| AffineExponent::constant(x)).collect();
        let f = kostant_fraction(&roots, &h);
        let e: Vec<i64> = f.exps[..3].iter().map(|e| e.constant).collect();
        assert_eq!(e, vec![5 + 2, 1 + 1, -2]);
        let pq = crate::roots::delta_n_plus(&crate::roots::ABPattern::parse("aabbb").unwrap());
        let h = vec![AffineExponent::default(); 4];
        let f = kostant_fraction(&pq, &h);
        let e: Vec<i64> = f.exps[..4].iter().map(|e| e.constant).collect();
        assert_eq!(e, vec![2, 2, -1, -1]);
    }
}

//! Positive roots of type A, the parabolic sublists Δ⁺(A,B), noncompact walls,
//! cone membership and infinitesimal deformation of weights.
//!
//! Indices are 0-based internally; `Display` and JSON use the 1-based
//! convention `e1 - e3`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::algebra::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RootError {
    #[error("parameter is not regular: value {0} occurs twice")]
    NonRegular(String),
    #[error("vector does not have total sum zero")]
    NonZeroSum,
    #[error("invalid pattern {0:?}: expected a string over {{a,b}}")]
    BadPattern(String),
    #[error("root list restricted to the index set is empty or reducible")]
    Reducible,
}

/// The root `e_i - e_j` with `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub i: usize,
    pub j: usize,
}

impl Root {
    pub fn new(i: usize, j: usize) -> Self {
        assert!(i < j, "root e{} - e{} is not positive", i + 1, j + 1);
        Root { i, j }
    }

    /// Root joining two distinct indices, oriented positively.
    pub fn between(a: usize, b: usize) -> Self {
        Root::new(a.min(b), a.max(b))
    }

    /// Value of `Σ_{k∈L} α_k` for this root: `[i∈L] - [j∈L]`.
    pub fn sum_over(&self, in_l: &[bool]) -> i64 {
        in_l[self.i] as i64 - in_l[self.j] as i64
    }

    /// Total order used to pick highest roots: span width, then smaller `i`.
    pub fn ht_cmp(&self, other: &Root) -> Ordering {
        (self.j - self.i).cmp(&(other.j - other.i)).then(other.i.cmp(&self.i))
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{} - e{}", self.i + 1, self.j + 1)
    }
}

/// A multiset of positive roots on the indices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootList {
    pub n: usize,
    pub roots: Vec<Root>,
}

impl RootList {
    pub fn new(n: usize, roots: Vec<Root>) -> Self {
        assert!(roots.iter().all(|r| r.j < n));
        RootList { n, roots }
    }

    /// All of `A_{n-1}^+`.
    pub fn full(n: usize) -> Self {
        let roots = (0..n).flat_map(|i| (i + 1..n).map(move |j| Root::new(i, j))).collect();
        RootList { n, roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// Dimension of `V`, the sum-zero hyperplane.
    pub fn rank(&self) -> usize {
        self.n - 1
    }

    /// Multiplicity of `e_i - e_j`.
    pub fn multiplicity(&self, i: usize, j: usize) -> usize {
        self.roots.iter().filter(|r| r.i == i && r.j == j).count()
    }

    /// Number of roots whose smaller index is `i`.
    pub fn out_degree(&self, i: usize) -> usize {
        self.roots.iter().filter(|r| r.i == i).count()
    }

    /// True when the roots span `V`, i.e. the graph they form is connected.
    pub fn spans(&self) -> bool {
        components(self.n, &self.roots) == 1
    }
}

/// Number of connected components of the graph on `0..n` with the roots as edges.
pub fn components(n: usize, roots: &[Root]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut count = n;
    for r in roots {
        let (a, b) = (find(&mut parent, r.i), find(&mut parent, r.j));
        if a != b {
            parent[a] = b;
            count -= 1;
        }
    }
    count
}

/// Splitting of `1..=p+q` into the `A` slots and the `B` slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ABPattern {
    in_a: Vec<bool>,
}

impl ABPattern {
    pub fn new(in_a: Vec<bool>) -> Self {
        ABPattern { in_a }
    }

    /// Builds a pattern from a string such as `"abba"`.
    pub fn parse(s: &str) -> Result<Self, RootError> {
        let in_a = s
            .chars()
            .map(|c| match c.to_ascii_lowercase() {
                'a' => Ok(true),
                'b' => Ok(false),
                _ => Err(RootError::BadPattern(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if in_a.is_empty() {
            return Err(RootError::BadPattern(s.to_string()));
        }
        Ok(ABPattern { in_a })
    }

    /// Builds a pattern on `n` slots from the 1-based list of `A` slots.
    pub fn from_a(n: usize, a: &[usize]) -> Self {
        let mut in_a = vec![false; n];
        for &k in a {
            in_a[k - 1] = true;
        }
        ABPattern { in_a }
    }

    pub fn n(&self) -> usize {
        self.in_a.len()
    }

    pub fn p(&self) -> usize {
        self.in_a.iter().filter(|&&x| x).count()
    }

    pub fn q(&self) -> usize {
        self.n() - self.p()
    }

    pub fn is_a(&self, k: usize) -> bool {
        self.in_a[k]
    }

    pub fn in_a(&self) -> &[bool] {
        &self.in_a
    }

    /// 0-based `A` slots.
    pub fn a(&self) -> Vec<usize> {
        (0..self.n()).filter(|&k| self.in_a[k]).collect()
    }

    /// 0-based `B` slots.
    pub fn b(&self) -> Vec<usize> {
        (0..self.n()).filter(|&k| !self.in_a[k]).collect()
    }

    /// Every pattern with `p` letters `a` and `q` letters `b`.
    pub fn all(p: usize, q: usize) -> Vec<ABPattern> {
        let n = p + q;
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == p)
            .map(|m| ABPattern { in_a: (0..n).map(|k| m >> k & 1 == 1).collect() })
            .collect()
    }
}

impl fmt::Display for ABPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.in_a {
            write!(f, "{}", if x { 'a' } else { 'b' })?;
        }
        Ok(())
    }
}

/// Reads the pattern of a regular parameter `[[α],[γ]]`.
///
/// Returns the pattern and `sigma`, where `sigma[k]` is the original index of
/// the entry landing in sorted position `k` (decreasing order). Read as a
/// sequence of 1-based values this is the permutation `w_A`.
pub fn chamber_pattern(alpha: &[Rational], gamma: &[Rational]) -> Result<(ABPattern, Vec<usize>), RootError> {
    let p = alpha.len();
    let all: Vec<&Rational> = alpha.iter().chain(gamma).collect();
    let mut sigma: Vec<usize> = (0..all.len()).collect();
    sigma.sort_by(|&x, &y| all[y].cmp(all[x]));
    for w in sigma.windows(2) {
        if all[w[0]] == all[w[1]] {
            return Err(RootError::NonRegular(crate::algebra::rat_to_string(all[w[0]])));
        }
    }
    let in_a = sigma.iter().map(|&s| s < p).collect();
    Ok((ABPattern { in_a }, sigma))
}

/// `Δ⁺(A,B)`: the roots `e_i - e_j`, `i < j`, with exactly one end in `A`.
pub fn delta_n_plus(pattern: &ABPattern) -> RootList {
    let n = pattern.n();
    let roots = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| pattern.is_a(i) != pattern.is_a(j))
        .map(|(i, j)| Root::new(i, j))
        .collect();
    RootList { n, roots }
}

/// Half the sum of the roots.
pub fn rho_n(roots: &RootList) -> Vec<Rational> {
    let mut v = vec![0i64; roots.n];
    for r in &roots.roots {
        v[r.i] += 1;
        v[r.j] -= 1;
    }
    v.into_iter().map(|x| Rational::new(x.into(), 2.into())).collect()
}

/// The hyperplane `H_L = {Σ_{k∈L} v_k = 0}`, stored by a canonical `L`.
///
/// Among `L` and its complement (inside the index set the wall was built
/// for) the smaller one is kept, ties broken lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    pub set: Vec<usize>,
}

impl Wall {
    /// Canonical wall of `l` inside the index set `ambient` (both sorted).
    pub fn canonical(l: Vec<usize>, ambient: &[usize]) -> Self {
        let comp: Vec<usize> = ambient.iter().copied().filter(|k| !l.contains(k)).collect();
        let set = match l.len().cmp(&comp.len()) {
            Ordering::Less => l,
            Ordering::Greater => comp,
            Ordering::Equal => l.min(comp),
        };
        Wall { set }
    }

    pub fn indicator(&self, n: usize) -> Vec<bool> {
        let mut v = vec![false; n];
        for &k in &self.set {
            v[k] = true;
        }
        v
    }

    /// `Σ_{k∈L} v_k`.
    pub fn eval(&self, v: &[Rational]) -> Rational {
        self.set.iter().map(|&k| &v[k]).sum()
    }

    /// Sign of `Σ_{k∈L} v_k`.
    pub fn side(&self, v: &[Rational]) -> i32 {
        sign(&self.eval(v))
    }

    /// Sign of the wall functional on a deformed vector (never 0 for a regular one).
    pub fn side_deformed(&self, v: &DeformedVector) -> i32 {
        lex_sign(&v.sum_over(&self.set))
    }

    /// 1-based rendering.
    pub fn one_based(&self) -> Vec<usize> {
        self.set.iter().map(|k| k + 1).collect()
    }
}

/// Noncompact walls of `Δ⁺(A,B)` restricted to the index set `ambient`.
///
/// `H_L` is spanned by roots exactly when the roots inside `L` and inside its
/// complement connect each side, i.e. each side is a single index or meets
/// both `A` and `B`.
pub fn walls_on(pattern: &ABPattern, ambient: &[usize]) -> Vec<Wall> {
    let m = ambient.len();
    if m < 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << m) - 1 {
        let size = mask.count_ones() as usize;
        let mut l = Vec::with_capacity(size);
        let (mut a_in, mut b_in, mut a_out, mut b_out) = (false, false, false, false);
        for (pos, &k) in ambient.iter().enumerate() {
            let inside = mask >> pos & 1 == 1;
            if inside {
                l.push(k);
            }
            match (inside, pattern.is_a(k)) {
                (true, true) => a_in = true,
                (true, false) => b_in = true,
                (false, true) => a_out = true,
                (false, false) => b_out = true,
            }
        }
        let ok = (size == 1 || (a_in && b_in)) && (size == m - 1 || (a_out && b_out));
        if !ok {
            continue;
        }
        let w = Wall::canonical(l, ambient);
        if out.last() != Some(&w) && !out.contains(&w) {
            out.push(w);
        }
    }
    out.sort_by(|x, y| x.set.len().cmp(&y.set.len()).then(x.set.cmp(&y.set)));
    out
}

/// All noncompact walls of `Δ⁺(A,B)`.
pub fn noncompact_walls(pattern: &ABPattern) -> Vec<Wall> {
    let all: Vec<usize> = (0..pattern.n()).collect();
    walls_on(pattern, &all)
}

pub fn sign(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of a formal scalar `x_0 + x_1 δ + x_2 δ² + …`: the first nonzero term decides.
pub fn lex_sign(x: &[Rational]) -> i32 {
    x.iter().map(sign).find(|&s| s != 0).unwrap_or(0)
}

/// True when all partial sums `v_1 + … + v_k` are nonnegative.
///
/// This is membership in the cone spanned by all positive roots.
pub fn in_positive_cone(v: &[Rational]) -> Result<bool, RootError> {
    let total: Rational = v.iter().sum();
    if !total.is_zero() {
        return Err(RootError::NonZeroSum);
    }
    let mut acc = Rational::zero();
    for x in &v[..v.len().saturating_sub(1)] {
        acc += x;
        if acc.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A weight plus an infinitesimal displacement `Σ_k δ^k (e_k - e_n)`.
///
/// `comps[0]` is the base vector and `comps[k]` the coefficient vector of
/// `δ^k`. Linear functionals are evaluated order by order and compared
/// lexicographically, so every wall functional gets a nonzero sign.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformedVector {
    pub comps: Vec<Vec<Rational>>,
}

impl DeformedVector {
    /// Deforms `h` in the fixed direction `(δ, δ², …, δ^{n-1}, -Σ)`.
    pub fn deform(h: &[Rational]) -> Self {
        let n = h.len();
        let mut comps = Vec::with_capacity(n);
        comps.push(h.to_vec());
        for k in 0..n.saturating_sub(1) {
            let mut e = vec![Rational::zero(); n];
            e[k] = Rational::one();
            e[n - 1] = -Rational::one();
            comps.push(e);
        }
        DeformedVector { comps }
    }

    /// An undeformed vector.
    pub fn exact(h: &[Rational]) -> Self {
        DeformedVector { comps: vec![h.to_vec()] }
    }

    pub fn base(&self) -> &[Rational] {
        &self.comps[0]
    }

    pub fn n(&self) -> usize {
        self.comps[0].len()
    }

    /// Reorders coordinates: the new `k`-th coordinate is the old `perm[k]`-th.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let comps = self.comps.iter().map(|c| perm.iter().map(|&k| c[k].clone()).collect()).collect();
        DeformedVector { comps }
    }

    /// Adds an exact vector to the base part.
    pub fn add_exact(&self, x: &[Rational]) -> Self {
        let mut out = self.clone();
        for (a, b) in out.comps[0].iter_mut().zip(x) {
            *a += b;
        }
        out
    }

    /// Formal scalar `Σ_{k∈set} v_k`.
    pub fn sum_over(&self, set: &[usize]) -> Vec<Rational> {
        self.comps.iter().map(|c| set.iter().map(|&k| &c[k]).sum()).collect()
    }

    /// Subtracts `t·α` where `t` is a formal scalar and `α` a root.
    pub fn sub_root_scaled(&self, t: &[Rational], root: &Root) -> Self {
        let mut out = self.clone();
        for (c, x) in out.comps.iter_mut().zip(t) {
            c[root.i] -= x;
            c[root.j] += x;
        }
        out
    }

    /// Lexicographic cone test on the coordinates listed in `set` (in order).
    ///
    /// Partial sums over `set` minus its last element must all be `≥ 0`.
    pub fn in_positive_cone_on(&self, set: &[usize]) -> bool {
        let mut acc = vec![Rational::zero(); self.comps.len()];
        for &k in &set[..set.len().saturating_sub(1)] {
            for (a, c) in acc.iter_mut().zip(&self.comps) {
                *a += &c[k];
            }
            if lex_sign(&acc) < 0 {
                return false;
            }
        }
        true
    }

    pub fn in_positive_cone(&self) -> Result<bool, RootError> {
        let total: Rational = self.comps[0].iter().sum();
        if !total.is_zero() {
            return Err(RootError::NonZeroSum);
        }
        let all: Vec<usize> = (0..self.n()).collect();
        Ok(self.in_positive_cone_on(&all))
    }
}

/// Side of `v` with respect to a wall.
pub fn wall_side(wall: &Wall, v: &[Rational]) -> i32 {
    wall.side(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{frac, rat};

    fn rv(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&k| rat(k)).collect()
    }

    fn one_based(w: &[Wall]) -> Vec<Vec<usize>> {
        w.iter().map(|w| w.one_based()).collect()
    }

    #[test]
    fn chamber_pattern_examples() {
        let (pat, sigma) = chamber_pattern(&rv(&[4, 2]), &rv(&[6, 5, 3])).unwrap();
        assert_eq!(pat.a(), vec![2, 4]);
        assert_eq!(sigma.iter().map(|s| s + 1).collect::<Vec<_>>(), vec![3, 4, 1, 5, 2]);
        let (pat, sigma) = chamber_pattern(&rv(&[5, 3]), &rv(&[2, 1])).unwrap();
        assert_eq!(pat.to_string(), "aabb");
        assert_eq!(sigma, vec![0, 1, 2, 3]);
        let (pat, _) = chamber_pattern(&rv(&[2, -3]), &rv(&[1])).unwrap();
        assert_eq!(pat.to_string(), "aba");
        assert!(matches!(chamber_pattern(&rv(&[2, 1]), &rv(&[1])), Err(RootError::NonRegular(_))));
    }

    #[test]
    fn delta_examples() {
        let d = delta_n_plus(&ABPattern::parse("abab").unwrap());
        let got: Vec<_> = d.roots.iter().map(|r| (r.i + 1, r.j + 1)).collect();
        assert_eq!(got, vec![(1, 2), (1, 4), (2, 3), (3, 4)]);
        assert_eq!(delta_n_plus(&ABPattern::parse("abbb").unwrap()).len(), 3);
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho_n(&delta_n_plus(&ABPattern::parse("aabb").unwrap())), rv(&[1, 1, -1, -1]));
        assert_eq!(
            rho_n(&delta_n_plus(&ABPattern::parse("abb").unwrap())),
            vec![rat(1), frac(-1, 2), frac(-1, 2)]
        );
    }

    #[test]
    fn walls_of_square_system() {
        let pat = ABPattern::parse("aabb").unwrap();
        let w = noncompact_walls(&pat);
        assert_eq!(one_based(&w), vec![vec![1], vec![2], vec![3], vec![4], vec![1, 3], vec![1, 4]]);
        let theta = Root::new(0, 3);
        let avoiding: Vec<_> = w
            .into_iter()
            .filter(|w| theta.sum_over(&w.indicator(4)) != 0)
            .collect();
        assert_eq!(one_based(&avoiding), vec![vec![1], vec![4], vec![1, 3]]);
    }

    #[test]
    fn walls_of_basis_are_singletons() {
        let w = noncompact_walls(&ABPattern::parse("abb").unwrap());
        assert_eq!(one_based(&w), vec![vec![2], vec![3]]);
    }

    #[test]
    fn cone_examples() {
        assert!(in_positive_cone(&rv(&[1, 0, 0, -1])).unwrap());
        assert!(!in_positive_cone(&rv(&[-1, 1, 0, 0])).unwrap());
        assert!(in_positive_cone(&rv(&[0, 0, 0])).unwrap());
        assert_eq!(in_positive_cone(&rv(&[1, 0])), Err(RootError::NonZeroSum));
    }

    #[test]
    fn wall_side_examples() {
        let v = rv(&[4, 3, -2, -5]);
        assert_eq!(Wall { set: vec![3] }.side(&v), -1);
        assert_eq!(Wall { set: vec![0, 2] }.side(&v), 1);
        let z = DeformedVector::deform(&rv(&[0, 0, 0, 0]));
        assert_eq!(Wall { set: vec![0] }.side_deformed(&z), 1);
    }

    #[test]
    fn deformation_of_origin_is_regular() {
        let pat = ABPattern::parse("aabb").unwrap();
        let z = DeformedVector::deform(&rv(&[0, 0, 0, 0]));
        for w in noncompact_walls(&pat) {
            assert_eq!(w.side(z.base()), 0);
            assert_ne!(w.side_deformed(&z), 0);
        }
    }
}

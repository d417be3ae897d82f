//! Ordered bases attached to maximal proper nested sets adapted to a vector.
//!
//! The recursion works on `Δ⁺(A,B)` restricted to an index set `I`:
//!
//! - if `A∩I` or `B∩I` is a single index the roots form a basis (a star),
//!   returned when the vector lies in its cone;
//! - otherwise, for every noncompact wall `H_L` with the vector and the
//!   highest root `θ` strictly on the same side, the vector is projected on
//!   `H_L` along `θ`, both sides `L`, `I∖L` are solved recursively and `θ` is
//!   appended to every combination.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::roots::{components, lex_sign, walls_on, ABPattern, DeformedVector, Root, RootError, Wall};

/// Ordered basis of `V` made of roots; residues are taken in this order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedBasis {
    pub roots: Vec<Root>,
}

impl OrderedBasis {
    pub fn new(roots: Vec<Root>) -> Self {
        OrderedBasis { roots }
    }

    /// Covolume of the lattice spanned by the basis. Root bases of type A are
    /// spanning trees, hence unimodular, so this is always 1.
    pub fn vol(&self, n: usize) -> u32 {
        assert_eq!(self.roots.len() + 1, n, "basis has the wrong size");
        assert_eq!(components(n, &self.roots), 1, "roots are not independent");
        1
    }

    /// Pairs `[i, j]` in 1-based form.
    pub fn pairs(&self) -> Vec<[usize; 2]> {
        self.roots.iter().map(|r| [r.i + 1, r.j + 1]).collect()
    }
}

impl fmt::Display for OrderedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Roots of `Δ⁺(A,B)` with both ends in `set`.
pub fn roots_on(pattern: &ABPattern, set: &[usize]) -> Vec<Root> {
    let mut out = Vec::new();
    for (x, &i) in set.iter().enumerate() {
        for &j in &set[x + 1..] {
            if pattern.is_a(i) != pattern.is_a(j) {
                out.push(Root::between(i, j));
            }
        }
    }
    out
}

/// Highest root of `Δ⁺(A,B)` on `set` for the order of [`Root::ht_cmp`].
pub fn highest_root(pattern: &ABPattern, set: &[usize]) -> Result<Root, RootError> {
    let roots = roots_on(pattern, set);
    if roots.is_empty() || components(pattern.n(), &roots) + set.len() != pattern.n() + 1 {
        return Err(RootError::Reducible);
    }
    Ok(*roots.iter().max_by(|a, b| a.ht_cmp(b)).unwrap())
}

/// Irreducible pieces of `Δ⁺(A,B) ∩ H_L` on `set`.
///
/// The system splits along `L` and its complement; a side where `A` or `B`
/// has a single index is a basis and splits further into one-root pieces.
/// Each piece is returned as its index set together with its roots.
pub fn irreducible_components(pattern: &ABPattern, set: &[usize], wall: &Wall) -> Vec<(Vec<usize>, Vec<Root>)> {
    let inside: Vec<usize> = set.iter().copied().filter(|k| wall.set.contains(k)).collect();
    let outside: Vec<usize> = set.iter().copied().filter(|k| !wall.set.contains(k)).collect();
    let mut out = Vec::new();
    for side in [inside, outside] {
        let roots = roots_on(pattern, &side);
        if roots.is_empty() {
            continue;
        }
        let na = side.iter().filter(|&&k| pattern.is_a(k)).count();
        let nb = side.len() - na;
        if na == 1 || nb == 1 {
            out.extend(roots.into_iter().map(|r| (vec![r.i, r.j], vec![r])));
        } else {
            out.push((side, roots));
        }
    }
    out
}

/// Enumerates `{→M : M ∈ 𝒫(v, Δ⁺(A,B)|_I)}`, sorted.
///
/// `v` must be regular, which every output of [`DeformedVector::deform`] is.
/// The result is empty exactly when `v` is outside the cone of the roots.
pub fn mpns_ordered_bases(v: &DeformedVector, pattern: &ABPattern, set: &[usize]) -> Vec<OrderedBasis> {
    let mut solver = Solver { pattern, walls: HashMap::new() };
    let mut out: Vec<OrderedBasis> = solver.solve(v, set).into_iter().map(OrderedBasis::new).collect();
    out.sort();
    out
}

/// Same as [`mpns_ordered_bases`] on all indices.
pub fn mpns_all(v: &DeformedVector, pattern: &ABPattern) -> Vec<OrderedBasis> {
    let all: Vec<usize> = (0..pattern.n()).collect();
    mpns_ordered_bases(v, pattern, &all)
}

struct Solver<'a> {
    pattern: &'a ABPattern,
    walls: HashMap<Vec<usize>, Vec<Wall>>,
}

impl Solver<'_> {
    fn solve(&mut self, v: &DeformedVector, set: &[usize]) -> Vec<Vec<Root>> {
        if set.len() <= 1 {
            return vec![Vec::new()];
        }
        if !v.in_positive_cone_on(set) {
            return Vec::new();
        }
        let a: Vec<usize> = set.iter().copied().filter(|&k| self.pattern.is_a(k)).collect();
        let b: Vec<usize> = set.iter().copied().filter(|&k| !self.pattern.is_a(k)).collect();
        if a.len() == 1 || b.len() == 1 {
            let (centre, leaves) = if a.len() == 1 { (a[0], &b) } else { (b[0], &a) };
            return star(v, centre, leaves).into_iter().collect();
        }
        let theta = *roots_on(self.pattern, set).iter().max_by(|x, y| x.ht_cmp(y)).expect("nonempty system");
        let walls = self
            .walls
            .entry(set.to_vec())
            .or_insert_with(|| walls_on(self.pattern, set))
            .clone();
        let n = v.n();
        let mut out = Vec::new();
        for wall in &walls {
            let th = theta.sum_over(&wall.indicator(n));
            if th == 0 {
                continue;
            }
            let sv = v.sum_over(&wall.set);
            if lex_sign(&sv) != th.signum() as i32 {
                continue;
            }
            let t: Vec<_> = sv.iter().map(|x| if th > 0 { x.clone() } else { -x }).collect();
            let proj = v.sub_root_scaled(&t, &theta);
            let inside: Vec<usize> = set.iter().copied().filter(|k| wall.set.contains(k)).collect();
            let outside: Vec<usize> = set.iter().copied().filter(|k| !wall.set.contains(k)).collect();
            if !proj.in_positive_cone_on(&inside) || !proj.in_positive_cone_on(&outside) {
                continue;
            }
            let left = self.solve(&proj, &inside);
            if left.is_empty() {
                continue;
            }
            let right = self.solve(&proj, &outside);
            for l in &left {
                for r in &right {
                    let mut basis = Vec::with_capacity(set.len() - 1);
                    basis.extend_from_slice(l);
                    basis.extend_from_slice(r);
                    basis.push(theta);
                    out.push(basis);
                }
            }
        }
        out
    }
}

/// The star basis centred at `centre`, if `v` lies in its cone.
fn star(v: &DeformedVector, centre: usize, leaves: &[usize]) -> Option<Vec<Root>> {
    let mut roots = Vec::with_capacity(leaves.len());
    for &l in leaves {
        let c: Vec<_> = v.comps.iter().map(|comp| if centre < l { -&comp[l] } else { comp[l].clone() }).collect();
        if lex_sign(&c) < 0 {
            return None;
        }
        debug_assert!(c.iter().any(|x| !x.is_zero()) || v.comps.len() == 1);
        roots.push(Root::between(centre, l));
    }
    roots.sort();
    Some(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, Rational};

    fn rv(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&k| rat(k)).collect()
    }

    fn pairs(b: &[OrderedBasis]) -> Vec<Vec<[usize; 2]>> {
        b.iter().map(|b| b.pairs()).collect()
    }

    #[test]
    fn highest_roots() {
        let pat = ABPattern::parse("aabb").unwrap();
        assert_eq!(highest_root(&pat, &[0, 1, 2, 3]).unwrap(), Root::new(0, 3));
        let pat = ABPattern::parse("ab").unwrap();
        assert_eq!(highest_root(&pat, &[0, 1]).unwrap(), Root::new(0, 1));
        let pat = ABPattern::parse("abab").unwrap();
        assert_eq!(highest_root(&pat, &[0, 1, 2, 3]).unwrap(), Root::new(0, 3));
        assert_eq!(highest_root(&pat, &[0, 2]), Err(RootError::Reducible));
    }

    #[test]
    fn component_splitting() {
        let pat = ABPattern::parse("aabb").unwrap();
        let all = [0, 1, 2, 3];
        let c = irreducible_components(&pat, &all, &Wall { set: vec![3] });
        let roots: Vec<_> = c.iter().map(|(_, r)| r.clone()).collect();
        assert_eq!(roots, vec![vec![Root::new(0, 2)], vec![Root::new(1, 2)]]);
        let c = irreducible_components(&pat, &all, &Wall { set: vec![0, 2] });
        let roots: Vec<_> = c.iter().map(|(_, r)| r.clone()).collect();
        assert_eq!(roots, vec![vec![Root::new(0, 2)], vec![Root::new(1, 3)]]);
        let pat = ABPattern::parse("aaabbb").unwrap();
        let c = irreducible_components(&pat, &[0, 1, 2, 3, 4, 5], &Wall { set: vec![0, 1, 3, 4] });
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].1.len(), 4);
        assert_eq!(c[1].1, vec![Root::new(2, 5)]);
    }

    #[test]
    fn worked_example_square() {
        let pat = ABPattern::parse("aabb").unwrap();
        let v = DeformedVector::deform(&rv(&[4, 3, -2, -5]));
        let got = pairs(&mpns_all(&v, &pat));
        // walls [1] and [1,3]; the projection on H_[4] leaves the cone
        assert_eq!(
            got,
            vec![vec![[1, 3], [2, 4], [1, 4]], vec![[2, 3], [2, 4], [1, 4]]]
        );
    }

    #[test]
    fn single_basis_for_star() {
        let pat = ABPattern::parse("abbb").unwrap();
        // 2(e1 - e2) + (e1 - e4) sits on the face where e1 - e3 has coefficient 0
        let v = rv(&[3, -2, 0, -1]);
        assert_eq!(pairs(&mpns_all(&DeformedVector::exact(&v), &pat)), vec![vec![[1, 2], [1, 3], [1, 4]]]);
        // the fixed deformation pushes it to the outer side of that face
        assert!(mpns_all(&DeformedVector::deform(&v), &pat).is_empty());
        let inner = rv(&[4, -2, -1, -1]);
        assert_eq!(mpns_all(&DeformedVector::deform(&inner), &pat).len(), 1);
    }

    #[test]
    fn outside_the_cone_is_empty() {
        for s in ["aabb", "abab", "abba", "aab", "abbab"] {
            let pat = ABPattern::parse(s).unwrap();
            let n = pat.n();
            let mut h = vec![rat(0); n];
            h[0] = rat(-1);
            h[n - 1] = rat(1);
            assert!(mpns_all(&DeformedVector::deform(&h), &pat).is_empty(), "{s}");
        }
    }

    #[test]
    fn bases_are_unimodular() {
        let pat = ABPattern::parse("aabbb").unwrap();
        let v = DeformedVector::deform(&rv(&[5, 4, -1, -3, -5]));
        let bases = mpns_all(&v, &pat);
        assert!(!bases.is_empty());
        for b in bases {
            assert_eq!(b.vol(5), 1);
        }
    }
}

//! Direct count of nonnegative integer solutions, used as an oracle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::roots::RootList;

/// Memoized counter for one root list; the memo is reused across queries.
pub struct BruteForce {
    n: usize,
    /// `out[i]`: targets `j` of the roots starting at `i`, with repetition.
    out: Vec<Vec<usize>>,
    memo: HashMap<(usize, Vec<i64>), BigInt>,
}

impl BruteForce {
    pub fn new(roots: &RootList) -> Self {
        let mut out = vec![Vec::new(); roots.n];
        for r in &roots.roots {
            out[r.i].push(r.j);
        }
        BruteForce { n: roots.n, out, memo: HashMap::new() }
    }

    /// Number of ways to write `h` (ambient coordinates) as a nonnegative
    /// integer combination of the roots.
    pub fn count(&mut self, h: &[i64]) -> BigInt {
        assert_eq!(h.len(), self.n);
        if h.iter().sum::<i64>() != 0 {
            return BigInt::zero();
        }
        self.go(0, h.to_vec())
    }

    // rem[k] is the amount vertex `i + k` still has to send along its own roots.
    fn go(&mut self, i: usize, rem: Vec<i64>) -> BigInt {
        if i + 1 == self.n {
            return if rem[0] == 0 { BigInt::one() } else { BigInt::zero() };
        }
        if rem[0] < 0 {
            return BigInt::zero();
        }
        let key = (i, rem);
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let rem = &key.1;
        let targets = self.out[i].clone();
        let mut total = BigInt::zero();
        if targets.is_empty() {
            if rem[0] == 0 {
                total = self.go(i + 1, rem[1..].to_vec());
            }
        } else {
            let mut next = rem[1..].to_vec();
            self.spread(i, &targets, 0, rem[0], &mut next, &mut total);
        }
        self.memo.insert(key, total.clone());
        total
    }

    fn spread(&mut self, i: usize, targets: &[usize], k: usize, left: i64, next: &mut Vec<i64>, total: &mut BigInt) {
        let j = targets[k] - i - 1;
        if k + 1 == targets.len() {
            next[j] += left;
            *total += self.go(i + 1, next.clone());
            next[j] -= left;
            return;
        }
        for x in 0..=left {
            next[j] += x;
            self.spread(i, targets, k + 1, left - x, next, total);
            next[j] -= x;
        }
    }
}

/// One-shot brute-force count.
pub fn partition_count_bruteforce(roots: &RootList, h: &[i64]) -> BigInt {
    BruteForce::new(roots).count(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{delta_n_plus, ABPattern, Root};

    #[test]
    fn small_counts() {
        let sq = delta_n_plus(&ABPattern::parse("aabb").unwrap());
        assert_eq!(partition_count_bruteforce(&sq, &[0, 0, 0, 0]), BigInt::from(1));
        assert_eq!(partition_count_bruteforce(&sq, &[1, 1, -1, -1]), BigInt::from(2));
        assert_eq!(partition_count_bruteforce(&sq, &[-1, 1, 0, 0]), BigInt::from(0));
        let a3 = RootList::full(4);
        // e1 - e3 = (e1 - e2) + (e2 - e3)
        assert_eq!(partition_count_bruteforce(&a3, &[1, 0, -1, 0]), BigInt::from(2));
        let one = RootList::new(2, vec![Root::new(0, 1)]);
        assert_eq!(partition_count_bruteforce(&one, &[7, -7]), BigInt::from(1));
    }

    #[test]
    fn hand_enumerated() {
        // x12 + x13 = 3, x24 = x12 - 1, x34 = x13 - 1: x12 in {1, 2}
        let roots = delta_n_plus(&ABPattern::from_a(4, &[1, 4]));
        let mut bf = BruteForce::new(&roots);
        assert_eq!(bf.count(&[3, -1, -1, -1]), BigInt::from(2));
    }
}

//! Small combinatorial helpers shared by the search kernels.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Binomial coefficient as an arbitrary-precision integer.
pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Binomial coefficient if it fits in a `u64`.
pub fn binomial_u64(n: u64, k: u64) -> Option<u64> {
    let big = binomial_big(n, k);
    u64::try_from(&big).ok()
}

/// Iterator over all k-element subsets of `0..n`, emitted as sorted index
/// vectors in lexicographic order.
pub struct Combinations {
    n: usize,
    k: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            k,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        // advance to the next combination in lex order
        let mut i = self.k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] != i + self.n - self.k {
                self.idx[i] += 1;
                for j in i + 1..self.k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Visits every k-element subset of `items`, passing the chosen elements.
/// Returns early if the visitor returns `false`.
pub fn for_each_subset<T: Copy, F: FnMut(&[T]) -> bool>(items: &[T], k: usize, mut f: F) {
    let mut chosen = Vec::with_capacity(k);
    fn rec<T: Copy, F: FnMut(&[T]) -> bool>(
        items: &[T],
        k: usize,
        start: usize,
        chosen: &mut Vec<T>,
        f: &mut F,
    ) -> bool {
        if chosen.len() == k {
            return f(chosen);
        }
        let need = k - chosen.len();
        if items.len() - start < need {
            return true;
        }
        for i in start..=items.len() - need {
            chosen.push(items[i]);
            if !rec(items, k, i + 1, chosen, f) {
                chosen.pop();
                return false;
            }
            chosen.pop();
        }
        true
    }
    rec(items, k, 0, &mut chosen, &mut f);
}

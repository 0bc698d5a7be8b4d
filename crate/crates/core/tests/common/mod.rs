//! Independent brute-force oracles for the integration suites.
//!
//! Everything here works on plain member slices and `Vec<bool>` membership
//! tables with explicit loops: no bitset rotation, no pruning, no prime
//! shortcut. Agreement with the production kernels is then meaningful.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use daisy_core::structured::find_sidon_violation;
use daisy_core::zm::ZmSet;

pub fn dense(members: &[u64], m: u64) -> Vec<bool> {
    let mut table = vec![false; m as usize];
    for &v in members {
        table[(v % m) as usize] = true;
    }
    table
}

/// Unpruned double loop over every `(x0, X)` pair, no prime-modulus
/// normalization: returns the first contained slice translate.
pub fn naive_slice_witness(members: &[u64], m: u64, t: usize) -> Option<(u64, Vec<u64>)> {
    let table = dense(members, m);
    let k = 2 * t;
    let mut x = vec![0u64; k];
    for x0 in 0..m {
        if search_x(&table, m, t, x0, 0, 0, &mut x) {
            return Some((x0, x.clone()));
        }
    }
    None
}

fn search_x(
    table: &[bool],
    m: u64,
    t: usize,
    x0: u64,
    depth: usize,
    start: u64,
    x: &mut Vec<u64>,
) -> bool {
    if depth == 2 * t {
        return all_t_sums_contained(table, m, t, x0, x);
    }
    for v in start..m {
        x[depth] = v;
        if search_x(table, m, t, x0, depth + 1, v + 1, x) {
            return true;
        }
    }
    false
}

fn all_t_sums_contained(table: &[bool], m: u64, t: usize, x0: u64, x: &[u64]) -> bool {
    // walk every t-subset of x by index mask
    let k = x.len();
    for mask in 0u32..(1 << k) {
        if mask.count_ones() as usize != t {
            continue;
        }
        let mut sum = x0 % m;
        for (i, &v) in x.iter().enumerate() {
            if mask >> i & 1 == 1 {
                sum = (sum + v) % m;
            }
        }
        if !table[sum as usize] {
            return false;
        }
    }
    true
}

/// Exact g(m, t) by scanning every subset of `Z_m`, sizes descending,
/// against the unpruned witness search.
pub fn naive_g(m: u64, t: usize) -> (u64, Vec<u64>) {
    assert!(m <= 20, "mask enumeration");
    for size in (1..m).rev() {
        for mask in 0u32..(1 << m) {
            if mask.count_ones() as u64 != size {
                continue;
            }
            let members: Vec<u64> = (0..m).filter(|&v| mask >> v & 1 == 1).collect();
            if naive_slice_witness(&members, m, t).is_none() {
                return (size, members);
            }
        }
    }
    (0, Vec::new())
}

/// Quadruple-loop Sidon test: true iff no nontrivial a+b = c+d.
pub fn naive_is_sidon(members: &[u64], m: u64) -> bool {
    for &a in members {
        for &b in members {
            for &c in members {
                for &d in members {
                    if (a + b) % m == (c + d) % m {
                        let same = (a == c && b == d) || (a == d && b == c);
                        if !same {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

/// True iff the set contains a nontrivial 3-term AP.
pub fn naive_has_3ap(members: &[u64], m: u64, wraparound: bool) -> bool {
    for &a in members {
        for &b in members {
            if a == b {
                continue;
            }
            if wraparound {
                let c = (2 * b % m + (m - a)) % m;
                if members.contains(&c) {
                    return true;
                }
            } else if 2 * b >= a {
                let c = 2 * b - a;
                if c < m && members.contains(&c) {
                    return true;
                }
            }
        }
    }
    false
}

/// Exhaustive cube existence check straight from the definition: some base
/// point and `d` distinct generators whose subset sums all lie in the set.
pub fn naive_cube_exists(members: &[u64], m: u64, d: usize) -> bool {
    let table = dense(members, m);
    let mut gens = vec![0u64; d];
    fn rec(table: &[bool], m: u64, d: usize, depth: usize, start: u64, gens: &mut Vec<u64>) -> bool {
        if depth == d {
            'base: for x0 in 0..m {
                for mask in 0u32..(1 << d) {
                    let mut sum = x0;
                    for (i, &g) in gens.iter().enumerate() {
                        if mask >> i & 1 == 1 {
                            sum = (sum + g) % m;
                        }
                    }
                    if !table[sum as usize] {
                        continue 'base;
                    }
                }
                return true;
            }
            return false;
        }
        for v in start..m {
            gens[depth] = v;
            if rec(table, m, d, depth + 1, v + 1, gens) {
                return true;
            }
        }
        false
    }
    rec(&table, m, d, 0, 0, &mut gens)
}

/// Grows a Sidon set greedily over a seeded random candidate order,
/// stopping at `max_size`.
pub fn greedy_sidon(m: u64, max_size: usize, rng: &mut ChaCha8Rng) -> ZmSet {
    let mut order: Vec<u64> = (0..m).collect();
    // Fisher-Yates with the provided rng
    for i in (1..order.len()).rev() {
        let j = rng.gen_range(0..=i);
        order.swap(i, j);
    }
    let mut set = ZmSet::new(m);
    for v in order {
        if set.len() >= max_size {
            break;
        }
        set.insert(v);
        if find_sidon_violation(&set).is_some() {
            set.remove(v);
        }
    }
    debug_assert!(find_sidon_violation(&set).is_none());
    set
}

/// Deterministic small-state RNG helper for sets.
pub fn random_subset(m: u64, density_num: u64, density_den: u64, rng: &mut ChaCha8Rng) -> ZmSet {
    let mut set = ZmSet::new(m);
    for v in 0..m {
        if rng.gen_range(0..density_den) < density_num {
            set.insert(v);
        }
    }
    set
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `k` distinct residues mod `m`, seeded.
pub fn sample_distinct(m: u64, k: usize, rng: &mut ChaCha8Rng) -> Vec<u64> {
    assert!(k as u64 <= m);
    let mut s = std::collections::BTreeSet::new();
    while s.len() < k {
        s.insert(rng.gen_range(0..m));
    }
    s.into_iter().collect()
}

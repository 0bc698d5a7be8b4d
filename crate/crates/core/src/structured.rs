//! Structured subsets of `Z_m`: 3-AP-free sets by Behrend's sphere-layer
//! construction, Sidon sets by Singer's projective-line construction over
//! `GF(p^3)`, and the value-preserving embeddings between moduli.

use serde::{Deserialize, Serialize};

use crate::gf::Gf3;
use crate::zm::ZmSet;
use crate::{Error, Result};

/// A nontrivial 3-term arithmetic progression `a, b, c` inside the checked
/// set: `b - a = c - b` with `a != b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApWitness {
    pub a: u64,
    pub b: u64,
    pub c: u64,
}

/// A nontrivial solution of `a + b = c + d` inside the checked set: the pair
/// multisets `{a,b}` and `{c,d}` differ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidonWitness {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

/// Searches `r` for a nontrivial 3-term arithmetic progression. Returns
/// `None` iff the set is 3-AP-free.
///
/// With `wraparound` the progression is modular (`2b ≡ a + c mod m`, and the
/// three terms need not be distinct residues as long as `a != b`); without
/// it, members are read as integers in `[0, m)` and the progression must
/// hold over `Z`.
pub fn find_3ap(r: &ZmSet, wraparound: bool) -> Option<ApWitness> {
    let m = r.modulus();
    let members = r.members();
    for &a in &members {
        for &b in &members {
            if a == b {
                continue;
            }
            if wraparound {
                let c = (2 * (b % m) % m + (m - a % m)) % m;
                if r.contains(c) {
                    return Some(ApWitness { a, b, c });
                }
            } else {
                // c = 2b - a over the integers
                if 2 * b >= a {
                    let c = 2 * b - a;
                    if c < m && r.contains(c) {
                        return Some(ApWitness { a, b, c });
                    }
                }
            }
        }
    }
    None
}

/// Searches `s` for a nontrivial additive quadruple `a + b = c + d mod m`
/// (repetition `a = b` allowed). Returns `None` iff the set is Sidon.
pub fn find_sidon_violation(s: &ZmSet) -> Option<SidonWitness> {
    let m = s.modulus();
    let members = s.members();
    let mut first_pair: Vec<Option<(u64, u64)>> = vec![None; m as usize];
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i..] {
            let sum = ((a + b) % m) as usize;
            match first_pair[sum] {
                None => first_pair[sum] = Some((a, b)),
                Some((c, d)) => {
                    return Some(SidonWitness { a: c, b: d, c: a, d: b });
                }
            }
        }
    }
    None
}

/// Reinterprets the members of `s` as residues modulo a larger `m`.
///
/// Values are unchanged. Errors if `m` is smaller than the source modulus.
/// The Sidon property survives whenever `source < m/2`, and 3-AP-freeness
/// over the integers survives for any `m >= source`; callers re-check with
/// the oracles when they rely on either.
pub fn embed(s: &ZmSet, m: u64) -> Result<ZmSet> {
    if s.modulus() > m {
        return Err(Error::EmbedShrink {
            original: s.modulus(),
            target: m,
        });
    }
    Ok(ZmSet::from_members(m, s.iter()))
}

// ---------------------------------------------------------------------------
// Behrend

/// Largest 3-AP-free subset of `{1, ..., floor(m/5)}` found by sweeping
/// Behrend's sphere-layer construction, returned inside `Z_m`.
///
/// For a digit bound `d`, integers are written in base `2d` with digits below
/// `d` (so addition never carries), and a fixed sum-of-squares shell of the
/// digit vectors is kept: `x + y = 2z` on one shell forces `x = y`. The sweep
/// runs every digit bound `2 <= d <= sqrt(N)` and every dimension that keeps
/// all values `<= N`, takes the largest shell overall, and falls back to
/// `{1}` when no swept shell beats a singleton.
pub fn behrend_set(m: u64) -> Result<ZmSet> {
    if m < 6 {
        return Err(Error::ModulusTooSmall { m, min: 6 });
    }
    let n_cap = m / 5;
    let mut best_count = 1u64;
    let mut best_choice: Option<(u64, usize, u64)> = None; // (d, dims, shell)

    let mut d = 2u64;
    while d * d <= n_cap {
        let base = 2 * d;
        let mut dims = 0usize;
        let mut max_elt = 0u64; // (d-1) * (base^dims - 1) / (base - 1)
        loop {
            // value of the all-(d-1) vector with one more digit
            let next = max_elt
                .checked_mul(base)
                .and_then(|v| v.checked_add(d - 1));
            match next {
                Some(v) if v <= n_cap => {
                    max_elt = v;
                    dims += 1;
                }
                _ => break,
            }
            if dims == 1 {
                // one-digit shells are singletons; never beat the fallback
                continue;
            }

            let counts = shell_counts(d, dims);
            let (shell, count) = counts
                .iter()
                .enumerate()
                .skip(1) // shell 0 is the zero vector only
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .map(|(s, &c)| (s as u64, c))
                .unwrap_or((0, 0));
            if count > best_count {
                best_count = count;
                best_choice = Some((d, dims, shell));
            }
        }
        d += 1;
    }

    let members = match best_choice {
        None => vec![1u64],
        Some((d, dims, shell)) => enumerate_shell(d, dims, shell),
    };
    debug_assert_eq!(members.len() as u64, best_count);
    Ok(ZmSet::from_members(m, members))
}

/// `counts[s]` = number of digit vectors in `[0, d)^dims` with sum of squares `s`.
fn shell_counts(d: u64, dims: usize) -> Vec<u64> {
    let smax = dims as u64 * (d - 1) * (d - 1);
    let mut counts = vec![0u64; smax as usize + 1];
    counts[0] = 1;
    for _ in 0..dims {
        let mut next = vec![0u64; counts.len()];
        for (s, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for a in 0..d {
                let s2 = s + (a * a) as usize;
                if s2 < next.len() {
                    next[s2] += c;
                }
            }
        }
        counts = next;
    }
    counts
}

/// All integers whose base-`2d` digit vector lies on the given shell.
fn enumerate_shell(d: u64, dims: usize, shell: u64) -> Vec<u64> {
    // reach[i][s]: can i digits reach sum-of-squares exactly s
    let smax = shell as usize;
    let mut reach = vec![vec![false; smax + 1]; dims + 1];
    reach[0][0] = true;
    for i in 1..=dims {
        for s in 0..=smax {
            for a in 0..d {
                let aa = (a * a) as usize;
                if aa > s {
                    break;
                }
                if reach[i - 1][s - aa] {
                    reach[i][s] = true;
                    break;
                }
            }
        }
    }
    let base = 2 * d;
    let mut out = Vec::new();
    let mut digits = vec![0u64; dims];
    fn rec(
        d: u64,
        base: u64,
        reach: &[Vec<bool>],
        digits: &mut Vec<u64>,
        pos: usize,
        rem: usize,
        value: u64,
        place: u64,
        out: &mut Vec<u64>,
    ) {
        if pos == digits.len() {
            if rem == 0 {
                out.push(value);
            }
            return;
        }
        let left = digits.len() - pos - 1;
        for a in 0..d {
            let aa = (a * a) as usize;
            if aa > rem {
                break;
            }
            if reach[left][rem - aa] {
                rec(
                    d,
                    base,
                    reach,
                    digits,
                    pos + 1,
                    rem - aa,
                    value + a * place,
                    place * base,
                    out,
                );
            }
        }
    }
    rec(d, base, &reach, &mut digits, 0, smax, 0, 1, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Singer

/// Sidon set of size `p + 1` in `Z_{p^2+p+1}` from Singer's construction.
///
/// The points of the projective line spanned by `{1, θ}` in `PG(2, p)` are
/// represented by `{θ + c : c in GF(p)} ∪ {1}`; their discrete logarithms to
/// the canonical primitive element, reduced modulo `p^2 + p + 1`, form a
/// perfect difference set. The output is re-verified with
/// [`find_sidon_violation`] before being returned; a verification failure is
/// an internal error, never a silently wrong set.
pub fn singer_sidon(p: u64) -> Result<ZmSet> {
    let field = Gf3::new(p)?;
    let g = field.primitive_element()?;
    let table = field.dlog_table(g)?;
    let m = p * p + p + 1;
    let mut set = ZmSet::new(m);
    set.insert(table[field.encode(field.one()) as usize] % m);
    for c in 0..p {
        let rep = [c, 1, 0];
        set.insert(table[field.encode(rep) as usize] % m);
    }
    if set.len() != (p + 1) as usize {
        return Err(Error::SelfCheck(format!(
            "Singer set has {} elements, expected {}",
            set.len(),
            p + 1
        )));
    }
    if let Some(w) = find_sidon_violation(&set) {
        return Err(Error::SelfCheck(format!(
            "Singer set is not Sidon: {}+{} = {}+{} (mod {m})",
            w.a, w.b, w.c, w.d
        )));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_ap_examples() {
        let r = ZmSet::from_members(10, [1, 2, 4, 5]);
        assert_eq!(find_3ap(&r, false), None);

        let r = ZmSet::from_members(10, [1, 2, 3]);
        assert_eq!(find_3ap(&r, false), Some(ApWitness { a: 1, b: 2, c: 3 }));

        // modular wraparound: 3 - 0 ≡ 1 - 3 (mod 5)
        let r = ZmSet::from_members(5, [0, 1, 3]);
        assert_eq!(find_3ap(&r, true), Some(ApWitness { a: 0, b: 3, c: 1 }));
        assert_eq!(find_3ap(&r, false), None);
    }

    #[test]
    fn sidon_examples() {
        assert_eq!(find_sidon_violation(&ZmSet::from_members(7, [0, 1, 3])), None);
        assert_eq!(
            find_sidon_violation(&ZmSet::from_members(7, [0, 1, 2])),
            Some(SidonWitness { a: 0, b: 2, c: 1, d: 1 })
        );
        assert_eq!(find_sidon_violation(&ZmSet::from_members(9, [5])), None);
    }

    #[test]
    fn behrend_small_values() {
        assert_eq!(behrend_set(6).unwrap().members(), vec![1]);
        let r = behrend_set(50).unwrap();
        assert!(!r.is_empty());
        assert!(r.members().iter().all(|&v| (1..=10).contains(&v)));
        assert_eq!(find_3ap(&r, false), None);
    }

    #[test]
    fn behrend_sweep_invariants() {
        for m in (6..400).step_by(7).chain([1000, 5000]) {
            let r = behrend_set(m).unwrap();
            let cap = m / 5;
            assert!(!r.is_empty(), "m={m}");
            assert!(r.members().iter().all(|&v| v >= 1 && v <= cap), "m={m}");
            assert_eq!(find_3ap(&r, false), None, "m={m}");
            // interval sets stay 3-AP-free modulo m as well
            assert_eq!(find_3ap(&r, true), None, "m={m}");
        }
    }

    #[test]
    fn behrend_beats_singleton_at_100() {
        let r = behrend_set(100).unwrap();
        assert!(r.len() >= 2, "sphere layers of [20] contain at least a pair");
    }

    #[test]
    fn behrend_rejects_tiny_modulus() {
        assert!(behrend_set(5).is_err());
    }

    #[test]
    fn singer_small_primes() {
        let s = singer_sidon(2).unwrap();
        assert_eq!(s.modulus(), 7);
        assert_eq!(s.members(), vec![0, 1, 3]);

        let s = singer_sidon(3).unwrap();
        assert_eq!(s.modulus(), 13);
        assert_eq!(s.len(), 4);
        assert_eq!(find_sidon_violation(&s), None);

        assert!(singer_sidon(4).is_err());
    }

    #[test]
    fn embed_checks() {
        let s = ZmSet::from_members(7, [0, 1, 3]);
        let e = embed(&s, 64).unwrap();
        assert_eq!(e.members(), vec![0, 1, 3]);
        assert_eq!(find_sidon_violation(&e), None, "7 < 64/2 preserves Sidon");

        assert_eq!(embed(&s, 7).unwrap(), s);
        assert!(embed(&s, 5).is_err());

        let r = ZmSet::from_members(11, [1, 2, 4, 5]);
        let e = embed(&r, 100).unwrap();
        assert_eq!(find_3ap(&e, true), None);
    }
}

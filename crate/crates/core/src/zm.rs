//! Residue arithmetic and set primitives over `Z_m`.
//!
//! [`ZmSet`] is a dense, bit-indexed subset of `Z_m`: membership is one bit,
//! translation is a word-level cyclic rotation, and intersection is a
//! word-wise AND. These three operations are the inner loop of every search
//! in the crate, so they avoid per-element work entirely.
//!
//! All values are canonicalized to `[0, m)` eagerly; equality is structural.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::comb::for_each_subset;
use crate::{Error, Result};

/// A canonical residue modulo `m`. Carries its modulus so that mixed-modulus
/// arithmetic is rejected instead of silently wrapping.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    /// Reduces `value` into `[0, m)`.
    ///
    /// Panics if `modulus == 0`.
    pub fn new(value: u64, modulus: u64) -> Residue {
        assert!(modulus >= 1, "modulus must be at least 1");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// A subset of `Z_m`, stored as a bit array of length `m`.
///
/// Invariant: bits at positions `>= m` are always zero.
#[derive(Clone, PartialEq, Eq)]
pub struct ZmSet {
    modulus: u64,
    words: Vec<u64>,
}

fn word_count(m: u64) -> usize {
    m.div_ceil(64) as usize
}

impl ZmSet {
    /// The empty subset of `Z_m`. Panics if `m == 0`.
    pub fn new(modulus: u64) -> ZmSet {
        assert!(modulus >= 1, "modulus must be at least 1");
        ZmSet {
            modulus,
            words: vec![0; word_count(modulus)],
        }
    }

    /// The full set `Z_m`.
    pub fn full(modulus: u64) -> ZmSet {
        let mut s = ZmSet::new(modulus);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        mask_top(&mut s.words, modulus);
        s
    }

    /// Builds a set from arbitrary values, reducing each one mod `m`.
    pub fn from_members<I: IntoIterator<Item = u64>>(modulus: u64, members: I) -> ZmSet {
        let mut s = ZmSet::new(modulus);
        for v in members {
            s.insert(v);
        }
        s
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Cardinality.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, v: u64) -> bool {
        let v = v % self.modulus;
        self.words[(v / 64) as usize] >> (v % 64) & 1 == 1
    }

    /// Inserts `v mod m`; returns true if it was not already present.
    pub fn insert(&mut self, v: u64) -> bool {
        let v = v % self.modulus;
        let (w, b) = ((v / 64) as usize, v % 64);
        let fresh = self.words[w] >> b & 1 == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    /// Removes `v mod m`; returns true if it was present.
    pub fn remove(&mut self, v: u64) -> bool {
        let v = v % self.modulus;
        let (w, b) = ((v / 64) as usize, v % 64);
        let had = self.words[w] >> b & 1 == 1;
        self.words[w] &= !(1 << b);
        had
    }

    /// Members in ascending order.
    pub fn iter(&self) -> BitIter<'_> {
        BitIter {
            words: &self.words,
            word_idx: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Sorted member vector.
    pub fn members(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// Smallest member, if any.
    pub fn min_element(&self) -> Option<u64> {
        self.iter().next()
    }

    /// The translate `R + a` (elementwise, mod m). Errors on modulus mismatch.
    pub fn translate(&self, a: Residue) -> Result<ZmSet> {
        if a.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, a.modulus()));
        }
        Ok(self.shift_raw(a.value()))
    }

    /// `A ∩ (A − x)`: the elements that stay in `A` after stepping by `x`.
    pub fn shift_intersect(&self, x: Residue) -> Result<ZmSet> {
        if x.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, x.modulus()));
        }
        Ok(self.shift_intersect_raw(x.value()))
    }

    /// Intersection with a set over the same modulus.
    pub fn intersect(&self, other: &ZmSet) -> Result<ZmSet> {
        if other.modulus != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        let mut out = self.clone();
        for (d, s) in out.words.iter_mut().zip(&other.words) {
            *d &= s;
        }
        Ok(out)
    }

    pub fn is_subset_of(&self, other: &ZmSet) -> bool {
        self.modulus == other.modulus
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    /// Cyclic rotation of the bit array: member `v` maps to `(v + a) mod m`.
    pub(crate) fn shift_raw(&self, a: u64) -> ZmSet {
        let m = self.modulus;
        let a = a % m;
        if a == 0 {
            return self.clone();
        }
        let mut out = vec![0u64; self.words.len()];
        shl_into(&mut out, &self.words, a as usize);
        mask_top(&mut out, m);
        shr_or_into(&mut out, &self.words, (m - a) as usize);
        ZmSet { modulus: m, words: out }
    }

    pub(crate) fn shift_intersect_raw(&self, x: u64) -> ZmSet {
        let m = self.modulus;
        let back = (m - x % m) % m;
        let mut shifted = self.shift_raw(back); // A − x
        for (d, s) in shifted.words.iter_mut().zip(&self.words) {
            *d &= s;
        }
        shifted
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl std::fmt::Debug for ZmSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ZmSet(mod {}; {:?})", self.modulus, self.members())
    }
}

/// Ascending iterator over set bits.
pub struct BitIter<'a> {
    words: &'a [u64],
    word_idx: usize,
    current: u64,
}

impl Iterator for BitIter<'_> {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.current == 0 {
            self.word_idx += 1;
            if self.word_idx >= self.words.len() {
                return None;
            }
            self.current = self.words[self.word_idx];
        }
        let b = self.current.trailing_zeros() as u64;
        self.current &= self.current - 1;
        Some(self.word_idx as u64 * 64 + b)
    }
}

// ---------------------------------------------------------------------------
// raw word helpers, shared with the search kernels

pub(crate) fn mask_top(words: &mut [u64], m: u64) {
    let used = m % 64;
    if used != 0 {
        if let Some(last) = words.last_mut() {
            *last &= (1u64 << used) - 1;
        }
    }
}

/// `dst = src << k` over the word array (dst must be zeroed).
fn shl_into(dst: &mut [u64], src: &[u64], k: usize) {
    let (ws, bit) = (k / 64, (k % 64) as u32);
    for j in ws..dst.len() {
        let mut x = src[j - ws] << bit;
        if bit > 0 && j > ws {
            x |= src[j - ws - 1] >> (64 - bit);
        }
        dst[j] = x;
    }
}

/// `dst |= src >> k` over the word array.
fn shr_or_into(dst: &mut [u64], src: &[u64], k: usize) {
    let (ws, bit) = (k / 64, (k % 64) as u32);
    for j in 0..dst.len() {
        let i = j + ws;
        if i >= src.len() {
            break;
        }
        let mut x = src[i] >> bit;
        if bit > 0 && i + 1 < src.len() {
            x |= src[i + 1] << (64 - bit);
        }
        dst[j] |= x;
    }
}

pub(crate) fn and_into(dst: &mut [u64], other: &[u64]) {
    for (d, s) in dst.iter_mut().zip(other) {
        *d &= s;
    }
}

pub(crate) fn any_bit(words: &[u64]) -> bool {
    words.iter().any(|&w| w != 0)
}

/// First set bit at position `>= from`, if any.
pub(crate) fn next_bit(words: &[u64], from: u64) -> Option<u64> {
    let mut wi = (from / 64) as usize;
    if wi >= words.len() {
        return None;
    }
    let mut cur = words[wi] & (u64::MAX << (from % 64));
    loop {
        if cur != 0 {
            return Some(wi as u64 * 64 + cur.trailing_zeros() as u64);
        }
        wi += 1;
        if wi >= words.len() {
            return None;
        }
        cur = words[wi];
    }
}

// ---------------------------------------------------------------------------
// slice sums and primes

/// The middle slice-sum set `C(X)`: all sums of exactly `t` distinct elements
/// of `X`, where `|X| = 2t`. Errors unless `|X| = 2t` and `t >= 1`.
pub fn slice_sums(x: &ZmSet, t: u32) -> Result<ZmSet> {
    if t == 0 {
        return Err(Error::InvalidParam("t must be at least 1".into()));
    }
    let need = 2 * t as usize;
    let elems = x.members();
    if elems.len() != need {
        return Err(Error::SizeMismatch {
            expected: need,
            got: elems.len(),
        });
    }
    let m = x.modulus();
    let mut out = ZmSet::new(m);
    for_each_subset(&elems, t as usize, |chosen| {
        let sum = chosen.iter().fold(0u64, |acc, &v| (acc + v) % m);
        out.insert(sum);
        true
    });
    Ok(out)
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime in `[lo, hi]`, or `None` if the interval has none.
/// Errors if `lo < 1` or `lo > hi`.
pub fn prime_in_range(lo: u64, hi: u64) -> Result<Option<u64>> {
    if lo < 1 || lo > hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    Ok((lo..=hi).find(|&n| is_prime(n)))
}

// ---------------------------------------------------------------------------
// serde: sets serialize as a sorted member array plus the modulus

#[derive(Serialize, Deserialize)]
struct ZmSetRepr {
    modulus: u64,
    members: Vec<u64>,
}

impl Serialize for ZmSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ZmSetRepr {
            modulus: self.modulus,
            members: self.members(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ZmSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = ZmSetRepr::deserialize(deserializer)?;
        if repr.modulus == 0 {
            return Err(D::Error::custom("modulus must be at least 1"));
        }
        if let Some(&bad) = repr.members.iter().find(|&&v| v >= repr.modulus) {
            return Err(D::Error::custom(format!(
                "member {bad} out of range for modulus {}",
                repr.modulus
            )));
        }
        Ok(ZmSet::from_members(repr.modulus, repr.members))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn slice_sums_examples() {
        let x = ZmSet::from_members(10, [0, 1, 2, 3]);
        assert_eq!(slice_sums(&x, 2).unwrap().members(), vec![1, 2, 3, 4, 5]);

        let x = ZmSet::from_members(4, [0, 1, 2, 3]);
        assert_eq!(slice_sums(&x, 2).unwrap().members(), vec![0, 1, 2, 3]);

        let x = ZmSet::from_members(100, [1, 2, 3, 4]);
        assert_eq!(slice_sums(&x, 2).unwrap().members(), vec![3, 4, 5, 6, 7]);
    }

    #[test]
    fn slice_sums_size_mismatch() {
        let x = ZmSet::from_members(10, [0, 1, 2]);
        assert!(matches!(
            slice_sums(&x, 2),
            Err(Error::SizeMismatch { expected: 4, got: 3 })
        ));
    }

    #[test]
    fn translate_examples() {
        let r = ZmSet::from_members(5, [0, 1]);
        assert_eq!(
            r.translate(Residue::new(0, 5)).unwrap().members(),
            vec![0, 1]
        );
        assert_eq!(
            r.translate(Residue::new(4, 5)).unwrap().members(),
            vec![0, 4]
        );
        let empty = ZmSet::new(7);
        assert!(empty.translate(Residue::new(3, 7)).unwrap().is_empty());
        assert!(matches!(
            r.translate(Residue::new(1, 6)),
            Err(Error::ModulusMismatch(5, 6))
        ));
    }

    #[test]
    fn shift_intersect_examples() {
        let full = ZmSet::full(5);
        assert_eq!(full.shift_intersect(Residue::new(2, 5)).unwrap(), full);

        let a = ZmSet::from_members(5, [0, 1]);
        assert_eq!(
            a.shift_intersect(Residue::new(1, 5)).unwrap().members(),
            vec![0]
        );
        assert_eq!(a.shift_intersect(Residue::new(0, 5)).unwrap(), a);
    }

    #[test]
    fn prime_range_examples() {
        assert_eq!(prime_in_range(64, 128).unwrap(), Some(67));
        assert_eq!(prime_in_range(2, 2).unwrap(), Some(2));
        assert_eq!(prime_in_range(8, 10).unwrap(), None);
        assert!(prime_in_range(5, 3).is_err());
        assert!(prime_in_range(0, 3).is_err());
    }

    #[test]
    fn bertrand_sweep() {
        // a prime always lands in [r^2, 2r^2] at desk scale
        for r in 1u64..=120 {
            assert!(prime_in_range(r * r, 2 * r * r).unwrap().is_some(), "r={r}");
        }
    }

    #[test]
    fn full_set_and_masking() {
        for m in [1u64, 5, 63, 64, 65, 127, 128, 200] {
            let f = ZmSet::full(m);
            assert_eq!(f.len() as u64, m);
            assert_eq!(f.shift_raw(3), f, "m={m}");
        }
    }

    fn naive_translate(members: &[u64], m: u64, a: u64) -> Vec<u64> {
        let mut v: Vec<u64> = members.iter().map(|&x| (x + a) % m).collect();
        v.sort_unstable();
        v
    }

    proptest! {
        #[test]
        fn rotate_matches_naive(m in 1u64..400, shift in 0u64..1000, seed in any::<u64>()) {
            let mut vals = Vec::new();
            let mut s = seed;
            for _ in 0..(seed % 64) {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                vals.push(s % m);
            }
            let set = ZmSet::from_members(m, vals.clone());
            let rotated = set.shift_raw(shift);
            let mut expect = naive_translate(&set.members(), m, shift % m);
            expect.dedup();
            prop_assert_eq!(rotated.members(), expect);
        }

        #[test]
        fn translate_round_trip(m in 1u64..300, a in 0u64..300, seed in any::<u64>()) {
            let mut vals = Vec::new();
            let mut s = seed;
            for _ in 0..(seed % 40) {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                vals.push(s % m);
            }
            let set = ZmSet::from_members(m, vals);
            let there = set.translate(Residue::new(a, m)).unwrap();
            let back = there.translate(Residue::new((m - a % m) % m, m)).unwrap();
            prop_assert_eq!(back, set);
        }

        #[test]
        fn shift_intersect_is_contained(m in 1u64..200, x in 0u64..200, seed in any::<u64>()) {
            let mut vals = Vec::new();
            let mut s = seed;
            for _ in 0..(seed % 40) {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                vals.push(s % m);
            }
            let a = ZmSet::from_members(m, vals);
            let inter = a.shift_intersect(Residue::new(x, m)).unwrap();
            prop_assert!(inter.is_subset_of(&a));
            // size preserved iff the set is invariant under the shift
            let shifted_back = a.shift_raw((m - x % m) % m);
            prop_assert_eq!(inter.len() == a.len(), shifted_back == a);
        }

        #[test]
        fn slice_sums_cardinality_bounds(t in 1u32..4, seed in any::<u64>()) {
            let m = 16 + seed % 100;
            let mut vals = std::collections::BTreeSet::new();
            let mut s = seed;
            while vals.len() < 2 * t as usize {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                vals.insert(s % m);
            }
            let x = ZmSet::from_members(m, vals.iter().copied());
            let c = slice_sums(&x, t).unwrap();
            let c2 = slice_sums(&x, t).unwrap();
            prop_assert_eq!(&c, &c2);
            let max = crate::comb::binomial_u64(2 * t as u64, t as u64).unwrap() as usize;
            prop_assert!(c.len() >= 2, "swapping one summand must change the sum");
            prop_assert!(c.len() <= max);
        }
    }

    #[test]
    fn serde_round_trip() {
        let set = ZmSet::from_members(64, [0, 1, 3, 63]);
        let json = serde_json::to_string(&set).unwrap();
        assert_eq!(json, r#"{"modulus":64,"members":[0,1,3,63]}"#);
        let back: ZmSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set);
        assert!(serde_json::from_str::<ZmSet>(r#"{"modulus":4,"members":[9]}"#).is_err());
    }
}

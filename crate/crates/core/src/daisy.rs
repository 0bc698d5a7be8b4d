//! Partite `r`-uniform families over `[n]` whose block-label sums land in a
//! prescribed subset of `Z_L`, with exact counting by dynamic programming,
//! translate optimization, and a brute-force daisy detector.
//!
//! A `t`-daisy is the full bundle of `C(2t,t)` r-sets `S ∪ T` over a fixed
//! stem `S` and the `t`-subsets `T` of a disjoint `2t`-set `U`. When the
//! label set `R` is slice-translate-free, the partite family contains no
//! daisy: the petal labels would exhibit a translate of a slice-sum set
//! inside `R`.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::comb::{binomial_big, binomial_u64, Combinations};
use crate::report::{BoundReport, FamilyStats, Quantity, ReportKind, TargetBound};
use crate::slice::{find_slice_translate, random_slice_avoiding_set, sidon_slice_avoiding_set};
use crate::zm::{prime_in_range, ZmSet};
use crate::{Error, Result};

/// Default cap on explicit family enumeration (number of candidate r-sets).
pub const DEFAULT_ENUM_BUDGET: u64 = 2_000_000;

/// Default cap on daisy-search work items.
pub const DEFAULT_DAISY_BUDGET: u64 = 100_000_000;

/// Parameters of a partite family: ground set `[n]`, uniformity `r`, daisy
/// parameter `t`, `L` blocks, and the label-sum set `R ⊆ Z_L`.
///
/// Any `L >= 1` is accepted; the prime window `r^2 <= L <= 2r^2` only
/// matters when a certified density bound is requested.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartiteParams {
    pub n: u64,
    pub r: u32,
    pub t: u32,
    pub l: u64,
    pub r_set: ZmSet,
}

impl PartiteParams {
    pub fn new(n: u64, r: u32, t: u32, r_set: ZmSet) -> Result<PartiteParams> {
        if r < 1 || (r as u64) > n {
            return Err(Error::InvalidParam(format!(
                "need n >= r >= 1, got n = {n}, r = {r}"
            )));
        }
        if t < 2 {
            return Err(Error::InvalidParam("daisy parameter t must be >= 2".into()));
        }
        Ok(PartiteParams {
            n,
            r,
            t,
            l: r_set.modulus(),
            r_set,
        })
    }
}

/// Block label of ground element `i`: `floor(L (i-1) / n)`, in `[0, L)`.
pub fn block_label(i: u64, n: u64, l: u64) -> Result<u64> {
    if i < 1 || i > n {
        return Err(Error::InvalidParam(format!(
            "ground element {i} outside [1, {n}]"
        )));
    }
    Ok((l as u128 * (i as u128 - 1) / n as u128) as u64)
}

/// Membership test: `s` belongs to the family iff its block labels are
/// pairwise distinct and their sum mod `L` lies in `R`.
pub fn in_family(s: &[u64], params: &PartiteParams) -> Result<bool> {
    if s.len() != params.r as usize {
        return Err(Error::SizeMismatch {
            expected: params.r as usize,
            got: s.len(),
        });
    }
    let mut labels = Vec::with_capacity(s.len());
    let mut sum = 0u64;
    for &i in s {
        let x = block_label(i, params.n, params.l)?;
        labels.push(x);
        sum = (sum + x) % params.l;
    }
    labels.sort_unstable();
    if labels.windows(2).any(|w| w[0] == w[1]) {
        return Ok(false);
    }
    Ok(params.r_set.contains(sum))
}

/// DP table row: `counts[s]` = number of distinct-label r-sets whose label
/// sum is `s (mod L)`. One pass over the blocks; choosing an element inside
/// a block of size `n_b` multiplies by `n_b`.
fn distinct_label_counts_by_sum(params: &PartiteParams) -> Vec<BigUint> {
    let l = params.l as usize;
    let r = params.r as usize;
    let mut block_sizes = vec![0u64; l];
    for i in 1..=params.n {
        let b = (params.l as u128 * (i as u128 - 1) / params.n as u128) as usize;
        block_sizes[b] += 1;
    }
    let mut table = vec![vec![BigUint::zero(); l]; r + 1];
    table[0][0] = BigUint::from(1u32);
    for (b, &nb) in block_sizes.iter().enumerate() {
        if nb == 0 {
            continue;
        }
        let nb = BigUint::from(nb);
        for k in (1..=r).rev() {
            for s in 0..l {
                let prev = (s + l - b) % l;
                if table[k - 1][prev].is_zero() {
                    continue;
                }
                let add = &table[k - 1][prev] * &nb;
                table[k][s] += add;
            }
        }
    }
    table.pop().expect("r+1 rows")
}

/// Exact family size and the total count `D` of distinct-label r-sets.
pub fn family_size(params: &PartiteParams) -> (BigUint, BigUint) {
    let row = distinct_label_counts_by_sum(params);
    let total = params
        .r_set
        .iter()
        .fold(BigUint::zero(), |acc, s| acc + &row[s as usize]);
    let distinct = row.iter().fold(BigUint::zero(), |acc, c| acc + c);
    (total, distinct)
}

/// Per-translate sizes `|F_{R+a}|` for every `a` in `Z_L`, from one DP pass.
pub fn translate_sizes(params: &PartiteParams) -> Vec<BigUint> {
    let row = distinct_label_counts_by_sum(params);
    let l = params.l;
    (0..l)
        .map(|a| {
            params
                .r_set
                .iter()
                .fold(BigUint::zero(), |acc, s| acc + &row[((s + a) % l) as usize])
        })
        .collect()
}

/// The translate maximizing the family size (ties to the smallest shift).
/// Averaging over all `L` translates gives `sum_a |F_{R+a}| = D * |R|`, so
/// the winner is at least `D |R| / L`.
pub fn best_translate(params: &PartiteParams) -> (u64, BigUint) {
    let sizes = translate_sizes(params);
    let mut best_a = 0u64;
    let mut best = sizes[0].clone();
    for (a, size) in sizes.into_iter().enumerate().skip(1) {
        if size > best {
            best = size;
            best_a = a as u64;
        }
    }
    (best_a, best)
}

// ---------------------------------------------------------------------------
// explicit families and daisy search

/// An explicit r-uniform family over `[n]`: sorted member lists in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RSetFamily {
    pub n: u64,
    pub r: u32,
    members: Vec<Vec<u64>>,
}

impl RSetFamily {
    pub fn from_members(n: u64, r: u32, members: Vec<Vec<u64>>) -> Result<RSetFamily> {
        let mut cleaned = Vec::with_capacity(members.len());
        for mut s in members {
            s.sort_unstable();
            s.dedup();
            if s.len() != r as usize {
                return Err(Error::SizeMismatch {
                    expected: r as usize,
                    got: s.len(),
                });
            }
            if s.iter().any(|&v| v < 1 || v > n) {
                return Err(Error::InvalidParam(format!(
                    "member element outside [1, {n}]: {s:?}"
                )));
            }
            cleaned.push(s);
        }
        cleaned.sort();
        cleaned.dedup();
        Ok(RSetFamily {
            n,
            r,
            members: cleaned,
        })
    }

    /// Materializes the partite family by filtering every r-subset of `[n]`.
    /// Refuses when `C(n, r)` exceeds the budget.
    pub fn enumerate_partite(params: &PartiteParams, budget: u64) -> Result<RSetFamily> {
        let candidates = binomial_big(params.n, params.r as u64);
        if candidates > BigUint::from(budget) {
            return Err(Error::CapExceeded {
                what: "explicit family enumeration C(n,r)",
                value: candidates.to_u64().unwrap_or(u64::MAX),
                cap: budget,
            });
        }
        let mut members = Vec::new();
        let mut buf = Vec::with_capacity(params.r as usize);
        for combo in Combinations::new(params.n as usize, params.r as usize) {
            buf.clear();
            buf.extend(combo.iter().map(|&i| i as u64 + 1));
            if in_family(&buf, params)? {
                members.push(buf.clone());
            }
        }
        Ok(RSetFamily {
            n: params.n,
            r: params.r,
            members,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Vec<u64>] {
        &self.members
    }

    pub fn contains(&self, set: &[u64]) -> bool {
        let mut key = set.to_vec();
        key.sort_unstable();
        self.members.binary_search(&key).is_ok()
    }

    /// Adds a member (used to plant configurations in tests and experiments).
    pub fn insert(&mut self, set: Vec<u64>) -> Result<()> {
        let mut s = set;
        s.sort_unstable();
        s.dedup();
        if s.len() != self.r as usize {
            return Err(Error::SizeMismatch {
                expected: self.r as usize,
                got: s.len(),
            });
        }
        if s.iter().any(|&v| v < 1 || v > self.n) {
            return Err(Error::InvalidParam("element outside ground set".into()));
        }
        if let Err(pos) = self.members.binary_search(&s) {
            self.members.insert(pos, s);
        }
        Ok(())
    }
}

/// A daisy found inside a family: the stem `S` and the `2t`-set `U` whose
/// `t`-subsets all extend `S` into the family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DaisyWitness {
    pub stem: Vec<u64>,
    pub u: Vec<u64>,
}

impl DaisyWitness {
    pub fn verify(&self, family: &RSetFamily, t: u32) -> bool {
        let r = family.r as usize;
        let tt = t as usize;
        if self.stem.len() + tt != r || self.u.len() != 2 * tt {
            return false;
        }
        if self.u.iter().any(|v| self.stem.contains(v)) {
            return false;
        }
        let mut all_present = true;
        crate::comb::for_each_subset(&self.u, tt, |petal| {
            let mut set = self.stem.clone();
            set.extend_from_slice(petal);
            all_present = family.contains(&set);
            all_present
        });
        all_present
    }
}

/// Searches the family for any `t`-daisy. `Ok(None)` means daisy-free.
pub fn find_daisy(family: &RSetFamily, t: u32) -> Result<Option<DaisyWitness>> {
    find_daisy_with(family, t, DEFAULT_DAISY_BUDGET)
}

/// Stem/petal indexing: each member is split into an `(r-t)`-stem and its
/// complementary `t`-petal; a stem with at least `C(2t,t)` petals is then
/// scanned for a `2t`-subset of its petal support whose `t`-subsets are all
/// present. Elements appearing in fewer than `C(2t-1, t-1)` petals cannot
/// participate in a daisy and are pruned from the support first.
pub fn find_daisy_with(family: &RSetFamily, t: u32, budget: u64) -> Result<Option<DaisyWitness>> {
    if t < 1 {
        return Err(Error::InvalidParam("daisy parameter t must be >= 1".into()));
    }
    let r = family.r;
    if r < t {
        return Err(Error::InvalidParam(format!(
            "daisy needs r >= t, got r = {r}, t = {t}"
        )));
    }
    let tt = t as usize;
    let need = binomial_u64(2 * t as u64, t as u64)
        .ok_or_else(|| Error::InvalidParam("t too large".into()))? as usize;
    let elem_threshold = binomial_u64(2 * t as u64 - 1, t as u64 - 1).unwrap() as usize;

    let mut indexing_work = 0u64;
    let mut stems: BTreeMap<Vec<u64>, BTreeSet<Vec<u64>>> = BTreeMap::new();
    for member in family.members() {
        crate::comb::for_each_subset(member, r as usize - tt, |stem| {
            let petal: Vec<u64> = member
                .iter()
                .copied()
                .filter(|v| !stem.contains(v))
                .collect();
            stems.entry(stem.to_vec()).or_default().insert(petal);
            true
        });
        indexing_work += binomial_u64(r as u64, (r - t) as u64).unwrap_or(u64::MAX);
        if indexing_work > budget {
            return Err(Error::BudgetExceeded {
                visited: indexing_work,
                budget,
            });
        }
    }

    // stems scan in lexicographic order; parallel with a first-in-order
    // merge, so the returned witness does not depend on thread count
    let work = AtomicU64::new(indexing_work);
    let aborted = AtomicBool::new(false);
    let stem_list: Vec<(&Vec<u64>, &BTreeSet<Vec<u64>>)> = stems.iter().collect();
    let found = stem_list.par_iter().find_map_first(|(stem, petals)| {
        if aborted.load(Ordering::Relaxed) || petals.len() < need {
            return None;
        }
        let mut occurrence: BTreeMap<u64, usize> = BTreeMap::new();
        for petal in petals.iter() {
            for &v in petal {
                *occurrence.entry(v).or_default() += 1;
            }
        }
        let support: Vec<u64> = occurrence
            .into_iter()
            .filter(|&(_, c)| c >= elem_threshold)
            .map(|(v, _)| v)
            .collect();
        if support.len() < 2 * tt {
            return None;
        }
        for u_combo in Combinations::new(support.len(), 2 * tt) {
            if work.fetch_add(need as u64, Ordering::Relaxed) + need as u64 > budget {
                aborted.store(true, Ordering::Relaxed);
                return None;
            }
            let u: Vec<u64> = u_combo.iter().map(|&i| support[i]).collect();
            let mut complete = true;
            crate::comb::for_each_subset(&u, tt, |petal| {
                complete = petals.contains(&petal.to_vec());
                complete
            });
            if complete {
                return Some(DaisyWitness {
                    stem: (*stem).clone(),
                    u,
                });
            }
        }
        None
    });

    match found {
        Some(witness) => {
            if !witness.verify(family, t) {
                return Err(Error::SelfCheck("daisy witness failed recomputation".into()));
            }
            Ok(Some(witness))
        }
        None if aborted.load(Ordering::Relaxed) => Err(Error::BudgetExceeded {
            visited: work.load(Ordering::Relaxed),
            budget,
        }),
        None => Ok(None),
    }
}

// ---------------------------------------------------------------------------
// the density pipeline

/// Runs the full lower-bound pipeline for the daisy Turán density: pick the
/// prime `L` in `[r^2, 2r^2]`, build a verified slice-translate-free `R` in
/// `Z_L` (Sidon route for `t = 2`, randomized route otherwise), optimize the
/// translate, and report the achieved density against `|R| / (2L)`.
///
/// The explicit daisy check runs only when `C(n, r)` fits the enumeration
/// budget; otherwise the report notes the skip.
pub fn density_report(r: u32, t: u32, n: u64, seed: u64) -> Result<BoundReport> {
    density_report_with(r, t, n, seed, DEFAULT_ENUM_BUDGET)
}

pub fn density_report_with(
    r: u32,
    t: u32,
    n: u64,
    seed: u64,
    enum_budget: u64,
) -> Result<BoundReport> {
    let start = Instant::now();
    if r < 3 {
        return Err(Error::InvalidParam("density pipeline needs r >= 3".into()));
    }
    if t < 2 {
        return Err(Error::InvalidParam("density pipeline needs t >= 2".into()));
    }
    let r64 = r as u64;
    if n < 2 * r64 * r64 {
        return Err(Error::InvalidParam(format!(
            "density pipeline assumes n >= 2r^2 = {}",
            2 * r64 * r64
        )));
    }
    let l = prime_in_range(r64 * r64, 2 * r64 * r64)?
        .ok_or_else(|| Error::SelfCheck("no prime in [r^2, 2r^2]".into()))?;

    let r_set = if t == 2 {
        sidon_slice_avoiding_set(l)?
    } else {
        random_slice_avoiding_set(l, t, seed)?.0
    };
    let slice_free = find_slice_translate(&r_set, t)?.is_none();
    let r_size = r_set.len() as u64;

    let best_params = PartiteParams::new(n, r, t, r_set.clone())?;
    let (shift, best_size) = {
        let (a, size) = best_translate(&best_params);
        (a, size)
    };
    let shifted = r_set.shift_raw(shift);
    let family_params = PartiteParams::new(n, r, t, shifted)?;

    let binom_nr = binomial_big(n, r64);
    let density = ratio_to_f64(&best_size, &binom_nr);

    let mut report = BoundReport::new(ReportKind::DaisyDensity);
    report.params.r = Some(r);
    report.params.t = Some(t);
    report.params.n = Some(n);
    report.params.l = Some(l);
    if t > 2 {
        report.params.seed = Some(seed);
    }
    report.achieved = Some(Quantity::Ratio {
        num: best_size.to_string(),
        den: binom_nr.to_string(),
        approx: density,
    });
    let mut target_formula = format!("|R|/(2L) = {r_size}/{}", 2 * l);
    if t == 2 {
        target_formula.push_str(&format!(" (chain: pi >= g(L,2)/(2L) >= 1/(32r) = 1/{})", 32 * r64));
    } else {
        target_formula.push_str(" (chain: pi >= g(L,t)/(2L))");
    }
    report.target = Some(TargetBound {
        formula: target_formula,
        value: r_size as f64 / (2 * l) as f64,
        num: Some(r_size.to_string()),
        den: Some((2 * l).to_string()),
    });

    let (daisy_checked, daisy_found) =
        match RSetFamily::enumerate_partite(&family_params, enum_budget) {
            Ok(family) => {
                let found = find_daisy(&family, t)?;
                if let Some(w) = &found {
                    report.daisy_witness = Some(w.clone());
                }
                (true, found.is_some())
            }
            Err(Error::CapExceeded { value, cap, .. }) => {
                report.notes.push(format!(
                    "explicit daisy check skipped: C(n,r) = {value} exceeds budget {cap}"
                ));
                (false, false)
            }
            Err(e) => return Err(e),
        };

    let (total, distinct) = family_size(&family_params);
    report.family = Some(FamilyStats {
        total: total.to_string(),
        distinct_label_total: distinct.to_string(),
        best_translate: shift,
        best_translate_size: best_size.to_string(),
        density,
        daisy_checked,
        daisy_witness_found: daisy_found,
    });
    report.set = Some(r_set);
    report.verified = slice_free && !daisy_found;
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    let (n, d) = (num.to_f64().unwrap_or(f64::MAX), den.to_f64().unwrap_or(f64::MAX));
    if d == 0.0 {
        0.0
    } else {
        n / d
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: u64, r: u32, l: u64, members: &[u64]) -> PartiteParams {
        PartiteParams::new(n, r, 2, ZmSet::from_members(l, members.iter().copied())).unwrap()
    }

    #[test]
    fn block_label_examples() {
        assert_eq!(block_label(1, 10, 5).unwrap(), 0);
        assert_eq!(block_label(3, 10, 5).unwrap(), 1);
        assert_eq!(block_label(10, 10, 5).unwrap(), 4);
        assert!(block_label(0, 10, 5).is_err());
        assert!(block_label(11, 10, 5).is_err());
    }

    #[test]
    fn in_family_examples() {
        let p = params(10, 2, 5, &[1]);
        assert!(in_family(&[1, 3], &p).unwrap(), "labels 0,1 sum 1");
        assert!(!in_family(&[1, 2], &p).unwrap(), "labels collide");
        let empty = params(10, 2, 5, &[]);
        assert!(!in_family(&[1, 3], &empty).unwrap());
    }

    #[test]
    fn family_size_full_label_set() {
        let p = params(10, 2, 5, &[0, 1, 2, 3, 4]);
        let (total, distinct) = family_size(&p);
        assert_eq!(total, BigUint::from(40u32));
        assert_eq!(distinct, BigUint::from(40u32));
    }

    #[test]
    fn family_size_empty_r() {
        let p = params(10, 2, 5, &[]);
        let (total, _) = family_size(&p);
        assert!(total.is_zero());
    }

    #[test]
    fn dp_matches_enumeration() {
        for (n, r, l, members) in [
            (10u64, 2u32, 5u64, vec![0u64, 2]),
            (12, 3, 7, vec![1, 2, 4]),
            (14, 4, 5, vec![0]),
            (9, 2, 11, vec![3, 5, 7]),
        ] {
            let p = params(n, r, l, &members);
            let (total, distinct) = family_size(&p);
            let family = RSetFamily::enumerate_partite(&p, 1 << 20).unwrap();
            assert_eq!(total, BigUint::from(family.len()), "n={n} r={r} l={l}");

            let all = params(n, r, l, &(0..l).collect::<Vec<_>>());
            let every = RSetFamily::enumerate_partite(&all, 1 << 20).unwrap();
            assert_eq!(distinct, BigUint::from(every.len()));
        }
    }

    #[test]
    fn averaging_identity_and_best_translate() {
        let p = params(10, 2, 5, &[0]);
        let sizes = translate_sizes(&p);
        let (_, distinct) = family_size(&p);
        let sum: BigUint = sizes.iter().fold(BigUint::zero(), |a, s| a + s);
        assert_eq!(sum, distinct.clone() * 1u32, "|R| = 1");
        let (_, best) = best_translate(&p);
        assert!(best.clone() * 5u32 >= distinct, "best >= D|R|/L");

        // translate-invariant R: every shift ties, smallest wins
        let full = params(10, 2, 5, &[0, 1, 2, 3, 4]);
        assert_eq!(best_translate(&full).0, 0);
    }

    #[test]
    fn planted_daisy_is_found() {
        // F = {S0 ∪ T : T in C(U,2)} with S0 = {1}, U = {2,3,4,5}, r = 3
        let mut members = Vec::new();
        for t_pair in [[2u64, 3], [2, 4], [2, 5], [3, 4], [3, 5], [4, 5]] {
            members.push(vec![1, t_pair[0], t_pair[1]]);
        }
        let family = RSetFamily::from_members(6, 3, members).unwrap();
        let w = find_daisy(&family, 2).unwrap().expect("daisy by construction");
        assert_eq!(w.stem, vec![1]);
        assert_eq!(w.u, vec![2, 3, 4, 5]);
        assert!(w.verify(&family, 2));
    }

    #[test]
    fn too_small_families_are_daisy_free() {
        let family = RSetFamily::from_members(
            8,
            3,
            vec![vec![1, 2, 3], vec![1, 2, 4], vec![2, 3, 5]],
        )
        .unwrap();
        assert_eq!(find_daisy(&family, 2).unwrap(), None);
    }

    #[test]
    fn daisy_budget_refusal() {
        let p = params(16, 3, 5, &[0, 1, 2, 3, 4]);
        let family = RSetFamily::enumerate_partite(&p, 1 << 20).unwrap();
        assert!(matches!(
            find_daisy_with(&family, 2, 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn density_pipeline_smoke() {
        // r = 8, t = 2 forces L = 67 and |R| = 3
        let report = density_report_with(8, 2, 128, 0, 1000).unwrap();
        assert_eq!(report.params.l, Some(67));
        assert!(report.verified);
        let target = report.target.as_ref().unwrap();
        assert_eq!(target.num.as_deref(), Some("3"));
        assert_eq!(target.den.as_deref(), Some("134"));
        assert!(target.value >= 1.0 / 256.0);
        assert_eq!(report.notes.len(), 1, "explicit check skipped at n = 128");

        assert!(density_report(2, 2, 100, 0).is_err());
        assert!(density_report(3, 2, 10, 0).is_err(), "n below 2r^2");
    }
}

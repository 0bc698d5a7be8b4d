//! Slice-translate search over `Z_m`, the exact extremal value `g(m,t)` at
//! small scale, and both lower-bound constructions: the probabilistic
//! Behrend-subsample-and-delete pipeline for `t >= 3` and the Sidon embedding
//! for `t = 2`.
//!
//! The central question: does `R` contain a translate `x0 + C(X)` for some
//! `2t`-element `X`, where `C(X)` is the set of sums of `t` distinct elements
//! of `X`? [`find_slice_translate`] answers it exhaustively. The search walks
//! `X = {z_1 < z_2 < ... < z_2t}` depth-first, maintaining for each level the
//! bitset of residues still compatible with every completed `t`-subset sum,
//! so a branch dies the moment one sum leaves `R - x0`. For prime `m` the
//! translate `x0` can be normalized to `0` (shift every element of `X` by
//! `t^{-1} x0`), which drops a factor of `m` from the search space.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::comb::{binomial_u64, for_each_subset, Combinations};
use crate::report::{BoundReport, Quantity, ReportKind, TargetBound};
use crate::structured::{behrend_set, embed, find_sidon_violation, singer_sidon};
use crate::zm::{self, is_prime, prime_in_range, slice_sums, ZmSet};
use crate::{Error, Result};

/// Default cap on DFS nodes visited by one search call.
pub const DEFAULT_NODE_BUDGET: u64 = 4_000_000_000;

/// Largest modulus [`g_exact`] accepts by default.
pub const DEFAULT_G_EXACT_CAP: u64 = 16;

/// A translate of a slice-sum set found inside the certified set:
/// `x0 + C(X)` is contained in it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceWitness {
    pub x0: u64,
    pub x: ZmSet,
}

impl SliceWitness {
    /// Recomputes the containment `x0 + C(X) ⊆ r` from scratch.
    pub fn verify(&self, r: &ZmSet, t: u32) -> bool {
        self.x.modulus() == r.modulus()
            && slice_sums(&self.x, t)
                .map(|c| c.shift_raw(self.x0).is_subset_of(r))
                .unwrap_or(false)
    }

    /// Members of the contained translate `x0 + C(X)`.
    pub fn translate_members(&self, t: u32) -> Result<ZmSet> {
        Ok(slice_sums(&self.x, t)?.shift_raw(self.x0))
    }
}

/// Searches `r` for any contained slice translate. `Ok(None)` means `r` is
/// slice-translate-free for this `t`: no `x0 + C(X)` fits inside it.
///
/// The returned witness is the first one in ascending `(x0, X)` order, so
/// results are deterministic and independent of thread count.
pub fn find_slice_translate(r: &ZmSet, t: u32) -> Result<Option<SliceWitness>> {
    find_slice_translate_with(r, t, DEFAULT_NODE_BUDGET)
}

/// As [`find_slice_translate`] with an explicit node budget. The search
/// aborts with [`Error::BudgetExceeded`] instead of running unbounded.
pub fn find_slice_translate_with(r: &ZmSet, t: u32, budget: u64) -> Result<Option<SliceWitness>> {
    search_slice(r, t, budget, true)
}

/// Reference variant that never applies the prime-modulus normalization;
/// exists so the shortcut can be cross-checked against the full search.
pub fn find_slice_translate_unreduced(
    r: &ZmSet,
    t: u32,
    budget: u64,
) -> Result<Option<SliceWitness>> {
    search_slice(r, t, budget, false)
}

fn search_slice(
    r: &ZmSet,
    t: u32,
    budget: u64,
    allow_prime_shortcut: bool,
) -> Result<Option<SliceWitness>> {
    if t < 2 {
        return Err(Error::InvalidParam("slice search needs t >= 2".into()));
    }
    let m = r.modulus();
    if m < 2 * t as u64 {
        return Err(Error::ModulusTooSmall { m, min: 2 * t as u64 });
    }
    // |C(X)| >= 2 always, so a set with fewer than two elements has no room
    if r.len() < 2 {
        return Ok(None);
    }

    let ctx = SearchCtx::new(r, t as usize, budget);
    let prime = allow_prime_shortcut && is_prime(m);

    let found = if prime {
        // x0 = 0 suffices: translating X by t^{-1} x0 moves C(X) by x0
        (0..m)
            .into_par_iter()
            .find_map_first(|z1| ctx.search_prefix(0, z1))
    } else {
        (0..m).into_par_iter().find_map_first(|x0| {
            let mut frames = ctx.frames();
            (0..m).find_map(|z1| ctx.search_prefix_in(x0, z1, &mut frames))
        })
    };

    match found {
        Some(x) => {
            let witness = SliceWitness {
                x0: x.x0,
                x: ZmSet::from_members(m, x.elems),
            };
            if !witness.verify(r, t) {
                return Err(Error::SelfCheck(
                    "slice witness failed recomputation".into(),
                ));
            }
            Ok(Some(witness))
        }
        None if ctx.aborted.load(Ordering::Relaxed) => Err(Error::BudgetExceeded {
            visited: ctx.nodes.load(Ordering::Relaxed),
            budget,
        }),
        None => Ok(None),
    }
}

struct RawWitness {
    x0: u64,
    elems: Vec<u64>,
}

/// Per-thread DFS scratch: one candidate bitset per level plus a translate
/// buffer for the table-less mode.
struct Frames {
    levels: Vec<Vec<u64>>,
    scratch: Vec<u64>,
    chosen: Vec<u64>,
    local_nodes: u64,
}

struct SearchCtx<'a> {
    r: &'a ZmSet,
    m: u64,
    t: usize,
    depth: usize,
    words: usize,
    /// `table[w]` = bit words of `R - w`, when memory permits.
    table: Option<Vec<u64>>,
    nodes: AtomicU64,
    budget: u64,
    aborted: AtomicBool,
}

const TABLE_MAX_MODULUS: u64 = 8192;
const NODE_FLUSH: u64 = 4096;

impl<'a> SearchCtx<'a> {
    fn new(r: &'a ZmSet, t: usize, budget: u64) -> SearchCtx<'a> {
        let m = r.modulus();
        let words = r.words().len();
        let table = if m <= TABLE_MAX_MODULUS {
            let mut data = vec![0u64; words * m as usize];
            for w in 0..m {
                let shifted = r.shift_raw((m - w) % m); // R - w
                data[w as usize * words..(w as usize + 1) * words]
                    .copy_from_slice(shifted.words());
            }
            Some(data)
        } else {
            None
        };
        SearchCtx {
            r,
            m,
            t,
            depth: 2 * t,
            words,
            table,
            nodes: AtomicU64::new(0),
            budget,
            aborted: AtomicBool::new(false),
        }
    }

    fn frames(&self) -> Frames {
        let mut levels = vec![vec![0u64; self.words]; self.depth + 1];
        levels[0].copy_from_slice(ZmSet::full(self.m).words());
        Frames {
            levels,
            scratch: vec![0u64; self.words],
            chosen: Vec::with_capacity(self.depth),
            local_nodes: 0,
        }
    }

    /// `dst &= (R - w)`.
    fn and_shifted(&self, dst: &mut [u64], w: u64, scratch: &mut [u64]) {
        match &self.table {
            Some(data) => {
                let base = w as usize * self.words;
                zm::and_into(dst, &data[base..base + self.words]);
            }
            None => {
                let shifted = self.r.shift_raw((self.m - w) % self.m);
                scratch.copy_from_slice(shifted.words());
                zm::and_into(dst, scratch);
            }
        }
    }

    fn search_prefix(&self, x0: u64, z1: u64) -> Option<RawWitness> {
        let mut frames = self.frames();
        self.search_prefix_in(x0, z1, &mut frames)
    }

    fn search_prefix_in(&self, x0: u64, z1: u64, frames: &mut Frames) -> Option<RawWitness> {
        if self.aborted.load(Ordering::Relaxed) {
            return None;
        }
        // leave room for the remaining 2t - 1 ascending elements
        if z1 + (self.depth as u64 - 1) >= self.m {
            return None;
        }
        frames.chosen.clear();
        if !self.enter(x0, z1, frames) {
            return None;
        }
        let out = self.dfs(x0, frames);
        self.flush_nodes(frames);
        out.map(|elems| RawWitness { x0, elems })
    }

    /// Pushes `z` as the next element and refreshes the next level's
    /// candidate bitset. Returns false when the branch is already dead.
    fn enter(&self, x0: u64, z: u64, frames: &mut Frames) -> bool {
        let k = frames.chosen.len();
        frames.chosen.push(z);
        if k + 1 == self.depth {
            return true; // complete; no further level needed
        }
        let (head, tail) = frames.levels.split_at_mut(k + 1);
        let dst = &mut tail[0][..];
        dst.copy_from_slice(&head[k]);
        // new constraints: every t-subset completed by z, i.e. Q ∪ {z} with
        // Q an (t-2)-subset of the elements chosen before z
        let prefix = &frames.chosen[..k];
        if k >= self.t.saturating_sub(2) {
            let m = self.m;
            let mut alive = true;
            for_each_subset(prefix, self.t - 2, |q| {
                let sum = q.iter().fold(0u64, |acc, &v| (acc + v) % m);
                let w = (x0 + sum + z) % m;
                self.and_shifted(dst, w, &mut frames.scratch);
                alive = zm::any_bit(dst);
                alive
            });
            if !alive {
                return true; // keep pushed state; dfs loop will find nothing
            }
        }
        true
    }

    fn dfs(&self, x0: u64, frames: &mut Frames) -> Option<Vec<u64>> {
        let k = frames.chosen.len();
        if k == self.depth {
            return Some(frames.chosen.clone());
        }
        let mut from = frames.chosen[k - 1] + 1;
        loop {
            let z = {
                let level = &frames.levels[k];
                match zm::next_bit(level, from) {
                    Some(z) => z,
                    None => return None,
                }
            };
            from = z + 1;
            frames.local_nodes += 1;
            if frames.local_nodes >= NODE_FLUSH && !self.flush_nodes(frames) {
                return None;
            }
            if self.enter(x0, z, frames) {
                if let Some(found) = self.dfs(x0, frames) {
                    return Some(found);
                }
            }
            frames.chosen.pop();
        }
    }

    /// Accumulates node counts into the shared counter; false once the
    /// budget is blown.
    fn flush_nodes(&self, frames: &mut Frames) -> bool {
        if frames.local_nodes == 0 {
            return !self.aborted.load(Ordering::Relaxed);
        }
        let total = self.nodes.fetch_add(frames.local_nodes, Ordering::Relaxed)
            + frames.local_nodes;
        frames.local_nodes = 0;
        if total > self.budget {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        !self.aborted.load(Ordering::Relaxed)
    }
}

// ---------------------------------------------------------------------------
// exact g(m, t)

/// An exactly computed extremal value: no subset of `Z_m` larger than
/// `g_value` is slice-translate-free, and `maximizer` attains it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GRecord {
    pub m: u64,
    pub t: u32,
    pub g_value: u64,
    pub maximizer: ZmSet,
}

#[derive(Clone, Copy, Debug)]
pub struct GExactOptions {
    /// Refuse moduli above this cap; subset enumeration is exponential.
    pub max_m: u64,
    pub node_budget: u64,
}

impl Default for GExactOptions {
    fn default() -> Self {
        GExactOptions {
            max_m: DEFAULT_G_EXACT_CAP,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Exact `g(m, t)` by top-down subset enumeration.
///
/// Slice-translate-freeness is translate-invariant, so the search fixes
/// `0` in every candidate (any nonempty witness set can be shifted to
/// contain it); sizes are tried from `m - 1` downward and the first
/// verified set wins, which also makes the reported maximizer canonical.
pub fn g_exact(m: u64, t: u32) -> Result<GRecord> {
    g_exact_with(m, t, GExactOptions::default())
}

pub fn g_exact_with(m: u64, t: u32, opts: GExactOptions) -> Result<GRecord> {
    if t < 2 {
        return Err(Error::InvalidParam("g(m,t) needs t >= 2".into()));
    }
    if m < 2 * t as u64 {
        return Err(Error::ModulusTooSmall { m, min: 2 * t as u64 });
    }
    if m > opts.max_m {
        return Err(Error::CapExceeded {
            what: "modulus for exact g search",
            value: m,
            cap: opts.max_m,
        });
    }
    for size in (1..m).rev() {
        let mut hit = None;
        for combo in Combinations::new(m as usize - 1, size as usize - 1) {
            let mut set = ZmSet::new(m);
            set.insert(0);
            for idx in combo {
                set.insert(idx as u64 + 1);
            }
            if find_slice_translate_with(&set, t, opts.node_budget)?.is_none() {
                hit = Some(set);
                break;
            }
        }
        if let Some(maximizer) = hit {
            return Ok(GRecord {
                m,
                t,
                g_value: size,
                maximizer,
            });
        }
    }
    Err(Error::SelfCheck(
        "even singletons failed the slice verifier".into(),
    ))
}

// ---------------------------------------------------------------------------
// lower-bound constructions

/// `gamma(m) = 4 / sqrt(ln(m/5))`, the density-loss exponent of the Behrend
/// base set. Defined for `m >= 6`.
pub fn gamma(m: u64) -> Result<f64> {
    if m <= 5 {
        return Err(Error::ModulusTooSmall { m, min: 6 });
    }
    Ok(4.0 / (m as f64 / 5.0).ln().sqrt())
}

/// Subsampling probability for the randomized construction:
/// `(1/8) m^(-(2t-1+gamma)/(C(2t,t)-1))` for prime `m`, with `2t` in place of
/// `2t-1` otherwise. Clamped into `(0, 1]`.
pub fn sampling_probability(m: u64, t: u32, m_prime: bool) -> Result<f64> {
    if t < 2 {
        return Err(Error::InvalidParam("sampling probability needs t >= 2".into()));
    }
    let g = gamma(m)?;
    let denom = (binomial_u64(2 * t as u64, t as u64)
        .ok_or_else(|| Error::InvalidParam("binomial overflow".into()))?
        - 1) as f64;
    let numer = if m_prime {
        (2 * t - 1) as f64 + g
    } else {
        (2 * t) as f64 + g
    };
    let p = 0.125 * (m as f64).powf(-numer / denom);
    Ok(p.clamp(f64::MIN_POSITIVE, 1.0))
}

/// Full trace of one randomized construction run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub seed: u64,
    pub gamma: f64,
    pub p: f64,
    pub r1_size: u64,
    pub r2_size: u64,
    pub deletions: u64,
    pub final_size: u64,
    pub prime_modulus: bool,
}

/// The probabilistic lower-bound pipeline for `t >= 3`: embed a Behrend
/// 3-AP-free base set, keep each element independently with probability `p`,
/// then delete one element from every surviving slice translate until the
/// verifier finds none.
///
/// Randomness is counter-based: element `v` is kept iff the first `f64` draw
/// of a ChaCha8 stream seeded with `seed` and stream index `v` falls below
/// `p`, so the subsample is independent of iteration order. The deletion
/// step removes the smallest member of the witness translate, making the
/// whole run a pure function of `(m, t, seed)`. The returned set always
/// passes the verifier. At desk scale it is often tiny; the size guarantee
/// is asymptotic and is reported, not asserted.
pub fn random_slice_avoiding_set(m: u64, t: u32, seed: u64) -> Result<(ZmSet, ConstructionTrace)> {
    if t < 3 {
        return Err(Error::InvalidParam(
            "randomized construction needs t >= 3 (use the Sidon route for t = 2)".into(),
        ));
    }
    if m < 2 * t as u64 {
        return Err(Error::ModulusTooSmall { m, min: 2 * t as u64 });
    }
    let r0 = behrend_set(m)?;
    let r1 = embed(&r0, m)?;
    let prime = is_prime(m);
    let p = sampling_probability(m, t, prime)?;

    let mut r2 = ZmSet::new(m);
    for v in r1.iter() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(v);
        if rng.gen::<f64>() < p {
            r2.insert(v);
        }
    }

    let r2_size = r2.len() as u64;
    let mut current = r2;
    let mut deletions = 0u64;
    while let Some(w) = find_slice_translate(&current, t)? {
        let translate = w.translate_members(t)?;
        let victim = translate
            .min_element()
            .expect("witness translate is nonempty");
        current.remove(victim);
        deletions += 1;
    }

    let trace = ConstructionTrace {
        seed,
        gamma: gamma(m)?,
        p,
        r1_size: r1.len() as u64,
        r2_size,
        deletions,
        final_size: current.len() as u64,
        prime_modulus: prime,
    };
    debug_assert_eq!(trace.final_size, trace.r2_size - trace.deletions);
    Ok((current, trace))
}

/// The algebraic lower-bound construction for `t = 2` and `m >= 64`: embed a
/// Singer Sidon set for the smallest prime `p` with `sqrt(m)/8 <= p <=
/// sqrt(m)/4`. The result has `p + 1 >= sqrt(m)/8` elements and contains no
/// slice translate, because four distinct elements would force a nontrivial
/// additive quadruple in a Sidon set.
pub fn sidon_slice_avoiding_set(m: u64) -> Result<ZmSet> {
    if m < 64 {
        return Err(Error::ModulusTooSmall { m, min: 64 });
    }
    // integer-exact interval bounds: 64 p^2 >= m and 16 p^2 <= m
    let mut lo = (m / 64).isqrt().max(1);
    while 64 * lo * lo < m {
        lo += 1;
    }
    let hi = (m / 16).isqrt();
    let p = prime_in_range(lo, hi)?.ok_or_else(|| {
        Error::SelfCheck(format!("no prime in [{lo}, {hi}] for m = {m}"))
    })?;
    let sidon = singer_sidon(p)?;
    debug_assert!(sidon.modulus() * 2 < m, "inclusion must preserve Sidon");
    embed(&sidon, m)
}

/// Runs the appropriate lower-bound construction for `(m, t)`, re-verifies
/// the output, and packages the achieved size against the target bound.
pub fn certify_lower_bound(m: u64, t: u32, seed: u64) -> Result<BoundReport> {
    if t < 2 {
        return Err(Error::InvalidParam("lower bounds need t >= 2".into()));
    }
    let start = Instant::now();
    let mut report;
    if t == 2 {
        let set = sidon_slice_avoiding_set(m)?;
        let verified = find_sidon_violation(&set).is_none()
            && find_slice_translate(&set, 2)?.is_none();
        report = BoundReport::new(ReportKind::GLowerT2);
        report.achieved = Some(Quantity::Count(set.len() as u64));
        report.target = Some(TargetBound {
            formula: "g(m,2) >= sqrt(m)/8 for m >= 64".into(),
            value: (m as f64).sqrt() / 8.0,
            num: None,
            den: None,
        });
        report.verified = verified;
        report.set = Some(set);
    } else {
        let (set, trace) = random_slice_avoiding_set(m, t, seed)?;
        let verified = find_slice_translate(&set, t)?.is_none();
        let cc = binomial_u64(2 * t as u64, t as u64).unwrap() - 1;
        let clean_exp = 1.0 - (2 * t) as f64 / cc as f64;
        let used_numer = if trace.prime_modulus {
            (2 * t - 1) as f64 + trace.gamma
        } else {
            (2 * t) as f64 + trace.gamma
        };
        let effective_exp = 1.0 - trace.gamma - used_numer / cc as f64;
        report = BoundReport::new(ReportKind::GLowerT3Plus);
        report.achieved = Some(Quantity::Count(set.len() as u64));
        report.target = Some(TargetBound {
            formula: format!("m^(1 - 2t/(C(2t,t)-1)) = m^({clean_exp:.6}); asymptotic only"),
            value: (m as f64).powf(clean_exp),
            num: None,
            den: None,
        });
        report.notes.push(format!(
            "effective exponent with gamma({m}) = {:.6}: guaranteed count (1/32) m^{effective_exp:.6} holds only asymptotically",
            trace.gamma
        ));
        report.verified = verified;
        report.set = Some(set);
        report.trace = Some(trace);
        report.params.seed = Some(seed);
    }
    report.params.m = Some(m);
    report.params.t = Some(t);
    report.wall_time_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_on_full_set() {
        let r = ZmSet::full(4);
        let w = find_slice_translate(&r, 2).unwrap().expect("Z_4 contains C(X)");
        assert_eq!(w.x0, 0);
        assert_eq!(w.x.members(), vec![0, 1, 2, 3]);
        assert!(w.verify(&r, 2));
    }

    #[test]
    fn empty_and_singleton_are_free() {
        assert_eq!(find_slice_translate(&ZmSet::new(10), 2).unwrap(), None);
        let single = ZmSet::from_members(10, [0]);
        assert_eq!(find_slice_translate(&single, 2).unwrap(), None);
    }

    #[test]
    fn modulus_too_small() {
        let r = ZmSet::full(3);
        assert!(matches!(
            find_slice_translate(&r, 2),
            Err(Error::ModulusTooSmall { m: 3, min: 4 })
        ));
    }

    #[test]
    fn budget_refusal() {
        // dense enough that no witness exists, and a budget of 1 node
        let r = ZmSet::from_members(24, [0, 1, 5, 11, 13]);
        match find_slice_translate_with(&r, 2, 1) {
            Err(Error::BudgetExceeded { visited, budget: 1 }) => assert!(visited > 1),
            other => panic!("expected budget refusal, got {other:?}"),
        }
    }

    #[test]
    fn g_exact_small_values() {
        let rec = g_exact(4, 2).unwrap();
        assert_eq!(rec.g_value, 3);
        assert!(rec.maximizer.contains(0));
        assert_eq!(rec.maximizer.len(), 3);

        let rec = g_exact(5, 2).unwrap();
        assert_eq!(rec.g_value, 4);
        assert!(find_slice_translate(&rec.maximizer, 2).unwrap().is_none());

        assert!(matches!(
            g_exact(40, 2),
            Err(Error::CapExceeded { value: 40, .. })
        ));
    }

    #[test]
    fn gamma_values() {
        assert!((gamma(10).unwrap() - 4.8045).abs() < 1e-3);
        assert!((gamma(273).unwrap() - 2.0).abs() < 1e-3);
        let m = (5.0 * 16f64.exp()) as u64;
        assert!((gamma(m).unwrap() - 1.0).abs() < 1e-6);
        assert!(gamma(5).is_err());
    }

    #[test]
    fn sampling_probability_values() {
        // denominator for t = 3 is C(6,3) - 1 = 19
        assert_eq!(binomial_u64(6, 3).unwrap() - 1, 19);
        let p = sampling_probability(1_000_000, 3, false).unwrap();
        let g = gamma(1_000_000).unwrap();
        let expect = 0.125 * (1e6f64).powf(-(6.0 + g) / 19.0);
        assert!((p - expect).abs() < 1e-12);
        for m in [6u64, 30, 1000, 123456] {
            for prime in [false, true] {
                let p = sampling_probability(m, 3, prime).unwrap();
                assert!(p > 0.0 && p <= 0.125, "m={m}");
            }
        }
    }

    #[test]
    fn random_construction_is_deterministic_and_verified() {
        let (a, trace_a) = random_slice_avoiding_set(30, 3, 1).unwrap();
        let (b, trace_b) = random_slice_avoiding_set(30, 3, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(trace_a, trace_b);
        assert_eq!(trace_a.final_size, trace_a.r2_size - trace_a.deletions);
        assert!(find_slice_translate(&a, 3).unwrap().is_none());

        let (c, _) = random_slice_avoiding_set(30, 3, 2).unwrap();
        // different seeds may coincide on tiny instances, but the pipeline
        // must at least run; sanity-check the verifier on it too
        assert!(find_slice_translate(&c, 3).unwrap().is_none());
    }

    #[test]
    fn sidon_route_small_moduli() {
        for (m, expect_p) in [(64u64, 2u64), (256, 2), (1024, 5)] {
            let set = sidon_slice_avoiding_set(m).unwrap();
            assert_eq!(set.len() as u64, expect_p + 1, "m={m}");
            assert!(64 * (set.len() as u64) * (set.len() as u64) >= m);
        }
        assert!(sidon_slice_avoiding_set(63).is_err());
    }

    #[test]
    fn certify_reports() {
        let rep = certify_lower_bound(64, 2, 0).unwrap();
        assert!(rep.verified);
        assert_eq!(rep.achieved, Some(Quantity::Count(3)));

        let rep = certify_lower_bound(30, 3, 7).unwrap();
        assert!(rep.verified);
        assert!(rep.trace.is_some());
    }
}

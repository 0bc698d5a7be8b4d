//! Constructions and exhaustive verifiers for subsets of `Z_m` that avoid
//! every translate of a middle slice-sum set `C(X)`, the daisy-free set
//! families built on top of them, and the iterated-intersection search for
//! Hilbert cubes in dense sets.
//!
//! The crate is organized around small, pure building blocks:
//!
//! - [`zm`]: residue arithmetic and bitset-backed subsets of `Z_m`
//! - [`structured`]: 3-AP-free (Behrend) and Sidon (Singer) constructions
//! - [`gf`]: just enough `GF(p^3)` arithmetic for the Singer construction
//! - [`slice`]: slice-translate search, exact `g(m,t)`, and both
//!   lower-bound pipelines
//! - [`cube`]: Hilbert cube points, generator search, and the binomial
//!   growth inequality
//! - [`daisy`]: partite families over `[n]`, DP counting, translate
//!   optimization, and brute-force daisy detection
//! - [`report`]: serializable run reports and the set-file format
//!
//! Search kernels parallelize internally with rayon; every public search is
//! deterministic for a fixed input (parallel reductions are order-stable).

pub mod comb;
pub mod cube;
pub mod daisy;
pub mod gf;
pub mod report;
pub mod slice;
pub mod structured;
pub mod zm;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("expected a set of {expected} distinct elements, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("invalid range [{lo}, {hi}]")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("modulus {m} too small, need m >= {min}")]
    ModulusTooSmall { m: u64, min: u64 },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cannot embed modulus {original} into smaller modulus {target}")]
    EmbedShrink { original: u64, target: u64 },
    #[error("search budget exceeded ({visited} nodes > {budget}); raise the budget to continue")]
    BudgetExceeded { visited: u64, budget: u64 },
    #[error("instance too large: {what} = {value} exceeds cap {cap}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        cap: u64,
    },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("internal self-check failed: {0}")]
    SelfCheck(String),
    #[error("bad set file: {0}")]
    BadSetFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Minimal `GF(p^3)` arithmetic: exactly what the Singer difference-set
//! construction needs and nothing more.
//!
//! Elements are coefficient triples `a0 + a1*θ + a2*θ^2` where `θ` is a root
//! of a monic irreducible cubic over `GF(p)`. The cubic is the smallest
//! irreducible one when candidates `x^3 + c2*x^2 + c1*x + c0` are ordered by
//! the integer `c2*p^2 + c1*p + c0`; the primitive element is the smallest
//! nonzero element (same integer encoding) of full multiplicative order.
//! Both choices exist for every prime `p`, so the construction is fully
//! reproducible.

use crate::{Error, Result};

/// A field element: coefficients of `1, θ, θ^2`.
pub type El = [u64; 3];

/// `GF(p^3)` represented as `GF(p)[x]` modulo a monic irreducible cubic.
pub struct Gf3 {
    p: u64,
    /// Coefficients `[c0, c1, c2]` of the reduction cubic `x^3 + c2 x^2 + c1 x + c0`.
    cubic: [u64; 3],
}

impl Gf3 {
    /// Builds the field for a prime `p`, selecting the canonical cubic.
    pub fn new(p: u64) -> Result<Gf3> {
        if !crate::zm::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let cubic = smallest_irreducible_cubic(p)
            .ok_or_else(|| Error::SelfCheck(format!("no irreducible cubic over GF({p})")))?;
        Ok(Gf3 { p, cubic })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Order of the multiplicative group, `p^3 - 1`.
    pub fn group_order(&self) -> u64 {
        self.p * self.p * self.p - 1
    }

    pub fn zero(&self) -> El {
        [0, 0, 0]
    }

    pub fn one(&self) -> El {
        [1, 0, 0]
    }

    /// Integer encoding `a0 + a1*p + a2*p^2`, used for table indexing and for
    /// the canonical element ordering.
    pub fn encode(&self, a: El) -> u64 {
        a[0] + a[1] * self.p + a[2] * self.p * self.p
    }

    pub fn decode(&self, k: u64) -> El {
        [k % self.p, k / self.p % self.p, k / (self.p * self.p) % self.p]
    }

    pub fn add(&self, a: El, b: El) -> El {
        let p = self.p;
        [(a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2]) % p]
    }

    pub fn mul(&self, a: El, b: El) -> El {
        let p = self.p;
        // schoolbook product, degree <= 4
        let mut c = [0u64; 5];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                c[i + j] = (c[i + j] + ai * bj) % p;
            }
        }
        // reduce x^3 ≡ -(c2 x^2 + c1 x + c0)
        for i in (3..=4).rev() {
            let coef = c[i];
            if coef == 0 {
                continue;
            }
            c[i] = 0;
            for (k, &fk) in self.cubic.iter().enumerate() {
                let idx = i - 3 + k;
                c[idx] = (c[idx] + coef * (p - fk) % p) % p;
            }
        }
        [c[0], c[1], c[2]]
    }

    pub fn pow(&self, mut base: El, mut e: u64) -> El {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Smallest element (by [`encode`](Self::encode)) generating the full
    /// multiplicative group.
    pub fn primitive_element(&self) -> Result<El> {
        let n = self.group_order();
        let factors = distinct_prime_factors(n);
        let total = self.p * self.p * self.p;
        for k in 1..total {
            let g = self.decode(k);
            if factors
                .iter()
                .all(|&q| self.pow(g, n / q) != self.one())
            {
                return Ok(g);
            }
        }
        Err(Error::SelfCheck(format!(
            "no primitive element found in GF({}^3)",
            self.p
        )))
    }

    /// Discrete logarithms of every nonzero element with respect to `g`,
    /// built by one pass over the cyclic group. `table[encode(x)] = log_g(x)`.
    pub fn dlog_table(&self, g: El) -> Result<Vec<u64>> {
        let n = self.group_order();
        let total = self.p * self.p * self.p;
        let mut table = vec![u64::MAX; total as usize];
        let mut acc = self.one();
        for e in 0..n {
            let idx = self.encode(acc) as usize;
            if table[idx] != u64::MAX {
                return Err(Error::SelfCheck(format!(
                    "element repeats at exponent {e}; generator is not primitive"
                )));
            }
            table[idx] = e;
            acc = self.mul(acc, g);
        }
        if acc != self.one() {
            return Err(Error::SelfCheck("generator order exceeds p^3 - 1".into()));
        }
        Ok(table)
    }
}

/// Lex-smallest monic irreducible cubic over `GF(p)`. A cubic is reducible
/// iff it has a root in `GF(p)`, so root-checking suffices.
fn smallest_irreducible_cubic(p: u64) -> Option<[u64; 3]> {
    for k in 0..p * p * p {
        let c = [k % p, k / p % p, k / (p * p) % p];
        if (0..p).all(|x| eval_cubic(p, c, x) != 0) {
            return Some(c);
        }
    }
    None
}

fn eval_cubic(p: u64, c: [u64; 3], x: u64) -> u64 {
    // x^3 + c2 x^2 + c1 x + c0, Horner form
    let mut acc = 1u64;
    acc = (acc * x + c[2]) % p;
    acc = (acc * x + c[1]) % p;
    (acc * x + c[0]) % p
}

fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_canonical_choices() {
        let f = Gf3::new(2).unwrap();
        // x^3 + x + 1 is the first irreducible cubic over GF(2) in encoding order
        assert_eq!(f.cubic, [1, 1, 0]);
        // group order 7 is prime, so the first non-identity element generates
        assert_eq!(f.primitive_element().unwrap(), [0, 1, 0]);
    }

    #[test]
    fn dlog_table_is_a_bijection() {
        for p in [2u64, 3, 5, 7] {
            let f = Gf3::new(p).unwrap();
            let g = f.primitive_element().unwrap();
            let table = f.dlog_table(g).unwrap();
            assert_eq!(table[0], u64::MAX, "zero has no logarithm");
            let mut seen = vec![false; f.group_order() as usize];
            for &e in table.iter().filter(|&&e| e != u64::MAX) {
                assert!(!seen[e as usize]);
                seen[e as usize] = true;
            }
            assert!(seen.iter().all(|&s| s));
            assert_eq!(table[f.encode(f.one()) as usize], 0);
        }
    }

    #[test]
    fn multiplication_is_field_like() {
        let f = Gf3::new(3).unwrap();
        let n = f.group_order();
        // Fermat: a^(p^3 - 1) = 1 for all nonzero a
        for k in 1..27u64 {
            let a = f.decode(k);
            assert_eq!(f.pow(a, n), f.one(), "k={k}");
        }
        // commutativity spot check
        let a = f.decode(14);
        let b = f.decode(22);
        assert_eq!(f.mul(a, b), f.mul(b, a));
    }

    #[test]
    fn rejects_composite() {
        assert!(matches!(Gf3::new(6), Err(Error::NotPrime(6))));
    }
}

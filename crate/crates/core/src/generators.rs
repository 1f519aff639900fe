//! Generator systems: the ordinary primes `p_1 < p_2 < ...` followed by a
//! finite list of Beurling primes `q_1 < q_2 < ...`.
//!
//! Generators are addressed by a single index: `0..P` are the ordinary
//! primes, `P..P+B` the Beurling primes. Generators are treated as formally
//! multiplicatively independent; no numerical independence test is made.

use std::sync::Arc;

use crate::error::{Error, Result};

/// Closeness below which a Beurling value counts as an ordinary prime.
const PRIME_COLLISION_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSystem {
    primes: Vec<u64>,
    beurling: Vec<f64>,
    logs: Vec<f64>,
}

impl GeneratorSystem {
    /// Builds the system made of the first `prime_count` primes and the given
    /// Beurling values.
    pub fn new(prime_count: usize, beurling: &[f64]) -> Result<Arc<Self>> {
        let primes = first_primes(prime_count);
        for (k, &q) in beurling.iter().enumerate() {
            if !q.is_finite() {
                return Err(Error::Config(format!("beurling prime q{} is not finite", k + 1)));
            }
            if q <= 1.0 {
                return Err(Error::Config(format!(
                    "beurling prime must exceed 1 (q{} = {q})",
                    k + 1
                )));
            }
            if k > 0 && q <= beurling[k - 1] {
                return Err(Error::Config(format!(
                    "beurling primes must be strictly increasing (q{} = {q} after {})",
                    k + 1,
                    beurling[k - 1]
                )));
            }
            let nearest = q.round();
            if (q - nearest).abs() <= PRIME_COLLISION_TOL * q && is_prime(nearest as u64) {
                return Err(Error::Config(format!(
                    "beurling prime q{} = {q} coincides with the ordinary prime {nearest}",
                    k + 1
                )));
            }
        }
        let logs = primes
            .iter()
            .map(|&p| (p as f64).ln())
            .chain(beurling.iter().map(|q| q.ln()))
            .collect();
        Ok(Arc::new(Self {
            primes,
            beurling: beurling.to_vec(),
            logs,
        }))
    }

    /// Total number of generators.
    pub fn len(&self) -> usize {
        self.logs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.logs.is_empty()
    }

    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    pub fn beurling_count(&self) -> usize {
        self.beurling.len()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn beurling(&self) -> &[f64] {
        &self.beurling
    }

    pub fn is_beurling(&self, index: usize) -> bool {
        index >= self.primes.len() && index < self.len()
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::Structural(format!(
                "generator index {index} out of range (system has {} generators)",
                self.len()
            )))
        }
    }

    /// Numerical value of generator `index`.
    pub fn value(&self, index: usize) -> f64 {
        if index < self.primes.len() {
            self.primes[index] as f64
        } else {
            self.beurling[index - self.primes.len()]
        }
    }

    /// `ln` of generator `index`.
    pub fn log(&self, index: usize) -> f64 {
        self.logs[index]
    }

    /// Index of the ordinary prime `p`, if it belongs to the system.
    pub fn prime_index(&self, p: u64) -> Option<usize> {
        self.primes.binary_search(&p).ok()
    }

    /// Index of the `k`-th Beurling prime (1-based, as in `q1`).
    pub fn beurling_index(&self, k: usize) -> Option<usize> {
        (k >= 1 && k <= self.beurling.len()).then(|| self.primes.len() + k - 1)
    }

    /// File-format key of a generator: the prime's decimal string or `q<k>`.
    pub fn key(&self, index: usize) -> String {
        if index < self.primes.len() {
            self.primes[index].to_string()
        } else {
            format!("q{}", index - self.primes.len() + 1)
        }
    }

    /// Inverse of [`GeneratorSystem::key`].
    pub fn parse_key(&self, key: &str) -> Result<usize> {
        let unknown = || Error::Structural(format!("unknown generator key {key:?}"));
        if let Some(k) = key.strip_prefix('q') {
            let k: usize = k.parse().map_err(|_| unknown())?;
            self.beurling_index(k).ok_or_else(unknown)
        } else {
            let p: u64 = key.parse().map_err(|_| unknown())?;
            self.prime_index(p).ok_or_else(unknown)
        }
    }
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // Rosser's bound p_n < n (ln n + ln ln n) for n >= 6.
    let n = count.max(6) as f64;
    let limit = (n * (n.ln() + n.ln().ln())).ceil() as usize + 1;
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::with_capacity(count);
    for i in 2..=limit {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        if primes.len() == count {
            break;
        }
        let mut j = i * i;
        while j <= limit {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization of `n` as `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n % d == 0 {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_three_primes() {
        let g = GeneratorSystem::new(3, &[]).unwrap();
        assert_eq!(g.primes(), &[2, 3, 5]);
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn sieve_matches_trial_division() {
        let primes = first_primes(200);
        assert_eq!(primes.len(), 200);
        assert!(primes.iter().all(|&p| is_prime(p)));
        assert!(primes.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(primes[199], 1223);
    }

    #[test]
    fn single_beurling_generator() {
        let g = GeneratorSystem::new(0, &[std::f64::consts::PI]).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.is_beurling(0));
        assert_eq!(g.value(0), std::f64::consts::PI);
        assert_eq!(g.key(0), "q1");
    }

    #[test]
    fn rejects_beurling_at_most_one() {
        let err = GeneratorSystem::new(2, &[1.0]).unwrap_err();
        assert!(err.to_string().contains("beurling prime must exceed 1"), "{err}");
    }

    #[test]
    fn rejects_non_increasing_beurling() {
        let err = GeneratorSystem::new(2, &[4.5, 4.5]).unwrap_err();
        assert!(err.to_string().contains("q2"), "{err}");
    }

    #[test]
    fn rejects_collision_with_prime() {
        assert!(GeneratorSystem::new(2, &[7.0]).is_err());
        assert!(GeneratorSystem::new(2, &[4.0]).is_ok());
    }

    #[test]
    fn keys_round_trip() {
        let g = GeneratorSystem::new(4, &[std::f64::consts::PI, 10.5]).unwrap();
        for i in 0..g.len() {
            assert_eq!(g.parse_key(&g.key(i)).unwrap(), i);
        }
        assert!(g.parse_key("4").is_err());
        assert!(g.parse_key("q3").is_err());
        assert!(g.parse_key("q0").is_err());
        assert!(g.parse_key("x").is_err());
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }
}

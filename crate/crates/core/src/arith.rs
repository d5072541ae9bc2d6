//! Elementary number theory on `u64`.
//!
//! Single values are factored by trial division. Range work (tables,
//! verification sweeps) can build a [`SpfSieve`] once and pass it wherever a
//! [`Factorizer`] is accepted.

use alloc::vec;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factored value.
    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime factors.
    pub fn prime_count(&self) -> usize {
        self.factors.len()
    }

    /// Smallest prime whose square divides the value, if any.
    pub fn repeated_prime(&self) -> Option<u64> {
        self.factors.iter().find(|&&(_, e)| e > 1).map(|&(p, _)| p)
    }

    /// True when no exponent exceeds one.
    pub fn is_squarefree(&self) -> bool {
        self.repeated_prime().is_none()
    }

    /// `d(m)`: product of `exponent + 1`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, e)| u64::from(e) + 1).product()
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.divisor_count() as usize);
        out.push(1u64);
        for &(p, e) in &self.factors {
            let len = out.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    out.push(out[i] * pk);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// `d_{<=k}(m)`: number of divisors not exceeding `k`.
    pub fn divisor_count_upto(&self, k: u64) -> u64 {
        if k >= self.value {
            return self.divisor_count();
        }
        self.divisors().iter().take_while(|&&d| d <= k).count() as u64
    }
}

/// Anything that can factor positive integers.
pub trait Factorizer {
    /// Factor `m`; rejects zero.
    fn factorize(&self, m: u64) -> Result<Factorization>;
}

/// Plain trial division up to `sqrt(m)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrialDivision;

impl Factorizer for TrialDivision {
    fn factorize(&self, m: u64) -> Result<Factorization> {
        if m == 0 {
            return Err(Error::Zero("m"));
        }
        let mut factors = Vec::new();
        let mut rest = m;
        let mut push = |rest: &mut u64, p: u64| {
            let mut e = 0;
            while *rest % p == 0 {
                *rest /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p, e));
            }
        };
        push(&mut rest, 2);
        push(&mut rest, 3);
        // 6k +- 1 wheel
        let mut p = 5u64;
        while p <= rest / p {
            push(&mut rest, p);
            push(&mut rest, p + 2);
            p += 6;
        }
        if rest > 1 {
            factors.push((rest, 1));
        }
        Ok(Factorization { value: m, factors })
    }
}

/// Smallest-prime-factor table for `0..=limit`.
///
/// Entries hold the smallest prime factor of each composite and zero for
/// primes, 0 and 1. A composite below `2^32` has a smallest prime factor
/// below `2^16`, so `u16` entries suffice and the table costs two bytes per
/// integer. Values above the limit fall back to trial division.
#[derive(Debug, Clone)]
pub struct SpfSieve {
    spf: Vec<u16>,
}

impl SpfSieve {
    /// Largest supported limit.
    pub const MAX_LIMIT: u64 = u32::MAX as u64;

    /// Builds the table; `limit` is clamped to [`Self::MAX_LIMIT`].
    pub fn new(limit: u64) -> Self {
        let limit = limit.min(Self::MAX_LIMIT) as usize;
        let mut spf = vec![0u16; limit + 1];
        let mut p = 2usize;
        while p * p <= limit {
            if spf[p] == 0 {
                let mut j = p * p;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = p as u16;
                    }
                    j += p;
                }
            }
            p += 1;
        }
        SpfSieve { spf }
    }

    /// Largest value covered by the table.
    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }
}

impl Factorizer for SpfSieve {
    fn factorize(&self, m: u64) -> Result<Factorization> {
        if m == 0 {
            return Err(Error::Zero("m"));
        }
        if m > self.limit() {
            return TrialDivision.factorize(m);
        }
        let mut factors: Vec<(u64, u32)> = Vec::new();
        let mut rest = m as usize;
        while rest > 1 {
            let p = match self.spf[rest] {
                0 => rest,
                p => p as usize,
            };
            rest /= p;
            match factors.last_mut() {
                Some((q, e)) if *q == p as u64 => *e += 1,
                _ => factors.push((p as u64, 1)),
            }
        }
        Ok(Factorization { value: m, factors })
    }
}

/// Factor `m` by trial division.
pub fn factorize(m: u64) -> Result<Factorization> {
    TrialDivision.factorize(m)
}

/// True iff no prime square divides `m`.
pub fn is_squarefree(m: u64) -> Result<bool> {
    Ok(factorize(m)?.is_squarefree())
}

/// Checks that `n` is square-free, naming the repeated prime otherwise.
pub fn require_squarefree(n: u64) -> Result<Factorization> {
    require_squarefree_with(n, &TrialDivision)
}

pub(crate) fn require_squarefree_with<F: Factorizer + ?Sized>(
    n: u64,
    factorizer: &F,
) -> Result<Factorization> {
    let f = factorizer.factorize(n)?;
    match f.repeated_prime() {
        Some(prime) => Err(Error::NotSquareFree { n, prime }),
        None => Ok(f),
    }
}

/// Number of positive divisors of `m`.
pub fn divisor_count(m: u64) -> Result<u64> {
    Ok(factorize(m)?.divisor_count())
}

/// Number of positive divisors of `m` that are `<= k`.
pub fn divisor_count_upto(m: u64, k: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::Zero("k"));
    }
    Ok(factorize(m)?.divisor_count_upto(k))
}

/// Sorted positive divisors of `m`.
pub fn divisors(m: u64) -> Result<Vec<u64>> {
    Ok(factorize(m)?.divisors())
}

/// Binomial coefficient `C(r, k)`; zero when `k > r`.
///
/// Panics if the result does not fit in a `u64`.
pub fn binomial(r: u64, k: u64) -> u64 {
    if k > r {
        return 0;
    }
    let k = k.min(r - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact: acc * (r - i) is divisible by (i + 1) at every step
        acc = acc * u128::from(r - i) / u128::from(i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_divisors(m: u64) -> Vec<u64> {
        (1..=m).filter(|d| m % d == 0).collect()
    }

    #[test]
    fn factorize_examples() {
        assert!(factorize(1).unwrap().factors().is_empty());
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(95).unwrap().factors(), &[(5, 1), (19, 1)]);
        assert_eq!(factorize(0), Err(Error::Zero("m")));
    }

    #[test]
    fn squarefree_examples() {
        assert!(is_squarefree(1).unwrap());
        assert!(!is_squarefree(4).unwrap());
        assert!(is_squarefree(66).unwrap());
        assert!(is_squarefree(0).is_err());
        assert_eq!(
            require_squarefree(18),
            Err(Error::NotSquareFree { n: 18, prime: 3 })
        );
    }

    #[test]
    fn divisor_count_examples() {
        assert_eq!(divisor_count(10).unwrap(), 4);
        assert_eq!(divisor_count(1).unwrap(), 1);
        assert_eq!(divisor_count(36).unwrap(), 9);
        assert!(divisor_count(0).is_err());
    }

    #[test]
    fn divisor_count_upto_examples() {
        assert_eq!(divisor_count_upto(10, 4).unwrap(), 2);
        assert_eq!(divisor_count_upto(10, 10).unwrap(), 4);
        assert_eq!(divisor_count_upto(36, 5).unwrap(), 4);
        assert!(divisor_count_upto(0, 3).is_err());
        assert!(divisor_count_upto(3, 0).is_err());
    }

    #[test]
    fn divisors_examples() {
        assert_eq!(divisors(12).unwrap(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(27).unwrap(), vec![1, 3, 9, 27]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(7, 0), 1);
        assert_eq!(binomial(3, 5), 0);
        for r in 0..=30u64 {
            let row: u64 = (0..=r).map(|k| binomial(r, k)).sum();
            assert_eq!(row, 1 << r);
            for k in 0..=r {
                assert_eq!(binomial(r, k), binomial(r, r - k));
            }
        }
    }

    #[test]
    fn divisor_functions_agree_up_to_1e5() {
        let sieve = SpfSieve::new(100_000);
        for m in 1..=100_000u64 {
            let f = factorize(m).unwrap();
            assert_eq!(f.divisor_count(), f.divisors().len() as u64);
            let recomposed: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(recomposed, m);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert_eq!(sieve.factorize(m).unwrap(), f);
        }
    }

    #[test]
    fn divisors_match_naive_scan() {
        for m in 1..=2000u64 {
            assert_eq!(divisors(m).unwrap(), naive_divisors(m), "m = {m}");
        }
    }

    #[test]
    fn sieve_falls_back_above_limit() {
        let sieve = SpfSieve::new(100);
        assert_eq!(sieve.limit(), 100);
        assert_eq!(sieve.factorize(1_000_003 * 6).unwrap(), factorize(6_000_018).unwrap());
    }

    proptest! {
        #[test]
        fn upto_is_monotone_and_clamped(m in 1u64..100_000, k in 1u64..200_000) {
            let f = factorize(m).unwrap();
            let here = f.divisor_count_upto(k);
            prop_assert!(here <= f.divisor_count_upto(k + 1));
            prop_assert!(here <= f.divisor_count());
            if k >= m {
                prop_assert_eq!(here, f.divisor_count());
            }
        }

        #[test]
        fn trial_division_handles_large_values(m in 1u64..(1u64 << 40)) {
            let f = factorize(m).unwrap();
            let recomposed: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            prop_assert_eq!(recomposed, m);
        }
    }
}

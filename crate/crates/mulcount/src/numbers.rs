//! Exact integer support: prime products, the `d_max` validity bound,
//! generalized Fibonacci sequences and digit decomposition.
//!
//! All comparisons against `2^n` thresholds are done with arbitrary-precision
//! integers; nothing in this module rounds.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// How the d small group elements are chosen: the first d primes, or their
/// squares. The squared variant halves the usable dimension for a given
/// modulus size since each factor is twice as long.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementStyle {
    EgrPrimes,
    RegevSquaredPrimes,
}

impl ElementStyle {
    /// Exponent contributed by the style alone: 1 for plain primes,
    /// 2 for squared primes.
    fn exponent(self) -> u32 {
        match self {
            ElementStyle::EgrPrimes => 1,
            ElementStyle::RegevSquaredPrimes => 2,
        }
    }
}

impl fmt::Display for ElementStyle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementStyle::EgrPrimes => write!(f, "egr"),
            ElementStyle::RegevSquaredPrimes => write!(f, "regev"),
        }
    }
}

impl FromStr for ElementStyle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "egr" => Ok(ElementStyle::EgrPrimes),
            "regev" => Ok(ElementStyle::RegevSquaredPrimes),
            other => Err(Error::Config(format!(
                "unknown element style {other:?} (expected egr or regev)"
            ))),
        }
    }
}

/// The first `d` primes, in order.
pub fn first_primes(d: u32) -> Vec<u64> {
    let d = d as usize;
    if d == 0 {
        return Vec::new();
    }
    // p_d < d (ln d + ln ln d) for d ≥ 6; pad generously for small d.
    let mut limit = if d < 6 {
        16
    } else {
        let df = d as f64;
        (df * (df.ln() + df.ln().ln())).ceil() as usize + 16
    };
    loop {
        let primes = sieve(limit);
        if primes.len() >= d {
            return primes[..d].to_vec();
        }
        limit *= 2;
    }
}

fn sieve(limit: usize) -> Vec<u64> {
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for p in 2..=limit {
        if !composite[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= limit {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Greatest `d` such that `∏_{i=1..d} p_i^(e·r) < 2^n`, where `e` is 1 for
/// plain primes and 2 for squared primes. The product comparison is exact.
pub fn d_max(n: u32, r: u32, style: ElementStyle) -> u32 {
    assert!(r >= 1, "r must be ≥ 1");
    let exp = style.exponent() * r;
    let bound = BigUint::one() << n;
    let mut product = BigUint::one();
    let mut d = 0u32;
    let mut chunk = 64u32;
    loop {
        let primes = first_primes(d + chunk);
        for &p in &primes[d as usize..] {
            let next = &product * BigUint::from(p).pow(exp);
            if next >= bound {
                debug_assert!(product < bound);
                return d;
            }
            product = next;
            d += 1;
        }
        chunk *= 2;
    }
}

/// Generalized Fibonacci numbers `G_0 = G_1 = 1`, `G_j = r·G_{j−1} + G_{j−2}`.
///
/// The sequence grows on demand; a parallel `u64` prefix is kept so that
/// small decompositions avoid big-integer arithmetic.
#[derive(Debug, Clone)]
pub struct GenFibSequence {
    r: u32,
    values: Vec<BigUint>,
    small: Vec<u64>,
    small_exact: bool,
}

impl GenFibSequence {
    pub fn new(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("r must be ≥ 1".into()));
        }
        Ok(GenFibSequence {
            r,
            values: vec![BigUint::one(), BigUint::one()],
            small: vec![1, 1],
            small_exact: true,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    fn ensure_len(&mut self, len: usize) {
        while self.values.len() < len {
            let j = self.values.len();
            let next = self.r * &self.values[j - 1] + &self.values[j - 2];
            if self.small_exact {
                let wide =
                    (self.r as u128) * (self.small[j - 1] as u128) + self.small[j - 2] as u128;
                if wide <= u64::MAX as u128 {
                    self.small.push(wide as u64);
                } else {
                    self.small_exact = false;
                }
            }
            self.values.push(next);
        }
    }

    /// `G_j`, growing the sequence as needed.
    pub fn get(&mut self, j: u32) -> &BigUint {
        self.ensure_len(j as usize + 1);
        &self.values[j as usize]
    }

    fn small_prefix(&mut self, len: usize) -> Option<&[u64]> {
        self.ensure_len(len);
        if self.small.len() >= len {
            Some(&self.small[..len])
        } else {
            None
        }
    }

    /// Largest index `K` with `G_K ≤ bound`. Requires `bound ≥ 1`.
    pub fn largest_index_at_most(&mut self, bound: &BigUint) -> u32 {
        assert!(!bound.is_zero(), "bound must be ≥ 1 (G_0 = 1)");
        let mut j = 1usize;
        loop {
            self.ensure_len(j + 2);
            if self.values[j + 1] > *bound {
                return j as u32;
            }
            j += 1;
        }
    }

    /// Greedy digit decomposition of `x` over digits `(z_1, …, z_K)` with
    /// every `z_j ∈ {0, …, r}` and `Σ_j z_j · G_j = x`.
    /// Requires `0 ≤ x < G_{K+1}`.
    pub fn decompose(&mut self, x: &BigUint, k: u32) -> Result<Vec<u32>> {
        let r = self.r;
        if *x >= *self.get(k + 1) {
            return Err(Error::OutOfRange(format!(
                "x must be < G_{}^({r}) for a {k}-digit decomposition",
                k + 1
            )));
        }
        // u64 fast path covers every digit position when the range fits.
        if let (Ok(x64), Some(small)) = (u64::try_from(x), self.small_prefix(k as usize + 2)) {
            let mut rem = x64;
            let mut digits = vec![0u32; k as usize];
            for j in (1..=k as usize).rev() {
                let g = small[j];
                let z = (rem / g).min(r as u64);
                digits[j - 1] = z as u32;
                rem -= z * g;
            }
            debug_assert_eq!(rem, 0);
            return Ok(digits);
        }
        let mut rem = x.clone();
        let mut digits = vec![0u32; k as usize];
        for j in (1..=k).rev() {
            if rem.is_zero() {
                break;
            }
            let g = self.get(j).clone();
            let q = &rem / &g;
            let z = u64::try_from(&q).unwrap_or(u64::MAX).min(r as u64) as u32;
            if z > 0 {
                rem -= &g * BigUint::from(z);
                digits[j as usize - 1] = z;
            }
        }
        if !rem.is_zero() {
            return Err(Error::Invariant(format!(
                "greedy decomposition left remainder {rem} for r={r}, K={k}"
            )));
        }
        Ok(digits)
    }

    /// `Σ_j digits_j · G_j`, the inverse of [`GenFibSequence::decompose`].
    pub fn reconstruct(&mut self, digits: &[u32]) -> Result<BigUint> {
        let r = self.r;
        let mut sum = BigUint::zero();
        for (i, &z) in digits.iter().enumerate() {
            if z > r {
                return Err(Error::InvalidArgument(format!(
                    "digit {z} at position {} exceeds r = {r}",
                    i + 1
                )));
            }
            if z > 0 {
                sum += self.get(i as u32 + 1) * BigUint::from(z);
            }
        }
        Ok(sum)
    }
}

/// Largest `K` with `G_K^(r) ≤ 2^log_d`, computed with exact integers.
pub fn k_max(r: u32, log_d: u32) -> Result<u32> {
    if log_d == 0 {
        return Err(Error::InvalidArgument("log D must be ≥ 1".into()));
    }
    let mut seq = GenFibSequence::new(r)?;
    let bound = BigUint::one() << log_d;
    let k = seq.largest_index_at_most(&bound);
    // Postcondition: G_K ≤ 2^logD < G_{K+1}.
    if !(*seq.get(k) <= bound && *seq.get(k + 1) > bound) {
        return Err(Error::Invariant(format!(
            "k_max postcondition failed for r={r}, logD={log_d}"
        )));
    }
    Ok(k)
}

/// Greedy digit decomposition of `x` in the generalized Fibonacci basis:
/// returns digits `(z_1, …, z_K)` with every `z_j ∈ {0, …, r}` and
/// `Σ_j z_j · G_j^(r) = x`. Requires `0 ≤ x < G_{K+1}^(r)`.
///
/// Batch callers should hold a [`GenFibSequence`] and use its
/// [`decompose`](GenFibSequence::decompose) to reuse the sequence.
pub fn fib_decompose(x: &BigUint, r: u32, k: u32) -> Result<Vec<u32>> {
    GenFibSequence::new(r)?.decompose(x, k)
}

/// `Σ_j digits_j · G_j^(r)`, the inverse of [`fib_decompose`].
pub fn fib_reconstruct(digits: &[u32], r: u32) -> Result<BigUint> {
    GenFibSequence::new(r)?.reconstruct(digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_primes_basics() {
        assert_eq!(first_primes(0), Vec::<u64>::new());
        assert_eq!(first_primes(1), vec![2]);
        assert_eq!(first_primes(5), vec![2, 3, 5, 7, 11]);
    }

    #[test]
    fn first_primes_233_ends_at_1471() {
        // Independent oracle: trial division.
        let is_prime = |n: u64| {
            n >= 2
                && (2..n)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        let primes = first_primes(233);
        assert_eq!(primes.len(), 233);
        assert_eq!(*primes.last().unwrap(), 1471);
        assert!(primes.iter().all(|&p| is_prime(p)));
    }

    #[test]
    fn d_max_tabulated_values() {
        assert_eq!(d_max(2048, 4, ElementStyle::EgrPrimes), 75);
        assert_eq!(d_max(2048, 2, ElementStyle::EgrPrimes), 131);
        assert_eq!(d_max(2048, 1, ElementStyle::RegevSquaredPrimes), 131);
        assert_eq!(d_max(2048, 1, ElementStyle::EgrPrimes), 233);
    }

    #[test]
    fn d_max_boundary_is_exact() {
        use num_traits::One;
        for (n, r, style) in [
            (2048u32, 1u32, ElementStyle::EgrPrimes),
            (2048, 2, ElementStyle::EgrPrimes),
            (2048, 1, ElementStyle::RegevSquaredPrimes),
            (3072, 4, ElementStyle::EgrPrimes),
        ] {
            let d = d_max(n, r, style);
            let exp = match style {
                ElementStyle::EgrPrimes => r,
                ElementStyle::RegevSquaredPrimes => 2 * r,
            };
            let bound = BigUint::one() << n;
            let prod = |count: u32| -> BigUint {
                first_primes(count)
                    .iter()
                    .map(|&p| BigUint::from(p).pow(exp))
                    .product()
            };
            assert!(prod(d) < bound);
            assert!(prod(d + 1) >= bound);
        }
    }

    #[test]
    fn genfib_r1_matches_classic_fibonacci() {
        // G_j^(1) = F_{j+1} with F_1 = F_2 = 1.
        let mut seq = GenFibSequence::new(1).unwrap();
        let mut a = BigUint::one();
        let mut b = BigUint::one();
        for j in 1..=200u32 {
            assert_eq!(*seq.get(j), a, "mismatch at j={j}");
            let next = &a + &b;
            b = a;
            a = next;
        }
    }

    #[test]
    fn genfib_strictly_increasing_from_one() {
        for r in [1u32, 2, 3, 4, 7] {
            let mut seq = GenFibSequence::new(r).unwrap();
            for j in 1..60u32 {
                assert!(seq.get(j + 1).clone() > seq.get(j).clone());
            }
        }
    }

    #[test]
    fn k_max_tabulated_values() {
        assert_eq!(k_max(1, 96).unwrap(), 138);
        assert_eq!(k_max(1, 21).unwrap(), 30);
        assert_eq!(k_max(4, 59).unwrap(), 29);
        assert_eq!(k_max(2, 35).unwrap(), 28);
    }

    #[test]
    fn k_max_rejects_zero_logd() {
        assert!(k_max(1, 0).is_err());
    }

    #[test]
    fn decompose_zero_is_all_zero() {
        let digits = fib_decompose(&BigUint::zero(), 1, 10).unwrap();
        assert_eq!(digits, vec![0; 10]);
        assert_eq!(fib_reconstruct(&digits, 1).unwrap(), BigUint::zero());
    }

    #[test]
    fn decompose_four_is_zeckendorf() {
        // Basis for r=1 is (G_1..G_4) = (1, 2, 3, 5); 4 = 3 + 1.
        let digits = fib_decompose(&BigUint::from(4u32), 1, 4).unwrap();
        assert_eq!(digits, vec![1, 0, 1, 0]);
        assert_eq!(fib_reconstruct(&digits, 1).unwrap(), BigUint::from(4u32));
    }

    #[test]
    fn decompose_range_check() {
        // G_5^(1) = 8, so x = 8 needs more than 4 digits.
        assert!(fib_decompose(&BigUint::from(8u32), 1, 4).is_err());
        assert!(fib_decompose(&BigUint::from(7u32), 1, 4).is_ok());
    }

    #[test]
    fn reconstruct_rejects_oversized_digits() {
        assert!(fib_reconstruct(&[0, 2, 0], 1).is_err());
        assert!(fib_reconstruct(&[2, 2, 2], 2).is_ok());
    }

    #[test]
    fn exhaustive_round_trip_small() {
        // Every x in [0, G_9^(2)) decomposes and reconstructs exactly.
        let mut seq = GenFibSequence::new(2).unwrap();
        let top = u64::try_from(seq.get(9)).unwrap();
        for x in 0..top {
            let big = BigUint::from(x);
            let digits = fib_decompose(&big, 2, 8).unwrap();
            assert!(digits.iter().all(|&z| z <= 2));
            assert_eq!(fib_reconstruct(&digits, 2).unwrap(), big, "x={x}");
        }
    }

    #[test]
    fn big_path_agrees_with_small_path() {
        // Force the BigUint path with a huge K and compare against the u64
        // path on the same values.
        let mut seq = GenFibSequence::new(3).unwrap();
        let k = seq.largest_index_at_most(&(BigUint::one() << 200));
        for x in [0u64, 1, 17, 123_456_789, u64::MAX] {
            let big = BigUint::from(x);
            let wide = fib_decompose(&big, 3, k).unwrap();
            assert_eq!(fib_reconstruct(&wide, 3).unwrap(), big);
        }
        let huge = BigUint::one() << 199;
        let digits = fib_decompose(&huge, 3, k).unwrap();
        assert_eq!(fib_reconstruct(&digits, 3).unwrap(), huge);
    }
}

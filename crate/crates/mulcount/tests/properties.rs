//! Property tests for the crate's structural invariants.

use mulcount::lattice::ReductionModel;
use mulcount::numbers::{d_max, first_primes, k_max, ElementStyle, GenFibSequence};
use mulcount::regev::{c_lower_bound, min_c};
use mulcount::schedule::{emulate_binary_schedule, emulate_ehs_schedule};
use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;

const TOY_PRIMES: [u64; 4] = [101, 10_007, 65_537, 1_000_003];

proptest! {
    // Round-trip through the generalized Fibonacci basis with bounded digits.
    #[test]
    fn fib_decompose_round_trips(r in 1u32..=6, k in 1u32..=24, x_seed in any::<u64>()) {
        let mut seq = GenFibSequence::new(r).unwrap();
        let bound = seq.get(k + 1).clone();
        let x = BigUint::from(x_seed) % &bound;
        let digits = seq.decompose(&x, k).unwrap();
        prop_assert_eq!(digits.len(), k as usize);
        prop_assert!(digits.iter().all(|&z| z <= r));
        prop_assert_eq!(seq.reconstruct(&digits).unwrap(), x);
    }

    // Values at or past G_{K+1} are rejected, values just below accepted.
    #[test]
    fn fib_decompose_range_boundary(r in 1u32..=6, k in 1u32..=24) {
        let mut seq = GenFibSequence::new(r).unwrap();
        let bound = seq.get(k + 1).clone();
        prop_assert!(seq.decompose(&bound, k).is_err());
        let below = &bound - BigUint::one();
        prop_assert!(seq.decompose(&below, k).is_ok());
    }

    // The binary schedule matches a direct modular-exponentiation oracle and
    // the closed-form call/register counts.
    #[test]
    fn binary_schedule_counts_and_result(
        modulus_idx in 0usize..TOY_PRIMES.len(),
        values in prop::collection::vec(1u64..100_000, 2..=12),
    ) {
        let n = TOY_PRIMES[modulus_idx];
        let big_n = BigUint::from(n);
        let c: Vec<BigUint> = values.iter().map(|&v| BigUint::from(v % (n - 1) + 1)).collect();
        let out = emulate_binary_schedule(&c, &big_n).unwrap();
        let mut direct = BigUint::one();
        for (j, cj) in c.iter().enumerate() {
            direct = direct * cj.modpow(&(BigUint::one() << j), &big_n) % &big_n;
        }
        prop_assert_eq!(out.result, direct);
        prop_assert_eq!(out.calls, 4 * (c.len() as u64 - 1));
        prop_assert_eq!(out.peak_registers, c.len() as u32 + 1);
    }

    // The windowed conditional-product schedule matches the direct product
    // and the 2⌈n_e/w⌉ count for every window size.
    #[test]
    fn ehs_schedule_counts_and_result(
        modulus_idx in 0usize..TOY_PRIMES.len(),
        bits in prop::collection::vec(any::<bool>(), 1..=40),
        value_seed in any::<u64>(),
        w in 1u32..=12,
    ) {
        let n = TOY_PRIMES[modulus_idx];
        let big_n = BigUint::from(n);
        let v: Vec<BigUint> = (0..bits.len() as u64)
            .map(|i| BigUint::from((value_seed.wrapping_mul(i + 1)) % (n - 1) + 1))
            .collect();
        let out = emulate_ehs_schedule(&v, &bits, &big_n, w).unwrap();
        let mut direct = BigUint::one();
        for (vi, &b) in v.iter().zip(&bits) {
            if b {
                direct = direct * vi % &big_n;
            }
        }
        prop_assert_eq!(out.result, direct);
        prop_assert_eq!(out.calls, 2 * (bits.len() as u64).div_ceil(u64::from(w)));
    }

    // Quantization: min_c strictly exceeds the lower bound by at most 0.01.
    #[test]
    fn min_c_quantization(n in 64u32..16_384, d in 2u32..1024, m in 2u32..4096,
                          log2_gamma in 1e-4f64..0.4) {
        let bound = c_lower_bound(n, d, m, log2_gamma);
        let c = min_c(n, d, m, log2_gamma);
        prop_assert!(c > bound);
        prop_assert!(c - bound <= 0.01 + 1e-12);
    }

    // d_max sits exactly on the exact-integer product boundary.
    #[test]
    fn d_max_boundary(n in 32u32..512, r in 1u32..=3) {
        for style in [ElementStyle::EgrPrimes, ElementStyle::RegevSquaredPrimes] {
            let d = d_max(n, r, style);
            let exp = match style {
                ElementStyle::EgrPrimes => r,
                ElementStyle::RegevSquaredPrimes => 2 * r,
            };
            let bound = BigUint::one() << n;
            let primes = first_primes(d + 1);
            let mut product = BigUint::one();
            for &p in &primes[..d as usize] {
                product *= BigUint::from(p).pow(exp);
            }
            prop_assert!(product < bound);
            product *= BigUint::from(primes[d as usize]).pow(exp);
            prop_assert!(product >= bound);
        }
    }

    // k_max postcondition: G_K ≤ 2^logD < G_{K+1}.
    #[test]
    fn k_max_postcondition(r in 1u32..=8, log_d in 1u32..=160) {
        let k = k_max(r, log_d).unwrap();
        let mut seq = GenFibSequence::new(r).unwrap();
        let bound = BigUint::one() << log_d;
        prop_assert!(*seq.get(k) <= bound);
        prop_assert!(*seq.get(k + 1) > bound);
    }

    // Reduction-model syntax round-trips through Display/FromStr.
    #[test]
    fn reduction_model_parse_round_trip(block in 2u32..=500) {
        let model = ReductionModel::bkz(block).unwrap();
        let back: ReductionModel = model.to_string().parse().unwrap();
        prop_assert_eq!(model, back);
    }
}

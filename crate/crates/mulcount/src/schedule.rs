//! Desk-scale emulation of the exponentiation schedules over toy moduli.
//!
//! The only counted operation is a call to the black-box circuit computing
//! `(t + u·v) mod N` (forward or in reverse); loads, lookups and copies are
//! free, matching the cost metric. Each emulator returns the computed group
//! element together with the call count and the peak number of live n-bit
//! value registers, so tests can pin both against the closed forms and an
//! independent direct-computation oracle.

use crate::error::{Error, Result};
use crate::numbers::{k_max, GenFibSequence};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Multiplication oracle with an exact call counter.
///
/// Both operands of every counted call must be invertible modulo N; toy
/// moduli are primes or products of distinct primes so the check is cheap.
#[derive(Debug, Clone)]
pub struct CountingMultOracle {
    modulus: BigUint,
    calls: u64,
}

impl CountingMultOracle {
    pub fn new(modulus: BigUint) -> Result<Self> {
        if modulus < BigUint::from(2u32) {
            return Err(Error::InvalidArgument("modulus must be ≥ 2".into()));
        }
        Ok(CountingMultOracle { modulus, calls: 0 })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn call_count(&self) -> u64 {
        self.calls
    }

    fn check_operand(&self, x: &BigUint) -> Result<()> {
        if x.gcd(&self.modulus) != BigUint::one() {
            return Err(Error::NotInvertible(format!(
                "{x} shares a factor with N = {}",
                self.modulus
            )));
        }
        Ok(())
    }

    /// One forward call: `(t + u·v) mod N`.
    pub fn mul_acc(&mut self, t: &BigUint, u: &BigUint, v: &BigUint) -> Result<BigUint> {
        self.check_operand(u)?;
        self.check_operand(v)?;
        self.calls += 1;
        Ok((t + u * v) % &self.modulus)
    }

    /// One reverse call: `(t − u·v) mod N`, the circuit run backwards.
    pub fn mul_dec(&mut self, t: &BigUint, u: &BigUint, v: &BigUint) -> Result<BigUint> {
        self.check_operand(u)?;
        self.check_operand(v)?;
        self.calls += 1;
        let prod = (u * v) % &self.modulus;
        let t = t % &self.modulus;
        Ok(if t >= prod {
            t - prod
        } else {
            &self.modulus + t - prod
        })
    }
}

/// Outcome of an emulated schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleResult {
    pub result: BigUint,
    pub calls: u64,
    /// Simultaneously live n-bit value slots at the high-water mark.
    pub peak_registers: u32,
}

/// Modular inverse by the extended Euclidean algorithm.
pub fn mod_inverse(x: &BigUint, modulus: &BigUint) -> Result<BigUint> {
    let a = BigInt::from(x.clone());
    let m = BigInt::from(modulus.clone());
    let ext = a.extended_gcd(&m);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible(format!(
            "{x} has no inverse modulo {modulus}"
        )));
    }
    let mut inv = ext.x % &m;
    if inv.is_negative() {
        inv += &m;
    }
    Ok(inv
        .to_biguint()
        .expect("reduced representative is non-negative"))
}

/// Square-and-multiply schedule computing `∏_j c_j^(2^j) mod N` for
/// j = 0…l−1, squaring into a fresh register at each step and running the
/// whole circuit in reverse afterwards to clear the intermediates.
///
/// Calls: 4(l−1). Peak registers: l+1 (the l-deep chain plus the copied-out
/// result).
pub fn emulate_binary_schedule(c_values: &[BigUint], modulus: &BigUint) -> Result<ScheduleResult> {
    let l = c_values.len();
    if l < 2 {
        return Err(Error::InvalidArgument(
            "binary schedule needs at least two exponent bits".into(),
        ));
    }
    let mut oracle = CountingMultOracle::new(modulus.clone())?;
    for c in c_values {
        oracle.check_operand(c)?;
    }
    let zero = BigUint::zero();

    // Forward pass: chain[i+1] = chain[i]² · c_j, one squaring and one
    // multiplication per step, each landing in a fresh register.
    let mut chain = vec![c_values[l - 1].clone() % modulus];
    let mut peak = 1u32;
    for j in (0..l - 1).rev() {
        let prev = chain.last().unwrap().clone();
        let sq = oracle.mul_acc(&zero, &prev, &prev)?;
        let stepped = oracle.mul_acc(&zero, &sq, &c_values[j])?;
        chain.push(stepped);
        peak = peak.max(chain.len() as u32);
    }
    // Copy the result out; a copy is not a multiplication.
    let result = chain.last().unwrap().clone();
    peak = peak.max(chain.len() as u32 + 1);

    // Reverse pass: recompute each square and subtract it off, clearing the
    // chain back down to the initial register.
    for c_j in c_values.iter().take(l - 1) {
        let top = chain.pop().unwrap();
        let below = chain.last().unwrap().clone();
        let sq = oracle.mul_acc(&zero, &below, &below)?;
        let cleared = oracle.mul_dec(&top, &sq, c_j)?;
        if !cleared.is_zero() {
            return Err(Error::Invariant(
                "binary schedule uncompute left a non-zero register".into(),
            ));
        }
    }

    let expected_calls = 4 * (l as u64 - 1);
    if oracle.call_count() != expected_calls {
        return Err(Error::Invariant(format!(
            "binary schedule made {} calls, closed form says {expected_calls}",
            oracle.call_count()
        )));
    }
    Ok(ScheduleResult {
        result,
        calls: oracle.call_count(),
        peak_registers: peak,
    })
}

/// Windowed conditional-product schedule computing `∏_i v_i^(c_i) mod N`:
/// per window of `w` control bits, the window product is looked up
/// classically, multiplied into a fresh register, and the stale register is
/// cleared with the negated inverse load. Calls: 2·⌈n_e/w⌉.
pub fn emulate_ehs_schedule(
    v_values: &[BigUint],
    control_bits: &[bool],
    modulus: &BigUint,
    window: u32,
) -> Result<ScheduleResult> {
    if window == 0 {
        return Err(Error::InvalidArgument("window size must be ≥ 1".into()));
    }
    if v_values.len() != control_bits.len() {
        return Err(Error::InvalidArgument(format!(
            "{} elements vs {} control bits",
            v_values.len(),
            control_bits.len()
        )));
    }
    let mut oracle = CountingMultOracle::new(modulus.clone())?;
    for v in v_values {
        oracle.check_operand(v)?;
    }
    let zero = BigUint::zero();
    let mut acc = BigUint::one();
    for (vs, cs) in v_values
        .chunks(window as usize)
        .zip(control_bits.chunks(window as usize))
    {
        // Classical lookup of the window product; not a circuit call.
        let mut product = BigUint::one();
        for (v, &c) in vs.iter().zip(cs) {
            if c {
                product = product * v % modulus;
            }
        }
        let loaded = oracle.mul_acc(&zero, &acc, &product)?;
        let cleared = oracle.mul_dec(&acc, &loaded, &mod_inverse(&product, modulus)?)?;
        if !cleared.is_zero() {
            return Err(Error::Invariant(
                "EHS schedule unload left a non-zero register".into(),
            ));
        }
        acc = loaded;
    }
    let expected_calls = 2 * (v_values.len() as u64).div_ceil(u64::from(window));
    if oracle.call_count() != expected_calls {
        return Err(Error::Invariant(format!(
            "EHS schedule made {} calls, closed form says {expected_calls}",
            oracle.call_count()
        )));
    }
    Ok(ScheduleResult {
        result: acc,
        calls: oracle.call_count(),
        // Accumulator, freshly loaded target, and the looked-up constant.
        peak_registers: 3,
    })
}

/// Checks the exponent-basis identity behind the Fibonacci cost accounting:
/// with each `z_i + D/2` rewritten in the generalized Fibonacci basis and
/// `c_j = ∏_i a_i^(z_{i,j})`, verifies `∏_j c_j^(G_j) ≡ ∏_i a_i^(z_i + D/2)`
/// (mod N) by direct computation. `D = 2^log_d`; every `z_i ∈ [−D/2, D/2)`.
pub fn verify_fib_product_identity(
    a_values: &[BigUint],
    z_values: &[i64],
    r: u32,
    log_d: u32,
    modulus: &BigUint,
) -> Result<bool> {
    if a_values.len() != z_values.len() {
        return Err(Error::InvalidArgument(format!(
            "{} elements vs {} exponents",
            a_values.len(),
            z_values.len()
        )));
    }
    if log_d == 0 || log_d > 62 {
        return Err(Error::InvalidArgument("log D must be in 1..=62".into()));
    }
    let oracle = CountingMultOracle::new(modulus.clone())?;
    for a in a_values {
        oracle.check_operand(a)?;
    }
    let half_d = 1i64 << (log_d - 1);
    let k = k_max(r, log_d)?;
    let mut seq = GenFibSequence::new(r)?;

    // Digit matrix: digits[i][j-1] is z_{i,j}.
    let mut digit_rows = Vec::with_capacity(z_values.len());
    for &z in z_values {
        if z < -half_d || z >= half_d {
            return Err(Error::OutOfRange(format!(
                "exponent offset {z} outside [−D/2, D/2) for log D = {log_d}"
            )));
        }
        let shifted = BigUint::from((z + half_d) as u64);
        digit_rows.push(seq.decompose(&shifted, k)?);
    }

    // Left side: ∏_j (∏_i a_i^{z_{i,j}})^{G_j}.
    let mut lhs = BigUint::one();
    for j in 1..=k {
        let mut c_j = BigUint::one();
        for (a, row) in a_values.iter().zip(&digit_rows) {
            let digit = row[j as usize - 1];
            if digit > 0 {
                c_j = c_j * a.modpow(&BigUint::from(digit), modulus) % modulus;
            }
        }
        lhs = lhs * c_j.modpow(seq.get(j), modulus) % modulus;
    }

    // Right side: the product with plain exponents.
    let mut rhs = BigUint::one();
    for (a, &z) in a_values.iter().zip(z_values) {
        rhs = rhs * a.modpow(&BigUint::from((z + half_d) as u64), modulus) % modulus;
    }
    Ok(lhs == rhs)
}

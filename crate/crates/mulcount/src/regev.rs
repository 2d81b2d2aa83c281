//! Cost model and parameter optimizer for Regev-style factoring and its
//! order-finding / discrete-logarithm extensions, using generalized
//! Fibonacci exponentiation for the d small elements and windowed standard
//! arithmetic for the k arbitrary elements.
//!
//! Per run the multiplication circuit is called
//!
//! ```text
//! f(r, s) · K^(r)  +  2 ⌈(k · log D) / w⌉
//! ```
//!
//! times, and the scale constant C (through `R = 2^{C√n}`,
//! `D = 2^{⌈log(2√d·R)⌉}`) is chosen as the least multiple of 0.01 that
//! satisfies the post-processing bound for the given reduction quality.

use crate::error::{Error, Result};
use crate::lattice::{Log2Gamma, ReductionModel};
use crate::numbers::{d_max, k_max, ElementStyle};
use std::fmt;

/// Run count, unbounded in the perfect-reduction limit where the bound on C
/// no longer depends on m.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunCount {
    Bounded(u32),
    Unbounded,
}

impl RunCount {
    pub fn bounded(self) -> Option<u32> {
        match self {
            RunCount::Bounded(m) => Some(m),
            RunCount::Unbounded => None,
        }
    }
}

impl fmt::Display for RunCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunCount::Bounded(m) => write!(f, "{m}"),
            RunCount::Unbounded => write!(f, "inf"),
        }
    }
}

/// A fully determined parameterization: everything needed to evaluate the
/// per-run and overall multiplication counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegevParameterization {
    /// Modulus bit length.
    pub n: u32,
    /// Dimension (number of small elements).
    pub d: u32,
    /// Number of runs.
    pub m: RunCount,
    /// C in thousandths, kept as an integer so table cells compare exactly.
    pub c_milli: u32,
    /// ⌈C√n + log₂(2√d)⌉.
    pub log_d: u32,
    /// Generalized Fibonacci order r.
    pub r: u32,
    /// Ragavan's register-tradeoff parameter: a power of two dividing r.
    pub s: u32,
    /// K^(r): largest K with G_K^(r) ≤ D.
    pub k_index: u32,
    /// Number k of arbitrarily selected elements (0 for plain factoring).
    pub arbitrary_elements: u32,
    /// Window size for the arbitrary-element part.
    pub window: u32,
    pub style: ElementStyle,
}

impl RegevParameterization {
    /// C as a real number.
    pub fn c(&self) -> f64 {
        f64::from(self.c_milli) / 1000.0
    }

    /// C at its native grid: two decimals on the 0.01 grid, three on the
    /// finer 0.001 grid used in the perfect-reduction limit.
    pub fn c_display(&self) -> String {
        match self.m {
            RunCount::Unbounded => format!("{:.3}", self.c()),
            RunCount::Bounded(_) => format!("{:.2}", self.c()),
        }
    }
}

/// Per-run and overall multiplication counts, split into the Fibonacci part
/// (the d small elements) and the windowed part (the k arbitrary elements).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostBreakdown {
    pub fib_part: u64,
    pub k_part: u64,
    pub per_run_ops: u64,
    /// `per_run_ops × m`; absent when the run count is unbounded.
    pub overall_ops: Option<u64>,
}

/// Lower bound on C: √n/d + log₂γ·(m+d)/√n + √n/m, with κ = 1 and the
/// vanishing correction terms dropped.
pub fn c_lower_bound(n: u32, d: u32, m: u32, log2_gamma: f64) -> f64 {
    let sqrt_n = f64::from(n).sqrt();
    sqrt_n / f64::from(d) + log2_gamma * f64::from(m + d) / sqrt_n + sqrt_n / f64::from(m)
}

/// Smallest positive multiple of `1/denom` strictly greater than `value`,
/// returned in thousandths. `denom` is 100 for the usual 0.01 grid and 1000
/// for the perfect-reduction 0.001 grid.
fn quantize_above_milli(value: f64, denom: u32) -> u32 {
    debug_assert!(1000 % denom == 0);
    let step_milli = 1000 / denom;
    let units = (value * f64::from(denom)).floor() as u32 + 1;
    units * step_milli
}

/// Smallest positive multiple of 0.01 strictly greater than the C bound.
pub fn min_c(n: u32, d: u32, m: u32, log2_gamma: f64) -> f64 {
    f64::from(min_c_milli(n, d, m, log2_gamma)) / 1000.0
}

fn min_c_milli(n: u32, d: u32, m: u32, log2_gamma: f64) -> u32 {
    quantize_above_milli(c_lower_bound(n, d, m, log2_gamma), 100)
}

/// ⌈C√n + log₂(2√d)⌉, the bit length of D.
pub fn log_d_of(c: f64, n: u32, d: u32) -> u32 {
    let sqrt_n = f64::from(n).sqrt();
    (c * sqrt_n + (2.0 * f64::from(d).sqrt()).log2()).ceil() as u32
}

/// Ragavan's per-step multiplication cost f(r, s) = 2·(3r/s + 4·log₂s + 7).
///
/// `s` must be a power of two dividing `r`; `s = 1` is allowed for any `r`.
pub fn f_cost(r: u32, s: u32) -> Result<u64> {
    if r == 0 {
        return Err(Error::InvalidArgument("r must be ≥ 1".into()));
    }
    if s == 0 || !s.is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "s must be a power of two, got {s}"
        )));
    }
    if !r.is_multiple_of(s) {
        return Err(Error::InvalidArgument(format!(
            "s = {s} does not divide r = {r}"
        )));
    }
    Ok(2 * (3 * u64::from(r / s) + 4 * u64::from(s.trailing_zeros()) + 7))
}

/// Cost-minimizing s for a given r: 1 if r = 1, r/2 if r is a power of two
/// greater than one, otherwise the greatest power of two dividing r.
pub fn select_s(r: u32) -> u32 {
    assert!(r >= 1, "r must be ≥ 1");
    if r == 1 {
        1
    } else if r.is_power_of_two() {
        r / 2
    } else {
        1 << r.trailing_zeros()
    }
}

/// Per-run and overall multiplication counts for a parameterization.
pub fn per_run_ops(p: &RegevParameterization) -> Result<CostBreakdown> {
    if p.window == 0 {
        return Err(Error::InvalidArgument("window size must be ≥ 1".into()));
    }
    let fib_part = f_cost(p.r, p.s)? * u64::from(p.k_index);
    let k_part = if p.arbitrary_elements == 0 {
        0
    } else {
        2 * (u64::from(p.arbitrary_elements) * u64::from(p.log_d)).div_ceil(u64::from(p.window))
    };
    let per_run = fib_part + k_part;
    Ok(CostBreakdown {
        fib_part,
        k_part,
        per_run_ops: per_run,
        overall_ops: p.m.bounded().map(|m| per_run * u64::from(m)),
    })
}

/// Evaluates the post-processing success requirement
///
/// ```text
/// (m+d)^{1/2} · γ^{m+d} · (m+1)^{1/2} · T  <  √2·R/(6d) · (det L)^{−1/m}
/// ```
///
/// in log₂ form, with T = 2^{κn/d}, R = 2^{C√n}, det L bounded by 2^n, and
/// the GSA substitution of γ^{m+d} for the LLL factor 2^{(m+d)/2}.
pub fn post_processing_feasible(
    n: u32,
    d: u32,
    m: u32,
    kappa: f64,
    log2_gamma: f64,
    c: f64,
) -> bool {
    let nf = f64::from(n);
    let df = f64::from(d);
    let mf = f64::from(m);
    let lhs =
        0.5 * (mf + df).log2() + log2_gamma * (mf + df) + 0.5 * (mf + 1.0).log2() + kappa * nf / df;
    let rhs = 0.5 - (6.0 * df).log2() + c * nf.sqrt() - nf / mf;
    lhs < rhs
}

/// Default r search space for [`optimize`].
pub const DEFAULT_R_CANDIDATES: std::ops::RangeInclusive<u32> = 1..=16;

/// Searches r over the candidate set, derives the remaining parameters for
/// each candidate, and returns the parameterization minimizing the Fibonacci
/// part of the per-run cost. Ties break toward smaller r, then smaller log D.
///
/// For each r: s = [`select_s`], m = round(√(n/log₂γ)),
/// d = min(d_max, m), C = [`min_c`], then log D and K^(r) follow.
pub fn optimize(
    n: u32,
    model: &ReductionModel,
    style: ElementStyle,
    arbitrary_elements: u32,
    window: u32,
    r_candidates: impl IntoIterator<Item = u32>,
) -> Result<RegevParameterization> {
    let log2_gamma = match model.log2_gamma()? {
        Log2Gamma::Finite(v) => v,
        Log2Gamma::PerfectLimit => {
            return Err(Error::InvalidArgument(
                "perfect reduction has no finite optimizer; use perfect_params".into(),
            ))
        }
    };
    if window == 0 {
        return Err(Error::InvalidArgument("window size must be ≥ 1".into()));
    }
    let m = (f64::from(n) / log2_gamma).sqrt().round() as u32;
    let mut best: Option<((u64, u32, u32), RegevParameterization)> = None;
    for r in r_candidates {
        if r == 0 {
            return Err(Error::InvalidArgument("r candidates must be ≥ 1".into()));
        }
        let s = select_s(r);
        let d = d_max(n, r, style).min(m);
        let c_milli = min_c_milli(n, d, m, log2_gamma);
        let c = f64::from(c_milli) / 1000.0;
        let log_d = log_d_of(c, n, d);
        let k_index = k_max(r, log_d)?;
        let fib = f_cost(r, s)? * u64::from(k_index);
        let key = (fib, r, log_d);
        if best.as_ref().is_none_or(|(k, _)| key < *k) {
            best = Some((
                key,
                RegevParameterization {
                    n,
                    d,
                    m: RunCount::Bounded(m),
                    c_milli,
                    log_d,
                    r,
                    s,
                    k_index,
                    arbitrary_elements,
                    window,
                    style,
                },
            ));
        }
    }
    best.map(|(_, p)| p)
        .ok_or_else(|| Error::InvalidArgument("empty r candidate range".into()))
}

/// Parameters in the perfect-reduction limit γ → 1: the bound on C collapses
/// to √n/d, m is unbounded, and r = 1 is optimal since larger r only
/// restricts d. C is quantized on the finer 0.001 grid here because its
/// values are small.
pub fn perfect_params(n: u32, style: ElementStyle) -> Result<RegevParameterization> {
    let d = d_max(n, 1, style);
    if d == 0 {
        return Err(Error::InvalidArgument(format!(
            "no admissible dimension for n = {n}"
        )));
    }
    let c_milli = quantize_above_milli(f64::from(n).sqrt() / f64::from(d), 1000);
    let c = f64::from(c_milli) / 1000.0;
    let log_d = log_d_of(c, n, d);
    let k_index = k_max(1, log_d)?;
    Ok(RegevParameterization {
        n,
        d,
        m: RunCount::Unbounded,
        c_milli,
        log_d,
        r: 1,
        s: 1,
        k_index,
        arbitrary_elements: 0,
        window: 10,
        style,
    })
}

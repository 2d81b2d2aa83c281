//! Lattice-reduction quality models.
//!
//! A reduction model yields a root-Hermite factor δ, from which the
//! Geometric Series Assumption slope γ is estimated as δ². Downstream cost
//! bounds only consume log₂γ, so the perfect-reduction limit (γ → 1) is
//! represented explicitly instead of as a number.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Root-Hermite anchors for small BKZ block sizes, mirroring the convention
/// of the public lattice estimator. Values between anchors are linearly
/// interpolated; block sizes above 40 use Chen's asymptotic formula.
const SMALL_BLOCK_ANCHORS: &[(u32, f64)] = &[
    (2, 1.0219),
    (5, 1.01862),
    (10, 1.01616),
    (15, 1.01485),
    (20, 1.01420),
    (25, 1.01342),
    (28, 1.01331),
    (40, 1.01295),
];

/// δ attributed to LLL: the block-size-2 anchor of the small-block table.
pub const LLL_DELTA: f64 = 1.0219;

/// Calibrated δ for the "paper-bkz200" preset.
///
/// Chosen so that m = round(√(n / log₂γ)) with γ = δ² reproduces the
/// published BKZ-200 run counts 342/419/483/592/683 for n = 2048…8192,
/// along with every derived table cell. The admissible interval is
/// (1.0060958, 1.0060974); Chen's formula would give δ(200) ≈ 1.006283,
/// which lands outside it (m = 337 instead of 342 at n = 2048).
pub const PAPER_BKZ200_DELTA: f64 = 1.0060965;

/// Which lattice-reduction quality assumption drives γ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ReductionModel {
    /// LLL; uses the block-size-2 anchor δ = 1.0219.
    Lll,
    /// BKZ with the given block size (≥ 2).
    Bkz { block: u32 },
    /// Idealized reduction: γ → 1, log₂γ → 0, run count unbounded.
    Perfect,
    /// Caller-supplied root-Hermite factor (> 1).
    ExplicitDelta { delta: f64 },
}

/// log₂γ for a reduction model, with the perfect limit kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Log2Gamma {
    Finite(f64),
    PerfectLimit,
}

impl Log2Gamma {
    /// The finite value, or an error for the perfect limit.
    pub fn finite(self) -> Result<f64> {
        match self {
            Log2Gamma::Finite(v) => Ok(v),
            Log2Gamma::PerfectLimit => Err(Error::InvalidArgument(
                "log₂γ is not finite under perfect reduction".into(),
            )),
        }
    }
}

impl ReductionModel {
    pub fn bkz(block: u32) -> Result<Self> {
        if block < 2 {
            return Err(Error::InvalidArgument(format!(
                "BKZ block size must be ≥ 2, got {block}"
            )));
        }
        Ok(ReductionModel::Bkz { block })
    }

    pub fn explicit_delta(delta: f64) -> Result<Self> {
        if !delta.is_finite() || delta <= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "explicit δ must be a finite real > 1, got {delta}"
            )));
        }
        Ok(ReductionModel::ExplicitDelta { delta })
    }

    /// The calibrated BKZ-200 preset (see [`PAPER_BKZ200_DELTA`]).
    pub fn paper_bkz200() -> Self {
        ReductionModel::ExplicitDelta {
            delta: PAPER_BKZ200_DELTA,
        }
    }

    /// Root-Hermite factor δ for this model.
    ///
    /// BKZ uses the small-block anchor table (with linear interpolation) up
    /// to and including block size 40, and Chen's asymptotic formula above.
    /// The boundary belongs to the table side: `root_hermite(Bkz(40))` is
    /// exactly the 1.01295 anchor, and Chen's formula takes over from 41.
    pub fn root_hermite(&self) -> Result<f64> {
        match *self {
            ReductionModel::Lll => Ok(LLL_DELTA),
            ReductionModel::Bkz { block } => {
                if block < 2 {
                    return Err(Error::InvalidArgument(format!(
                        "BKZ block size must be ≥ 2, got {block}"
                    )));
                }
                Ok(bkz_delta(block))
            }
            ReductionModel::Perfect => Err(Error::PerfectDelta),
            ReductionModel::ExplicitDelta { delta } => Ok(delta),
        }
    }

    /// log₂γ where γ = δ², or the symbolic perfect limit.
    pub fn log2_gamma(&self) -> Result<Log2Gamma> {
        match self {
            ReductionModel::Perfect => Ok(Log2Gamma::PerfectLimit),
            _ => {
                let delta = self.root_hermite()?;
                Ok(Log2Gamma::Finite(gamma_from_delta(delta)?.log2()))
            }
        }
    }
}

/// GSA slope γ estimated from the root-Hermite factor as δ².
pub fn gamma_from_delta(delta: f64) -> Result<f64> {
    if !delta.is_finite() || delta <= 1.0 {
        return Err(Error::InvalidArgument(format!(
            "δ must be a finite real > 1, got {delta}"
        )));
    }
    Ok(delta * delta)
}

/// Chen's asymptotic root-Hermite factor for BKZ with block size β:
/// δ = (β/(2πe) · (πβ)^(1/β))^(1/(2(β−1))).
pub fn chen_delta(block: u32) -> f64 {
    let beta = f64::from(block);
    let base = beta / (2.0 * std::f64::consts::PI * std::f64::consts::E)
        * (std::f64::consts::PI * beta).powf(1.0 / beta);
    base.powf(1.0 / (2.0 * (beta - 1.0)))
}

fn bkz_delta(block: u32) -> f64 {
    let last = SMALL_BLOCK_ANCHORS.last().unwrap();
    if block > last.0 {
        return chen_delta(block);
    }
    if block <= SMALL_BLOCK_ANCHORS[0].0 {
        return SMALL_BLOCK_ANCHORS[0].1;
    }
    for pair in SMALL_BLOCK_ANCHORS.windows(2) {
        let (b0, d0) = pair[0];
        let (b1, d1) = pair[1];
        if block <= b1 {
            let t = f64::from(block - b0) / f64::from(b1 - b0);
            return d0 + t * (d1 - d0);
        }
    }
    unreachable!("anchor table covers 2..=40")
}

impl fmt::Display for ReductionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionModel::Lll => write!(f, "lll"),
            ReductionModel::Bkz { block } => write!(f, "bkz:{block}"),
            ReductionModel::Perfect => write!(f, "perfect"),
            ReductionModel::ExplicitDelta { delta } => {
                if *delta == PAPER_BKZ200_DELTA {
                    write!(f, "paper-bkz200")
                } else {
                    write!(f, "delta:{delta}")
                }
            }
        }
    }
}

impl FromStr for ReductionModel {
    type Err = Error;

    /// Parses `lll`, `perfect`, `paper-bkz200`, `bkz:<block>` or `delta:<value>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "lll" => return Ok(ReductionModel::Lll),
            "perfect" => return Ok(ReductionModel::Perfect),
            "paper-bkz200" => return Ok(ReductionModel::paper_bkz200()),
            _ => {}
        }
        if let Some(raw) = s.strip_prefix("bkz:") {
            let block: u32 = raw
                .parse()
                .map_err(|_| Error::Config(format!("invalid BKZ block size: {raw:?}")))?;
            return ReductionModel::bkz(block).map_err(|e| Error::Config(e.to_string()));
        }
        if let Some(raw) = s.strip_prefix("delta:") {
            let delta: f64 = raw
                .parse()
                .map_err(|_| Error::Config(format!("invalid δ value: {raw:?}")))?;
            return ReductionModel::explicit_delta(delta).map_err(|e| Error::Config(e.to_string()));
        }
        Err(Error::Config(format!(
            "unknown reduction model {s:?} (expected lll, perfect, paper-bkz200, bkz:<block> or delta:<value>)"
        )))
    }
}

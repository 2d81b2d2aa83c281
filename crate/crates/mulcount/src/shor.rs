//! Call counts for Ekerå–Håstad (EHS) and Ekerå (ES) variations of Shor's
//! algorithm with windowed exponentiation.
//!
//! A run exponentiates a control string of total length `n_e` and makes
//! `2·⌈n_e/w⌉` multiplication-circuit calls: `n_e = m + 2ℓ` for EHS and
//! `n_e = m + ς + ℓ` for ES. Tradeoff parameters (s, ℓ, runs, ς) are data
//! taken from external post-processing analyses, not derived here; the
//! built-in table covers n ∈ {2048, 3072, 4096, 6144, 8192} and can be
//! extended from a file (see [`crate::config::parse_tradeoff_table`]).

use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

/// Problem families covered by the comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ProblemKind {
    /// Factoring an RSA integer, solved by EHS via the reduction to a short
    /// discrete logarithm.
    RsaIfp,
    /// General DLP in a safe-prime group (logarithm on the full order).
    DlpSafePrimeGeneral,
    /// Short DLP in a safe-prime group (logarithm of 2z bits).
    DlpSafePrimeShort,
    /// DLP in a Schnorr group of order ~2z bits.
    DlpSchnorr,
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ProblemKind::RsaIfp => "rsa",
            ProblemKind::DlpSafePrimeGeneral => "dlp-general",
            ProblemKind::DlpSafePrimeShort => "dlp-short",
            ProblemKind::DlpSchnorr => "dlp-schnorr",
        };
        write!(f, "{s}")
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "rsa" | "rsa-ifp" => Ok(ProblemKind::RsaIfp),
            "dlp-general" => Ok(ProblemKind::DlpSafePrimeGeneral),
            "dlp-short" => Ok(ProblemKind::DlpSafePrimeShort),
            "dlp-schnorr" => Ok(ProblemKind::DlpSchnorr),
            other => Err(Error::Config(format!(
                "unknown problem kind {other:?} (expected rsa, dlp-general, dlp-short or dlp-schnorr)"
            ))),
        }
    }
}

/// NIST-model classical strength levels for the built-in modulus sizes.
pub const BUILTIN_STRENGTH_LEVELS: &[(u32, u32)] = &[
    (2048, 112),
    (3072, 128),
    (4096, 152),
    (6144, 176),
    (8192, 200),
];

/// A problem instance: kind, modulus bit length, and optionally an explicit
/// strength level when `n` is outside the built-in set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProblemInstance {
    pub kind: ProblemKind,
    pub n: u32,
    pub z: Option<u32>,
}

impl ProblemInstance {
    pub fn new(kind: ProblemKind, n: u32) -> Self {
        ProblemInstance { kind, n, z: None }
    }

    pub fn with_strength(kind: ProblemKind, n: u32, z: u32) -> Self {
        ProblemInstance {
            kind,
            n,
            z: Some(z),
        }
    }

    /// Strength level z in bits: the explicit value if set, else the
    /// built-in lookup.
    pub fn strength_level(&self) -> Result<u32> {
        if let Some(z) = self.z {
            return Ok(z);
        }
        BUILTIN_STRENGTH_LEVELS
            .iter()
            .find(|(n, _)| *n == self.n)
            .map(|(_, z)| *z)
            .ok_or_else(|| {
                Error::Config(format!(
                    "no built-in strength level for n = {}; supply z explicitly",
                    self.n
                ))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShorAlgorithm {
    Ehs,
    Es,
}

impl ShorAlgorithm {
    /// The variation used for each problem family in the comparisons:
    /// EHS where a short logarithm is available, ES elsewhere.
    pub fn default_for(kind: ProblemKind) -> Self {
        match kind {
            ProblemKind::RsaIfp | ProblemKind::DlpSafePrimeShort => ShorAlgorithm::Ehs,
            ProblemKind::DlpSafePrimeGeneral | ProblemKind::DlpSchnorr => ShorAlgorithm::Es,
        }
    }
}

impl fmt::Display for ShorAlgorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShorAlgorithm::Ehs => write!(f, "ehs"),
            ShorAlgorithm::Es => write!(f, "es"),
        }
    }
}

impl FromStr for ShorAlgorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ehs" => Ok(ShorAlgorithm::Ehs),
            "es" => Ok(ShorAlgorithm::Es),
            other => Err(Error::Config(format!(
                "unknown algorithm {other:?} (expected ehs or es)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TradeoffMode {
    SingleRun,
    Tradeoff,
}

impl fmt::Display for TradeoffMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TradeoffMode::SingleRun => write!(f, "single"),
            TradeoffMode::Tradeoff => write!(f, "tradeoff"),
        }
    }
}

impl FromStr for TradeoffMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "single" => Ok(TradeoffMode::SingleRun),
            "tradeoff" => Ok(TradeoffMode::Tradeoff),
            other => Err(Error::Config(format!(
                "unknown mode {other:?} (expected single or tradeoff)"
            ))),
        }
    }
}

/// ℓ = m − Δ with Δ = 30 when EHS solves in a single run.
pub const SINGLE_RUN_DELTA: u32 = 30;

/// Success-probability notes attached to the two solve modes. These are
/// metadata only; no probability is computed.
pub fn success_probability_note(mode: TradeoffMode) -> &'static str {
    match mode {
        TradeoffMode::SingleRun => ">>99%",
        TradeoffMode::Tradeoff => ">=99%",
    }
}

/// One tradeoff record: factor s, per-run bits ℓ = ⌈m/s⌉, run count n ≥ s,
/// and the ES noise-suppression bits ς (zero for EHS).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TradeoffEntry {
    pub s: u32,
    pub ell: u32,
    pub runs: u32,
    pub varsigma: u32,
}

/// Fully determined EHS/ES parameterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShorParameterization {
    pub algorithm: ShorAlgorithm,
    /// Exponent bound bits (the bit length of the sought logarithm).
    pub m: u32,
    pub mode: TradeoffMode,
    /// Tradeoff factor; 1 in single-run mode.
    pub s: u32,
    /// Bits recovered per run.
    pub ell: u32,
    /// Noise-suppression padding (ES only).
    pub varsigma: u32,
    pub runs: u32,
    pub window: u32,
}

/// Exponent bound m for a problem instance: n/2 − 1 for RSA, n − 1 for the
/// general DLP, 2z for the short DLP and Schnorr groups.
pub fn exponent_bound(inst: &ProblemInstance) -> Result<u32> {
    match inst.kind {
        ProblemKind::RsaIfp => Ok(inst.n / 2 - 1),
        ProblemKind::DlpSafePrimeGeneral => Ok(inst.n - 1),
        ProblemKind::DlpSafePrimeShort | ProblemKind::DlpSchnorr => Ok(2 * inst.strength_level()?),
    }
}

/// Mapping (kind, n) → tradeoff record.
#[derive(Debug, Clone, Default)]
pub struct TradeoffTable {
    entries: BTreeMap<(ProblemKind, u32), TradeoffEntry>,
}

impl TradeoffTable {
    /// Empty table (useful as a base for purely external data).
    pub fn empty() -> Self {
        TradeoffTable::default()
    }

    /// The built-in records for n ∈ {2048, 3072, 4096, 6144, 8192}.
    pub fn builtin() -> Self {
        let mut t = TradeoffTable::default();
        let rsa = [
            (2048, 17, 61, 20),
            (3072, 21, 74, 24),
            (4096, 24, 86, 27),
            (6144, 31, 100, 34),
            (8192, 34, 121, 37),
        ];
        for (n, s, ell, runs) in rsa {
            t.insert(
                ProblemKind::RsaIfp,
                n,
                TradeoffEntry {
                    s,
                    ell,
                    runs,
                    varsigma: 0,
                },
            );
        }
        let general = [
            (2048, 24, 86, 27, 11),
            (3072, 31, 100, 34, 12),
            (4096, 34, 121, 37, 12),
            (6144, 37, 167, 40, 12),
            (8192, 40, 205, 43, 12),
        ];
        for (n, s, ell, runs, varsigma) in general {
            t.insert(
                ProblemKind::DlpSafePrimeGeneral,
                n,
                TradeoffEntry {
                    s,
                    ell,
                    runs,
                    varsigma,
                },
            );
        }
        let short = [
            (2048, 7, 32, 10),
            (3072, 8, 32, 11),
            (4096, 9, 34, 12),
            (6144, 10, 36, 13),
            (8192, 11, 37, 14),
        ];
        for (n, s, ell, runs) in short {
            t.insert(
                ProblemKind::DlpSafePrimeShort,
                n,
                TradeoffEntry {
                    s,
                    ell,
                    runs,
                    varsigma: 0,
                },
            );
        }
        let schnorr = [
            (2048, 7, 32, 10, 9),
            (3072, 8, 32, 11, 9),
            (4096, 9, 34, 12, 10),
            (6144, 10, 36, 13, 10),
            (8192, 11, 37, 14, 10),
        ];
        for (n, s, ell, runs, varsigma) in schnorr {
            t.insert(
                ProblemKind::DlpSchnorr,
                n,
                TradeoffEntry {
                    s,
                    ell,
                    runs,
                    varsigma,
                },
            );
        }
        t.audit().expect("built-in tradeoff table is consistent");
        t
    }

    pub fn insert(&mut self, kind: ProblemKind, n: u32, entry: TradeoffEntry) {
        self.entries.insert((kind, n), entry);
    }

    pub fn get(&self, kind: ProblemKind, n: u32) -> Option<&TradeoffEntry> {
        self.entries.get(&(kind, n))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(ProblemKind, u32), &TradeoffEntry)> {
        self.entries.iter()
    }

    /// Consistency audit: runs ≥ s ≥ 2, and ℓ = ⌈m/s⌉ wherever the exponent
    /// bound is computable (always for RSA and the general DLP; for the
    /// short-logarithm kinds only when the strength level is built in).
    pub fn audit(&self) -> Result<()> {
        for (&(kind, n), e) in &self.entries {
            if e.s < 2 {
                return Err(Error::Config(format!(
                    "tradeoff entry ({kind}, {n}): s must be ≥ 2, got {}",
                    e.s
                )));
            }
            if e.runs < e.s {
                return Err(Error::Config(format!(
                    "tradeoff entry ({kind}, {n}): runs {} < s {}",
                    e.runs, e.s
                )));
            }
            let inst = ProblemInstance::new(kind, n);
            let m = match exponent_bound(&inst) {
                Ok(m) => m,
                Err(_) => continue,
            };
            let expected = m.div_ceil(e.s);
            if e.ell != expected {
                return Err(Error::Config(format!(
                    "tradeoff entry ({kind}, {n}): ℓ = {} but ⌈m/s⌉ = ⌈{m}/{}⌉ = {expected}",
                    e.ell, e.s
                )));
            }
        }
        Ok(())
    }
}

/// Resolves a full parameterization for an instance, algorithm and mode.
pub fn parameterize(
    inst: &ProblemInstance,
    algorithm: ShorAlgorithm,
    mode: TradeoffMode,
    window: u32,
    table: &TradeoffTable,
) -> Result<ShorParameterization> {
    if window == 0 {
        return Err(Error::InvalidArgument("window size must be ≥ 1".into()));
    }
    let m = exponent_bound(inst)?;
    match mode {
        TradeoffMode::SingleRun => {
            let (ell, varsigma) = match algorithm {
                ShorAlgorithm::Ehs => {
                    if m <= SINGLE_RUN_DELTA {
                        return Err(Error::InvalidArgument(format!(
                            "m = {m} too small for single-run EHS (ℓ = m − {SINGLE_RUN_DELTA})"
                        )));
                    }
                    (m - SINGLE_RUN_DELTA, 0)
                }
                ShorAlgorithm::Es => (m, 0),
            };
            Ok(ShorParameterization {
                algorithm,
                m,
                mode,
                s: 1,
                ell,
                varsigma,
                runs: 1,
                window,
            })
        }
        TradeoffMode::Tradeoff => {
            let e = table.get(inst.kind, inst.n).ok_or_else(|| {
                Error::Config(format!(
                    "no tradeoff parameters for ({}, {}); supply them via a tradeoff table",
                    inst.kind, inst.n
                ))
            })?;
            if algorithm == ShorAlgorithm::Ehs && e.varsigma != 0 {
                return Err(Error::Config(format!(
                    "tradeoff entry ({}, {}) has ς = {} but EHS takes no ς",
                    inst.kind, inst.n, e.varsigma
                )));
            }
            Ok(ShorParameterization {
                algorithm,
                m,
                mode,
                s: e.s,
                ell: e.ell,
                varsigma: e.varsigma,
                runs: e.runs,
                window,
            })
        }
    }
}

/// EHS per-run calls: 2·⌈(m + 2ℓ)/w⌉.
pub fn per_run_ops_ehs(p: &ShorParameterization) -> u64 {
    2 * u64::from((p.m + 2 * p.ell).div_ceil(p.window))
}

/// ES per-run calls: 2·⌈(m + ς + ℓ)/w⌉.
pub fn per_run_ops_es(p: &ShorParameterization) -> u64 {
    2 * u64::from((p.m + p.varsigma + p.ell).div_ceil(p.window))
}

/// Per-run calls for the parameterization's algorithm.
pub fn per_run_ops(p: &ShorParameterization) -> u64 {
    match p.algorithm {
        ShorAlgorithm::Ehs => per_run_ops_ehs(p),
        ShorAlgorithm::Es => per_run_ops_es(p),
    }
}

/// Overall calls: per-run × runs.
pub fn overall_ops(p: &ShorParameterization) -> u64 {
    per_run_ops(p) * u64::from(p.runs)
}

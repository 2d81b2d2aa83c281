//! Scenario configuration and tradeoff-table ingestion.
//!
//! Two text formats live here, both line-oriented and tolerant of blank
//! lines and `#` comments:
//!
//! * flat `key = value` scenario files, one assignment per line — every CLI
//!   flag has an equivalent key, and flags win on conflict;
//! * tradeoff tables, one record per line: `kind n s ell runs [varsigma]`,
//!   fields separated by whitespace and/or commas.

use crate::error::{Error, Result};
use crate::lattice::ReductionModel;
use crate::numbers::ElementStyle;
use crate::report::RSelection;
use crate::shor::{ProblemInstance, ProblemKind, ShorAlgorithm, TradeoffEntry, TradeoffMode};
use std::collections::BTreeMap;

/// Parsed `key = value` assignments. Later assignments to the same key win.
#[derive(Debug, Clone, Default)]
pub struct KeyValues {
    values: BTreeMap<String, String>,
}

impl KeyValues {
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            }
            .trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Config(format!(
                    "line {}: expected `key = value`, got {raw:?}",
                    idx + 1
                )));
            };
            let key = key.trim();
            let value = value.trim();
            if key.is_empty() {
                return Err(Error::Config(format!("line {}: empty key", idx + 1)));
            }
            values.insert(key.to_string(), value.to_string());
        }
        Ok(KeyValues { values })
    }

    /// Removes and returns a key's value.
    pub fn take(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    /// Sets a key, replacing any file-supplied value (flags win).
    pub fn set(&mut self, key: &str, value: &str) {
        self.values.insert(key.to_string(), value.to_string());
    }

    /// Removes a key and parses it with the value's `FromStr`.
    pub fn take_parsed<T>(&mut self, key: &str) -> Result<Option<T>>
    where
        T: std::str::FromStr,
        T::Err: std::fmt::Display,
    {
        match self.values.remove(key) {
            None => Ok(None),
            Some(raw) => raw
                .parse()
                .map(Some)
                .map_err(|e| Error::Config(format!("key {key:?}: {e}"))),
        }
    }

    /// Errors if any keys were never consumed (catches typos).
    pub fn finish(self) -> Result<()> {
        if self.values.is_empty() {
            Ok(())
        } else {
            let keys: Vec<&str> = self.values.keys().map(|k| k.as_str()).collect();
            Err(Error::Config(format!("unknown keys: {}", keys.join(", "))))
        }
    }
}

/// A comparison scenario: the instances to cost and both sides' settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub instances: Vec<ProblemInstance>,
    pub reduction: ReductionModel,
    pub style: ElementStyle,
    pub k: u32,
    pub r: RSelection,
    pub shor_algorithm: Option<ShorAlgorithm>,
    pub shor_mode: TradeoffMode,
    /// Window size, applied to both the EGR k-part and the EHS/ES
    /// exponentiation.
    pub w: u32,
    pub tradeoff_file: Option<String>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            instances: vec![ProblemInstance::new(ProblemKind::RsaIfp, 2048)],
            reduction: ReductionModel::paper_bkz200(),
            style: ElementStyle::EgrPrimes,
            k: 0,
            r: RSelection::Auto,
            shor_algorithm: None,
            shor_mode: TradeoffMode::Tradeoff,
            w: 10,
            tradeoff_file: None,
        }
    }
}

impl ScenarioConfig {
    /// Parses a strict scenario file: every key must be recognized.
    ///
    /// Keys: `problem`, `n` (comma-separated list), `z`, `reduction`,
    /// `style`, `k`, `r`, `algorithm`, `mode`, `w`, `tradeoff-file`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv = KeyValues::parse(text)?;
        let cfg = Self::from_key_values(&mut kv)?;
        kv.finish()?;
        Ok(cfg)
    }

    /// Consumes the scenario keys from `kv`, leaving any others in place.
    pub fn from_key_values(kv: &mut KeyValues) -> Result<Self> {
        let mut cfg = ScenarioConfig::default();
        let kind: ProblemKind = kv
            .take_parsed::<ProblemKind>("problem")?
            .unwrap_or(ProblemKind::RsaIfp);
        let z: Option<u32> = kv.take_parsed("z")?;
        let ns: Vec<u32> = match kv.take("n") {
            None => vec![2048],
            Some(raw) => {
                let mut ns = Vec::new();
                for piece in raw.split(',') {
                    let piece = piece.trim();
                    if piece.is_empty() {
                        continue;
                    }
                    let n: u32 = piece
                        .parse()
                        .map_err(|_| Error::Config(format!("invalid n value {piece:?}")))?;
                    if n < 16 {
                        return Err(Error::Config(format!("n must be ≥ 16, got {n}")));
                    }
                    ns.push(n);
                }
                if ns.is_empty() {
                    return Err(Error::Config("key \"n\": empty list".into()));
                }
                ns
            }
        };
        cfg.instances = ns
            .into_iter()
            .map(|n| ProblemInstance { kind, n, z })
            .collect();
        if let Some(m) = kv.take_parsed("reduction")? {
            cfg.reduction = m;
        }
        if let Some(style) = kv.take_parsed("style")? {
            cfg.style = style;
        }
        if let Some(k) = kv.take_parsed("k")? {
            cfg.k = k;
        }
        if let Some(r) = kv.take_parsed("r")? {
            cfg.r = r;
        }
        cfg.shor_algorithm = kv.take_parsed("algorithm")?;
        if let Some(mode) = kv.take_parsed("mode")? {
            cfg.shor_mode = mode;
        }
        if let Some(w) = kv.take_parsed::<u32>("w")? {
            if w == 0 {
                return Err(Error::Config("w must be ≥ 1".into()));
            }
            cfg.w = w;
        }
        cfg.tradeoff_file = kv.take("tradeoff-file");
        Ok(cfg)
    }
}

/// Parses the tradeoff-table wire format: one record per line,
/// `kind n s ell runs [varsigma]`, comma- and/or whitespace-separated.
pub fn parse_tradeoff_table(text: &str) -> Result<Vec<(ProblemKind, u32, TradeoffEntry)>> {
    let mut rows = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != 5 && fields.len() != 6 {
            return Err(Error::Config(format!(
                "line {}: expected `kind n s ell runs [varsigma]`, got {} fields",
                idx + 1,
                fields.len()
            )));
        }
        let kind: ProblemKind = fields[0]
            .parse()
            .map_err(|e: Error| Error::Config(format!("line {}: {e}", idx + 1)))?;
        let num = |field: &str, name: &str| -> Result<u32> {
            field
                .parse()
                .map_err(|_| Error::Config(format!("line {}: invalid {name} {field:?}", idx + 1)))
        };
        let n = num(fields[1], "n")?;
        let s = num(fields[2], "s")?;
        let ell = num(fields[3], "ell")?;
        let runs = num(fields[4], "runs")?;
        let varsigma = if fields.len() == 6 {
            num(fields[5], "varsigma")?
        } else {
            0
        };
        rows.push((
            kind,
            n,
            TradeoffEntry {
                s,
                ell,
                runs,
                varsigma,
            },
        ));
    }
    Ok(rows)
}

//! Comparison rows, table reproduction and crossover search.
//!
//! Ratios are carried as exact integer pairs and only rounded at the
//! display boundary (three significant figures), so rendering never feeds
//! back into a comparison.

use crate::error::{Error, Result};
use crate::lattice::ReductionModel;
use crate::numbers::ElementStyle;
use crate::regev::{
    self, min_c, optimize, per_run_ops, perfect_params, CostBreakdown, RegevParameterization,
    RunCount, DEFAULT_R_CANDIDATES,
};
use crate::shor::{
    self, exponent_bound, parameterize, ProblemInstance, ProblemKind, ShorAlgorithm,
    ShorParameterization, TradeoffEntry, TradeoffMode, TradeoffTable,
};
use std::fmt;
use std::str::FromStr;

/// Modulus sizes covered by the built-in tables.
pub const TABLE_NS: [u32; 5] = [2048, 3072, 4096, 6144, 8192];

/// Fibonacci order selection: a fixed r, or the exhaustive search over the
/// default candidate range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RSelection {
    Fixed(u32),
    Auto,
}

impl RSelection {
    pub fn candidates(self) -> Vec<u32> {
        match self {
            RSelection::Fixed(r) => vec![r],
            RSelection::Auto => DEFAULT_R_CANDIDATES.collect(),
        }
    }
}

impl fmt::Display for RSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RSelection::Fixed(r) => write!(f, "{r}"),
            RSelection::Auto => write!(f, "auto"),
        }
    }
}

impl FromStr for RSelection {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "auto" {
            return Ok(RSelection::Auto);
        }
        let r: u32 = s.parse().map_err(|_| {
            Error::Config(format!(
                "invalid r selection {s:?} (expected auto or an integer ≥ 1)"
            ))
        })?;
        if r == 0 {
            return Err(Error::Config("r must be ≥ 1".into()));
        }
        Ok(RSelection::Fixed(r))
    }
}

/// Regev-side scenario: reduction model, element style, arbitrary-element
/// count k, window size for the k-part, and the r selection.
#[derive(Debug, Clone, PartialEq)]
pub struct RegevConfig {
    pub model: ReductionModel,
    pub style: ElementStyle,
    pub arbitrary_elements: u32,
    pub window: u32,
    pub r: RSelection,
}

impl Default for RegevConfig {
    fn default() -> Self {
        RegevConfig {
            model: ReductionModel::Lll,
            style: ElementStyle::EgrPrimes,
            arbitrary_elements: 0,
            window: 10,
            r: RSelection::Auto,
        }
    }
}

impl RegevConfig {
    /// Resolves the full parameterization for modulus size n.
    pub fn resolve(&self, n: u32) -> Result<RegevParameterization> {
        if self.model == ReductionModel::Perfect {
            if !matches!(self.r, RSelection::Auto | RSelection::Fixed(1)) {
                return Err(Error::Config(
                    "perfect reduction admits only r = 1 (larger r merely restricts d)".into(),
                ));
            }
            let mut p = perfect_params(n, self.style)?;
            p.arbitrary_elements = self.arbitrary_elements;
            p.window = self.window;
            return Ok(p);
        }
        optimize(
            n,
            &self.model,
            self.style,
            self.arbitrary_elements,
            self.window,
            self.r.candidates(),
        )
    }
}

/// Shor-side scenario. `algorithm: None` picks the conventional variation
/// for the problem kind (EHS for RSA and short DLP, ES otherwise).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShorConfig {
    pub algorithm: Option<ShorAlgorithm>,
    pub mode: TradeoffMode,
    pub window: u32,
}

impl Default for ShorConfig {
    fn default() -> Self {
        ShorConfig {
            algorithm: None,
            mode: TradeoffMode::Tradeoff,
            window: 10,
        }
    }
}

/// Overall advantage; unbounded when the Regev-side run count is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Advantage {
    Finite(f64),
    Unbounded,
}

impl fmt::Display for Advantage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Advantage::Finite(x) => write!(f, "{}", format_sig3(*x)),
            Advantage::Unbounded => write!(f, "inf"),
        }
    }
}

/// One comparison: a Regev-side and a Shor-side parameterization of the same
/// problem instance, with their multiplication counts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub instance: ProblemInstance,
    /// Strength level, resolved for the DLP kinds (display only).
    pub strength: Option<u32>,
    pub regev: RegevParameterization,
    pub regev_cost: CostBreakdown,
    pub shor: ShorParameterization,
    pub shor_per_run: u64,
    pub shor_overall: u64,
}

impl ComparisonRow {
    /// Regev-side per-run calls divided by Shor-side per-run calls.
    pub fn adv_per_run(&self) -> f64 {
        self.regev_cost.per_run_ops as f64 / self.shor_per_run as f64
    }

    /// Overall-ops ratio, unbounded in the perfect-reduction limit.
    pub fn adv_overall(&self) -> Advantage {
        match self.regev_cost.overall_ops {
            Some(total) => Advantage::Finite(total as f64 / self.shor_overall as f64),
            None => Advantage::Unbounded,
        }
    }

    /// Exact predicate for "the Regev side wins per run".
    pub fn regev_has_per_run_advantage(&self) -> bool {
        self.regev_cost.per_run_ops < self.shor_per_run
    }
}

/// Assembles a comparison row for one instance.
pub fn build_comparison(
    instance: ProblemInstance,
    regev_cfg: &RegevConfig,
    shor_cfg: &ShorConfig,
    table: &TradeoffTable,
) -> Result<ComparisonRow> {
    let regev = regev_cfg.resolve(instance.n)?;
    let regev_cost = per_run_ops(&regev)?;
    let algorithm = shor_cfg
        .algorithm
        .unwrap_or_else(|| ShorAlgorithm::default_for(instance.kind));
    let shor = parameterize(&instance, algorithm, shor_cfg.mode, shor_cfg.window, table)?;
    let strength = match instance.kind {
        ProblemKind::RsaIfp => None,
        _ => Some(instance.strength_level()?),
    };
    Ok(ComparisonRow {
        instance,
        strength,
        regev,
        regev_cost,
        shor,
        shor_per_run: shor::per_run_ops(&shor),
        shor_overall: shor::overall_ops(&shor),
    })
}

/// `x` rounded to three significant figures, rendered without exponent.
pub fn format_sig3(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = 2 - magnitude;
    if decimals <= 0 {
        let scale = 10f64.powi(-decimals);
        format!("{}", (x / scale).round() * scale)
    } else {
        format!("{:.*}", decimals as usize, x)
    }
}

/// One rendered line of a reproduced table: the comparison plus its table id
/// and sub-block label (tables 3 and 5 carry two parameter regimes each).
#[derive(Debug, Clone)]
pub struct TableRow {
    pub table: u8,
    pub block: &'static str,
    pub row: ComparisonRow,
}

fn rsa_instances() -> impl Iterator<Item = ProblemInstance> {
    TABLE_NS
        .iter()
        .map(|&n| ProblemInstance::new(ProblemKind::RsaIfp, n))
}

/// Baseline parameterization: d = ⌈√n⌉, m = d + 4, LLL, r = 1.
pub fn regev_baseline(n: u32) -> Result<RegevParameterization> {
    let log2_gamma = ReductionModel::Lll.log2_gamma()?.finite()?;
    let d = f64::from(n).sqrt().ceil() as u32;
    let m = d + 4;
    let c = min_c(n, d, m, log2_gamma);
    let log_d = regev::log_d_of(c, n, d);
    Ok(RegevParameterization {
        n,
        d,
        m: RunCount::Bounded(m),
        c_milli: (c * 1000.0).round() as u32,
        log_d,
        r: 1,
        s: 1,
        k_index: crate::numbers::k_max(1, log_d)?,
        arbitrary_elements: 0,
        window: 10,
        style: ElementStyle::EgrPrimes,
    })
}

fn baseline_row(
    instance: ProblemInstance,
    shor_cfg: &ShorConfig,
    table: &TradeoffTable,
) -> Result<ComparisonRow> {
    let regev = regev_baseline(instance.n)?;
    let regev_cost = per_run_ops(&regev)?;
    let shor = parameterize(
        &instance,
        ShorAlgorithm::Ehs,
        shor_cfg.mode,
        shor_cfg.window,
        table,
    )?;
    Ok(ComparisonRow {
        instance,
        strength: None,
        regev,
        regev_cost,
        shor,
        shor_per_run: shor::per_run_ops(&shor),
        shor_overall: shor::overall_ops(&shor),
    })
}

/// The BKZ-calibrated Regev configuration shared by the primary comparisons.
fn bkz_regev(r: RSelection, k: u32) -> RegevConfig {
    RegevConfig {
        model: ReductionModel::paper_bkz200(),
        style: ElementStyle::EgrPrimes,
        arbitrary_elements: k,
        window: 10,
        r,
    }
}

fn shor_single(w: u32) -> ShorConfig {
    ShorConfig {
        algorithm: None,
        mode: TradeoffMode::SingleRun,
        window: w,
    }
}

fn shor_tradeoff(w: u32) -> ShorConfig {
    ShorConfig {
        algorithm: None,
        mode: TradeoffMode::Tradeoff,
        window: w,
    }
}

/// Rows of one reproduced table, ordered by (block, n, single→tradeoff).
pub fn table_rows(id: u8) -> Result<Vec<TableRow>> {
    let table = TradeoffTable::builtin();
    let mut rows = Vec::new();
    let mut push = |tid: u8, block: &'static str, row: ComparisonRow| {
        rows.push(TableRow {
            table: tid,
            block,
            row,
        })
    };
    match id {
        // Baseline: d = ⌈√n⌉, m = d + 4, LLL, r = 1, no windowing anywhere.
        1 => {
            for inst in rsa_instances() {
                push(1, "", baseline_row(inst, &shor_single(1), &table)?);
                push(1, "", baseline_row(inst, &shor_tradeoff(1), &table)?);
            }
        }
        // LLL, r = 1, optimal d and m; EHS windowed.
        2 => {
            let cfg = RegevConfig {
                model: ReductionModel::Lll,
                r: RSelection::Fixed(1),
                ..RegevConfig::default()
            };
            for inst in rsa_instances() {
                push(
                    2,
                    "",
                    build_comparison(inst, &cfg, &shor_single(10), &table)?,
                );
                push(
                    2,
                    "",
                    build_comparison(inst, &cfg, &shor_tradeoff(10), &table)?,
                );
            }
        }
        // Calibrated BKZ-200 in two regimes: r pinned to 1, then free r.
        3 => {
            for (block, r) in [("r=1", RSelection::Fixed(1)), ("opt-r", RSelection::Auto)] {
                let cfg = bkz_regev(r, 0);
                for inst in rsa_instances() {
                    push(
                        3,
                        block,
                        build_comparison(inst, &cfg, &shor_single(10), &table)?,
                    );
                    push(
                        3,
                        block,
                        build_comparison(inst, &cfg, &shor_tradeoff(10), &table)?,
                    );
                }
            }
        }
        // LLL with free r.
        4 => {
            let cfg = RegevConfig {
                model: ReductionModel::Lll,
                ..RegevConfig::default()
            };
            for inst in rsa_instances() {
                push(
                    4,
                    "",
                    build_comparison(inst, &cfg, &shor_single(10), &table)?,
                );
                push(
                    4,
                    "",
                    build_comparison(inst, &cfg, &shor_tradeoff(10), &table)?,
                );
            }
        }
        // Perfect reduction, both element styles, against EHS with tradeoffs.
        5 => {
            for (block, style) in [
                ("squared", ElementStyle::RegevSquaredPrimes),
                ("egr", ElementStyle::EgrPrimes),
            ] {
                let cfg = RegevConfig {
                    model: ReductionModel::Perfect,
                    style,
                    ..RegevConfig::default()
                };
                for inst in rsa_instances() {
                    push(
                        5,
                        block,
                        build_comparison(inst, &cfg, &shor_tradeoff(10), &table)?,
                    );
                }
            }
        }
        // DLP comparisons: EGR with k = 1 against ES / EHS / ES.
        6..=8 => {
            let kind = match id {
                6 => ProblemKind::DlpSafePrimeGeneral,
                7 => ProblemKind::DlpSafePrimeShort,
                _ => ProblemKind::DlpSchnorr,
            };
            let cfg = bkz_regev(RSelection::Auto, 1);
            for &n in TABLE_NS.iter() {
                let inst = ProblemInstance::new(kind, n);
                push(
                    id,
                    "",
                    build_comparison(inst, &cfg, &shor_single(10), &table)?,
                );
                push(
                    id,
                    "",
                    build_comparison(inst, &cfg, &shor_tradeoff(10), &table)?,
                );
            }
        }
        other => {
            return Err(Error::Config(format!(
                "no such table: {other} (expected 1..=8)"
            )))
        }
    }
    Ok(rows)
}

const TABLE_TITLES: [&str; 8] = [
    "RSA IFP: baseline (LLL, r = 1, d = ceil(sqrt n), m = d + 4; no windowing)",
    "RSA IFP: LLL, r = 1, optimal d and m; EHS windowed (w = 10)",
    "RSA IFP: calibrated BKZ-200, r = 1 and free r; EHS windowed (w = 10)",
    "RSA IFP: LLL, free r; EHS windowed (w = 10)",
    "RSA IFP: perfect reduction (squared primes vs. plain primes); EHS with tradeoffs",
    "General DLP in safe-prime groups: EGR (k = 1) vs. ES (w = 10)",
    "Short DLP in safe-prime groups: EGR (k = 1) vs. EHS (w = 10)",
    "DLP in Schnorr groups: EGR (k = 1) vs. ES (w = 10)",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Csv,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "md" | "markdown" => Ok(TableFormat::Markdown),
            "csv" => Ok(TableFormat::Csv),
            other => Err(Error::Config(format!(
                "unknown format {other:?} (expected md or csv)"
            ))),
        }
    }
}

pub const CSV_HEADER: &str = "table,block,problem,n,z,d,m,c,log_d,k_index,r,regev_per_run,\
regev_overall,algorithm,shor_m,mode,s,varsigma,ell,runs,shor_per_run,shor_overall,\
adv_per_run,adv_overall";

fn csv_line(tr: &TableRow) -> String {
    let r = &tr.row;
    let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
    let m = match r.regev.m {
        RunCount::Bounded(m) => m.to_string(),
        RunCount::Unbounded => "inf".into(),
    };
    let overall = r
        .regev_cost
        .overall_ops
        .map(|x| x.to_string())
        .unwrap_or_else(|| "inf".into());
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        tr.table,
        tr.block,
        r.instance.kind,
        r.instance.n,
        opt(r.strength),
        r.regev.d,
        m,
        r.regev.c_display(),
        r.regev.log_d,
        r.regev.k_index,
        r.regev.r,
        r.regev_cost.per_run_ops,
        overall,
        r.shor.algorithm,
        r.shor.m,
        r.shor.mode,
        if r.shor.mode == TradeoffMode::SingleRun {
            "-".into()
        } else {
            r.shor.s.to_string()
        },
        r.shor.varsigma,
        r.shor.ell,
        r.shor.runs,
        r.shor_per_run,
        r.shor_overall,
        format_sig3(r.adv_per_run()),
        r.adv_overall(),
    )
}

fn markdown_table(id: u8, rows: &[TableRow]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "## Table {id}: {}\n\n",
        TABLE_TITLES[id as usize - 1]
    ));
    let dlp = matches!(id, 6..=8);
    let mut header = String::from("| block | n |");
    if dlp {
        header.push_str(" z |");
    }
    header.push_str(" d | m | C | log D | K | r | EGR/run | EGR total |");
    header.push_str(" alg | m | s | ς | ℓ | runs | ops/run | ops total | adv/run | adv total |");
    out.push_str(&header);
    out.push('\n');
    let cols = header.matches('|').count() - 1;
    out.push_str(&format!("|{}\n", "---|".repeat(cols)));
    for tr in rows {
        let r = &tr.row;
        let m = match r.regev.m {
            RunCount::Bounded(m) => m.to_string(),
            RunCount::Unbounded => "inf".into(),
        };
        let overall = r
            .regev_cost
            .overall_ops
            .map(|x| x.to_string())
            .unwrap_or_else(|| "inf".into());
        let mut line = format!("| {} | {} |", tr.block, r.instance.n);
        if dlp {
            line.push_str(&format!(
                " {} |",
                r.strength.map(|z| z.to_string()).unwrap_or_default()
            ));
        }
        line.push_str(&format!(
            " {} | {} | {} | {} | {} | {} | {} | {} |",
            r.regev.d,
            m,
            r.regev.c_display(),
            r.regev.log_d,
            r.regev.k_index,
            r.regev.r,
            r.regev_cost.per_run_ops,
            overall,
        ));
        line.push_str(&format!(
            " {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            r.shor.algorithm,
            r.shor.m,
            if r.shor.mode == TradeoffMode::SingleRun {
                "-".into()
            } else {
                r.shor.s.to_string()
            },
            r.shor.varsigma,
            r.shor.ell,
            r.shor.runs,
            r.shor_per_run,
            r.shor_overall,
            format_sig3(r.adv_per_run()),
            r.adv_overall(),
        ));
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Regenerates the requested comparison tables (ids 1..=8) in the requested
/// format. Ids are rendered in ascending order; duplicates are ignored.
pub fn reproduce_paper_tables(which: &[u8], format: TableFormat) -> Result<String> {
    let mut ids: Vec<u8> = which.to_vec();
    ids.sort_unstable();
    ids.dedup();
    let mut out = String::new();
    match format {
        TableFormat::Csv => {
            if ids.is_empty() {
                return Ok(out);
            }
            out.push_str(CSV_HEADER);
            out.push('\n');
            for id in ids {
                for tr in table_rows(id)? {
                    out.push_str(&csv_line(&tr));
                    out.push('\n');
                }
            }
        }
        TableFormat::Markdown => {
            for id in ids {
                let rows = table_rows(id)?;
                out.push_str(&markdown_table(id, &rows));
                out.push('\n');
            }
        }
    }
    Ok(out)
}

/// Source of tradeoff tuples for the crossover scan.
pub trait TradeoffProvider {
    fn tradeoff(&self, kind: ProblemKind, n: u32) -> Option<TradeoffEntry>;
}

impl TradeoffProvider for TradeoffTable {
    fn tradeoff(&self, kind: ProblemKind, n: u32) -> Option<TradeoffEntry> {
        self.get(kind, n).copied()
    }
}

/// One probed point of a crossover scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossoverPoint {
    pub n: u32,
    pub regev_per_run: u64,
    pub shor_per_run: u64,
}

impl CrossoverPoint {
    pub fn regev_has_advantage(&self) -> bool {
        self.regev_per_run < self.shor_per_run
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossoverReport {
    pub trajectory: Vec<CrossoverPoint>,
    /// Smallest probed n at which the Regev side needs strictly fewer
    /// per-run calls, if any.
    pub crossover_n: Option<u32>,
}

/// Scans n = n_start, n_start + n_step, … ≤ n_limit and reports where the
/// Regev-side per-run count first drops below the Shor-side count. The
/// provider must supply tradeoff tuples for every probed n (tradeoff mode).
pub fn crossover_search(
    kind: ProblemKind,
    regev_cfg: &RegevConfig,
    shor_cfg: &ShorConfig,
    provider: &dyn TradeoffProvider,
    n_start: u32,
    n_step: u32,
    n_limit: u32,
) -> Result<CrossoverReport> {
    if n_step == 0 {
        return Err(Error::InvalidArgument("step must be ≥ 1".into()));
    }
    if n_limit < n_start {
        return Err(Error::InvalidArgument(format!(
            "empty scan range: start {n_start} > limit {n_limit}"
        )));
    }
    let mut trajectory = Vec::new();
    let mut crossover_n = None;
    let mut n = n_start;
    while n <= n_limit {
        let inst = ProblemInstance::new(kind, n);
        let regev = regev_cfg.resolve(n)?;
        let regev_per_run = per_run_ops(&regev)?.per_run_ops;
        let algorithm = shor_cfg
            .algorithm
            .unwrap_or_else(|| ShorAlgorithm::default_for(kind));
        let shor = match shor_cfg.mode {
            TradeoffMode::SingleRun => parameterize(
                &inst,
                algorithm,
                shor_cfg.mode,
                shor_cfg.window,
                &TradeoffTable::empty(),
            )?,
            TradeoffMode::Tradeoff => {
                let entry = provider.tradeoff(kind, n).ok_or_else(|| {
                    Error::Config(format!("tradeoff provider has no entry for ({kind}, {n})"))
                })?;
                let m = exponent_bound(&inst)?;
                let expected = m.div_ceil(entry.s);
                if entry.ell != expected {
                    return Err(Error::Config(format!(
                        "provider entry ({kind}, {n}): ℓ = {} but ⌈m/s⌉ = {expected}",
                        entry.ell
                    )));
                }
                ShorParameterization {
                    algorithm,
                    m,
                    mode: TradeoffMode::Tradeoff,
                    s: entry.s,
                    ell: entry.ell,
                    varsigma: entry.varsigma,
                    runs: entry.runs,
                    window: shor_cfg.window,
                }
            }
        };
        let point = CrossoverPoint {
            n,
            regev_per_run,
            shor_per_run: shor::per_run_ops(&shor),
        };
        if crossover_n.is_none() && point.regev_has_advantage() {
            crossover_n = Some(n);
        }
        trajectory.push(point);
        n += n_step;
    }
    Ok(CrossoverReport {
        trajectory,
        crossover_n,
    })
}

/// Number of sign changes of (advantage − 1) along a trajectory, counting
/// only strict flips of the exact integer comparison.
pub fn sign_changes(trajectory: &[CrossoverPoint]) -> usize {
    trajectory
        .windows(2)
        .filter(|w| w[0].regev_has_advantage() != w[1].regev_has_advantage())
        .count()
}

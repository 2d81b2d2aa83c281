//! Command-line front end.
//!
//! Every flag has a config-file equivalent (flat `key = value` lines; see
//! [`mulcount::config`]); explicit flags win over file values. Exit codes:
//! 0 on success, 1 on configuration errors (including usage errors), 2 on
//! internal invariant violations.

use clap::{Args, Parser, Subcommand};
use mulcount::config::{parse_tradeoff_table, KeyValues, ScenarioConfig};
use mulcount::error::Error;
use mulcount::lattice::ReductionModel;
use mulcount::numbers::ElementStyle;
use mulcount::regev::{per_run_ops, RunCount};
use mulcount::report::{
    build_comparison, crossover_search, format_sig3, reproduce_paper_tables, ComparisonRow,
    RSelection, RegevConfig, ShorConfig, TableFormat, CSV_HEADER,
};
use mulcount::shor::{
    self, parameterize, success_probability_note, ProblemInstance, ProblemKind, ShorAlgorithm,
    TradeoffMode, TradeoffTable,
};
use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "mulcount",
    version,
    about = "Multiplication-call cost models for quantum factoring and discrete-log algorithms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cost a Regev-style (EGR) parameterization for one modulus size.
    EstimateRegev(EstimateRegevArgs),
    /// Cost an Ekerå–Håstad or Ekerå parameterization for one instance.
    EstimateShor(EstimateShorArgs),
    /// Compare both sides over one or more instances.
    Compare(CompareArgs),
    /// Regenerate the built-in comparison tables.
    Tables(TablesArgs),
    /// Scan modulus sizes for the per-run cost crossover.
    Crossover(CrossoverArgs),
    /// Emulate an exponentiation schedule against the counting oracle.
    Emulate(EmulateArgs),
}

#[derive(Args)]
struct ConfigArg {
    /// Flat key = value configuration file; flags override its values.
    #[arg(long, value_name = "FILE")]
    config: Option<String>,
}

#[derive(Args)]
struct EstimateRegevArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// Modulus bit length.
    #[arg(long)]
    n: Option<u32>,
    /// Reduction model: lll, perfect, paper-bkz200, bkz:BLOCK, delta:VALUE.
    #[arg(long)]
    reduction: Option<String>,
    /// Element style: egr (first d primes) or regev (their squares).
    #[arg(long)]
    style: Option<String>,
    /// Fibonacci order: auto or a fixed integer ≥ 1.
    #[arg(long)]
    r: Option<String>,
    /// Number of arbitrarily selected elements.
    #[arg(long)]
    k: Option<u32>,
    /// Window size for the arbitrary-element part.
    #[arg(long)]
    w: Option<u32>,
}

#[derive(Args)]
struct EstimateShorArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// Algorithm: ehs or es (default: conventional choice for the problem).
    #[arg(long)]
    algorithm: Option<String>,
    /// Problem kind: rsa, dlp-general, dlp-short, dlp-schnorr.
    #[arg(long)]
    problem: Option<String>,
    /// Modulus bit length.
    #[arg(long)]
    n: Option<u32>,
    /// Strength level override for n outside the built-in set.
    #[arg(long)]
    z: Option<u32>,
    /// Solve mode: single or tradeoff.
    #[arg(long)]
    mode: Option<String>,
    /// Window size.
    #[arg(long)]
    w: Option<u32>,
    /// Extra tradeoff records merged over the built-in table.
    #[arg(long, value_name = "FILE")]
    tradeoff_file: Option<String>,
}

#[derive(Args)]
struct CompareArgs {
    /// Scenario file (alias for --config).
    #[arg(long, value_name = "FILE")]
    scenario: Option<String>,
    #[command(flatten)]
    config: ConfigArg,
    #[arg(long)]
    problem: Option<String>,
    /// Comma-separated modulus bit lengths.
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    z: Option<u32>,
    #[arg(long)]
    reduction: Option<String>,
    #[arg(long)]
    style: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    algorithm: Option<String>,
    #[arg(long)]
    w: Option<u32>,
    #[arg(long, value_name = "FILE")]
    tradeoff_file: Option<String>,
    /// Output format: md or csv.
    #[arg(long)]
    format: Option<String>,
    /// Write output to a file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Args)]
struct TablesArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// Table selection, e.g. "3", "1,4", "2-5" or "all".
    #[arg(long)]
    which: Option<String>,
    /// Output format: md or csv.
    #[arg(long)]
    format: Option<String>,
    /// Write output to a file instead of standard output.
    #[arg(long, value_name = "PATH")]
    out: Option<String>,
}

#[derive(Args)]
struct CrossoverArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// Extra tradeoff records merged over the built-in table.
    #[arg(long, value_name = "FILE")]
    tradeoff_file: Option<String>,
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    reduction: Option<String>,
    #[arg(long)]
    style: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    mode: Option<String>,
    #[arg(long)]
    w: Option<u32>,
    /// First probed modulus size.
    #[arg(long)]
    start: Option<u32>,
    /// Probe step in bits.
    #[arg(long)]
    step: Option<u32>,
    /// Last probed modulus size.
    #[arg(long)]
    limit: Option<u32>,
}

#[derive(Args)]
struct EmulateArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// Schedule: binary, ehs or fib-identity.
    #[arg(long)]
    schedule: Option<String>,
    /// Size of the emulated run: exponent bits for binary/ehs, log D for
    /// fib-identity.
    #[arg(long)]
    bits: Option<u32>,
    /// 64-bit seed for the deterministic input generator.
    #[arg(long)]
    seed: Option<u64>,
    /// Window size (ehs schedule).
    #[arg(long)]
    w: Option<u32>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::Invariant(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
        Err(_) => {
            eprintln!("error: internal invariant violation (panic)");
            ExitCode::from(2)
        }
    }
}

type Result<T> = std::result::Result<T, Error>;

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::EstimateRegev(args) => estimate_regev(args),
        Command::EstimateShor(args) => estimate_shor(args),
        Command::Compare(args) => compare(args),
        Command::Tables(args) => tables(args),
        Command::Crossover(args) => crossover(args),
        Command::Emulate(args) => emulate(args),
    }
}

fn load_kv(path: Option<&str>) -> Result<KeyValues> {
    match path {
        None => Ok(KeyValues::default()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
            KeyValues::parse(&text)
        }
    }
}

/// Flag value if given, else the config-file value, else the default.
fn merged<T>(flag: Option<T>, kv: &mut KeyValues, key: &str, default: T) -> Result<T>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => {
            kv.take(key);
            Ok(v)
        }
        None => Ok(kv.take_parsed(key)?.unwrap_or(default)),
    }
}

fn merged_opt<T>(flag: Option<T>, kv: &mut KeyValues, key: &str) -> Result<Option<T>>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => {
            kv.take(key);
            Ok(Some(v))
        }
        None => kv.take_parsed(key),
    }
}

fn parse_flag<T>(raw: Option<String>, what: &str) -> Result<Option<T>>
where
    T: FromStr<Err = Error>,
{
    raw.map(|s| {
        s.parse()
            .map_err(|e: Error| Error::Config(format!("--{what}: {e}")))
    })
    .transpose()
}

fn emit(out: Option<&str>, text: &str) -> Result<()> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {path}: {e}"))),
    }
}

fn load_tradeoffs(path: Option<&str>) -> Result<TradeoffTable> {
    let mut table = TradeoffTable::builtin();
    if let Some(path) = path {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {path}: {e}")))?;
        for (kind, n, entry) in parse_tradeoff_table(&text)? {
            table.insert(kind, n, entry);
        }
        table.audit()?;
    }
    Ok(table)
}

fn estimate_regev(args: EstimateRegevArgs) -> Result<()> {
    let mut kv = load_kv(args.config.config.as_deref())?;
    let n = merged(args.n, &mut kv, "n", 2048)?;
    let reduction = merged(
        parse_flag::<ReductionModel>(args.reduction, "reduction")?,
        &mut kv,
        "reduction",
        ReductionModel::paper_bkz200(),
    )?;
    let style = merged(
        parse_flag::<ElementStyle>(args.style, "style")?,
        &mut kv,
        "style",
        ElementStyle::EgrPrimes,
    )?;
    let r = merged(
        parse_flag::<RSelection>(args.r, "r")?,
        &mut kv,
        "r",
        RSelection::Auto,
    )?;
    let k = merged(args.k, &mut kv, "k", 0)?;
    let w = merged(args.w, &mut kv, "w", 10)?;
    kv.finish()?;

    let cfg = RegevConfig {
        model: reduction,
        style,
        arbitrary_elements: k,
        window: w,
        r,
    };
    let p = cfg.resolve(n)?;
    let cost = per_run_ops(&p)?;
    let mut out = String::new();
    writeln!(out, "problem size n: {n}").unwrap();
    writeln!(out, "reduction: {}", cfg.model).unwrap();
    writeln!(out, "style: {}", p.style).unwrap();
    writeln!(out, "r: {} (s = {})", p.r, p.s).unwrap();
    writeln!(out, "d: {}", p.d).unwrap();
    writeln!(out, "m (runs): {}", p.m).unwrap();
    writeln!(out, "C: {}", p.c_display()).unwrap();
    writeln!(out, "log D: {}", p.log_d).unwrap();
    writeln!(out, "K: {}", p.k_index).unwrap();
    writeln!(
        out,
        "k (arbitrary elements): {} (window {})",
        p.arbitrary_elements, p.window
    )
    .unwrap();
    writeln!(
        out,
        "multiplications per run: {} (fibonacci part {}, arbitrary-element part {})",
        cost.per_run_ops, cost.fib_part, cost.k_part
    )
    .unwrap();
    match cost.overall_ops {
        Some(total) => writeln!(out, "multiplications overall: {total}").unwrap(),
        None => writeln!(
            out,
            "multiplications overall: unbounded (m grows without limit)"
        )
        .unwrap(),
    }
    emit(None, &out)
}

fn estimate_shor(args: EstimateShorArgs) -> Result<()> {
    let mut kv = load_kv(args.config.config.as_deref())?;
    let problem = merged(
        parse_flag::<ProblemKind>(args.problem, "problem")?,
        &mut kv,
        "problem",
        ProblemKind::RsaIfp,
    )?;
    let n = merged(args.n, &mut kv, "n", 2048)?;
    let z = merged_opt(args.z, &mut kv, "z")?;
    let algorithm = merged_opt(
        parse_flag::<ShorAlgorithm>(args.algorithm, "algorithm")?,
        &mut kv,
        "algorithm",
    )?
    .unwrap_or_else(|| ShorAlgorithm::default_for(problem));
    let mode = merged(
        parse_flag::<TradeoffMode>(args.mode, "mode")?,
        &mut kv,
        "mode",
        TradeoffMode::Tradeoff,
    )?;
    let w = merged(args.w, &mut kv, "w", 10)?;
    let tradeoff_file = match args.tradeoff_file {
        Some(f) => {
            kv.take("tradeoff-file");
            Some(f)
        }
        None => kv.take("tradeoff-file"),
    };
    kv.finish()?;

    let table = load_tradeoffs(tradeoff_file.as_deref())?;
    let inst = ProblemInstance {
        kind: problem,
        n,
        z,
    };
    let p = parameterize(&inst, algorithm, mode, w, &table)?;
    let mut out = String::new();
    writeln!(out, "problem: {problem} (n = {n})").unwrap();
    writeln!(out, "algorithm: {algorithm}").unwrap();
    writeln!(out, "mode: {mode}").unwrap();
    writeln!(out, "m: {}", p.m).unwrap();
    writeln!(
        out,
        "s: {}, ell: {}, runs: {}, varsigma: {}",
        if p.mode == TradeoffMode::SingleRun {
            "-".to_string()
        } else {
            p.s.to_string()
        },
        p.ell,
        p.runs,
        p.varsigma
    )
    .unwrap();
    writeln!(out, "window: {}", p.window).unwrap();
    writeln!(out, "multiplications per run: {}", shor::per_run_ops(&p)).unwrap();
    writeln!(out, "multiplications overall: {}", shor::overall_ops(&p)).unwrap();
    writeln!(
        out,
        "success probability: {}",
        success_probability_note(mode)
    )
    .unwrap();
    emit(None, &out)
}

fn comparison_markdown(rows: &[ComparisonRow]) -> String {
    let mut out = String::new();
    out.push_str(
        "| problem | n | d | m | C | log D | K | r | EGR/run | EGR total | alg | m | s | ς | ℓ | runs | ops/run | ops total | adv/run | adv total |\n",
    );
    out.push_str(&"|---".repeat(20));
    out.push_str("|\n");
    for r in rows {
        let m = match r.regev.m {
            RunCount::Bounded(m) => m.to_string(),
            RunCount::Unbounded => "inf".into(),
        };
        let overall = r
            .regev_cost
            .overall_ops
            .map(|x| x.to_string())
            .unwrap_or_else(|| "inf".into());
        writeln!(
            out,
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
            r.instance.kind,
            r.instance.n,
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
            if r.shor.mode == TradeoffMode::SingleRun { "-".to_string() } else { r.shor.s.to_string() },
            r.shor.varsigma,
            r.shor.ell,
            r.shor.runs,
            r.shor_per_run,
            r.shor_overall,
            format_sig3(r.adv_per_run()),
            r.adv_overall(),
        )
        .unwrap();
    }
    out
}

fn comparison_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let m = match r.regev.m {
            RunCount::Bounded(m) => m.to_string(),
            RunCount::Unbounded => "inf".into(),
        };
        let overall = r
            .regev_cost
            .overall_ops
            .map(|x| x.to_string())
            .unwrap_or_else(|| "inf".into());
        writeln!(
            out,
            ",,{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.instance.kind,
            r.instance.n,
            r.strength.map(|z| z.to_string()).unwrap_or_default(),
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
                "-".to_string()
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
        .unwrap();
    }
    out
}

fn compare(args: CompareArgs) -> Result<()> {
    if args.scenario.is_some() && args.config.config.is_some() {
        return Err(Error::Config(
            "--scenario and --config are aliases; give only one".into(),
        ));
    }
    let path = args.scenario.as_deref().or(args.config.config.as_deref());
    let mut kv = load_kv(path)?;
    // Flags override scenario keys.
    if let Some(problem) = &args.problem {
        kv_set(&mut kv, "problem", problem);
    }
    if let Some(n) = &args.n {
        kv_set(&mut kv, "n", n);
    }
    if let Some(z) = args.z {
        kv_set(&mut kv, "z", &z.to_string());
    }
    if let Some(v) = &args.reduction {
        kv_set(&mut kv, "reduction", v);
    }
    if let Some(v) = &args.style {
        kv_set(&mut kv, "style", v);
    }
    if let Some(v) = &args.r {
        kv_set(&mut kv, "r", v);
    }
    if let Some(v) = args.k {
        kv_set(&mut kv, "k", &v.to_string());
    }
    if let Some(v) = &args.mode {
        kv_set(&mut kv, "mode", v);
    }
    if let Some(v) = &args.algorithm {
        kv_set(&mut kv, "algorithm", v);
    }
    if let Some(v) = args.w {
        kv_set(&mut kv, "w", &v.to_string());
    }
    if let Some(v) = &args.tradeoff_file {
        kv_set(&mut kv, "tradeoff-file", v);
    }
    let scenario = ScenarioConfig::from_key_values(&mut kv)?;
    let format = merged(
        parse_flag::<TableFormat>(args.format, "format")?,
        &mut kv,
        "format",
        TableFormat::Markdown,
    )?;
    let out_path = match args.out {
        Some(o) => {
            kv.take("out");
            Some(o)
        }
        None => kv.take("out"),
    };
    kv.finish()?;

    let table = load_tradeoffs(scenario.tradeoff_file.as_deref())?;
    let regev_cfg = RegevConfig {
        model: scenario.reduction,
        style: scenario.style,
        arbitrary_elements: scenario.k,
        window: scenario.w,
        r: scenario.r,
    };
    let shor_cfg = ShorConfig {
        algorithm: scenario.shor_algorithm,
        mode: scenario.shor_mode,
        window: scenario.w,
    };
    let mut rows = Vec::new();
    for inst in &scenario.instances {
        rows.push(build_comparison(*inst, &regev_cfg, &shor_cfg, &table)?);
    }
    let text = match format {
        TableFormat::Markdown => comparison_markdown(&rows),
        TableFormat::Csv => comparison_csv(&rows),
    };
    emit(out_path.as_deref(), &text)
}

fn kv_set(kv: &mut KeyValues, key: &str, value: &str) {
    // Merge direction: flags win, so overwrite whatever the file said.
    kv.set(key, value);
}

fn parse_which(raw: &str) -> Result<Vec<u8>> {
    let raw = raw.trim();
    if raw == "all" {
        return Ok((1..=8).collect());
    }
    let mut ids = Vec::new();
    for piece in raw.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            continue;
        }
        if let Some((lo, hi)) = piece.split_once('-') {
            let lo: u8 = lo.trim().parse().map_err(|_| bad_which(piece))?;
            let hi: u8 = hi.trim().parse().map_err(|_| bad_which(piece))?;
            if lo == 0 || hi > 8 || lo > hi {
                return Err(bad_which(piece));
            }
            ids.extend(lo..=hi);
        } else {
            let id: u8 = piece.parse().map_err(|_| bad_which(piece))?;
            if !(1..=8).contains(&id) {
                return Err(bad_which(piece));
            }
            ids.push(id);
        }
    }
    if ids.is_empty() {
        return Err(Error::Config("empty table selection".into()));
    }
    Ok(ids)
}

fn bad_which(piece: &str) -> Error {
    Error::Config(format!(
        "invalid table selection {piece:?} (expected ids or ranges within 1..=8)"
    ))
}

fn tables(args: TablesArgs) -> Result<()> {
    let mut kv = load_kv(args.config.config.as_deref())?;
    let which_raw = match args.which {
        Some(w) => {
            kv.take("which");
            w
        }
        None => kv.take("which").unwrap_or_else(|| "all".into()),
    };
    let format = merged(
        parse_flag::<TableFormat>(args.format, "format")?,
        &mut kv,
        "format",
        TableFormat::Markdown,
    )?;
    let out_path = match args.out {
        Some(o) => {
            kv.take("out");
            Some(o)
        }
        None => kv.take("out"),
    };
    kv.finish()?;
    let which = parse_which(&which_raw)?;
    let text = reproduce_paper_tables(&which, format)?;
    emit(out_path.as_deref(), &text)
}

fn crossover(args: CrossoverArgs) -> Result<()> {
    let mut kv = load_kv(args.config.config.as_deref())?;
    let problem = merged(
        parse_flag::<ProblemKind>(args.problem, "problem")?,
        &mut kv,
        "problem",
        ProblemKind::RsaIfp,
    )?;
    let reduction = merged(
        parse_flag::<ReductionModel>(args.reduction, "reduction")?,
        &mut kv,
        "reduction",
        ReductionModel::paper_bkz200(),
    )?;
    let style = merged(
        parse_flag::<ElementStyle>(args.style, "style")?,
        &mut kv,
        "style",
        ElementStyle::EgrPrimes,
    )?;
    let r = merged(
        parse_flag::<RSelection>(args.r, "r")?,
        &mut kv,
        "r",
        RSelection::Fixed(1),
    )?;
    let k = merged(args.k, &mut kv, "k", 0)?;
    let mode = merged(
        parse_flag::<TradeoffMode>(args.mode, "mode")?,
        &mut kv,
        "mode",
        TradeoffMode::Tradeoff,
    )?;
    let w = merged(args.w, &mut kv, "w", 10)?;
    let start = merged(args.start, &mut kv, "start", 9216)?;
    let step = merged(args.step, &mut kv, "step", 1024)?;
    let limit = merged(args.limit, &mut kv, "limit", 28_672)?;
    let tradeoff_file = match args.tradeoff_file {
        Some(f) => {
            kv.take("tradeoff-file");
            Some(f)
        }
        None => kv.take("tradeoff-file"),
    };
    kv.finish()?;

    let table = load_tradeoffs(tradeoff_file.as_deref())?;
    let regev_cfg = RegevConfig {
        model: reduction,
        style,
        arbitrary_elements: k,
        window: w,
        r,
    };
    let shor_cfg = ShorConfig {
        algorithm: None,
        mode,
        window: w,
    };
    let report = crossover_search(problem, &regev_cfg, &shor_cfg, &table, start, step, limit)?;
    let mut out = String::new();
    writeln!(
        out,
        "crossover scan: {problem}, reduction {reduction}, r {r}, mode {mode}, w {w}"
    )
    .unwrap();
    writeln!(out, "n, egr_per_run, shor_per_run, adv_per_run").unwrap();
    for p in &report.trajectory {
        writeln!(
            out,
            "{}, {}, {}, {}",
            p.n,
            p.regev_per_run,
            p.shor_per_run,
            format_sig3(p.regev_per_run as f64 / p.shor_per_run as f64)
        )
        .unwrap();
    }
    match report.crossover_n {
        Some(n) => writeln!(out, "first per-run advantage at n = {n}").unwrap(),
        None => writeln!(out, "no per-run advantage up to n = {limit}").unwrap(),
    }
    emit(None, &out)
}

fn emulate(args: EmulateArgs) -> Result<()> {
    use mulcount::schedule::{
        emulate_binary_schedule, emulate_ehs_schedule, verify_fib_product_identity,
    };
    use num_bigint::BigUint;
    use rand::{Rng, SeedableRng};

    let mut kv = load_kv(args.config.config.as_deref())?;
    let schedule = match args.schedule {
        Some(s) => {
            kv.take("schedule");
            s
        }
        None => kv.take("schedule").unwrap_or_else(|| "binary".into()),
    };
    let bits = merged(args.bits, &mut kv, "bits", 16)?;
    let seed = merged(args.seed, &mut kv, "seed", 0)?;
    let w = merged(args.w, &mut kv, "w", 1)?;
    kv.finish()?;

    // Toy prime modulus; large enough that random residues are interesting.
    let modulus_u64: u64 = 4_294_967_291;
    let modulus = BigUint::from(modulus_u64);
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let draw = |rng: &mut rand_chacha::ChaCha12Rng| BigUint::from(rng.gen_range(1..modulus_u64));

    let mut out = String::new();
    writeln!(out, "schedule: {schedule}").unwrap();
    writeln!(out, "modulus: {modulus_u64} (prime)").unwrap();
    writeln!(out, "seed: {seed}").unwrap();
    match schedule.as_str() {
        "binary" => {
            let l = bits.max(2);
            let c: Vec<BigUint> = (0..l).map(|_| draw(&mut rng)).collect();
            let res = emulate_binary_schedule(&c, &modulus)?;
            writeln!(out, "exponent bits l: {l}").unwrap();
            writeln!(out, "result: {}", res.result).unwrap();
            writeln!(out, "oracle calls: {}", res.calls).unwrap();
            writeln!(out, "closed form 4(l-1): {}", 4 * (u64::from(l) - 1)).unwrap();
            writeln!(
                out,
                "peak registers: {} (l + 1 = {})",
                res.peak_registers,
                l + 1
            )
            .unwrap();
        }
        "ehs" => {
            let n_e = bits.max(1);
            let v: Vec<BigUint> = (0..n_e).map(|_| draw(&mut rng)).collect();
            let control: Vec<bool> = (0..n_e).map(|_| rng.gen_bool(0.5)).collect();
            let res = emulate_ehs_schedule(&v, &control, &modulus, w)?;
            writeln!(out, "exponent bits n_e: {n_e}, window: {w}").unwrap();
            writeln!(out, "result: {}", res.result).unwrap();
            writeln!(out, "oracle calls: {}", res.calls).unwrap();
            writeln!(
                out,
                "closed form 2*ceil(n_e/w): {}",
                2 * u64::from(n_e.div_ceil(w))
            )
            .unwrap();
        }
        "fib-identity" => {
            let log_d = bits.clamp(2, 12);
            let d = 3usize;
            let r = 2u32;
            let half = 1i64 << (log_d - 1);
            let a: Vec<BigUint> = mulcount::numbers::first_primes(d as u32)
                .iter()
                .map(|&p| BigUint::from(p))
                .collect();
            let z: Vec<i64> = (0..d).map(|_| rng.gen_range(-half..half)).collect();
            let holds = verify_fib_product_identity(&a, &z, r, log_d, &modulus)?;
            writeln!(out, "d: {d}, r: {r}, log D: {log_d}").unwrap();
            writeln!(out, "elements: {a:?}").unwrap();
            writeln!(out, "exponent offsets: {z:?}").unwrap();
            writeln!(out, "identity holds: {holds}").unwrap();
        }
        other => {
            return Err(Error::Config(format!(
                "unknown schedule {other:?} (expected binary, ehs or fib-identity)"
            )))
        }
    }
    emit(None, &out)
}

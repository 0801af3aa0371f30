//! Command-line front end: counting experiments and inequality suites over
//! imaginary quadratic orders, with bit-exact CSV/JSON output.
//!
//! Exit codes: 0 success; 1 property-suite failure; 2 input syntax;
//! 3 invalid ring; 4 capacity/precondition; 5 numeric failure.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, CommandFactory, Parser, Subcommand, ValueEnum};
use goldbach_core::{
    asymptotic_fit, count_reducible_fixed_lead, count_reducible_free, fit_log_log,
    is_irreducible_with_budget, make_ring, parse_element, parse_poly, run_suites, sweep,
    total_pairs, BoundMode, BoundSpec, Element, Engine, Error, Poly, SuiteConfig, SweepRecord,
    DEFAULT_BUDGET, GENERATOR_ID,
};

const SWEEP_HEADER: &str = "k,mode,d,f,y,T_enum,T_formula,pairs_reducible,R,ratio_R_T,ratio_R_2y,ratio_R_4y";
const PAIRS_HEADER: &str = "k,mode,d,f,y,T_enum,T_formula";
const LEMMA2_HEADER: &str = "y,candidates,r_y,ratio";

#[derive(Parser)]
#[command(
    name = "goldbach",
    version,
    about = "Exact counting of additive splittings into irreducibles over imaginary quadratic orders"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Coordinate box |u| <= y, |v| <= y
    #[value(name = "box")]
    Boxed,
    /// Norm disk N(e) <= y^2
    Disk,
}

impl From<ModeArg> for BoundMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Boxed => BoundMode::Box,
            ModeArg::Disk => BoundMode::Disk,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    /// Degree-specialized decision procedure
    Fast,
    /// Exhaustive bounded divisor scan
    Oracle,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Fast => Engine::Fast,
            EngineArg::Oracle => Engine::Oracle,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct Common {
    /// Squarefree ring parameter k >= 2 (theta^2 = -k, or the half branch
    /// when k = 3 mod 4)
    #[arg(long)]
    k: u64,

    /// Coefficient bound shape
    #[arg(long, value_enum, default_value = "box")]
    mode: ModeArg,

    /// Irreducibility engine
    #[arg(long, value_enum, default_value = "fast")]
    engine: EngineArg,

    /// Worker threads (counts are partition-invariant, so output is
    /// byte-identical for any value)
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=1024))]
    jobs: u64,

    /// RNG seed for the sampled suites
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Write output to this file instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format for tabular commands
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
}

#[derive(Args)]
struct YRange {
    /// Single bound value
    #[arg(long, conflicts_with_all = ["y_min", "y_max", "step"])]
    y: Option<u64>,

    /// First bound of an inclusive increasing range
    #[arg(long, requires = "y_max")]
    y_min: Option<u64>,

    /// Last bound of the range
    #[arg(long, requires = "y_min")]
    y_max: Option<u64>,

    /// Range stride
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    step: u64,
}

impl YRange {
    fn list(&self) -> Vec<u64> {
        match (self.y, self.y_min, self.y_max) {
            (Some(y), _, _) => vec![y],
            (None, Some(lo), Some(hi)) => (lo..=hi).step_by(self.step as usize).collect(),
            _ => {
                let mut cmd = Cli::command();
                cmd.error(
                    clap::error::ErrorKind::MissingRequiredArgument,
                    "provide --y or --y-min/--y-max",
                )
                .exit();
            }
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide irreducibility of one monic polynomial and print a witness
    Irred {
        #[command(flatten)]
        common: Common,
        /// Polynomial, e.g. "x^2 + (0,1)*x + (-3,2)"
        f: String,
    },
    /// Sweep growing bounds: count splittings, classify, fit the growth
    Sweep {
        #[command(flatten)]
        common: Common,
        /// Polynomial to split
        #[arg(long)]
        f: String,
        #[command(flatten)]
        range: YRange,
    },
    /// Count reducible monic polynomials with a pinned or free second-highest
    /// coefficient
    Lemma2 {
        #[command(flatten)]
        common: Common,
        /// Polynomial degree d >= 2
        #[arg(long)]
        d: usize,
        /// Pinned coefficient of x^(d-1), e.g. "(-1,0)"
        #[arg(long, conflicts_with = "free_lead")]
        g_lead: Option<String>,
        /// Let the x^(d-1) coefficient range over the bound too
        #[arg(long, action = ArgAction::SetTrue)]
        free_lead: bool,
        #[command(flatten)]
        range: YRange,
    },
    /// Run the seeded Mahler/height inequality suites
    MahlerCheck {
        #[command(flatten)]
        common: Common,
        /// Number of sampled trials per suite
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
        trials: u64,
        /// Negative control: invert every comparison (forces failures)
        #[arg(long, hide = true, action = ArgAction::SetTrue)]
        tamper: bool,
    },
    /// Count admissible splittings without classifying them
    PairsTotal {
        #[command(flatten)]
        common: Common,
        /// Polynomial to split
        #[arg(long)]
        f: String,
        #[command(flatten)]
        range: YRange,
    },
}

impl Cmd {
    fn common(&self) -> &Common {
        match self {
            Cmd::Irred { common, .. }
            | Cmd::Sweep { common, .. }
            | Cmd::Lemma2 { common, .. }
            | Cmd::MahlerCheck { common, .. }
            | Cmd::PairsTotal { common, .. } => common,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Syntax { .. } => 2,
        Error::InvalidParameter(_) => 3,
        Error::InvalidInput(_) | Error::Capacity(_) | Error::InsufficientData(_) => 4,
        Error::Numeric(_) | Error::Internal(_) => 5,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let jobs = cli.cmd.common().jobs as usize;
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
        eprintln!("error: {e}");
        return ExitCode::from(4);
    }
    let mut out = String::new();
    let result = dispatch(&cli.cmd, &mut out);
    // Rows accumulated before an error still reach the sink.
    if let Err(e) = write_sink(cli.cmd.common().out.as_deref(), &out) {
        eprintln!("error: {e}");
        return ExitCode::from(4);
    }
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn write_sink(path: Option<&std::path::Path>, content: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, content),
        None => std::io::stdout().write_all(content.as_bytes()),
    }
}

fn dispatch(cmd: &Cmd, out: &mut String) -> Result<u8, Error> {
    match cmd {
        Cmd::Irred { common, f } => cmd_irred(common, f, out),
        Cmd::Sweep { common, f, range } => cmd_sweep(common, f, &range.list(), out),
        Cmd::Lemma2 { common, d, g_lead, free_lead, range } => {
            cmd_lemma2(common, *d, g_lead.as_deref(), *free_lead, &range.list(), out)
        }
        Cmd::MahlerCheck { common, trials, tamper } => {
            cmd_mahler_check(common, *trials, *tamper, out)
        }
        Cmd::PairsTotal { common, f, range } => cmd_pairs_total(common, f, &range.list(), out),
    }
}

/// `{:.6}` for finite reals, `nan` otherwise (CSV convention).
fn csv_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        "nan".to_string()
    }
}

/// Same value as a JSON token: fixed six decimals or `null`.
fn json_real(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.6}")
    } else {
        "null".to_string()
    }
}

fn json_string(s: &str) -> String {
    let mut quoted = String::with_capacity(s.len() + 2);
    quoted.push('"');
    for c in s.chars() {
        match c {
            '"' => quoted.push_str("\\\""),
            '\\' => quoted.push_str("\\\\"),
            '\n' => quoted.push_str("\\n"),
            '\t' => quoted.push_str("\\t"),
            '\r' => quoted.push_str("\\r"),
            c if (c as u32) < 0x20 => quoted.push_str(&format!("\\u{:04x}", c as u32)),
            c => quoted.push(c),
        }
    }
    quoted.push('"');
    quoted
}

/// Minimal CSV quoting: canonical polynomial text contains commas.
fn csv_field(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

fn push_line(out: &mut String, line: &str) {
    out.push_str(line);
    out.push('\n');
}

fn cmd_irred(common: &Common, f_text: &str, out: &mut String) -> Result<u8, Error> {
    let ring = make_ring(common.k)?;
    let f: Poly = parse_poly(f_text, ring)?;
    let verdict = is_irreducible_with_budget(&f, common.engine.into(), DEFAULT_BUDGET)?;
    match verdict.witness() {
        None => push_line(out, "irreducible"),
        Some((g, h)) => push_line(out, &format!("reducible: ({g}) * ({h})")),
    }
    Ok(0)
}

fn sweep_row(r: &SweepRecord, format: FormatArg) -> String {
    let formula = r.t_formula.map(|t| t.to_string());
    match format {
        FormatArg::Csv => format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            r.k,
            r.mode,
            r.d,
            csv_field(&r.f_text),
            r.y,
            r.t_enum,
            formula.unwrap_or_default(),
            r.pairs_reducible,
            r.r,
            csv_real(r.ratio_r_t),
            csv_real(r.ratio_r_2y),
            csv_real(r.ratio_r_4y),
        ),
        FormatArg::Json => format!(
            "{{\"k\":{},\"mode\":{},\"d\":{},\"f\":{},\"y\":{},\"T_enum\":{},\"T_formula\":{},\"pairs_reducible\":{},\"R\":{},\"ratio_R_T\":{},\"ratio_R_2y\":{},\"ratio_R_4y\":{}}}",
            r.k,
            json_string(&r.mode.to_string()),
            r.d,
            json_string(&r.f_text),
            r.y,
            r.t_enum,
            formula.unwrap_or_else(|| "null".to_string()),
            r.pairs_reducible,
            r.r,
            json_real(r.ratio_r_t),
            json_real(r.ratio_r_2y),
            json_real(r.ratio_r_4y),
        ),
    }
}

fn cmd_sweep(common: &Common, f_text: &str, ys: &[u64], out: &mut String) -> Result<u8, Error> {
    let ring = make_ring(common.k)?;
    let f: Poly = parse_poly(f_text, ring)?;
    if common.format == FormatArg::Csv {
        push_line(out, SWEEP_HEADER);
    }
    if ys.windows(2).any(|w| w[0] >= w[1]) || ys.is_empty() {
        return Err(Error::InvalidInput("bounds must be strictly increasing".into()));
    }
    let mut records = Vec::with_capacity(ys.len());
    for &y in ys {
        // One bound at a time so rows computed before a capacity abort
        // still reach the output.
        let mut rows = sweep(&f, common.mode.into(), &[y], common.engine.into(), DEFAULT_BUDGET)?;
        let record = rows.pop().expect("single-point sweep yields one row");
        push_line(out, &sweep_row(&record, common.format));
        records.push(record);
    }
    match asymptotic_fit(&records) {
        Ok(fit) => {
            let line = match common.format {
                FormatArg::Csv => format!(
                    "# fit slope={} constant={} log2_constant={} ratio_R_2y_last={} ratio_R_4y_last={}",
                    csv_real(fit.slope),
                    csv_real(fit.constant),
                    csv_real(fit.log2_constant),
                    csv_real(fit.ratio_r_2y_last),
                    csv_real(fit.ratio_r_4y_last),
                ),
                FormatArg::Json => format!(
                    "{{\"slope\":{},\"constant\":{},\"log2_constant\":{},\"ratio_R_2y_last\":{},\"ratio_R_4y_last\":{}}}",
                    json_real(fit.slope),
                    json_real(fit.constant),
                    json_real(fit.log2_constant),
                    json_real(fit.ratio_r_2y_last),
                    json_real(fit.ratio_r_4y_last),
                ),
            };
            push_line(out, &line);
        }
        Err(_) => {
            let line = match common.format {
                FormatArg::Csv => "# fit n/a".to_string(),
                FormatArg::Json => "{\"fit\":\"n/a\"}".to_string(),
            };
            push_line(out, &line);
        }
    }
    Ok(0)
}

fn cmd_pairs_total(
    common: &Common,
    f_text: &str,
    ys: &[u64],
    out: &mut String,
) -> Result<u8, Error> {
    let ring = make_ring(common.k)?;
    let f: Poly = parse_poly(f_text, ring)?;
    if common.format == FormatArg::Csv {
        push_line(out, PAIRS_HEADER);
    }
    if ys.windows(2).any(|w| w[0] >= w[1]) || ys.is_empty() {
        return Err(Error::InvalidInput("bounds must be strictly increasing".into()));
    }
    let mode: BoundMode = common.mode.into();
    let d = f.degree().unwrap_or(0);
    let f_canon = f.canonical_text();
    for &y in ys {
        let bound = BoundSpec::new(mode, y);
        let (t_enum, t_formula) = total_pairs(&f, &bound)?;
        let formula = t_formula.map(|t| t.to_string());
        let line = match common.format {
            FormatArg::Csv => format!(
                "{},{},{},{},{},{},{}",
                common.k,
                mode,
                d,
                csv_field(&f_canon),
                y,
                t_enum,
                formula.unwrap_or_default(),
            ),
            FormatArg::Json => format!(
                "{{\"k\":{},\"mode\":{},\"d\":{},\"f\":{},\"y\":{},\"T_enum\":{},\"T_formula\":{}}}",
                common.k,
                json_string(&mode.to_string()),
                d,
                json_string(&f_canon),
                y,
                t_enum,
                formula.unwrap_or_else(|| "null".to_string()),
            ),
        };
        push_line(out, &line);
    }
    Ok(0)
}

fn cmd_lemma2(
    common: &Common,
    d: usize,
    g_lead: Option<&str>,
    free_lead: bool,
    ys: &[u64],
    out: &mut String,
) -> Result<u8, Error> {
    let ring = make_ring(common.k)?;
    let lead: Option<Element> = match (g_lead, free_lead) {
        (Some(text), false) => Some(parse_element(text)?),
        (None, true) => None,
        (None, false) => {
            let mut cmd = Cli::command();
            cmd.error(
                clap::error::ErrorKind::MissingRequiredArgument,
                "provide --g-lead or --free-lead",
            )
            .exit();
        }
        (Some(_), true) => unreachable!("clap conflicts_with rejects this"),
    };
    if common.format == FormatArg::Csv {
        push_line(out, LEMMA2_HEADER);
    }
    if ys.windows(2).any(|w| w[0] >= w[1]) || ys.is_empty() {
        return Err(Error::InvalidInput("bounds must be strictly increasing".into()));
    }
    let mode: BoundMode = common.mode.into();
    let free_slots = if lead.is_some() { d.saturating_sub(1) } else { d };
    let mut points = Vec::new();
    for &y in ys {
        let bound = BoundSpec::new(mode, y);
        let candidates = bound
            .cardinality::<i64>(&ring)
            .checked_pow(free_slots as u32)
            .ok_or_else(|| Error::Capacity("candidate count overflows u128".into()))?;
        let r_y = match &lead {
            Some(l) => count_reducible_fixed_lead(d, l, &bound, &ring, DEFAULT_BUDGET)?,
            None => count_reducible_free::<i64>(d, &bound, &ring, DEFAULT_BUDGET)?,
        };
        let ratio = r_y as f64 / candidates as f64;
        let line = match common.format {
            FormatArg::Csv => {
                format!("{},{},{},{}", y, candidates, r_y, csv_real(ratio))
            }
            FormatArg::Json => format!(
                "{{\"y\":{},\"candidates\":{},\"r_y\":{},\"ratio\":{}}}",
                y,
                candidates,
                r_y,
                json_real(ratio),
            ),
        };
        push_line(out, &line);
        points.push((y as f64, r_y as f64));
    }
    let fit_points: Vec<(f64, f64)> =
        points.iter().copied().filter(|&(_, r)| r > 0.0).collect();
    let fit_line = match fit_log_log(&fit_points) {
        Ok((slope, _)) => match common.format {
            FormatArg::Csv => format!("# fit slope={}", csv_real(slope)),
            FormatArg::Json => format!("{{\"slope\":{}}}", json_real(slope)),
        },
        Err(_) => match common.format {
            FormatArg::Csv => "# fit n/a".to_string(),
            FormatArg::Json => "{\"fit\":\"n/a\"}".to_string(),
        },
    };
    push_line(out, &fit_line);
    Ok(0)
}

fn cmd_mahler_check(
    common: &Common,
    trials: u64,
    tamper: bool,
    out: &mut String,
) -> Result<u8, Error> {
    make_ring(common.k)?;
    let mut cfg = SuiteConfig::new(trials, common.seed);
    cfg.ks = vec![common.k];
    cfg.tamper = tamper;
    let outcomes = run_suites(&cfg)?;
    push_line(
        out,
        &format!(
            "{{\"seed\":{},\"generator\":{},\"trials\":{},\"k_list\":[{}]}}",
            common.seed,
            json_string(GENERATOR_ID),
            trials,
            common.k,
        ),
    );
    let mut failures = 0u64;
    for o in &outcomes {
        failures += o.failures;
        let cex = o
            .counterexample
            .as_deref()
            .map(json_string)
            .unwrap_or_else(|| "null".to_string());
        push_line(
            out,
            &format!(
                "{{\"inequality\":{},\"trials\":{},\"failures\":{},\"worst_slack\":{:.6e},\"seed\":{},\"counterexample\":{}}}",
                json_string(&o.inequality),
                o.trials,
                o.failures,
                o.worst_slack,
                o.seed,
                cex,
            ),
        );
        if let Some(cex) = &o.counterexample {
            eprintln!("counterexample ({}): {}", o.inequality, cex);
        }
    }
    Ok(if failures > 0 { 1 } else { 0 })
}

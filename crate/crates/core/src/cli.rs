//! Command-line front end.
//!
//! Exit codes: 0 when everything evaluated holds, 1 when a genuine violation
//! (or an evaluation error inside a sweep) was found, 2 for malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::checks::{
    det_bundle, evaluate, parse_ids, sv_bundle, sweep_with_threads, CheckId, CheckResult, Concave, Instance, Params,
    Report, SweepConfig, Verdict, DEFAULT_SEED, DEFAULT_TOL,
};
use crate::cmat::CMatrix;
use crate::error::{Error, Result};
use crate::io::{matrix_to_json, read_map, read_matrix, write_matrix};
use crate::means::{MeanKind, MeanSpec};
use crate::sector::{certify, gen_hpd, gen_sector, is_accretive, sector_angle_grid, SectorGenSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable capping sweep parallelism (0 = automatic).
pub const THREADS_ENV: &str = "SECTORIX_THREADS";

#[derive(Debug, Parser)]
#[command(name = "sectorix", version, about = "Sector matrices, accretive means and a verifier for their inequalities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Sector,
    Hpd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CounterKind {
    Sv,
    Det,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Certify the minimal sector angle of a matrix.
    Angle {
        #[arg(long)]
        input: PathBuf,
        /// Cross-check against a scan with this many angles.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Generate a seeded sector or Hermitian positive definite matrix.
    Gen {
        #[arg(long, value_enum)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        /// Largest eigen-angle for `sector`.
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value_t = 10.0)]
        cond_x: f64,
        /// Draw all angles uniformly instead of pinning one at +-alpha.
        #[arg(long)]
        no_extremal: bool,
        /// Spectral bounds for `hpd`.
        #[arg(long, default_value_t = 1.0)]
        m: f64,
        #[arg(long = "big-m", default_value_t = 10.0)]
        big_m: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weighted harmonic, arithmetic or geometric mean of two matrices.
    Mean {
        #[arg(long, value_parser = parse_mean_kind)]
        kind: MeanKind,
        #[arg(long, default_value_t = 0.5)]
        v: f64,
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate one catalogue inequality on given matrices.
    Check(CheckArgs),
    /// Reproduce a built-in counterexample to a naive inequality.
    Counterexample {
        #[arg(long, value_enum)]
        id: CounterKind,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Randomized sweep over the catalogue.
    Sweep {
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Counterexamples plus the default sweep, written to one report.
    Suite {
        #[arg(long)]
        paper: bool,
        #[command(flatten)]
        sweep: SweepArgs,
        #[arg(long, default_value = "report.json")]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_parser = parse_check_id)]
    pub id: CheckId,
    #[arg(long)]
    pub a: PathBuf,
    /// Defaults to `--a`.
    #[arg(long)]
    pub b: Option<PathBuf>,
    /// Positive semidefinite pair; defaults to `--a`, `--b`.
    #[arg(long)]
    pub psd_a: Option<PathBuf>,
    #[arg(long)]
    pub psd_b: Option<PathBuf>,
    /// Arbitrary pair; defaults to `--a`, `--b`.
    #[arg(long)]
    pub free_x: Option<PathBuf>,
    #[arg(long)]
    pub free_y: Option<PathBuf>,
    /// Linear map descriptor; defaults to the identity.
    #[arg(long)]
    pub map: Option<PathBuf>,
    /// Comma-separated tuple for multilinear checks; defaults to `--a`.
    #[arg(long, value_delimiter = ',')]
    pub tuple: Vec<PathBuf>,
    #[arg(long)]
    pub multimap: Option<PathBuf>,
    #[arg(long, default_value_t = 0.5)]
    pub v: f64,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long, value_parser = parse_concave)]
    pub f: Option<Concave>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// `all` or a comma-separated list of check IDs.
    #[arg(long, default_value = "all")]
    pub ids: String,
    #[arg(long, default_value_t = 2)]
    pub n_min: usize,
    #[arg(long, default_value_t = 6)]
    pub n_max: usize,
    #[arg(long, value_delimiter = ',')]
    pub alphas: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    pub v_grid: Option<Vec<f64>>,
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long, default_value_t = 10.0)]
    pub cond_x: f64,
    #[arg(long, default_value_t = 3)]
    pub max_k: usize,
    #[arg(long, default_value_t = 6)]
    pub max_l: usize,
    #[arg(long, default_value_t = 64)]
    pub max_tensor_dim: usize,
    #[arg(long, default_value_t = 100)]
    pub max_failures: usize,
}

impl SweepArgs {
    pub fn to_config(&self) -> Result<SweepConfig> {
        let d = SweepConfig::default();
        let cfg = SweepConfig {
            ids: parse_ids(&self.ids)?,
            n_min: self.n_min,
            n_max: self.n_max,
            alphas: self.alphas.clone().unwrap_or(d.alphas),
            v_grid: self.v_grid.clone().unwrap_or(d.v_grid),
            trials: self.trials,
            seed: self.seed,
            tol: self.tol,
            cond_x: self.cond_x,
            max_k: self.max_k,
            max_l: self.max_l,
            max_tensor_dim: self.max_tensor_dim,
            max_failures: self.max_failures,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_check_id(s: &str) -> Result<CheckId> {
    s.parse()
}

fn parse_concave(s: &str) -> Result<Concave> {
    s.parse()
}

fn parse_mean_kind(s: &str) -> Result<MeanKind> {
    s.parse()
}

/// Parses `argv` (including the program name), runs it, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sectorix: {e}");
            EXIT_USAGE
        }
    }
}

pub fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Angle { input, grid, format } => angle(&input, grid, format),
        Command::Gen { kind, n, alpha, cond_x, no_extremal, m, big_m, seed, out } => {
            let a = match kind {
                GenKind::Sector => {
                    let spec = SectorGenSpec { n, alpha_max: alpha, cond_x, seed, force_extremal: !no_extremal };
                    gen_sector(&spec)?.matrix
                }
                GenKind::Hpd => gen_hpd(n, m, big_m, seed)?,
            };
            emit_matrix(out.as_deref(), &a)?;
            Ok(EXIT_OK)
        }
        Command::Mean { kind, v, a, b, out } => {
            let (a, b) = (load("--a", &a)?, load("--b", &b)?);
            emit_matrix(out.as_deref(), &MeanSpec::new(kind, v).apply(&a, &b)?)?;
            Ok(EXIT_OK)
        }
        Command::Check(args) => check(&args),
        Command::Counterexample { id, format } => {
            let (value, lines) = counterexample(id)?;
            let text = match format {
                Format::Json => pretty(&value),
                Format::Csv => kv_csv(&value),
                Format::Human => lines,
            };
            print(&text)?;
            Ok(EXIT_OK)
        }
        Command::Sweep { sweep, out, format } => {
            let cfg = sweep.to_config()?;
            let report = sweep_with_threads(&cfg, threads_from_env()?)?;
            let text = render_report(&report, format);
            match out {
                Some(path) => write_file(&path, &text)?,
                None => print(&text)?,
            }
            Ok(if report.has_findings() { EXIT_VIOLATION } else { EXIT_OK })
        }
        Command::Suite { paper, sweep, out, format } => {
            if !paper {
                return Err(Error::invalid("suite needs --paper (the only suite available)"));
            }
            let cfg = sweep.to_config()?;
            let (sv, sv_lines) = counterexample(CounterKind::Sv)?;
            let (det, det_lines) = counterexample(CounterKind::Det)?;
            let report = sweep_with_threads(&cfg, threads_from_env()?)?;
            let full = json!({ "counterexamples": { "sv": sv, "det": det }, "sweep": report });
            write_file(&out, &pretty(&full))?;
            let text = match format {
                Format::Json => pretty(&full),
                Format::Csv => render_report(&report, Format::Csv),
                Format::Human => format!(
                    "{sv_lines}\n{det_lines}\n{}report written to {}\n",
                    render_report(&report, Format::Human),
                    out.display()
                ),
            };
            print(&text)?;
            let reproduced = sv["violated"] == json!(true) && det["violated"] == json!(true);
            Ok(if report.has_findings() || !reproduced { EXIT_VIOLATION } else { EXIT_OK })
        }
    }
}

/// Reads `SECTORIX_THREADS`; unset means automatic.
pub fn threads_from_env() -> Result<usize> {
    match std::env::var(THREADS_ENV) {
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(e) => Err(Error::invalid(format!("{THREADS_ENV}: {e}"))),
        Ok(s) if s.trim().is_empty() => Ok(0),
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("{THREADS_ENV} must be a non-negative integer, got `{s}`"))),
    }
}

fn load(flag: &str, path: &Path) -> Result<CMatrix> {
    read_matrix(path).map_err(|e| with_flag(flag, e))
}

fn with_flag(flag: &str, e: Error) -> Error {
    match e {
        Error::Format { context, message } => Error::Format { context: format!("{flag} {context}"), message },
        Error::Io { context, source } => Error::Io { context: format!("{flag} {context}"), source },
        other => other,
    }
}

fn print(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|source| Error::Io { context: "stdout".into(), source })
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io { context: path.display().to_string(), source })
}

fn emit_matrix(out: Option<&Path>, m: &CMatrix) -> Result<()> {
    match out {
        Some(path) => write_matrix(path, m),
        None => print(&(matrix_to_json(m) + "\n")),
    }
}

fn pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize") + "\n"
}

/// Shortest representation that reads back to the same double.
fn num(x: f64) -> String {
    ryu::Buffer::new().format(x).to_string()
}

/// Six significant digits, for human-readable tables only.
pub fn sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if (1e-4..1e6).contains(&a) {
        let decimals = (5 - a.log10().floor() as i32).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.5e}")
    }
}

fn human_value(v: &Value) -> String {
    match v {
        Value::Number(n) if !n.is_i64() && !n.is_u64() => sig6(n.as_f64().unwrap_or(f64::NAN)),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        other => other.to_string(),
    }
}

/// Flat object as a two-row CSV.
fn kv_csv(value: &Value) -> String {
    let obj = value.as_object().expect("flat object");
    let mut w = csv::Writer::from_writer(Vec::new());
    let keys: Vec<&String> = obj.keys().filter(|k| !obj[*k].is_array() || !obj[*k][0].is_array()).collect();
    w.write_record(keys.iter().map(|k| k.as_str())).expect("in-memory write");
    w.write_record(keys.iter().map(|k| csv_cell(&obj[*k]))).expect("in-memory write");
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn angle(input: &Path, grid: Option<usize>, format: Format) -> Result<i32> {
    let a = load("--input", input)?;
    let acc = is_accretive(&a)?;
    let mut rec = serde_json::Map::new();
    rec.insert("n".into(), json!(a.n()));
    rec.insert("accretive".into(), json!(acc.accretive));
    rec.insert("margin".into(), json!(acc.margin));
    if acc.accretive {
        let cert = certify(&a)?;
        rec.insert("alpha".into(), json!(cert.alpha));
        rec.insert("alpha_degrees".into(), json!(cert.alpha.to_degrees()));
        rec.insert("re_min".into(), json!(cert.re_min));
        rec.insert("re_max".into(), json!(cert.re_max));
        rec.insert("h".into(), json!(cert.h));
        if let Some(num_angles) = grid {
            let g = sector_angle_grid(&a, num_angles)?;
            rec.insert("grid_alpha".into(), json!(g));
            rec.insert("grid_difference".into(), json!((g - cert.alpha).abs()));
        }
    }
    let value = Value::Object(rec);
    let text = match format {
        Format::Json => pretty(&value),
        Format::Csv => kv_csv(&value),
        Format::Human => {
            let obj = value.as_object().expect("object");
            obj.iter().map(|(k, v)| format!("{k:<16}{}\n", human_value(v))).collect()
        }
    };
    print(&text)?;
    Ok(EXIT_OK)
}

fn counterexample(kind: CounterKind) -> Result<(Value, String)> {
    let verdict = |violated: bool| if violated { "naive inequality VIOLATED" } else { "naive inequality holds" };
    match kind {
        CounterKind::Sv => {
            let b = sv_bundle()?;
            let lines = format!(
                "s1((A+B)^-1)             = {}\ns1(I+(A+B)^-1)           = {}\ns1(I+A^-1) * s1(I+B^-1)  = {}\n{}\n",
                sig6(b.s1_inv_sum),
                sig6(b.s1_shifted_inv_sum),
                sig6(b.product),
                verdict(b.violated)
            );
            Ok((serde_json::to_value(&b).expect("serializable"), lines))
        }
        CounterKind::Det => {
            let b = det_bundle()?;
            let lines = format!(
                "|det((A+B)^-1)|                 = {}\n|det(I+(A+B)^-1)|               = {}\n|det(I+A^-1)| * |det(I+B^-1)|   = {}\n{}\n",
                sig6(b.det_inv_sum),
                sig6(b.det_shifted_inv_sum),
                sig6(b.product),
                verdict(b.violated)
            );
            Ok((serde_json::to_value(&b).expect("serializable"), lines))
        }
    }
}

fn check(args: &CheckArgs) -> Result<i32> {
    let a = load("--a", &args.a)?;
    let b = match &args.b {
        Some(p) => load("--b", p)?,
        None => a.clone(),
    };
    let mut inst = Instance::pair(a, b);
    let pair = |fa: &str, pa: &Option<PathBuf>, fb: &str, pb: &Option<PathBuf>| -> Result<Option<(CMatrix, CMatrix)>> {
        match (pa, pb) {
            (None, None) => Ok(None),
            (Some(x), Some(y)) => Ok(Some((load(fa, x)?, load(fb, y)?))),
            _ => Err(Error::invalid(format!("{fa} and {fb} must be given together"))),
        }
    };
    inst.psd = pair("--psd-a", &args.psd_a, "--psd-b", &args.psd_b)?;
    inst.free = pair("--free-x", &args.free_x, "--free-y", &args.free_y)?;
    if let Some(p) = &args.map {
        inst.map = Some(read_map(p).map_err(|e| with_flag("--map", e))?);
    }
    inst.tuple = args.tuple.iter().map(|p| load("--tuple", p)).collect::<Result<_>>()?;
    if let Some(p) = &args.multimap {
        inst.multimap = Some(read_map(p).map_err(|e| with_flag("--multimap", e))?);
    }
    inst.witness = args.a.display().to_string();
    let params = Params { v: args.v, k: args.k, r: args.r, p: args.p, f: args.f, alpha: args.alpha };
    let results = evaluate(args.id, &inst, &params, args.tol)?;
    let text = match args.format {
        Format::Json => pretty(&results),
        Format::Csv => results_csv(&results),
        Format::Human => results_human(&results),
    };
    print(&text)?;
    let failed = results.iter().any(|r| r.verdict == Verdict::Fail);
    Ok(if failed { EXIT_VIOLATION } else { EXIT_OK })
}

const RESULT_COLUMNS: [&str; 20] = [
    "id", "link", "verdict", "hypotheses_met", "form", "slack", "lhs", "rhs", "v", "k", "r", "p", "f", "alpha", "m", "M",
    "h", "kappa", "reason", "witness",
];

pub fn results_csv(results: &[CheckResult]) -> String {
    let list = |xs: &[f64]| xs.iter().map(|&x| num(x)).collect::<Vec<_>>().join(";");
    let opt = |x: Option<f64>| x.map(num).unwrap_or_default();
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RESULT_COLUMNS).expect("in-memory write");
    for r in results {
        let p = &r.params;
        let row = [
            r.id.name().to_string(),
            r.link.clone(),
            verdict_name(r.verdict).to_string(),
            r.hypotheses_met.to_string(),
            serde_json::to_value(r.form).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            num(r.slack),
            list(&r.lhs),
            list(&r.rhs),
            opt(p.v),
            p.k.map(|k| k.to_string()).unwrap_or_default(),
            opt(p.r),
            opt(p.p),
            p.f.map(|f| f.name().to_string()).unwrap_or_default(),
            opt(p.alpha),
            opt(p.m),
            opt(p.big_m),
            opt(p.h),
            opt(p.kappa),
            r.reason.clone().unwrap_or_default(),
            r.witness.clone(),
        ];
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Vacuous => "vacuous",
    }
}

fn results_human(results: &[CheckResult]) -> String {
    let mut s = format!("{:<8} {:<12} {:<8} {:>13}  {:<14} {:<14} params\n", "id", "link", "verdict", "slack", "lhs", "rhs");
    for r in results {
        let first = |xs: &[f64]| xs.first().map(|&x| sig6(x)).unwrap_or_else(|| "-".into());
        let mut params = Vec::new();
        let p = &r.params;
        for (name, val) in [("v", p.v), ("r", p.r), ("p", p.p), ("alpha", p.alpha), ("h", p.h), ("kappa", p.kappa)] {
            if let Some(x) = val {
                params.push(format!("{name}={}", sig6(x)));
            }
        }
        if let Some(k) = p.k {
            params.push(format!("k={k}"));
        }
        if let Some(f) = p.f {
            params.push(format!("f={f}"));
        }
        let slack = if r.is_vacuous() { "-".to_string() } else { sig6(r.slack) };
        s += &format!(
            "{:<8} {:<12} {:<8} {:>13}  {:<14} {:<14} {}\n",
            r.id.name(),
            r.link,
            verdict_name(r.verdict),
            slack,
            first(&r.lhs),
            first(&r.rhs),
            params.join(" ")
        );
        if let Some(reason) = &r.reason {
            s += &format!("         reason: {reason}\n");
        }
    }
    s
}

pub fn render_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => pretty(report),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "trials", "evaluations", "passes", "fails", "vacuous", "errors", "min_slack", "worst_seed"])
                .expect("in-memory write");
            for s in &report.results {
                w.write_record([
                    s.id.name().to_string(),
                    s.trials.to_string(),
                    s.evaluations.to_string(),
                    s.passes.to_string(),
                    s.fails.to_string(),
                    s.vacuous.to_string(),
                    s.errors.to_string(),
                    s.min_slack.map(num).unwrap_or_default(),
                    s.worst_seed.map(|x| x.to_string()).unwrap_or_default(),
                ])
                .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        Format::Human => {
            let mut s = format!(
                "{:<8} {:>7} {:>9} {:>9} {:>7} {:>7} {:>6} {:>13}  worst link\n",
                "id", "trials", "evals", "passes", "fails", "vacuous", "errors", "min slack"
            );
            for c in &report.results {
                let worst = c.worst.as_ref().map(|w| w.link.as_str()).unwrap_or("-");
                s += &format!(
                    "{:<8} {:>7} {:>9} {:>9} {:>7} {:>7} {:>6} {:>13}  {}\n",
                    c.id.name(),
                    c.trials,
                    c.evaluations,
                    c.passes,
                    c.fails,
                    c.vacuous,
                    c.errors,
                    c.min_slack.map(sig6).unwrap_or_else(|| "-".into()),
                    worst
                );
            }
            let t = &report.totals;
            s += &format!(
                "total: {} evaluations, {} passes, {} fails, {} vacuous, {} errors\n",
                t.evaluations, t.passes, t.fails, t.vacuous, t.errors
            );
            for c in report.results.iter().filter(|c| c.fails > 0) {
                for l in c.links.iter().filter(|l| l.fails > 0) {
                    s += &format!(
                        "VIOLATION {} {}: {} of {} evaluations, min slack {}\n",
                        c.id.name(),
                        l.link,
                        l.fails,
                        l.evaluations,
                        l.min_slack.map(sig6).unwrap_or_default()
                    );
                }
                if let Some(w) = &c.worst {
                    s += &format!("          worst witness: {}\n", w.witness);
                }
            }
            for e in &report.errors {
                s += &format!("ERROR {}: {} ({})\n", e.id.map(|i| i.name()).unwrap_or("instance"), e.message, e.witness);
            }
            s
        }
    }
}

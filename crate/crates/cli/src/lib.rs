//! The `schubert` command-line tool.
//!
//! Exit codes: 0 success, 1 usage error, 2 resource limit, 3 verification
//! mismatch.

pub mod cache;
pub mod dot;

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use schubert_core::bruhat::{self, IntPolynomial};
use schubert_core::rootsys::{self, RootSystem, TypeLabel};
use schubert_core::schubert::{self as sch, ClassificationVerdict, SpiralFamily};
use schubert_core::series::{self, ForkStats, KG};
use schubert_core::weyl::{parse_coords, CorootElement};
use schubert_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Verb {
    /// Classify the Schubert variety X_λ
    Classify,
    /// List all λ up to a given length, level by level
    Enumerate,
    /// Hasse diagram of W̃^S up to a given length
    Hasse,
    /// Closed parabolic orbits
    Cpos,
    /// Chains up to a given length
    Chains,
    /// Bott series prefix and fork statistics
    Series,
    /// Spiral classes in type A
    Spiral,
    /// Cross-check the classification against brute force
    Verify,
}

#[derive(Debug, Parser)]
#[command(name = "schubert", version, about = "Schubert varieties in affine Grassmannians")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Root system type (A-G)
    #[arg(long = "type", short = 't', global = true)]
    type_label: Option<String>,
    /// Rank of the root system
    #[arg(long, short = 'r', global = true)]
    rank: Option<usize>,
    /// Coordinates a_1,...,a_n of λ
    #[arg(long, short = 'l', global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// Maximal S-length
    #[arg(long = "max-len", short = 'm', global = true, allow_hyphen_values = true)]
    max_len: Option<i64>,
    #[arg(long, short = 'f', global = true, value_enum)]
    format: Option<Format>,
    /// Verdict cache file (JSON lines)
    #[arg(long = "cache", global = true)]
    cache_path: Option<PathBuf>,
    /// Spiral index k
    #[arg(long, short = 'k', global = true)]
    k: Option<u64>,
    /// Use the flipped spiral family
    #[arg(long, global = true)]
    prime: bool,
}

/// A validated command.
#[derive(Debug, Clone)]
pub struct Command {
    pub verb: Verb,
    pub type_label: TypeLabel,
    pub rank: usize,
    pub lambda: Option<Vec<i64>>,
    pub max_len: Option<u64>,
    pub format: Option<Format>,
    pub cache_path: Option<PathBuf>,
    pub k: Option<u64>,
    pub prime: bool,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Mismatch(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Resource(_) => EXIT_RESOURCE,
            CliError::Mismatch(_) => EXIT_MISMATCH,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Resource(m) | CliError::Mismatch(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceLimit(_) | Error::OracleCapExceeded(_) => CliError::Resource(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl Command {
    fn from_cli(cli: Cli) -> CliResult<Self> {
        let type_label: TypeLabel = cli
            .type_label
            .as_deref()
            .ok_or_else(|| usage("--type is required"))?
            .parse()?;
        let rank = cli.rank.ok_or_else(|| usage("--rank is required"))?;
        let lambda = cli.lambda.as_deref().map(parse_coords).transpose()?;
        let max_len = match cli.max_len {
            Some(m) if m < 0 => return Err(usage(format!("--max-len must be nonnegative, got {m}"))),
            Some(m) => Some(m as u64),
            None => None,
        };
        let cmd = Command {
            verb: cli.verb,
            type_label,
            rank,
            lambda,
            max_len,
            format: cli.format,
            cache_path: cli.cache_path,
            k: cli.k,
            prime: cli.prime,
        };
        match cmd.verb {
            Verb::Classify if cmd.lambda.is_none() => Err(usage("classify requires --lambda")),
            Verb::Enumerate | Verb::Hasse | Verb::Chains | Verb::Verify if cmd.max_len.is_none() => {
                Err(usage("this command requires --max-len"))
            }
            Verb::Spiral if cmd.k.is_none() => Err(usage("spiral requires --k")),
            _ => Ok(cmd),
        }
    }

    fn max_len(&self) -> u64 {
        self.max_len.unwrap_or(0)
    }
}

/// Parses arguments (including the program name) and executes the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let result = Command::from_cli(cli).and_then(|cmd| {
        let cache_path = std::env::var_os(cache::CACHE_ENV)
            .map(PathBuf::from)
            .or_else(|| cmd.cache_path.clone());
        execute(&cmd, cache_path, err)
    });
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            let _ = out.flush();
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.code()
        }
    }
}

/// Runs a validated command and returns its complete output.
pub fn execute(cmd: &Command, cache_path: Option<PathBuf>, warn: &mut dyn Write) -> CliResult<String> {
    let rs = rootsys::shared(cmd.type_label, cmd.rank)?;
    match cmd.verb {
        Verb::Classify => classify_cmd(cmd, &rs, cache_path, warn),
        Verb::Enumerate => enumerate_cmd(cmd, &rs),
        Verb::Hasse => hasse_cmd(cmd, &rs),
        Verb::Cpos => cpos_cmd(cmd, &rs),
        Verb::Chains => chains_cmd(cmd, &rs),
        Verb::Series => series_cmd(cmd, &rs),
        Verb::Spiral => spiral_cmd(cmd, &rs),
        Verb::Verify => verify_cmd(cmd, &rs),
    }
}

fn verdict_json(v: &ClassificationVerdict) -> Value {
    let rs = v.lambda.rs();
    json!({
        "type": rs.type_label().to_string(),
        "rank": rs.rank(),
        "lambda": v.lambda.coords(),
        "labels": v.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        "palindromic": v.palindromic,
        "smooth": v.smooth,
        "dim": v.dim,
        "poincare": v.poincare.coeffs(),
    })
}

fn labels_of(v: &Value) -> Vec<String> {
    let labels: Vec<String> = v["labels"]
        .as_array()
        .map(|a| a.iter().filter_map(|x| x.as_str().map(String::from)).collect())
        .unwrap_or_default();
    if labels.is_empty() {
        vec!["NotPalindromic".into()]
    } else {
        labels
    }
}

fn coords_text(v: &Value) -> String {
    v["lambda"]
        .as_array()
        .map(|a| a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .unwrap_or_default()
}

fn csv_rows(rows: &[Value]) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Usage(e.to_string());
    w.write_record(["lambda", "lengthS", "palindromic", "labels", "dim"]).map_err(io)?;
    for r in rows {
        w.write_record([
            coords_text(r),
            r["dim"].to_string(),
            r["palindromic"].to_string(),
            labels_of(r).join(";"),
            r["dim"].to_string(),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn verdict_text(v: &Value) -> String {
    let poincare: Vec<i64> = v["poincare"]
        .as_array()
        .map(|a| a.iter().filter_map(Value::as_i64).collect())
        .unwrap_or_default();
    format!(
        "lambda      ({})\nlabels      {}\npalindromic {}\nsmooth      {}\ndim         {}\npoincare    {}\n",
        coords_text(v),
        labels_of(v).join(", "),
        v["palindromic"],
        v["smooth"],
        v["dim"],
        IntPolynomial::new(poincare),
    )
}

fn classify_cmd(
    cmd: &Command,
    rs: &Arc<RootSystem>,
    cache_path: Option<PathBuf>,
    warn: &mut dyn Write,
) -> CliResult<String> {
    let coords = cmd.lambda.clone().expect("validated");
    let lam = CorootElement::new(rs, coords.clone())?;
    let key = (rs.type_label().to_string(), rs.rank(), coords);
    let mut cache = cache_path.map(|p| cache::VerdictCache::load(&p, warn));
    let record = match cache.as_ref().and_then(|c| c.get(&key)).cloned() {
        Some(v) => v,
        None => {
            let v = verdict_json(&sch::classify(&lam)?);
            if let Some(c) = cache.as_mut() {
                c.insert(v.clone(), warn);
            }
            v
        }
    };
    Ok(match cmd.format.unwrap_or(Format::Json) {
        Format::Json => format!("{record}\n"),
        Format::Csv => csv_rows(&[record])?,
        Format::Text => verdict_text(&record),
        Format::Dot => return Err(usage("classify supports json, csv and text")),
    })
}

fn classify_all(els: &[CorootElement]) -> CliResult<Vec<ClassificationVerdict>> {
    els.par_iter()
        .map(sch::classify)
        .collect::<Result<Vec<_>, _>>()
        .map_err(CliError::from)
}

fn enumerate_cmd(cmd: &Command, rs: &Arc<RootSystem>) -> CliResult<String> {
    let levels = bruhat::enumerate_levels(rs, cmd.max_len())?;
    let bott = series::bott_prefix(rs, cmd.max_len() as usize);
    let format = cmd.format.unwrap_or(Format::Text);
    match format {
        Format::Text => {
            let mut s = format!("# {} levels 0..={}\n{:>6} {:>8} {:>8} {:>5}\n", rs.name(), cmd.max_len(), "level", "count", "bott", "ok");
            for (l, els) in &levels {
                let b = bott.coeff(*l as usize);
                s.push_str(&format!("{:>6} {:>8} {:>8} {:>5}\n", l, els.len(), b, els.len() as u64 == b));
            }
            for (l, els) in &levels {
                let list: Vec<String> = els.iter().map(|e| format!("({e})")).collect();
                s.push_str(&format!("{l}: {}\n", list.join(" ")));
            }
            Ok(s)
        }
        Format::Json => {
            let lv: Vec<Value> = levels
                .iter()
                .map(|(l, els)| {
                    json!({
                        "length": l,
                        "count": els.len(),
                        "bott": bott.coeff(*l as usize),
                        "elements": els.iter().map(|e| e.coords().to_vec()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(format!("{}\n", json!({"type": rs.type_label().to_string(), "rank": rs.rank(), "levels": lv})))
        }
        Format::Csv => {
            let all: Vec<CorootElement> = levels.values().flatten().cloned().collect();
            let rows: Vec<Value> = classify_all(&all)?.iter().map(verdict_json).collect();
            csv_rows(&rows)
        }
        Format::Dot => Err(usage("enumerate supports text, json and csv; use hasse for DOT")),
    }
}

fn hasse_cmd(cmd: &Command, rs: &Arc<RootSystem>) -> CliResult<String> {
    if !matches!(cmd.format, None | Some(Format::Dot)) {
        return Err(usage("hasse only supports dot output"));
    }
    let levels = bruhat::enumerate_levels(rs, cmd.max_len())?;
    let engine = bruhat::engine();
    Ok(dot::hasse_dot(engine, &levels, &|mu| engine.is_palindromic(mu))?)
}

fn cpos_cmd(cmd: &Command, rs: &Arc<RootSystem>) -> CliResult<String> {
    let cpos = sch::enumerate_cpos(rs);
    match cmd.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = format!("# {}: {} non-trivial closed parabolic orbits\n", rs.name(), cpos.len());
            s.push_str("I\tN(I)\tdim\ttop\n");
            for d in cpos.iter() {
                let names = |v: &[rootsys::Node]| v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
                s.push_str(&format!("{{{}}}\t{{{}}}\t{}\t({})\n", names(&d.nodes), names(&d.neighbors), d.dim, d.top));
            }
            Ok(s)
        }
        Format::Json => {
            let v: Vec<Value> = cpos
                .iter()
                .map(|d| {
                    json!({
                        "nodes": d.nodes.iter().map(|n| n.0).collect::<Vec<_>>(),
                        "neighbors": d.neighbors.iter().map(|n| n.0).collect::<Vec<_>>(),
                        "dim": d.dim,
                        "top": d.top.coords(),
                    })
                })
                .collect();
            Ok(format!("{}\n", Value::Array(v)))
        }
        Format::Csv => {
            let tops: Vec<CorootElement> = cpos.iter().map(|d| d.top.clone()).collect();
            let rows: Vec<Value> = classify_all(&tops)?.iter().map(verdict_json).collect();
            csv_rows(&rows)
        }
        Format::Dot => Err(usage("cpos supports text, json and csv")),
    }
}

fn chains_cmd(cmd: &Command, rs: &Arc<RootSystem>) -> CliResult<String> {
    let chains = sch::enumerate_chains(rs, cmd.max_len() as usize)?;
    let seq = |v: &[i64]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
    match cmd.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = format!("# {}: chains up to length {}\n", rs.name(), cmd.max_len());
            s.push_str("dim\ttop\tword\tcup\tpd\n");
            for c in &chains {
                s.push_str(&format!(
                    "{}\t({})\t{}\t({})\t{}\n",
                    c.word.len(),
                    c.top,
                    c.word,
                    seq(&c.cup_sequence),
                    sch::chain_pd(c)
                ));
            }
            Ok(s)
        }
        Format::Json => {
            let v: Vec<Value> = chains
                .iter()
                .map(|c| {
                    json!({
                        "top": c.top.coords(),
                        "word": c.word.to_string(),
                        "cup_sequence": c.cup_sequence,
                        "pd": sch::chain_pd(c),
                    })
                })
                .collect();
            Ok(format!("{}\n", Value::Array(v)))
        }
        Format::Csv => {
            let tops: Vec<CorootElement> = chains.iter().map(|c| c.top.clone()).collect();
            let rows: Vec<Value> = classify_all(&tops)?.iter().map(verdict_json).collect();
            csv_rows(&rows)
        }
        Format::Dot => Err(usage("chains supports text, json and csv")),
    }
}

fn fork_json(f: &ForkStats) -> Value {
    json!({
        "k_g": match f.k_g { KG::Finite(k) => json!(k), KG::Infinite => json!("inf") },
        "a_kg": f.a_kg,
    })
}

fn series_cmd(cmd: &Command, rs: &Arc<RootSystem>) -> CliResult<String> {
    let cutoff = cmd.max_len.unwrap_or(20) as usize;
    let bott = series::bott_prefix(rs, cutoff);
    let by_series = series::fork_stats_from_series(rs);
    let by_path = series::fork_stats_from_path(rs);
    match cmd.format.unwrap_or(Format::Text) {
        Format::Text => {
            let coeffs: Vec<String> = bott.coeffs.iter().map(|c| c.to_string()).collect();
            let a = |f: &ForkStats| f.a_kg.map_or("-".to_string(), |a| a.to_string());
            Ok(format!(
                "type        {}\nexponents   {:?}\nbott        {}\nk_G         {} (path walk {})\na_kG        {} (path walk {})\n",
                rs.name(),
                rs.exponents(),
                coeffs.join(" "),
                by_series.k_g,
                by_path.k_g,
                a(&by_series),
                a(&by_path),
            ))
        }
        Format::Json => Ok(format!(
            "{}\n",
            json!({
                "type": rs.type_label().to_string(),
                "rank": rs.rank(),
                "exponents": rs.exponents(),
                "bott": bott.coeffs,
                "fork": fork_json(&by_series),
                "fork_path": fork_json(&by_path),
            })
        )),
        Format::Csv => {
            let mut s = String::from("degree,coefficient\n");
            for (k, c) in bott.coeffs.iter().enumerate() {
                s.push_str(&format!("{k},{c}\n"));
            }
            Ok(s)
        }
        Format::Dot => Err(usage("series supports text, json and csv")),
    }
}

fn spiral_cmd(cmd: &Command, rs: &Arc<RootSystem>) -> CliResult<String> {
    let k = cmd.k.expect("validated");
    let family = if cmd.prime { SpiralFamily::Prime } else { SpiralFamily::Plain };
    let lam = sch::spiral_lambda(rs, k, family)?;
    let p = bruhat::poincare_polynomial(&lam)?;
    let n = rs.rank();
    let q = series::q_binomial(n + k as usize, n);
    match cmd.format.unwrap_or(Format::Text) {
        Format::Text => Ok(format!(
            "lambda      ({lam})\nlengthS     {}\npoincare    {}\nq-binomial  {}\nmatch       {}\n",
            lam.length_s(),
            p,
            q,
            p == q
        )),
        Format::Json => Ok(format!(
            "{}\n",
            json!({
                "lambda": lam.coords(),
                "family": if cmd.prime { "prime" } else { "plain" },
                "k": k,
                "poincare": p.coeffs(),
                "q_binomial": q.coeffs(),
                "match": p == q,
            })
        )),
        Format::Csv => csv_rows(&[verdict_json(&sch::classify(&lam)?)]),
        Format::Dot => Err(usage("spiral supports text, json and csv")),
    }
}

/// Outcome of one verification check.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: &'static str,
    pub checked: usize,
    pub failures: Vec<String>,
}

/// Brute-force cross-checks over every λ with ℓ^S ≤ `max_len`.
pub fn verify_sweep(rs: &Arc<RootSystem>, max_len: u64) -> schubert_core::Result<Vec<Check>> {
    let levels = bruhat::enumerate_levels(rs, max_len)?;
    let bott = series::bott_prefix(rs, max_len as usize);
    let mut checks = Vec::new();

    let mut c = Check { name: "bott", checked: 0, failures: vec![] };
    for (l, els) in &levels {
        c.checked += 1;
        if els.len() as u64 != bott.coeff(*l as usize) {
            c.failures.push(format!("level {l}: {} elements, series {}", els.len(), bott.coeff(*l as usize)));
        }
    }
    checks.push(c);

    let all: Vec<CorootElement> = levels.values().flatten().cloned().collect();
    let verdicts: Vec<ClassificationVerdict> = all
        .par_iter()
        .map(sch::classify)
        .collect::<schubert_core::Result<Vec<_>>>()?;

    let mut c = Check { name: "classification", checked: 0, failures: vec![] };
    for v in &verdicts {
        c.checked += 1;
        if !v.consistent() {
            c.failures.push(format!("({}) predicted {} but poincare {}", v.lambda, v.palindromic, v.poincare.digit_string()));
        }
    }
    checks.push(c);

    let mut c = Check { name: "smooth-implies-pd", checked: 0, failures: vec![] };
    for v in verdicts.iter().filter(|v| v.smooth) {
        c.checked += 1;
        if !sch::pd_necessary(&v.lambda) {
            c.failures.push(format!("({})", v.lambda));
        }
    }
    checks.push(c);

    let mut c = Check { name: "single-negative-node", checked: 0, failures: vec![] };
    for v in verdicts.iter().filter(|v| v.poincare.is_palindromic() && !v.lambda.is_zero()) {
        c.checked += 1;
        if v.lambda.descents().len() != 1 {
            c.failures.push(format!("({})", v.lambda));
        }
    }
    checks.push(c);

    let mut c = Check { name: "chains", checked: 0, failures: vec![] };
    let tops: BTreeSet<CorootElement> = sch::enumerate_chains(rs, max_len as usize)?
        .into_iter()
        .map(|d| d.top)
        .collect();
    for v in verdicts.iter().filter(|v| !v.lambda.is_zero()) {
        c.checked += 1;
        let brute = v.poincare.coeffs().iter().all(|&x| x == 1);
        if brute != tops.contains(&v.lambda) {
            c.failures.push(format!("({}) chain {brute}", v.lambda));
        }
    }
    checks.push(c);

    let mut c = Check { name: "cpos", checked: 0, failures: vec![] };
    for d in sch::enumerate_cpos(rs).iter().filter(|d| d.dim <= max_len) {
        c.checked += 1;
        let p = bruhat::poincare_polynomial(&d.top)?;
        if !p.is_palindromic() || p.degree() != Some(d.dim as usize) {
            c.failures.push(format!("({}) dim {} poincare {}", d.top, d.dim, p.digit_string()));
        }
    }
    checks.push(c);

    let mut c = Check { name: "dominant-cpo", checked: 0, failures: vec![] };
    for lam in all.iter().filter(|l| l.is_dominant() && !l.is_zero()) {
        c.checked += 1;
        if sch::is_cpo(lam) != (lam.alpha0() == 2) {
            c.failures.push(format!("({})", lam));
        }
    }
    checks.push(c);
    Ok(checks)
}

fn verify_cmd(cmd: &Command, rs: &Arc<RootSystem>) -> CliResult<String> {
    let checks = verify_sweep(rs, cmd.max_len())?;
    let failed: usize = checks.iter().map(|c| c.failures.len()).sum();
    let text = match cmd.format.unwrap_or(Format::Text) {
        Format::Json => {
            let v: BTreeMap<&str, Value> = checks
                .iter()
                .map(|c| (c.name, json!({"checked": c.checked, "failures": c.failures})))
                .collect();
            format!("{}\n", json!({"type": rs.name(), "max_len": cmd.max_len(), "checks": v, "ok": failed == 0}))
        }
        _ => {
            let mut s = format!("# verify {} up to length {}\n", rs.name(), cmd.max_len());
            for c in &checks {
                let status = if c.failures.is_empty() { "ok" } else { "MISMATCH" };
                s.push_str(&format!("{:<22} {:>7} checked  {}\n", c.name, c.checked, status));
                for f in &c.failures {
                    s.push_str(&format!("    {f}\n"));
                }
            }
            s
        }
    };
    if failed > 0 {
        Err(CliError::Mismatch(format!("{failed} mismatches\n{text}")))
    } else {
        Ok(text)
    }
}

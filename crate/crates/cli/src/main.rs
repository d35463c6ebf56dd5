//! `shafbound`: runs the bound pipeline and its building blocks from the
//! command line.
//!
//! Exit status is 0 on success, 1 when the input is rejected, 2 when a
//! computation fails on valid input.

mod codec;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use shafbound_core::bounds::{self, chow_bound, Mode};
use shafbound_core::gotzmann::{decompose_greedy_with, length_upper_bound, lengths_recursive, GreedyConfig};
use shafbound_core::hilbert::{check_coeff_bounds, coeff_bound, CanonicalPolarization};
use shafbound_core::ratpoly::factorial;
use shafbound_core::{BigRational, BigUint, Magnitude, Policy};

use codec::{InstanceInput, MagnitudeJson, ReportJson};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("{0}")]
    Compute(String),
}

impl From<shafbound_core::Error> for CliError {
    fn from(e: shafbound_core::Error) -> Self {
        if e.is_validation() {
            CliError::Validation(e.to_string())
        } else {
            CliError::Compute(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Compute(format!("i/o: {e}"))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "shafbound", version, about = "Effective bounds for families of canonically polarized manifolds over curves")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,

    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Significant digits for log-scale values (default 50)
    #[arg(long, global = true)]
    precision: Option<u32>,

    /// Exact integers with more digits than this switch to log scale
    #[arg(long, global = true)]
    max_exact_digits: Option<u64>,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Binomial-sum decomposition, length table and tower bound of a polynomial
    Gotzmann {
        /// Coefficients ascending by degree, e.g. "[1,3]" for 3x+1
        #[arg(long)]
        poly: String,
        /// Give up past this many terms
        #[arg(long, default_value_t = 10_000_000)]
        max_terms: u64,
    },
    /// Check a Hilbert polynomial against the coefficient bounds for (n, v)
    Coeffbound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        v: String,
        #[arg(long)]
        h: Option<String>,
    },
    /// Full constant report for (g, s, h) or (g, s, n, v)
    Constants(InstanceArgs),
    /// One Chow-variety component bound
    Chow {
        #[arg(long = "m")]
        m: String,
        #[arg(long)]
        kappa: u64,
        #[arg(long)]
        delta1: String,
        #[arg(long)]
        delta2: String,
    },
    /// Run every instance of a JSON grid {"grid": [...]} and emit one row each
    Sweep {
        #[arg(long)]
        grid: PathBuf,
        /// Worker threads (default: one per core)
        #[arg(long)]
        jobs: Option<usize>,
    },
}

#[derive(Args, Debug)]
struct InstanceArgs {
    #[arg(long)]
    g: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    v: Option<String>,
    /// Hilbert polynomial, coefficients ascending by degree
    #[arg(long)]
    h: Option<String>,
    /// Ample-twist degree (default 2)
    #[arg(long)]
    a: Option<u64>,
    /// Use a = (m0 - 1)(2g - 2); needs g >= 2
    #[arg(long)]
    pluricanonical: bool,
    /// exact-h or volume-bounded (default: exact-h when h is given)
    #[arg(long)]
    mode: Option<String>,
    /// Re-run the instance echoed in a report's "inputs" block (or a bare
    /// instance object)
    #[arg(long, conflicts_with_all = ["g", "s", "n", "v", "h", "a", "pluricanonical", "mode"])]
    inputs: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(&cli) {
        Ok(text) => match emit(&cli, &text) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => report_error(&e),
        },
        Err((e, partial)) => {
            // sweeps still write the rows that did succeed
            if let Some(text) = partial {
                if let Err(e) = emit(&cli, &text) {
                    return report_error(&e);
                }
            }
            report_error(&e)
        }
    }
}

fn report_error(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        CliError::Validation(_) => ExitCode::from(1),
        CliError::Compute(_) => ExitCode::from(2),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

type RunResult = Result<String, (CliError, Option<String>)>;

fn run(cli: &Cli) -> RunResult {
    let plain = |r: Result<String, CliError>| r.map_err(|e| (e, None));
    match &cli.cmd {
        Command::Gotzmann { poly, max_terms } => plain(cmd_gotzmann(cli, poly, *max_terms)),
        Command::Coeffbound { n, v, h } => plain(cmd_coeffbound(cli, *n, v, h.as_deref())),
        Command::Constants(args) => plain(cmd_constants(cli, args)),
        Command::Chow { m, kappa, delta1, delta2 } => plain(cmd_chow(cli, m, *kappa, delta1, delta2)),
        Command::Sweep { grid, jobs } => cmd_sweep(cli, grid, *jobs),
    }
}

fn policy(cli: &Cli) -> Result<Policy, CliError> {
    let input = InstanceInput { precision: cli.precision, max_exact_digits: cli.max_exact_digits, ..Default::default() };
    input.policy()
}

fn to_json(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn no_csv(cmd: &str) -> CliError {
    CliError::Validation(format!("{cmd} has no csv output; use --format json or text"))
}

fn parse_biguint(s: &str, what: &str) -> Result<BigUint, CliError> {
    s.trim()
        .parse::<BigUint>()
        .map_err(|_| CliError::Validation(format!("{what} must be a non-negative integer, got {s:?}")))
}

fn cmd_gotzmann(cli: &Cli, poly: &str, max_terms: u64) -> Result<String, CliError> {
    let p = codec::parse_poly(poly)?;
    let pol = policy(cli)?;
    let dec = decompose_greedy_with(&p, &GreedyConfig { max_terms })?;
    let n = p.degree() as usize;
    let table = lengths_recursive(&p, n)?;
    // μ_P needs every k!·p_k integral; report null when it is not
    let star = match length_upper_bound(&p, n, &pol) {
        Ok(s) => Some(s),
        Err(shafbound_core::Error::NonIntegral(_)) => None,
        Err(e) => return Err(e.into()),
    };
    match cli.format {
        Format::Json => Ok(to_json(&json!({
            "a": dec.a_seq(),
            "length": dec.length(),
            "lengths": codec::length_table_json(&table),
            "ell_star": star.as_ref().map(|s| MagnitudeJson::new(s, pol.digits)),
        }))),
        Format::Text => {
            let a: Vec<String> = dec.a_seq().iter().map(u32::to_string).collect();
            let ell: Vec<String> = table.ell().iter().map(|x| x.to_string()).collect();
            let star = star.map_or_else(|| "undefined (some k!p_k is not an integer)".into(), |s| s.to_human(pol.digits));
            Ok(format!("a ({})\nlength {}\nell {}\nell* {star}\n", a.join(","), dec.length(), ell.join(" ")))
        }
        Format::Csv => Err(no_csv("gotzmann")),
    }
}

fn cmd_coeffbound(cli: &Cli, n: usize, v: &str, h: Option<&str>) -> Result<String, CliError> {
    let v = codec::parse_rat(v)?;
    let h = h.map(codec::parse_poly).transpose()?;
    let cp = CanonicalPolarization::new(n, v.clone(), h.clone())?;
    let checks = if h.is_some() { Some(check_coeff_bounds(&cp)?) } else { None };
    let nf = BigRational::from_integer(factorial(n as u64).into());
    let rows: Vec<Value> = (0..=n)
        .map(|k| {
            let (relation, bound) = if k == 0 { ("=", &v / &nf) } else { ("<", coeff_bound(n as u64, k as u64, &v)) };
            let mut row = json!({
                "k": k,
                "index": n - k,
                "relation": relation,
                "bound": codec::rat_string(&bound),
            });
            if let (Some(h), Some(ok)) = (&h, &checks) {
                row["coefficient"] = json!(codec::rat_string(&h.coeff(n - k)));
                row["ok"] = json!(ok[k]);
            }
            row
        })
        .collect();
    let all = checks.as_ref().map(|c| c.iter().all(|&b| b));
    match cli.format {
        Format::Json => Ok(to_json(&json!({
            "n": n,
            "v": codec::rat_string(&v),
            "h": h.as_ref().map(codec::poly_strings),
            "bounds": rows,
            "all_within": all,
        }))),
        Format::Text => {
            let mut s = String::new();
            for r in &rows {
                s += &format!("|h_{}| {} {}", r["index"], r["relation"].as_str().unwrap(), r["bound"].as_str().unwrap());
                if let Some(c) = r.get("coefficient") {
                    s += &format!("  h = {}  {}", c.as_str().unwrap(), if r["ok"] == true { "ok" } else { "VIOLATED" });
                }
                s.push('\n');
            }
            Ok(s)
        }
        Format::Csv => Err(no_csv("coeffbound")),
    }
}

fn instance_input(cli: &Cli, args: &InstanceArgs) -> Result<InstanceInput, CliError> {
    let mut input = if let Some(path) = &args.inputs {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        let mut v: Value = serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?;
        if let Some(inner) = v.get_mut("inputs") {
            v = inner.take();
        }
        InstanceInput::deserialize(&v).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))?
    } else {
        let need = |name: &str| CliError::Validation(format!("--{name} is required (or pass --inputs FILE)"));
        let h = match &args.h {
            Some(h) => Some(serde_json::from_str::<Value>(h).map_err(|e| CliError::Validation(format!("--h {h:?}: {e}")))?),
            None => None,
        };
        InstanceInput {
            g: args.g.ok_or_else(|| need("g"))?,
            s: args.s.ok_or_else(|| need("s"))?,
            n: args.n.ok_or_else(|| need("n"))?,
            v: Value::String(args.v.clone().ok_or_else(|| need("v"))?),
            h,
            a: args.a,
            pluricanonical: Some(args.pluricanonical),
            mode: args.mode.clone(),
            precision: None,
            max_exact_digits: None,
        }
    };
    if cli.precision.is_some() {
        input.precision = cli.precision;
    }
    if cli.max_exact_digits.is_some() {
        input.max_exact_digits = cli.max_exact_digits;
    }
    Ok(input)
}

fn run_instance(inst: &codec::Instance) -> Result<ReportJson, CliError> {
    let r = match inst.mode {
        Mode::ExactH => bounds::c_gsh(&inst.params, &inst.policy)?,
        Mode::VolumeBounded => bounds::c_gsnv(&inst.params, &inst.policy)?,
    };
    Ok(ReportJson::new(inst, &r))
}

fn csv_text(rows: &[Vec<String>]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::Compute(format!("csv: {e}"));
    w.write_record(codec::CSV_HEADER).map_err(fail)?;
    for r in rows {
        w.write_record(r).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Compute(format!("csv: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf-8 cells"))
}

fn report_text(r: &ReportJson) -> String {
    let mag = |m: &MagnitudeJson| {
        let mut s = match m.level {
            0 => m.value().to_string(),
            1 => format!("≈10^{}", m.value()),
            _ => format!("≈10^10^{}", m.value()),
        };
        if let Some(w) = &m.enclosure_log10_width {
            s += &format!(" [enclosure width {w} in log10]");
        }
        s
    };
    let i = &r.inputs;
    let h = i.h.as_ref().map_or("-".to_string(), |h| format!("[{}]", h.join(",")));
    format!(
        "inputs g={} s={} n={} v={} h={h} a={}\nmode {}\nprecision {}\nm0 {}\nh(m0) {}\nmu {}\nell* {}\ndelta(m0) {}\nd(1,a) {}\nd(ell*,a) {}\nN {}\nd {}\nM {}\nC {}\n",
        i.g, i.s, i.n, i.v, i.a, r.mode, r.precision, r.m0, r.h_m0, r.mu, mag(&r.ell_star), r.delta_m0, r.d_1,
        mag(&r.d_ell_star), r.n_const, mag(&r.d_const), r.m_const, mag(&r.c),
    )
}

fn cmd_constants(cli: &Cli, args: &InstanceArgs) -> Result<String, CliError> {
    let inst = instance_input(cli, args)?.validate()?;
    let report = run_instance(&inst)?;
    match cli.format {
        Format::Json => Ok(to_json(&report)),
        Format::Csv => csv_text(&[codec::csv_row(0, &inst, &Ok(report))]),
        Format::Text => Ok(report_text(&report)),
    }
}

fn cmd_chow(cli: &Cli, m: &str, kappa: u64, delta1: &str, delta2: &str) -> Result<String, CliError> {
    let pol = policy(cli)?;
    let m = parse_biguint(m, "--m")?;
    let d1 = parse_biguint(delta1, "--delta1")?;
    let d2 = Magnitude::exact(parse_biguint(delta2, "--delta2")?);
    let b = chow_bound(&m, kappa, &d1, &d2, &pol)?;
    match cli.format {
        Format::Json => Ok(to_json(&json!({
            "M": m.to_string(),
            "kappa": kappa,
            "delta1": d1.to_string(),
            "delta2": delta2.trim(),
            "bound": MagnitudeJson::new(&b, pol.digits),
        }))),
        Format::Text => Ok(format!("{}\n", b.to_human(pol.digits))),
        Format::Csv => Err(no_csv("chow")),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Grid {
    grid: Vec<InstanceInput>,
}

fn cmd_sweep(cli: &Cli, path: &PathBuf, jobs: Option<usize>) -> RunResult {
    let plain = |e: CliError| (e, None);
    let text = fs::read_to_string(path)
        .map_err(|e| plain(CliError::Validation(format!("cannot read {}: {e}", path.display()))))?;
    let grid: Grid = serde_json::from_str(&text)
        .map_err(|e| plain(CliError::Validation(format!("{}: {e}", path.display()))))?;
    // every entry is validated before any of them runs
    let mut instances = Vec::with_capacity(grid.grid.len());
    for (i, mut input) in grid.grid.into_iter().enumerate() {
        input.precision = cli.precision.or(input.precision);
        input.max_exact_digits = cli.max_exact_digits.or(input.max_exact_digits);
        let inst = input.validate().map_err(|e| plain(CliError::Validation(format!("grid entry {i}: {e}"))))?;
        instances.push(inst);
    }
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = jobs {
        if j == 0 {
            return Err(plain(CliError::Validation("--jobs must be positive".into())));
        }
        builder = builder.num_threads(j);
    }
    let pool = builder.build().map_err(|e| plain(CliError::Compute(format!("thread pool: {e}"))))?;
    // collect keeps input order whatever order the workers finish in
    let outcomes: Vec<Result<ReportJson, String>> =
        pool.install(|| instances.par_iter().map(|inst| run_instance(inst).map_err(|e| e.to_string())).collect());
    let failures = outcomes.iter().filter(|o| o.is_err()).count();
    let out = match cli.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                instances.iter().zip(&outcomes).enumerate().map(|(i, (inst, o))| codec::csv_row(i, inst, o)).collect();
            csv_text(&rows).map_err(plain)?
        }
        Format::Json => {
            let items: Vec<Value> = outcomes
                .iter()
                .zip(&instances)
                .map(|(o, inst)| match o {
                    Ok(r) => serde_json::to_value(r).expect("serializable"),
                    Err(e) => json!({ "inputs": inst.inputs(), "error": e }),
                })
                .collect();
            to_json(&json!({ "results": items }))
        }
        Format::Text => outcomes
            .iter()
            .enumerate()
            .map(|(i, o)| match o {
                Ok(r) => format!("# {i}\n{}", report_text(r)),
                Err(e) => format!("# {i}\nerror {e}\n"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
    };
    if failures > 0 {
        return Err((CliError::Compute(format!("{failures} of {} grid entries failed", instances.len())), Some(out)));
    }
    Ok(out)
}

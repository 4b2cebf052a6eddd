use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qeuclid_cli::{expr, registry};
use qeuclid_core::geometry::Geometry;
use qeuclid_core::report::Report;
use qeuclid_core::representation::{self as rep, IrrepParams};
use qeuclid_core::Error;

#[derive(Parser)]
#[command(name = "qeuclid", version, about = "Exact checks and truncated representations for the quantum Euclidean space R_q^3")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run registered checks (`all` or one id)
    Verify {
        #[arg(default_value = "all")]
        which: String,
        #[arg(long, default_value_t = registry::DEFAULT_SEED)]
        seed: u64,
        /// Write the JSON report here
        #[arg(long)]
        json: Option<PathBuf>,
        /// List check ids and exit
        #[arg(long)]
        list: bool,
    },
    /// Normal form of an expression
    Nf { expr: String },
    /// Involution of an expression
    Star { expr: String },
    /// Exterior derivative of an expression
    D { expr: String },
    /// Truncated irreducible representation
    Rep {
        #[arg(value_enum)]
        sub: RepCmd,
        #[arg(long)]
        q: f64,
        #[arg(long, default_value_t = 1.0)]
        c: f64,
        #[arg(long, default_value = "+", allow_hyphen_values = true)]
        eta: String,
        #[arg(long, default_value_t = 8)]
        n0max: u32,
        #[arg(long, default_value_t = 6)]
        nmax: i32,
        #[arg(long, default_value_t = 4)]
        mmax: i32,
        /// Directory for CSV/JSON output
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RepCmd {
    Check,
    Spectrum,
    LimitMap,
    Annuli,
}

enum Fail {
    Usage(String),
    Check,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Usage(e.to_string())
    }
}

fn io(e: std::io::Error) -> Fail {
    Fail::Usage(format!("i/o: {e}"))
}

fn print_report(title: &str, r: &Report) {
    for f in &r.findings {
        let mark = if f.passed { "pass" } else { "FAIL" };
        match &f.witness {
            Some(w) => println!("{mark}  {title}: {}  [{w}]", f.name),
            None => println!("{mark}  {title}: {}", f.name),
        }
    }
    for (k, v) in &r.info {
        println!("info  {title}: {k} = {v}");
    }
}

fn parse_eta(s: &str) -> Result<i8, Fail> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(1),
        "-" | "-1" | "minus" => Ok(-1),
        other => Err(Fail::Usage(format!("eta must be + or -, got {other:?}"))),
    }
}

fn with_geometry(text: &str, f: impl FnOnce(&Geometry, qeuclid_core::Element) -> qeuclid_core::Result<qeuclid_core::Element>) -> Result<(), Fail> {
    let ast = expr::parse(text)?;
    let geo = Geometry::new()?;
    let e = expr::eval(&geo, &ast)?;
    println!("{}", f(&geo, e)?);
    Ok(())
}

fn write_json<T: serde::Serialize>(path: &std::path::Path, value: &T) -> Result<(), Fail> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Fail::Usage(e.to_string()))?;
    fs::write(path, text + "\n").map_err(io)
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.cmd {
        Cmd::Verify { which, seed, json, list } => {
            if list {
                for c in registry::registry() {
                    println!("{:<22} {}", c.id, c.anchor);
                }
                return Ok(());
            }
            let selected = registry::select(&which).ok_or_else(|| Fail::Usage(format!("unknown check id {which:?}")))?;
            let geo = Geometry::new()?;
            let report = registry::run(&geo, &selected, seed);
            for c in &report.checks {
                println!("{:<5} {:<22} {:>7} ms  {} findings", c.status, c.check, c.elapsed_ms, c.findings);
                if let Some(w) = &c.witness {
                    println!("      {w}");
                }
            }
            if let Some(path) = json {
                write_json(&path, &report)?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Fail::Check)
            }
        }
        Cmd::Nf { expr } => with_geometry(&expr, |_, e| Ok(e)),
        Cmd::Star { expr } => with_geometry(&expr, |g, e| g.star_omega(&e)),
        Cmd::D { expr } => with_geometry(&expr, |g, e| g.alg().d(&e)),
        Cmd::Rep { sub, q, c, eta, n0max, nmax, mmax, out } => {
            let p = IrrepParams::new(parse_eta(&eta)?, c, q, n0max, nmax, mmax)?;
            if let Some(dir) = &out {
                fs::create_dir_all(dir).map_err(io)?;
            }
            let report = match sub {
                RepCmd::Check => {
                    let res = rep::check_relations(&p)?;
                    for r in &res.residuals {
                        let mark = if r.passed { "pass" } else { "FAIL" };
                        println!("{mark}  {:<36} {:>10.3e}  (tol {:e})", r.name, r.value, r.tolerance);
                    }
                    println!("interior states: {}", res.interior_states);
                    if let Some(dir) = &out {
                        write_json(&dir.join("residuals.json"), &res)?;
                    }
                    res.to_report()
                }
                RepCmd::Spectrum => rep::spectra_report(&p)?,
                RepCmd::LimitMap => {
                    let map = rep::limit_map(&p)?;
                    match &out {
                        Some(dir) => {
                            let f = fs::File::create(dir.join("limit_map.csv")).map_err(io)?;
                            map.write_csv(f)?;
                        }
                        None => map.write_csv(std::io::stdout())?,
                    }
                    rep::limit_report(&p)?
                }
                RepCmd::Annuli => rep::annuli_report(&p)?,
            };
            if !matches!(sub, RepCmd::Check) {
                print_report("rep", &report);
            }
            if let Some(dir) = &out {
                write_json(&dir.join("report.json"), &serde_json::json!({ "schema": registry::SCHEMA, "params": p, "report": report }))?;
            }
            if report.passed() {
                Ok(())
            } else {
                Err(Fail::Check)
            }
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Check) => ExitCode::from(1),
        Err(Fail::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

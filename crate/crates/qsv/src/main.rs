//! `qsv` command line: string-function coefficients, characters, and the
//! identity verifier.
//!
//! Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parameter
//! error, 3 some checks were skipped on evaluation errors (1 under
//! `--strict-skip`).

use clap::{Parser, Subcommand};
use qsv::hecke::{character, string_coeff, StringFnId};
use qsv::registry::report::{write_report, write_rows, Format};
use qsv::registry::{builtin, run_suite};
use qsv::series::{Exponent, GaussianRational, QZSeries};
use serde::Serialize;
use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_SKIPPED: u8 = 3;

#[derive(Parser)]
#[command(name = "qsv", version, about = "Exact q-series engine and identity verifier")]
struct Cli {
    /// key=value file presetting order, threads and format; flags win
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of C_{m,l} (or the normalized form) at (p, p')
    Coeffs {
        p: i64,
        pprime: i64,
        m: i64,
        ell: i64,
        #[arg(long)]
        order: Option<String>,
        /// Emit the integral normalized series instead of C_{m,l}
        #[arg(long)]
        normalized: bool,
        #[arg(long)]
        format: Option<Format>,
    },
    /// The character chi_l(z;q) assembled from string functions
    Character {
        p: i64,
        pprime: i64,
        ell: i64,
        #[arg(long)]
        order: Option<String>,
        #[arg(long)]
        format: Option<Format>,
    },
    /// Run the builtin identity catalogue
    Verify {
        /// Glob over check ids
        #[arg(long, default_value = "")]
        filter: String,
        /// Override every check's default order
        #[arg(long)]
        order: Option<String>,
        #[arg(long, env = "QSV_THREADS")]
        threads: Option<usize>,
        #[arg(long)]
        format: Option<Format>,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Treat skipped checks as failures (exit 1 instead of 3)
        #[arg(long)]
        strict_skip: bool,
        /// Omit wall times so reports are byte-stable
        #[arg(long)]
        no_timing: bool,
        /// Add 1·q^E to every selected right side; a sound gate then fails
        #[arg(long, value_name = "E")]
        mutate: Option<String>,
    },
    /// Every check id with its anchor
    List {
        #[arg(long)]
        format: Option<Format>,
    },
}

/// Values preset by `--config`.
#[derive(Default)]
struct Preset {
    order: Option<String>,
    threads: Option<usize>,
    format: Option<Format>,
}

fn read_preset(path: &Path) -> Result<Preset, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
    let mut kv = HashMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key=value", n + 1))?;
        kv.insert(k.trim().to_string(), v.trim().to_string());
    }
    let mut p = Preset::default();
    for (k, v) in kv {
        match k.as_str() {
            "order" => p.order = Some(v),
            "threads" => p.threads = Some(v.parse().map_err(|_| format!("config threads: `{v}` is not a count"))?),
            "format" => p.format = Some(Format::from_str(&v).map_err(|_| format!("config format: `{v}`"))?),
            other => return Err(format!("config: unknown key `{other}`")),
        }
    }
    Ok(p)
}

fn parse_order(s: &str) -> Result<Exponent, String> {
    let e = Exponent::from_str(s.trim()).map_err(|_| format!("order `{s}` is not an exact rational"))?;
    if e <= Exponent::zero() {
        return Err(format!("order must be positive, got {s}"));
    }
    Ok(e)
}

#[derive(Serialize)]
struct CoeffRow {
    exponent: String,
    coefficient: String,
}

#[derive(Serialize)]
struct CharRow {
    q: String,
    z: String,
    coefficient: String,
}

fn rows(s: &QZSeries) -> Vec<CharRow> {
    s.terms()
        .map(|(eq, ez, c)| CharRow { q: eq.to_string(), z: ez.to_string(), coefficient: c.to_string() })
        .collect()
}


/// Failures win; skips are failures under `strict_skip` and exit 3 otherwise.
fn exit_code(fail: usize, skipped: usize, strict_skip: bool) -> u8 {
    match (fail, skipped) {
        (0, 0) => 0,
        (0, _) if !strict_skip => EXIT_SKIPPED,
        _ => EXIT_FAIL,
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    let preset = match &cli.config {
        Some(p) => read_preset(p)?,
        None => Preset::default(),
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    let io = |e: std::io::Error| {
        // A closed downstream pipe (`qsv list | head`) is not an error.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        e.to_string()
    };
    match cli.command {
        Command::Coeffs { p, pprime, m, ell, order, normalized, format } => {
            let id = StringFnId::new(p, pprime, m, ell).map_err(|e| e.to_string())?;
            let order = parse_order(order.or(preset.order).as_deref().unwrap_or("20"))?;
            let s = string_coeff(&id, normalized, &order).map_err(|e| e.to_string())?;
            let items: Vec<CoeffRow> = s
                .terms()
                .map(|(eq, _, c)| CoeffRow { exponent: eq.to_string(), coefficient: c.to_string() })
                .collect();
            write_rows(&mut out, format.or(preset.format).unwrap_or(Format::Text), &items, |r| format!("{} {}", r.exponent, r.coefficient))
                .map_err(io)?;
            Ok(0)
        }
        Command::Character { p, pprime, ell, order, format } => {
            let order = parse_order(order.or(preset.order).as_deref().unwrap_or("10"))?;
            let s = character(p, pprime, ell, &order).map_err(|e| e.to_string())?;
            write_rows(&mut out, format.or(preset.format).unwrap_or(Format::Text), &rows(&s), |r| {
                format!("{} {} {}", r.q, r.z, r.coefficient)
            })
            .map_err(io)?;
            Ok(0)
        }
        Command::Verify { filter, order, threads, format, output, strict_skip, no_timing, mutate } => {
            let order_s = order.or(preset.order);
            let order = order_s.as_deref().map(parse_order).transpose()?;
            let threads = threads.or(preset.threads).unwrap_or(1);
            if threads == 0 {
                return Err("threads must be at least 1".into());
            }
            let format = format.or(preset.format).unwrap_or(Format::Text);
            let rep = match mutate {
                None => run_suite(builtin(), &filter, order.as_ref(), threads),
                Some(e) => {
                    let e = Exponent::from_str(e.trim()).map_err(|_| format!("mutation exponent `{e}` is not an exact rational"))?;
                    let mutated: Vec<_> = builtin()
                        .iter()
                        .map(|c| c.perturbed(e.clone(), Exponent::zero(), GaussianRational::one()))
                        .collect();
                    let base = if filter.is_empty() { "*" } else { filter.as_str() };
                    run_suite(&mutated, &format!("{base}:mutated"), order.as_ref(), threads)
                }
            }
            .map_err(|e| e.to_string())?;
            let label = order_s.unwrap_or_else(|| "default".into());
            match output {
                Some(path) => {
                    let mut f = std::fs::File::create(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                    write_report(&mut f, &rep, "builtin", &label, format, !no_timing).map_err(io)?;
                }
                None => write_report(&mut out, &rep, "builtin", &label, format, !no_timing).map_err(io)?,
            }
            Ok(exit_code(rep.summary.fail, rep.summary.skipped, strict_skip))
        }
        Command::List { format } => {
            #[derive(Serialize)]
            struct Entry<'a> {
                id: &'a str,
                anchor: &'a str,
            }
            let items: Vec<Entry> = builtin().iter().map(|c| Entry { id: &c.id, anchor: &c.anchor }).collect();
            write_rows(&mut out, format.or(preset.format).unwrap_or(Format::Text), &items, |e| format!("{}  {}", e.id, e.anchor))
                .map_err(io)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("qsv: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_contract() {
        assert_eq!(exit_code(0, 0, false), 0);
        assert_eq!(exit_code(0, 0, true), 0);
        assert_eq!(exit_code(2, 0, false), EXIT_FAIL);
        assert_eq!(exit_code(0, 1, false), EXIT_SKIPPED);
        assert_eq!(exit_code(0, 1, true), EXIT_FAIL);
        assert_eq!(exit_code(1, 1, false), EXIT_FAIL);
    }
}

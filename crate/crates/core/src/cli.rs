//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when `verify` finds a mismatch, 2 for usage and
//! budget errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::census;
use crate::codec::{ComponentKey, CycleSpec, TargetFamily};
use crate::export;
use crate::hom::{HomComplex, DEFAULT_CELL_BUDGET};
use crate::homology::{self, ComponentReport, Ring};
use crate::morse;
use crate::verify::{self, GridConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "hom-cycles", version, about = "Hom complexes between cycles and paths")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a complex and summarize it (or print it as JSON).
    Build(ComplexArgs),
    /// Predicted components, cell counts and Euler characteristic.
    Census(CensusArgs),
    /// Components with Betti numbers and classification.
    Homology(HomologyArgs),
    /// Collapsing matchings, one line per stratum.
    Morse(ComplexArgs),
    /// Cross-check everything over a grid; exits 1 on any mismatch.
    Verify(VerifyArgs),
    /// Write a complex as a JSON document.
    Export(ExportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Cycle,
    Path,
}

impl From<FamilyArg> for TargetFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Cycle => TargetFamily::Cycle,
            FamilyArg::Path => TargetFamily::Path,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RingArg {
    Integer,
    Mod2,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Self {
        match r {
            RingArg::Integer => Ring::Integer,
            RingArg::Mod2 => Ring::Mod2,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComplexArgs {
    /// Source cycle length.
    #[arg(short)]
    pub m: usize,
    /// Target size.
    #[arg(short)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "cycle")]
    pub family: FamilyArg,
    /// Maximum number of cells to enumerate.
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    pub budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct CensusArgs {
    #[arg(short)]
    pub m: usize,
    #[arg(short)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct HomologyArgs {
    #[command(flatten)]
    pub complex: ComplexArgs,
    #[arg(long, value_enum, default_value = "integer")]
    pub ring: RingArg,
    /// Only components with this many returning points.
    #[arg(long)]
    pub r: Option<usize>,
    /// Only components with this parity class (1 odd, 2 even).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub parity: Option<u8>,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 8)]
    pub max_m: usize,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    /// Skip path targets.
    #[arg(long)]
    pub no_paths: bool,
    #[arg(long, value_enum, default_value = "integer")]
    pub ring: RingArg,
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    pub budget: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[arg(short)]
    pub m: usize,
    #[arg(short)]
    pub n: usize,
    #[arg(long, value_enum, default_value = "cycle")]
    pub family: FamilyArg,
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    pub budget: usize,
    /// Leave out cell codes.
    #[arg(long)]
    pub no_codes: bool,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Result of a command: text for standard output and an exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub status: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, stderr: String::new(), status: EXIT_OK }
    }

    fn usage(message: impl ToString) -> Self {
        Self { stdout: String::new(), stderr: message.to_string(), status: EXIT_USAGE }
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn build(args: &ComplexArgs) -> Result<HomComplex, Outcome> {
    export::build_family(args.m, args.n, args.family.into(), args.budget).map_err(Outcome::usage)
}

pub fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Build(args) => run_build(&args),
        Command::Census(args) => run_census(&args),
        Command::Homology(args) => run_homology(&args),
        Command::Morse(args) => run_morse(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Export(args) => run_export(&args),
    }
}

fn run_build(args: &ComplexArgs) -> Outcome {
    let x = match build(args) {
        Ok(x) => x,
        Err(e) => return e,
    };
    match args.format {
        Format::Json => match export::export(&x, args.family.into(), true) {
            Ok(doc) => Outcome::ok(json(&doc)),
            Err(e) => Outcome::usage(e),
        },
        Format::Text => {
            let comps = homology::components(&x);
            let mut out = String::new();
            let target = if args.family == FamilyArg::Cycle { "C" } else { "L" };
            writeln!(out, "Hom(C_{}, {target}_{})", args.m, args.n).unwrap();
            writeln!(out, "cells      {}", x.len()).unwrap();
            writeln!(out, "f-vector   {:?}", x.f_vector()).unwrap();
            writeln!(out, "euler      {}", x.euler_characteristic()).unwrap();
            writeln!(out, "components {}", comps.len()).unwrap();
            Outcome::ok(out)
        }
    }
}

#[derive(Serialize)]
struct CensusJson {
    m: usize,
    n: usize,
    row: Option<String>,
    components: Vec<census::CensusEntry>,
    cell_counts: Vec<(usize, Vec<String>)>,
    euler_characteristic: i64,
}

fn run_census(args: &CensusArgs) -> Outcome {
    let (m, n) = (args.m, args.n);
    if m < 3 || n < 3 {
        return Outcome::usage(format!("census needs m >= 3 and n >= 3, got m = {m}, n = {n}"));
    }
    let entries = census::component_table(m, n);
    let row = census::table_row(m, n);
    let mut strata: Vec<usize> =
        entries.iter().filter(|e| !e.key.is_point()).filter_map(|e| e.key.returning).collect();
    strata.dedup();
    let counts: Vec<(usize, Vec<String>)> = strata
        .iter()
        .map(|&r| {
            let cs = (0..=r.min(m - r))
                .map(|d| census::cell_count(m, n, r, d).map(|c| c.to_string()).unwrap_or_default())
                .collect();
            (r, cs)
        })
        .collect();
    let chi = census::euler_char(m, n);
    match args.format {
        Format::Json => Outcome::ok(json(&CensusJson {
            m,
            n,
            row: Some(row.to_string()),
            components: entries,
            cell_counts: counts,
            euler_characteristic: chi,
        })),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "Hom(C_{m}, C_{n})").unwrap();
            writeln!(out, "row        {row}").unwrap();
            let points = entries.iter().filter(|e| e.key.is_point()).count();
            let others: Vec<String> =
                entries.iter().filter(|e| !e.key.is_point()).map(|e| format!("{} ({})", e.label, e.predicted)).collect();
            writeln!(out, "points     {points}").unwrap();
            writeln!(out, "others     {}", if others.is_empty() { "-".to_string() } else { others.join(", ") }).unwrap();
            for (r, cs) in &counts {
                writeln!(out, "c_d(r={r})  {}", cs.join(" ")).unwrap();
            }
            writeln!(out, "euler      {chi}").unwrap();
            Outcome::ok(out)
        }
    }
}

fn key_matches(key: Option<&ComponentKey>, r: Option<usize>, parity: Option<u8>) -> bool {
    let r_ok = r.is_none_or(|r| key.is_some_and(|k| k.returning == Some(r)));
    let p_ok = parity.is_none_or(|p| key.is_some_and(|k| k.parity == Some(p)));
    r_ok && p_ok
}

fn run_homology(args: &HomologyArgs) -> Outcome {
    let c = &args.complex;
    let parity_meaningful = c.family == FamilyArg::Path || c.n % 2 == 0;
    if args.parity.is_some() && !parity_meaningful {
        return Outcome::usage("--parity only applies to even cycle targets and path targets");
    }
    if args.r.is_some() && c.family == FamilyArg::Cycle && c.n == 4 {
        return Outcome::usage("components of Hom(C_m, C_4) are not labelled by returning points");
    }
    let x = match build(c) {
        Ok(x) => x,
        Err(e) => return e,
    };
    let comps: Vec<_> = homology::components(&x)
        .into_iter()
        .filter(|comp| key_matches(comp.key.as_ref(), args.r, args.parity))
        .collect();
    let reports: Vec<ComponentReport> = match homology::analyze(&comps, args.ring.into()) {
        Ok(r) => r,
        Err(e) => return Outcome { stdout: String::new(), stderr: e.to_string(), status: EXIT_MISMATCH },
    };
    match c.format {
        Format::Json => Outcome::ok(json(&reports)),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{:<22} {:<28} {:<12} class", "component", "f-vector", "betti").unwrap();
            for r in &reports {
                let key = r.key.as_ref().map_or("-".to_string(), |k| k.to_string());
                let betti = r.betti.as_ref().map(|b| b.to_string()).unwrap_or_default();
                let class = r.classification.map(|c| c.to_string()).unwrap_or_default();
                writeln!(out, "{key:<22} {:<28} {betti:<12} {class}", format!("{:?}", r.f_vector)).unwrap();
            }
            writeln!(out, "{} components", reports.len()).unwrap();
            writeln!(out, "classes are read off homology; equal homology is necessary, not sufficient, for the homotopy types").unwrap();
            Outcome::ok(out)
        }
    }
}

fn run_morse(args: &ComplexArgs) -> Outcome {
    let spec = match CycleSpec::new(args.m, args.n, args.family.into()) {
        Ok(s) => s,
        Err(e) => return Outcome::usage(e),
    };
    let mut reports = morse::all_strata(&spec);
    reports.sort_by_key(|r| (r.returning, r.base));
    let failed = reports.iter().any(|r| !r.passed());
    let status = if failed { EXIT_MISMATCH } else { EXIT_OK };
    let stdout = match args.format {
        Format::Json => json(&reports),
        Format::Text => {
            let mut out = String::new();
            writeln!(out, "{:>3} {:>3} {:>7} {:>5} {:<8} {:<6} critical", "i", "r", "cells", "|S|", "acyclic", "sigma").unwrap();
            for r in &reports {
                writeln!(
                    out,
                    "{:>3} {:>3} {:>7} {:>5} {:<8} {:<6} {}",
                    r.base,
                    r.returning,
                    r.cells,
                    r.matched,
                    r.acyclic,
                    r.sigma_audit,
                    r.critical.join(" ")
                )
                .unwrap();
            }
            writeln!(out, "{} strata, {}", reports.len(), if failed { "MISMATCH" } else { "all collapse to one cell" }).unwrap();
            out
        }
    };
    Outcome { stdout, stderr: String::new(), status }
}

fn run_verify(args: &VerifyArgs) -> Outcome {
    let config = GridConfig {
        max_m: args.max_m,
        max_n: args.max_n,
        paths: !args.no_paths,
        ring: args.ring.into(),
        budget: args.budget,
    };
    let report = match verify::verify_grid(&config) {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    let status = if report.passed() { EXIT_OK } else { EXIT_MISMATCH };
    let stdout = match args.format {
        Format::Json => json(&report),
        Format::Text => report.render_text(),
    };
    Outcome { stdout, stderr: String::new(), status }
}

fn run_export(args: &ExportArgs) -> Outcome {
    let family: TargetFamily = args.family.into();
    let x = match export::build_family(args.m, args.n, family, args.budget) {
        Ok(x) => x,
        Err(e) => return Outcome::usage(e),
    };
    let text = match export::export(&x, family, !args.no_codes).and_then(|d| export::to_json(&d)) {
        Ok(t) => t + "\n",
        Err(e) => return Outcome::usage(e),
    };
    match &args.output {
        None => Outcome::ok(text),
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => Outcome::ok(format!("wrote {} cells to {}\n", x.len(), path.display())),
            Err(e) => Outcome::usage(format!("{}: {e}", path.display())),
        },
    }
}

//! Command-line front end: parse a cone spec, run the decision procedures,
//! and emit JSON certificates and reports.
//!
//! Exit codes for `analyze`: 0 = FG_certified, 1 = notFG_certified,
//! 2 = unknown. All commands use codes above 2 for errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::BigInt;

use conical::generation::{
    build_generating_set, decompose_point, verify_generating_set, GeneratingSet,
};
use conical::io;
use conical::lab;
use conical::symmetry::{self, Status, Verdict};
use conical::{cone::Cone, Result};

const EXIT_ERROR: u8 = 3;
const EXIT_USAGE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "conical",
    about = "Exact analysis of conical semigroups: finite-generation decisions, \
             generating sets, and point decompositions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide finite generation and print the verdict with its certificate.
    Analyze(AnalyzeArgs),
    /// Construct the rational sub-cone, Hilbert basis, and group generators.
    Generators(SpecArgs),
    /// Represent an integer cone point over the generating set.
    Decompose(DecomposeArgs),
    /// Exhaustively decompose every integer cone point in a coordinate box.
    Verify(VerifyArgs),
    /// Machine-check the non-generation fixtures.
    #[command(subcommand)]
    Lab(LabCommand),
}

#[derive(Args)]
struct SpecArgs {
    /// Path to the cone spec (JSON).
    spec: PathBuf,
}

#[derive(Args)]
struct AnalyzeArgs {
    spec: PathBuf,
    /// Re-parse the emitted certificate and replay its exact verifications.
    #[arg(long)]
    check: bool,
    /// Write an SVG diagram of the cone (2D only) to this path.
    #[arg(long, value_name = "FILE")]
    plot: Option<PathBuf>,
}

#[derive(Args)]
struct DecomposeArgs {
    spec: PathBuf,
    /// The point as a JSON integer list, e.g. "[12, 17]".
    #[arg(long)]
    point: String,
}

#[derive(Args)]
struct VerifyArgs {
    spec: PathBuf,
    /// Coordinate box bound (all coordinates in [-bound, bound]).
    #[arg(long, default_value_t = 30)]
    bound: u64,
}

#[derive(Subcommand)]
enum LabCommand {
    /// Scan the boundary x^{2k} + y^{2k} = z^{2k} for integer points.
    Fermat(FermatArgs),
    /// Check the 4D family points and their non-subtractability.
    Family(FamilyArgs),
}

#[derive(Args)]
struct FermatArgs {
    #[arg(long, default_value_t = 2)]
    k: u32,
    #[arg(long = "zmax", default_value_t = 100)]
    z_max: u64,
}

#[derive(Args)]
struct FamilyArgs {
    /// Check family indices 0..=n1.
    #[arg(long, default_value_t = 10)]
    n1: u32,
}

fn load_cone(path: &PathBuf) -> Result<Cone> {
    let text = std::fs::read_to_string(path)?;
    io::parse_cone_spec(&text)
}

/// Generating set implied by a verdict's certificate: the fixing generator
/// if one exists, otherwise no generators (rational cone).
fn generating_set_for(c: &Cone, verdict: &Verdict) -> Result<GeneratingSet> {
    if verdict.status != Status::FgCertified {
        return Err(conical::Error::NotFg(verdict.reason.clone()));
    }
    let gens = verdict
        .certificate
        .as_ref()
        .and_then(|cert| cert.fixing_generator.clone())
        .map(|a| vec![a])
        .unwrap_or_default();
    build_generating_set(c, gens)
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<u8> {
    let c = load_cone(&args.spec)?;
    let verdict = symmetry::decide(&c)?;
    let j = io::verdict_json(&verdict);
    print!("{}", io::to_pretty(&j));
    if args.check {
        let replayed: serde_json::Value = serde_json::from_str(&io::to_pretty(&j))?;
        for line in io::replay_verdict(&c, &replayed)? {
            eprintln!("check: {line}");
        }
    }
    if let Some(path) = &args.plot {
        let gs = generating_set_for(&c, &verdict).ok();
        let svg = io::plot_cone_svg(&c, gs.as_ref())?;
        std::fs::write(path, svg)?;
    }
    Ok(match verdict.status {
        Status::FgCertified => 0,
        Status::NotFgCertified => 1,
        Status::Unknown => 2,
    })
}

fn cmd_generators(args: &SpecArgs) -> Result<u8> {
    let c = load_cone(&args.spec)?;
    let verdict = symmetry::decide(&c)?;
    let gs = generating_set_for(&c, &verdict)?;
    let mut j = io::generating_set_json(&gs);
    if let (Some(obj), Some(cert)) = (j.as_object_mut(), verdict.certificate.as_ref()) {
        obj.insert("certificate".into(), io::certificate_json(cert));
    }
    print!("{}", io::to_pretty(&j));
    Ok(0)
}

fn parse_point(text: &str) -> Result<Vec<BigInt>> {
    let v: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| conical::Error::Parse(format!("point must be a JSON integer list: {e}")))?;
    let arr = v
        .as_array()
        .ok_or_else(|| conical::Error::Parse("point must be a JSON integer list".into()))?;
    arr.iter()
        .map(|e| {
            if let Some(n) = e.as_i64() {
                Ok(BigInt::from(n))
            } else if let Some(s) = e.as_str() {
                s.parse::<BigInt>()
                    .map_err(|err| conical::Error::Parse(format!("bad coordinate: {err}")))
            } else {
                Err(conical::Error::Parse("coordinates must be integers".into()))
            }
        })
        .collect()
}

fn cmd_decompose(args: &DecomposeArgs) -> Result<u8> {
    let c = load_cone(&args.spec)?;
    let verdict = symmetry::decide(&c)?;
    let mut gs = generating_set_for(&c, &verdict)?;
    let point = parse_point(&args.point)?;
    let rep = decompose_point(&c, &mut gs, &point)?;
    print!("{}", io::to_pretty(&io::representation_json(&rep)));
    Ok(0)
}

fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let c = load_cone(&args.spec)?;
    let verdict = symmetry::decide(&c)?;
    let mut gs = generating_set_for(&c, &verdict)?;
    let report = verify_generating_set(&c, &mut gs, args.bound)?;
    print!("{}", io::to_pretty(&io::verify_report_json(&report)));
    Ok(if report.passes() { 0 } else { EXIT_ERROR })
}

fn cmd_lab(cmd: &LabCommand) -> Result<u8> {
    match cmd {
        LabCommand::Fermat(a) => {
            let res = lab::fermat_scan(a.k, a.z_max)?;
            print!("{}", io::to_pretty(&io::fermat_json(&res)));
            Ok(if res.all_trivial() { 0 } else { EXIT_ERROR })
        }
        LabCommand::Family(a) => {
            let mut reports = Vec::new();
            let mut all_pass = true;
            for n1 in 0..=a.n1 {
                let fc = lab::family_point(n1)?;
                let non_sub = lab::check_non_subtractable(&fc.alpha)?;
                all_pass &= fc.passes() && non_sub;
                reports.push(io::family_json(&fc, non_sub));
            }
            let j = serde_json::json!({
                "schema": io::SCHEMA_VERSION,
                "family": reports,
                "passes": all_pass,
            });
            print!("{}", io::to_pretty(&j));
            Ok(if all_pass { 0 } else { EXIT_ERROR })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(EXIT_USAGE);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    let outcome = match &cli.command {
        Command::Analyze(a) => cmd_analyze(a),
        Command::Generators(a) => cmd_generators(a),
        Command::Decompose(a) => cmd_decompose(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Lab(a) => cmd_lab(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

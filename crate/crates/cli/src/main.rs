use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use dtoric_core::dephasing::sweep::{format_float, run_sweep, sweep_csv, SweepConfig, TimeGrid};
use dtoric_core::dephasing::NoiseKind;
use dtoric_core::engine::{distance_symplectic, find_logical_set, verify_code, VerifyOptions};
use dtoric_core::lattice::{family_parameters, stack_grid, BuildTarget};
use dtoric_core::{CodeError, CodeSpec, NoiseError};

const EXIT_MISMATCH: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser, Debug)]
#[command(name = "dtoric", version, about = "Build, verify and simulate rhombus-tile stabilizer codes")]
struct Cli {
    /// Worker threads for distance search and Monte Carlo (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the code description of a structure as JSON.
    Build(BuildArgs),
    /// Check commutation, rank, logical pairs and distance of a code.
    Verify(VerifyArgs),
    /// Sweep a dephased logical qubit over time and write CSV.
    Dephase(DephaseArgs),
    /// Tabulate the p × p grid family.
    Family(FamilyArgs),
}

#[derive(Args, Debug)]
struct BuildArgs {
    /// unit | two_horizontal | two_vertical | grid_2x2 | grid:<p> | lshape:<v>,<h>[,matrix]
    target: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Code JSON file, or a build target.
    code: String,
    /// Largest weight searched for a nontrivial logical.
    #[arg(long, default_value_t = 4)]
    w_max: usize,
    /// Also run the Knill-Laflamme codeword oracle (n <= 20).
    #[arg(long)]
    kl: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DephaseArgs {
    /// Code JSON file, or a build target.
    #[arg(long)]
    code: String,
    #[arg(long, value_parser = parse_kind)]
    kind: NoiseKind,
    #[arg(long, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, allow_negative_numbers = true)]
    phi: f64,
    #[arg(long)]
    gamma: f64,
    /// start:stop:steps with `steps` equal intervals.
    #[arg(long, value_parser = parse_grid)]
    t_grid: TimeGrid,
    #[arg(long, default_value_t = 0)]
    mc_samples: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Multiplier on the decay exponent.
    #[arg(long, default_value_t = 1.0)]
    convention: f64,
    /// Logical pair (1-based) used as the Bloch frame.
    #[arg(long, default_value_t = 1)]
    pair: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[arg(long)]
    p_max: usize,
    /// Recompute the distance for rows with p up to this value.
    #[arg(long, default_value_t = 0)]
    verify_max_p: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_kind(s: &str) -> Result<NoiseKind, String> {
    s.parse().map_err(|e: NoiseError| e.to_string())
}

fn parse_grid(s: &str) -> Result<TimeGrid, String> {
    s.parse().map_err(|e: NoiseError| e.to_string())
}

/// A failed run: message plus exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }

    fn infeasible(message: impl Into<String>) -> Self {
        Self { code: EXIT_INFEASIBLE, message: message.into() }
    }
}

impl From<CodeError> for Failure {
    fn from(e: CodeError) -> Self {
        match e {
            CodeError::TooLarge(_) => Failure::infeasible(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<NoiseError> for Failure {
    fn from(e: NoiseError) -> Self {
        match e {
            NoiseError::Code(c) => c.into(),
            other => Failure::usage(other.to_string()),
        }
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    params: serde_json::Value,
    version: &'a str,
    inputs: Vec<String>,
    outputs: Vec<String>,
    duration_seconds: f64,
}

struct Run {
    command: &'static str,
    params: serde_json::Value,
    inputs: Vec<String>,
    started: Instant,
}

impl Run {
    /// Writes `text` to `out` (plus its manifest) or to stdout.
    fn emit(&self, out: Option<&Path>, text: &str) -> Result<(), Failure> {
        let Some(path) = out else {
            print!("{text}");
            return Ok(());
        };
        std::fs::write(path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
        let manifest = Manifest {
            command: self.command,
            params: self.params.clone(),
            version: env!("CARGO_PKG_VERSION"),
            inputs: self.inputs.clone(),
            outputs: vec![path.display().to_string()],
            duration_seconds: self.started.elapsed().as_secs_f64(),
        };
        let mut mpath = path.as_os_str().to_owned();
        mpath.push(".manifest.json");
        let body = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
        std::fs::write(&mpath, body).map_err(|e| Failure::usage(format!("cannot write manifest: {e}")))
    }
}

/// Reads a code JSON file, falling back to a build target name.
fn load_code(spec: &str) -> Result<(CodeSpec, Vec<String>), Failure> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("cannot read {spec}: {e}")))?;
        let code = CodeSpec::from_json(&text).map_err(|e| Failure::usage(format!("{spec}: {e}")))?;
        return Ok((code, vec![spec.to_string()]));
    }
    let target: BuildTarget =
        spec.parse().map_err(|_| Failure::usage(format!("{spec:?} is neither a readable file nor a build target")))?;
    Ok((target.build()?, Vec::new()))
}

fn cmd_build(run: &Run, args: &BuildArgs) -> Result<u8, Failure> {
    let target: BuildTarget = args.target.parse().map_err(|e: CodeError| Failure::usage(e.to_string()))?;
    let code = target.build()?;
    run.emit(args.out.as_deref(), &code.to_json())?;
    Ok(0)
}

fn cmd_verify(run: &Run, args: &VerifyArgs, code: &CodeSpec) -> Result<u8, Failure> {
    let report = verify_code(code, VerifyOptions { w_max: args.w_max, kl: args.kl });
    run.emit(args.out.as_deref(), &report.to_json())?;
    for m in &report.mismatches {
        eprintln!("mismatch: {m}");
    }
    for m in &report.infeasible {
        eprintln!("infeasible: {m}");
    }
    Ok(report.verdict.exit_code() as u8)
}

fn cmd_dephase(run: &Run, args: &DephaseArgs, code: &CodeSpec) -> Result<u8, Failure> {
    if args.mc_samples > 0 && args.seed.is_none() {
        return Err(Failure::usage("--mc-samples needs --seed"));
    }
    if args.pair == 0 {
        return Err(Failure::usage("--pair is 1-based"));
    }
    let pairs = match &code.logical_pairs {
        Some(p) => p.clone(),
        None => find_logical_set(code)?.pairs,
    };
    let cfg = SweepConfig {
        kind: args.kind,
        theta: args.theta,
        phi: args.phi,
        gamma: args.gamma,
        convention: args.convention,
        grid: args.t_grid,
        mc_samples: args.mc_samples,
        seed: args.seed,
        pair_index: args.pair - 1,
    };
    let rows = run_sweep(code, &pairs, &cfg)?;
    run.emit(args.out.as_deref(), &sweep_csv(&rows))?;
    Ok(0)
}

fn cmd_family(run: &Run, args: &FamilyArgs) -> Result<u8, Failure> {
    if args.p_max == 0 {
        return Err(Failure::usage("--p-max must be at least 1"));
    }
    let mut csv = String::from("p,n,m,k,d,rate,verified,distance\n");
    let mut status = 0;
    for p in 1..=args.p_max {
        let fp = family_parameters(p)?;
        let mut verified = false;
        let mut distance = String::new();
        if p <= args.verify_max_p {
            match stack_grid(p) {
                Ok(code) => {
                    let outcome = distance_symplectic(&code, fp.d)?;
                    verified = true;
                    match outcome.distance() {
                        Some(d) => {
                            distance = d.to_string();
                            if d != fp.d {
                                eprintln!("mismatch: p={p} declares d = {} but found {d}", fp.d);
                                status = EXIT_MISMATCH;
                            }
                        }
                        None => {
                            distance = format!(">{}", fp.d);
                            eprintln!("mismatch: p={p} declares d = {} but no logical of that weight", fp.d);
                            status = EXIT_MISMATCH;
                        }
                    }
                }
                Err(CodeError::TooLarge(msg)) => eprintln!("not verified: p={p}: {msg}"),
                Err(e) => return Err(e.into()),
            }
        }
        let _ =
            writeln!(csv, "{p},{},{},{},{},{},{verified},{distance}", fp.n, fp.m, fp.k, fp.d, format_float(fp.rate()));
    }
    run.emit(args.out.as_deref(), &csv)?;
    Ok(status)
}

fn execute(cli: Cli) -> Result<u8, Failure> {
    let started = Instant::now();
    let threads = cli.threads;
    let pool = {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            if t == 0 {
                return Err(Failure::usage("--threads must be at least 1"));
            }
            b = b.num_threads(t);
        }
        b.build().map_err(|e| Failure::usage(e.to_string()))?
    };
    pool.install(|| match &cli.command {
        Command::Build(a) => {
            let run = Run {
                command: "build",
                params: serde_json::json!({ "target": a.target }),
                inputs: Vec::new(),
                started,
            };
            cmd_build(&run, a)
        }
        Command::Verify(a) => {
            let (code, inputs) = load_code(&a.code)?;
            let run = Run {
                command: "verify",
                params: serde_json::json!({ "code": a.code, "w_max": a.w_max, "kl": a.kl, "threads": threads }),
                inputs,
                started,
            };
            cmd_verify(&run, a, &code)
        }
        Command::Dephase(a) => {
            let (code, inputs) = load_code(&a.code)?;
            let run = Run {
                command: "dephase",
                params: serde_json::json!({
                    "code": a.code,
                    "kind": a.kind.as_str(),
                    "theta": a.theta,
                    "phi": a.phi,
                    "gamma": a.gamma,
                    "t_grid": [a.t_grid.start, a.t_grid.stop, a.t_grid.steps],
                    "mc_samples": a.mc_samples,
                    "seed": a.seed,
                    "convention": a.convention,
                    "pair": a.pair,
                    "threads": threads,
                }),
                inputs,
                started,
            };
            cmd_dephase(&run, a, &code)
        }
        Command::Family(a) => {
            let run = Run {
                command: "family",
                params: serde_json::json!({ "p_max": a.p_max, "verify_max_p": a.verify_max_p, "threads": threads }),
                inputs: Vec::new(),
                started,
            };
            cmd_family(&run, a)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use tqft_core::recoupling::{cache_file_name, gate, Recoupling};
use tqft_core::repalg::{analyze, AnalyzeOptions, GeneratorMode, Method, Verdict};
use tqft_core::spine::{dim, SurfaceSpec};
use tqft_core::tqft_ops::{CurveDesc, LoopDesc, Tqft};
use tqft_core::{CycloContext, Error};

/// Environment variable naming the recoupling cache directory.
const CACHE_ENV: &str = "TQFT_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "tqft", version, about = "Exact SU(2) TQFT operators and irreducibility checks")]
struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    /// Diagnostics on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Surface {
    #[arg(long, default_value_t = 0)]
    genus: u32,
    /// Colors k1,...,kn of the banded points.
    #[arg(long, value_delimiter = ',', required = true)]
    points: Vec<u32>,
    #[arg(long)]
    level: u32,
}

impl Surface {
    fn spec(&self) -> Result<SurfaceSpec, Error> {
        SurfaceSpec::new(self.genus, self.points.clone(), self.level)
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of V_p(S, k).
    Dim(Surface),
    /// The admissible colorings indexing the basis.
    Basis(Surface),
    /// Norms of the basis vectors.
    Norms(Surface),
    /// Matrix of a curve operator.
    CurveOp {
        #[command(flatten)]
        surface: Surface,
        /// edge:NAME, band:i..j or cable:CURVE:c
        #[arg(long)]
        curve: String,
    },
    /// Matrix of a Dehn twist.
    Twist {
        #[command(flatten)]
        surface: Surface,
        #[arg(long)]
        curve: String,
        #[arg(long)]
        inverse: bool,
    },
    /// Matrix of the point-pushing generator delta_j.
    Push {
        #[command(flatten)]
        surface: Surface,
        #[arg(long = "gen")]
        generator: usize,
    },
    /// Decide irreducibility of a generated algebra.
    Check {
        #[command(flatten)]
        surface: Surface,
        #[arg(long, default_value = "point-pushing")]
        generators: String,
        #[arg(long, default_value = "both")]
        method: String,
        /// Include the commutant basis when reducible.
        #[arg(long)]
        certificate: bool,
    },
    /// Compare closed-form recoupling values with diagram evaluation.
    ValidateRecoupling {
        #[arg(long)]
        level: u32,
        #[arg(long, default_value_t = 4)]
        max_color: u32,
    },
}

enum Failure {
    Usage(String),
    Integrity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Integrity(_) | Error::Singular | Error::Io(_) => Failure::Integrity(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Session {
    json: bool,
    verbose: bool,
    cache_dir: Option<PathBuf>,
}

impl Session {
    fn recoupling(&self, p: u32) -> Result<Arc<Recoupling>, Error> {
        let rec = Arc::new(Recoupling::new(&CycloContext::new(p)?));
        if let Some(dir) = &self.cache_dir {
            let n = rec.load_cache(&dir.join(cache_file_name(p)));
            if self.verbose {
                eprintln!("loaded {n} recoupling values from {}", dir.display());
            }
        }
        Ok(rec)
    }

    fn save(&self, rec: &Recoupling) {
        if let Some(dir) = &self.cache_dir {
            if let Err(e) = rec.save_cache(&dir.join(cache_file_name(rec.ctx().p()))) {
                eprintln!("warning: could not write recoupling cache: {e}");
            }
        }
    }

    fn tqft(&self, s: &Surface) -> Result<Tqft, Error> {
        let spec = s.spec()?;
        Tqft::with_recoupling(&spec, self.recoupling(spec.p())?)
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(|e| Failure::Integrity(e.to_string()))
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let session = Session {
        json: cli.json,
        verbose: cli.verbose,
        cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
    };
    let out = match &cli.command {
        Command::Dim(s) => {
            let d = dim(&s.spec()?)?;
            if session.json {
                to_json(&serde_json::json!({ "dim": d }))?
            } else {
                d.to_string()
            }
        }
        Command::Basis(s) => to_json(&session.tqft(s)?.basis_maps())?,
        Command::Norms(s) => {
            let t = session.tqft(s)?;
            let h = t.basis_norms()?;
            session.save(t.recoupling());
            to_json(&h)?
        }
        Command::CurveOp { surface, curve } => {
            let t = session.tqft(surface)?;
            let curve: CurveDesc = curve.parse()?;
            let op = t.curve_operator(&curve)?;
            session.save(t.recoupling());
            to_json(op.matrix())?
        }
        Command::Twist { surface, curve, inverse } => {
            let t = session.tqft(surface)?;
            let curve: CurveDesc = curve.parse()?;
            let op = if *inverse { t.dehn_twist_inverse(&curve)? } else { t.dehn_twist(&curve)? };
            session.save(t.recoupling());
            to_json(op.matrix())?
        }
        Command::Push { surface, generator } => {
            let t = session.tqft(surface)?;
            let op = t.point_push(LoopDesc { j: *generator })?;
            session.save(t.recoupling());
            to_json(op.matrix())?
        }
        Command::Check { surface, generators, method, certificate } => {
            let spec = surface.spec()?;
            let rec = session.recoupling(spec.p())?;
            let mut opts = AnalyzeOptions::new(generators.parse::<GeneratorMode>()?);
            opts.method = method.parse::<Method>()?;
            opts.certificate = *certificate;
            opts.recoupling = Some(rec.clone());
            let report = analyze(&spec, &opts)?;
            session.save(&rec);
            if session.json || *certificate {
                to_json(&report)?
            } else {
                let verdict = match report.verdict {
                    Verdict::Irreducible => "irreducible",
                    Verdict::Reducible => "reducible",
                };
                let field = |x: Option<usize>| x.map_or("-".to_string(), |v| v.to_string());
                format!(
                    "{verdict} (dim {}, algebra_dim {}, commutant_dim {})",
                    report.dim,
                    field(report.algebra_dim),
                    field(report.commutant_dim)
                )
            }
        }
        Command::ValidateRecoupling { level, max_color } => {
            let report = gate::run(*level, *max_color)?;
            if session.json {
                to_json(&report)?
            } else {
                let mut lines: Vec<String> = report
                    .entries
                    .iter()
                    .map(|e| format!("{} {:?} {}", e.kind, e.labels, if e.pass { "pass" } else { "FAIL" }))
                    .collect();
                lines.push(format!("{}/{} entries pass", report.passed(), report.entries.len()));
                lines.join("\n")
            }
        }
    };
    if let Command::ValidateRecoupling { .. } = cli.command {
        let report_failed = out.contains("FAIL") || out.contains("\"pass\":false");
        if report_failed {
            emit(cli, &out)?;
            return Err(Failure::Integrity("recoupling gate failed".into()));
        }
    }
    Ok(out)
}

fn emit(cli: &Cli, text: &str) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| Failure::Usage(e.to_string())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Failure::Usage(e.to_string())),
        },
        None => run(&cli),
    };
    match result.and_then(|out| emit(&cli, &out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Integrity(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

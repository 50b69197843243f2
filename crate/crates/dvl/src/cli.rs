//! Argument parsing and dispatch. Exit codes: 0 success, 1 IO, 2 invalid
//! arguments, 3 numerical failure.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dvl_core::arith::{PrimeTable, DEFAULT_FACTOR_LIMIT};
use dvl_core::exec::Executor;
use dvl_core::experiments::{self as exp, ExperimentReport};
use dvl_core::operators::{build_hankel_section, build_volterra_section, largest_singular_value};
use dvl_core::quad::QuadratureSpec;
use dvl_core::spaces::{basis_vector, norm_h2w};
use dvl_core::weights::{WeightFamily, WeightKind, WeightTable};
use serde_json::{json, Map};

use crate::error::{CliError, Result};
use crate::exec::RayonExecutor;
use crate::{config, io as dio};

#[derive(Debug, Parser)]
#[command(name = "dvl", version, about = "Volterra operators and Hankel forms on weighted Dirichlet series spaces")]
struct Cli {
    /// Worker threads; 0 uses the available parallelism.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Write NAME.csv and NAME.json here instead of stdout/stderr.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Flat `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Relative quadrature tolerance (absolute is a tenth of it).
    #[arg(long = "quad-tol", global = true, default_value_t = 1e-12)]
    quad_tol: f64,
    #[arg(long = "quad-maxdiv", global = true, default_value_t = 2000)]
    quad_maxdiv: usize,
    /// Prime limit for experiments that sum over primes or need a prime table.
    #[arg(long = "prime-limit", global = true, value_parser = parse_count)]
    prime_limit: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyKind {
    Div,
    Zeta,
}

#[derive(Debug, Clone, Copy, Args)]
struct FamilyArgs {
    #[arg(long, value_enum)]
    family: FamilyKind,
    #[arg(long)]
    beta: f64,
}

impl FamilyArgs {
    fn family(&self) -> Result<WeightFamily> {
        let kind = match self.family {
            FamilyKind::Div => WeightKind::DivisorPower,
            FamilyKind::Zeta => WeightKind::ZetaPower,
        };
        Ok(WeightFamily::new(kind, self.beta)?)
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SectionKind {
    Volterra,
    Hankel,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print w_n for n = 1..=N as CSV.
    Weights {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "N", value_parser = parse_count)]
        n: u64,
    },
    /// Print the weighted norm of a series read from an `n,re,im` file.
    Norm {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        series: PathBuf,
    },
    /// Export a finite section as `row col value` coordinates.
    Section {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_enum)]
        kind: SectionKind,
        /// Symbol as an `n,re,im` file.
        #[arg(long)]
        symbol: PathBuf,
        #[arg(long = "N", value_parser = parse_count)]
        n: u64,
        /// Drop the constant basis vector (Hankel sections only).
        #[arg(long = "zero-constant")]
        zero_constant: bool,
        /// Also estimate the largest singular value (printed to stderr).
        #[arg(long)]
        norm: bool,
    },
    /// Run a numerical experiment.
    Experiment {
        #[command(subcommand)]
        which: ExperimentCmd,
    },
}

#[derive(Debug, Subcommand)]
enum ExperimentCmd {
    /// Multiplier of the Volterra operator along powers of q
    Diagonal {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 2, value_parser = parse_count)]
        q: u64,
        #[arg(long = "K", default_value_t = 1000, value_parser = parse_count)]
        k: u64,
    },
    /// Lower bound R(J) on squarefree test vectors of rank J
    PrimitiveZw {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long = "j-min", default_value_t = 4)]
        j_min: usize,
        #[arg(long = "j-max", default_value_t = 22)]
        j_max: usize,
    },
    /// Quotient over one homogeneous prime window per x
    HomoSharpness {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, value_delimiter = ',', default_values_t = [64.0, 128.0, 256.0])]
        x: Vec<f64>,
        #[arg(long, default_value_t = 0.5)]
        eps: f64,
    },
    /// Prime sums against their asymptotic surrogate
    Hj {
        #[arg(long, default_value_t = 1)]
        j: u8,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        #[arg(long, default_value_t = 0.5)]
        eta: f64,
        /// Defaults to 10..1000 (100..1000 for j = 2).
        #[arg(long = "sigma-prime", value_delimiter = ',')]
        sigma_prime: Vec<f64>,
        #[arg(long = "tail-model", value_enum, default_value_t = Switch::On)]
        tail_model: Switch,
    },
    /// Partial sums of the triple prime series up to P
    TripleSum {
        #[arg(long, default_value_t = 0.9)]
        delta: f64,
        #[arg(long, default_value_t = 0.9)]
        eta: f64,
        #[arg(long = "P", value_delimiter = ',', value_parser = parse_count,
              default_values_t = [1_000u64, 10_000, 100_000, 1_000_000, 2_000_000])]
        p: Vec<u64>,
    },
    /// Largest singular values of both sections as N doubles
    HankelVsVolterra {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0.5)]
        a: f64,
        #[arg(long = "N", value_delimiter = ',', value_parser = parse_count,
              default_values_t = [1024u64, 2048, 4096, 8192, 16384])]
        n: Vec<u64>,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long = "max-iters", default_value_t = 2000)]
        max_iters: usize,
    },
    /// Euler product of the psi symbol with a tail bound
    PsiSymbol {
        #[arg(long, default_value_t = 1.0)]
        lambda: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [0.05, 0.1, 0.2, 0.3, 0.4, 0.5])]
        sigma: Vec<f64>,
    },
    /// Two-prime partial sums against log log M
    TwoPrime {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "M", value_delimiter = ',', value_parser = parse_count,
              default_values_t = [100u64, 1_000, 10_000, 100_000, 1_000_000, 10_000_000, 100_000_000])]
        m: Vec<u64>,
    },
    /// Ratio of the one-prime integral to its bound
    Int0ld {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 2, value_parser = parse_count)]
        p: u64,
        #[arg(long = "T", value_delimiter = ',', default_values_t = [1e-6, 1e-4, 1e-2, 0.1, 0.5, 0.9])]
        t: Vec<f64>,
    },
    /// Column norms of a Volterra section
    ColumnNorms {
        #[command(flatten)]
        family: FamilyArgs,
        /// Symbol as an `n,re,im` file; defaults to e_{w,2}.
        #[arg(long)]
        symbol: Option<PathBuf>,
        #[arg(long, value_delimiter = ',', value_parser = parse_count,
              default_values_t = [3u64, 15, 105, 1155, 15015])]
        n: Vec<u64>,
        #[arg(long = "N", default_value_t = 100_000, value_parser = parse_count)]
        truncation: u64,
    },
}

/// Nonnegative integer, also accepted in exponent form such as `1e6`.
fn parse_count(s: &str) -> std::result::Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < 1.8e19 => Ok(x as u64),
        _ => Err(format!("expected a nonnegative integer, got {s:?}")),
    }
}

struct Context {
    exec: RayonExecutor,
    quad: QuadratureSpec,
    seed: u64,
    prime_limit: Option<u64>,
    out: Option<PathBuf>,
}

impl Context {
    fn table(&self, needed: u64) -> Result<PrimeTable> {
        let limit = self.prime_limit.unwrap_or(needed).max(2);
        Ok(PrimeTable::sieve_with(limit, limit.min(DEFAULT_FACTOR_LIMIT), &self.exec)?)
    }

    fn sink(&self, file: &str) -> Result<Box<dyn Write>> {
        match &self.out {
            Some(dir) => {
                fs::create_dir_all(dir)?;
                Ok(Box::new(BufWriter::new(File::create(dir.join(file))?)))
            }
            None => Ok(Box::new(io::stdout().lock())),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let args = match config::merge(args) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    if !(cli.quad_tol > 0.0) {
        return Err(CliError::usage("--quad-tol must be positive"));
    }
    let quad = QuadratureSpec {
        absolute_tolerance: cli.quad_tol / 10.0,
        relative_tolerance: cli.quad_tol,
        max_subdivisions: cli.quad_maxdiv,
        ..QuadratureSpec::default()
    };
    quad.validate()?;
    let ctx = Context {
        exec: RayonExecutor::new(cli.threads)?,
        quad,
        seed: cli.seed,
        prime_limit: cli.prime_limit,
        out: cli.out,
    };
    match cli.command {
        Command::Weights { family, n } => {
            let family = family.family()?;
            let weights = WeightTable::new(family, n, &ctx.table(n)?)?;
            let mut w = csv::Writer::from_writer(ctx.sink("weights.csv")?);
            w.write_record(["n", "weight"])?;
            for (i, &v) in weights.values().iter().enumerate() {
                w.write_record([(i + 1).to_string(), dio::format_real(v)])?;
            }
            w.flush()?;
            Ok(())
        }
        Command::Norm { family, series } => {
            let family = family.family()?;
            let f = dio::read_series(File::open(&series)?)?;
            let weights = WeightTable::new(family, f.truncation(), &ctx.table(f.truncation())?)?;
            writeln!(ctx.sink("norm.txt")?, "{}", dio::format_real(norm_h2w(&weights, &f)?))?;
            Ok(())
        }
        Command::Section { family, kind, symbol, n, zero_constant, norm } => {
            let family = family.family()?;
            let g = dio::read_series(File::open(&symbol)?)?;
            let section = match kind {
                SectionKind::Volterra => {
                    let weights = WeightTable::new(family, n, &ctx.table(n)?)?;
                    build_volterra_section(&weights, &g.partial_sum(n.min(g.truncation()))?, n)?
                }
                SectionKind::Hankel => {
                    let top = n.checked_mul(n).ok_or_else(|| CliError::usage("N too large"))?;
                    let weights = WeightTable::new(family, top, &ctx.table(top)?)?;
                    build_hankel_section(&weights, &g, n, zero_constant)?
                }
            };
            dio::write_coordinates(&section, ctx.sink("section.txt")?)?;
            if norm {
                let est = largest_singular_value(&section, 1e-12, 5000, ctx.seed);
                eprintln!(
                    "largest_singular_value_lb={} iterations={} converged={}",
                    dio::format_real(est.value),
                    est.iterations,
                    est.converged
                );
            }
            Ok(())
        }
        Command::Experiment { which } => run_experiment(which, &ctx),
    }
}

fn run_experiment(which: ExperimentCmd, ctx: &Context) -> Result<()> {
    let start = Instant::now();
    let mut prime_limit = ctx.prime_limit;
    let report = match which {
        ExperimentCmd::Diagonal { family, q, k } => {
            let need = q.checked_mul(k).ok_or_else(|| CliError::usage("q*K overflows"))?;
            let table = ctx.table(need)?;
            prime_limit = Some(table.limit());
            exp::exp_diagonal(&family.family()?, q, k, &table)?
        }
        ExperimentCmd::PrimitiveZw { family, a, gamma, j_min, j_max } => {
            let table = ctx.table(1000)?;
            prime_limit = Some(table.limit());
            exp::exp_primitive_zw(&family.family()?, &exp::PrimitiveParams { a, gamma, j_min, j_max }, &table)?
        }
        ExperimentCmd::HomoSharpness { family, x, eps } => {
            let x_max = x.iter().copied().fold(0.0, f64::max);
            let table = ctx.table(((2.0 * x_max * x_max) as u64).max(1000))?;
            prime_limit = Some(table.limit());
            exp::exp_homo_sharpness(&family.family()?, &x, eps, &table)?
        }
        ExperimentCmd::Hj { j, delta, eta, sigma_prime, tail_model } => {
            let sigma_primes = if sigma_prime.is_empty() {
                let start = if j == 2 { 100.0 } else { 10.0 };
                [10.0, 20.0, 50.0, 100.0, 200.0, 500.0, 1000.0].into_iter().filter(|&s| s >= start).collect()
            } else {
                sigma_prime
            };
            let limit = ctx.prime_limit.unwrap_or(1_000_000_000);
            prime_limit = Some(limit);
            let params = exp::HjParams { j, delta, eta, sigma_primes, prime_limit: limit, tail_model: tail_model == Switch::On };
            exp::exp_hj(&params, &ctx.exec, &ctx.quad)?
        }
        ExperimentCmd::TripleSum { delta, eta, p } => {
            let table = ctx.table(p.iter().copied().max().unwrap_or(2))?;
            prime_limit = Some(table.limit());
            exp::exp_triple_sum(&exp::TripleSumParams { delta, eta, ps: p }, &table, &ctx.quad)?
        }
        ExperimentCmd::HankelVsVolterra { family, a, n, tol, max_iters } => {
            let table = ctx.table(n.iter().copied().max().unwrap_or(2).max(4096))?;
            prime_limit = Some(table.limit());
            let params = exp::HankelVsVolterraParams { a, ns: n, tol, max_iters, seed: ctx.seed };
            exp::exp_hankel_vs_volterra(&family.family()?, &params, &table, &ctx.quad)?
        }
        ExperimentCmd::PsiSymbol { lambda, sigma } => {
            let table = ctx.table(10_000_000)?;
            prime_limit = Some(table.limit());
            exp::exp_psi_symbol(&exp::PsiParams { lambda, sigmas: sigma, prime_limit: table.limit() }, &table)?
        }
        ExperimentCmd::TwoPrime { family, m } => exp::exp_two_prime(&family.family()?, &m)?,
        ExperimentCmd::Int0ld { family, p, t } => exp::exp_int0ld(&family.family()?, p, &t, &ctx.quad)?,
        ExperimentCmd::ColumnNorms { family, symbol, n, truncation } => {
            let family = family.family()?;
            let table = ctx.table(truncation)?;
            prime_limit = Some(table.limit());
            let g = match symbol {
                Some(path) => dio::read_series(File::open(path)?)?,
                None => basis_vector(&WeightTable::new(family, 2, &table)?, 2, 2)?,
            };
            exp::exp_column_norms(&family, &g, &n, truncation, &table)?
        }
    };
    let mut run = Map::new();
    run.insert("tool".into(), json!("dvl"));
    run.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    run.insert("prime_limit".into(), json!(prime_limit));
    run.insert("threads".into(), json!(ctx.exec.threads()));
    run.insert("seed".into(), json!(ctx.seed));
    run.insert(
        "quadrature".into(),
        json!({
            "absolute_tolerance": ctx.quad.absolute_tolerance,
            "relative_tolerance": ctx.quad.relative_tolerance,
            "max_subdivisions": ctx.quad.max_subdivisions,
        }),
    );
    run.insert("wall_time_seconds".into(), json!(start.elapsed().as_secs_f64()));
    emit(&report, run, ctx.out.as_deref())
}

fn emit(report: &ExperimentReport, run: Map<String, serde_json::Value>, out: Option<&Path>) -> Result<()> {
    let sidecar = serde_json::to_string_pretty(&dio::report_json(report, run))?;
    match out {
        Some(dir) => {
            fs::create_dir_all(dir)?;
            dio::write_report_csv(report, BufWriter::new(File::create(dir.join(format!("{}.csv", report.name)))?))?;
            fs::write(dir.join(format!("{}.json", report.name)), sidecar + "\n")?;
        }
        None => {
            dio::write_report_csv(report, io::stdout().lock())?;
            eprintln!("{sidecar}");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_accept_exponent_form() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("42"), Ok(42));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-1").is_err());
    }

    #[test]
    fn missing_beta_is_usage_error() {
        assert_eq!(run(["dvl", "weights", "--family", "div", "--N", "4"]), 2);
        assert_eq!(run(["dvl", "frobnicate"]), 2);
    }
}

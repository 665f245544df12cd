use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plie_cli::config::{parse_complex, SEED_ENV};
use plie_cli::points::{PointRequest, Space};
use plie_cli::{ConfigError, ConfigLayer, RunConfig, Suite};

#[derive(Parser)]
#[command(name = "plie", version, about = "Numerical checks of covariant quadratic Poisson brackets and their decoupling maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite and write its JSON report.
    Verify(VerifyArgs),
    /// Print one seeded random point as JSON.
    GenPoint(GenPointArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// jacobi, decouple-m, decouple-F, factorization, ao-maps, moment, lemma4,
    /// symplectic, rank, zakrzewski, actions or all.
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    /// Complex coupling as `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    /// Entry modulus bound of sampled points (default 1 for global brackets, 0.3 otherwise).
    #[arg(long)]
    radius: Option<f64>,
    #[arg(long)]
    tol_exact: Option<f64>,
    #[arg(long)]
    tol_fd: Option<f64>,
    #[arg(long)]
    fd_step: Option<f64>,
    /// Report path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
    /// JSON file with any of the above; flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GenPointArgs {
    /// spin, s, tuple, gl or dual.
    #[arg(long, default_value = "spin")]
    space: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    d: usize,
    #[arg(long, default_value_t = 3)]
    l: usize,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 0)]
    index: usize,
    #[arg(long, default_value_t = 0.3)]
    radius: f64,
}

fn env_layer() -> Result<ConfigLayer, ConfigError> {
    ConfigLayer::from_env_value(std::env::var(SEED_ENV).ok().as_deref())
}

fn resolve(args: VerifyArgs) -> Result<RunConfig, ConfigError> {
    let flags = ConfigLayer {
        suite: args.suite.as_deref().map(str::parse::<Suite>).transpose()?,
        n: args.n,
        d: args.d,
        l: args.l,
        kappa: args.kappa.as_deref().map(parse_complex).transpose()?.map(|z| [z.re, z.im]),
        seed: args.seed,
        samples: args.samples,
        radius: args.radius,
        tol_exact: args.tol_exact,
        tol_fd: args.tol_fd,
        fd_step: args.fd_step,
        out: args.out,
        threads: args.threads,
    };
    let file = args.config.as_deref().map(ConfigLayer::from_file).transpose()?.unwrap_or_default();
    RunConfig::resolve(flags.over(env_layer()?).over(file))
}

fn verify(args: VerifyArgs) -> ExitCode {
    let cfg = match resolve(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cfg.threads {
        pool = pool.num_threads(t);
    }
    let report = match pool.build() {
        Ok(pool) => pool.install(|| plie_cli::run(&cfg)),
        Err(e) => {
            eprintln!("error: cannot start worker threads: {e}");
            return ExitCode::from(3);
        }
    };
    let json = report.to_json();
    let written = match &cfg.out {
        Some(path) => std::fs::write(path, &json),
        None => std::io::stdout().write_all(json.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(3);
    }
    for f in &report.failures {
        match &f.error {
            Some(err) => eprintln!("{} sample {} (point {}): {err}", f.check, f.index, f.digest),
            None => eprintln!("{} sample {} (point {}): residual {:e}", f.check, f.index, f.digest, f.residual),
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

fn gen_point(args: GenPointArgs) -> ExitCode {
    let request = (|| {
        let seed = match args.seed {
            Some(s) => s,
            None => env_layer()?.seed.unwrap_or(0),
        };
        Ok::<_, ConfigError>(PointRequest {
            space: args.space.parse::<Space>()?,
            n: args.n,
            d: args.d,
            l: args.l,
            seed,
            index: args.index,
            radius: args.radius,
        })
    })();
    match request.and_then(|r| r.to_json()) {
        Ok(json) => {
            print!("{json}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Verify(args) => verify(args),
        Command::GenPoint(args) => gen_point(args),
    }
}

//! Batch runner: `sqglab --config run.toml [--out DIR] [--seed N] [--threads N] [--strict]`.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use sqglab::cli::{exit_code, parse_config_str, run, RunOptions};
use sqglab::Error;

#[derive(Debug, Parser)]
#[command(version, about = "Run one SQG experiment from a TOML config and write its artifacts")]
struct Args {
    /// experiment config (TOML)
    #[arg(long)]
    config: PathBuf,
    /// run directory; default $SQGLAB_OUT/<config stem>, or out/<config stem>
    #[arg(long)]
    out: Option<PathBuf>,
    /// override the config's seed
    #[arg(long)]
    seed: Option<u64>,
    /// worker threads for parallel sweeps and reports
    #[arg(long)]
    threads: Option<usize>,
    /// treat warnings (CFL, smallness, non-mean-free data) as failures
    #[arg(long)]
    strict: bool,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(n) = args.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} threads: {e}");
            return ExitCode::from(1);
        }
    }
    let result = (|| {
        let text = std::fs::read_to_string(&args.config).map_err(|e| {
            Error::InvalidParameter(format!("cannot read {}: {e}", args.config.display()))
        })?;
        let base = args.config.parent().map(PathBuf::from).unwrap_or_default();
        let mut config = parse_config_str(&text, &base)?;
        if let Some(seed) = args.seed {
            config.seed = seed;
        }
        let env_root = std::env::var_os("SQGLAB_OUT").map(PathBuf::from);
        let dir = RunOptions::resolve_dir(&config, args.out.as_deref(), env_root.as_deref(), &args.config);
        let opts = RunOptions {
            out_dir: dir,
            strict: args.strict,
            config_text: Some(text),
        };
        run(&config, &opts)
    })();
    match &result {
        Ok(o) if o.passed => println!("{}: all {} checks passed", o.dir.display(), o.checks),
        Ok(o) => eprintln!("{}: failed checks: {}", o.dir.display(), o.failed.join(", ")),
        Err(e) => eprintln!("error: {e}"),
    }
    ExitCode::from(exit_code(&result) as u8)
}

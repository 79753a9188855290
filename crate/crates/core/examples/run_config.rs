//! Drive an experiment from a TOML config, the same path the binary takes.
//!
//! ```text
//! cargo run --example run_config -- configs/shear.toml
//! ```

use std::path::PathBuf;

use sqglab::cli::{exit_code, parse_config_str, run, RunOptions};

fn main() {
    let path: PathBuf = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs/operator.toml").into())
        .into();
    let text = std::fs::read_to_string(&path).expect("readable config");
    let base = path.parent().unwrap_or(".".as_ref());
    let config = match parse_config_str(&text, base) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}: {e}", path.display());
            std::process::exit(1);
        }
    };
    let out = std::env::temp_dir().join("sqglab-example").join(config.experiment.name());
    let mut opts = RunOptions::new(out);
    opts.config_text = Some(text);
    let outcome = run(&config, &opts);
    match &outcome {
        Ok(o) => println!("{}: {}/{} checks passed {:?}", o.dir.display(), o.checks - o.failed.len(), o.checks, o.failed),
        Err(e) => eprintln!("error: {e}"),
    }
    std::process::exit(exit_code(&outcome));
}

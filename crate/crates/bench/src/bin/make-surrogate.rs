//! Writes the synthetic stand-in dataset as ARFF.
//!
//! Usage: `make-surrogate [OUT] [SEED]`; OUT defaults to stdout.

use std::process::ExitCode;

use thorax_bench::{surrogate, SURROGATE_SEED};
use thorax_core::dataset::write_arff;

fn main() -> ExitCode {
    let mut args = std::env::args().skip(1);
    let out = args.next();
    let seed = match args.next().map(|s| s.parse::<u64>()) {
        None => SURROGATE_SEED,
        Some(Ok(s)) => s,
        Some(Err(e)) => {
            eprintln!("make-surrogate: invalid seed: {e}");
            return ExitCode::from(2);
        }
    };
    let text = format!(
        "% Synthetic stand-in with the thoracic-surgery schema and class balance.\n\
         % Generated by make-surrogate with seed {seed}; not patient data.\n{}",
        write_arff(&surrogate(seed))
    );
    match out {
        Some(path) if path != "-" => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("make-surrogate: cannot write {path}: {e}");
                return ExitCode::from(1);
            }
        }
        _ => print!("{text}"),
    }
    ExitCode::SUCCESS
}

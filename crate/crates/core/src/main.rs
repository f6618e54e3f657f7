use std::io::Write;

use clap::Parser;

use catloc::cli::{execute, RunConfig};

fn main() {
    let cfg = RunConfig::parse();
    let (text, code) = execute(&cfg);
    if code == 2 {
        eprint!("{text}");
    } else {
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    std::process::exit(code);
}

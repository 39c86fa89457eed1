// Building and running a barrier-width sweep from code, the same path the
// `swp-clock` binary takes.
//
// Run with `cargo run --release --example width_sweep`.

use std::error::Error;

use swp_clock::sweep::{parse_cli, run_sweep, sweep_csv, validate_csv};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    let out = dir.path().join("evanescent.csv");
    let argv = format!(
        "swp-clock stationary --v0 0.30 --v1 0.15 --energy 0.18 --a-min 0.1 --a-max 40 --a-steps 81 --out {}",
        out.display()
    );
    let spec = parse_cli(argv.split_whitespace())?;
    let rows = run_sweep(&spec)?;
    let text = std::fs::read_to_string(&out)?;
    println!("wrote {rows} rows to {}", out.display());
    for line in text.lines().take(4) {
        println!("{line}");
    }
    assert_eq!(validate_csv(&text)?, 81);

    // Ensemble sweeps need the packet shape as well.
    let ensemble = parse_cli([
        "swp-clock",
        "ensemble",
        "--v0",
        "0.30",
        "--v1",
        "-0.15",
        "--energy",
        "0.22",
        "--sigma",
        "10",
        "--z0",
        "-80",
        "--a-min",
        "0.5",
        "--a-max",
        "20",
        "--a-steps",
        "5",
        "--out",
        "unused.csv",
    ])?;
    print!("{}", sweep_csv(&ensemble)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

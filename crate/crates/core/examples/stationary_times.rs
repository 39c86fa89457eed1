// Stationary clock and dwell times as the barrier widens, above and below
// the barrier top.
//
// Run with `cargo run --example stationary_times`.

use std::error::Error;

use swp_clock::{stationary_times, BarrierConfig, ScatteringContext};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ctx = ScatteringContext::default();

    for (energy, v1) in [(0.35, 0.15), (0.35, -0.15), (0.18, 0.15), (0.18, -0.15)] {
        let k1 = ctx.wave_number(energy);
        println!("E = {energy}, V1 = {v1:+}");
        println!(
            "{:>6} {:>10} {:>12} {:>12} {:>12} {:>12}",
            "a", "R", "t_ct", "t_0", "t_cr", "tau_d"
        );
        for a in [0.05, 0.5, 2.0, 5.0, 10.0, 20.0, 40.0] {
            let barrier = BarrierConfig::new(0.30, v1, a)?;
            let t = stationary_times(&ctx, &barrier, k1)?;
            println!(
                "{a:>6} {:>10.4e} {:>12.5} {:>12.5} {:>12.5} {:>12.5}",
                t.r_coeff, t.t_ct, t.t_0, t.t_cr, t.tau_d
            );
            let identity = t.t_coeff * t.t_ct + t.r_coeff * t.t_cr;
            assert!((t.tau_d - identity).abs() <= 1e-10 * t.tau_d.abs().max(1.0));
            assert!(t.tau_d >= 0.0);
        }
        println!();
    }

    // Thin barriers with V1 < 0 reflect with a negative clock time.
    let thin = BarrierConfig::new(0.30, -0.15, 0.05)?;
    let t = stationary_times(&ctx, &thin, ctx.wave_number(0.35))?;
    println!("a = 0.05, V1 = -0.15: t_cr = {:.6}", t.t_cr);
    assert!(t.t_cr < 0.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

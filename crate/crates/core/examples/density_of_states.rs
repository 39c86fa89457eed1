// Density of states from the clock times for incidence from both sides.
//
// Run with `cargo run --example density_of_states`.

use std::error::Error;
use std::f64::consts::PI;

use swp_clock::{density_of_states, stationary_times, BarrierConfig, ScatteringContext};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ctx = ScatteringContext::default();
    let k1 = ctx.wave_number(0.41);

    // Symmetric barrier: every clock time equals π·ħ·a·ν.
    let symmetric = BarrierConfig::new(0.30, 0.0, 4.0)?;
    let d = density_of_states(&ctx, &symmetric, k1)?;
    let t = stationary_times(&ctx, &symmetric, k1)?;
    println!(
        "symmetric: nu = {:.10}, t_c = {:.10}, pi*a*nu = {:.10}",
        d.nu,
        t.t_ct,
        PI * 4.0 * d.nu
    );
    assert!((t.t_ct - PI * 4.0 * d.nu).abs() < 1e-10 * t.t_ct);

    for v1 in [0.15, -0.15] {
        let barrier = BarrierConfig::new(0.30, v1, 4.0)?;
        let d = density_of_states(&ctx, &barrier, k1)?;
        println!(
            "V1 = {v1:+}: nu = {:.8}  T = {:.6}  R- = {:.6} (t_cr {:9.4})  R+ = {:.6} (t_cr {:9.4})",
            d.nu, d.t_coeff, d.r_minus, d.t_cr_minus, d.r_plus, d.t_cr_plus
        );
        assert!((d.r_minus - d.r_plus).abs() < 1e-12);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

// Wave numbers, amplitudes and coefficients in each energy regime.
//
// Run with `cargo run --example barrier_scattering`.

use std::error::Error;

use swp_clock::{scatter, scatter_from_right, BarrierConfig, ScatteringContext};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ctx = ScatteringContext::default();

    for v1 in [0.15, -0.15] {
        let barrier = BarrierConfig::new(0.30, v1, 5.0)?;
        println!("V0 = 0.30, V1 = {v1:+.2}, a = 5");
        println!(
            "{:>6} {:>18} {:>12} {:>12} {:>10} {:>10}",
            "E", "regime", "T", "R", "phi_T", "phi_R"
        );
        for e in [0.10, 0.18, 0.30, 0.35, 0.60] {
            let r = scatter(&ctx, &barrier, ctx.wave_number(e))?;
            println!(
                "{e:>6.2} {:>18} {:>12.6e} {:>12.6e} {:>10.5} {:>10.5}",
                r.waves.regime.as_str(),
                r.t_coeff,
                r.r_coeff,
                r.phi_t,
                r.phi_r
            );
            assert!((r.t_coeff + r.r_coeff - 1.0).abs() < 1e-12);
        }
        println!();
    }

    // The transmission coefficient is the same from either side.
    let barrier = BarrierConfig::new(0.30, 0.15, 3.0)?;
    let k1 = ctx.wave_number(0.35);
    let left = scatter(&ctx, &barrier, k1)?;
    let right = scatter_from_right(&ctx, &barrier, left.waves.k3.re)?;
    println!(
        "reciprocity: T(left) = {:.15}, T(right) = {:.15}",
        left.t_coeff, right.t_coeff
    );
    assert!((left.t_coeff - right.t_coeff).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

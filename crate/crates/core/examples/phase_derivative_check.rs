// Analytic clock times against a central difference of the scattering
// phases with respect to the barrier height.
//
// Run with `cargo run --example phase_derivative_check`.

use std::error::Error;

use swp_clock::{
    clock_time_fd_oracle, reflection_times, stationary_times, BarrierConfig, Channel,
    ScatteringContext,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ctx = ScatteringContext::default();
    let eps = 1e-6;

    println!(
        "{:>6} {:>6} {:>5} {:>14} {:>14} {:>10}",
        "E", "V1", "a", "t_ct", "fd", "rel"
    );
    for (e, v1, a) in [
        (0.35, 0.15, 3.0),
        (0.35, -0.15, 12.0),
        (0.18, 0.15, 4.0),
        (0.18, -0.15, 1.5),
    ] {
        let barrier = BarrierConfig::new(0.30, v1, a)?;
        let k1 = ctx.wave_number(e);
        let t = stationary_times(&ctx, &barrier, k1)?;
        for (channel, exact) in [
            (Channel::Transmission, t.t_ct),
            (Channel::Reflection, t.t_cr),
        ] {
            let fd = clock_time_fd_oracle(&ctx, &barrier, k1, channel, eps)?;
            let rel = (fd - exact).abs() / exact.abs();
            println!("{e:>6} {v1:>6} {a:>5} {exact:>14.8} {fd:>14.8} {rel:>10.2e}  {channel}");
            assert!(rel < 1e-5);
        }
    }

    // Below the right level only the reflected wave exists.
    let barrier = BarrierConfig::new(0.30, 0.15, 2.0)?;
    let k1 = ctx.wave_number(0.10);
    let r = reflection_times(&ctx, &barrier, k1)?;
    let fd = clock_time_fd_oracle(&ctx, &barrier, k1, Channel::Reflection, eps)?;
    println!(
        "E = 0.10 < V1: continued t_cr = {:.8}, fd = {fd:.8}",
        r.t_cr
    );
    assert!(r.extrapolated);
    assert!((r.t_cr - fd).abs() < 1e-5 * r.t_cr.abs());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

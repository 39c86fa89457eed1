// Reflection-time peaks at the widths where `k2·a` is a multiple of π.
//
// Run with `cargo run --example resonances`.

use std::error::Error;

use swp_clock::{
    resonance_reflection_time, resonance_widths, stationary_times, BarrierConfig, ScatteringContext,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ctx = ScatteringContext::default();
    let k1 = ctx.wave_number(0.35);

    for v1 in [0.15, -0.15] {
        let template = BarrierConfig::new(0.30, v1, 1.0)?;
        println!("V1 = {v1:+}");
        for (n, a) in resonance_widths(&ctx, &template, k1, 3)?
            .into_iter()
            .enumerate()
        {
            let barrier = template.with_width(a)?;
            let t = stationary_times(&ctx, &barrier, k1)?;
            let closed = resonance_reflection_time(&ctx, &barrier, k1)?;
            // Slightly off resonance the reflection time is smaller in magnitude.
            let off = stationary_times(&ctx, &template.with_width(a * 1.05)?, k1)?;
            println!(
                "  n = {}  a = {a:8.4}  t_cr = {:10.4}  closed form = {:10.4}  R = {:.4e}  t_cr(1.05 a) = {:8.4}",
                n + 1,
                t.t_cr,
                closed,
                t.r_coeff,
                off.t_cr
            );
            assert!((t.t_cr - closed).abs() <= 1e-8 * closed.abs());
            assert_eq!(t.t_cr.signum(), -v1.signum());
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

// Saturation of the stationary tunneling time against the eventual linear
// growth of the packet average.
//
// Run with `cargo run --release --example hartman_growth`.

use std::error::Error;

use swp_clock::{
    ensemble_averages, stationary_times, BarrierConfig, GaussianPacket, QuadratureSpec,
    ScatteringContext,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ctx = ScatteringContext::default();
    let quad = QuadratureSpec::default();
    let k0 = ctx.wave_number(0.22);

    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "a", "t_ct(k0)", "sigma=10", "sigma=40", "P_T(10)"
    );
    let narrow = GaussianPacket::new(k0, 10.0, -80.0)?;
    let wide = GaussianPacket::new(k0, 40.0, -320.0)?;
    let mut previous = None;
    for a in [2.0, 5.0, 10.0, 20.0, 40.0, 80.0] {
        let barrier = BarrierConfig::new(0.30, 0.15, a)?;
        let st = stationary_times(&ctx, &barrier, k0)?;
        let n = ensemble_averages(&narrow, &ctx, &barrier, &quad)?;
        let w = ensemble_averages(&wide, &ctx, &barrier, &quad)?;
        println!(
            "{a:>6} {:>12.4} {:>12.4} {:>12.4} {:>12.3e}",
            st.t_ct, n.avg_tct, w.avg_tct, n.p_t
        );
        if let Some((a_prev, t_prev)) = previous {
            if a > 20.0 {
                println!(
                    "        slope of <t_ct> for sigma = 10: {:.4}",
                    (n.avg_tct - t_prev) / (a - a_prev)
                );
            }
        }
        previous = Some((a, n.avg_tct));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

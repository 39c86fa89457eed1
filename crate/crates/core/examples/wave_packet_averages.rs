// Averages of the clock and dwell times over the transmitted and reflected
// parts of a Gaussian wave packet.
//
// Run with `cargo run --release --example wave_packet_averages`.

use std::error::Error;

use swp_clock::{
    ensemble_averages, stationary_times, BarrierConfig, GaussianPacket, QuadratureSpec,
    ScatteringContext,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let ctx = ScatteringContext::default();
    let quad = QuadratureSpec::default();

    for (e0, v1) in [(0.22, 0.15), (0.22, -0.15), (0.41, 0.15), (0.41, -0.15)] {
        let packet = GaussianPacket::from_energy(&ctx, e0, 10.0, -80.0)?;
        println!("E(k0) = {e0}, V1 = {v1:+}, sigma = 10");
        println!(
            "{:>6} {:>9} {:>10} {:>10} {:>10} {:>10} {:>10} {:>10}",
            "a", "P_T", "<t_ct>", "<tau_d>_T", "t_ct(k0)", "<t_cr>", "<tau_d>_R", "t_cr(k0)"
        );
        for a in [0.1, 1.0, 5.0, 10.0, 20.0] {
            let barrier = BarrierConfig::new(0.30, v1, a)?;
            let avg = ensemble_averages(&packet, &ctx, &barrier, &quad)?;
            let st = stationary_times(&ctx, &barrier, packet.k0())?;
            println!(
                "{a:>6} {:>9.3e} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>10.4} {:>10.4}",
                avg.p_t, avg.avg_tct, avg.avg_taud_t, st.t_ct, avg.avg_tcr, avg.avg_taud_r, st.t_cr
            );
            assert!((avg.p_t + avg.p_r - 1.0).abs() < 1e-9);
        }
        println!();
    }

    // A narrow momentum distribution reproduces the stationary times.
    let barrier = BarrierConfig::new(0.30, 0.15, 5.0)?;
    let packet = GaussianPacket::from_energy(&ctx, 0.35, 200.0, -1600.0)?;
    let avg = ensemble_averages(&packet, &ctx, &barrier, &quad)?;
    let st = stationary_times(&ctx, &barrier, packet.k0())?;
    println!(
        "sigma = 200: <t_ct> = {:.6}, t_ct(k0) = {:.6}",
        avg.avg_tct, st.t_ct
    );
    assert!((avg.avg_tct - st.t_ct).abs() < 0.01 * st.t_ct);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}

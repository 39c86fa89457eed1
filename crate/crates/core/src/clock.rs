//! Stationary Salecker-Wigner-Peres clock times.
//!
//! The clock time of a channel is `−ħ ∂φ/∂V0` of that channel's phase. With
//! `w = k2²` and `dw/dV0 = −2μ/ħ²` the transmission time reads
//!
//! ```text
//!   t_ct = μa(k1+k3)/ħ · (1 + sc + k1k3·a²·λ) / ((k1+k3)²c² + (w+k1k3)²a²s²)
//! ```
//!
//! where `c = cos(k2a)`, `s = sin(k2a)/(k2a)` and `λ = (1 − sc)/(k2a)²`, all
//! regular functions of `w` (see [`crate::kernel`]). The same expression
//! covers tunneling energies, where it equals the `k2 → i q2` continuation.
//! The asymmetry time `t_0` follows from `k3 → −k3`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Channel, Error, Result};
use crate::kernel::BarrierKernel;
use crate::scattering::{
    profile_wave_numbers, scatter_profile, BarrierConfig, Profile, Regime, ScatteringContext,
    ScatteringResult, WaveNumbers,
};

/// Clock and dwell times for one incident wave number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StationaryTimes {
    /// Transmission clock time.
    pub t_ct: f64,
    /// Asymmetry time, `t_cr − t_ct`.
    pub t_0: f64,
    /// Reflection clock time.
    pub t_cr: f64,
    /// Dwell time, `t_ct + R·t_0`.
    pub tau_d: f64,
    pub t_coeff: f64,
    pub r_coeff: f64,
}

/// Reflection-channel times, available in every regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionTimes {
    pub t_cr: f64,
    pub tau_d: f64,
    pub r_coeff: f64,
    /// Set when `E <= V1`, where the reflection time is the analytic
    /// continuation `k3 → i q3` of the propagating expression.
    pub extrapolated: bool,
}

fn clock_time_pair(ctx: &ScatteringContext, profile: &Profile, waves: &WaveNumbers) -> (f64, f64) {
    let a = profile.a;
    let a2 = a * a;
    let k1 = waves.k1;
    let k3 = waves.k3.re;
    let w = waves.k2_sq;
    let kern = BarrierKernel::new(w * a2);
    let cc = kern.cos * kern.cos;
    let ss = a2 * kern.sinc * kern.sinc;
    let sc = kern.sinc * kern.cos;
    let kk = k1 * k3;
    let pref = ctx.mu() * a / ctx.hbar();

    let sum = k1 + k3;
    let t_ct = pref * sum * (kern.det + sc + kk * a2 * kern.lam)
        / (sum * sum * cc + (w + kk).powi(2) * ss);

    // k1 − k3 from the level difference avoids cancellation when V1 ≈ 0.
    let t_0 = if (profile.right - profile.left).abs() < 1e-300 {
        0.0
    } else {
        let diff = ctx.level_sq(profile.right - profile.left) / sum;
        pref * diff * (kern.det + sc - kk * a2 * kern.lam)
            / (diff * diff * cc + (w - kk).powi(2) * ss)
    };
    (t_ct, t_0)
}

pub(crate) fn profile_times(
    ctx: &ScatteringContext,
    profile: &Profile,
    k_in: f64,
) -> Result<(ScatteringResult, StationaryTimes)> {
    let res = scatter_profile(ctx, profile, k_in)?;
    if res.waves.regime == Regime::BelowRightLevel {
        return Err(Error::TransmissionUndefined {
            energy: profile.left + ctx.energy(k_in),
            v1: profile.right,
        });
    }
    let (t_ct, t_0) = clock_time_pair(ctx, profile, &res.waves);
    let times = StationaryTimes {
        t_ct,
        t_0,
        t_cr: t_ct + t_0,
        tau_d: t_ct + res.r_coeff * t_0,
        t_coeff: res.t_coeff,
        r_coeff: res.r_coeff,
    };
    Ok((res, times))
}

/// Transmission, asymmetry, reflection and dwell times for incidence from the
/// left. Fails with [`Error::TransmissionUndefined`] when `E <= V1`.
pub fn stationary_times(
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k1: f64,
) -> Result<StationaryTimes> {
    profile_times(ctx, &barrier.profile(), k1).map(|(_, t)| t)
}

/// `(t_ct, t_cr)` as `(2μ/ħ)·d(phase)/dw` evaluated with complex `k3`.
///
/// The phases are `φ_T = −arg D` and `φ_R = arg N − arg D` with
/// `D = (k1+k3)c − i(w+k1k3)a·s` and `N = (k1−k3)c + i(w−k1k3)a·s`.
pub(crate) fn log_derivative_times(
    ctx: &ScatteringContext,
    waves: &WaveNumbers,
    a: f64,
) -> (f64, f64) {
    let a2 = a * a;
    let w = waves.k2_sq;
    let k1 = Complex64::new(waves.k1, 0.0);
    let k3 = waves.k3;
    let i = Complex64::i();
    let kern = BarrierKernel::new(w * a2);
    let (c, s) = (kern.cos, kern.sinc);
    let dc = -0.5 * a2 * s;
    let ds = 0.5 * a2 * kern.dsinc;
    let kk = k1 * k3;

    let d = (k1 + k3) * c - i * (w + kk) * a * s;
    let d_w = (k1 + k3) * dc - i * a * (s + (w + kk) * ds);
    let n = (k1 - k3) * c + i * (w - kk) * a * s;
    let n_w = (k1 - k3) * dc + i * a * (s + (w - kk) * ds);

    let scale = 2.0 * ctx.mu() / ctx.hbar();
    let dphi_d = (d_w / d).im;
    let t_ct = -scale * dphi_d;
    let t_cr = scale * ((n_w / n).im - dphi_d);
    (t_ct, t_cr)
}

/// Reflection clock and dwell times in every regime. Below the right level
/// the values come from the `k3 → i q3` continuation and are flagged.
pub fn reflection_times(
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k1: f64,
) -> Result<ReflectionTimes> {
    let profile = barrier.profile();
    let waves = profile_wave_numbers(ctx, &profile, k1)?;
    if waves.regime == Regime::BelowRightLevel {
        let (_, t_cr) = log_derivative_times(ctx, &waves, profile.a);
        // T = 0, so the dwell time equals the reflection time.
        return Ok(ReflectionTimes {
            t_cr,
            tau_d: t_cr,
            r_coeff: 1.0,
            extrapolated: true,
        });
    }
    let (_, t) = profile_times(ctx, &profile, k1)?;
    Ok(ReflectionTimes {
        t_cr: t.t_cr,
        tau_d: t.tau_d,
        r_coeff: t.r_coeff,
        extrapolated: false,
    })
}

/// Default central-difference step, `1e-6·max(V0, 1)`.
pub fn default_fd_step(barrier: &BarrierConfig) -> f64 {
    1e-6 * barrier.v0().max(1.0)
}

/// Clock time from a central difference of the scattering phase in `V0`.
///
/// Phases at `V0 ± eps` are moved onto the branch nearest the unperturbed
/// phase before differencing. The reflection channel is also accepted below
/// the right level, where it checks the continued reflection time.
pub fn clock_time_fd_oracle(
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k1: f64,
    channel: Channel,
    eps: f64,
) -> Result<f64> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {eps}"
        )));
    }
    let limit = barrier.v0() / 10.0;
    if eps > limit {
        return Err(Error::StepTooLarge { eps, limit });
    }
    let profile = barrier.profile();
    let waves = profile_wave_numbers(ctx, &profile, k1)?;
    if channel == Channel::Transmission && waves.regime == Regime::BelowRightLevel {
        return Err(Error::TransmissionUndefined {
            energy: ctx.energy(k1),
            v1: barrier.v1(),
        });
    }
    let phase = |v0: f64| -> Result<f64> {
        let r = scatter_profile(ctx, &profile.with_barrier(v0), k1)?;
        Ok(match channel {
            Channel::Transmission => r.phi_t,
            Channel::Reflection => r.phi_r,
        })
    };
    let center = phase(barrier.v0())?;
    let nearest = |phi: f64| phi + 2.0 * PI * ((center - phi) / (2.0 * PI)).round();
    let plus = nearest(phase(barrier.v0() + eps)?);
    let minus = nearest(phase(barrier.v0() - eps)?);
    Ok(-ctx.hbar() * (plus - minus) / (2.0 * eps))
}

fn propagating_waves(
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k1: f64,
) -> Result<WaveNumbers> {
    let waves = profile_wave_numbers(ctx, &barrier.profile(), k1)?;
    if waves.regime != Regime::Propagating {
        return Err(Error::RegimeMismatch {
            expected: Regime::Propagating,
            found: waves.regime,
        });
    }
    Ok(waves)
}

/// Widths `a_n = nπ/k2`, `n = 1..=n_max`, at which the barrier is transparent.
pub fn resonance_widths(
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k1: f64,
    n_max: usize,
) -> Result<Vec<f64>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let waves = propagating_waves(ctx, barrier, k1)?;
    let k2 = waves.k2.re;
    if k2 <= 0.0 {
        return Err(Error::InvalidArgument(
            "no resonances at the barrier top (k2 = 0)".into(),
        ));
    }
    Ok((1..=n_max).map(|n| n as f64 * PI / k2).collect())
}

/// Closed-form reflection time at a resonance width,
/// `−(2μk1a/ħk2²)(V0 − V1)/V1`. The barrier width is taken as given.
pub fn resonance_reflection_time(
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k1: f64,
) -> Result<f64> {
    let waves = propagating_waves(ctx, barrier, k1)?;
    if barrier.is_symmetric() {
        return Err(Error::SymmetricBarrier);
    }
    let (v0, v1) = (barrier.v0(), barrier.v1());
    Ok(-(2.0 * ctx.mu() * k1 * barrier.width() / (ctx.hbar() * waves.k2_sq)) * (v0 - v1) / v1)
}

/// Left- and right-incidence quantities entering the density of states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityOfStatesResult {
    /// Average density of energy per unit length.
    pub nu: f64,
    pub r_minus: f64,
    pub r_plus: f64,
    pub t_cr_minus: f64,
    pub t_cr_plus: f64,
    /// Transmission coefficient (the same for both directions).
    pub t_coeff: f64,
    pub t_ct: f64,
}

/// `2πħa·ν = 2T·t_ct + R₋t_cr₋ + R₊t_cr₊`, with the `+` quantities from
/// incidence on the mirrored profile at wave number `k3`.
pub fn density_of_states(
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k1: f64,
) -> Result<DensityOfStatesResult> {
    let waves = propagating_waves(ctx, barrier, k1)?;
    let profile = barrier.profile();
    let (_, left) = profile_times(ctx, &profile, k1)?;
    let (_, right) = profile_times(ctx, &profile.mirrored(), waves.k3.re)?;
    let sum =
        2.0 * left.t_coeff * left.t_ct + left.r_coeff * left.t_cr + right.r_coeff * right.t_cr;
    Ok(DensityOfStatesResult {
        nu: sum / (2.0 * PI * ctx.hbar() * barrier.width()),
        r_minus: left.r_coeff,
        r_plus: right.r_coeff,
        t_cr_minus: left.t_cr,
        t_cr_plus: right.t_cr,
        t_coeff: left.t_coeff,
        t_ct: left.t_ct,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> ScatteringContext {
        ScatteringContext::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-3)
    }

    #[test]
    fn real_form_matches_log_derivative() {
        for &v1 in &[0.15, -0.15, 0.0, 0.02] {
            for &e in &[0.05, 0.18, 0.2999, 0.3, 0.3001, 0.35, 0.8] {
                if e <= v1 {
                    continue;
                }
                for &a in &[1e-3, 0.7, 5.0, 9.934_588_3, 30.0] {
                    let b = BarrierConfig::new(0.30, v1, a).unwrap();
                    let k1 = ctx().wave_number(e);
                    let t = stationary_times(&ctx(), &b, k1).unwrap();
                    let waves = profile_wave_numbers(&ctx(), &b.profile(), k1).unwrap();
                    let (ct, cr) = log_derivative_times(&ctx(), &waves, a);
                    assert!(
                        rel(t.t_ct, ct) < 1e-10,
                        "t_ct {} vs {} (v1 {v1}, e {e}, a {a})",
                        t.t_ct,
                        ct
                    );
                    assert!(
                        rel(t.t_cr, cr) < 1e-9,
                        "t_cr {} vs {} (v1 {v1}, e {e}, a {a})",
                        t.t_cr,
                        cr
                    );
                }
            }
        }
    }

    #[test]
    fn symmetric_times_collapse() {
        let b = BarrierConfig::new(0.5, 0.0, 3.0).unwrap();
        for e in [0.1, 0.49, 0.7] {
            let t = stationary_times(&ctx(), &b, ctx().wave_number(e)).unwrap();
            assert_eq!(t.t_0, 0.0);
            assert_eq!(t.t_ct, t.t_cr);
            assert_eq!(t.t_ct, t.tau_d);
        }
    }

    #[test]
    fn transmission_undefined_below_right_level() {
        let b = BarrierConfig::new(0.30, 0.15, 3.0).unwrap();
        let k1 = ctx().wave_number(0.1);
        assert!(matches!(
            stationary_times(&ctx(), &b, k1),
            Err(Error::TransmissionUndefined { .. })
        ));
        let r = reflection_times(&ctx(), &b, k1).unwrap();
        assert!(r.extrapolated);
        assert_eq!(r.r_coeff, 1.0);
        assert_eq!(r.t_cr, r.tau_d);
        assert!(r.t_cr > 0.0);
    }

    #[test]
    fn resonance_closed_form() {
        let k1 = ctx().wave_number(0.35);
        let a1 = PI / 0.1f64.sqrt();
        let plus = BarrierConfig::new(0.30, 0.15, a1).unwrap();
        let minus = BarrierConfig::new(0.30, -0.15, a1).unwrap();
        let tp = resonance_reflection_time(&ctx(), &plus, k1).unwrap();
        let tm = resonance_reflection_time(&ctx(), &minus, k1).unwrap();
        assert!((tp + 166.238).abs() < 1e-3, "{tp}");
        assert!((tm - 498.71).abs() < 1e-2, "{tm}");
        assert!(rel(stationary_times(&ctx(), &plus, k1).unwrap().t_cr, tp) < 1e-8);
        assert!(rel(stationary_times(&ctx(), &minus, k1).unwrap().t_cr, tm) < 1e-8);

        let sym = BarrierConfig::new(0.30, 0.0, a1).unwrap();
        assert_eq!(
            resonance_reflection_time(&ctx(), &sym, k1),
            Err(Error::SymmetricBarrier)
        );
    }

    #[test]
    fn resonance_widths_values() {
        let b = BarrierConfig::new(0.30, 0.15, 1.0).unwrap();
        let w = resonance_widths(&ctx(), &b, ctx().wave_number(0.35), 2).unwrap();
        assert!((w[0] - 9.934_588_3).abs() < 1e-7);
        assert!((w[1] - 19.869_176_6).abs() < 1e-7);

        // k2 = π with ħ = μ = 1: E − V0 = π²/2
        let e = 0.30 + PI * PI / 2.0;
        let w = resonance_widths(&ctx(), &b, ctx().wave_number(e), 1).unwrap();
        assert!((w[0] - 1.0).abs() < 1e-14);

        assert!(resonance_widths(&ctx(), &b, ctx().wave_number(0.2), 2).is_err());
        assert!(resonance_widths(&ctx(), &b, ctx().wave_number(0.35), 0).is_err());
    }

    #[test]
    fn fd_step_guard() {
        let b = BarrierConfig::new(0.30, 0.15, 5.0).unwrap();
        let k1 = ctx().wave_number(0.35);
        assert!(matches!(
            clock_time_fd_oracle(&ctx(), &b, k1, Channel::Transmission, 0.031),
            Err(Error::StepTooLarge { .. })
        ));
        assert!(clock_time_fd_oracle(&ctx(), &b, k1, Channel::Transmission, 0.0).is_err());
        assert!(matches!(
            clock_time_fd_oracle(
                &ctx(),
                &b,
                ctx().wave_number(0.1),
                Channel::Transmission,
                1e-6
            ),
            Err(Error::TransmissionUndefined { .. })
        ));
    }

    #[test]
    fn fd_oracle_examples() {
        let eps = 1e-6;
        let b = BarrierConfig::new(0.30, 0.15, 5.0).unwrap();
        let k1 = ctx().wave_number(0.35);
        let t = stationary_times(&ctx(), &b, k1).unwrap();
        let fd_t = clock_time_fd_oracle(&ctx(), &b, k1, Channel::Transmission, eps).unwrap();
        let fd_r = clock_time_fd_oracle(&ctx(), &b, k1, Channel::Reflection, eps).unwrap();
        assert!(rel(fd_t, t.t_ct) < 1e-5);
        assert!(rel(fd_r, t.t_cr) < 1e-5);

        let b = BarrierConfig::new(0.30, 0.15, 10.0).unwrap();
        let k1 = ctx().wave_number(0.18);
        let t = stationary_times(&ctx(), &b, k1).unwrap();
        let fd_t = clock_time_fd_oracle(&ctx(), &b, k1, Channel::Transmission, eps).unwrap();
        assert!(rel(fd_t, t.t_ct) < 1e-5);

        let sym = BarrierConfig::new(0.30, 0.0, 4.0).unwrap();
        let ft = clock_time_fd_oracle(&ctx(), &sym, k1, Channel::Transmission, eps).unwrap();
        let fr = clock_time_fd_oracle(&ctx(), &sym, k1, Channel::Reflection, eps).unwrap();
        assert!((ft - fr).abs() < 1e-6 * ft.abs());
    }

    #[test]
    fn fd_oracle_checks_continued_reflection_time() {
        let b = BarrierConfig::new(0.30, 0.15, 4.0).unwrap();
        for e in [0.02, 0.1, 0.149] {
            let k1 = ctx().wave_number(e);
            let r = reflection_times(&ctx(), &b, k1).unwrap();
            let fd = clock_time_fd_oracle(&ctx(), &b, k1, Channel::Reflection, 1e-6).unwrap();
            assert!(rel(fd, r.t_cr) < 1e-5, "{fd} vs {} at E = {e}", r.t_cr);
        }
    }

    #[test]
    fn transparent_limit() {
        for &(v1, e) in &[(0.15, 0.35), (-0.15, 0.35), (0.15, 0.18), (-0.15, 0.18)] {
            let a = 1e-3;
            let b = BarrierConfig::new(0.30, v1, a).unwrap();
            let k1 = ctx().wave_number(e);
            let t = stationary_times(&ctx(), &b, k1).unwrap();
            let ratio = t.t_cr * v1 / (2.0 * k1 * a);
            assert!((ratio - 1.0).abs() < 0.01, "{ratio}");
            assert_eq!(t.t_cr < 0.0, v1 < 0.0);
        }
        let b = BarrierConfig::new(0.30, -0.15, 0.01).unwrap();
        let t = stationary_times(&ctx(), &b, ctx().wave_number(0.35)).unwrap();
        assert!((t.t_cr + 0.111_555).abs() < 0.01 * 0.111_555, "{}", t.t_cr);
    }

    #[test]
    fn density_of_states_symmetric() {
        let b = BarrierConfig::new(0.30, 0.0, 6.0).unwrap();
        let k1 = ctx().wave_number(0.45);
        let d = density_of_states(&ctx(), &b, k1).unwrap();
        let t = stationary_times(&ctx(), &b, k1).unwrap();
        assert!(rel(PI * b.width() * d.nu, t.t_ct) < 1e-12);
        assert!(rel(PI * b.width() * d.nu, t.tau_d) < 1e-12);
        assert!((d.r_minus - d.r_plus).abs() < 1e-14);
    }

    #[test]
    fn density_of_states_asymmetric() {
        let b = BarrierConfig::new(0.30, 0.15, 5.0).unwrap();
        let k1 = ctx().wave_number(0.35);
        let d = density_of_states(&ctx(), &b, k1).unwrap();
        assert!((d.r_minus * d.t_cr_minus - d.r_plus * d.t_cr_plus).abs() > 1e-3);
        assert!((d.r_minus - d.r_plus).abs() < 1e-14);
        assert!(density_of_states(&ctx(), &b, ctx().wave_number(0.2)).is_err());
    }
}

//! Gaussian wave packets and averages over post-selected sub-ensembles.
//!
//! For a channel with coefficient `W` (T or R) the wave-number density of the
//! post-selected ensemble is `ρ_W(k) = |A(k)|²W(k) / ∫|A|²W dk`, and the
//! ensemble average of a stationary time `t` is `∫ρ_W t dk`. The `dk/√2π`
//! measure cancels in every ratio and is dropped.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::clock::{log_derivative_times, profile_times};
use crate::error::{Channel, Error, Result};
use crate::quadrature::integrate;
use crate::scattering::{profile_wave_numbers, BarrierConfig, Regime, ScatteringContext};

/// Right-moving Gaussian packet, `A(k) = (2σ²/π)^{1/4} exp{−i z0 (k−k0) − σ²(k−k0)²}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket {
    k0: f64,
    sigma: f64,
    z0: f64,
}

impl GaussianPacket {
    pub fn new(k0: f64, sigma: f64, z0: f64) -> Result<Self> {
        if !(k0.is_finite() && k0 > 0.0) {
            return Err(Error::InvalidPacket(format!(
                "k0 must be positive, got {k0}"
            )));
        }
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidPacket(format!(
                "sigma must be positive, got {sigma}"
            )));
        }
        if !(z0.is_finite() && z0 < 0.0) {
            return Err(Error::InvalidPacket(format!(
                "initial centre must lie left of the barrier, got z0 = {z0}"
            )));
        }
        Ok(Self { k0, sigma, z0 })
    }

    /// Packet whose central wave number has kinetic energy `e0`.
    pub fn from_energy(ctx: &ScatteringContext, e0: f64, sigma: f64, z0: f64) -> Result<Self> {
        if !(e0 > 0.0) {
            return Err(Error::InvalidPacket(format!(
                "central energy must be positive, got {e0}"
            )));
        }
        Self::new(ctx.wave_number(e0), sigma, z0)
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn z0(&self) -> f64 {
        self.z0
    }

    /// Standard deviation of `|A|²` in `k`, `1/(2σ)`.
    pub fn momentum_spread(&self) -> f64 {
        0.5 / self.sigma
    }

    pub fn amplitude(&self, k: f64) -> Complex64 {
        let dk = k - self.k0;
        let norm = (2.0 * self.sigma * self.sigma / PI).powf(0.25);
        let phase = Complex64::new(-self.sigma * self.sigma * dk * dk, -self.z0 * dk);
        norm * phase.exp()
    }

    /// `|A(k)|²`, a normal density with mean `k0` and spread `1/(2σ)`.
    pub fn weight(&self, k: f64) -> f64 {
        let dk = k - self.k0;
        (2.0 * self.sigma * self.sigma / PI).sqrt()
            * (-2.0 * self.sigma * self.sigma * dk * dk).exp()
    }

    /// `∫_{−∞}^{k} |A|² dk'`.
    pub fn weight_below(&self, k: f64) -> f64 {
        0.5 * libm::erfc(std::f64::consts::SQRT_2 * self.sigma * (self.k0 - k))
    }
}

/// Settings for the wave-number integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    /// Absolute tolerance on averaged times.
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    /// Half-width of the integration window in units of `1/(2σ)`.
    pub k_window: f64,
    /// Lowest wave number kept in the window.
    pub k_floor: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            abs_tol: 1e-12,
            max_subdivisions: 2000,
            k_window: 10.0,
            k_floor: 1e-6,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidQuadrature(
                "tolerances must be positive".into(),
            ));
        }
        if !(self.k_window >= 6.0) || !self.k_window.is_finite() {
            return Err(Error::InvalidQuadrature(format!(
                "k_window must be at least 6, got {}",
                self.k_window
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(Error::InvalidQuadrature(
                "max_subdivisions must be positive".into(),
            ));
        }
        if !(self.k_floor > 0.0) {
            return Err(Error::InvalidQuadrature("k_floor must be positive".into()));
        }
        Ok(())
    }
}

/// Stationary quantities for one mode of the packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeTimes {
    pub k1: f64,
    pub t_coeff: f64,
    pub r_coeff: f64,
    /// NaN below the right level, where no transmitted wave exists.
    pub t_ct: f64,
    /// NaN below the right level.
    pub t_0: f64,
    pub t_cr: f64,
    pub tau_d: f64,
    pub extrapolated: bool,
}

impl ModeTimes {
    pub fn evaluate(ctx: &ScatteringContext, barrier: &BarrierConfig, k1: f64) -> Result<Self> {
        let profile = barrier.profile();
        let waves = profile_wave_numbers(ctx, &profile, k1)?;
        if waves.regime == Regime::BelowRightLevel {
            let (_, t_cr) = log_derivative_times(ctx, &waves, profile.a);
            return Ok(Self {
                k1,
                t_coeff: 0.0,
                r_coeff: 1.0,
                t_ct: f64::NAN,
                t_0: f64::NAN,
                t_cr,
                tau_d: t_cr,
                extrapolated: true,
            });
        }
        let (_, t) = profile_times(ctx, &profile, k1)?;
        Ok(Self {
            k1,
            t_coeff: t.t_coeff,
            r_coeff: t.r_coeff,
            t_ct: t.t_ct,
            t_0: t.t_0,
            t_cr: t.t_cr,
            tau_d: t.tau_d,
            extrapolated: false,
        })
    }

    pub fn channel_weight(&self, channel: Channel) -> f64 {
        match channel {
            Channel::Transmission => self.t_coeff,
            Channel::Reflection => self.r_coeff,
        }
    }
}

/// Integration window in `k` with forced split points.
#[derive(Debug, Clone, PartialEq)]
pub struct KWindow {
    pub lo: f64,
    pub hi: f64,
    /// Sorted, including both ends.
    pub points: Vec<f64>,
}

const MAX_RESONANCE_SPLITS: usize = 1000;

/// `k0 ± k_window/(2σ)`, clipped at `k_floor`, split at `k0`, at the band
/// edges and at the wave numbers whose `k2·a` is a multiple of π.
pub fn integration_window(
    packet: &GaussianPacket,
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    quad: &QuadratureSpec,
) -> Result<KWindow> {
    quad.validate()?;
    let half = quad.k_window * packet.momentum_spread();
    let lo = (packet.k0 - half).max(quad.k_floor);
    let hi = packet.k0 + half;
    if !(hi > lo) {
        return Err(Error::InvalidQuadrature(format!(
            "window [{lo}, {hi}] is empty after clipping at k_floor"
        )));
    }
    let mut points = vec![lo, hi, packet.k0];
    let top_sq = ctx.level_sq(barrier.v0());
    points.push(top_sq.sqrt());
    if barrier.v1() > 0.0 {
        points.push(ctx.level_sq(barrier.v1()).sqrt());
    }
    let step = PI / barrier.width();
    for n in 1..=MAX_RESONANCE_SPLITS {
        let k = (top_sq + (n as f64 * step).powi(2)).sqrt();
        if k >= hi {
            break;
        }
        points.push(k);
    }
    points.retain(|&k| k >= lo && k <= hi);
    points.sort_by(f64::total_cmp);
    points.dedup();
    Ok(KWindow { lo, hi, points })
}

fn ratio_tolerance(quad: &QuadratureSpec, value: f64, norm: f64) -> f64 {
    (quad.rel_tol * value.abs())
        .max(quad.abs_tol * norm.abs())
        .max(f64::MIN_POSITIVE)
}

/// Post-selected density `ρ_W(k)` with its normalisation computed once.
#[derive(Debug, Clone, Copy)]
pub struct ChannelDensity {
    packet: GaussianPacket,
    ctx: ScatteringContext,
    barrier: BarrierConfig,
    channel: Channel,
    norm: f64,
}

impl ChannelDensity {
    pub fn new(
        packet: &GaussianPacket,
        ctx: &ScatteringContext,
        barrier: &BarrierConfig,
        channel: Channel,
        quad: &QuadratureSpec,
    ) -> Result<Self> {
        let window = integration_window(packet, ctx, barrier, quad)?;
        let mut failure = None;
        let integral = integrate(
            |k| match ModeTimes::evaluate(ctx, barrier, k) {
                Ok(m) => [packet.weight(k) * m.channel_weight(channel)],
                Err(e) => {
                    failure.get_or_insert(e);
                    [0.0]
                }
            },
            &window.points,
            |v| [ratio_tolerance(quad, v[0], 0.0)],
            quad.max_subdivisions,
        )?;
        if let Some(e) = failure {
            return Err(e);
        }
        let norm = integral.value[0];
        if !(norm >= 1e-300) {
            return Err(Error::VanishingChannel(channel));
        }
        Ok(Self {
            packet: *packet,
            ctx: *ctx,
            barrier: *barrier,
            channel,
            norm,
        })
    }

    /// `∫|A|²W dk` over the window.
    pub fn normalisation(&self) -> f64 {
        self.norm
    }

    pub fn at(&self, k1: f64) -> Result<f64> {
        let m = ModeTimes::evaluate(&self.ctx, &self.barrier, k1)?;
        Ok(self.packet.weight(k1) * m.channel_weight(self.channel) / self.norm)
    }
}

/// `ρ_W(k1)` for a single wave number.
pub fn channel_density(
    packet: &GaussianPacket,
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k1: f64,
    channel: Channel,
    quad: &QuadratureSpec,
) -> Result<f64> {
    ChannelDensity::new(packet, ctx, barrier, channel, quad)?.at(k1)
}

/// `∫|A|²W dk / ∫|A|² dk` over the window, so that `p_t + p_r = 1`.
pub fn total_probability(
    packet: &GaussianPacket,
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    channel: Channel,
    quad: &QuadratureSpec,
) -> Result<f64> {
    let window = integration_window(packet, ctx, barrier, quad)?;
    let mut failure = None;
    let integral = integrate(
        |k| {
            let w = packet.weight(k);
            match ModeTimes::evaluate(ctx, barrier, k) {
                Ok(m) => [w, w * m.channel_weight(channel)],
                Err(e) => {
                    failure.get_or_insert(e);
                    [w, 0.0]
                }
            }
        },
        &window.points,
        |v| {
            [
                ratio_tolerance(quad, v[0], 0.0),
                ratio_tolerance(quad, v[1], 0.0),
            ]
        },
        quad.max_subdivisions,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(integral.value[1] / integral.value[0])
}

/// Average of `observable` over the post-selected ensemble of `channel`.
///
/// The observable is only evaluated at modes with non-zero channel weight.
pub fn channel_average<F>(
    packet: &GaussianPacket,
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    channel: Channel,
    quad: &QuadratureSpec,
    observable: F,
) -> Result<f64>
where
    F: Fn(&ModeTimes) -> f64,
{
    let window = integration_window(packet, ctx, barrier, quad)?;
    let mut failure = None;
    let integral = integrate(
        |k| match ModeTimes::evaluate(ctx, barrier, k) {
            Ok(m) => {
                let w = packet.weight(k) * m.channel_weight(channel);
                if w == 0.0 {
                    [0.0, 0.0]
                } else {
                    [w, w * observable(&m)]
                }
            }
            Err(e) => {
                failure.get_or_insert(e);
                [0.0, 0.0]
            }
        },
        &window.points,
        |v| {
            [
                ratio_tolerance(quad, v[0], 0.0),
                ratio_tolerance(quad, v[1], v[0]),
            ]
        },
        quad.max_subdivisions,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    if !(integral.value[0] >= 1e-300) {
        return Err(Error::VanishingChannel(channel));
    }
    Ok(integral.value[1] / integral.value[0])
}

/// Sub-ensemble averages of the clock and dwell times for one packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleAverages {
    /// `⟨t_ct⟩` over the transmitted ensemble.
    pub avg_tct: f64,
    /// `⟨t_cr⟩` over the reflected ensemble.
    pub avg_tcr: f64,
    /// Dwell time averaged over the transmitted ensemble.
    pub avg_taud_t: f64,
    /// Dwell time averaged over the reflected ensemble.
    pub avg_taud_r: f64,
    pub p_t: f64,
    pub p_r: f64,
    /// `|A|²` weight at negative wave numbers.
    pub negk_weight: f64,
    /// `negk_weight > 1e-6`: the positive-k treatment is unreliable.
    pub negk_dominance: bool,
    /// Some modes in the window lie below the right level and use the
    /// continued reflection time.
    pub extrapolated_modes: bool,
    pub intervals: usize,
}

/// Threshold on `negk_weight` above which [`EnsembleAverages::negk_dominance`] is set.
pub const NEGATIVE_K_THRESHOLD: f64 = 1e-6;

/// All four sub-ensemble averages and both channel probabilities in one
/// adaptive pass. A channel with vanishing weight yields NaN averages.
pub fn ensemble_averages(
    packet: &GaussianPacket,
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    quad: &QuadratureSpec,
) -> Result<EnsembleAverages> {
    let window = integration_window(packet, ctx, barrier, quad)?;
    let mut failure = None;
    let integral = integrate(
        |k| {
            let w = packet.weight(k);
            match ModeTimes::evaluate(ctx, barrier, k) {
                Ok(m) => {
                    let wt = w * m.t_coeff;
                    let wr = w * m.r_coeff;
                    let (tct, taut) = if wt == 0.0 {
                        (0.0, 0.0)
                    } else {
                        (wt * m.t_ct, wt * m.tau_d)
                    };
                    [w, wt, wr, tct, wr * m.t_cr, taut, wr * m.tau_d]
                }
                Err(e) => {
                    failure.get_or_insert(e);
                    [0.0; 7]
                }
            }
        },
        &window.points,
        |v| {
            [
                ratio_tolerance(quad, v[0], 0.0),
                ratio_tolerance(quad, v[1], 0.0),
                ratio_tolerance(quad, v[2], 0.0),
                ratio_tolerance(quad, v[3], v[1]),
                ratio_tolerance(quad, v[4], v[2]),
                ratio_tolerance(quad, v[5], v[1]),
                ratio_tolerance(quad, v[6], v[2]),
            ]
        },
        quad.max_subdivisions,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    let v = integral.value;
    let average = |num: f64, den: f64| if den >= 1e-300 { num / den } else { f64::NAN };
    let negk_weight = packet.weight_below(0.0);
    let extrapolated_modes = barrier.v1() > 0.0 && window.lo < ctx.level_sq(barrier.v1()).sqrt();
    Ok(EnsembleAverages {
        avg_tct: average(v[3], v[1]),
        avg_tcr: average(v[4], v[2]),
        avg_taud_t: average(v[5], v[1]),
        avg_taud_r: average(v[6], v[2]),
        p_t: v[1] / v[0],
        p_r: v[2] / v[0],
        negk_weight,
        negk_dominance: negk_weight > NEGATIVE_K_THRESHOLD,
        extrapolated_modes,
        intervals: integral.intervals,
    })
}

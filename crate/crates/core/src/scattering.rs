//! Stationary scattering through the three-region asymmetric barrier
//!
//! ```text
//!   V(z) = 0     z < 0        (region I)
//!          V0    0 < z < a    (region II)
//!          V1    z > a        (region III)
//! ```
//!
//! with `ψ_I = e^{ik1 z} + B e^{-ik1 z}` and `ψ_III = C e^{ik3 z}`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::kernel::BarrierKernel;

/// Unit system: reduced Planck constant and particle mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringContext {
    hbar: f64,
    mu: f64,
}

impl Default for ScatteringContext {
    /// Atomic units, ħ = μ = 1.
    fn default() -> Self {
        Self { hbar: 1.0, mu: 1.0 }
    }
}

impl ScatteringContext {
    pub fn new(hbar: f64, mu: f64) -> Result<Self> {
        if !(hbar.is_finite() && hbar > 0.0) {
            return Err(Error::InvalidContext(format!(
                "hbar must be positive, got {hbar}"
            )));
        }
        if !(mu.is_finite() && mu > 0.0) {
            return Err(Error::InvalidContext(format!(
                "mu must be positive, got {mu}"
            )));
        }
        Ok(Self { hbar, mu })
    }

    /// Atomic units with a custom mass.
    pub fn with_mass(mu: f64) -> Result<Self> {
        Self::new(1.0, mu)
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// Kinetic energy `ħ²k²/2μ`.
    pub fn energy(&self, k: f64) -> f64 {
        self.hbar * self.hbar * k * k / (2.0 * self.mu)
    }

    /// Wave number of a free particle with kinetic energy `e > 0`.
    pub fn wave_number(&self, e: f64) -> f64 {
        (2.0 * self.mu * e).sqrt() / self.hbar
    }

    /// `2μV/ħ²`, the squared wave number equivalent of a potential level.
    pub(crate) fn level_sq(&self, v: f64) -> f64 {
        2.0 * self.mu * v / (self.hbar * self.hbar)
    }
}

/// Barrier of height `v0` and width `a` followed by the asymptotic level `v1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierConfig {
    v0: f64,
    v1: f64,
    a: f64,
}

impl BarrierConfig {
    pub fn new(v0: f64, v1: f64, a: f64) -> Result<Self> {
        if !(v0.is_finite() && v0 > 0.0) {
            return Err(Error::InvalidBarrier(format!(
                "V0 must be positive, got {v0}"
            )));
        }
        if !(v1.is_finite() && v1.abs() < v0) {
            return Err(Error::InvalidBarrier(format!(
                "|V1| must be below V0 = {v0}, got V1 = {v1}"
            )));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidBarrier(format!(
                "width must be positive, got {a}"
            )));
        }
        Ok(Self { v0, v1, a })
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn v1(&self) -> f64 {
        self.v1
    }

    pub fn width(&self) -> f64 {
        self.a
    }

    pub fn with_width(&self, a: f64) -> Result<Self> {
        Self::new(self.v0, self.v1, a)
    }

    /// `V1 == 0` exactly. Nearly symmetric barriers take the generic path.
    pub fn is_symmetric(&self) -> bool {
        self.v1.abs() < 1e-300
    }

    pub(crate) fn profile(&self) -> Profile {
        Profile {
            left: 0.0,
            barrier: self.v0,
            right: self.v1,
            a: self.a,
        }
    }
}

/// Step-barrier-step profile with arbitrary levels, used for both incidence
/// directions. Unlike [`BarrierConfig`] it carries no ordering constraints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Profile {
    pub left: f64,
    pub barrier: f64,
    pub right: f64,
    pub a: f64,
}

impl Profile {
    /// Same barrier seen by a particle arriving from the right.
    pub fn mirrored(&self) -> Self {
        Self {
            left: self.right,
            barrier: self.barrier,
            right: self.left,
            a: self.a,
        }
    }

    pub fn with_barrier(&self, barrier: f64) -> Self {
        Self { barrier, ..*self }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Regime {
    /// Energy at or above the barrier top; `k2` real.
    Propagating,
    /// Tunneling, `k2 = i q2`, with a propagating transmitted wave.
    Evanescent,
    /// `V1 > 0` and `E <= V1`: no transmitted wave, `k3 = i q3`.
    BelowRightLevel,
}

impl Regime {
    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Propagating => "propagating",
            Regime::Evanescent => "evanescent",
            Regime::BelowRightLevel => "below_right_level",
        }
    }
}

/// Wave numbers in the three regions for one incident `k1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveNumbers {
    pub k1: f64,
    /// `√(k1² − 2μV0/ħ²)` on the physical branch (`+i q2` below the top).
    pub k2: Complex64,
    /// `√(k1² − 2μV1/ħ²)` on the physical branch.
    pub k3: Complex64,
    /// `k2²`, kept exactly since every barrier function depends on it.
    pub k2_sq: f64,
    pub k3_sq: f64,
    pub regime: Regime,
}

fn branch_sqrt(sq: f64) -> Complex64 {
    if sq >= 0.0 {
        Complex64::new(sq.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, (-sq).sqrt())
    }
}

pub(crate) fn profile_wave_numbers(
    ctx: &ScatteringContext,
    profile: &Profile,
    k_in: f64,
) -> Result<WaveNumbers> {
    if !(k_in > 0.0) || !k_in.is_finite() {
        return Err(Error::NonPositiveWaveNumber(k_in));
    }
    let k_in_sq = k_in * k_in;
    let k2_sq = k_in_sq - ctx.level_sq(profile.barrier - profile.left);
    let k3_sq = k_in_sq - ctx.level_sq(profile.right - profile.left);
    let regime = if k3_sq <= 0.0 {
        Regime::BelowRightLevel
    } else if k2_sq >= 0.0 {
        Regime::Propagating
    } else {
        Regime::Evanescent
    };
    Ok(WaveNumbers {
        k1: k_in,
        k2: branch_sqrt(k2_sq),
        k3: branch_sqrt(k3_sq),
        k2_sq,
        k3_sq,
        regime,
    })
}

/// Wave numbers and regime for incidence from the left with wave number `k1`.
pub fn wave_numbers(
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k1: f64,
) -> Result<WaveNumbers> {
    profile_wave_numbers(ctx, &barrier.profile(), k1)
}

/// Amplitudes, phases and coefficients for one incident wave number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScatteringResult {
    pub waves: WaveNumbers,
    /// Transmitted amplitude `C`.
    pub c: Complex64,
    /// Reflected amplitude `B`.
    pub b: Complex64,
    /// Asymmetry factor with `B = C·G·e^{ik3 a}`.
    pub g: Complex64,
    /// `arg(C e^{ik3 a})`, in (−π, π].
    pub phi_t: f64,
    /// `arg(G)`, in (−π, π].
    pub phi_0: f64,
    /// `phi_t + phi_0`, wrapped to (−π, π].
    pub phi_r: f64,
    pub t_coeff: f64,
    pub r_coeff: f64,
}

/// Wraps an angle into (−π, π].
pub(crate) fn wrap_phase(phi: f64) -> f64 {
    let mut p = phi % (2.0 * PI);
    if p <= -PI {
        p += 2.0 * PI;
    } else if p > PI {
        p -= 2.0 * PI;
    }
    p
}

pub(crate) fn scatter_profile(
    ctx: &ScatteringContext,
    profile: &Profile,
    k_in: f64,
) -> Result<ScatteringResult> {
    let waves = profile_wave_numbers(ctx, profile, k_in)?;
    let a = profile.a;
    let kern = BarrierKernel::new(waves.k2_sq * a * a);
    let i = Complex64::i();
    let k1 = waves.k1;
    let k3 = waves.k3;

    // Transfer matrix across region II in the (ψ, ψ') basis, scaled by σ.
    let m11 = kern.cos;
    let m12 = a * kern.sinc;
    let m21 = -waves.k2_sq * a * kern.sinc;
    let m22 = kern.cos;

    // ψ(0) = 1 + B, ψ'(0) = ik1(1 − B); ψ(a) = t, ψ'(a) = ik3·t with t = C e^{ik3 a}.
    // Eliminating t: p(1 + B) + q(1 − B) = 0.
    let p = i * k3 * m11 - m21;
    let q = i * k1 * (i * k3 * m12 - m22);
    let denom = p - q;
    if denom.norm() == 0.0 || !denom.is_finite() {
        return Err(Error::DegenerateMatch);
    }
    let b = -(p + q) / denom;
    // (P − Q)·t = 2ik1·det(M) with det(M) = 1 in unscaled units.
    let t = 2.0 * i * k1 * kern.scale / denom;
    let c = t * (-i * k3 * a).exp();
    let g = i * (p + q) / (2.0 * k1 * kern.scale);

    let phi_t = t.arg();
    let phi_0 = g.arg();
    let phi_r = wrap_phase(phi_t + phi_0);

    let (t_coeff, r_coeff) = match waves.regime {
        Regime::BelowRightLevel => (0.0, b.norm_sqr()),
        _ => (k3.re / k1 * t.norm_sqr(), b.norm_sqr()),
    };

    Ok(ScatteringResult {
        waves,
        c,
        b,
        g,
        phi_t,
        phi_0,
        phi_r,
        t_coeff,
        r_coeff,
    })
}

/// Solves the matching problem for incidence from the left.
pub fn scatter(
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k1: f64,
) -> Result<ScatteringResult> {
    scatter_profile(ctx, &barrier.profile(), k1)
}

/// Incidence from the right with wave number `k_in` in the region of level V1.
///
/// The result is expressed in the mirrored frame: `waves.k1` is `k_in`,
/// `waves.k3` the wave number in the zero-level region, and `c` the amplitude
/// transmitted into it.
pub fn scatter_from_right(
    ctx: &ScatteringContext,
    barrier: &BarrierConfig,
    k_in: f64,
) -> Result<ScatteringResult> {
    scatter_profile(ctx, &barrier.profile().mirrored(), k_in)
}

/// Continuous-in-`a` branch of `atan(ratio·tan x)`.
fn unwrapped_atan_tan(ratio: f64, x: f64) -> f64 {
    let turns = (x / PI).round();
    let reduced = x - turns * PI;
    let base = (ratio * reduced.tan()).atan();
    if ratio >= 0.0 {
        turns * PI + base
    } else {
        -turns * PI + base
    }
}

fn require_propagating(waves: &WaveNumbers) -> Result<()> {
    if waves.regime != Regime::Propagating {
        return Err(Error::RegimeMismatch {
            expected: Regime::Propagating,
            found: waves.regime,
        });
    }
    Ok(())
}

/// `atan[(k2² + k1k3)/(k2(k1 + k3))·tan(k2 a)]`, continued in `a` from 0.
pub fn phase_t_analytic(ctx: &ScatteringContext, barrier: &BarrierConfig, k1: f64) -> Result<f64> {
    let waves = wave_numbers(ctx, barrier, k1)?;
    require_propagating(&waves)?;
    let (k2, k3) = (waves.k2.re, waves.k3.re);
    let x = k2 * barrier.width();
    if k2 == 0.0 {
        return Ok(0.0);
    }
    let ratio = (waves.k2_sq + k1 * k3) / (k2 * (k1 + k3));
    Ok(unwrapped_atan_tan(ratio, x))
}

/// Phase of `G`: the transmission phase with `k3 → −k3`.
pub fn phase_0_analytic(ctx: &ScatteringContext, barrier: &BarrierConfig, k1: f64) -> Result<f64> {
    let waves = wave_numbers(ctx, barrier, k1)?;
    require_propagating(&waves)?;
    if barrier.is_symmetric() {
        return Ok(0.0);
    }
    let (k2, k3) = (waves.k2.re, waves.k3.re);
    if k2 == 0.0 {
        return Ok(0.0);
    }
    let x = k2 * barrier.width();
    let ratio = (waves.k2_sq - k1 * k3) / (k2 * (k1 - k3));
    Ok(unwrapped_atan_tan(ratio, x))
}

//! Salecker-Wigner-Peres clock times for one-dimensional scattering through
//! an asymmetric rectangular barrier.
//!
//! The crate is organised bottom-up:
//!
//! - [`scattering`]: wave numbers, amplitudes, phases and coefficients for
//!   the three-region barrier, valid above and below the barrier top.
//! - [`clock`]: stationary transmission, reflection, asymmetry and dwell
//!   times, a finite-difference phase-derivative check, resonance helpers and
//!   the density-of-states relation.
//! - [`quadrature`]: adaptive Gauss-Kronrod integration of vector integrands.
//! - [`ensemble`]: Gaussian wave packets and averages over the post-selected
//!   transmitted and reflected sub-ensembles.
//! - [`sweep`]: barrier-width sweeps written as CSV, driven by the
//!   `swp-clock` binary.
//!
//! All quantities are in the unit system fixed by [`ScatteringContext`];
//! the default is atomic units (ħ = μ = 1).
//!
//! ```
//! use swp_clock::{stationary_times, BarrierConfig, ScatteringContext};
//!
//! let ctx = ScatteringContext::default();
//! let barrier = BarrierConfig::new(0.30, 0.15, 5.0).unwrap();
//! let t = stationary_times(&ctx, &barrier, ctx.wave_number(0.35)).unwrap();
//! assert!((t.tau_d - (t.t_coeff * t.t_ct + t.r_coeff * t.t_cr)).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod clock;
pub mod ensemble;
pub mod error;
mod kernel;
pub mod quadrature;
pub mod scattering;
pub mod sweep;

pub use clock::{
    clock_time_fd_oracle, default_fd_step, density_of_states, reflection_times,
    resonance_reflection_time, resonance_widths, stationary_times, DensityOfStatesResult,
    ReflectionTimes, StationaryTimes,
};
pub use ensemble::{
    channel_density, ensemble_averages, total_probability, ChannelDensity, EnsembleAverages,
    GaussianPacket, QuadratureSpec,
};
pub use error::{Channel, Error, Result};
pub use scattering::{
    phase_0_analytic, phase_t_analytic, scatter, scatter_from_right, wave_numbers, BarrierConfig,
    Regime, ScatteringContext, ScatteringResult, WaveNumbers,
};

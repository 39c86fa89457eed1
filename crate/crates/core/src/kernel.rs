//! Even entire functions of `z = k2² a²` that describe propagation across the
//! barrier region.
//!
//! With `x = k2 a` the region-II transfer matrix in the `(ψ, ψ')` basis is
//!
//! ```text
//!     | cos x          sin(x)/k2 |   | c          a·s |
//!     | -k2 sin x      cos x     | = | -k2²·a·s   c   |
//! ```
//!
//! where `c = cos x` and `s = sin(x)/x` depend on `z` only. Writing everything
//! in terms of `z` removes the `k2 → 0` indeterminacy at the barrier top and
//! lets the evanescent regime (`z < 0`, `cos → cosh`, `sin/x → sinh/y`) share
//! the same code path.
//!
//! For `z < -1` all quantities are stored multiplied by a common scale
//! `sech(y)`, `y = √(-z)`, so that opaque barriers do not overflow. Every
//! consumer uses them in ratios that are homogeneous in that scale.

/// Past this `|z|` the closed forms are used instead of the power series.
const SERIES_LIMIT: f64 = 1.0;

/// Scaled values of the barrier functions at one `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct BarrierKernel {
    /// `σ·cos x`
    pub cos: f64,
    /// `σ·sin(x)/x`
    pub sinc: f64,
    /// `σ² = σ²(cos² x + z·sinc²)`, the determinant of the transfer matrix.
    pub det: f64,
    /// `σ²·(1 − sinc·cos)/z`, the regular remainder that appears in the
    /// clock-time numerators.
    pub lam: f64,
    /// `σ·(cos − sinc)/z = σ·2·d(sinc)/dz`.
    pub dsinc: f64,
    /// `σ` itself; 1 unless `z < -1`.
    pub scale: f64,
}

impl BarrierKernel {
    pub fn new(z: f64) -> Self {
        if z.abs() <= SERIES_LIMIT {
            Self::series(z)
        } else if z > 0.0 {
            let x = z.sqrt();
            let (sin, cos) = x.sin_cos();
            let sinc = sin / x;
            Self {
                cos,
                sinc,
                det: 1.0,
                lam: (1.0 - sinc * cos) / z,
                dsinc: (cos - sinc) / z,
                scale: 1.0,
            }
        } else {
            let y = (-z).sqrt();
            let scale = 1.0 / y.cosh();
            let sinc = y.tanh() / y;
            let det = scale * scale;
            Self {
                cos: 1.0,
                sinc,
                det,
                lam: (det - sinc) / z,
                dsinc: (1.0 - sinc) / z,
                scale,
            }
        }
    }

    // Power series in z. For |z| <= 1 the 18th terms are below 1e-30.
    fn series(z: f64) -> Self {
        let mut cos = 0.0;
        let mut sinc = 0.0;
        let mut lam = 0.0;
        let mut dsinc = 0.0;
        // even = (-z)^n / (2n)!, tail = (-z)^(n-1) / (2n+1)!
        let mut even = 1.0;
        let mut tail = 1.0 / 6.0;
        let mut four_pow = 4.0;
        for n in 0..18u32 {
            let two_n = f64::from(2 * n);
            cos += even;
            sinc += even / (two_n + 1.0);
            even *= -z / ((two_n + 1.0) * (two_n + 2.0));
            if n >= 1 {
                lam += four_pow * tail;
                dsinc -= two_n * tail;
                four_pow *= 4.0;
                tail *= -z / ((two_n + 2.0) * (two_n + 3.0));
            }
        }
        Self {
            cos,
            sinc,
            det: 1.0,
            lam,
            dsinc,
            scale: 1.0,
        }
    }
}

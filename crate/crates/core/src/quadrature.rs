//! Globally adaptive 7/15-point Gauss-Kronrod quadrature for vector-valued
//! integrands.
//!
//! All components are integrated on one shared set of subintervals. The
//! interval with the largest error relative to its component's tolerance is
//! bisected until every component meets its tolerance. Node order and the
//! bisection sequence are fixed, so results are bit-reproducible.

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_18,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_83,
];

// Gauss weights for XGK[1], XGK[3], XGK[5] and the centre.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral<const N: usize> {
    pub value: [f64; N],
    pub error: [f64; N],
    pub intervals: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Segment<const N: usize> {
    lo: f64,
    hi: f64,
    value: [f64; N],
    error: [f64; N],
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut err = err.abs();
    if res_asc != 0.0 && err != 0.0 {
        let scale = (200.0 * err / res_asc).powf(1.5);
        err = if scale < 1.0 {
            res_asc * scale
        } else {
            res_asc
        };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    err
}

fn kronrod<const N: usize, F>(f: &mut F, lo: f64, hi: f64) -> Segment<N>
where
    F: FnMut(f64) -> [f64; N],
{
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);
    let f_center = f(center);

    let mut res_k = [0.0; N];
    let mut res_g = [0.0; N];
    let mut res_abs = [0.0; N];
    for c in 0..N {
        res_k[c] = WGK[7] * f_center[c];
        res_g[c] = WG[3] * f_center[c];
        res_abs[c] = (WGK[7] * f_center[c]).abs();
    }
    let mut samples = [[[0.0; N]; 2]; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let left = f(center - dx);
        let right = f(center + dx);
        for c in 0..N {
            res_k[c] += WGK[j] * (left[c] + right[c]);
            res_abs[c] += WGK[j] * (left[c].abs() + right[c].abs());
            if j % 2 == 1 {
                res_g[c] += WG[j / 2] * (left[c] + right[c]);
            }
        }
        samples[j] = [left, right];
    }

    let mut value = [0.0; N];
    let mut error = [0.0; N];
    for c in 0..N {
        let mean = 0.5 * res_k[c];
        let mut res_asc = WGK[7] * (f_center[c] - mean).abs();
        for j in 0..7 {
            res_asc += WGK[j] * ((samples[j][0][c] - mean).abs() + (samples[j][1][c] - mean).abs());
        }
        let h = half.abs();
        value[c] = res_k[c] * half;
        error[c] = rescale_error((res_k[c] - res_g[c]) * half, res_abs[c] * h, res_asc * h);
    }
    Segment {
        lo,
        hi,
        value,
        error,
    }
}

/// Integrates `f` over `[points[0], points[last]]`, with the interior points
/// used as forced subdivision boundaries (kinks, peaks).
///
/// `tolerance` maps the current integral estimate to the absolute error
/// allowed for each component, which lets a component's tolerance depend on
/// another (for example a numerator relative to its normalisation).
pub fn integrate<const N: usize, F, T>(
    mut f: F,
    points: &[f64],
    tolerance: T,
    max_subdivisions: usize,
) -> Result<Integral<N>>
where
    F: FnMut(f64) -> [f64; N],
    T: Fn(&[f64; N]) -> [f64; N],
{
    let mut edges: Vec<f64> = points.to_vec();
    if edges.len() < 2 || edges.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidQuadrature(
            "need at least two finite interval endpoints".into(),
        ));
    }
    edges.sort_by(f64::total_cmp);
    edges.dedup();
    if edges.len() < 2 {
        return Err(Error::InvalidQuadrature(
            "empty integration interval".into(),
        ));
    }

    let mut segments: Vec<Segment<N>> = edges
        .windows(2)
        .map(|w| kronrod(&mut f, w[0], w[1]))
        .collect();
    let mut evaluations = 15 * segments.len();

    loop {
        let mut value = [0.0; N];
        let mut error = [0.0; N];
        for s in &segments {
            for c in 0..N {
                value[c] += s.value[c];
                error[c] += s.error[c];
            }
        }
        let tol = tolerance(&value);
        if (0..N).all(|c| error[c] <= tol[c]) {
            return Ok(Integral {
                value,
                error,
                intervals: segments.len(),
                evaluations,
            });
        }

        let failure = || {
            let worst = (0..N)
                .map(|c| error[c] / tol[c].max(f64::MIN_POSITIVE))
                .fold(0.0, f64::max);
            Error::QuadratureFailure {
                subdivisions: segments.len(),
                error_estimate: worst,
            }
        };
        if segments.len() >= max_subdivisions {
            return Err(failure());
        }

        let priority = |s: &Segment<N>| {
            (0..N)
                .map(|c| {
                    if s.error[c] == 0.0 {
                        0.0
                    } else {
                        s.error[c] / tol[c].max(f64::MIN_POSITIVE)
                    }
                })
                .fold(0.0, f64::max)
        };
        let (worst, _) = segments
            .iter()
            .enumerate()
            .map(|(i, s)| (i, priority(s)))
            .fold(
                (0, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );

        let Segment { lo, hi, .. } = segments[worst];
        let mid = 0.5 * (lo + hi);
        if !(mid > lo && mid < hi) || (hi - lo) <= 1e3 * f64::EPSILON * lo.abs().max(hi.abs()) {
            return Err(failure());
        }
        segments[worst] = kronrod(&mut f, lo, mid);
        segments.push(kronrod(&mut f, mid, hi));
        evaluations += 30;
    }
}

/// Scalar convenience wrapper with relative and absolute tolerances.
pub fn integrate_scalar<F>(
    mut f: F,
    lo: f64,
    hi: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<Integral<1>>
where
    F: FnMut(f64) -> f64,
{
    integrate(
        |x| [f(x)],
        &[lo, hi],
        |v| [abs_tol.max(rel_tol * v[0].abs())],
        max_subdivisions,
    )
}

//! The Gauss map `G = e1 ^ e2`, its Laplacian by two independent routes, and
//! the detector that decides whether `Delta G = f (G + C)` holds for a
//! nonvanishing function `f` and a constant bivector `C`.

use nalgebra::{DMatrix, DVector, Matrix6, Vector6};
use serde::Serialize;

use crate::algebra::{bivector_inner, wedge, Bivector6, Sign};
use crate::error::{GeomError, Result};
use crate::profile::ProfileCurve;
use crate::surface::{coefficients, frame, frame_from_jet, Coefficients, Frame};

/// Default step for the chart-discretized Laplacian.
pub const DEFAULT_LAPLACIAN_STEP: f64 = 1e-3;

/// Tolerance on the marginally trapped precondition `-(b+c) = eps d`.
pub const TRAPPED_TOL: f64 = 1e-8;

/// Fit tolerances of the pointwise 1-type detector.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetectorTolerances {
    /// Relative residual below which the fit is accepted.
    pub tol_fit: f64,
    /// Infinity-norm bound under which the fitted `C` counts as zero.
    pub tol_c: f64,
    /// Lower bound on `|f|`; the defining function must not vanish.
    pub tol_f: f64,
}

impl Default for DetectorTolerances {
    fn default() -> Self {
        Self {
            tol_fit: 1e-6,
            tol_c: 1e-8,
            tol_f: 1e-10,
        }
    }
}

/// One evaluation of the Gauss map and its Laplacian at a surface point.
#[derive(Debug, Clone, Copy)]
pub struct GaussSample {
    /// Chart point `(t, s)`.
    pub point: (f64, f64),
    /// Gauss map `e1 ^ e2` in ambient Plucker coordinates.
    pub g: Bivector6,
    /// `Delta G` assembled from the closed-form frame expansion.
    pub laplacian_closed: Bivector6,
    /// `Delta G` from centered differences in the chart.
    pub laplacian_numeric: Bivector6,
    /// Frame components of `Delta G`: `Delta G = A (e1^e2) + B (e2^e3) + D (e2^e4)`.
    pub a_fn: f64,
    pub b_fn: f64,
    pub d_fn: f64,
    /// `N = d' - eps a d^2` with the sign minimizing the trapped defect.
    pub n_fn: f64,
}

/// Verdict kind of the detector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum P1TKind {
    First,
    Second,
    None,
}

impl std::fmt::Display for P1TKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            P1TKind::First => "first",
            P1TKind::Second => "second",
            P1TKind::None => "none",
        })
    }
}

/// Result of the pointwise 1-type fit.
#[derive(Debug, Clone, Serialize)]
pub struct P1TReport {
    pub is_p1t: bool,
    pub kind: P1TKind,
    /// Fitted `f` per sample, as `(s, f)` pairs.
    pub f_samples: Vec<(f64, f64)>,
    /// Fitted constant bivector in ambient Plucker coordinates.
    pub c: Bivector6,
    /// Max-norm residual of `Delta G - f (G + C)` over the scale of
    /// `Delta G`; absolute when the Gauss map is harmonic.
    pub residual: f64,
    /// Set when `Delta G` vanishes identically; such maps are reported as
    /// harmonic, not pointwise 1-type, because `f` may not vanish.
    pub harmonic: bool,
}

/// The Gauss map of a frame: `wedge(e1, e2)`, of unit indefinite norm.
pub fn gauss_map(fr: &Frame) -> Bivector6 {
    wedge(fr.e1, fr.e2)
}

/// The three frame-component functions of `Delta G`:
/// `A = d^2 - b^2 - c^2`, `B = b' + c' + a d^2`, `D = d' + a d (b + c)`.
pub fn abd_functions(co: &Coefficients) -> Result<(f64, f64, f64)> {
    let dv = co.derivs.ok_or(GeomError::MissingDerivatives)?;
    let a_fn = co.d * co.d - co.b * co.b - co.c * co.c;
    let b_fn = dv.db + dv.dc + co.a * co.d * co.d;
    let d_fn = dv.dd + co.a * co.d * (co.b + co.c);
    Ok((a_fn, b_fn, d_fn))
}

/// `Delta G` assembled in ambient Plucker coordinates from the closed form
/// `A (e1^e2) + B (e2^e3) + D (e2^e4)`.
pub fn laplacian_gauss_closed(co: &Coefficients, fr: &Frame) -> Result<Bivector6> {
    let (a_fn, b_fn, d_fn) = abd_functions(co)?;
    Ok(wedge(fr.e1, fr.e2).scale(a_fn)
        + wedge(fr.e2, fr.e3).scale(b_fn)
        + wedge(fr.e2, fr.e4).scale(d_fn))
}

/// `Delta G` by centered second differences of the Plucker coordinates of
/// `G` in the `(t, s)` chart:
/// `Delta = -dss - (1/alpha1^2) dtt - (alpha1'/alpha1) ds`.
pub fn laplacian_gauss_numeric(curve: &ProfileCurve, t: f64, s: f64, h: f64) -> Result<Bivector6> {
    if !(h > 0.0) {
        return Err(GeomError::Parameter {
            name: "h",
            reason: format!("step must be positive, got {h}"),
        });
    }
    let (min, max) = curve.domain();
    if s - h < min || s + h > max {
        return Err(GeomError::StencilOutsideDomain { s, h, min, max });
    }
    let j = curve.jet(s)?;
    let alpha1 = j.value.alpha1;
    let g = |t: f64, s: f64| -> Result<Bivector6> { Ok(gauss_map(&frame(curve, t, s)?)) };
    let g00 = gauss_map(&frame_from_jet(&j, t, s));
    let gsp = g(t, s + h)?;
    let gsm = g(t, s - h)?;
    let gtp = g(t + h, s)?;
    let gtm = g(t - h, s)?;

    let h2 = h * h;
    let dss = (gsp - g00.scale(2.0) + gsm).scale(1.0 / h2);
    let dtt = (gtp - g00.scale(2.0) + gtm).scale(1.0 / h2);
    let ds = (gsp - gsm).scale(0.5 / h);
    Ok(-(dss + dtt.scale(1.0 / (alpha1 * alpha1)) + ds.scale(j.d1.alpha1 / alpha1)))
}

/// `N = d' - eps a d^2`, defined on marginally trapped surfaces. Errors when
/// `|(b + c) + eps d|` exceeds [`TRAPPED_TOL`].
pub fn marginally_trapped_n(co: &Coefficients, epsilon: Sign) -> Result<f64> {
    let dv = co.derivs.ok_or(GeomError::MissingDerivatives)?;
    let defect = ((co.b + co.c) + epsilon.value() * co.d).abs();
    if defect > TRAPPED_TOL {
        return Err(GeomError::NotMarginallyTrapped { defect });
    }
    Ok(dv.dd - epsilon.value() * co.a * co.d * co.d)
}

/// Frame components of a bivector: coefficients on
/// `e1^e2, e1^e3, e1^e4, e2^e3, e2^e4, e3^e4`.
pub fn frame_components(p: &Bivector6, fr: &Frame) -> [f64; 6] {
    let pairs = [
        wedge(fr.e1, fr.e2),
        wedge(fr.e1, fr.e3),
        wedge(fr.e1, fr.e4),
        wedge(fr.e2, fr.e3),
        wedge(fr.e2, fr.e4),
        wedge(fr.e3, fr.e4),
    ];
    // <e_i^e_j, e_i^e_j> = eps_i eps_j with the frame signs (+1, +1, -1, +1).
    const PAIR_SIGNS: [f64; 6] = [1.0, -1.0, 1.0, -1.0, 1.0, -1.0];
    let mut out = [0.0; 6];
    for (k, basis) in pairs.iter().enumerate() {
        out[k] = PAIR_SIGNS[k] * bivector_inner(*p, *basis);
    }
    out
}

/// Evaluate one [`GaussSample`] at `(t, s)` with Laplacian step `h`.
pub fn gauss_sample(curve: &ProfileCurve, t: f64, s: f64, h: f64) -> Result<GaussSample> {
    let co = coefficients(curve, s)?;
    let fr = frame(curve, t, s)?;
    let (a_fn, b_fn, d_fn) = abd_functions(&co)?;
    let g = gauss_map(&fr);
    let laplacian_closed = laplacian_gauss_closed(&co, &fr)?;
    let laplacian_numeric = laplacian_gauss_numeric(curve, t, s, h)?;
    // Sign minimizing the trapped defect; N is only meaningful where the
    // defect is small.
    let dv = co.derivs.expect("coefficients() always fills derivatives");
    let eps = if ((co.b + co.c) + co.d).abs() <= ((co.b + co.c) - co.d).abs() {
        1.0
    } else {
        -1.0
    };
    let n_fn = dv.dd - eps * co.a * co.d * co.d;
    Ok(GaussSample {
        point: (t, s),
        g,
        laplacian_closed,
        laplacian_numeric,
        a_fn,
        b_fn,
        d_fn,
        n_fn,
    })
}

/// Evaluate samples on an inclusive `(t, s)` grid, s-major.
pub fn sample_grid(
    curve: &ProfileCurve,
    t_range: (f64, f64),
    s_range: (f64, f64),
    t_count: usize,
    s_count: usize,
    h: f64,
) -> Result<Vec<GaussSample>> {
    let mut out = Vec::with_capacity(t_count * s_count);
    for sj in linspace(s_range.0, s_range.1, s_count) {
        for ti in linspace(t_range.0, t_range.1, t_count) {
            out.push(gauss_sample(curve, ti, sj, h)?);
        }
    }
    Ok(out)
}

/// Inclusive linearly spaced grid; a single point collapses to the midpoint.
pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![0.5 * (lo + hi)],
        _ => (0..count)
            .map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64)
            .collect(),
    }
}

/// Decide whether the sampled Gauss map satisfies `Delta G = f (G + C)`.
///
/// The fit eliminates `f` per sample (for fixed `C` the optimal value is the
/// Euclidean projection `<L, G+C> / <G+C, G+C>`) and minimizes over `C` by
/// damped Gauss-Newton, started from `C = 0` and from a linear seed obtained
/// by eliminating `C` between sample pairs. Least squares uses the
/// positive-definite coordinate metric; the indefinite product is reserved
/// for geometric statements.
pub fn detect_pointwise_one_type(
    samples: &[GaussSample],
    tol_fit: f64,
    tol_c: f64,
    tol_f: f64,
) -> Result<P1TReport> {
    validate_samples(samples)?;

    let scale = samples
        .iter()
        .map(|s| s.laplacian_closed.inf_norm())
        .fold(0.0_f64, f64::max);
    if scale <= tol_fit {
        return Ok(P1TReport {
            is_p1t: false,
            kind: P1TKind::None,
            f_samples: samples.iter().map(|s| (s.point.1, 0.0)).collect(),
            c: Bivector6::zero(),
            residual: scale,
            harmonic: true,
        });
    }

    let mut best: Option<(Vector6<f64>, f64)> = None;
    let mut seeds = vec![Vector6::zeros()];
    if let Some(seed) = linear_seed(samples) {
        seeds.push(seed);
    }
    for seed in seeds {
        let (c, cost) = gauss_newton(samples, seed);
        if best.as_ref().map_or(true, |(_, bc)| cost < *bc) {
            best = Some((c, cost));
        }
    }
    let (c_vec, _) = best.expect("at least one seed");

    let c = Bivector6::from_array([c_vec[0], c_vec[1], c_vec[2], c_vec[3], c_vec[4], c_vec[5]]);
    let mut f_samples = Vec::with_capacity(samples.len());
    let mut max_resid = 0.0_f64;
    let mut min_abs_f = f64::INFINITY;
    for sample in samples {
        let u = sample.g + c;
        let f = optimal_f(sample.laplacian_closed, u);
        let resid = (sample.laplacian_closed - u.scale(f)).inf_norm();
        max_resid = max_resid.max(resid);
        min_abs_f = min_abs_f.min(f.abs());
        f_samples.push((sample.point.1, f));
    }
    let residual = max_resid / scale;
    let is_p1t = residual <= tol_fit && min_abs_f >= tol_f;
    let kind = if !is_p1t {
        P1TKind::None
    } else if c.inf_norm() <= tol_c {
        P1TKind::First
    } else {
        P1TKind::Second
    };
    Ok(P1TReport {
        is_p1t,
        kind,
        f_samples,
        c,
        residual,
        harmonic: false,
    })
}

fn validate_samples(samples: &[GaussSample]) -> Result<()> {
    if samples.len() < 8 {
        return Err(GeomError::DegenerateSamples(format!(
            "need at least 8 samples, got {}",
            samples.len()
        )));
    }
    let distinct = |mut vals: Vec<f64>| -> usize {
        vals.sort_by(f64::total_cmp);
        let mut n = 1;
        for k in 1..vals.len() {
            if vals[k] - vals[k - 1] > 1e-12 {
                n += 1;
            }
        }
        n
    };
    let ns = distinct(samples.iter().map(|s| s.point.1).collect());
    let nt = distinct(samples.iter().map(|s| s.point.0).collect());
    if ns < 4 {
        return Err(GeomError::DegenerateSamples(format!(
            "need at least 4 distinct s values, got {ns}"
        )));
    }
    if nt < 2 {
        return Err(GeomError::DegenerateSamples(format!(
            "need at least 2 distinct t values, got {nt}"
        )));
    }
    Ok(())
}

fn to_vec6(b: Bivector6) -> Vector6<f64> {
    Vector6::from_column_slice(&b.to_array())
}

fn optimal_f(l: Bivector6, u: Bivector6) -> f64 {
    let dd = u.euclidean_norm2();
    if dd <= 1e-300 {
        return 0.0;
    }
    l.euclidean_dot(u) / dd
}

/// Linear seed: `Delta G = f (G + C)` rearranges to `C = g L - G` with
/// `g = 1/f`, so pairs of samples give linear equations
/// `g_k L_k - g_0 L_0 = G_k - G_0` in the per-sample unknowns `g`.
fn linear_seed(samples: &[GaussSample]) -> Option<Vector6<f64>> {
    let stride = samples.len().div_ceil(24);
    let used: Vec<&GaussSample> = samples.iter().step_by(stride).collect();
    let m = used.len();
    if m < 3 {
        return None;
    }
    let mut a = DMatrix::zeros(6 * (m - 1), m);
    let mut rhs = DVector::zeros(6 * (m - 1));
    for k in 1..m {
        let lk = used[k].laplacian_closed.to_array();
        let l0 = used[0].laplacian_closed.to_array();
        let gk = used[k].g.to_array();
        let g0 = used[0].g.to_array();
        for i in 0..6 {
            let row = 6 * (k - 1) + i;
            a[(row, k)] = lk[i];
            a[(row, 0)] = -l0[i];
            rhs[row] = gk[i] - g0[i];
        }
    }
    let svd = a.svd(true, true);
    let g = svd.solve(&rhs, 1e-12).ok()?;
    let mut c_sum = Vector6::zeros();
    for (k, sample) in used.iter().enumerate() {
        if !g[k].is_finite() {
            return None;
        }
        c_sum += to_vec6(sample.laplacian_closed) * g[k] - to_vec6(sample.g);
    }
    let c = c_sum / m as f64;
    c.iter().all(|x| x.is_finite()).then_some(c)
}

fn cost_at(samples: &[GaussSample], c: &Vector6<f64>) -> f64 {
    let cb = Bivector6::from_array([c[0], c[1], c[2], c[3], c[4], c[5]]);
    samples
        .iter()
        .map(|s| {
            let u = s.g + cb;
            let f = optimal_f(s.laplacian_closed, u);
            (s.laplacian_closed - u.scale(f)).euclidean_norm2()
        })
        .sum()
}

const GN_MAX_ITERS: usize = 100;
const GN_GRAD_TOL: f64 = 1e-12;

/// Damped Gauss-Newton on the reduced 6-dimensional problem in `C`.
fn gauss_newton(samples: &[GaussSample], mut c: Vector6<f64>) -> (Vector6<f64>, f64) {
    let mut cost = cost_at(samples, &c);
    let mut lambda = 1e-8;
    for _ in 0..GN_MAX_ITERS {
        let cb = Bivector6::from_array([c[0], c[1], c[2], c[3], c[4], c[5]]);
        let mut jtj = Matrix6::zeros();
        let mut jtr = Vector6::zeros();
        for sample in samples {
            let u = sample.g + cb;
            let uv = to_vec6(u);
            let lv = to_vec6(sample.laplacian_closed);
            let dd = u.euclidean_norm2().max(1e-300);
            let f = sample.laplacian_closed.euclidean_dot(u) / dd;
            // Residual r = f u - L with df/dC = (L - 2 f u)/dd.
            let r = uv * f - lv;
            let grad_f = (lv - uv * (2.0 * f)) / dd;
            let jac = Matrix6::identity() * f + uv * grad_f.transpose();
            jtj += jac.transpose() * jac;
            jtr += jac.transpose() * r;
        }
        if jtr.amax() <= GN_GRAD_TOL {
            break;
        }
        let mut stepped = false;
        for _ in 0..30 {
            let damped = jtj + Matrix6::identity() * lambda;
            let Some(chol) = damped.cholesky() else {
                lambda = (lambda * 10.0).max(1e-12);
                continue;
            };
            let delta = chol.solve(&(-jtr));
            let trial = c + delta;
            let trial_cost = cost_at(samples, &trial);
            if trial_cost < cost {
                c = trial;
                cost = trial_cost;
                lambda = (lambda / 10.0).max(1e-14);
                stepped = true;
                break;
            }
            lambda *= 10.0;
            if lambda > 1e12 {
                break;
            }
        }
        if !stepped {
            break;
        }
    }
    (c, cost)
}

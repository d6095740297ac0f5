//! Adaptive composite Simpson quadrature.
//!
//! The integrand may fail (singular curve data), so evaluation is fallible
//! all the way down. Vector-valued integrands share function evaluations,
//! which matters when two antiderivatives consume one quadrature-backed
//! angle function.

use crate::error::{GeomError, Result};

const MAX_DEPTH: usize = 48;

/// Simpson estimate over `[a, b]` from endpoint and midpoint values.
fn simpson<const N: usize>(fa: &[f64; N], fm: &[f64; N], fb: &[f64; N], h: f64) -> [f64; N] {
    let mut out = [0.0; N];
    for i in 0..N {
        out[i] = (fa[i] + 4.0 * fm[i] + fb[i]) * h / 6.0;
    }
    out
}

fn max_abs_diff<const N: usize>(x: &[f64; N], y: &[f64; N]) -> f64 {
    let mut m = 0.0_f64;
    for i in 0..N {
        let d = (x[i] - y[i]).abs();
        // f64::max ignores NaN, which would silently accept a divergent
        // estimate; treat any non-finite difference as infinite error.
        if d.is_nan() {
            return f64::INFINITY;
        }
        m = m.max(d);
    }
    m
}

struct Adaptive<'a, F: ?Sized> {
    f: &'a F,
    /// Running scale of the integral, used for the rounding floor below
    /// which further bisection cannot improve the estimate.
    scale: f64,
}

impl<'a, F: ?Sized, const N: usize> Adaptive<'a, F>
where
    F: Fn(f64) -> Result<[f64; N]>,
{
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: [f64; N],
        fm: [f64; N],
        fb: [f64; N],
        whole: [f64; N],
        tol: f64,
        depth: usize,
    ) -> Result<[f64; N]> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm)?;
        let frm = (self.f)(rm)?;
        let left = simpson(&fa, &flm, &fm, m - a);
        let right = simpson(&fm, &frm, &fb, b - m);
        let mut halves = [0.0; N];
        for i in 0..N {
            halves[i] = left[i] + right[i];
            self.scale = self.scale.max(halves[i].abs());
        }
        let err = max_abs_diff(&halves, &whole);
        let floor = 32.0 * f64::EPSILON * self.scale.max(1e-300);
        if err <= 15.0 * tol.max(floor) {
            let mut out = [0.0; N];
            for i in 0..N {
                out[i] = halves[i] + (halves[i] - whole[i]) / 15.0;
            }
            return Ok(out);
        }
        if depth == 0 {
            return Err(GeomError::Integration {
                lo: a,
                hi: b,
                achieved: err / 15.0,
                requested: tol,
            });
        }
        let l = self.refine(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
        let r = self.refine(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
        let mut out = [0.0; N];
        for i in 0..N {
            out[i] = l[i] + r[i];
        }
        Ok(out)
    }
}

/// Integrate a vector-valued function over `[a, b]` (either orientation) to
/// absolute tolerance `tol` per component.
pub fn adaptive_simpson_array<F: ?Sized, const N: usize>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<[f64; N]>
where
    F: Fn(f64) -> Result<[f64; N]>,
{
    if a == b {
        return Ok([0.0; N]);
    }
    if b < a {
        let mut out = adaptive_simpson_array(f, b, a, tol)?;
        for x in out.iter_mut() {
            *x = -*x;
        }
        return Ok(out);
    }
    let m = 0.5 * (a + b);
    let fa = f(a)?;
    let fm = f(m)?;
    let fb = f(b)?;
    let whole = simpson(&fa, &fm, &fb, b - a);
    let mut state = Adaptive { f, scale: 0.0 };
    state.refine(a, b, fa, fm, fb, whole, tol.max(0.0), MAX_DEPTH)
}

/// Scalar convenience wrapper over [`adaptive_simpson_array`].
pub fn adaptive_simpson<F>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let wrapped = |s: f64| -> Result<[f64; 1]> { Ok([f(s)?]) };
    Ok(adaptive_simpson_array(&wrapped, a, b, tol)?[0])
}

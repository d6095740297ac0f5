//! Generating curves `s -> (alpha1, 0, alpha3, alpha4)` of boost-invariant
//! surfaces, with derivatives exact to machine precision.
//!
//! A curve is either a closed-form jet evaluator or an integrated
//! representation whose `alpha3`, `alpha4` come from adaptive quadrature of
//! the exact integrands `W cos(theta)`, `W sin(theta)` with
//! `W = sqrt(1 + alpha1'^2)`. Derivatives are never obtained by
//! differentiating quadrature output: first derivatives are the integrands
//! themselves and second derivatives follow from the jets of `alpha1` and
//! `theta`.

use std::sync::Arc;

use crate::algebra::Sign;
use crate::error::{GeomError, Result};
use crate::jet::{C2Fn, Jet};
use crate::quad::adaptive_simpson_array;

/// Default margin trimmed off domain endpoints where `alpha1 -> 0`.
pub const DEFAULT_DELTA_DOM: f64 = 1e-3;

/// Default absolute quadrature tolerance per unit of parameter length.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

/// Evaluators remain valid this far beyond the declared domain, so that
/// centered finite-difference stencils can be applied at the endpoints.
pub(crate) const DOMAIN_PAD: f64 = 5e-4;

/// Target checkpoint spacing of antiderivative tables.
const SEG_TARGET: f64 = 0.05;

/// Internal tightening of the per-unit quadrature budget. The declared
/// tolerance is a guarantee; evaluations aim three orders below it so that
/// finite-difference oracles applied on top stay truncation-limited.
const SEG_SAFETY: f64 = 1e-3;

/// Triple of curve components `(alpha1, alpha3, alpha4)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Triple {
    pub alpha1: f64,
    pub alpha3: f64,
    pub alpha4: f64,
}

impl Triple {
    pub const fn new(alpha1: f64, alpha3: f64, alpha4: f64) -> Self {
        Self {
            alpha1,
            alpha3,
            alpha4,
        }
    }
}

/// Position, first and second derivative of the profile curve at one
/// parameter value.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet2 {
    pub value: Triple,
    pub d1: Triple,
    pub d2: Triple,
}

impl Jet2 {
    /// Assemble from per-component scalar jets.
    pub fn from_jets(a1: Jet, a3: Jet, a4: Jet) -> Self {
        Self {
            value: Triple::new(a1.v, a3.v, a4.v),
            d1: Triple::new(a1.d1, a3.d1, a4.d1),
            d2: Triple::new(a1.d2, a3.d2, a4.d2),
        }
    }
}

/// Checkpointed antiderivative of a fallible integrand.
///
/// Construction integrates checkpoint-to-checkpoint once; evaluation
/// integrates only from the checkpoint below `s`, so nearby evaluations share
/// their accumulated error and stay mutually consistent to rounding. That
/// consistency is what lets second differences of quadrature-backed curves
/// converge at the expected rate.
pub(crate) struct Antiderivative<const N: usize> {
    integrand: Arc<dyn Fn(f64) -> Result<[f64; N]> + Send + Sync>,
    lo: f64,
    seg: f64,
    values: Vec<[f64; N]>,
    call_tol: f64,
}

impl<const N: usize> Antiderivative<N> {
    pub fn new(
        integrand: Arc<dyn Fn(f64) -> Result<[f64; N]> + Send + Sync>,
        range: (f64, f64),
        s0: f64,
        v0: [f64; N],
        tol_per_unit: f64,
    ) -> Result<Self> {
        let (lo, hi) = range;
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(GeomError::Parameter {
                name: "range",
                reason: format!("invalid integration range [{lo}, {hi}]"),
            });
        }
        let nseg = (((hi - lo) / SEG_TARGET).ceil() as usize).clamp(16, 1 << 20);
        let seg = (hi - lo) / nseg as f64;
        let call_tol = (tol_per_unit * seg * SEG_SAFETY).max(1e-300);

        let node = |k: usize| lo + k as f64 * seg;
        let k0 = (((s0 - lo) / seg).round() as i64).clamp(0, nseg as i64) as usize;

        let mut values = vec![[0.0; N]; nseg + 1];
        let anchor = adaptive_simpson_array(integrand.as_ref(), s0, node(k0), call_tol)?;
        for i in 0..N {
            values[k0][i] = v0[i] + anchor[i];
        }
        for k in k0..nseg {
            let inc = adaptive_simpson_array(integrand.as_ref(), node(k), node(k + 1), call_tol)?;
            for i in 0..N {
                values[k + 1][i] = values[k][i] + inc[i];
            }
        }
        for k in (0..k0).rev() {
            let inc = adaptive_simpson_array(integrand.as_ref(), node(k), node(k + 1), call_tol)?;
            for i in 0..N {
                values[k][i] = values[k + 1][i] - inc[i];
            }
        }
        Ok(Self {
            integrand,
            lo,
            seg,
            values,
            call_tol,
        })
    }

    pub fn eval(&self, s: f64) -> Result<[f64; N]> {
        let nseg = self.values.len() - 1;
        let k = (((s - self.lo) / self.seg).floor() as i64).clamp(0, nseg as i64) as usize;
        let base = self.lo + k as f64 * self.seg;
        let tail = adaptive_simpson_array(self.integrand.as_ref(), base, s, self.call_tol)?;
        let mut out = [0.0; N];
        for i in 0..N {
            out[i] = self.values[k][i] + tail[i];
        }
        Ok(out)
    }
}

/// How an angle function was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleProvenance {
    ClosedForm,
    Quadrature,
}

enum AngleRepr {
    Closed(Arc<dyn Fn(f64) -> (f64, f64) + Send + Sync>),
    Quadrature {
        derivative: Arc<dyn Fn(f64) -> Result<f64> + Send + Sync>,
        antiderivative: Antiderivative<1>,
    },
}

/// Angle `theta(s)` with its derivative; the derivative of the curve tangent
/// direction in the `(x3, x4)` plane.
pub struct AngleFunction {
    repr: AngleRepr,
    provenance: AngleProvenance,
}

impl AngleFunction {
    /// Wrap a closed form returning `(theta, theta')`.
    pub fn from_closed(f: impl Fn(f64) -> (f64, f64) + Send + Sync + 'static) -> Self {
        Self {
            repr: AngleRepr::Closed(Arc::new(f)),
            provenance: AngleProvenance::ClosedForm,
        }
    }

    pub fn provenance(&self) -> AngleProvenance {
        self.provenance
    }

    /// Returns `(theta(s), theta'(s))`.
    pub fn eval(&self, s: f64) -> Result<(f64, f64)> {
        match &self.repr {
            AngleRepr::Closed(f) => Ok(f(s)),
            AngleRepr::Quadrature {
                derivative,
                antiderivative,
            } => {
                let dp = derivative(s)?;
                let th = antiderivative.eval(s)?[0];
                Ok((th, dp))
            }
        }
    }
}

impl std::fmt::Debug for AngleFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AngleFunction({:?})", self.provenance)
    }
}

/// Build the angle whose surface has null mean curvature:
/// `theta'(s) = -eps * (1 + alpha1'^2 + alpha1 * alpha1'') / (alpha1 * (1 + alpha1'^2))`,
/// normalized by `theta(s0) = theta0`.
pub fn theta_from_alpha1(
    alpha1: &C2Fn,
    epsilon: Sign,
    domain: (f64, f64),
    s0: f64,
    theta0: f64,
) -> Result<AngleFunction> {
    theta_from_alpha1_with_tol(alpha1, epsilon, domain, s0, theta0, DEFAULT_QUAD_TOL)
}

pub fn theta_from_alpha1_with_tol(
    alpha1: &C2Fn,
    epsilon: Sign,
    domain: (f64, f64),
    s0: f64,
    theta0: f64,
    quad_tol: f64,
) -> Result<AngleFunction> {
    let padded = (domain.0 - DOMAIN_PAD, domain.1 + DOMAIN_PAD);
    check_range_order("domain", domain)?;
    if !(domain.0 <= s0 && s0 <= domain.1) {
        return Err(GeomError::OutOfDomain {
            s: s0,
            min: domain.0,
            max: domain.1,
        });
    }
    scan_positive(alpha1, padded)?;

    let eps = epsilon.value();
    let a1 = alpha1.clone();
    let derivative = Arc::new(move |s: f64| -> Result<f64> {
        let j = a1.eval(s);
        if j.v <= 0.0 {
            return Err(GeomError::Singularity { s, value: j.v });
        }
        let w2 = 1.0 + j.d1 * j.d1;
        Ok(-eps * (w2 + j.v * j.d2) / (j.v * w2))
    });
    let d = derivative.clone();
    let integrand = Arc::new(move |s: f64| -> Result<[f64; 1]> { Ok([d(s)?]) });
    let antiderivative = Antiderivative::new(integrand, padded, s0, [theta0], quad_tol)?;
    Ok(AngleFunction {
        repr: AngleRepr::Quadrature {
            derivative,
            antiderivative,
        },
        provenance: AngleProvenance::Quadrature,
    })
}

fn check_range_order(name: &'static str, range: (f64, f64)) -> Result<()> {
    if !(range.0 < range.1) || !range.0.is_finite() || !range.1.is_finite() {
        return Err(GeomError::Parameter {
            name,
            reason: format!(
                "range [{}, {}] is not an ordered finite interval",
                range.0, range.1
            ),
        });
    }
    Ok(())
}

fn scan_positive(alpha1: &C2Fn, range: (f64, f64)) -> Result<()> {
    const SCAN_POINTS: usize = 2048;
    for k in 0..=SCAN_POINTS {
        let s = range.0 + (range.1 - range.0) * k as f64 / SCAN_POINTS as f64;
        let v = alpha1.eval(s).v;
        if !(v > 0.0) {
            return Err(GeomError::Singularity { s, value: v });
        }
    }
    Ok(())
}

enum CurveRepr {
    Closed(Arc<dyn Fn(f64) -> Jet2 + Send + Sync>),
    Integrated {
        alpha1: C2Fn,
        theta: Arc<AngleFunction>,
        alpha34: Antiderivative<2>,
    },
}

/// Profile curve with a declared parameter domain and a descriptive label.
pub struct ProfileCurve {
    repr: CurveRepr,
    domain: (f64, f64),
    label: String,
}

impl std::fmt::Debug for ProfileCurve {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ProfileCurve({:?}, domain [{}, {}])",
            self.label, self.domain.0, self.domain.1
        )
    }
}

impl ProfileCurve {
    /// Wrap a closed-form jet evaluator. The evaluator must remain valid
    /// slightly beyond the domain (see [`DOMAIN_PAD`]); validity of the curve
    /// itself (unit speed, positive radius) is the caller's responsibility.
    pub fn from_closed_form(
        f: impl Fn(f64) -> Jet2 + Send + Sync + 'static,
        domain: (f64, f64),
        label: impl Into<String>,
    ) -> Result<Self> {
        check_range_order("domain", domain)?;
        Ok(Self {
            repr: CurveRepr::Closed(Arc::new(f)),
            domain,
            label: label.into(),
        })
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Position and two derivatives at `s`; errors outside the domain.
    pub fn jet(&self, s: f64) -> Result<Jet2> {
        if s < self.domain.0 || s > self.domain.1 || !s.is_finite() {
            return Err(GeomError::OutOfDomain {
                s,
                min: self.domain.0,
                max: self.domain.1,
            });
        }
        self.jet_inner(s)
    }

    /// Evaluation with the internal margin, for centered stencils anchored at
    /// domain endpoints.
    pub(crate) fn jet_padded(&self, s: f64) -> Result<Jet2> {
        let (lo, hi) = (self.domain.0 - DOMAIN_PAD, self.domain.1 + DOMAIN_PAD);
        if s < lo || s > hi || !s.is_finite() {
            return Err(GeomError::OutOfDomain {
                s,
                min: lo,
                max: hi,
            });
        }
        self.jet_inner(s)
    }

    fn jet_inner(&self, s: f64) -> Result<Jet2> {
        match &self.repr {
            CurveRepr::Closed(f) => Ok(f(s)),
            CurveRepr::Integrated {
                alpha1,
                theta,
                alpha34,
            } => {
                let j1 = alpha1.eval(s);
                let (th, thp) = theta.eval(s)?;
                let [a3, a4] = alpha34.eval(s)?;
                let w = (1.0 + j1.d1 * j1.d1).sqrt();
                let wp = j1.d1 * j1.d2 / w;
                let (sin_th, cos_th) = th.sin_cos();
                Ok(Jet2 {
                    value: Triple::new(j1.v, a3, a4),
                    d1: Triple::new(j1.d1, w * cos_th, w * sin_th),
                    d2: Triple::new(
                        j1.d2,
                        wp * cos_th - w * sin_th * thp,
                        wp * sin_th + w * cos_th * thp,
                    ),
                })
            }
        }
    }
}

/// Unit-speed defect `-alpha1'^2 + alpha3'^2 + alpha4'^2 - 1` at `s`.
pub fn unit_speed_defect(curve: &ProfileCurve, s: f64) -> Result<f64> {
    let j = curve.jet(s)?;
    Ok(-j.d1.alpha1 * j.d1.alpha1 + j.d1.alpha3 * j.d1.alpha3 + j.d1.alpha4 * j.d1.alpha4 - 1.0)
}

/// Build the curve whose `alpha3`, `alpha4` are the antiderivatives of
/// `W cos(theta)`, `W sin(theta)` from `s0` with initial values `p0`.
pub fn integrate_profile(
    alpha1: C2Fn,
    theta: AngleFunction,
    domain: (f64, f64),
    s0: f64,
    p0: (f64, f64),
    label: impl Into<String>,
) -> Result<ProfileCurve> {
    integrate_profile_with_tol(alpha1, theta, domain, s0, p0, label, DEFAULT_QUAD_TOL)
}

pub fn integrate_profile_with_tol(
    alpha1: C2Fn,
    theta: AngleFunction,
    domain: (f64, f64),
    s0: f64,
    p0: (f64, f64),
    label: impl Into<String>,
    quad_tol: f64,
) -> Result<ProfileCurve> {
    check_range_order("domain", domain)?;
    if !(domain.0 <= s0 && s0 <= domain.1) {
        return Err(GeomError::OutOfDomain {
            s: s0,
            min: domain.0,
            max: domain.1,
        });
    }
    let theta = Arc::new(theta);
    let a1 = alpha1.clone();
    let th = theta.clone();
    let integrand = Arc::new(move |s: f64| -> Result<[f64; 2]> {
        let j = a1.eval(s);
        let (t, _) = th.eval(s)?;
        let w = (1.0 + j.d1 * j.d1).sqrt();
        let (sin_t, cos_t) = t.sin_cos();
        Ok([w * cos_t, w * sin_t])
    });
    let padded = (domain.0 - DOMAIN_PAD, domain.1 + DOMAIN_PAD);
    let alpha34 = Antiderivative::new(integrand, padded, s0, [p0.0, p0.1], quad_tol)?;
    Ok(ProfileCurve {
        repr: CurveRepr::Integrated {
            alpha1,
            theta,
            alpha34,
        },
        domain,
        label: label.into(),
    })
}

/// Reconstruct a curve from sampled points by natural cubic splines, one per
/// component. Samples are trusted data: only ordering and radius positivity
/// are validated.
pub fn spline_curve_from_samples(
    s: &[f64],
    alpha1: &[f64],
    alpha3: &[f64],
    alpha4: &[f64],
    label: impl Into<String>,
) -> Result<ProfileCurve> {
    let n = s.len();
    if n < 4 {
        return Err(GeomError::Table(format!(
            "need at least 4 samples, got {n}"
        )));
    }
    if alpha1.len() != n || alpha3.len() != n || alpha4.len() != n {
        return Err(GeomError::Table("column lengths differ".to_string()));
    }
    for k in 1..n {
        if !(s[k] > s[k - 1]) {
            return Err(GeomError::Table(format!(
                "s must be strictly increasing (s[{}] = {}, s[{}] = {})",
                k - 1,
                s[k - 1],
                k,
                s[k]
            )));
        }
    }
    if let Some(k) = alpha1.iter().position(|&v| !(v > 0.0)) {
        return Err(GeomError::Table(format!(
            "alpha1 must be positive (alpha1 = {} at s = {})",
            alpha1[k], s[k]
        )));
    }
    let sp1 = Spline::natural(s, alpha1);
    let sp3 = Spline::natural(s, alpha3);
    let sp4 = Spline::natural(s, alpha4);
    let domain = (s[0], s[n - 1]);
    ProfileCurve::from_closed_form(
        move |x| Jet2::from_jets(sp1.jet(x), sp3.jet(x), sp4.jet(x)),
        domain,
        label,
    )
}

/// Natural cubic spline in moment form.
struct Spline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl Spline {
    fn natural(x: &[f64], y: &[f64]) -> Self {
        let n = x.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // Thomas solve of the interior moment system; end moments zero.
            let dim = n - 2;
            let mut diag = vec![0.0; dim];
            let mut upper = vec![0.0; dim];
            let mut rhs = vec![0.0; dim];
            for i in 0..dim {
                let h0 = x[i + 1] - x[i];
                let h1 = x[i + 2] - x[i + 1];
                diag[i] = 2.0 * (h0 + h1);
                upper[i] = h1;
                rhs[i] = 6.0 * ((y[i + 2] - y[i + 1]) / h1 - (y[i + 1] - y[i]) / h0);
            }
            for i in 1..dim {
                let lower = x[i + 1] - x[i];
                let w = lower / diag[i - 1];
                diag[i] -= w * upper[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            m[dim] = rhs[dim - 1] / diag[dim - 1];
            for i in (1..dim).rev() {
                m[i] = (rhs[i - 1] - upper[i - 1] * m[i + 1]) / diag[i - 1];
            }
        }
        Self {
            x: x.to_vec(),
            y: y.to_vec(),
            m,
        }
    }

    fn jet(&self, s: f64) -> Jet {
        let n = self.x.len();
        let i = match self.x.binary_search_by(|v| v.partial_cmp(&s).unwrap()) {
            Ok(k) => k.min(n - 2),
            Err(k) => k.saturating_sub(1).min(n - 2),
        };
        let h = self.x[i + 1] - self.x[i];
        let u = self.x[i + 1] - s;
        let w = s - self.x[i];
        let (m0, m1) = (self.m[i], self.m[i + 1]);
        let (y0, y1) = (self.y[i], self.y[i + 1]);
        let v = m0 * u * u * u / (6.0 * h)
            + m1 * w * w * w / (6.0 * h)
            + (y0 / h - m0 * h / 6.0) * u
            + (y1 / h - m1 * h / 6.0) * w;
        let d1 = -m0 * u * u / (2.0 * h) + m1 * w * w / (2.0 * h) - (y0 / h - m0 * h / 6.0)
            + (y1 / h - m1 * h / 6.0);
        let d2 = (m0 * u + m1 * w) / h;
        Jet::new(v, d1, d2)
    }
}

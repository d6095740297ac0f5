//! Constructive generators for the classified surface families, and a
//! verifier that checks each family's stated properties on generated
//! instances.

use serde::{Deserialize, Serialize};

use crate::algebra::Sign;
use crate::error::{GeomError, Result};
use crate::gauss::{
    detect_pointwise_one_type, frame_components, marginally_trapped_n, sample_grid,
    DetectorTolerances, P1TKind, DEFAULT_LAPLACIAN_STEP,
};
use crate::jet::{C2Fn, Jet};
use crate::profile::{
    integrate_profile_with_tol, theta_from_alpha1_with_tol, unit_speed_defect, Jet2, ProfileCurve,
    DEFAULT_DELTA_DOM, DEFAULT_QUAD_TOL,
};
use crate::surface::{coefficients, curvature_report, frame, second_fundamental_form, FRAME_SIGNS};

/// Parameter span offered to families with no intrinsic domain bound.
pub const DEFAULT_SPAN: (f64, f64) = (-4.0, 4.0);

/// Smallest usable domain length after trimming.
const MIN_DOMAIN_LEN: f64 = 0.02;

/// Radius functions `alpha1(s)` available to the trapped-surface generator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Alpha1Spec {
    Constant {
        value: f64,
    },
    Linear {
        slope: f64,
        intercept: f64,
    },
    /// `alpha1 = sqrt(c2 s^2 + c1 s + c0)` on the region where the quadratic
    /// is positive.
    SqrtQuadratic {
        c2: f64,
        c1: f64,
        c0: f64,
    },
    /// `alpha1 = offset + amplitude * sin(frequency * s)`.
    Sinusoid {
        offset: f64,
        amplitude: f64,
        frequency: f64,
    },
}

impl Alpha1Spec {
    pub fn build(&self) -> C2Fn {
        match *self {
            Alpha1Spec::Constant { value } => C2Fn::new(move |_| Jet::constant(value)),
            Alpha1Spec::Linear { slope, intercept } => {
                C2Fn::new(move |s| Jet::variable(s) * slope + intercept)
            }
            Alpha1Spec::SqrtQuadratic { c2, c1, c0 } => C2Fn::new(move |s| {
                let x = Jet::variable(s);
                (x.powi(2) * c2 + x * c1 + c0).sqrt()
            }),
            Alpha1Spec::Sinusoid {
                offset,
                amplitude,
                frequency,
            } => C2Fn::new(move |s| (Jet::variable(s) * frequency).sin() * amplitude + offset),
        }
    }

    fn describe(&self) -> String {
        match *self {
            Alpha1Spec::Constant { value } => format!("const {value}"),
            Alpha1Spec::Linear { slope, intercept } => format!("{slope} s + {intercept}"),
            Alpha1Spec::SqrtQuadratic { c2, c1, c0 } => {
                format!("sqrt({c2} s^2 + {c1} s + {c0})")
            }
            Alpha1Spec::Sinusoid {
                offset,
                amplitude,
                frequency,
            } => {
                format!("{offset} + {amplitude} sin({frequency} s)")
            }
        }
    }
}

/// Specification of one classified family instance; the JSON surface of the
/// command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum FamilySpec {
    Theorem1Constant {
        a1: f64,
        a2: f64,
        a3: f64,
    },
    Theorem1Linear {
        b1: f64,
        b2: f64,
        b3: f64,
    },
    Theorem3Trapped {
        alpha1: Alpha1Spec,
        epsilon: Sign,
    },
    Theorem4P1t {
        lambda1: f64,
        q1: f64,
        q0: f64,
        epsilon: Sign,
    },
    Extremal {
        a1: f64,
        a2: f64,
        zeta0: f64,
    },
}

impl FamilySpec {
    pub fn tag(&self) -> &'static str {
        match self {
            FamilySpec::Theorem1Constant { .. } => "theorem1_constant",
            FamilySpec::Theorem1Linear { .. } => "theorem1_linear",
            FamilySpec::Theorem3Trapped { .. } => "theorem3_trapped",
            FamilySpec::Theorem4P1t { .. } => "theorem4_p1t",
            FamilySpec::Extremal { .. } => "extremal",
        }
    }

    /// The sign parameter of trapped families, when the family carries one.
    pub fn epsilon(&self) -> Option<Sign> {
        match self {
            FamilySpec::Theorem3Trapped { epsilon, .. }
            | FamilySpec::Theorem4P1t { epsilon, .. } => Some(*epsilon),
            _ => None,
        }
    }
}

/// Build options shared by all generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BuildOptions {
    /// Span offered to families with no intrinsic bound, and intersected
    /// with the validity region otherwise.
    pub span: (f64, f64),
    /// Margin trimmed off endpoints where the radius degenerates.
    pub delta_dom: f64,
    /// Quadrature tolerance per unit parameter length.
    pub quad_tol: f64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self {
            span: DEFAULT_SPAN,
            delta_dom: DEFAULT_DELTA_DOM,
            quad_tol: DEFAULT_QUAD_TOL,
        }
    }
}

impl BuildOptions {
    fn validate(&self) -> Result<()> {
        if !(self.span.0 < self.span.1) {
            return Err(GeomError::Parameter {
                name: "span",
                reason: format!("empty span [{}, {}]", self.span.0, self.span.1),
            });
        }
        if !(self.delta_dom >= 1e-3 && self.delta_dom <= 1.0) {
            return Err(GeomError::Parameter {
                name: "delta_dom",
                reason: format!("must lie in [1e-3, 1], got {}", self.delta_dom),
            });
        }
        if !(self.quad_tol > 0.0) {
            return Err(GeomError::Parameter {
                name: "quad_tol",
                reason: format!("must be positive, got {}", self.quad_tol),
            });
        }
        Ok(())
    }
}

/// Flat family with constant radius: `alpha1 = a1`,
/// `alpha3 = sin(a2 s + a3)/a2`, `alpha4 = -cos(a2 s + a3)/a2`.
pub fn make_theorem1_constant(a1: f64, a2: f64, a3: f64) -> Result<ProfileCurve> {
    build_theorem1_constant(a1, a2, a3, &BuildOptions::default())
}

fn build_theorem1_constant(a1: f64, a2: f64, a3: f64, opts: &BuildOptions) -> Result<ProfileCurve> {
    opts.validate()?;
    require(a1 > 0.0, "a1", format!("radius must be positive, got {a1}"))?;
    require(
        a2 != 0.0 && a2.is_finite(),
        "a2",
        format!("must be nonzero, got {a2}"),
    )?;
    let label = format!("theorem1_constant(a1={a1}, a2={a2}, a3={a3})");
    ProfileCurve::from_closed_form(
        move |s| {
            let th = Jet::variable(s) * a2 + a3;
            Jet2::from_jets(
                Jet::constant(a1),
                th.sin() * (1.0 / a2),
                -(th.cos() * (1.0 / a2)),
            )
        },
        opts.span,
        label,
    )
}

/// Flat family with linear radius: `alpha1 = b1 s + b2` and angle
/// `theta = b ln(b1 s + b2)`, `b = b3 / (b1 sqrt(1 + b1^2))`; `alpha3`,
/// `alpha4` by quadrature of `sqrt(1 + b1^2) cos/sin(theta)`.
pub fn make_theorem1_linear(b1: f64, b2: f64, b3: f64) -> Result<ProfileCurve> {
    build_theorem1_linear(b1, b2, b3, &BuildOptions::default())
}

fn build_theorem1_linear(b1: f64, b2: f64, b3: f64, opts: &BuildOptions) -> Result<ProfileCurve> {
    opts.validate()?;
    require(
        b1 != 0.0 && b1.is_finite(),
        "b1",
        format!("must be nonzero, got {b1}"),
    )?;
    let alpha1 = Alpha1Spec::Linear {
        slope: b1,
        intercept: b2,
    }
    .build();
    let domain = positive_run(&alpha1, opts.span, opts.delta_dom)?;
    let b = b3 / (b1 * (1.0 + b1 * b1).sqrt());
    let theta = crate::profile::AngleFunction::from_closed(move |s| {
        let u = b1 * s + b2;
        (b * u.ln(), b * b1 / u)
    });
    let s0 = anchor(domain);
    integrate_profile_with_tol(
        alpha1,
        theta,
        domain,
        s0,
        (0.0, 0.0),
        format!("theorem1_linear(b1={b1}, b2={b2}, b3={b3})"),
        opts.quad_tol,
    )
}

/// Marginally trapped construction: given `alpha1`, the angle from
/// `theta_from_alpha1` makes the mean curvature null everywhere.
pub fn make_theorem3_trapped(alpha1: &Alpha1Spec, epsilon: Sign) -> Result<ProfileCurve> {
    build_theorem3_trapped(alpha1, epsilon, &BuildOptions::default(), None)
}

fn build_theorem3_trapped(
    spec: &Alpha1Spec,
    epsilon: Sign,
    opts: &BuildOptions,
    label: Option<String>,
) -> Result<ProfileCurve> {
    opts.validate()?;
    let alpha1 = spec.build();
    let domain = positive_run(&alpha1, opts.span, opts.delta_dom)?;
    let s0 = anchor(domain);
    let theta = theta_from_alpha1_with_tol(&alpha1, epsilon, domain, s0, 0.0, opts.quad_tol)?;
    let label = label.unwrap_or_else(|| {
        format!(
            "theorem3_trapped(alpha1 = {}, eps = {})",
            spec.describe(),
            epsilon
        )
    });
    integrate_profile_with_tol(alpha1, theta, domain, s0, (0.0, 0.0), label, opts.quad_tol)
}

/// Marginally trapped family with pointwise 1-type Gauss map:
/// `alpha1^2 = (lambda1 - 1) s^2 + q1 s + q0` with `lambda1 > 1`, then the
/// null-mean-curvature angle construction.
pub fn make_theorem4_p1t(lambda1: f64, q1: f64, q0: f64, epsilon: Sign) -> Result<ProfileCurve> {
    build_theorem4_p1t(lambda1, q1, q0, epsilon, &BuildOptions::default())
}

fn build_theorem4_p1t(
    lambda1: f64,
    q1: f64,
    q0: f64,
    epsilon: Sign,
    opts: &BuildOptions,
) -> Result<ProfileCurve> {
    require(
        lambda1 > 1.0,
        "lambda1",
        format!("must exceed 1 so that alpha1^2 grows quadratically, got {lambda1}"),
    )?;
    let spec = Alpha1Spec::SqrtQuadratic {
        c2: lambda1 - 1.0,
        c1: q1,
        c0: q0,
    };
    let label = format!("theorem4_p1t(lambda1={lambda1}, q1={q1}, q0={q0}, eps={epsilon})");
    build_theorem3_trapped(&spec, epsilon, opts, Some(label))
}

/// Extremal family: `alpha1 = sqrt(a1 - (s + a2)^2)` with the arctangent
/// profile; vanishing mean curvature everywhere.
pub fn make_extremal(a1: f64, a2: f64, zeta0: f64) -> Result<ProfileCurve> {
    build_extremal(a1, a2, zeta0, &BuildOptions::default())
}

fn build_extremal(a1: f64, a2: f64, zeta0: f64, opts: &BuildOptions) -> Result<ProfileCurve> {
    opts.validate()?;
    require(a1 > 0.0, "a1", format!("must be positive, got {a1}"))?;
    let r = a1.sqrt();
    require(
        2.0 * (r - opts.delta_dom) > MIN_DOMAIN_LEN,
        "a1",
        format!(
            "domain collapses after trimming delta_dom = {}",
            opts.delta_dom
        ),
    )?;
    let natural = (-a2 - r + opts.delta_dom, -a2 + r - opts.delta_dom);
    let domain = (natural.0.max(opts.span.0), natural.1.min(opts.span.1));
    require(
        domain.1 - domain.0 > MIN_DOMAIN_LEN,
        "span",
        format!(
            "span does not meet the family domain [{}, {}]",
            natural.0, natural.1
        ),
    )?;
    let (cz, sz) = (zeta0.cos(), zeta0.sin());
    let label = format!("extremal(a1={a1}, a2={a2}, zeta0={zeta0})");
    ProfileCurve::from_closed_form(
        move |s| {
            let w = Jet::variable(s) + a2;
            let f = (-w.powi(2) + a1).sqrt();
            let g = (w / f).atan() * r;
            Jet2::from_jets(f, g * cz, g * sz)
        },
        domain,
        label,
    )
}

/// Build any family with the given options.
pub fn build_family(spec: &FamilySpec, opts: &BuildOptions) -> Result<ProfileCurve> {
    match spec {
        FamilySpec::Theorem1Constant { a1, a2, a3 } => build_theorem1_constant(*a1, *a2, *a3, opts),
        FamilySpec::Theorem1Linear { b1, b2, b3 } => build_theorem1_linear(*b1, *b2, *b3, opts),
        FamilySpec::Theorem3Trapped { alpha1, epsilon } => {
            build_theorem3_trapped(alpha1, *epsilon, opts, None)
        }
        FamilySpec::Theorem4P1t {
            lambda1,
            q1,
            q0,
            epsilon,
        } => build_theorem4_p1t(*lambda1, *q1, *q0, *epsilon, opts),
        FamilySpec::Extremal { a1, a2, zeta0 } => build_extremal(*a1, *a2, *zeta0, opts),
    }
}

fn require(cond: bool, name: &'static str, reason: String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(GeomError::Parameter { name, reason })
    }
}

fn anchor(domain: (f64, f64)) -> f64 {
    if domain.0 < 0.0 && domain.1 > 0.0 {
        0.0
    } else {
        0.5 * (domain.0 + domain.1)
    }
}

/// Largest positive run of `alpha1` inside `span`, trimmed by `delta_dom`
/// at any boundary where the radius crosses zero. Prefers the run containing
/// `s = 0`.
fn positive_run(alpha1: &C2Fn, span: (f64, f64), delta_dom: f64) -> Result<(f64, f64)> {
    const SCAN: usize = 4096;
    let value = |s: f64| alpha1.eval(s).v;
    let at = |k: usize| span.0 + (span.1 - span.0) * k as f64 / SCAN as f64;
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut start: Option<usize> = None;
    for k in 0..=SCAN {
        if value(at(k)) > 0.0 {
            start.get_or_insert(k);
        } else if let Some(s) = start.take() {
            runs.push((s, k - 1));
        }
    }
    if let Some(s) = start {
        runs.push((s, SCAN));
    }
    let chosen = runs
        .iter()
        .find(|&&(i, j)| at(i) <= 0.0 && 0.0 <= at(j))
        .or_else(|| runs.iter().max_by_key(|&&(i, j)| j - i))
        .copied()
        .ok_or_else(|| GeomError::Singularity {
            s: span.0,
            value: value(span.0),
        })?;

    let bisect = |mut neg: f64, mut pos: f64| {
        for _ in 0..100 {
            let mid = 0.5 * (neg + pos);
            if value(mid) > 0.0 {
                pos = mid;
            } else {
                neg = mid;
            }
        }
        pos
    };
    let lo = if chosen.0 == 0 {
        span.0
    } else {
        bisect(at(chosen.0 - 1), at(chosen.0)) + delta_dom
    };
    let hi = if chosen.1 == SCAN {
        span.1
    } else {
        bisect(at(chosen.1 + 1), at(chosen.1)) - delta_dom
    };
    if !(hi - lo > MIN_DOMAIN_LEN) {
        return Err(GeomError::Parameter {
            name: "span",
            reason: format!("positive radius region [{lo}, {hi}] too small after trimming"),
        });
    }
    Ok((lo, hi))
}

/// Sampling grid for verification and the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub t_min: f64,
    pub t_max: f64,
    pub t_count: usize,
    pub s_min: f64,
    pub s_max: f64,
    pub s_count: usize,
}

impl GridSpec {
    pub fn t_range(&self) -> (f64, f64) {
        (self.t_min, self.t_max)
    }

    pub fn s_range(&self) -> (f64, f64) {
        (self.s_min, self.s_max)
    }

    pub fn validate(&self) -> Result<()> {
        if self.t_count < 2 || self.s_count < 2 {
            return Err(GeomError::Parameter {
                name: "grid",
                reason: format!(
                    "counts must be at least 2 per axis, got t_count = {}, s_count = {}",
                    self.t_count, self.s_count
                ),
            });
        }
        if !(self.t_min <= self.t_max) || !(self.s_min <= self.s_max) {
            return Err(GeomError::Parameter {
                name: "grid",
                reason: "ranges must be ordered".to_string(),
            });
        }
        Ok(())
    }
}

/// One named comparison inside a [`VerificationReport`].
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub tolerance: f64,
    pub pass: bool,
}

/// Outcome of running a family's full check list on a curve.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub family: String,
    pub checks: Vec<Check>,
    pub overall_pass: bool,
}

impl VerificationReport {
    fn push_bound(&mut self, name: &str, observed: f64, tolerance: f64) {
        self.checks.push(Check {
            name: name.to_string(),
            expected: "0".to_string(),
            observed: format!("{observed:.3e}"),
            tolerance,
            pass: observed.abs() <= tolerance,
        });
    }

    fn push_flag(&mut self, name: &str, expected: impl ToString, observed: impl ToString) {
        let expected = expected.to_string();
        let observed = observed.to_string();
        let pass = expected == observed;
        self.checks.push(Check {
            name: name.to_string(),
            expected,
            observed,
            tolerance: 0.0,
            pass,
        });
    }

    fn push_fail(&mut self, name: &str, expected: impl ToString, observed: impl ToString) {
        self.checks.push(Check {
            name: name.to_string(),
            expected: expected.to_string(),
            observed: observed.to_string(),
            tolerance: 0.0,
            pass: false,
        });
    }

    fn finish(mut self) -> Self {
        self.overall_pass = self.checks.iter().all(|c| c.pass);
        self
    }
}

/// Run the family's full check list (unit speed, frame orthonormality, flat
/// normal bundle, curvature identities, detector verdicts) on `curve`.
/// Failures become report entries, never errors.
pub fn verify_family(
    curve: &ProfileCurve,
    spec: &FamilySpec,
    grid: &GridSpec,
) -> VerificationReport {
    let mut report = VerificationReport {
        family: spec.tag().to_string(),
        checks: Vec::new(),
        overall_pass: false,
    };

    // Clamp the requested s-range so Laplacian stencils stay inside.
    let (dlo, dhi) = curve.domain();
    let margin = 2.0 * DEFAULT_LAPLACIAN_STEP;
    let s_lo = grid.s_min.max(dlo + margin);
    let s_hi = grid.s_max.min(dhi - margin);
    if !(s_lo < s_hi) {
        report.push_fail(
            "grid_inside_domain",
            format!("[{dlo}, {dhi}]"),
            format!("[{}, {}]", grid.s_min, grid.s_max),
        );
        return report.finish();
    }
    let s_grid = crate::gauss::linspace(s_lo, s_hi, grid.s_count.max(2));
    let t_grid = crate::gauss::linspace(grid.t_min, grid.t_max, grid.t_count.max(2));

    // Common checks over the s-grid.
    let mut max_defect = 0.0_f64;
    let mut max_rd = 0.0_f64;
    let mut max_k = 0.0_f64;
    let mut max_h2 = 0.0_f64;
    let mut max_h_comp = 0.0_f64;
    let mut max_n = 0.0_f64;
    let mut n_failure: Option<String> = None;
    for &s in &s_grid {
        match unit_speed_defect(curve, s) {
            Ok(d) => max_defect = max_defect.max(d.abs()),
            Err(e) => {
                report.push_fail("unit_speed_defect", "evaluation", e.to_string());
                return report.finish();
            }
        }
        let co = match coefficients(curve, s) {
            Ok(co) => co,
            Err(e) => {
                report.push_fail("coefficients", "evaluation", e.to_string());
                return report.finish();
            }
        };
        let rep = curvature_report(&co, &second_fundamental_form(&co));
        max_rd = max_rd.max(rep.rd.abs());
        max_k = max_k.max(rep.k.abs());
        max_h2 = max_h2.max(rep.h_norm2.abs());
        max_h_comp = max_h_comp
            .max(rep.h_components.0.abs())
            .max(rep.h_components.1.abs());
        if let Some(eps) = spec.epsilon() {
            match marginally_trapped_n(&co, eps) {
                Ok(n) => max_n = max_n.max(n.abs()),
                Err(e) => {
                    n_failure.get_or_insert(e.to_string());
                }
            }
        }
    }
    report.push_bound("unit_speed_defect", max_defect, 1e-9);
    report.push_bound("normal_curvature_rd", max_rd, 1e-12);

    // Frame orthonormality on a coarse (t, s) subgrid.
    let mut gram_defect = 0.0_f64;
    for t in t_grid.iter().step_by((t_grid.len() / 4).max(1)) {
        for s in s_grid.iter().step_by((s_grid.len() / 6).max(1)) {
            if let Ok(fr) = frame(curve, *t, *s) {
                let g = fr.gram();
                for i in 0..4 {
                    for j in 0..4 {
                        let want = if i == j { FRAME_SIGNS[i] } else { 0.0 };
                        gram_defect = gram_defect.max((g[i][j] - want).abs());
                    }
                }
            }
        }
    }
    report.push_bound("frame_orthonormality", gram_defect, 1e-10);

    let detector = || -> Result<crate::gauss::P1TReport> {
        let samples = sample_grid(
            curve,
            (grid.t_min, grid.t_max),
            (s_lo, s_hi),
            grid.t_count,
            grid.s_count,
            DEFAULT_LAPLACIAN_STEP,
        )?;
        let tols = DetectorTolerances::default();
        detect_pointwise_one_type(&samples, tols.tol_fit, tols.tol_c, tols.tol_f)
    };

    match spec {
        FamilySpec::Theorem1Constant { a1, a2, .. } => {
            report.push_bound("gaussian_curvature_zero", max_k, 1e-12);
            let harmonic_locus = ((a1 * a2).abs() - 1.0).abs() <= 1e-12;
            match detector() {
                Ok(p1t) if harmonic_locus => {
                    report.push_flag("harmonic_gauss_map", true, p1t.harmonic);
                    report.push_flag("is_p1t", false, p1t.is_p1t);
                }
                Ok(p1t) => {
                    report.push_flag("is_p1t", true, p1t.is_p1t);
                    report.push_flag("kind", P1TKind::First, p1t.kind);
                    report.push_bound("c_zero", p1t.c.inf_norm(), 1e-8);
                    let f_expected = a2 * a2 - 1.0 / (a1 * a1);
                    let df = p1t
                        .f_samples
                        .iter()
                        .map(|&(_, f)| (f - f_expected).abs())
                        .fold(0.0_f64, f64::max);
                    report.push_bound("f_constant_defect", df, 1e-6);
                }
                Err(e) => report.push_fail("detector_run", "ok", e.to_string()),
            }
        }
        FamilySpec::Theorem1Linear { b1, b2, b3 } => {
            report.push_bound("gaussian_curvature_zero", max_k, 1e-12);
            let w2 = 1.0 + b1 * b1;
            let harmonic_locus = (b3 * b3 - w2).abs() <= 1e-12;
            match detector() {
                Ok(p1t) if harmonic_locus => {
                    report.push_flag("harmonic_gauss_map", true, p1t.harmonic);
                }
                Ok(p1t) => {
                    report.push_flag("is_p1t", true, p1t.is_p1t);
                    report.push_flag("kind", P1TKind::Second, p1t.kind);
                    // f(s) = (b3^2/(1+b1^2) - 1) / (b1 s + b2)^2
                    let fnum = b3 * b3 / w2 - 1.0;
                    let df = p1t
                        .f_samples
                        .iter()
                        .map(|&(s, f)| {
                            let u = b1 * s + b2;
                            (f - fnum / (u * u)).abs()
                        })
                        .fold(0.0_f64, f64::max);
                    report.push_bound("f_formula_defect", df, 1e-6);
                    // C has frame components (b1^2, 0, 0, b1 sqrt(1+b1^2), 0, 0)
                    // at every point; its ambient expansion is constant.
                    let expected = [b1 * b1, 0.0, 0.0, b1 * w2.sqrt(), 0.0, 0.0];
                    let mut comp_defect = 0.0_f64;
                    let mut mean = [0.0_f64; 6];
                    let mut mean2 = [0.0_f64; 6];
                    let mut count = 0.0_f64;
                    for &t in &t_grid {
                        for &s in &s_grid {
                            let Ok(fr) = frame(curve, t, s) else { continue };
                            let comps = frame_components(&p1t.c, &fr);
                            for k in 0..6 {
                                comp_defect = comp_defect.max((comps[k] - expected[k]).abs());
                            }
                            // Ambient reconstruction from the expected frame
                            // components, accumulated for a constancy check.
                            let amb = crate::algebra::wedge(fr.e1, fr.e2).scale(expected[0])
                                + crate::algebra::wedge(fr.e2, fr.e3).scale(expected[3]);
                            for (k, v) in amb.to_array().iter().enumerate() {
                                mean[k] += v;
                                mean2[k] += v * v;
                            }
                            count += 1.0;
                        }
                    }
                    report.push_bound("c_frame_components_defect", comp_defect, 1e-6);
                    let max_std = (0..6)
                        .map(|k| {
                            let m = mean[k] / count;
                            (mean2[k] / count - m * m).max(0.0).sqrt()
                        })
                        .fold(0.0_f64, f64::max);
                    report.push_bound("c_ambient_constancy_std", max_std, 1e-6);
                }
                Err(e) => report.push_fail("detector_run", "ok", e.to_string()),
            }
        }
        FamilySpec::Theorem3Trapped { .. } => {
            report.push_bound("null_h_norm2", max_h2, 1e-8);
            if let Some(msg) = n_failure {
                report.push_fail("trapped_condition", "holds", msg);
            }
        }
        FamilySpec::Theorem4P1t { .. } => {
            report.push_bound("null_h_norm2", max_h2, 1e-8);
            match n_failure {
                Some(msg) => report.push_fail("trapped_condition", "holds", msg),
                None => report.push_bound("n_zero", max_n, 1e-8),
            }
            match detector() {
                Ok(p1t) => {
                    report.push_flag("is_p1t", true, p1t.is_p1t);
                    report.push_flag("kind", P1TKind::First, p1t.kind);
                    report.push_bound("c_zero", p1t.c.inf_norm(), 1e-8);
                    let mut df = 0.0_f64;
                    for &(s, f) in &p1t.f_samples {
                        if let Ok(co) = coefficients(curve, s) {
                            df = df.max((f - 2.0 * co.b * co.c).abs());
                        }
                    }
                    report.push_bound("f_equals_2bc_defect", df, 1e-6);
                }
                Err(e) => report.push_fail("detector_run", "ok", e.to_string()),
            }
        }
        FamilySpec::Extremal { .. } => {
            report.push_bound("h_zero", max_h_comp, 1e-8);
            match detector() {
                Ok(p1t) => {
                    report.push_flag("is_p1t", true, p1t.is_p1t);
                    report.push_flag("kind", P1TKind::First, p1t.kind);
                    // f equals the sign-weighted squared norm of the second
                    // fundamental form, -(b^2 + c^2).
                    let mut df = 0.0_f64;
                    for &(s, f) in &p1t.f_samples {
                        if let Ok(co) = coefficients(curve, s) {
                            df = df.max((f + co.b * co.b + co.c * co.c).abs());
                        }
                    }
                    report.push_bound("f_signed_h_norm_defect", df, 1e-6);
                }
                Err(e) => report.push_fail("detector_run", "ok", e.to_string()),
            }
        }
    }

    report.finish()
}

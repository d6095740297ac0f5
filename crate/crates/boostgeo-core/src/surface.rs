//! Pointwise geometry of the boost-invariant surface
//! `phi(t, s) = (alpha1 cosh t, alpha1 sinh t, alpha3, alpha4)`:
//! adapted frame, fundamental forms, connection coefficients and curvatures.
//!
//! All scalar invariants depend on `s` only; boost invariance is exploited by
//! computing them from the curve jet directly.

use serde::Serialize;

use crate::algebra::{minkowski_inner, CausalClass, Vec4};
use crate::error::{GeomError, Result};
use crate::profile::ProfileCurve;

/// Frame metric signs `(e1, e2, e3, e4)`: `e3` is the timelike normal.
pub const FRAME_SIGNS: [f64; 4] = [1.0, 1.0, -1.0, 1.0];

/// Step for the centered differences that produce coefficient s-derivatives.
pub const COEFF_DERIV_STEP: f64 = 1e-5;

/// Tolerance on `H_norm2` below which the mean curvature is classified null.
pub const CAUSAL_TOL: f64 = 1e-10;

/// Adapted orthonormal frame at `(t, s)`: `e1, e2` tangent, `e3` timelike
/// normal, `e4` spacelike normal.
#[derive(Debug, Clone, Copy)]
pub struct Frame {
    pub e1: Vec4,
    pub e2: Vec4,
    pub e3: Vec4,
    pub e4: Vec4,
    pub t: f64,
    pub s: f64,
}

impl Frame {
    pub fn vectors(&self) -> [Vec4; 4] {
        [self.e1, self.e2, self.e3, self.e4]
    }

    /// Gram matrix `<e_i, e_j>`; orthonormality means `diag(1, 1, -1, 1)`.
    pub fn gram(&self) -> [[f64; 4]; 4] {
        let v = self.vectors();
        let mut g = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                g[i][j] = minkowski_inner(v[i], v[j]);
            }
        }
        g
    }
}

/// The four scalar coefficient functions of the surface, with optional
/// s-derivatives:
/// `a = alpha1'/W`, `b = W/alpha1`, `c = alpha1''/W`,
/// `d = (-alpha3'' alpha4' + alpha4'' alpha3')/W`, `W = sqrt(1 + alpha1'^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub derivs: Option<CoefficientDerivs>,
}

/// First s-derivatives of `(a, b, c, d)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefficientDerivs {
    pub da: f64,
    pub db: f64,
    pub dc: f64,
    pub dd: f64,
}

impl Coefficients {
    /// Values only; derivative-consuming operations will reject this.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self {
            a,
            b,
            c,
            d,
            derivs: None,
        }
    }

    pub fn with_derivs(a: f64, b: f64, c: f64, d: f64, derivs: CoefficientDerivs) -> Self {
        Self {
            a,
            b,
            c,
            d,
            derivs: Some(derivs),
        }
    }
}

/// Second fundamental form coefficients `h_ij^r` in the adapted frame.
/// For boost-invariant surfaces `h12^3 = h12^4 = h22^4 = 0` identically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SecondFundamentalForm {
    pub h11_3: f64,
    pub h12_3: f64,
    pub h22_3: f64,
    pub h11_4: f64,
    pub h12_4: f64,
    pub h22_4: f64,
}

/// Curvature data at a point: Gaussian curvature, the mean curvature
/// components, its squared norm, the single normal-curvature component and
/// the causal class of `H`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureReport {
    /// Gaussian curvature `K = -b c`.
    pub k: f64,
    /// `(h1, h2)` with `H = (1/2)(-h1 e3 + h2 e4)`, `h1 = -(b+c)`, `h2 = d`.
    pub h_components: (f64, f64),
    /// `<H, H> = (1/4)(-h1^2 + h2^2)`.
    pub h_norm2: f64,
    /// Normal curvature component `R^D(e1, e2; e3, e4)`.
    pub rd: f64,
    /// Causal class of the mean curvature vector.
    pub h_class: CausalClass,
}

/// Evaluate the immersion `phi(t, s)`.
pub fn surface_point(curve: &ProfileCurve, t: f64, s: f64) -> Result<Vec4> {
    let j = curve.jet(s)?;
    Ok(Vec4::new(
        j.value.alpha1 * t.cosh(),
        j.value.alpha1 * t.sinh(),
        j.value.alpha3,
        j.value.alpha4,
    ))
}

/// Apply the boost isometry with parameter `t0` (hyperbolic rotation of the
/// `(x1, x2)` plane).
pub fn boost(v: Vec4, t0: f64) -> Vec4 {
    let (sh, ch) = (t0.sinh(), t0.cosh());
    Vec4::new(v.x1 * ch + v.x2 * sh, v.x1 * sh + v.x2 * ch, v.x3, v.x4)
}

/// The adapted frame at `(t, s)`.
pub fn frame(curve: &ProfileCurve, t: f64, s: f64) -> Result<Frame> {
    let j = curve.jet(s)?;
    Ok(frame_from_jet(&j, t, s))
}

pub(crate) fn frame_from_jet(j: &crate::profile::Jet2, t: f64, s: f64) -> Frame {
    let (sh, ch) = (t.sinh(), t.cosh());
    let (a1p, a3p, a4p) = (j.d1.alpha1, j.d1.alpha3, j.d1.alpha4);
    let w2 = 1.0 + a1p * a1p;
    let w = w2.sqrt();
    Frame {
        e1: Vec4::new(a1p * ch, a1p * sh, a3p, a4p),
        e2: Vec4::new(sh, ch, 0.0, 0.0),
        e3: Vec4::new(w * ch, w * sh, a1p * a3p / w, a1p * a4p / w),
        e4: Vec4::new(0.0, 0.0, -a4p / w, a3p / w),
        t,
        s,
    }
}

/// Coefficient functions at `s`, with derivatives by centered differences of
/// the closed forms (step [`COEFF_DERIV_STEP`]).
pub fn coefficients(curve: &ProfileCurve, s: f64) -> Result<Coefficients> {
    let center = coefficient_values(curve, s, false)?;
    let h = COEFF_DERIV_STEP;
    let plus = coefficient_values(curve, s + h, true)?;
    let minus = coefficient_values(curve, s - h, true)?;
    let derivs = CoefficientDerivs {
        da: (plus.a - minus.a) / (2.0 * h),
        db: (plus.b - minus.b) / (2.0 * h),
        dc: (plus.c - minus.c) / (2.0 * h),
        dd: (plus.d - minus.d) / (2.0 * h),
    };
    Ok(Coefficients::with_derivs(
        center.a, center.b, center.c, center.d, derivs,
    ))
}

fn coefficient_values(curve: &ProfileCurve, s: f64, padded: bool) -> Result<Coefficients> {
    let j = if padded {
        curve.jet_padded(s)?
    } else {
        curve.jet(s)?
    };
    if !(j.value.alpha1 > 0.0) {
        return Err(GeomError::Singularity {
            s,
            value: j.value.alpha1,
        });
    }
    let w = (1.0 + j.d1.alpha1 * j.d1.alpha1).sqrt();
    Ok(Coefficients::new(
        j.d1.alpha1 / w,
        w / j.value.alpha1,
        j.d2.alpha1 / w,
        (-j.d2.alpha3 * j.d1.alpha4 + j.d2.alpha4 * j.d1.alpha3) / w,
    ))
}

/// Second fundamental form from the coefficient functions:
/// `h11^3 = -c, h22^3 = -b, h11^4 = d`, all other entries zero.
pub fn second_fundamental_form(co: &Coefficients) -> SecondFundamentalForm {
    SecondFundamentalForm {
        h11_3: -co.c,
        h12_3: 0.0,
        h22_3: -co.b,
        h11_4: co.d,
        h12_4: 0.0,
        h22_4: 0.0,
    }
}

/// Labels of the eight ambient covariant derivatives returned by
/// [`covariant_derivative_table`], in order.
pub const COVARIANT_DERIVATIVE_LABELS: [&str; 8] = [
    "D_e1 e1", "D_e2 e1", "D_e1 e2", "D_e2 e2", "D_e1 e3", "D_e2 e3", "D_e1 e4", "D_e2 e4",
];

/// The eight ambient covariant derivatives of the frame fields along the
/// tangent directions, expanded in ambient coordinates:
///
/// ```text
/// D_e1 e1 = c e3 + d e4        D_e2 e1 = a b e2
/// D_e1 e2 = 0                  D_e2 e2 = -a b e1 + b e3
/// D_e1 e3 = c e1 + a d e4      D_e2 e3 = b e2
/// D_e1 e4 = -d e1 + a d e3     D_e2 e4 = 0
/// ```
pub fn covariant_derivative_table(co: &Coefficients, fr: &Frame) -> [Vec4; 8] {
    let Coefficients { a, b, c, d, .. } = *co;
    [
        c * fr.e3 + d * fr.e4,
        (a * b) * fr.e2,
        Vec4::zero(),
        (-a * b) * fr.e1 + b * fr.e3,
        c * fr.e1 + (a * d) * fr.e4,
        b * fr.e2,
        -d * fr.e1 + (a * d) * fr.e3,
        Vec4::zero(),
    ]
}

/// Connection form coefficients on the dual basis `(w1, w2) = (ds, alpha1 dt)`:
/// `w12 = a b w2`, `w13 = -c w1`, `w14 = d w1`, `w23 = -b w2`, `w24 = 0`,
/// `w34 = a d w1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConnectionForms {
    /// Coefficient of `w12` on `w2`.
    pub omega12_w2: f64,
    /// Coefficient of `w13` on `w1`.
    pub omega13_w1: f64,
    /// Coefficient of `w14` on `w1`.
    pub omega14_w1: f64,
    /// Coefficient of `w23` on `w2`.
    pub omega23_w2: f64,
    /// Identically zero for boost-invariant surfaces.
    pub omega24: f64,
    /// Coefficient of `w34` on `w1`.
    pub omega34_w1: f64,
}

pub fn connection_forms(co: &Coefficients) -> ConnectionForms {
    ConnectionForms {
        omega12_w2: co.a * co.b,
        omega13_w1: -co.c,
        omega14_w1: co.d,
        omega23_w2: -co.b,
        omega24: 0.0,
        omega34_w1: co.a * co.d,
    }
}

/// Curvatures from the coefficients and the second fundamental form.
pub fn curvature_report(co: &Coefficients, sff: &SecondFundamentalForm) -> CurvatureReport {
    let k = -co.b * co.c;
    let h1 = -(co.b + co.c);
    let h2 = co.d;
    let h_norm2 = 0.25 * (-h1 * h1 + h2 * h2);
    // R^D(e1, e2; e3, e4) from the sign-weighted products of h entries.
    let rd = FRAME_SIGNS[0] * (sff.h12_3 * sff.h11_4 - sff.h11_3 * sff.h12_4)
        + FRAME_SIGNS[1] * (sff.h22_3 * sff.h12_4 - sff.h12_3 * sff.h22_4);
    let h_class = if h1.abs() <= CAUSAL_TOL && h2.abs() <= CAUSAL_TOL {
        CausalClass::Zero
    } else {
        CausalClass::of_norm2(h_norm2, CAUSAL_TOL)
    };
    CurvatureReport {
        k,
        h_components: (h1, h2),
        h_norm2,
        rd,
        h_class,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet;
    use crate::profile::{Jet2, ProfileCurve};
    use approx::assert_relative_eq;

    /// alpha1 = a1, alpha3 = sin(a2 s)/a2, alpha4 = -cos(a2 s)/a2.
    fn constant_radius_curve(a1: f64, a2: f64) -> ProfileCurve {
        ProfileCurve::from_closed_form(
            move |s| {
                let th = Jet::variable(s) * a2;
                Jet2::from_jets(
                    Jet::constant(a1),
                    th.sin() * (1.0 / a2),
                    -(th.cos() * (1.0 / a2)),
                )
            },
            (-3.0, 3.0),
            "constant radius",
        )
        .unwrap()
    }

    #[test]
    fn surface_point_at_zero_boost_is_the_profile() {
        let curve = constant_radius_curve(1.0, 2.0);
        let p = surface_point(&curve, 0.0, 0.4).unwrap();
        let j = curve.jet(0.4).unwrap();
        assert_eq!(
            p,
            Vec4::new(j.value.alpha1, 0.0, j.value.alpha3, j.value.alpha4)
        );
    }

    #[test]
    fn surface_point_hyperbolic_functions() {
        let curve = constant_radius_curve(1.0, 2.0);
        let p = surface_point(&curve, 2.0_f64.ln(), 0.0).unwrap();
        assert_relative_eq!(p.x1, 1.25, epsilon = 1e-15);
        assert_relative_eq!(p.x2, 0.75, epsilon = 1e-15);
    }

    #[test]
    fn boost_acts_as_parameter_shift() {
        let curve = constant_radius_curve(1.0, 2.0);
        for &(t, t0, s) in &[(0.3, 0.9, 0.2), (-1.1, 0.4, -0.7), (0.0, -1.3, 1.5)] {
            let moved = boost(surface_point(&curve, t, s).unwrap(), t0);
            let direct = surface_point(&curve, t + t0, s).unwrap();
            assert_relative_eq!((moved - direct).inf_norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn frame_is_orthonormal_with_timelike_e3() {
        let curve = constant_radius_curve(1.0, 2.0);
        let fr = frame(&curve, 0.7, -0.4).unwrap();
        let g = fr.gram();
        let expected = [1.0, 1.0, -1.0, 1.0];
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { expected[i] } else { 0.0 };
                assert_relative_eq!(g[i][j], want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn frame_display_on_constant_family() {
        // theta(0) = 0: e2 = (0,1,0,0) and e4 = (0,0,0,1) at t = 0, s = 0.
        let curve = constant_radius_curve(1.0, 2.0);
        let fr = frame(&curve, 0.0, 0.0).unwrap();
        assert_relative_eq!(
            (fr.e2 - Vec4::new(0.0, 1.0, 0.0, 0.0)).inf_norm(),
            0.0,
            epsilon = 1e-15
        );
        assert_relative_eq!(
            (fr.e4 - Vec4::new(0.0, 0.0, 0.0, 1.0)).inf_norm(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn tangent_identification_with_chart_derivatives() {
        // e1 = phi_s and e2 = phi_t / alpha1.
        let curve = constant_radius_curve(1.0, 2.0);
        let (t, s) = (0.5, 0.3);
        let fr = frame(&curve, t, s).unwrap();
        let h = 1e-6;
        let dps = (surface_point(&curve, t, s + h).unwrap()
            - surface_point(&curve, t, s - h).unwrap())
        .scale(0.5 / h);
        let dpt = (surface_point(&curve, t + h, s).unwrap()
            - surface_point(&curve, t - h, s).unwrap())
        .scale(0.5 / h);
        let alpha1 = curve.jet(s).unwrap().value.alpha1;
        assert_relative_eq!((fr.e1 - dps).inf_norm(), 0.0, epsilon = 1e-9);
        assert_relative_eq!(
            (fr.e2 - dpt.scale(1.0 / alpha1)).inf_norm(),
            0.0,
            epsilon = 1e-9
        );
    }

    #[test]
    fn coefficients_of_constant_family() {
        let curve = constant_radius_curve(1.0, 2.0);
        let co = coefficients(&curve, 0.6).unwrap();
        assert_relative_eq!(co.a, 0.0, epsilon = 1e-12);
        assert_relative_eq!(co.b, 1.0, epsilon = 1e-12);
        assert_relative_eq!(co.c, 0.0, epsilon = 1e-12);
        assert_relative_eq!(co.d, 2.0, epsilon = 1e-12);
        let dv = co.derivs.unwrap();
        for x in [dv.da, dv.db, dv.dc, dv.dd] {
            assert_relative_eq!(x, 0.0, epsilon = 1e-9);
        }
    }

    #[test]
    fn second_fundamental_form_transcription() {
        let co = Coefficients::new(0.0, 1.0, 0.0, 2.0);
        let sff = second_fundamental_form(&co);
        assert_eq!(sff.h22_3, -1.0);
        assert_eq!(sff.h11_4, 2.0);
        assert_eq!(sff.h11_3, 0.0);
        assert_eq!((sff.h12_3, sff.h12_4, sff.h22_4), (0.0, 0.0, 0.0));

        let geodesic = second_fundamental_form(&Coefficients::new(0.3, 0.0, 0.0, 0.0));
        assert_eq!(
            (geodesic.h11_3, geodesic.h22_3, geodesic.h11_4),
            (0.0, 0.0, 0.0)
        );

        let extremal = second_fundamental_form(&Coefficients::new(0.0, 0.5, -0.5, 0.0));
        assert_eq!(extremal.h11_3, 0.5);
        assert_eq!(extremal.h22_3, -0.5);
        assert_eq!(extremal.h11_4, 0.0);
    }

    #[test]
    fn covariant_table_against_numerical_frame_derivatives() {
        let curve = constant_radius_curve(1.0, 2.0);
        let (t, s) = (0.4, 0.2);
        let co = coefficients(&curve, s).unwrap();
        let fr = frame(&curve, t, s).unwrap();
        let table = covariant_derivative_table(&co, &fr);

        let h = 1e-4;
        let frame_vec = |t: f64, s: f64, i: usize| frame(&curve, t, s).unwrap().vectors()[i];
        let alpha1 = curve.jet(s).unwrap().value.alpha1;
        // Table order: [D_e1 e1, D_e2 e1, D_e1 e2, D_e2 e2, D_e1 e3, ...]
        for i in 0..4 {
            // Along e1 = d/ds and along e2 = (1/alpha1) d/dt.
            let along_s = (frame_vec(t, s + h, i) - frame_vec(t, s - h, i)).scale(0.5 / h);
            let along_t =
                (frame_vec(t + h, s, i) - frame_vec(t - h, s, i)).scale(0.5 / (h * alpha1));
            assert_relative_eq!((along_s - table[2 * i]).inf_norm(), 0.0, epsilon = 1e-5);
            assert_relative_eq!((along_t - table[2 * i + 1]).inf_norm(), 0.0, epsilon = 1e-5);
        }
    }

    #[test]
    fn covariant_table_fixed_rows() {
        let curve = constant_radius_curve(1.0, 2.0);
        let co = coefficients(&curve, 0.0).unwrap();
        let fr = frame(&curve, 0.0, 0.0).unwrap();
        let table = covariant_derivative_table(&co, &fr);
        // D_e1 e2 = 0 and D_e2 e4 = 0 always.
        assert_eq!(table[2], Vec4::zero());
        assert_eq!(table[7], Vec4::zero());
        // D_e2 e2 = -a b e1 + b e3 = e3 here (a = 0, b = 1).
        assert_relative_eq!((table[3] - fr.e3).inf_norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn connection_forms_values() {
        let co = Coefficients::new(0.0, 1.0, 0.0, 2.0);
        let cf = connection_forms(&co);
        assert_eq!(cf.omega12_w2, 0.0);
        assert_eq!(cf.omega34_w1, 0.0);
        assert_eq!(cf.omega24, 0.0);

        // Linear family values at s = 0: a = 1/sqrt(2), b = sqrt(2).
        let co = Coefficients::new(1.0 / 2.0_f64.sqrt(), 2.0_f64.sqrt(), 0.0, 2.0);
        let cf = connection_forms(&co);
        assert_relative_eq!(cf.omega12_w2, 1.0, epsilon = 1e-15);
        assert_relative_eq!(cf.omega23_w2, -2.0_f64.sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn curvature_of_constant_family_is_flat_spacelike() {
        let co = Coefficients::new(0.0, 1.0, 0.0, 2.0);
        let rep = curvature_report(&co, &second_fundamental_form(&co));
        assert_eq!(rep.k, 0.0);
        assert_relative_eq!(rep.h_norm2, 0.75, epsilon = 1e-15);
        assert_eq!(rep.h_class, CausalClass::Spacelike);
        assert_eq!(rep.rd, 0.0);
    }

    #[test]
    fn curvature_of_marginally_trapped_point() {
        // b = 1, c = 1, d = -2: null mean curvature.
        let co = Coefficients::new(0.0, 1.0, 1.0, -2.0);
        let rep = curvature_report(&co, &second_fundamental_form(&co));
        assert_relative_eq!(rep.h_norm2, 0.0, epsilon = 1e-15);
        assert_eq!(rep.h_class, CausalClass::Null);
    }

    #[test]
    fn curvature_of_extremal_point() {
        let co = Coefficients::new(0.0, 0.5, -0.5, 0.0);
        let rep = curvature_report(&co, &second_fundamental_form(&co));
        assert_relative_eq!(rep.k, 0.25, epsilon = 1e-15);
        assert_eq!(rep.h_components, (0.0, 0.0));
        assert_eq!(rep.h_class, CausalClass::Zero);
    }
}

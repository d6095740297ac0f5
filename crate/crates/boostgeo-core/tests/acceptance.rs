//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Criteria 1..9 live here; criterion 10 (byte-identical command-line
//! output) lives in the CLI crate's acceptance test.

use boostgeo_core::{
    build_family, coefficients, curvature_report, detect_pointwise_one_type, frame,
    frame_components, gauss_map, laplacian_gauss_closed, laplacian_gauss_numeric,
    marginally_trapped_n, minkowski_inner, sample_grid, second_fundamental_form, wedge, Alpha1Spec,
    AngleFunction, BuildOptions, C2Fn, FamilySpec, Jet, ProfileCurve, Sign,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LAP_H: f64 = 1e-3;

fn criterion(n: u32, name: &str, pass: bool, detail: String) {
    println!(
        "ACCEPTANCE {n:02} {name}: {}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} ({name}) failed: {detail}");
}

/// The five families fuzzed by the frame/coefficient/Laplacian criteria,
/// with the s-ranges on which they are sampled.
fn fuzz_families() -> Vec<(ProfileCurve, (f64, f64))> {
    let opts = BuildOptions::default();
    let specs: Vec<(FamilySpec, (f64, f64))> = vec![
        (
            FamilySpec::Theorem1Constant {
                a1: 1.0,
                a2: 2.0,
                a3: 0.0,
            },
            (-2.0, 2.0),
        ),
        (
            FamilySpec::Theorem1Linear {
                b1: 1.0,
                b2: 1.0,
                b3: 2.0,
            },
            (-0.9, 2.0),
        ),
        (
            FamilySpec::Theorem3Trapped {
                alpha1: Alpha1Spec::Sinusoid {
                    offset: 1.0,
                    amplitude: 0.3,
                    frequency: 1.0,
                },
                epsilon: Sign::Plus,
            },
            (-2.0, 2.0),
        ),
        (
            FamilySpec::Theorem4P1t {
                lambda1: 2.0,
                q1: 0.0,
                q0: 1.0,
                epsilon: Sign::Plus,
            },
            (-2.0, 2.0),
        ),
        (
            FamilySpec::Extremal {
                a1: 4.0,
                a2: 0.0,
                zeta0: 0.7,
            },
            (-1.8, 1.8),
        ),
    ];
    specs
        .into_iter()
        .map(|(spec, range)| (build_family(&spec, &opts).unwrap(), range))
        .collect()
}

fn random_points(rng: &mut ChaCha8Rng, range: (f64, f64), n: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|_| (rng.gen_range(-1.5..1.5), rng.gen_range(range.0..range.1)))
        .collect()
}

#[test]
fn acceptance_01_frame_orthonormality() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0_f64;
    let mut where_ = String::new();
    for (curve, range) in fuzz_families() {
        for (t, s) in random_points(&mut rng, range, 50) {
            let fr = frame(&curve, t, s).unwrap();
            let g = fr.gram();
            let expected = [1.0, 1.0, -1.0, 1.0];
            for i in 0..4 {
                for j in 0..4 {
                    let want = if i == j { expected[i] } else { 0.0 };
                    let defect = (g[i][j] - want).abs();
                    if defect > worst {
                        worst = defect;
                        where_ = format!("{} at (t={t}, s={s})", curve.label());
                    }
                }
            }
        }
    }
    criterion(
        1,
        "frame orthonormality",
        worst <= 1e-10,
        format!("worst {worst:.3e} ({where_})"),
    );
}

/// Coefficients extracted through the connection equations from numerical
/// frame derivatives, independent of the closed forms.
fn fd_coefficients(curve: &ProfileCurve, t: f64, s: f64) -> (f64, f64, f64, f64) {
    let h = 1e-5;
    let fr = frame(curve, t, s).unwrap();
    let vecs = |tt: f64, ss: f64| frame(curve, tt, ss).unwrap().vectors();
    let alpha1 = curve.jet(s).unwrap().value.alpha1;
    let along_e1 = |i: usize| (vecs(t, s + h)[i] - vecs(t, s - h)[i]).scale(0.5 / h);
    let along_e2 = |i: usize| (vecs(t + h, s)[i] - vecs(t - h, s)[i]).scale(0.5 / (h * alpha1));
    let c = -minkowski_inner(along_e1(0), fr.e3);
    let d = minkowski_inner(along_e1(0), fr.e4);
    let b = -minkowski_inner(along_e2(1), fr.e3);
    let ab = minkowski_inner(along_e2(0), fr.e2);
    (ab / b, b, c, d)
}

#[test]
fn acceptance_02_coefficient_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0_f64;
    let mut where_ = String::new();
    for (curve, range) in fuzz_families() {
        for (t, s) in random_points(&mut rng, range, 50) {
            let co = coefficients(&curve, s).unwrap();
            let (fa, fb, fc, fd) = fd_coefficients(&curve, t, s);
            for (closed, numeric, name) in [
                (co.a, fa, "a"),
                (co.b, fb, "b"),
                (co.c, fc, "c"),
                (co.d, fd, "d"),
            ] {
                let rel = (closed - numeric).abs() / closed.abs().max(1.0);
                if rel > worst {
                    worst = rel;
                    where_ = format!("{name} on {} at (t={t}, s={s})", curve.label());
                }
            }
        }
    }
    criterion(
        2,
        "coefficient oracle equivalence",
        worst <= 1e-5,
        format!("worst relative {worst:.3e} ({where_})"),
    );
}

#[test]
fn acceptance_03_laplacian_cross_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0_f64;
    let mut where_ = String::new();
    for (curve, range) in fuzz_families() {
        for (t, s) in random_points(&mut rng, range, 10) {
            let co = coefficients(&curve, s).unwrap();
            let fr = frame(&curve, t, s).unwrap();
            let closed = laplacian_gauss_closed(&co, &fr).unwrap();
            let numeric = laplacian_gauss_numeric(&curve, t, s, LAP_H).unwrap();
            let rel = (numeric - closed).inf_norm() / closed.inf_norm().max(1e-12);
            if rel > worst {
                worst = rel;
                where_ = format!("{} at (t={t}, s={s})", curve.label());
            }
        }
    }
    let rel_pass = worst <= 1e-4;

    // Second-order convergence observed on closed-form instances.
    let mut ratios = Vec::new();
    for (spec, t, s) in [
        (
            FamilySpec::Theorem1Constant {
                a1: 1.0,
                a2: 2.0,
                a3: 0.0,
            },
            0.3,
            0.2,
        ),
        (
            FamilySpec::Extremal {
                a1: 4.0,
                a2: 0.0,
                zeta0: 0.0,
            },
            0.5,
            0.3,
        ),
    ] {
        let curve = build_family(&spec, &BuildOptions::default()).unwrap();
        let co = coefficients(&curve, s).unwrap();
        let fr = frame(&curve, t, s).unwrap();
        let closed = laplacian_gauss_closed(&co, &fr).unwrap();
        let err = |h: f64| (laplacian_gauss_numeric(&curve, t, s, h).unwrap() - closed).inf_norm();
        ratios.push(err(1e-3) / err(5e-4));
    }
    let ratio_pass = ratios.iter().all(|r| (3.5..=4.5).contains(r));
    criterion(
        3,
        "Laplacian cross-check",
        rel_pass && ratio_pass,
        format!("worst relative {worst:.3e} ({where_}); halving ratios {ratios:?}"),
    );
}

#[test]
fn acceptance_04_theorem1_forward() {
    let opts = BuildOptions::default();

    // Constant-radius branch.
    let constant = build_family(
        &FamilySpec::Theorem1Constant {
            a1: 1.0,
            a2: 2.0,
            a3: 0.0,
        },
        &opts,
    )
    .unwrap();
    let mut max_k = 0.0_f64;
    for k in 0..=100 {
        let s = -1.0 + 2.0 * k as f64 / 100.0;
        let co = coefficients(&constant, s).unwrap();
        max_k = max_k.max(curvature_report(&co, &second_fundamental_form(&co)).k.abs());
    }
    let samples = sample_grid(&constant, (-1.0, 1.0), (-1.0, 1.0), 9, 9, LAP_H).unwrap();
    let rep = detect_pointwise_one_type(&samples, 1e-6, 1e-8, 1e-10).unwrap();
    let f_ok = rep.f_samples.iter().all(|&(_, f)| (f - 3.0).abs() <= 1e-6);
    let constant_ok = max_k <= 1e-12
        && rep.is_p1t
        && rep.kind == boostgeo_core::P1TKind::First
        && f_ok
        && rep.c.inf_norm() <= 1e-8;
    let constant_detail = format!(
        "max|K| {max_k:.3e}, kind {:?}, residual {:.3e}, |C| {:.3e}",
        rep.kind,
        rep.residual,
        rep.c.inf_norm()
    );

    // Linear-radius branch.
    let linear = build_family(
        &FamilySpec::Theorem1Linear {
            b1: 1.0,
            b2: 1.0,
            b3: 2.0,
        },
        &opts,
    )
    .unwrap();
    let samples = sample_grid(&linear, (-1.0, 1.0), (-0.5, 0.5), 9, 9, LAP_H).unwrap();
    let rep = detect_pointwise_one_type(&samples, 1e-6, 1e-8, 1e-10).unwrap();
    let f_at_zero_ok = rep
        .f_samples
        .iter()
        .filter(|(s, _)| s.abs() < 1e-12)
        .all(|&(_, f)| (f - 1.0).abs() <= 1e-6);
    // Frame components of the fitted C are (1, 0, 0, sqrt(2), 0, 0) at every
    // grid point, and the ambient expansion of those components is constant.
    let expected = [1.0, 0.0, 0.0, 2.0_f64.sqrt(), 0.0, 0.0];
    let mut comp_defect = 0.0_f64;
    let mut mean = [0.0_f64; 6];
    let mut mean2 = [0.0_f64; 6];
    let mut count = 0.0;
    for sample in &samples {
        let fr = frame(&linear, sample.point.0, sample.point.1).unwrap();
        let comps = frame_components(&rep.c, &fr);
        for k in 0..6 {
            comp_defect = comp_defect.max((comps[k] - expected[k]).abs());
        }
        let ambient =
            wedge(fr.e1, fr.e2).scale(expected[0]) + wedge(fr.e2, fr.e3).scale(expected[3]);
        for (k, v) in ambient.to_array().iter().enumerate() {
            mean[k] += v;
            mean2[k] += v * v;
        }
        count += 1.0;
    }
    let max_std = (0..6)
        .map(|k| {
            let m = mean[k] / count;
            (mean2[k] / count - m * m).max(0.0).sqrt()
        })
        .fold(0.0_f64, f64::max);
    let linear_ok = rep.is_p1t
        && rep.kind == boostgeo_core::P1TKind::Second
        && f_at_zero_ok
        && comp_defect <= 1e-6
        && max_std <= 1e-6;
    let linear_detail = format!(
        "kind {:?}, residual {:.3e}, frame-component defect {comp_defect:.3e}, ambient std {max_std:.3e}",
        rep.kind, rep.residual
    );

    criterion(
        4,
        "flat classification forward",
        constant_ok && linear_ok,
        format!("constant: {constant_detail}; linear: {linear_detail}"),
    );
}

#[test]
fn acceptance_05_theorem1_necessity_negative() {
    // Flat surface outside both branches: linear radius with theta = s^2.
    let alpha1 = C2Fn::new(|s| Jet::variable(s) + 1.0);
    let theta = AngleFunction::from_closed(|s| (s * s, 2.0 * s));
    let curve = boostgeo_core::profile::integrate_profile(
        alpha1,
        theta,
        (-0.9, 2.0),
        0.0,
        (0.0, 0.0),
        "flat non-family control",
    )
    .unwrap();
    let mut max_k = 0.0_f64;
    for k in 0..=50 {
        let s = -0.5 + k as f64 / 50.0;
        let co = coefficients(&curve, s).unwrap();
        max_k = max_k.max(curvature_report(&co, &second_fundamental_form(&co)).k.abs());
    }
    let samples = sample_grid(&curve, (-1.0, 1.0), (-0.5, 0.5), 9, 9, LAP_H).unwrap();
    let rep = detect_pointwise_one_type(&samples, 1e-6, 1e-8, 1e-10).unwrap();
    criterion(
        5,
        "flat classification necessity (negative control)",
        max_k <= 1e-12 && !rep.is_p1t && rep.residual > 1e-2,
        format!(
            "max|K| {max_k:.3e}, is_p1t {}, residual {:.3e}",
            rep.is_p1t, rep.residual
        ),
    );
}

#[test]
fn acceptance_06_null_mean_curvature_construction() {
    let radii = [
        Alpha1Spec::Constant { value: 2.0 },
        Alpha1Spec::SqrtQuadratic {
            c2: 1.0,
            c1: 0.0,
            c0: 1.0,
        },
        Alpha1Spec::Sinusoid {
            offset: 1.0,
            amplitude: 0.3,
            frequency: 1.0,
        },
    ];
    let mut worst = 0.0_f64;
    let mut where_ = String::new();
    for spec in radii {
        let curve = boostgeo_core::make_theorem3_trapped(&spec, Sign::Plus).unwrap();
        let (lo, hi) = curve.domain();
        let (lo, hi) = (lo.max(-3.0), hi.min(3.0));
        for k in 0..=100 {
            let s = lo + (hi - lo) * k as f64 / 100.0;
            let co = coefficients(&curve, s).unwrap();
            let h2 = curvature_report(&co, &second_fundamental_form(&co)).h_norm2;
            if h2.abs() > worst {
                worst = h2.abs();
                where_ = format!("{} at s={s}", curve.label());
            }
        }
    }
    criterion(
        6,
        "null mean curvature construction",
        worst <= 1e-8,
        format!("worst |<H,H>| {worst:.3e} ({where_})"),
    );
}

#[test]
fn acceptance_07_trapped_p1t_family() {
    let curve = boostgeo_core::make_theorem4_p1t(2.0, 0.0, 1.0, Sign::Plus).unwrap();
    let mut max_n = 0.0_f64;
    for k in 0..=100 {
        let s = -2.0 + 4.0 * k as f64 / 100.0;
        let co = coefficients(&curve, s).unwrap();
        max_n = max_n.max(marginally_trapped_n(&co, Sign::Plus).unwrap().abs());
    }
    let samples = sample_grid(&curve, (-1.0, 1.0), (-1.0, 1.0), 9, 9, LAP_H).unwrap();
    let rep = detect_pointwise_one_type(&samples, 1e-6, 1e-8, 1e-10).unwrap();
    let f_ok = rep.f_samples.iter().all(|&(s, f)| {
        let co = coefficients(&curve, s).unwrap();
        (f - 2.0 * co.b * co.c).abs() <= 1e-6
    });
    let f0_ok = rep
        .f_samples
        .iter()
        .filter(|(s, _)| s.abs() < 1e-12)
        .all(|&(_, f)| (f - 2.0).abs() <= 1e-6);
    let forward_ok = max_n <= 1e-8
        && rep.is_p1t
        && rep.kind == boostgeo_core::P1TKind::First
        && rep.c.inf_norm() <= 1e-8
        && f_ok
        && f0_ok;
    let forward_detail = format!(
        "max|N| {max_n:.3e}, kind {:?}, |C| {:.3e}, residual {:.3e}",
        rep.kind,
        rep.c.inf_norm(),
        rep.residual
    );

    // Negative control: trapped but with a non-quadratic radius profile.
    let generic = boostgeo_core::make_theorem3_trapped(
        &Alpha1Spec::Sinusoid {
            offset: 1.0,
            amplitude: 0.3,
            frequency: 1.0,
        },
        Sign::Plus,
    )
    .unwrap();
    let samples = sample_grid(&generic, (-1.0, 1.0), (-1.0, 1.0), 9, 9, LAP_H).unwrap();
    let neg = detect_pointwise_one_type(&samples, 1e-6, 1e-8, 1e-10).unwrap();
    criterion(
        7,
        "trapped pointwise 1-type family",
        forward_ok && !neg.is_p1t && neg.residual > 1e-2,
        format!("{forward_detail}; negative residual {:.3e}", neg.residual),
    );
}

#[test]
fn acceptance_08_extremal_and_corollaries() {
    let curve = boostgeo_core::make_extremal(4.0, 0.0, 0.0).unwrap();
    let mut max_h = 0.0_f64;
    let mut max_rd = 0.0_f64;
    for k in 0..=100 {
        let s = -1.5 + 3.0 * k as f64 / 100.0;
        let co = coefficients(&curve, s).unwrap();
        let rep = curvature_report(&co, &second_fundamental_form(&co));
        max_h = max_h
            .max(rep.h_components.0.abs())
            .max(rep.h_components.1.abs());
        max_rd = max_rd.max(rep.rd.abs());
    }
    let samples = sample_grid(&curve, (-1.0, 1.0), (-1.5, 1.5), 9, 9, LAP_H).unwrap();
    let rep = detect_pointwise_one_type(&samples, 1e-6, 1e-8, 1e-10).unwrap();
    let f_ok = rep.f_samples.iter().all(|&(s, f)| {
        let co = coefficients(&curve, s).unwrap();
        (f + co.b * co.b + co.c * co.c).abs() <= 1e-6
    });
    let extremal_ok = max_h <= 1e-8
        && max_rd <= 1e-12
        && rep.is_p1t
        && rep.kind == boostgeo_core::P1TKind::First
        && f_ok;
    let extremal_detail = format!(
        "max|H| {max_h:.3e}, max|RD| {max_rd:.3e}, kind {:?}",
        rep.kind
    );

    // Every detector-passing trapped instance is of the first kind.
    let mut first_kind_ok = true;
    let mut trapped_detail = String::new();
    for (lambda1, q1, q0, eps) in [
        (2.0, 0.0, 1.0, Sign::Plus),
        (2.0, 0.5, 1.2, Sign::Minus),
        (3.0, 0.0, 0.5, Sign::Plus),
    ] {
        let trapped = boostgeo_core::make_theorem4_p1t(lambda1, q1, q0, eps).unwrap();
        let (lo, hi) = trapped.domain();
        let (lo, hi) = (lo.max(-1.2), hi.min(1.2));
        let samples = sample_grid(&trapped, (-1.0, 1.0), (lo, hi), 9, 9, LAP_H).unwrap();
        let rep = detect_pointwise_one_type(&samples, 1e-6, 1e-8, 1e-10).unwrap();
        if !(rep.is_p1t && rep.kind == boostgeo_core::P1TKind::First) {
            first_kind_ok = false;
            trapped_detail = format!(
                "lambda1={lambda1}, q1={q1}, q0={q0}, eps={eps}: kind {:?}, residual {:.3e}",
                rep.kind, rep.residual
            );
        }
    }
    criterion(
        8,
        "extremal family and first-kind corollaries",
        extremal_ok && first_kind_ok,
        format!("{extremal_detail}; {trapped_detail}"),
    );
}

#[test]
fn acceptance_09_harmonic_locus() {
    let curve = boostgeo_core::make_theorem1_constant(2.0, 0.5, 0.0).unwrap();
    let samples = sample_grid(&curve, (-1.0, 1.0), (-1.0, 1.0), 9, 9, LAP_H).unwrap();
    let max_lap = samples
        .iter()
        .map(|s| s.laplacian_closed.inf_norm())
        .fold(0.0_f64, f64::max);
    let rep = detect_pointwise_one_type(&samples, 1e-6, 1e-8, 1e-10).unwrap();
    criterion(
        9,
        "harmonic Gauss map handling",
        max_lap <= 1e-8 && rep.harmonic && !rep.is_p1t,
        format!(
            "max|DeltaG| {max_lap:.3e}, harmonic {}, is_p1t {}",
            rep.harmonic, rep.is_p1t
        ),
    );
}

/// Frame-component structure of the closed Laplacian and the numerical mean
/// curvature route, checked alongside the numbered criteria.
#[test]
fn laplacian_frame_components_and_gauss_map_unit_norm() {
    for (curve, range) in fuzz_families() {
        let mid = 0.5 * (range.0 + range.1);
        for &(t, s) in &[(0.0, mid), (1.7, mid + 0.2 * (range.1 - mid))] {
            let co = coefficients(&curve, s).unwrap();
            let fr = frame(&curve, t, s).unwrap();
            let g = gauss_map(&fr);
            assert!(
                (boostgeo_core::bivector_inner(g, g) - 1.0).abs() <= 1e-10,
                "unit Gauss map on {}",
                curve.label()
            );
            let lap = laplacian_gauss_closed(&co, &fr).unwrap();
            let comps = frame_components(&lap, &fr);
            for k in [1, 2, 5] {
                assert!(
                    comps[k].abs() <= 1e-10,
                    "component {k} of DeltaG nonzero on {}: {:.3e}",
                    curve.label(),
                    comps[k]
                );
            }
        }
    }
}

/// The numerical coefficient pipeline sees no boost parameter: extraction at
/// two different t values agrees to finite-difference noise.
#[test]
fn coefficient_extraction_is_boost_independent() {
    for (curve, range) in fuzz_families() {
        let s = 0.5 * (range.0 + range.1) + 0.13 * (range.1 - range.0);
        let at0 = fd_coefficients(&curve, 0.0, s);
        let at17 = fd_coefficients(&curve, 1.7, s);
        for ((x, y), name) in [at0.0, at0.1, at0.2, at0.3]
            .into_iter()
            .zip([at17.0, at17.1, at17.2, at17.3])
            .zip(["a", "b", "c", "d"])
        {
            assert!(
                (x - y).abs() <= 1e-8 * x.abs().max(1.0),
                "{name} on {}: {x} vs {y}",
                curve.label()
            );
        }
    }
}

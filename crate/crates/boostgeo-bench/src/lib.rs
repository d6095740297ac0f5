//! Shared fixtures for the criterion benches.

use boostgeo_core::{build_family, Alpha1Spec, BuildOptions, FamilySpec, ProfileCurve, Sign};

/// Closed-form flat family instance.
pub fn constant_family() -> ProfileCurve {
    build_family(
        &FamilySpec::Theorem1Constant {
            a1: 1.0,
            a2: 2.0,
            a3: 0.0,
        },
        &BuildOptions::default(),
    )
    .unwrap()
}

/// Quadrature-backed marginally trapped instance.
pub fn trapped_family() -> ProfileCurve {
    build_family(
        &FamilySpec::Theorem4P1t {
            lambda1: 2.0,
            q1: 0.0,
            q0: 1.0,
            epsilon: Sign::Plus,
        },
        &BuildOptions::default(),
    )
    .unwrap()
}

/// Generic trapped surface, the detector's hardest (non-fitting) input.
pub fn generic_trapped_family() -> ProfileCurve {
    build_family(
        &FamilySpec::Theorem3Trapped {
            alpha1: Alpha1Spec::Sinusoid {
                offset: 1.0,
                amplitude: 0.3,
                frequency: 1.0,
            },
            epsilon: Sign::Plus,
        },
        &BuildOptions::default(),
    )
    .unwrap()
}

//! Differential invariants of boost-invariant spacelike surfaces in
//! Minkowski 4-space.
//!
//! A surface `phi(t, s) = (alpha1 cosh t, alpha1 sinh t, alpha3, alpha4)`
//! swept from a unit-speed spacelike profile curve is described pointwise by
//! four scalar functions `a, b, c, d` of the curve parameter. This crate
//! computes the adapted frame, fundamental forms, Gaussian and mean
//! curvature, and the Laplacian of the Gauss map `G = e1 ^ e2` both in
//! closed form and by chart discretization. On top of that it fits
//! `Delta G = f (G + C)` to decide whether the Gauss map is of pointwise
//! 1-type, and it constructs the classified families (flat, marginally
//! trapped, extremal) together with verifiers for their stated properties.
//!
//! Conventions: metric `diag(-1, +1, +1, +1)` with `x1` timelike; frame
//! signs `(+1, +1, -1, +1)`; bivector basis `E_i ^ E_j` in lexicographic
//! order with induced signature `(-1, -1, -1, +1, +1, +1)`.

pub mod algebra;
pub mod error;
pub mod families;
pub mod gauss;
pub mod jet;
pub mod profile;
pub mod quad;
pub mod surface;

pub use algebra::{bivector_inner, minkowski_inner, wedge, Bivector6, CausalClass, Sign, Vec4};
pub use error::{GeomError, Result};
pub use families::{
    build_family, make_extremal, make_theorem1_constant, make_theorem1_linear,
    make_theorem3_trapped, make_theorem4_p1t, verify_family, Alpha1Spec, BuildOptions, Check,
    FamilySpec, GridSpec, VerificationReport,
};
pub use gauss::{
    abd_functions, detect_pointwise_one_type, frame_components, gauss_map, gauss_sample,
    laplacian_gauss_closed, laplacian_gauss_numeric, marginally_trapped_n, sample_grid,
    DetectorTolerances, GaussSample, P1TKind, P1TReport,
};
pub use jet::{C2Fn, Jet};
pub use profile::{
    integrate_profile, spline_curve_from_samples, theta_from_alpha1, unit_speed_defect,
    AngleFunction, AngleProvenance, Jet2, ProfileCurve, Triple,
};
pub use surface::{
    boost, coefficients, connection_forms, covariant_derivative_table, curvature_report, frame,
    second_fundamental_form, surface_point, CoefficientDerivs, Coefficients, ConnectionForms,
    CurvatureReport, Frame, SecondFundamentalForm,
};

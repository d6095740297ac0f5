//! Indefinite linear algebra of Minkowski 4-space and its second exterior
//! power.
//!
//! The ambient space carries the metric `diag(-1, +1, +1, +1)`: the first
//! coordinate is timelike. Bivectors live on the ordered basis
//! `E1^E2, E1^E3, E1^E4, E2^E3, E2^E4, E3^E4`, where the induced inner
//! product has signature `(-1, -1, -1, +1, +1, +1)`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Metric signs of the ambient coordinate axes.
pub const METRIC_SIGNS: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

/// Signs of the bivector basis in the order `12, 13, 14, 23, 24, 34`.
pub const BIVECTOR_SIGNS: [f64; 6] = [-1.0, -1.0, -1.0, 1.0, 1.0, 1.0];

/// Point or vector of Minkowski 4-space; `x1` is the timelike coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec4 {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub x4: f64,
}

impl Vec4 {
    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Self { x1, x2, x3, x4 }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.x1, self.x2, self.x3, self.x4]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Squared Minkowski norm `<v, v>` (any sign).
    pub fn norm2(self) -> f64 {
        minkowski_inner(self, self)
    }

    /// Largest coordinate magnitude.
    pub fn inf_norm(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(k * self.x1, k * self.x2, k * self.x3, k * self.x4)
    }

    /// Causal character of the vector, by the exact sign of `<v, v>`.
    pub fn causal_character(self) -> CausalClass {
        CausalClass::of_norm2(self.norm2(), 0.0)
    }
}

impl Add for Vec4 {
    type Output = Vec4;
    fn add(self, o: Vec4) -> Vec4 {
        Vec4::new(
            self.x1 + o.x1,
            self.x2 + o.x2,
            self.x3 + o.x3,
            self.x4 + o.x4,
        )
    }
}

impl Sub for Vec4 {
    type Output = Vec4;
    fn sub(self, o: Vec4) -> Vec4 {
        Vec4::new(
            self.x1 - o.x1,
            self.x2 - o.x2,
            self.x3 - o.x3,
            self.x4 - o.x4,
        )
    }
}

impl Neg for Vec4 {
    type Output = Vec4;
    fn neg(self) -> Vec4 {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Vec4 {
    type Output = Vec4;
    fn mul(self, k: f64) -> Vec4 {
        self.scale(k)
    }
}

impl Mul<Vec4> for f64 {
    type Output = Vec4;
    fn mul(self, v: Vec4) -> Vec4 {
        v.scale(self)
    }
}

/// Minkowski inner product `-u1 v1 + u2 v2 + u3 v3 + u4 v4`.
pub fn minkowski_inner(u: Vec4, v: Vec4) -> f64 {
    -u.x1 * v.x1 + u.x2 * v.x2 + u.x3 * v.x3 + u.x4 * v.x4
}

/// Causal trichotomy of a squared norm, with a fourth value for the zero
/// vector (used for mean curvature classification).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CausalClass {
    Zero,
    Null,
    Timelike,
    Spacelike,
}

impl CausalClass {
    /// Classify a squared norm: `|n2| <= tol` is null, negative is timelike,
    /// positive is spacelike. Never returns `Zero`.
    pub fn of_norm2(n2: f64, tol: f64) -> Self {
        if n2.abs() <= tol {
            CausalClass::Null
        } else if n2 < 0.0 {
            CausalClass::Timelike
        } else {
            CausalClass::Spacelike
        }
    }
}

impl std::fmt::Display for CausalClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            CausalClass::Zero => "zero",
            CausalClass::Null => "null",
            CausalClass::Timelike => "timelike",
            CausalClass::Spacelike => "spacelike",
        };
        f.write_str(s)
    }
}

/// Sign choice `+1` or `-1`, as it appears in the marginally trapped
/// condition `-(b + c) = eps * d`. Serialized as the integer `1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i8(match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        })
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        match i64::deserialize(deserializer)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!(
                "sign must be 1 or -1, got {other}"
            ))),
        }
    }
}

/// Bivector in Plucker coordinates on the ordered basis
/// `E1^E2, E1^E3, E1^E4, E2^E3, E2^E4, E3^E4`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Bivector6 {
    pub p12: f64,
    pub p13: f64,
    pub p14: f64,
    pub p23: f64,
    pub p24: f64,
    pub p34: f64,
}

impl Bivector6 {
    pub const fn new(p12: f64, p13: f64, p14: f64, p23: f64, p24: f64, p34: f64) -> Self {
        Self {
            p12,
            p13,
            p14,
            p23,
            p24,
            p34,
        }
    }

    pub const fn zero() -> Self {
        Self::new(0.0, 0.0, 0.0, 0.0, 0.0, 0.0)
    }

    /// Components in basis order `12, 13, 14, 23, 24, 34`.
    pub fn to_array(self) -> [f64; 6] {
        [self.p12, self.p13, self.p14, self.p23, self.p24, self.p34]
    }

    pub fn from_array(a: [f64; 6]) -> Self {
        Self::new(a[0], a[1], a[2], a[3], a[4], a[5])
    }

    pub fn scale(self, k: f64) -> Self {
        Self::from_array(self.to_array().map(|x| k * x))
    }

    /// Positive-definite dot product of the coordinate arrays. This is the
    /// fitting metric of the pointwise 1-type detector, not the geometric
    /// inner product.
    pub fn euclidean_dot(self, o: Bivector6) -> f64 {
        self.to_array()
            .iter()
            .zip(o.to_array().iter())
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn euclidean_norm2(self) -> f64 {
        self.euclidean_dot(self)
    }

    pub fn inf_norm(self) -> f64 {
        self.to_array().iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }
}

impl Add for Bivector6 {
    type Output = Bivector6;
    fn add(self, o: Bivector6) -> Bivector6 {
        let a = self.to_array();
        let b = o.to_array();
        Bivector6::from_array([
            a[0] + b[0],
            a[1] + b[1],
            a[2] + b[2],
            a[3] + b[3],
            a[4] + b[4],
            a[5] + b[5],
        ])
    }
}

impl Sub for Bivector6 {
    type Output = Bivector6;
    fn sub(self, o: Bivector6) -> Bivector6 {
        self + o.scale(-1.0)
    }
}

impl Neg for Bivector6 {
    type Output = Bivector6;
    fn neg(self) -> Bivector6 {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Bivector6 {
    type Output = Bivector6;
    fn mul(self, k: f64) -> Bivector6 {
        self.scale(k)
    }
}

impl Mul<Bivector6> for f64 {
    type Output = Bivector6;
    fn mul(self, b: Bivector6) -> Bivector6 {
        b.scale(self)
    }
}

/// Exterior product `u ^ v` with `p_ij = u_i v_j - u_j v_i` for `i < j`.
pub fn wedge(u: Vec4, v: Vec4) -> Bivector6 {
    Bivector6::new(
        u.x1 * v.x2 - u.x2 * v.x1,
        u.x1 * v.x3 - u.x3 * v.x1,
        u.x1 * v.x4 - u.x4 * v.x1,
        u.x2 * v.x3 - u.x3 * v.x2,
        u.x2 * v.x4 - u.x4 * v.x2,
        u.x3 * v.x4 - u.x4 * v.x3,
    )
}

/// Indefinite inner product on bivectors: the determinant rule
/// `<u^v, w^z> = det [[<u,w>, <u,z>], [<v,w>, <v,z>]]` extended bilinearly,
/// which on Plucker coordinates is the sign-weighted sum with
/// [`BIVECTOR_SIGNS`].
pub fn bivector_inner(p: Bivector6, q: Bivector6) -> f64 {
    let a = p.to_array();
    let b = q.to_array();
    BIVECTOR_SIGNS
        .iter()
        .zip(a.iter().zip(b.iter()))
        .map(|(sign, (x, y))| sign * x * y)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const E1: Vec4 = Vec4::new(1.0, 0.0, 0.0, 0.0);
    const E2: Vec4 = Vec4::new(0.0, 1.0, 0.0, 0.0);
    const E3: Vec4 = Vec4::new(0.0, 0.0, 1.0, 0.0);
    const E4: Vec4 = Vec4::new(0.0, 0.0, 0.0, 1.0);

    #[test]
    fn inner_on_basis_and_null_vectors() {
        assert_eq!(minkowski_inner(E1, E1), -1.0);
        let null = Vec4::new(1.0, 0.0, 1.0, 0.0);
        assert_eq!(minkowski_inner(null, null), 0.0);
        let u = Vec4::new(0.0, 1.0, 2.0, 3.0);
        let v = Vec4::new(1.0, 1.0, 1.0, 1.0);
        assert_eq!(minkowski_inner(u, v), 6.0);
    }

    #[test]
    fn inner_is_symmetric() {
        let u = Vec4::new(0.3, -1.2, 4.0, 0.7);
        let v = Vec4::new(-2.0, 0.5, 1.5, -0.1);
        assert_eq!(minkowski_inner(u, v), minkowski_inner(v, u));
    }

    #[test]
    fn wedge_of_basis_vectors() {
        let g = wedge(E1, E2);
        assert_eq!(g.to_array(), [1.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn wedge_of_vector_with_itself_vanishes() {
        let u = Vec4::new(1.0, 2.0, 3.0, 4.0);
        assert_eq!(wedge(u, u), Bivector6::zero());
    }

    #[test]
    fn wedge_direct_expansion() {
        let u = Vec4::new(1.0, 1.0, 0.0, 0.0);
        let v = Vec4::new(0.0, 0.0, 1.0, 0.0);
        let w = wedge(u, v);
        assert_eq!(w.p13, 1.0);
        assert_eq!(w.p23, 1.0);
        assert_eq!(w.p12, 0.0);
        assert_eq!(w.p14, 0.0);
        assert_eq!(w.p24, 0.0);
        assert_eq!(w.p34, 0.0);
    }

    #[test]
    fn bivector_inner_signature() {
        let e12 = wedge(E1, E2);
        let e34 = wedge(E3, E4);
        assert_eq!(bivector_inner(e12, e12), -1.0);
        assert_eq!(bivector_inner(e34, e34), 1.0);
        assert_eq!(bivector_inner(e12, e34), 0.0);
    }

    #[test]
    fn bivector_inner_matches_determinant_rule() {
        // <u^v, w^z> = det [[<u,w>, <u,z>], [<v,w>, <v,z>]]
        let u = Vec4::new(0.4, -1.0, 2.0, 0.3);
        let v = Vec4::new(1.1, 0.2, -0.7, 2.5);
        let w = Vec4::new(-0.6, 0.9, 1.3, -1.8);
        let z = Vec4::new(2.2, -0.4, 0.1, 0.9);
        let lhs = bivector_inner(wedge(u, v), wedge(w, z));
        let rhs = minkowski_inner(u, w) * minkowski_inner(v, z)
            - minkowski_inner(u, z) * minkowski_inner(v, w);
        assert_relative_eq!(lhs, rhs, max_relative = 1e-12);
    }

    #[test]
    fn causal_trichotomy() {
        assert_eq!(E1.causal_character(), CausalClass::Timelike);
        assert_eq!(E2.causal_character(), CausalClass::Spacelike);
        assert_eq!(
            Vec4::new(1.0, 1.0, 0.0, 0.0).causal_character(),
            CausalClass::Null
        );
    }
}

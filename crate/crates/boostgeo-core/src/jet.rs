//! Forward-mode propagation of value, first and second derivative.
//!
//! Closed-form profile curves are written as expressions in [`Jet`], so their
//! derivatives are exact to rounding instead of coming from finite
//! differences.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

/// Scalar 2-jet `(v, v', v'')` of a function of one variable.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub v: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    pub const fn new(v: f64, d1: f64, d2: f64) -> Self {
        Self { v, d1, d2 }
    }

    /// Constant with vanishing derivatives.
    pub const fn constant(c: f64) -> Self {
        Self::new(c, 0.0, 0.0)
    }

    /// The independent variable at `s`.
    pub const fn variable(s: f64) -> Self {
        Self::new(s, 1.0, 0.0)
    }

    /// Chain rule through a scalar map with first and second derivative at
    /// `self.v`.
    fn lift(self, f: f64, df: f64, d2f: f64) -> Self {
        Self::new(f, df * self.d1, d2f * self.d1 * self.d1 + df * self.d2)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.lift(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.v.sin_cos();
        self.lift(c, -s, -c)
    }

    pub fn sqrt(self) -> Self {
        let r = self.v.sqrt();
        self.lift(r, 0.5 / r, -0.25 / (r * self.v))
    }

    pub fn recip(self) -> Self {
        let r = 1.0 / self.v;
        self.lift(r, -r * r, 2.0 * r * r * r)
    }

    pub fn ln(self) -> Self {
        let r = 1.0 / self.v;
        self.lift(self.v.ln(), r, -r * r)
    }

    pub fn atan(self) -> Self {
        let w = 1.0 / (1.0 + self.v * self.v);
        self.lift(self.v.atan(), w, -2.0 * self.v * w * w)
    }

    pub fn powi(self, n: i32) -> Self {
        // Low exponents short-circuit so a zero base never meets a negative
        // power in the derivative factors.
        match n {
            0 => Jet::constant(1.0),
            1 => self,
            _ => {
                let f = self.v.powi(n);
                let df = f64::from(n) * self.v.powi(n - 1);
                let d2f = f64::from(n) * f64::from(n - 1) * self.v.powi(n - 2);
                self.lift(f, df, d2f)
            }
        }
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(k * self.v, k * self.d1, k * self.d2)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, o: Jet) -> Jet {
        Jet::new(self.v + o.v, self.d1 + o.d1, self.d2 + o.d2)
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, o: Jet) -> Jet {
        Jet::new(self.v - o.v, self.d1 - o.d1, self.d2 - o.d2)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, o: Jet) -> Jet {
        Jet::new(
            self.v * o.v,
            self.d1 * o.v + self.v * o.d1,
            self.d2 * o.v + 2.0 * self.d1 * o.d1 + self.v * o.d2,
        )
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, o: Jet) -> Jet {
        self * o.recip()
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, c: f64) -> Jet {
        Jet::new(self.v + c, self.d1, self.d2)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, k: f64) -> Jet {
        self.scale(k)
    }
}

/// Twice-differentiable scalar function of the curve parameter, shared
/// between the angle integrand and the curve evaluator.
#[derive(Clone)]
pub struct C2Fn {
    f: Arc<dyn Fn(f64) -> Jet + Send + Sync>,
}

impl C2Fn {
    pub fn new(f: impl Fn(f64) -> Jet + Send + Sync + 'static) -> Self {
        Self { f: Arc::new(f) }
    }

    pub fn eval(&self, s: f64) -> Jet {
        (self.f)(s)
    }
}

impl std::fmt::Debug for C2Fn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("C2Fn")
    }
}

//! Second-order jets in two variables.
//!
//! A [`Jet2`] carries the value of a scalar function of `(u, v)` together
//! with its exact first and second partial derivatives. Arithmetic is
//! truncated Taylor arithmetic, so the derivatives carry no truncation error.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Jet2 {
    pub val: f64,
    pub du: f64,
    pub dv: f64,
    pub duu: f64,
    pub duv: f64,
    pub dvv: f64,
}

impl Jet2 {
    pub fn constant(val: f64) -> Self {
        Jet2 {
            val,
            ..Default::default()
        }
    }

    /// The coordinate function `u`, seeded at `u = val`.
    pub fn var_u(val: f64) -> Self {
        Jet2 {
            val,
            du: 1.0,
            ..Default::default()
        }
    }

    /// The coordinate function `v`, seeded at `v = val`.
    pub fn var_v(val: f64) -> Self {
        Jet2 {
            val,
            dv: 1.0,
            ..Default::default()
        }
    }

    /// `f ∘ self`, given `f`, `f'` and `f''` at `self.val`.
    pub fn chain(self, f0: f64, f1: f64, f2: f64) -> Self {
        Jet2 {
            val: f0,
            du: f1 * self.du,
            dv: f1 * self.dv,
            duu: f2 * self.du * self.du + f1 * self.duu,
            duv: f2 * self.du * self.dv + f1 * self.duv,
            dvv: f2 * self.dv * self.dv + f1 * self.dvv,
        }
    }

    pub fn scale(self, s: f64) -> Self {
        Jet2 {
            val: self.val * s,
            du: self.du * s,
            dv: self.dv * s,
            duu: self.duu * s,
            duv: self.duv * s,
            dvv: self.dvv * s,
        }
    }

    /// Reciprocal; the caller guarantees `self.val != 0`.
    pub fn recip(self) -> Self {
        let r = 1.0 / self.val;
        self.chain(r, -r * r, 2.0 * r * r * r)
    }

    pub fn sin(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(s, c, -s)
    }

    pub fn cos(self) -> Self {
        let (s, c) = self.val.sin_cos();
        self.chain(c, -s, -c)
    }

    pub fn tan(self) -> Self {
        let t = self.val.tan();
        let sec2 = 1.0 + t * t;
        self.chain(t, sec2, 2.0 * t * sec2)
    }

    pub fn exp(self) -> Self {
        let e = self.val.exp();
        self.chain(e, e, e)
    }

    /// Natural logarithm; the caller guarantees `self.val > 0`.
    pub fn ln(self) -> Self {
        let r = 1.0 / self.val;
        self.chain(self.val.ln(), r, -r * r)
    }

    /// Square root; the caller guarantees `self.val > 0`.
    pub fn sqrt(self) -> Self {
        let s = self.val.sqrt();
        self.chain(s, 0.5 / s, -0.25 / (s * self.val))
    }

    pub fn sinh(self) -> Self {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(s, c, s)
    }

    pub fn cosh(self) -> Self {
        let (s, c) = (self.val.sinh(), self.val.cosh());
        self.chain(c, s, c)
    }

    pub fn atan(self) -> Self {
        let d = 1.0 / (1.0 + self.val * self.val);
        self.chain(self.val.atan(), d, -2.0 * self.val * d * d)
    }

    /// Integer power; negative exponents require `self.val != 0`.
    pub fn powi(self, n: i32) -> Self {
        match n {
            0 => Jet2::constant(1.0),
            1 => self,
            _ => {
                let nf = f64::from(n);
                self.chain(
                    self.val.powi(n),
                    nf * self.val.powi(n - 1),
                    nf * (nf - 1.0) * self.val.powi(n - 2),
                )
            }
        }
    }

    /// Real power; the caller guarantees `self.val > 0`.
    pub fn powf(self, p: f64) -> Self {
        self.chain(
            self.val.powf(p),
            p * self.val.powf(p - 1.0),
            p * (p - 1.0) * self.val.powf(p - 2.0),
        )
    }

    pub fn is_finite(&self) -> bool {
        [self.val, self.du, self.dv, self.duu, self.duv, self.dvv]
            .iter()
            .all(|x| x.is_finite())
    }
}

impl Add for Jet2 {
    type Output = Jet2;
    fn add(self, r: Jet2) -> Jet2 {
        Jet2 {
            val: self.val + r.val,
            du: self.du + r.du,
            dv: self.dv + r.dv,
            duu: self.duu + r.duu,
            duv: self.duv + r.duv,
            dvv: self.dvv + r.dvv,
        }
    }
}

impl Sub for Jet2 {
    type Output = Jet2;
    fn sub(self, r: Jet2) -> Jet2 {
        self + (-r)
    }
}

impl Neg for Jet2 {
    type Output = Jet2;
    fn neg(self) -> Jet2 {
        self.scale(-1.0)
    }
}

impl Mul for Jet2 {
    type Output = Jet2;
    fn mul(self, r: Jet2) -> Jet2 {
        Jet2 {
            val: self.val * r.val,
            du: self.du * r.val + self.val * r.du,
            dv: self.dv * r.val + self.val * r.dv,
            duu: self.duu * r.val + 2.0 * self.du * r.du + self.val * r.duu,
            duv: self.duv * r.val + self.du * r.dv + self.dv * r.du + self.val * r.duv,
            dvv: self.dvv * r.val + 2.0 * self.dv * r.dv + self.val * r.dvv,
        }
    }
}

impl Div for Jet2 {
    type Output = Jet2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, r: Jet2) -> Jet2 {
        self * r.recip()
    }
}

//! Truncated Taylor series ("jets") in one variable.
//!
//! A jet of order `K` stores the Taylor coefficients `c_0..c_K` of a function
//! about a base parameter, so the k-th derivative there is `k! * c_k`.
//! Arithmetic follows the usual Cauchy-product rules and the elementary
//! functions use the standard first-order recurrences, which are exact up to
//! rounding for every coefficient kept.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Jet {
    coeffs: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JetOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Elementary {
    Exp,
    Log,
    Sqrt,
    Sin,
    Cos,
}

impl Jet {
    /// Jet from raw Taylor coefficients. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<f64>) -> Self {
        assert!(!coeffs.is_empty(), "a jet needs at least the constant term");
        Jet { coeffs }
    }

    pub fn constant(c: f64, order: usize) -> Self {
        let mut coeffs = vec![0.0; order + 1];
        coeffs[0] = c;
        Jet { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Jet::constant(0.0, order)
    }

    /// The identity function `s -> s` expanded at `s0`.
    pub fn variable(s0: f64, order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        let mut j = Jet::constant(s0, order);
        j.coeffs[1] = 1.0;
        Ok(j)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn value(&self) -> f64 {
        self.coeffs[0]
    }

    /// k-th derivative at the base point.
    pub fn derivative(&self, k: usize) -> Result<f64> {
        let c = self
            .coeffs
            .get(k)
            .ok_or(Error::OrderExceeded { requested: k, order: self.order() })?;
        Ok(factorial(k) * c)
    }

    /// The jet of `f'`; order drops by one.
    pub fn differentiate(&self) -> Result<Jet> {
        if self.order() == 0 {
            return Err(Error::OrderExhausted { needed: 1, available: 0 });
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| (k + 1) as f64 * c)
            .collect();
        Ok(Jet { coeffs })
    }

    /// The jet of the antiderivative taking value `c0` at the base point;
    /// order grows by one.
    pub fn integrate(&self, c0: f64) -> Jet {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(c0);
        coeffs.extend(self.coeffs.iter().enumerate().map(|(k, c)| c / (k + 1) as f64));
        Jet { coeffs }
    }

    pub fn truncate(&self, order: usize) -> Jet {
        let n = (order + 1).min(self.coeffs.len());
        Jet { coeffs: self.coeffs[..n].to_vec() }
    }

    pub fn scale(&self, f: f64) -> Jet {
        Jet { coeffs: self.coeffs.iter().map(|c| c * f).collect() }
    }

    pub fn add_scalar(&self, c: f64) -> Jet {
        let mut out = self.clone();
        out.coeffs[0] += c;
        out
    }

    /// Quotient of two jets of equal order.
    pub fn checked_div(&self, rhs: &Jet) -> Result<Jet> {
        check_orders(self, rhs)?;
        div_coeffs(&self.coeffs, &rhs.coeffs)
    }

    pub fn powi(&self, n: u32) -> Jet {
        let mut out = Jet::constant(1.0, self.order());
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn exp(&self) -> Jet {
        let a = &self.coeffs;
        let mut e = vec![0.0; a.len()];
        e[0] = libm::exp(a[0]);
        for k in 1..a.len() {
            let s: f64 = (1..=k).map(|j| j as f64 * a[j] * e[k - j]).sum();
            e[k] = s / k as f64;
        }
        Jet { coeffs: e }
    }

    pub fn ln(&self) -> Result<Jet> {
        let a = &self.coeffs;
        if !(a[0] > 0.0) {
            return Err(Error::Domain { function: "log", value: a[0] });
        }
        let mut l = vec![0.0; a.len()];
        l[0] = libm::log(a[0]);
        for k in 1..a.len() {
            let s: f64 = (1..k).map(|j| j as f64 * l[j] * a[k - j]).sum();
            l[k] = (a[k] - s / k as f64) / a[0];
        }
        Ok(Jet { coeffs: l })
    }

    pub fn sqrt(&self) -> Result<Jet> {
        let a = &self.coeffs;
        if !(a[0] > 0.0) {
            return Err(Error::Domain { function: "sqrt", value: a[0] });
        }
        let mut r = vec![0.0; a.len()];
        r[0] = libm::sqrt(a[0]);
        for k in 1..a.len() {
            let s: f64 = (1..k).map(|j| r[j] * r[k - j]).sum();
            r[k] = (a[k] - s) / (2.0 * r[0]);
        }
        Ok(Jet { coeffs: r })
    }

    /// `(sin a, cos a)` computed together; each recurrence needs the other.
    pub fn sin_cos(&self) -> (Jet, Jet) {
        let a = &self.coeffs;
        let n = a.len();
        let mut s = vec![0.0; n];
        let mut c = vec![0.0; n];
        s[0] = libm::sin(a[0]);
        c[0] = libm::cos(a[0]);
        for k in 1..n {
            let mut ss = 0.0;
            let mut cc = 0.0;
            for j in 1..=k {
                let w = j as f64 * a[j];
                ss += w * c[k - j];
                cc += w * s[k - j];
            }
            s[k] = ss / k as f64;
            c[k] = -cc / k as f64;
        }
        (Jet { coeffs: s }, Jet { coeffs: c })
    }

    pub fn sin(&self) -> Jet {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Jet {
        self.sin_cos().1
    }
}

/// Binary jet arithmetic; both operands must have the same order.
pub fn combine(op: JetOp, a: &Jet, b: &Jet) -> Result<Jet> {
    check_orders(a, b)?;
    Ok(match op {
        JetOp::Add => a + b,
        JetOp::Sub => a - b,
        JetOp::Mul => a * b,
        JetOp::Div => return div_coeffs(&a.coeffs, &b.coeffs),
    })
}

pub fn elementary(f: Elementary, a: &Jet) -> Result<Jet> {
    match f {
        Elementary::Exp => Ok(a.exp()),
        Elementary::Log => a.ln(),
        Elementary::Sqrt => a.sqrt(),
        Elementary::Sin => Ok(a.sin()),
        Elementary::Cos => Ok(a.cos()),
    }
}

fn check_orders(a: &Jet, b: &Jet) -> Result<()> {
    if a.order() != b.order() {
        return Err(Error::OrderMismatch { left: a.order(), right: b.order() });
    }
    Ok(())
}

fn div_coeffs(a: &[f64], b: &[f64]) -> Result<Jet> {
    if b[0] == 0.0 {
        return Err(Error::DivisionByZeroJet);
    }
    let n = a.len().min(b.len());
    let mut q = vec![0.0; n];
    for k in 0..n {
        let s: f64 = (1..=k).map(|i| b[i] * q[k - i]).sum();
        q[k] = (a[k] - s) / b[0];
    }
    Ok(Jet { coeffs: q })
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

// Operators truncate to the smaller of the two orders, which is always a
// valid jet of the result.

impl Add for &Jet {
    type Output = Jet;
    fn add(self, rhs: &Jet) -> Jet {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        Jet { coeffs: (0..n).map(|k| self.coeffs[k] + rhs.coeffs[k]).collect() }
    }
}

impl Sub for &Jet {
    type Output = Jet;
    fn sub(self, rhs: &Jet) -> Jet {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        Jet { coeffs: (0..n).map(|k| self.coeffs[k] - rhs.coeffs[k]).collect() }
    }
}

impl Mul for &Jet {
    type Output = Jet;
    fn mul(self, rhs: &Jet) -> Jet {
        let n = self.coeffs.len().min(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| (0..=k).map(|i| self.coeffs[i] * rhs.coeffs[k - i]).sum())
            .collect();
        Jet { coeffs }
    }
}

impl Neg for &Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul<f64> for &Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet { (&self).$m(&rhs) }
        }
        impl $tr<&Jet> for Jet {
            type Output = Jet;
            fn $m(self, rhs: &Jet) -> Jet { (&self).$m(rhs) }
        }
        impl $tr<Jet> for &Jet {
            type Output = Jet;
            fn $m(self, rhs: Jet) -> Jet { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale(-1.0)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale(rhs)
    }
}

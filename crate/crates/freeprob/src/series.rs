//! Truncated formal power series over a [`Scalar`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Which variable the coefficients are attached to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeriesVar {
    /// Power series in `z`.
    Z,
    /// Expansion at infinity: coefficient `i` multiplies `ξ^{-i}`.
    InvXi,
}

/// Coefficients `c_0 … c_n`, known exactly up to the truncation order `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<T> {
    coeffs: Vec<T>,
    var: SeriesVar,
}

impl<T: Scalar> FormalSeries<T> {
    /// Panics on an empty coefficient list; order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<T>, var: SeriesVar) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least c_0");
        FormalSeries { coeffs, var }
    }

    pub fn in_z(coeffs: Vec<T>) -> Self {
        Self::new(coeffs, SeriesVar::Z)
    }

    pub fn zero(order: usize) -> Self {
        Self::in_z(vec![T::zero(); order + 1])
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = T::one();
        s
    }

    /// The series `z` truncated at `order ≥ 1`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = T::one();
        }
        s
    }

    /// Geometric series `c/(1 − a z)` with the given coefficients.
    pub fn geometric(c: T, a: T, order: usize) -> Self {
        let mut out = Vec::with_capacity(order + 1);
        let mut term = c;
        for _ in 0..=order {
            out.push(term.clone());
            term = term * a.clone();
        }
        Self::in_z(out)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn var(&self) -> SeriesVar {
        self.var
    }

    pub fn with_var(mut self, var: SeriesVar) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &T {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let n = order.min(self.order());
        FormalSeries { coeffs: self.coeffs[..=n].to_vec(), var: self.var }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n).map(|i| self.coeffs[i].clone() + other.coeffs[i].clone()).collect();
        FormalSeries { coeffs, var: self.var }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        FormalSeries { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), var: self.var }
    }

    pub fn scale(&self, c: &T) -> Self {
        FormalSeries { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(), var: self.var }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![T::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        FormalSeries { coeffs, var: self.var }
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.coeffs[0].is_negligible() {
            return Err(Error::Singular);
        }
        let n = self.order();
        let inv0 = T::one() / self.coeffs[0].clone();
        let mut out = vec![T::zero(); n + 1];
        out[0] = inv0.clone();
        for k in 1..=n {
            let mut s = T::zero();
            for j in 1..=k {
                s = s + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = -(s * inv0.clone());
        }
        Ok(FormalSeries { coeffs: out, var: self.var })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// Divides by the variable; the constant term must vanish.
    pub fn shift_down(&self) -> Result<Self> {
        if !self.coeffs[0].is_negligible() || self.order() == 0 {
            return Err(Error::InvalidParameter("shift_down needs c_0 = 0 and order ≥ 1".into()));
        }
        Ok(FormalSeries { coeffs: self.coeffs[1..].to_vec(), var: self.var })
    }

    /// Multiplies by the variable; raises the order by one.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        FormalSeries { coeffs, var: self.var }
    }

    pub fn derivative(&self) -> Self {
        if self.order() == 0 {
            return Self::zero(0);
        }
        let coeffs = (1..=self.order()).map(|i| self.coeffs[i].clone() * T::from_i64(i as i64)).collect();
        FormalSeries { coeffs, var: self.var }
    }

    pub fn integral(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(T::zero());
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs.push(c.clone() / T::from_i64(i as i64 + 1));
        }
        FormalSeries { coeffs, var: self.var }
    }

    /// `self(g(z))` for `g` without constant term.
    pub fn compose(&self, g: &Self) -> Result<Self> {
        if !g.coeffs[0].is_negligible() {
            return Err(Error::InvalidParameter("inner series must have zero constant term".into()));
        }
        let n = self.order().min(g.order());
        let g = g.truncate(n);
        let mut acc = FormalSeries { coeffs: vec![T::zero(); n + 1], var: self.var };
        acc.coeffs[0] = self.coeffs[n].clone();
        for i in (0..n).rev() {
            acc = acc.mul(&g);
            acc.coeffs[0] = acc.coeffs[0].clone() + self.coeffs[i].clone();
        }
        Ok(acc)
    }

    /// Compositional inverse `g` with `self(g(z)) = z`, by Newton iteration.
    pub fn reverse(&self) -> Result<Self> {
        let n = self.order();
        if !self.coeffs[0].is_negligible() {
            return Err(Error::InvalidParameter("reversion needs c_0 = 0".into()));
        }
        if n == 0 {
            return Ok(Self::zero(0));
        }
        if self.coeffs[1].is_negligible() {
            return Err(Error::InvalidParameter("reversion needs an invertible linear coefficient".into()));
        }
        let z = Self::identity(n);
        let mut g = z.scale(&(T::one() / self.coeffs[1].clone()));
        let deriv = self.derivative();
        let mut precision = 2;
        loop {
            let h = self.compose(&g)?.sub(&z);
            let mut d = deriv.compose(&g.truncate(n - 1))?.coeffs;
            d.push(T::zero());
            let d = FormalSeries { coeffs: d, var: self.var };
            g = g.sub(&h.mul(&d.reciprocal()?));
            if precision > n {
                break;
            }
            precision *= 2;
        }
        Ok(g.with_var(self.var))
    }

    /// `log(self)` for a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != T::one() {
            return Err(Error::InvalidParameter("log needs c_0 = 1".into()));
        }
        let n = self.order();
        if n == 0 {
            return Ok(Self::zero(0));
        }
        let q = self.derivative().mul(&self.truncate(n - 1).reciprocal()?);
        Ok(q.integral())
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_negligible() {
            return Err(Error::InvalidParameter("exp needs c_0 = 0".into()));
        }
        let n = self.order();
        // e' = f' e, solved coefficientwise
        let d = self.derivative();
        let mut e = vec![T::zero(); n + 1];
        e[0] = T::one();
        for k in 1..=n {
            let mut s = T::zero();
            for j in 0..k {
                s = s + d.coeffs[j].clone() * e[k - 1 - j].clone();
            }
            e[k] = s / T::from_i64(k as i64);
        }
        Ok(FormalSeries { coeffs: e, var: self.var })
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> FormalSeries<U> {
        FormalSeries { coeffs: self.coeffs.iter().map(f).collect(), var: self.var }
    }

    pub fn as_f64(&self) -> FormalSeries<f64> {
        self.map(|c| c.as_f64())
    }

    /// Exact equality for exact scalars, relative tolerance for floats.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.order() == other.order()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| {
                if T::is_exact() {
                    a == b
                } else {
                    let (a, b) = (a.as_f64(), b.as_f64());
                    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
                }
            })
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for FormalSeries<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.var {
            SeriesVar::Z => "z",
            SeriesVar::InvXi => "ξ^-1",
        };
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})·{v}")?,
                _ => write!(f, "({c})·({v})^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O({v}^{})", self.order() + 1)
    }
}

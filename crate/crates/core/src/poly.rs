//! Dense univariate polynomials, coefficients lowest-degree first.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Field;

#[derive(Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> Polynomial<T> {
    /// Builds a polynomial, dropping trailing zero coefficients.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `c x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k];
        v.push(c);
        Self::new(v)
    }

    /// `a + b x`
    pub fn linear(a: T, b: T) -> Self {
        Self::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Order of vanishing at `x = 0`; `None` for the zero polynomial.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> Polynomial<U> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => {
                let inv = T::one() / lc.clone();
                self.scale(&inv)
            }
            None => Self::zero(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![T::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs: v }
    }

    /// Exact division by `x^k`; the low coefficients must vanish.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(Error::NonExactDivision);
        }
        Ok(Polynomial { coeffs: self.coeffs.iter().skip(k).cloned().collect() })
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_usize(k).expect("small integer"))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// `(p(x), p'(x))` in one Horner pass.
    pub fn eval_with_derivative(&self, x: &T) -> (T, T) {
        let mut p = T::zero();
        let mut dp = T::zero();
        for c in self.coeffs.iter().rev() {
            dp = dp * x.clone() + p.clone();
            p = p * x.clone() + c.clone();
        }
        (p, dp)
    }

    /// `p(c x)`
    pub fn scale_arg(&self, c: &T) -> Self {
        let mut pw = T::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a.clone() * pw.clone());
            pw = pw * c.clone();
        }
        Self::new(out)
    }

    /// `p(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// `x^d p(1/x)` with `d = deg p`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Long division `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(dn) = self.degree() else {
            return (Self::zero(), Self::zero());
        };
        if dn < dd {
            return (Self::zero(), self.clone());
        }
        let inv_lc = T::one() / d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![T::zero(); dn - dd + 1];
        for k in (0..=dn - dd).rev() {
            let c = rem[k + dd].clone() * inv_lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                if dj.is_zero() {
                    continue;
                }
                let t = c.clone() * dj.clone();
                rem[k + j] = rem[k + j].clone() - t;
            }
            quo[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quo), Self::new(rem))
    }

    /// Division that must leave no remainder.
    pub fn exact_div(&self, d: &Self) -> Result<Self> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if self.coeffs.len() < d.coeffs.len() {
            return Err(Error::NonExactDivision);
        }
        T::exact_div_slices(&self.coeffs, &d.coeffs)
            .map(Self::new)
            .ok_or(Error::NonExactDivision)
    }

    /// Monic gcd by the Euclidean algorithm over the coefficient field.
    pub fn gcd_euclid(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }
}

fn schoolbook<T: Field>(a: &[T], b: &[T]) -> Vec<T> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![T::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            out[i + j] = out[i + j].clone() + ai.clone() * bj.clone();
        }
    }
    out
}

impl<'a, T: Coefficient> Add<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<'a, T: Coefficient> Sub<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<'a, T: Coefficient> Mul<&'a Polynomial<T>> for &'a Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: &'a Polynomial<T>) -> Polynomial<T> {
        Polynomial::new(T::mul_slices(&self.coeffs, &rhs.coeffs))
    }
}

impl<T: Coefficient> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }
}

macro_rules! owned_ops {
    ($tr:ident, $f:ident) => {
        impl<T: Coefficient> $tr for Polynomial<T> {
            type Output = Polynomial<T>;
            fn $f(self, rhs: Polynomial<T>) -> Polynomial<T> {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

impl<T: Coefficient> Zero for Polynomial<T> {
    fn zero() -> Self {
        Polynomial::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Coefficient> One for Polynomial<T> {
    fn one() -> Self {
        Polynomial::one()
    }
}

/// Coefficient-slice multiplication, overridable per scalar type.
pub trait Coefficient: Field {
    fn mul_slices(a: &[Self], b: &[Self]) -> Vec<Self> {
        schoolbook(a, b)
    }

    /// Quotient of `a` by `b` when the remainder vanishes.
    fn exact_div_slices(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
        let (q, r) = Polynomial::new(a.to_vec()).div_rem(&Polynomial::new(b.to_vec()));
        r.is_zero().then(|| q.into_coeffs())
    }
}

impl Coefficient for f64 {}
impl Coefficient for num_complex::Complex<f64> {}
impl Coefficient for crate::scalar::BigFloat {}
impl Coefficient for num_complex::Complex<crate::scalar::BigFloat> {}
impl Coefficient for num_rational::BigRational {}

impl Coefficient for crate::exact::GaussianRational {
    fn mul_slices(a: &[Self], b: &[Self]) -> Vec<Self> {
        if a.len().min(b.len()) < 4 {
            schoolbook(a, b)
        } else {
            crate::zpoly::mul_gaussian(a, b)
        }
    }

    fn exact_div_slices(a: &[Self], b: &[Self]) -> Option<Vec<Self>> {
        if b.len() < 4 {
            let (q, r) = Polynomial::new(a.to_vec()).div_rem(&Polynomial::new(b.to_vec()));
            return r.is_zero().then(|| q.into_coeffs());
        }
        crate::zpoly::div_exact_gaussian(a, b)
    }
}

impl<T: Coefficient> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c:?})")?,
                1 => write!(f, "({c:?})x")?,
                _ => write!(f, "({c:?})x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gint, gq, GaussianRational};

    type QP = Polynomial<GaussianRational>;

    fn p(c: &[i64]) -> QP {
        QP::new(c.iter().map(|&v| gint(v)).collect())
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let a = p(&[1, 2, 0, 0]);
        assert_eq!(a.degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(p(&[0, 0, 3]).valuation(), Some(2));
    }

    #[test]
    fn division_and_remainder() {
        let a = p(&[-1, 0, 0, 1]); // x^3 - 1
        let d = p(&[-1, 1]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q, p(&[1, 1, 1]));
        assert!(r.is_zero());
        assert!(matches!(p(&[1, 0, 1]).exact_div(&d), Err(Error::NonExactDivision)));
    }

    #[test]
    fn euclid_gcd_is_monic() {
        let a = &p(&[1, 1]) * &p(&[2, 3]);
        let b = &p(&[1, 1]) * &p(&[5, 0, 1]);
        assert_eq!(a.gcd_euclid(&b), p(&[1, 1]));
        let g = p(&[2, 4]).gcd_euclid(&p(&[0, 6, 12]));
        assert_eq!(g, QP::new(vec![gq(1, 2, 0, 1), gint(1)]));
    }

    #[test]
    fn derivative_reflect_eval() {
        let a = p(&[1, 2, 3]);
        assert_eq!(a.derivative(), p(&[2, 6]));
        assert_eq!(a.reflect(), p(&[1, -2, 3]));
        let x = gq(1, 2, 1, 1);
        let (v, dv) = a.eval_with_derivative(&x);
        assert_eq!(v, a.eval(&x));
        assert_eq!(dv, a.derivative().eval(&x));
        assert_eq!(a.pow(3), &(&a * &a) * &a);
    }
}

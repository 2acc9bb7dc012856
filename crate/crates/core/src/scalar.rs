//! Scalar abstractions shared by the exact and floating-point layers.
//!
//! [`Field`] is what dense polynomial arithmetic needs and is satisfied by
//! Gaussian rationals as well as complex floats. [`Real`] is the real
//! floating-point type underneath the numerical code; it is implemented for
//! `f64` and for the arbitrary-precision [`BigFloat`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_bigint::{BigInt, Sign};
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};
use rug::float::Constant;
use rug::integer::Order;
use rug::{Float, Integer};

/// Coefficient ring of a dense polynomial. Every implementor used in this
/// crate is a field (division by a nonzero element is exact up to rounding).
pub trait Field: Clone + PartialEq + Num + Neg<Output = Self> + FromPrimitive + fmt::Debug {}

impl<T> Field for T where T: Clone + PartialEq + Num + Neg<Output = T> + FromPrimitive + fmt::Debug {}

/// Real floating-point scalar with an attached working precision.
///
/// Constants produced by `Zero`/`One`/`FromPrimitive` are exact but carry a
/// small precision; binary operations promote to the larger operand
/// precision, so generic code seeds its working precision through
/// [`Real::from_f64_prec`] or [`Real::from_rational`].
pub trait Real:
    Field + PartialOrd + fmt::Display + Send + Sync + 'static
{
    fn prec(&self) -> u32;
    fn from_f64_prec(v: f64, prec: u32) -> Self;
    fn from_rational(q: &BigRational, prec: u32) -> Self;
    /// Re-rounds `self` to `prec` bits (a no-op for fixed-precision types).
    fn set_prec(&self, prec: u32) -> Self;
    fn to_f64(&self) -> f64;
    fn abs(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn cbrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin_cos(&self) -> (Self, Self);
    fn sinh_cosh(&self) -> (Self, Self);
    fn atan2(&self, x: &Self) -> Self;
    fn hypot(&self, other: &Self) -> Self;
    fn pi(prec: u32) -> Self;
    /// `2^e` at the given precision.
    fn pow2(e: i64, prec: u32) -> Self;
    /// base-2 logarithm of `|self|`, `-inf` at zero; never overflows.
    fn log2_abs(&self) -> f64;
    fn is_finite(&self) -> bool;
    fn to_decimal(&self, digits: usize) -> String;
}

impl Real for f64 {
    fn prec(&self) -> u32 {
        53
    }
    fn from_f64_prec(v: f64, _prec: u32) -> Self {
        v
    }
    fn from_rational(q: &BigRational, _prec: u32) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
    fn set_prec(&self, _prec: u32) -> Self {
        *self
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn cbrt(&self) -> Self {
        f64::cbrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin_cos(&self) -> (Self, Self) {
        f64::sin_cos(*self)
    }
    fn sinh_cosh(&self) -> (Self, Self) {
        (f64::sinh(*self), f64::cosh(*self))
    }
    fn atan2(&self, x: &Self) -> Self {
        f64::atan2(*self, *x)
    }
    fn hypot(&self, other: &Self) -> Self {
        f64::hypot(*self, *other)
    }
    fn pi(_prec: u32) -> Self {
        std::f64::consts::PI
    }
    fn pow2(e: i64, _prec: u32) -> Self {
        2f64.powi(e as i32)
    }
    fn log2_abs(&self) -> f64 {
        f64::abs(*self).log2()
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn to_decimal(&self, digits: usize) -> String {
        format!("{:.*e}", digits.saturating_sub(1), self)
    }
}

/// Arbitrary-precision binary float backed by MPFR.
#[derive(Clone)]
pub struct BigFloat(pub Float);

const CONST_PREC: u32 = 64;

impl BigFloat {
    pub fn with_val<T>(prec: u32, v: T) -> Self
    where
        Float: rug::Assign<T>,
    {
        BigFloat(Float::with_val(prec, v))
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    fn join(&self, other: &Self) -> u32 {
        self.0.prec().max(other.0.prec())
    }
}

pub fn bigint_to_integer(b: &BigInt) -> Integer {
    let (sign, digits) = b.to_u64_digits();
    let mut i = Integer::from_digits(&digits, Order::Lsf);
    if sign == Sign::Minus {
        i = -i;
    }
    i
}

pub fn integer_to_bigint(i: &Integer) -> BigInt {
    let digits: Vec<u64> = i.to_digits(Order::Lsf);
    let mag = BigInt::from_slice(
        Sign::Plus,
        &digits
            .iter()
            .flat_map(|d| [*d as u32, (*d >> 32) as u32])
            .collect::<Vec<_>>(),
    );
    if *i < 0 {
        -mag
    } else {
        mag
    }
}

macro_rules! bigfloat_binop {
    ($tr:ident, $f:ident, $atr:ident, $af:ident, $op:tt) => {
        impl $tr for BigFloat {
            type Output = BigFloat;
            fn $f(self, rhs: BigFloat) -> BigFloat {
                let p = self.join(&rhs);
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'a> $tr<&'a BigFloat> for &'a BigFloat {
            type Output = BigFloat;
            fn $f(self, rhs: &'a BigFloat) -> BigFloat {
                let p = self.join(rhs);
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'a> $tr<&'a BigFloat> for BigFloat {
            type Output = BigFloat;
            fn $f(self, rhs: &'a BigFloat) -> BigFloat {
                let p = self.join(rhs);
                BigFloat(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl $atr for BigFloat {
            fn $af(&mut self, rhs: BigFloat) {
                let p = self.join(&rhs);
                self.0 = Float::with_val(p, &self.0 $op &rhs.0);
            }
        }
    };
}

bigfloat_binop!(Add, add, AddAssign, add_assign, +);
bigfloat_binop!(Sub, sub, SubAssign, sub_assign, -);
bigfloat_binop!(Mul, mul, MulAssign, mul_assign, *);
bigfloat_binop!(Div, div, DivAssign, div_assign, /);

impl Rem for BigFloat {
    type Output = BigFloat;
    fn rem(self, rhs: BigFloat) -> BigFloat {
        let p = self.join(&rhs);
        BigFloat(Float::with_val(p, &self.0 % &rhs.0))
    }
}

impl Neg for BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(-self.0)
    }
}

impl<'a> Neg for &'a BigFloat {
    type Output = BigFloat;
    fn neg(self) -> BigFloat {
        BigFloat(Float::with_val(self.0.prec(), -&self.0))
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Zero for BigFloat {
    fn zero() -> Self {
        BigFloat(Float::with_val(CONST_PREC, 0))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for BigFloat {
    fn one() -> Self {
        BigFloat(Float::with_val(CONST_PREC, 1))
    }
}

impl Num for BigFloat {
    type FromStrRadixErr = rug::float::ParseFloatError;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(s, radix as i32)?;
        Ok(BigFloat(Float::with_val(256, parsed)))
    }
}

impl FromPrimitive for BigFloat {
    fn from_i64(n: i64) -> Option<Self> {
        Some(BigFloat(Float::with_val(CONST_PREC, n)))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(BigFloat(Float::with_val(CONST_PREC, n)))
    }
    fn from_f64(n: f64) -> Option<Self> {
        Some(BigFloat(Float::with_val(CONST_PREC, n)))
    }
}

impl fmt::Debug for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(24))
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(24))
    }
}

impl Real for BigFloat {
    fn prec(&self) -> u32 {
        self.0.prec()
    }
    fn from_f64_prec(v: f64, prec: u32) -> Self {
        BigFloat(Float::with_val(prec, v))
    }
    fn from_rational(q: &BigRational, prec: u32) -> Self {
        let num = bigint_to_integer(q.numer());
        let den = bigint_to_integer(q.denom());
        // exact integers first, one rounding in the division
        let n = Float::with_val(num.significant_bits().max(1), &num);
        let d = Float::with_val(den.significant_bits().max(1), &den);
        BigFloat(Float::with_val(prec, &n / &d))
    }
    fn set_prec(&self, prec: u32) -> Self {
        BigFloat(Float::with_val(prec, &self.0))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn abs(&self) -> Self {
        BigFloat(self.0.clone().abs())
    }
    fn sqrt(&self) -> Self {
        BigFloat(self.0.clone().sqrt())
    }
    fn cbrt(&self) -> Self {
        BigFloat(self.0.clone().cbrt())
    }
    fn exp(&self) -> Self {
        BigFloat(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        BigFloat(self.0.clone().ln())
    }
    fn sin_cos(&self) -> (Self, Self) {
        let (s, c) = self.0.clone().sin_cos(Float::new(self.0.prec()));
        (BigFloat(s), BigFloat(c))
    }
    fn sinh_cosh(&self) -> (Self, Self) {
        let (s, c) = self.0.clone().sinh_cosh(Float::new(self.0.prec()));
        (BigFloat(s), BigFloat(c))
    }
    fn atan2(&self, x: &Self) -> Self {
        let p = self.join(x);
        BigFloat(Float::with_val(p, &self.0).atan2(&x.0))
    }
    fn hypot(&self, other: &Self) -> Self {
        let p = self.join(other);
        BigFloat(Float::with_val(p, &self.0).hypot(&other.0))
    }
    fn pi(prec: u32) -> Self {
        BigFloat(Float::with_val(prec, Constant::Pi))
    }
    fn pow2(e: i64, prec: u32) -> Self {
        let mut f = Float::with_val(prec, 1);
        f <<= e as i32;
        BigFloat(f)
    }
    fn log2_abs(&self) -> f64 {
        if self.0.is_zero() {
            return f64::NEG_INFINITY;
        }
        let (m, e) = self.0.to_f64_exp();
        m.abs().log2() + e as f64
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn to_decimal(&self, digits: usize) -> String {
        if self.0.is_zero() {
            return "0".to_string();
        }
        let s = self.0.to_string_radix(10, Some(digits.max(2)));
        normalize_exponent(&s)
    }
}

fn normalize_exponent(s: &str) -> String {
    // MPFR prints "1.2345e-7"; keep that but drop a trailing "e0".
    match s.split_once('e') {
        Some((m, "0")) => m.to_string(),
        _ => s.to_string(),
    }
}

/// Complex helpers over a [`Real`].
pub mod cplx {
    use super::*;

    pub fn from_f64<R: Real>(re: f64, im: f64, prec: u32) -> Complex<R> {
        Complex::new(R::from_f64_prec(re, prec), R::from_f64_prec(im, prec))
    }

    pub fn zero<R: Real>(prec: u32) -> Complex<R> {
        from_f64(0.0, 0.0, prec)
    }

    pub fn abs<R: Real>(z: &Complex<R>) -> R {
        z.re.hypot(&z.im)
    }

    pub fn arg<R: Real>(z: &Complex<R>) -> R {
        z.im.atan2(&z.re)
    }

    pub fn log2_abs<R: Real>(z: &Complex<R>) -> f64 {
        let a = z.re.log2_abs();
        let b = z.im.log2_abs();
        let m = a.max(b);
        if m == f64::NEG_INFINITY {
            return m;
        }
        m + 0.5 * (1.0 + 2f64.powf(2.0 * (a.min(b) - m))).log2()
    }

    pub fn set_prec<R: Real>(z: &Complex<R>, prec: u32) -> Complex<R> {
        Complex::new(z.re.set_prec(prec), z.im.set_prec(prec))
    }

    /// Principal square root (branch cut on the negative real axis,
    /// `Re(sqrt) >= 0`).
    pub fn sqrt<R: Real>(z: &Complex<R>) -> Complex<R> {
        let zero = R::zero();
        if z.re.is_zero() && z.im.is_zero() {
            return z.clone();
        }
        let r = abs(z);
        let two = R::from_f64_prec(2.0, z.re.prec().max(z.im.prec()));
        if z.re >= zero {
            let t = ((r + z.re.clone()) / two.clone()).sqrt();
            let im = z.im.clone() / (two * t.clone());
            Complex::new(t, im)
        } else {
            let t = ((r - z.re.clone()) / two.clone()).sqrt();
            let t = if z.im < zero { -t } else { t };
            let re = z.im.clone() / (two * t.clone());
            Complex::new(re, t)
        }
    }

    pub fn exp<R: Real>(z: &Complex<R>) -> Complex<R> {
        let m = z.re.exp();
        let (s, c) = z.im.sin_cos();
        Complex::new(m.clone() * c, m * s)
    }

    pub fn to_f64<R: Real>(z: &Complex<R>) -> Complex<f64> {
        Complex::new(z.re.to_f64(), z.im.to_f64())
    }
}

/// Arbitrary-precision complex number.
pub type BigComplex = Complex<BigFloat>;

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn precision_promotes_to_larger_operand() {
        let a = BigFloat::from_f64_prec(1.0, 256);
        let b = BigFloat::from_f64_prec(3.0, 64);
        let q = a / b;
        assert_eq!(q.prec(), 256);
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        let exact = BigFloat::from_rational(&third, 256);
        assert_eq!(q, exact);
    }

    #[test]
    fn bigint_roundtrip() {
        let b: BigInt = "-123456789012345678901234567890123456789".parse().unwrap();
        assert_eq!(integer_to_bigint(&bigint_to_integer(&b)), b);
        assert_eq!(integer_to_bigint(&bigint_to_integer(&BigInt::zero())), BigInt::zero());
    }

    #[test]
    fn principal_sqrt_branch() {
        let z: Complex<BigFloat> = cplx::from_f64(-4.0, -0.0, 128);
        let s = cplx::sqrt(&z);
        assert!((s.re.to_f64()).abs() < 1e-30);
        assert!((s.im.to_f64() - 2.0).abs() < 1e-30 || (s.im.to_f64() + 2.0).abs() < 1e-30);
        let w: Complex<f64> = Complex::new(-1.0, -1e-300);
        assert!(cplx::sqrt(&w).im < 0.0);
        let v: Complex<f64> = Complex::new(3.0, 4.0);
        let r = cplx::sqrt(&v);
        assert!((r.re - 2.0).abs() < 1e-15 && (r.im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn log2_abs_handles_huge_values() {
        let big = BigFloat::pow2(5000, 128);
        assert!((big.log2_abs() - 5000.0).abs() < 1e-9);
        let z = Complex::new(big.clone(), big);
        assert!((cplx::log2_abs(&z) - 5000.5).abs() < 1e-9);
    }
}

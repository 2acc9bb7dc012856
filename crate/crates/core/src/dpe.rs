//! Double-precision mantissa with a 64-bit binary exponent.
//!
//! Used for the cheap first phase of root finding, where polynomial values
//! overflow `f64` long before they lose relative accuracy.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Zero};

use crate::scalar::{bigint_to_integer, Real};

/// `m * 2^e` with `0.5 <= |m| < 1`, or `m = 0, e = 0`.
#[derive(Clone, Copy)]
pub struct Dpe {
    m: f64,
    e: i64,
}

fn frexp(x: f64) -> (f64, i64) {
    if x == 0.0 || !x.is_finite() {
        return (x, 0);
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    if exp == 0 {
        let (m, e) = frexp(x * 2f64.powi(64));
        return (m, e - 64);
    }
    let m = f64::from_bits((bits & !(0x7ffu64 << 52)) | (1022u64 << 52));
    (m, exp - 1022)
}

fn ldexp(m: f64, e: i64) -> f64 {
    if m == 0.0 {
        return 0.0;
    }
    if e > 1100 {
        return m.signum() * f64::INFINITY;
    }
    if e < -1100 {
        return 0.0 * m.signum();
    }
    // two steps keep intermediate powers representable
    let h = e / 2;
    m * 2f64.powi(h as i32) * 2f64.powi((e - h) as i32)
}

impl Dpe {
    pub fn new(m: f64, e: i64) -> Self {
        let (mm, ee) = frexp(m);
        if mm == 0.0 || !mm.is_finite() {
            return Dpe { m: mm, e: 0 };
        }
        Dpe { m: mm, e: e + ee }
    }

    pub fn from_f64(x: f64) -> Self {
        Self::new(x, 0)
    }

    pub fn mantissa(&self) -> f64 {
        self.m
    }

    pub fn exponent(&self) -> i64 {
        self.e
    }

    /// Exact conversion to an MPFR float.
    pub fn to_float(&self, prec: u32) -> rug::Float {
        let mut f = rug::Float::with_val(prec.max(53), self.m);
        if self.m != 0.0 && self.m.is_finite() {
            f <<= self.e as i32;
        }
        f
    }

    pub fn from_float(f: &rug::Float) -> Self {
        if f.is_zero() || !f.is_finite() {
            return Dpe::from_f64(f.to_f64());
        }
        let (m, e) = f.to_f64_exp();
        Dpe::new(m, e as i64)
    }
}

impl Add for Dpe {
    type Output = Dpe;
    fn add(self, o: Dpe) -> Dpe {
        if self.m == 0.0 {
            return o;
        }
        if o.m == 0.0 {
            return self;
        }
        let (big, small) = if self.e >= o.e { (self, o) } else { (o, self) };
        let shift = big.e - small.e;
        if shift > 64 {
            return big;
        }
        Dpe::new(big.m + ldexp(small.m, -shift), big.e)
    }
}

impl Sub for Dpe {
    type Output = Dpe;
    fn sub(self, o: Dpe) -> Dpe {
        self + (-o)
    }
}

impl Mul for Dpe {
    type Output = Dpe;
    fn mul(self, o: Dpe) -> Dpe {
        Dpe::new(self.m * o.m, self.e + o.e)
    }
}

impl Div for Dpe {
    type Output = Dpe;
    fn div(self, o: Dpe) -> Dpe {
        Dpe::new(self.m / o.m, self.e - o.e)
    }
}

impl Rem for Dpe {
    type Output = Dpe;
    fn rem(self, o: Dpe) -> Dpe {
        let q = (self / o).to_f64().trunc();
        self - o * Dpe::from_f64(q)
    }
}

impl Neg for Dpe {
    type Output = Dpe;
    fn neg(self) -> Dpe {
        Dpe { m: -self.m, e: self.e }
    }
}

impl PartialEq for Dpe {
    fn eq(&self, o: &Dpe) -> bool {
        self.m == o.m && (self.e == o.e || self.m == 0.0)
    }
}

impl PartialOrd for Dpe {
    fn partial_cmp(&self, o: &Dpe) -> Option<Ordering> {
        if self.m.is_nan() || o.m.is_nan() {
            return None;
        }
        let sa = self.m.partial_cmp(&0.0)?;
        let sb = o.m.partial_cmp(&0.0)?;
        if sa != sb {
            return Some(sa.cmp(&sb));
        }
        if sa == Ordering::Equal {
            return Some(Ordering::Equal);
        }
        if self.m.is_infinite() || o.m.is_infinite() || self.e == o.e {
            return self.m.partial_cmp(&o.m);
        }
        let by_exp = self.e.cmp(&o.e);
        Some(if sa == Ordering::Greater { by_exp } else { by_exp.reverse() })
    }
}

impl Zero for Dpe {
    fn zero() -> Self {
        Dpe { m: 0.0, e: 0 }
    }
    fn is_zero(&self) -> bool {
        self.m == 0.0
    }
}

impl One for Dpe {
    fn one() -> Self {
        Dpe::from_f64(1.0)
    }
}

impl Num for Dpe {
    type FromStrRadixErr = std::num::ParseFloatError;
    fn from_str_radix(s: &str, _radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        s.parse::<f64>().map(Dpe::from_f64)
    }
}

impl FromPrimitive for Dpe {
    fn from_i64(n: i64) -> Option<Self> {
        Some(Dpe::from_f64(n as f64))
    }
    fn from_u64(n: u64) -> Option<Self> {
        Some(Dpe::from_f64(n as f64))
    }
    fn from_f64(n: f64) -> Option<Self> {
        Some(Dpe::from_f64(n))
    }
}

impl fmt::Debug for Dpe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(17))
    }
}

impl fmt::Display for Dpe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(17))
    }
}

impl Real for Dpe {
    fn prec(&self) -> u32 {
        53
    }
    fn from_f64_prec(v: f64, _prec: u32) -> Self {
        Dpe::from_f64(v)
    }
    fn from_rational(q: &BigRational, _prec: u32) -> Self {
        let n = bigint_to_integer(q.numer());
        let d = bigint_to_integer(q.denom());
        if n == 0 {
            return Dpe::zero();
        }
        let (mn, en) = n.to_f64_exp();
        let (md, ed) = d.to_f64_exp();
        Dpe::new(mn / md, en as i64 - ed as i64)
    }
    fn set_prec(&self, _prec: u32) -> Self {
        *self
    }
    fn to_f64(&self) -> f64 {
        ldexp(self.m, self.e)
    }
    fn abs(&self) -> Self {
        Dpe { m: self.m.abs(), e: self.e }
    }
    fn sqrt(&self) -> Self {
        if self.e % 2 == 0 {
            Dpe::new(self.m.sqrt(), self.e / 2)
        } else {
            Dpe::new((2.0 * self.m).sqrt(), (self.e - 1) / 2)
        }
    }
    fn cbrt(&self) -> Self {
        let r = self.e.rem_euclid(3);
        Dpe::new((self.m * 2f64.powi(r as i32)).cbrt(), (self.e - r) / 3)
    }
    fn exp(&self) -> Self {
        let x = self.to_f64();
        let t = x * std::f64::consts::LOG2_E;
        if !t.is_finite() {
            return Dpe::from_f64(x.exp());
        }
        let k = t.floor();
        Dpe::new((t - k).exp2(), k as i64)
    }
    fn ln(&self) -> Self {
        Dpe::from_f64(self.m.ln() + self.e as f64 * std::f64::consts::LN_2)
    }
    fn sin_cos(&self) -> (Self, Self) {
        let (s, c) = self.to_f64().sin_cos();
        (Dpe::from_f64(s), Dpe::from_f64(c))
    }
    fn sinh_cosh(&self) -> (Self, Self) {
        let x = self.to_f64();
        (Dpe::from_f64(x.sinh()), Dpe::from_f64(x.cosh()))
    }
    fn atan2(&self, x: &Self) -> Self {
        if self.m == 0.0 || x.m == 0.0 {
            return Dpe::from_f64(self.m.atan2(x.m));
        }
        let e = self.e.max(x.e);
        Dpe::from_f64(ldexp(self.m, self.e - e).atan2(ldexp(x.m, x.e - e)))
    }
    fn hypot(&self, o: &Self) -> Self {
        if self.m == 0.0 {
            return o.abs();
        }
        if o.m == 0.0 {
            return self.abs();
        }
        let e = self.e.max(o.e);
        Dpe::new(ldexp(self.m, self.e - e).hypot(ldexp(o.m, o.e - e)), e)
    }
    fn pi(_prec: u32) -> Self {
        Dpe::from_f64(std::f64::consts::PI)
    }
    fn pow2(e: i64, _prec: u32) -> Self {
        Dpe { m: 0.5, e: e + 1 }
    }
    fn log2_abs(&self) -> f64 {
        if self.m == 0.0 {
            return f64::NEG_INFINITY;
        }
        self.m.abs().log2() + self.e as f64
    }
    fn is_finite(&self) -> bool {
        self.m.is_finite()
    }
    fn to_decimal(&self, digits: usize) -> String {
        if self.m == 0.0 || !self.m.is_finite() {
            return format!("{}", self.m);
        }
        let l10 = self.log2_abs() * std::f64::consts::LOG10_2;
        let k = l10.floor();
        let mant = 10f64.powf(l10 - k) * self.m.signum();
        format!("{:.*}e{}", digits.saturating_sub(1), mant, k as i64)
    }
}

//! Reduced rational functions over Q(i).

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{gint, GaussianRational};
use crate::modgcd;
use crate::poly::Polynomial;
use crate::zpoly::ZiPoly;

pub type QPoly = Polynomial<GaussianRational>;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
///
/// Equality is structural, which for this canonical form is equality as
/// functions.
#[derive(Clone, PartialEq)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
}

impl RationalFunction {
    /// Reduces `num / den` to canonical form.
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidArgument("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = modgcd::gcd(&num, &den);
            if g.is_constant() {
                (num, den)
            } else {
                (num.exact_div(&g)?, den.exact_div(&g)?)
            }
        };
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            return Ok(RationalFunction { num, den });
        }
        let inv = GaussianRational::one() / lc;
        Ok(RationalFunction { num: num.scale(&inv), den: den.scale(&inv) })
    }

    /// Trusts the caller that `num / den` is already canonical.
    pub fn from_canonical(num: QPoly, den: QPoly) -> Self {
        debug_assert!(den.leading().is_some_and(|c| c.is_one()));
        RationalFunction { num, den }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RationalFunction { num: p, den: QPoly::one() }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::from_poly(QPoly::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(QPoly::zero())
    }

    pub fn one() -> Self {
        Self::constant(gint(1))
    }

    pub fn x() -> Self {
        Self::from_poly(QPoly::x())
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The constant value when the function is constant.
    pub fn as_constant(&self) -> Option<GaussianRational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn derivative(&self) -> Self {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::InvalidArgument("reciprocal of zero".into()));
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        if o.is_zero() {
            return Err(Error::InvalidArgument("division by zero function".into()));
        }
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone()).expect("nonzero denominator");
        }
        let n = &(&self.num * &o.den) + &(&o.num * &self.den);
        Self::new(n, &self.den * &o.den).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        RationalFunction { num: self.num.scale(c), den: self.den.clone() }
    }

    /// `f(-x)`
    pub fn reflect(&self) -> Self {
        Self::new(self.num.reflect(), self.den.reflect()).expect("nonzero denominator")
    }

    /// Exact value at a point; `None` at a pole.
    pub fn eval_exact(&self, x: &GaussianRational) -> Option<GaussianRational> {
        let d = eval_poly_exact(&self.den, x);
        if d.is_zero() {
            return None;
        }
        Some(eval_poly_exact(&self.num, x) / d)
    }

    /// Equality as functions by cross-multiplication, without reduction.
    pub fn same_function(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

/// Exact polynomial value, homogenized so the Horner loop runs on integers.
pub fn eval_poly_exact(p: &QPoly, x: &GaussianRational) -> GaussianRational {
    if p.degree().is_none_or(|d| d < 8) {
        return p.eval(x);
    }
    ZiPoly::from_coeffs(p.coeffs()).eval_exact(x)
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] / [{:?}]", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gq;

    fn p(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&v| gint(v)).collect())
    }

    #[test]
    fn canonical_form() {
        let f = RationalFunction::new(&p(&[2, 2]) * &p(&[0, 3]), &p(&[3, 3]) * &p(&[5, 0, 2])).unwrap();
        assert_eq!(f.den(), &QPoly::new(vec![gq(5, 2, 0, 1), gint(0), gint(1)]));
        assert_eq!(f.num(), &QPoly::new(vec![gint(0), gint(1)]));
    }

    #[test]
    fn derivative_and_arithmetic() {
        let x = RationalFunction::x();
        let f = RationalFunction::new(p(&[1]), p(&[1, 1])).unwrap();
        let df = f.derivative();
        let want = RationalFunction::new(p(&[-1]), p(&[1, 2, 1])).unwrap();
        assert_eq!(df, want);
        let g = f.mul(&x).add(&f);
        assert_eq!(g, RationalFunction::one());
        assert!(g.same_function(&RationalFunction::one()));
        assert_eq!(f.eval_exact(&gint(-1)), None);
        assert_eq!(f.eval_exact(&gint(1)), Some(gq(1, 2, 0, 1)));
    }
}

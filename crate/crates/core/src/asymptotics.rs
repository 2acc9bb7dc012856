//! Large-`n` scaling: the quartic `P(p; y0, C)`, its equilibria and double
//! root factorization, the outer limit `i p0+(y)` and plane transforms.
//!
//! Exact mode works over Gaussian rationals and float mode over big
//! complex numbers; both share the generic code below.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{format_gr, GaussianRational};
use crate::fpoly::to_complex;
use crate::poly::{Coefficient, Polynomial};
use crate::scalar::{cplx, BigComplex, BigFloat, Real};
use crate::umemura::{build_u, eval_u};

/// Real scalars whose complex numbers can carry a quartic.
pub trait QuarticScalar: Clone + Num + std::ops::Neg<Output = Self> + fmt::Debug + PartialEq
where
    Complex<Self>: Coefficient,
{
}

impl<R> QuarticScalar for R
where
    R: Clone + Num + std::ops::Neg<Output = R> + fmt::Debug + PartialEq,
    Complex<R>: Coefficient,
{
}

fn small<R: QuarticScalar>(num: i64, den: i64) -> Complex<R>
where
    Complex<R>: Coefficient,
{
    let mut n = R::zero();
    for _ in 0..num.abs() {
        n = n + R::one();
    }
    if num < 0 {
        n = -n;
    }
    let mut d = R::zero();
    for _ in 0..den {
        d = d + R::one();
    }
    Complex::new(n / d, R::zero())
}

/// `P(p) = -(y0^2/4) p^4 + (i y0/2) p^3 + C p^2 + (i y0/2) p - y0^2/4`.
#[derive(Clone, Debug, PartialEq)]
pub struct Quartic<R: QuarticScalar>
where
    Complex<R>: Coefficient,
{
    pub y0: Complex<R>,
    pub c: Complex<R>,
}

impl<R: QuarticScalar> Quartic<R>
where
    Complex<R>: Coefficient,
{
    pub fn new(y0: Complex<R>, c: Complex<R>) -> Self {
        Quartic { y0, c }
    }

    /// Coefficients, constant term first.
    pub fn coeffs(&self) -> [Complex<R>; 5] {
        let y2 = self.y0.clone() * self.y0.clone();
        let outer = -(y2 * small::<R>(1, 4));
        let mid = Complex::<R>::i() * self.y0.clone() * small::<R>(1, 2);
        [outer.clone(), mid.clone(), self.c.clone(), mid, outer]
    }

    pub fn poly(&self) -> Polynomial<Complex<R>> {
        Polynomial::new(self.coeffs().to_vec())
    }

    /// The reversed coefficient list is a scalar multiple of the original
    /// (the multiple is 1), so the roots are closed under `p -> 1/p`.
    pub fn reversal_symmetric(&self) -> bool {
        let c = self.coeffs();
        let mut r = c.clone();
        r.reverse();
        c == r
    }
}

/// `y0 p^4 - i p^3 + i p - y0`, zero at every equilibrium.
pub fn equilibrium_residual<R: QuarticScalar>(y0: &Complex<R>, p: &Complex<R>) -> Complex<R>
where
    Complex<R>: Coefficient,
{
    let i = Complex::<R>::i();
    let p2 = p.clone() * p.clone();
    let p3 = p2.clone() * p.clone();
    let p4 = p3.clone() * p.clone();
    y0.clone() * p4 - i.clone() * p3 + i * p.clone() - y0.clone()
}

/// `{1, -1, p0+, p0-}`.
#[derive(Clone, Debug)]
pub struct EquilibriumSet<R: QuarticScalar>
where
    Complex<R>: Coefficient,
{
    pub y0: Complex<R>,
    pub values: [Complex<R>; 4],
    /// `1/(4 y0^2) + 1 = 0`: `p0+ = p0-`.
    pub degenerate: bool,
}

impl<R: QuarticScalar> EquilibriumSet<R>
where
    Complex<R>: Coefficient,
{
    pub fn p_plus(&self) -> &Complex<R> {
        &self.values[2]
    }

    pub fn p_minus(&self) -> &Complex<R> {
        &self.values[3]
    }
}

fn disc<R: QuarticScalar>(y0: &Complex<R>) -> Complex<R>
where
    Complex<R>: Coefficient,
{
    let four_y2 = y0.clone() * y0.clone() * small::<R>(4, 1);
    Complex::<R>::one() / four_y2 + Complex::<R>::one()
}

fn assemble<R: QuarticScalar>(y0: &Complex<R>, root: Complex<R>, degenerate: bool) -> EquilibriumSet<R>
where
    Complex<R>: Coefficient,
{
    let i = Complex::<R>::i();
    let base = i.clone() / (y0.clone() * small::<R>(2, 1));
    let shift = i * root;
    EquilibriumSet {
        y0: y0.clone(),
        values: [
            Complex::one(),
            -Complex::<R>::one(),
            base.clone() - shift.clone(),
            base + shift,
        ],
        degenerate,
    }
}

/// Float equilibria with the principal square root.
pub fn equilibria(y0: &BigComplex, prec: u32) -> Result<EquilibriumSet<BigFloat>> {
    if y0.re.is_zero() && y0.im.is_zero() {
        return Err(Error::InvalidArgument("equilibria need y0 != 0".into()));
    }
    let y0 = cplx::set_prec(y0, prec);
    let d = disc(&y0);
    let scale = cplx::abs(&(d.clone() - Complex::one())).set_prec(64) + BigFloat::from_f64_prec(1.0, 64);
    let degenerate = cplx::log2_abs(&d) <= scale.log2_abs() - prec as f64 + 8.0;
    let root = if degenerate { cplx::zero(prec) } else { cplx::sqrt(&d) };
    Ok(assemble(&y0, root, degenerate))
}

fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}

/// Principal square root of a Gaussian rational when it is one.
pub fn exact_sqrt(z: &GaussianRational) -> Option<GaussianRational> {
    if z.is_zero() {
        return Some(z.clone());
    }
    let norm = rational_sqrt(&(z.re.clone() * z.re.clone() + z.im.clone() * z.im.clone()))?;
    let two = BigRational::from_integer(BigInt::from(2));
    let re = rational_sqrt(&((norm.clone() + z.re.clone()) / two.clone()))?;
    let mut im = rational_sqrt(&((norm - z.re.clone()) / two))?;
    if z.im.is_negative() {
        im = -im;
    }
    Some(Complex::new(re, im))
}

/// Exact equilibria; the discriminant must be a square in `Q(i)`.
pub fn equilibria_exact(y0: &GaussianRational) -> Result<EquilibriumSet<BigRational>> {
    if y0.is_zero() {
        return Err(Error::InvalidArgument("equilibria need y0 != 0".into()));
    }
    let d = disc(y0);
    let root = exact_sqrt(&d).ok_or_else(|| {
        Error::InvalidArgument(format!("1/(4 y0^2) + 1 = {} is not a square in Q(i)", format_gr(&d)))
    })?;
    let degenerate = d.is_zero();
    Ok(assemble(y0, root, degenerate))
}

/// `C = -i y0/(4 p0) - 3 i y0 p0/4 + y0^2 p0^2/2`.
pub fn c_of<R: QuarticScalar>(y0: &Complex<R>, p0: &Complex<R>) -> Result<Complex<R>>
where
    Complex<R>: Coefficient,
{
    if p0.is_zero() {
        return Err(Error::ZeroP0);
    }
    let i = Complex::<R>::i();
    let t1 = i.clone() * y0.clone() / (p0.clone() * small::<R>(4, 1));
    let t2 = i * y0.clone() * p0.clone() * small::<R>(3, 4);
    let t3 = y0.clone() * y0.clone() * p0.clone() * p0.clone() * small::<R>(1, 2);
    Ok(t3 - t1 - t2)
}

/// `P = -(y0^2/4)(p - p0)^2 (p^2 + b p + c)` for an equilibrium `p0`.
#[derive(Clone, Debug)]
pub struct Factorization<R: QuarticScalar>
where
    Complex<R>: Coefficient,
{
    pub quartic: Quartic<R>,
    pub p0: Complex<R>,
    pub b: Complex<R>,
    pub c: Complex<R>,
}

impl<R: QuarticScalar> Factorization<R>
where
    Complex<R>: Coefficient,
{
    pub fn new(y0: &Complex<R>, p0: &Complex<R>) -> Result<Self> {
        let cc = c_of(y0, p0)?;
        let i = Complex::<R>::i();
        let b = p0.clone() * small::<R>(2, 1) - i * small::<R>(2, 1) / y0.clone();
        let c = Complex::<R>::one() / (p0.clone() * p0.clone());
        Ok(Factorization { quartic: Quartic::new(y0.clone(), cc), p0: p0.clone(), b, c })
    }

    /// The factored form multiplied out.
    pub fn expanded(&self) -> Polynomial<Complex<R>> {
        let y0 = &self.quartic.y0;
        let lead = -(y0.clone() * y0.clone() * small::<R>(1, 4));
        let lin = Polynomial::new(vec![-self.p0.clone(), Complex::one()]);
        let quad = Polynomial::new(vec![self.c.clone(), self.b.clone(), Complex::one()]);
        (&(&lin * &lin) * &quad).scale(&lead)
    }

    /// `expanded() - quartic.poly()`.
    pub fn defect(&self) -> Polynomial<Complex<R>> {
        &self.expanded() - &self.quartic.poly()
    }

    /// `(p - p0)^4` times the leading constant.
    pub fn is_fourth_power(&self) -> bool {
        let l = Polynomial::new(vec![-self.p0.clone(), Complex::one()]);
        let y0 = &self.quartic.y0;
        let lead = -(y0.clone() * y0.clone() * small::<R>(1, 4));
        self.expanded() == l.pow(4).scale(&lead)
    }
}

/// `i p0+(y)`, the conjectured limit of `u_n(n y; m)` outside the eye.
pub fn outer_limit(y: &BigComplex, prec: u32) -> Result<BigComplex> {
    let eq = equilibria(y, prec)?;
    if eq.degenerate {
        return Err(Error::BranchPoint(format!("{}{:+}i", y.re.to_decimal(12), y.im.to_f64())));
    }
    let p = eq.p_plus();
    Ok(Complex::new(-p.im.clone(), p.re.clone()))
}

#[derive(Clone, Debug)]
pub struct ProbeRow {
    pub n: i64,
    pub value: BigComplex,
    pub limit: BigComplex,
    pub err: BigFloat,
}

/// `|u_n(n y; m) - i p0+(y)|` for each `n`.
pub fn convergence_probe(m: &GaussianRational, y: &GaussianRational, n_list: &[i64], prec: u32) -> Result<Vec<ProbeRow>> {
    if y.re.is_zero() {
        return Err(Error::InvalidArgument("probe points on the imaginary axis are not supported".into()));
    }
    let limit = outer_limit(&to_complex::<BigFloat>(y, prec), prec)?;
    n_list
        .iter()
        .map(|&n| {
            let u = build_u(n, m)?;
            let x = y.clone() * Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero());
            let value = eval_u(&u, &to_complex::<BigFloat>(&x, prec), prec)?;
            let err = cplx::abs(&(value.clone() - limit.clone()));
            Ok(ProbeRow { n, value, limit: limit.clone(), err })
        })
        .collect()
}

/// Coordinates in which maps can be drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Plane {
    X,
    Y,
    W,
    XiPlus,
    XiMinus,
    Z,
}

impl Plane {
    pub const ALL: [Plane; 6] = [Plane::X, Plane::Y, Plane::W, Plane::XiPlus, Plane::XiMinus, Plane::Z];

    pub fn name(self) -> &'static str {
        match self {
            Plane::X => "x",
            Plane::Y => "y",
            Plane::W => "w",
            Plane::XiPlus => "xiPlus",
            Plane::XiMinus => "xiMinus",
            Plane::Z => "z",
        }
    }
}

impl fmt::Display for Plane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Plane {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Plane::ALL.iter().copied().find(|p| p.name() == s).ok_or_else(|| Error::InvalidPlane(s.to_string()))
    }
}

/// Maps a point of the `x` plane into `plane` for index `n`.
pub fn plane_transform(x: &BigComplex, plane: Plane, n: i64, y0: Option<&BigComplex>) -> Result<BigComplex> {
    if n < 1 {
        return Err(Error::InvalidArgument(format!("plane transforms need n >= 1, got {n}")));
    }
    let prec = x.re.prec().max(x.im.prec());
    let nf = BigFloat::from_f64_prec(n as f64, prec);
    let scale = |z: BigComplex, s: &BigFloat| Complex::new(z.re * s.clone(), z.im * s.clone());
    Ok(match plane {
        Plane::X => x.clone(),
        Plane::Y => {
            let inv = BigFloat::from_f64_prec(1.0, prec) / nf;
            scale(x.clone(), &inv)
        }
        Plane::W => {
            let y0 = y0.ok_or_else(|| Error::InvalidArgument("plane w needs y0".into()))?;
            x.clone() - scale(cplx::set_prec(y0, prec), &nf)
        }
        Plane::XiPlus | Plane::XiMinus => {
            // (-+ i x - n/2) / (n/32)^(1/3)
            let ix = Complex::new(-x.im.clone(), x.re.clone());
            let t = if plane == Plane::XiPlus { -ix } else { ix };
            let half_n = nf.clone() / BigFloat::from_f64_prec(2.0, prec);
            let denom = (nf / BigFloat::from_f64_prec(32.0, prec)).cbrt();
            let shifted = Complex::new(t.re - half_n, t.im);
            scale(shifted, &(BigFloat::from_f64_prec(1.0, prec) / denom))
        }
        Plane::Z => scale(x.clone(), &nf),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gint, gq};

    #[test]
    fn corner_is_a_fourth_power() {
        let y0 = gq(0, 1, 1, 2);
        let eq = equilibria_exact(&y0).unwrap();
        assert!(eq.degenerate);
        assert_eq!(eq.p_plus(), &gint(1));
        assert_eq!(eq.p_minus(), &gint(1));
        let f = Factorization::new(&y0, &gint(1)).unwrap();
        assert_eq!(f.b, gint(-2));
        assert_eq!(f.c, gint(1));
        assert!(f.defect().is_zero());
        assert!(f.is_fourth_power());
    }

    #[test]
    fn exact_equilibria_at_a_square_discriminant() {
        // 1/(4 y0^2) + 1 = 25/16
        let y0 = gq(2, 3, 0, 1);
        let eq = equilibria_exact(&y0).unwrap();
        for p in &eq.values {
            assert!(equilibrium_residual(&y0, p).is_zero());
            let f = Factorization::new(&y0, p).unwrap();
            assert!(f.defect().is_zero());
            assert!(f.quartic.reversal_symmetric());
        }
        assert_eq!(eq.p_plus().clone() * eq.p_minus().clone(), gint(1));
    }

    #[test]
    fn float_equilibria_and_limit() {
        let y0: BigComplex = cplx::from_f64(2.0, 0.0, 128);
        let eq = equilibria(&y0, 128).unwrap();
        for p in &eq.values {
            assert!(cplx::log2_abs(&equilibrium_residual(&y0, p)) < -83.0);
        }
        let big: BigComplex = cplx::from_f64(1e12, 0.0, 128);
        let v = outer_limit(&big, 128).unwrap();
        assert!((v.re.to_f64() - 1.0).abs() < 1e-10 && v.im.to_f64().abs() < 1e-10);
        let corner: BigComplex = cplx::from_f64(0.0, 0.5, 128);
        assert!(matches!(outer_limit(&corner, 128), Err(Error::BranchPoint(_))));
    }

    #[test]
    fn planes() {
        let n = 20;
        let x: BigComplex = cplx::from_f64(0.0, 10.0, 128);
        let xi = plane_transform(&x, Plane::XiPlus, n, None).unwrap();
        assert!(cplx::log2_abs(&xi) < -120.0);
        let one: BigComplex = cplx::from_f64(1.0, 0.0, 128);
        assert_eq!(plane_transform(&one, Plane::Z, n, None).unwrap().re.to_f64(), 20.0);
        let y0: BigComplex = cplx::from_f64(0.3, 0.1, 128);
        let x = Complex::new(y0.re.clone() * BigFloat::from_f64_prec(20.0, 128), y0.im.clone() * BigFloat::from_f64_prec(20.0, 128));
        assert!(cplx::log2_abs(&plane_transform(&x, Plane::W, n, Some(&y0)).unwrap()) < -100.0);
        assert!(matches!("q".parse::<Plane>(), Err(Error::InvalidPlane(_))));
    }
}

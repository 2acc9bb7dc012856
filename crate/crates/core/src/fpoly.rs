//! Floating-point images of exact polynomials with running error bounds.

use num_complex::Complex;

use crate::exact::GaussianRational;
use crate::poly::Polynomial;
use crate::scalar::{cplx, Real};

pub fn to_complex<R: Real>(z: &GaussianRational, prec: u32) -> Complex<R> {
    Complex::new(R::from_rational(&z.re, prec), R::from_rational(&z.im, prec))
}

/// Polynomial with complex float coefficients, lowest degree first, plus
/// coefficient magnitudes for a posteriori Horner error bounds.
#[derive(Clone, Debug)]
pub struct FloatPoly<R: Real> {
    pub coeffs: Vec<Complex<R>>,
    abs: Vec<R>,
    prec: u32,
}

/// Value with an absolute error bound.
#[derive(Clone, Debug)]
pub struct Bounded<R: Real> {
    pub value: Complex<R>,
    pub err: R,
}

impl<R: Real> FloatPoly<R> {
    pub fn from_exact(p: &Polynomial<GaussianRational>, prec: u32) -> Self {
        Self::from_coeffs(p.coeffs().iter().map(|c| to_complex(c, prec)).collect(), prec)
    }

    pub fn from_coeffs(coeffs: Vec<Complex<R>>, prec: u32) -> Self {
        let abs = coeffs.iter().map(cplx::abs).collect();
        FloatPoly { coeffs, abs, prec }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    /// Unit roundoff of the working precision (one extra bit of slack).
    pub fn unit(&self) -> R {
        R::pow2(1 - self.prec as i64, 64)
    }

    pub fn max_abs_coeff(&self) -> R {
        let mut m = R::from_f64_prec(0.0, 64);
        for a in &self.abs {
            if *a > m {
                m = a.clone();
            }
        }
        m
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * R::from_f64_prec(k as f64, self.prec))
            .collect();
        Self::from_coeffs(c, self.prec)
    }

    /// Horner value with bound `(4n + 2) u sum |c_k| |x|^k`, the coefficient
    /// rounding included.
    pub fn eval(&self, x: &Complex<R>) -> Bounded<R> {
        let n = self.coeffs.len();
        if n == 0 {
            return Bounded { value: cplx::zero(self.prec), err: R::from_f64_prec(0.0, 64) };
        }
        let ax = cplx::abs(x).set_prec(64);
        let mut p = self.coeffs[n - 1].clone();
        let mut s = self.abs[n - 1].set_prec(64);
        for k in (0..n - 1).rev() {
            p = p * x.clone() + self.coeffs[k].clone();
            s = s * ax.clone() + self.abs[k].set_prec(64);
        }
        let err = s * R::from_f64_prec((4 * n + 2) as f64, 64) * self.unit();
        Bounded { value: p, err }
    }

    /// `p(x)` and `p'(x)` in one pass, each with an error bound.
    pub fn eval_with_derivative(&self, x: &Complex<R>) -> (Bounded<R>, Bounded<R>) {
        let n = self.coeffs.len();
        if n <= 1 {
            let v = self.eval(x);
            return (v, Bounded { value: cplx::zero(self.prec), err: R::from_f64_prec(0.0, 64) });
        }
        let ax = cplx::abs(x).set_prec(64);
        let mut p = self.coeffs[n - 1].clone();
        let mut dp = cplx::zero::<R>(self.prec);
        let mut s = self.abs[n - 1].set_prec(64);
        let mut ds = R::from_f64_prec(0.0, 64);
        for k in (0..n - 1).rev() {
            dp = dp * x.clone() + p.clone();
            ds = ds * ax.clone() + s.clone();
            p = p * x.clone() + self.coeffs[k].clone();
            s = s * ax.clone() + self.abs[k].set_prec(64);
        }
        let f = R::from_f64_prec((4 * n + 2) as f64, 64) * self.unit();
        let fd = R::from_f64_prec((8 * n + 2) as f64, 64) * self.unit();
        (Bounded { value: p, err: s * f }, Bounded { value: dp, err: ds * fd })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gint;
    use crate::scalar::BigFloat;

    #[test]
    fn error_bound_covers_cancellation() {
        // (x - 1)^8 expanded, evaluated near the root
        let mut p = Polynomial::new(vec![gint(1)]);
        for _ in 0..8 {
            p = &p * &Polynomial::new(vec![gint(-1), gint(1)]);
        }
        let fp: FloatPoly<f64> = FloatPoly::from_exact(&p, 53);
        let x = Complex::new(1.001, 0.0);
        let v = fp.eval(&x);
        let exact = 1e-24;
        assert!((v.value.re - exact).abs() <= v.err);
        let bp: FloatPoly<BigFloat> = FloatPoly::from_exact(&p, 256);
        let xb = cplx::from_f64::<BigFloat>(1.5, 0.0, 256);
        let (v, d) = bp.eval_with_derivative(&xb);
        assert!((v.value.re.to_f64() - 0.5f64.powi(8)).abs() < 1e-60);
        assert!((d.value.re.to_f64() - 8.0 * 0.5f64.powi(7)).abs() < 1e-60);
    }
}

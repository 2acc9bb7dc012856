//! Gauss-Legendre quadrature at arbitrary precision with adaptive panel
//! halving.

use log::debug;
use num_complex::Complex;

use crate::scalar::{cplx, Real};

/// Nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre<R: Real> {
    pub nodes: Vec<R>,
    pub weights: Vec<R>,
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre<R: Real>(n: usize, x: &R, prec: u32) -> (R, R) {
    let one = R::from_f64_prec(1.0, prec);
    let mut p0 = one.clone();
    let mut p1 = x.clone();
    for k in 1..n {
        let kf = R::from_f64_prec(k as f64, prec);
        let k1 = R::from_f64_prec((k + 1) as f64, prec);
        let two_k1 = R::from_f64_prec((2 * k + 1) as f64, prec);
        let p2 = (two_k1 * x.clone() * p1.clone() - kf * p0) / k1;
        p0 = p1;
        p1 = p2;
    }
    let nf = R::from_f64_prec(n as f64, prec);
    let dp = nf * (x.clone() * p1.clone() - p0) / (x.clone() * x.clone() - one);
    (p1, dp)
}

impl<R: Real> GaussLegendre<R> {
    pub fn new(order: usize, prec: u32) -> Self {
        let n = order.max(1);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        let two = R::from_f64_prec(2.0, prec);
        let one = R::from_f64_prec(1.0, prec);
        for i in 0..n {
            let guess = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut x = R::from_f64_prec(guess, prec);
            let mut last = f64::INFINITY;
            for _ in 0..100 {
                let (p, dp) = legendre(n, &x, prec);
                let dx = p / dp;
                let l = dx.log2_abs();
                x = x - dx;
                // quadratic convergence: stop once the step stops shrinking
                if l < -(prec as f64) + 2.0 || l >= last {
                    break;
                }
                last = l;
            }
            let (_, dp) = legendre(n, &x, prec);
            let w = two.clone() / ((one.clone() - x.clone() * x.clone()) * dp.clone() * dp);
            nodes.push(x);
            weights.push(w);
        }
        GaussLegendre { nodes, weights }
    }

    /// Rule applied to `f` on `[a, b]`.
    pub fn apply<F>(&self, f: &mut F, a: &R, b: &R) -> Complex<R>
    where
        F: FnMut(&R) -> Complex<R>,
    {
        let prec = a.prec().max(b.prec());
        let two = R::from_f64_prec(2.0, prec);
        let half = (b.clone() - a.clone()) / two.clone();
        let mid = (b.clone() + a.clone()) / two;
        let mut acc = cplx::zero::<R>(prec);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = mid.clone() + half.clone() * x.clone();
            let v = f(&t);
            acc = acc + Complex::new(v.re * w.clone(), v.im * w.clone());
        }
        Complex::new(acc.re * half.clone(), acc.im * half)
    }
}

/// Result of an adaptive integration.
#[derive(Clone, Debug)]
pub struct Quadrature<R: Real> {
    pub value: Complex<R>,
    /// Sum of panel-level error estimates.
    pub error: R,
    /// Sum of `|panel|`, the scale that rounding errors are relative to.
    pub l1: R,
    pub panels: usize,
    pub converged: bool,
}

/// Integrates `f` over `[a, b]`, halving panels until two-level estimates
/// agree to `2^tol_log2` relative to the integral of `|f|`.
pub fn integrate<R, F>(rule: &GaussLegendre<R>, mut f: F, a: &R, b: &R, tol_log2: f64, max_depth: usize) -> Quadrature<R>
where
    R: Real,
    F: FnMut(&R) -> Complex<R>,
{
    let prec = a.prec().max(b.prec());
    let two = R::from_f64_prec(2.0, prec);
    // coarse pass over 16 panels for the scale
    let coarse = 16usize;
    let len = b.clone() - a.clone();
    let mut l1 = R::from_f64_prec(0.0, prec);
    let mut stack = Vec::with_capacity(coarse);
    for i in 0..coarse {
        let lo = a.clone() + len.clone() * R::from_f64_prec(i as f64 / coarse as f64, prec);
        let hi = a.clone() + len.clone() * R::from_f64_prec((i + 1) as f64 / coarse as f64, prec);
        let whole = rule.apply(&mut f, &lo, &hi);
        l1 = l1 + cplx::abs(&whole);
        stack.push((lo, hi, whole, 0usize));
    }
    let tol = l1.clone() * R::pow2(tol_log2.floor() as i64, prec);
    let mut value = cplx::zero::<R>(prec);
    let mut error = R::from_f64_prec(0.0, prec);
    let mut panels = 0usize;
    let mut converged = true;
    let span = len.abs();
    while let Some((lo, hi, whole, depth)) = stack.pop() {
        let mid = (lo.clone() + hi.clone()) / two.clone();
        let left = rule.apply(&mut f, &lo, &mid);
        let right = rule.apply(&mut f, &mid, &hi);
        let halves = left.clone() + right.clone();
        let diff = cplx::abs(&(halves.clone() - whole));
        // tolerance is shared in proportion to panel width
        let share = tol.clone() * (hi.clone() - lo.clone()).abs() / span.clone();
        if diff <= share || depth >= max_depth {
            if depth >= max_depth && diff > share {
                converged = false;
            }
            value = value + halves;
            error = error + diff;
            panels += 1;
        } else {
            stack.push((lo, mid.clone(), left, depth + 1));
            stack.push((mid, hi, right, depth + 1));
        }
    }
    debug!("integrate: {panels} panels, error 2^{:.1}, scale 2^{:.1}", error.log2_abs(), l1.log2_abs());
    Quadrature { value, error, l1, panels, converged }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::BigFloat;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let gl = GaussLegendre::<BigFloat>::new(10, 128);
        let a = BigFloat::from_f64_prec(-1.0, 128);
        let b = BigFloat::from_f64_prec(1.0, 128);
        // x^18 integrates to 2/19
        let v = gl.apply(&mut |x: &BigFloat| {
            let mut p = BigFloat::from_f64_prec(1.0, 128);
            for _ in 0..18 {
                p = p * x.clone();
            }
            Complex::new(p, BigFloat::from_f64_prec(0.0, 128))
        }, &a, &b);
        let exact = BigFloat::from_f64_prec(2.0, 128) / BigFloat::from_f64_prec(19.0, 128);
        assert!((v.re - exact).log2_abs() < -120.0);
    }

    #[test]
    fn adaptive_gaussian() {
        let gl = GaussLegendre::<BigFloat>::new(20, 160);
        let a = BigFloat::from_f64_prec(-12.0, 160);
        let b = BigFloat::from_f64_prec(12.0, 160);
        let q = integrate(&gl, |x: &BigFloat| {
            let e = (-(x.clone() * x.clone())).exp();
            Complex::new(e, BigFloat::from_f64_prec(0.0, 160))
        }, &a, &b, -130.0, 30);
        assert!(q.converged);
        let sqrt_pi = BigFloat::pi(160).sqrt();
        assert!((q.value.re - sqrt_pi).log2_abs() < -100.0);
    }

    #[test]
    fn f64_backend() {
        let gl = GaussLegendre::<f64>::new(8, 53);
        let q = integrate(&gl, |x: &f64| Complex::new(x.cos(), x.sin()), &0.0, &1.0, -45.0, 20);
        assert!((q.value.re - 1f64.sin()).abs() < 1e-13);
        assert!((q.value.im - (1.0 - 1f64.cos())).abs() < 1e-13);
    }
}

//! Half-integer `m`: spherical Hankel functions, Bessel polynomial ratios
//! and the moment (Hankel) systems for `m = +-(1/2 + k)`.
//!
//! Moments are defined with the substitution `lambda = e^t`:
//!
//! ```text
//! I+_{n,k,j}(x) = \int e^{-nu t - 2ix sinh t} dt,   nu = n + j - k - 5/2
//! I-_{n,k,j}(x) = \int e^{ mu t + 2ix sinh t} dt,   mu = n - j + k + 1/2
//! ```
//!
//! on a contour whose left end runs to `-inf + i psi` and right end to
//! `+inf - i(pi + psi)`, where `psi = Arg(c)` for the coefficient `c` of
//! `sinh t`. Both are `-pi i H2_{-a}(c)` in terms of the Hankel function of
//! the second kind with the phase of `c` continued from `Arg(x)`; the
//! negative real `x` axis is excluded. Branch constants common to all `j`
//! cancel in every quantity computed from a solve.

use log::debug;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{from_rational, gint, imag_unit, GaussianRational};
use crate::fpoly::FloatPoly;
use crate::quad::{integrate, GaussLegendre};
use crate::ratfunc::{QPoly, RationalFunction};
use crate::scalar::{cplx, BigComplex, BigFloat, Real};

/// `h2_n(z) = e^{-iz} poly_part(1/z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SphericalHankel2 {
    pub order: usize,
    /// Polynomial in `w = 1/z`; exactly `order + 1` nonzero terms,
    /// `w^1 .. w^{order+1}`.
    pub poly_part: QPoly,
}

/// `h2_0 .. h2_{n_max}` from `h2_0 = i w`, `h2_1 = -w + i w^2` and
/// `h_{k+1} = (2k+1) w h_k - h_{k-1}`.
pub fn sph_hankel2_table(n_max: usize) -> Vec<SphericalHankel2> {
    let i = imag_unit();
    let mut out = vec![QPoly::new(vec![gint(0), i.clone()])];
    if n_max >= 1 {
        out.push(QPoly::new(vec![gint(0), gint(-1), i]));
    }
    for k in 1..n_max {
        let next = &QPoly::monomial(gint(2 * k as i64 + 1), 1) * &out[k] - out[k - 1].clone();
        out.push(next);
    }
    out.into_iter()
        .enumerate()
        .map(|(order, poly_part)| SphericalHankel2 { order, poly_part })
        .collect()
}

pub fn sph_hankel2(n: usize) -> SphericalHankel2 {
    sph_hankel2_table(n).pop().expect("table is nonempty")
}

impl SphericalHankel2 {
    pub fn term_count(&self) -> usize {
        self.poly_part.coeffs().iter().filter(|c| !c.is_zero()).count()
    }

    pub fn eval(&self, z: &BigComplex, prec: u32) -> BigComplex {
        let w = cplx::from_f64::<BigFloat>(1.0, 0.0, prec) / cplx::set_prec(z, prec);
        let p = FloatPoly::<BigFloat>::from_exact(&self.poly_part, prec).eval(&w).value;
        let minus_iz = Complex::new(z.im.clone(), -z.re.clone());
        cplx::exp(&minus_iz) * p
    }
}

/// `u_n(x; 1/2) = i h2_{n-1}(z) / h2_n(z)` at `z = -2ix`, as an exact
/// rational function of `x`.
pub fn u_half_from_hankel(n: usize) -> Result<RationalFunction> {
    if n == 0 {
        return Ok(RationalFunction::one());
    }
    let t = sph_hankel2_table(n);
    // w = 1/z = i/(2x); clear x^-k by multiplying through by x^(n+1)
    let w_coef = Complex::new(BigRational::zero(), BigRational::new(BigInt::from(1), BigInt::from(2)));
    let homog = |p: &QPoly| -> QPoly {
        let mut c = vec![gint(0); n + 2];
        let mut pw = GaussianRational::one();
        for (k, a) in p.coeffs().iter().enumerate() {
            if k > 0 {
                pw = pw * w_coef.clone();
            }
            c[n + 1 - k] = c[n + 1 - k].clone() + a.clone() * pw.clone();
        }
        QPoly::new(c)
    };
    let num = homog(&t[n - 1].poly_part).scale(&imag_unit());
    let den = homog(&t[n].poly_part);
    RationalFunction::new(num, den)
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// Ratio of Bessel polynomials, rescaled so that it equals `u_n(x; 1/2)`:
/// numerator `sum_{j=1}^n (2n-j-1)!/((n-j)!(j-1)!) X^j`, denominator
/// `sum_{j=0}^n (2n-j)!/((n-j)! j!) X^j`, with `X = 4x`.
pub fn u_half_polyratio(n: usize) -> Result<RationalFunction> {
    if n == 0 {
        return Err(Error::InvalidArgument("u_half_polyratio needs n >= 1".into()));
    }
    let coef = |a: usize, b: usize, c: usize| -> GaussianRational {
        from_rational(BigRational::new(factorial(a), factorial(b) * factorial(c)))
    };
    let mut num = vec![gint(0); n + 1];
    let mut den = vec![gint(0); n + 1];
    for j in 1..=n {
        num[j] = coef(2 * n - j - 1, n - j, j - 1);
    }
    for (j, d) in den.iter_mut().enumerate() {
        *d = coef(2 * n - j, n - j, j);
    }
    let four = gint(4);
    let num = QPoly::new(num).scale_arg(&four);
    let den = QPoly::new(den).scale_arg(&four);
    RationalFunction::new(num, den)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" => Ok(Sign::Plus),
            "-" | "minus" => Ok(Sign::Minus),
            _ => Err(Error::Parse(format!("sign must be + or -, got {s:?}"))),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }

    /// `m = +-(1/2 + k)`
    pub fn m(self, k: usize) -> GaussianRational {
        let v = from_rational(BigRational::new(BigInt::from(2 * k as i64 + 1), BigInt::from(2)));
        match self {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Quadrature,
}

/// The integral `\int e^{a t + c sinh t} dt` for half-integer `a`.
struct MomentKernel {
    /// `2a`, an odd integer
    two_a: i64,
    c: BigComplex,
    /// continued phase of `c`
    psi: BigFloat,
}

fn kernel(sign: Sign, n: i64, k: usize, j: i64, x: &BigComplex, prec: u32) -> Result<MomentKernel> {
    if x.re.is_zero() && x.im.is_zero() {
        return Err(Error::InvalidArgument("moments need x != 0".into()));
    }
    if x.im.is_zero() && x.re < BigFloat::from_f64_prec(0.0, 64) {
        return Err(Error::ContourFailure(std::f64::consts::PI));
    }
    let phi = cplx::arg(x).set_prec(prec);
    let half_pi = BigFloat::pi(prec) / BigFloat::from_f64_prec(2.0, prec);
    let k = k as i64;
    let two = BigFloat::from_f64_prec(2.0, prec);
    let two_x = Complex::new(x.re.clone() * two.clone(), x.im.clone() * two);
    Ok(match sign {
        // a = -nu, c = -2ix
        Sign::Plus => MomentKernel {
            two_a: -(2 * (n + j - k) - 5),
            c: Complex::new(two_x.im.clone(), -two_x.re.clone()),
            psi: phi - half_pi,
        },
        // a = mu, c = 2ix
        Sign::Minus => MomentKernel {
            two_a: 2 * (n - j + k) + 1,
            c: Complex::new(-two_x.im.clone(), two_x.re.clone()),
            psi: phi + half_pi,
        },
    })
}

/// `H2_nu(z)` for half-integer `nu = two_nu / 2`, with `ph z` given.
fn hankel2_half(two_nu: i64, z: &BigComplex, ph: &BigFloat, prec: u32) -> BigComplex {
    let order = ((two_nu.abs() - 1) / 2) as usize;
    let h = sph_hankel2(order).eval(z, prec);
    // sqrt(2z/pi) on the continued branch
    let r = (cplx::abs(z) * BigFloat::from_f64_prec(2.0, prec) / BigFloat::pi(prec)).sqrt();
    let (s, c) = (ph.clone() / BigFloat::from_f64_prec(2.0, prec)).sin_cos();
    let root = Complex::new(r.clone() * c, r * s);
    let mut v = root * h;
    if two_nu < 0 {
        // H2_{-nu} = e^{-i pi nu} H2_nu with nu = order + 1/2
        let f = if order % 2 == 0 { cplx::from_f64(0.0, -1.0, prec) } else { cplx::from_f64(0.0, 1.0, prec) };
        v = v * f;
    }
    v
}

fn moment_closed(kv: &MomentKernel, prec: u32) -> BigComplex {
    let h = hankel2_half(-kv.two_a, &kv.c, &kv.psi, prec);
    // -pi i H
    let pi = BigFloat::pi(prec);
    Complex::new(h.im.clone() * pi.clone(), -(h.re.clone() * pi))
}

fn moment_quadrature(kv: &MomentKernel, target_bits: u32) -> Result<BigComplex> {
    let absc = cplx::abs(&kv.c).to_f64();
    // the vertical piece reaches |integrand| ~ e^{|c|} against an O(1)
    // result: carry those bits as guard
    let guard = (absc / std::f64::consts::LN_2).ceil() as u32 + 32;
    let prec = target_bits + guard;
    let a = BigFloat::from_f64_prec(kv.two_a as f64 / 2.0, prec);
    let c = cplx::set_prec(&kv.c, prec);
    let psi = kv.psi.set_prec(prec);
    let pi = BigFloat::pi(prec);
    let beta_r = -(pi + psi.clone());
    // |integrand| <= exp(|a| s - |c| sinh s) on both rays
    let need = (prec as f64) * std::f64::consts::LN_2 + 10.0;
    let aa = (kv.two_a as f64 / 2.0).abs();
    let mut t_end = 1.0f64;
    while absc * t_end.sinh() - aa * t_end < need {
        t_end *= 1.25;
    }
    debug!("moment quadrature: a = {}, |c| = {absc:.3}, rays truncated at {t_end:.3}, {prec} bits", a);
    let rule = GaussLegendre::<BigFloat>::new(24, prec);
    let tol = -(target_bits as f64) - 8.0;
    let zero = BigFloat::from_f64_prec(0.0, prec);
    let t_hi = BigFloat::from_f64_prec(t_end, prec);
    let t_lo = BigFloat::from_f64_prec(-t_end, prec);
    let integrand = |t: &BigComplex| -> BigComplex {
        let (sh, ch) = t.re.sinh_cosh();
        let (sn, cs) = t.im.sin_cos();
        let sinh_t = Complex::new(sh * cs, ch * sn);
        let e = Complex::new(a.clone() * t.re.clone(), a.clone() * t.im.clone()) + c.clone() * sinh_t;
        cplx::exp(&e)
    };
    let left = integrate(&rule, |s: &BigFloat| integrand(&Complex::new(s.clone(), psi.clone())), &t_lo, &zero, tol, 40);
    let right = integrate(&rule, |s: &BigFloat| integrand(&Complex::new(s.clone(), beta_r.clone())), &zero, &t_hi, tol, 40);
    // vertical piece t = i theta, dt = i d theta
    let vert = integrate(
        &rule,
        |th: &BigFloat| {
            let v = integrand(&Complex::new(zero.clone(), th.clone()));
            Complex::new(-v.im, v.re)
        },
        &psi,
        &beta_r,
        tol,
        40,
    );
    if !(left.converged && right.converged && vert.converged) {
        return Err(Error::ContourFailure(kv.psi.to_f64()));
    }
    Ok(left.value + vert.value + right.value)
}

/// One moment by the chosen method.
pub fn moment(sign: Sign, n: i64, k: usize, j: i64, x: &BigComplex, precision_bits: u32, method: Method) -> Result<BigComplex> {
    let prec = precision_bits + 32;
    let kv = kernel(sign, n, k, j, x, prec)?;
    let v = match method {
        Method::Closed => moment_closed(&kv, prec),
        Method::Quadrature => moment_quadrature(&kv, precision_bits)?,
    };
    Ok(cplx::set_prec(&v, precision_bits))
}

/// Moments `I_{n,k,j}`, `j` in `j_range`, for one `(sign, x)`.
#[derive(Clone, Debug)]
pub struct HankelMoments {
    pub sign: Sign,
    pub n: i64,
    pub k: usize,
    pub x: BigComplex,
    pub j_min: i64,
    pub values: Vec<BigComplex>,
    pub method: Method,
}

impl HankelMoments {
    pub fn compute(sign: Sign, n: i64, k: usize, x: &BigComplex, prec: u32, method: Method) -> Result<Self> {
        let (lo, hi) = match sign {
            Sign::Plus => (1, 2 * k as i64 + 3),
            Sign::Minus => (0, 2 * k as i64 + 1),
        };
        let values = std::thread::scope(|s| {
            let handles: Vec<_> = (lo..=hi)
                .map(|j| s.spawn(move || moment(sign, n, k, j, x, prec, method)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("moment worker panicked")).collect::<Result<Vec<_>>>()
        })?;
        Ok(HankelMoments { sign, n, k, x: x.clone(), j_min: lo, values, method })
    }

    pub fn get(&self, j: i64) -> &BigComplex {
        &self.values[(j - self.j_min) as usize]
    }

    /// `H_{pq} = I_{p+q}`, `p, q = 1..dim`.
    pub fn matrix(&self) -> Vec<Vec<BigComplex>> {
        let dim = self.dim();
        (1..=dim as i64).map(|p| (1..=dim as i64).map(|q| self.get(p + q).clone()).collect()).collect()
    }

    pub fn dim(&self) -> usize {
        match self.sign {
            Sign::Plus => self.k + 1,
            Sign::Minus => self.k,
        }
    }

    fn scale(&self) -> BigFloat {
        let mut s = BigFloat::from_f64_prec(0.0, 64);
        for v in &self.values {
            let a = cplx::abs(v).set_prec(64);
            if a > s {
                s = a;
            }
        }
        s
    }
}

/// True when the entry depends on `p + q` only.
pub fn is_hankel(h: &[Vec<BigComplex>]) -> bool {
    let d = h.len();
    (0..d.saturating_sub(1)).all(|p| (1..d).all(|q| h[p][q] == h[p + 1][q - 1]))
}

/// Solves `H X = B` for several right-hand sides by Gaussian elimination
/// with partial pivoting; returns the solutions and `det H`.
fn solve_linear(h: &[Vec<BigComplex>], rhs: &[Vec<BigComplex>], prec: u32) -> (Vec<Vec<BigComplex>>, BigComplex) {
    let d = h.len();
    let mut a: Vec<Vec<BigComplex>> = h.to_vec();
    let mut b: Vec<Vec<BigComplex>> = rhs.to_vec();
    let mut det = cplx::from_f64::<BigFloat>(1.0, 0.0, prec);
    for col in 0..d {
        let piv = (col..d)
            .max_by(|&i, &j| cplx::abs(&a[i][col]).partial_cmp(&cplx::abs(&a[j][col])).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        if piv != col {
            a.swap(piv, col);
            for r in b.iter_mut() {
                r.swap(piv, col);
            }
            det = -det;
        }
        let p = a[col][col].clone();
        det = det * p.clone();
        if p.re.is_zero() && p.im.is_zero() {
            continue;
        }
        for row in col + 1..d {
            let f = a[row][col].clone() / p.clone();
            for c2 in col..d {
                let t = f.clone() * a[col][c2].clone();
                a[row][c2] = a[row][c2].clone() - t;
            }
            for r in b.iter_mut() {
                let t = f.clone() * r[col].clone();
                r[row] = r[row].clone() - t;
            }
        }
    }
    let sols = b
        .into_iter()
        .map(|mut r| {
            for row in (0..d).rev() {
                let mut acc = r[row].clone();
                for c2 in row + 1..d {
                    acc = acc - a[row][c2].clone() * r[c2].clone();
                }
                r[row] = acc / a[row][row].clone();
            }
            r
        })
        .collect();
    (sols, det)
}

fn residual(h: &[Vec<BigComplex>], x: &[BigComplex], b: &[BigComplex], prec: u32) -> BigFloat {
    let mut worst = BigFloat::from_f64_prec(0.0, 64);
    for (row, bi) in h.iter().zip(b) {
        let mut acc = cplx::zero::<BigFloat>(prec);
        for (hij, xj) in row.iter().zip(x) {
            acc = acc + hij.clone() * xj.clone();
        }
        let r = cplx::abs(&(acc - bi.clone())).set_prec(64);
        if r > worst {
            worst = r;
        }
    }
    worst
}

/// Solution of the Hankel systems at one point.
#[derive(Clone, Debug)]
pub struct HankelSolve {
    pub sign: Sign,
    pub n: i64,
    pub k: usize,
    pub x: BigComplex,
    /// `a` (plus) or `c` (minus)
    pub first: Vec<BigComplex>,
    /// `b` (plus) or `d` (minus)
    pub second: Vec<BigComplex>,
    pub det: BigComplex,
    /// Largest componentwise residual of the two solves.
    pub residual: BigFloat,
    pub u: BigComplex,
    pub method: Method,
}

/// `u_n(x; +-(1/2 + k))` from the moment systems.
pub fn solve_halfint(n: i64, k: usize, sign: Sign, x: &BigComplex, precision_bits: u32) -> Result<HankelSolve> {
    solve_halfint_with(n, k, sign, x, precision_bits, Method::Closed)
}

pub fn solve_halfint_with(n: i64, k: usize, sign: Sign, x: &BigComplex, precision_bits: u32, method: Method) -> Result<HankelSolve> {
    let prec = precision_bits + 32;
    let mo = HankelMoments::compute(sign, n, k, x, prec, method)?;
    let dim = mo.dim();
    let h = mo.matrix();
    let zero = cplx::zero::<BigFloat>(prec);
    let sqrt2pi_kf = {
        let two_pi = BigFloat::pi(prec) * BigFloat::from_f64_prec(2.0, prec);
        let kf = (1..=k).fold(BigFloat::from_f64_prec(1.0, prec), |a, v| a * BigFloat::from_f64_prec(v as f64, prec));
        two_pi.sqrt() * kf
    };
    // -i sqrt(2 pi) k! e1
    let mut e1 = vec![zero.clone(); dim];
    if dim > 0 {
        e1[0] = Complex::new(BigFloat::from_f64_prec(0.0, prec), -sqrt2pi_kf.clone());
    }
    let minus_v: Vec<BigComplex> = (1..=dim as i64).map(|j| -mo.get(j).clone()).collect();
    let (rhs_first, rhs_second) = match sign {
        Sign::Plus => (e1, minus_v),
        Sign::Minus => (minus_v, e1),
    };
    let (first, second, det, resid) = if dim == 0 {
        (Vec::new(), Vec::new(), cplx::from_f64(1.0, 0.0, prec), BigFloat::from_f64_prec(0.0, 64))
    } else {
        let (mut sol, det) = solve_linear(&h, &[rhs_first.clone(), rhs_second.clone()], prec);
        let second = sol.pop().expect("two solutions");
        let first = sol.pop().expect("two solutions");
        let r1 = residual(&h, &first, &rhs_first, prec);
        let r2 = residual(&h, &second, &rhs_second, prec);
        (first, second, det, if r1 > r2 { r1 } else { r2 })
    };
    // singular relative to the moment scale
    let log2_threshold = mo.scale().log2_abs() * dim as f64 - (precision_bits as f64) / 2.0;
    let log2_det = cplx::log2_abs(&det);
    if dim > 0 && log2_det <= log2_threshold {
        return Err(Error::SingularHankel { log2_det, log2_threshold });
    }
    let i = cplx::from_f64::<BigFloat>(0.0, 1.0, prec);
    let u = match sign {
        Sign::Plus => {
            let kk = k as i64;
            let mut s = zero.clone();
            for (jj, aj) in first.iter().enumerate() {
                s = s + aj.clone() * mo.get(jj as i64 + 1 + kk + 2).clone();
            }
            let num = first[0].clone() * Complex::new(sqrt2pi_kf.clone(), BigFloat::from_f64_prec(0.0, prec));
            num / (first[k].clone() * s)
        }
        Sign::Minus if k == 0 => i.clone() * mo.get(0).clone() / mo.get(1).clone(),
        Sign::Minus => {
            let kk = k as i64;
            let mut sn = mo.get(0).clone();
            let mut sd = mo.get(kk + 1).clone();
            for (jj, cj) in first.iter().enumerate() {
                let j = jj as i64 + 1;
                sn = sn + cj.clone() * mo.get(j).clone();
                sd = sd + cj.clone() * mo.get(j + kk + 1).clone();
            }
            i * sn / (first[k - 1].clone() * sd)
        }
    };
    Ok(HankelSolve {
        sign,
        n,
        k,
        x: x.clone(),
        first: first.iter().map(|v| cplx::set_prec(v, precision_bits)).collect(),
        second: second.iter().map(|v| cplx::set_prec(v, precision_bits)).collect(),
        det: cplx::set_prec(&det, precision_bits),
        residual: resid,
        u: cplx::set_prec(&u, precision_bits),
        method,
    })
}

/// Output row of the `halfint` command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfintRow {
    pub n: i64,
    pub k: usize,
    pub sign: Sign,
    pub x: [String; 2],
    pub re: String,
    pub im: String,
    #[serde(rename = "D")]
    pub det: [String; 2],
    pub method: Method,
}

impl HankelSolve {
    pub fn row(&self, digits: usize) -> HalfintRow {
        HalfintRow {
            n: self.n,
            k: self.k,
            sign: self.sign,
            x: [self.x.re.to_decimal(digits), self.x.im.to_decimal(digits)],
            re: self.u.re.to_decimal(digits),
            im: self.u.im.to_decimal(digits),
            det: [self.det.re.to_decimal(digits), self.det.im.to_decimal(digits)],
            method: self.method,
        }
    }
}

/// Relative distance `|a - b| / |b|` as a base-2 logarithm.
pub fn log2_rel_diff(a: &BigComplex, b: &BigComplex) -> f64 {
    cplx::log2_abs(&(a.clone() - b.clone())) - cplx::log2_abs(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gq;
    use crate::umemura::{build_u, eval_u};

    fn pt(re: f64, im: f64) -> BigComplex {
        cplx::from_f64(re, im, 160)
    }

    #[test]
    fn polypart_shape_and_recurrence() {
        let t = sph_hankel2_table(6);
        for h in &t {
            assert_eq!(h.term_count(), h.order + 1);
        }
        let w = QPoly::x();
        let lhs = &(&w * &t[4].poly_part) .scale(&gint(9)) - &(&t[5].poly_part + &t[3].poly_part);
        assert!(lhs.is_zero());
    }

    #[test]
    fn bessel_side_matches_exact_core() {
        for n in 1..=6 {
            let exact = build_u(n as i64, &gq(1, 2, 0, 1)).unwrap();
            assert_eq!(u_half_from_hankel(n).unwrap(), exact, "hankel n = {n}");
            assert_eq!(u_half_polyratio(n).unwrap(), exact, "polyratio n = {n}");
        }
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let x = pt(0.7, 0.4);
        for (sign, j) in [(Sign::Plus, 2), (Sign::Minus, 1)] {
            let a = moment(sign, 3, 1, j, &x, 96, Method::Closed).unwrap();
            let b = moment(sign, 3, 1, j, &x, 96, Method::Quadrature).unwrap();
            assert!(log2_rel_diff(&a, &b) < -80.0, "{sign:?}: 2^{}", log2_rel_diff(&a, &b));
        }
    }

    #[test]
    fn small_cases_solve() {
        let x = pt(1.0, 0.0);
        for sign in [Sign::Plus, Sign::Minus] {
            for k in 0..=1 {
                let sol = solve_halfint(3, k, sign, &x, 128).unwrap();
                let u = build_u(3, &sign.m(k)).unwrap();
                let exact = eval_u(&u, &x, 128).unwrap();
                assert!(log2_rel_diff(&sol.u, &exact) < -90.0, "{sign:?} k={k}");
            }
        }
    }

    #[test]
    fn negative_axis_is_rejected() {
        let x = pt(-1.0, 0.0);
        assert!(matches!(moment(Sign::Plus, 1, 0, 2, &x, 64, Method::Closed), Err(Error::ContourFailure(_))));
    }
}

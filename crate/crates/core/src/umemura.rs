//! Umemura polynomials `s_n(x; m)` and the rational solutions `u_n(x; m)`.

use log::debug;
use num_complex::Complex;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{from_rational, gint, q, GaussianRational};
use crate::fpoly::FloatPoly;
use crate::ratfunc::{eval_poly_exact, QPoly, RationalFunction};
use crate::scalar::{cplx, BigComplex, BigFloat, Real};

/// Integer `n` and the parameter `m`; `Θ0 = n + m`, `Θ∞ = m - n + 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub n: i64,
    pub m: GaussianRational,
}

impl Params {
    pub fn new(n: i64, m: GaussianRational) -> Self {
        Params { n, m }
    }

    pub fn theta0(&self) -> GaussianRational {
        gint(self.n) + self.m.clone()
    }

    pub fn theta_inf(&self) -> GaussianRational {
        self.m.clone() - gint(self.n) + gint(1)
    }
}

/// `s_{-1}, s_0, ..., s_N` for one value of `m`.
#[derive(Clone, Debug)]
pub struct UmemuraTable {
    m: GaussianRational,
    entries: Vec<QPoly>,
}

impl UmemuraTable {
    /// The initial table `s_{-1} = s_0 = 1`.
    pub fn new(m: GaussianRational) -> Self {
        UmemuraTable { m, entries: vec![QPoly::one(), QPoly::one()] }
    }

    pub fn m(&self) -> &GaussianRational {
        &self.m
    }

    /// Largest stored index `N`.
    pub fn max_n(&self) -> usize {
        self.entries.len() - 2
    }

    /// `s_n` for `-1 <= n <= N`.
    pub fn s(&self, n: i64) -> &QPoly {
        &self.entries[(n + 1) as usize]
    }

    /// `s_{-1}, ..., s_N` in order.
    pub fn entries(&self) -> &[QPoly] {
        &self.entries
    }

    fn step(&self) -> Result<QPoly> {
        let n = self.max_n() as i64;
        let s = self.s(n);
        let prev = self.s(n - 1);
        let d1 = s.derivative();
        let d2 = d1.derivative();
        let two_m1 = self.m.clone() * gint(2) + gint(1);
        let lin = QPoly::linear(two_m1, gint(4));
        let t1 = &lin * &(s * s);
        let t3 = (&(s * &d2) - &(&d1 * &d1)).shift_up(1);
        let num = &(&t1 - &(s * &d1)) - &t3;
        num.exact_div(&prev.scale(&gint(2)))
    }
}

/// Runs the bilinear recurrence until `s_N` is stored.
pub fn umemura_extend(mut table: UmemuraTable, n_max: usize) -> Result<UmemuraTable> {
    while table.max_n() < n_max {
        let next = table.step()?;
        table.entries.push(next);
    }
    Ok(table)
}

pub fn umemura_table(m: &GaussianRational, n_max: usize) -> Result<UmemuraTable> {
    umemura_extend(UmemuraTable::new(m.clone()), n_max)
}

/// The four polynomial factors of `u_n` for `n >= 0`:
/// `u_n = s_n(m-1) s_{n-1}(m) / (s_n(m) s_{n-1}(m-1))`.
#[derive(Clone, Debug)]
pub struct UFactors {
    pub n: usize,
    pub m: GaussianRational,
    /// `s_n(x; m)`
    pub sn_m: QPoly,
    /// `s_{n-1}(x; m-1)`
    pub snm1_mm1: QPoly,
    /// `s_n(x; m-1)`
    pub sn_mm1: QPoly,
    /// `s_{n-1}(x; m)`
    pub snm1_m: QPoly,
}

impl UFactors {
    pub fn from_tables(n: usize, t_m: &UmemuraTable, t_mm1: &UmemuraTable) -> Self {
        let n = n as i64;
        UFactors {
            n: n as usize,
            m: t_m.m().clone(),
            sn_m: t_m.s(n).clone(),
            snm1_mm1: t_mm1.s(n - 1).clone(),
            sn_mm1: t_mm1.s(n).clone(),
            snm1_m: t_m.s(n - 1).clone(),
        }
    }

    pub fn new(n: usize, m: &GaussianRational) -> Result<Self> {
        let t_m = umemura_table(m, n)?;
        let t_mm1 = umemura_table(&(m.clone() - gint(1)), n)?;
        Ok(Self::from_tables(n, &t_m, &t_mm1))
    }

    pub fn u(&self) -> Result<RationalFunction> {
        RationalFunction::new(&self.sn_mm1 * &self.snm1_m, &self.sn_m * &self.snm1_mm1)
    }
}

/// `u_n(x; m)` reduced; negative `n` through `u_{-n} = 1 / u_n`.
pub fn build_u(n: i64, m: &GaussianRational) -> Result<RationalFunction> {
    if n == 0 {
        return Ok(RationalFunction::one());
    }
    let u = UFactors::new(n.unsigned_abs() as usize, m)?.u()?;
    if n < 0 {
        u.inv()
    } else {
        Ok(u)
    }
}

/// `u_n` for every `0 <= n <= n_max`, sharing the two tables.
pub fn build_u_range(n_max: usize, m: &GaussianRational) -> Result<Vec<RationalFunction>> {
    let t_m = umemura_table(m, n_max)?;
    let t_mm1 = umemura_table(&(m.clone() - gint(1)), n_max)?;
    let mut out = vec![RationalFunction::one()];
    for n in 1..=n_max {
        out.push(UFactors::from_tables(n, &t_m, &t_mm1).u()?);
    }
    Ok(out)
}

/// `u_n(x; -m) u_n(-x; m) = 1` exactly.
pub fn check_negm_symmetry(n: i64, m: &GaussianRational) -> Result<bool> {
    let a = build_u(n, &(-m.clone()))?;
    let b = build_u(n, m)?.reflect();
    Ok(a.mul(&b) == RationalFunction::one())
}

/// Cleared numerator of the Painleve-III residual
/// `x u u'' - x u'^2 + u u' - 4 Θ0 u^3 - 4 (1 - Θ∞) u - 4 x u^4 + 4 x`
/// after multiplication by `q^4` for `u = p / q`.
pub fn piii_residual(u: &RationalFunction, par: &Params) -> QPoly {
    let (p, qd) = (u.num(), u.den());
    let (dp, dq) = (p.derivative(), qd.derivative());
    let p1 = &(&dp * qd) - &(p * &dq);
    let p2 = &(&p1.derivative() * qd) - &(&p1 * &dq).scale(&gint(2));
    let c0 = par.theta0() * gint(4);
    let c1 = (gint(1) - par.theta_inf()) * gint(4);
    let p_sq = p * p;
    let q_sq = qd * qd;
    let mut r = (p * &p2).shift_up(1);
    r = &r - &(&p1 * &p1).shift_up(1);
    r = &r + &(&(p * qd) * &p1);
    r = &r - &(&(&p_sq * p) * qd).scale(&c0);
    r = &r - &(&(&q_sq * qd) * p).scale(&c1);
    r = &r - &(&p_sq * &p_sq).shift_up(1).scale(&gint(4));
    r = &r + &(&q_sq * &q_sq).shift_up(1).scale(&gint(4));
    r
}

/// A priori degree bound of [`piii_residual`].
pub fn residual_degree_bound(u: &RationalFunction) -> usize {
    4 * u.num().deg().max(u.den().deg()) + 1
}

/// The same cleared residual evaluated exactly at each point.
pub fn piii_residual_sampled(
    u: &RationalFunction,
    par: &Params,
    pts: &[GaussianRational],
) -> Result<Vec<GaussianRational>> {
    debug!(
        "sampled residual: {} points, residual degree bound {}",
        pts.len(),
        residual_degree_bound(u)
    );
    let p = u.num();
    let qd = u.den();
    let polys = [p.clone(), p.derivative(), p.derivative().derivative(), qd.clone(), qd.derivative(), qd.derivative().derivative()];
    let c0 = par.theta0() * gint(4);
    let c1 = (gint(1) - par.theta_inf()) * gint(4);
    let mut out = Vec::with_capacity(pts.len());
    for x in pts {
        if x.is_zero() {
            return Err(Error::PoleHit(crate::exact::format_gr(x)));
        }
        let v: Vec<GaussianRational> = polys.iter().map(|f| eval_poly_exact(f, x)).collect();
        let (p0, p1d, p2d, q0, q1, q2) = (&v[0], &v[1], &v[2], &v[3], &v[4], &v[5]);
        if q0.is_zero() {
            return Err(Error::PoleHit(crate::exact::format_gr(x)));
        }
        let big_p1 = p1d.clone() * q0.clone() - p0.clone() * q1.clone();
        let big_p1d = p2d.clone() * q0.clone() - p0.clone() * q2.clone();
        let big_p2 = big_p1d * q0.clone() - big_p1.clone() * q1.clone() * gint(2);
        let p_sq = p0.clone() * p0.clone();
        let q_sq = q0.clone() * q0.clone();
        let r = x.clone() * p0.clone() * big_p2 - x.clone() * big_p1.clone() * big_p1.clone()
            + p0.clone() * q0.clone() * big_p1
            - c0.clone() * p_sq.clone() * p0.clone() * q0.clone()
            - c1.clone() * q_sq.clone() * q0.clone() * p0.clone()
            - x.clone() * p_sq.clone() * p_sq * gint(4)
            + x.clone() * q_sq.clone() * q_sq * gint(4);
        out.push(r);
    }
    Ok(out)
}

/// Deterministic Gaussian-rational sample points with small heights and no
/// point at the origin.
pub fn sample_points(count: usize, seed: u64) -> Vec<GaussianRational> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let z = Complex::new(
            q(rng.gen_range(-997..=997), rng.gen_range(1..=97)),
            q(rng.gen_range(-997..=997), rng.gen_range(1..=97)),
        );
        if !z.is_zero() {
            out.push(z);
        }
    }
    out
}

/// First `k` coefficients `a_0, a_1, ...` of `u = a_0 + a_1 / x + ...`.
pub fn laurent_at_infinity(u: &RationalFunction, k: usize) -> Result<Vec<GaussianRational>> {
    let (dn, dd) = (u.num().deg(), u.den().deg());
    if u.is_zero() || dn != dd {
        return Err(Error::DegreeMismatch { num: dn, den: dd });
    }
    // series in t = 1/x of reversed coefficients
    let nr = u.num().reversed();
    let dr = u.den().reversed();
    let inv0 = GaussianRational::one() / dr.coeff(0);
    let mut c: Vec<GaussianRational> = Vec::with_capacity(k);
    for j in 0..k {
        let mut acc = nr.coeff(j);
        for (i, ci) in c.iter().enumerate() {
            acc = acc - ci.clone() * dr.coeff(j - i);
        }
        c.push(acc * inv0.clone());
    }
    Ok(c)
}

/// High-precision value of `u` at `x` with relative error at most
/// `2^-prec` (guard bits are added until the Horner bounds allow it).
pub fn eval_u(u: &RationalFunction, x: &BigComplex, prec: u32) -> Result<BigComplex> {
    let prec = prec.max(64);
    let mut w = prec + 32;
    let cap = 8 * prec + 1024;
    loop {
        let xn = cplx::set_prec(x, w);
        let nv = FloatPoly::<BigFloat>::from_exact(u.num(), w).eval(&xn);
        let dv = FloatPoly::<BigFloat>::from_exact(u.den(), w).eval(&xn);
        let ad = cplx::abs(&dv.value).set_prec(64);
        let an = cplx::abs(&nv.value).set_prec(64);
        let den_ok = ad > dv.err;
        let rel = if den_ok {
            let rd = dv.err.clone() / (ad.clone() - dv.err.clone());
            let rn = if an.is_zero() { BigFloat::from_f64_prec(0.0, 64) } else { nv.err.clone() / an.clone() };
            (rn + rd).log2_abs()
        } else {
            f64::INFINITY
        };
        let guard = rel + w as f64;
        debug!("eval_u: working precision {w}, guard estimate {guard:.1} bits");
        if rel <= -(prec as f64) || (den_ok && an.is_zero()) {
            return Ok(cplx::set_prec(&(nv.value / dv.value), prec));
        }
        if w >= cap {
            if !den_ok {
                return Err(Error::DenominatorUnderflow { log2_den: ad.log2_abs() });
            }
            // numerator cancellation near a zero: absolute accuracy only
            return Ok(cplx::set_prec(&(nv.value / dv.value), prec));
        }
        let need = if rel.is_finite() { (rel + prec as f64).ceil() as u32 + 16 } else { w };
        w = (w + need).min(cap);
    }
}

pub fn rational_m(num: i64, den: i64) -> GaussianRational {
    from_rational(q(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gq, parse_gr};

    #[test]
    fn first_polynomials() {
        let m = gq(3, 7, 1, 2);
        let t = umemura_table(&m, 2).unwrap();
        assert_eq!(t.s(0), &QPoly::one());
        let s1 = QPoly::linear(m.clone() + gq(1, 2, 0, 1), gint(2));
        assert_eq!(t.s(1), &s1);
        assert_eq!(t.s(2).deg(), 3);
        assert_eq!(t.s(2).leading().unwrap(), &gint(8));
    }

    #[test]
    fn n_one_closed_form() {
        let m = gq(1, 3, -2, 5);
        let u = build_u(1, &m).unwrap();
        let half = gq(1, 2, 0, 1);
        let want = RationalFunction::new(
            QPoly::linear(m.clone() - half.clone(), gint(2)),
            QPoly::linear(m.clone() + half, gint(2)),
        )
        .unwrap();
        assert_eq!(u, want);
        assert_eq!(build_u(-1, &m).unwrap(), want.inv().unwrap());
    }

    #[test]
    fn residual_vanishes_small_n() {
        for m in ["0", "1/2", "4/5*i"] {
            let m = parse_gr(m).unwrap();
            for n in 0..4 {
                let u = build_u(n, &m).unwrap();
                assert!(piii_residual(&u, &Params::new(n, m.clone())).is_zero(), "n={n}");
            }
        }
        let fake = RationalFunction::x();
        assert!(!piii_residual(&fake, &Params::new(1, gint(0))).is_zero());
    }

    #[test]
    fn sampled_matches_full_residual() {
        let m = gq(1, 1, 1, 3);
        let u = build_u(2, &m).unwrap().add(&RationalFunction::constant(gq(1, 100, 0, 1)));
        let par = Params::new(2, m);
        let pts = sample_points(5, 3);
        let full = piii_residual(&u, &par);
        let sampled = piii_residual_sampled(&u, &par, &pts).unwrap();
        for (x, v) in pts.iter().zip(sampled) {
            assert_eq!(full.eval(x), v);
        }
    }

    #[test]
    fn laurent_b_is_minus_half_n() {
        let m = gq(0, 1, 4, 5);
        for n in 0..5 {
            let c = laurent_at_infinity(&build_u(n, &m).unwrap(), 2).unwrap();
            assert_eq!(c[0], gint(1));
            assert_eq!(c[1], gq(-n, 2, 0, 1));
        }
    }

    #[test]
    fn eval_small_cases() {
        let u = build_u(1, &gint(0)).unwrap();
        let v = eval_u(&u, &cplx::from_f64(1.0, 0.0, 128), 128).unwrap();
        let want = BigFloat::from_rational(&q(3, 5), 128);
        assert!((v.re - want).abs().log2_abs() < -125.0);
        let pole = cplx::from_f64(-0.25, 0.0, 128);
        assert!(matches!(eval_u(&u, &pole, 128), Err(Error::DenominatorUnderflow { .. })));
    }
}

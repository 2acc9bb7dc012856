//! Certified roots of exact polynomials by Aberth-Ehrlich iteration.
//!
//! The exact valuation at the origin is split off first; the remaining
//! roots are computed in floating point and then certified simple by
//! checking that the inclusion discs `d |p(z)| / |p'(z)|` (enlarged by the
//! Horner rounding bounds) are pairwise disjoint.

use std::cmp::Ordering;
use std::fmt;

use log::debug;
use num_complex::Complex;

use crate::dpe::Dpe;
use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::fpoly::{to_complex, FloatPoly};
use crate::ratfunc::{QPoly, RationalFunction};
use crate::scalar::{cplx, BigComplex, BigFloat, Real};

/// Which factor of `u_n` a root set belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Factor {
    /// `s_n(x; m)`, poles
    SnM,
    /// `s_{n-1}(x; m-1)`, poles
    Snm1Mm1,
    /// `s_n(x; m-1)`, zeros
    SnMm1,
    /// `s_{n-1}(x; m)`, zeros
    Snm1M,
    Other,
}

impl Factor {
    pub const ALL: [Factor; 4] = [Factor::SnM, Factor::Snm1Mm1, Factor::SnMm1, Factor::Snm1M];

    pub fn label(self) -> &'static str {
        match self {
            Factor::SnM => "s_n(m)",
            Factor::Snm1Mm1 => "s_n-1(m-1)",
            Factor::SnMm1 => "s_n(m-1)",
            Factor::Snm1M => "s_n-1(m)",
            Factor::Other => "other",
        }
    }

    pub fn is_pole(self) -> bool {
        matches!(self, Factor::SnM | Factor::Snm1Mm1)
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Debug)]
pub struct RootSet<R: Real = BigFloat> {
    pub source: Factor,
    pub degree: usize,
    /// Exact order of vanishing at `x = 0`.
    pub origin_multiplicity: usize,
    /// Nonzero roots, sorted by modulus then phase.
    pub roots: Vec<Complex<R>>,
    /// Inclusion radius per root, same order.
    pub radii: Vec<R>,
    pub precision_bits: u32,
    /// Largest `|p(r)| / (max|c| max(1,|r|)^deg)` over the roots.
    pub residual_bound: R,
    /// Smallest pairwise distance (infinite for fewer than two roots).
    pub min_separation: R,
    /// Inclusion discs are pairwise disjoint, so every root is simple.
    pub certified_simple: bool,
    pub sweeps: usize,
}

impl<R: Real> RootSet<R> {
    pub fn max_radius(&self) -> R {
        let mut m = R::from_f64_prec(0.0, 64);
        for r in &self.radii {
            if *r > m {
                m = r.clone();
            }
        }
        m
    }
}

/// Parameters of the iteration.
#[derive(Clone, Debug)]
pub struct RootOptions {
    pub precision_bits: u32,
    /// Lowest rung of the precision ladder.
    pub start_bits: u32,
    /// Run a double-exponent phase before the ladder.
    pub presolve: bool,
}

impl RootOptions {
    /// `max(256, 4 deg)` bits.
    pub fn default_for(degree: usize) -> Self {
        RootOptions { precision_bits: default_precision(degree), start_bits: 128, presolve: true }
    }
}

pub fn default_precision(degree: usize) -> u32 {
    256.max(4 * degree as u32)
}

fn cmp_points<R: Real>(a: &Complex<R>, b: &Complex<R>) -> Ordering {
    let (ma, mb) = (cplx::abs(a), cplx::abs(b));
    match ma.partial_cmp(&mb) {
        Some(Ordering::Equal) | None => {
            cplx::arg(a).partial_cmp(&cplx::arg(b)).unwrap_or(Ordering::Equal)
        }
        Some(o) => o,
    }
}

/// Sorts by modulus, then phase in `(-pi, pi]`.
pub fn sort_points<R: Real>(v: &mut [Complex<R>]) {
    v.sort_by(cmp_points);
}

/// Unique positive root of `|a_d| r^d = sum_{k<d} |a_k| r^k`.
fn cauchy_bound<R: Real>(fp: &FloatPoly<R>) -> f64 {
    let d = fp.degree();
    let logs: Vec<f64> = fp.coeffs.iter().map(cplx::log2_abs).collect();
    let ld = logs[d];
    // work in log2 r; f(r) = sum |a_k/a_d| r^(k-d) - 1 is decreasing
    let f = |lr: f64| -> f64 {
        let terms: Vec<f64> = (0..d)
            .filter(|&k| logs[k].is_finite())
            .map(|k| logs[k] - ld + (k as f64 - d as f64) * lr)
            .collect();
        let mx = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        if !mx.is_finite() {
            return f64::NEG_INFINITY;
        }
        mx + terms.iter().map(|t| (t - mx).exp2()).sum::<f64>().log2()
    };
    let (mut lo, mut hi) = (-2000.0f64, 2000.0f64);
    if f(hi) > 0.0 {
        return hi.exp2();
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi.exp2()
}

fn initial_guesses<R: Real>(d: usize, radius: f64, prec: u32) -> Vec<Complex<R>> {
    let two_pi = 2.0 * std::f64::consts::PI;
    let offset = 1.0 / (2.0 * d as f64);
    (0..d)
        .map(|k| {
            let th = two_pi * (k as f64 / d as f64 + offset);
            cplx::from_f64(radius * th.cos(), radius * th.sin(), prec)
        })
        .collect()
}

struct SweepStats {
    max_log2_corr: f64,
    active: usize,
}

/// One Jacobi sweep over the active roots. Returns corrections and
/// convergence flags in `done`.
fn aberth_sweep<R: Real>(fp: &FloatPoly<R>, z: &mut [Complex<R>], done: &mut [bool], tol_log2: f64) -> SweepStats {
    let d = z.len();
    let one = Complex::new(R::from_f64_prec(1.0, fp.prec()), R::from_f64_prec(0.0, fp.prec()));
    let dp = fp.derivative();
    let mut updates: Vec<Option<Complex<R>>> = vec![None; d];
    let mut max_corr = f64::NEG_INFINITY;
    for i in 0..d {
        if done[i] {
            continue;
        }
        let pv = fp.eval(&z[i]).value;
        let dv = dp.eval(&z[i]).value;
        if pv.re.is_zero() && pv.im.is_zero() {
            done[i] = true;
            continue;
        }
        let newton = pv / dv;
        let mut s = cplx::zero::<R>(fp.prec());
        for j in 0..d {
            if j != i {
                s = s + one.clone() / (z[i].clone() - z[j].clone());
            }
        }
        let w = newton.clone() / (one.clone() - newton * s);
        if !(w.re.is_finite() && w.im.is_finite()) {
            // collision or overflow: leave the root for this sweep
            continue;
        }
        let rel = cplx::log2_abs(&w) - cplx::log2_abs(&z[i]).max(0.0);
        max_corr = max_corr.max(rel);
        if rel <= tol_log2 {
            done[i] = true;
        }
        updates[i] = Some(w);
    }
    for (zi, w) in z.iter_mut().zip(updates) {
        if let Some(w) = w {
            *zi = zi.clone() - w;
        }
    }
    SweepStats { max_log2_corr: max_corr, active: done.iter().filter(|x| !**x).count() }
}

fn lift_coeffs<R: Real>(p: &QPoly, prec: u32) -> FloatPoly<R> {
    FloatPoly::from_exact(p, prec)
}

enum LevelEnd {
    Converged,
    Stalled(f64),
    Cap(f64),
}

/// Sweeps at one precision until every root has converged, progress
/// stalls, or the global sweep cap is reached.
fn aberth_level<R: Real>(fp: &FloatPoly<R>, z: &mut [Complex<R>], w: u32, cap: usize, sweeps: &mut usize) -> LevelEnd {
    let d = z.len();
    let tol = -(w as f64) / 2.0;
    let mut done = vec![false; d];
    let mut best_active = d;
    let mut since_progress = 0usize;
    loop {
        let st = aberth_sweep(fp, z, &mut done, tol);
        *sweeps += 1;
        if st.active == 0 {
            return LevelEnd::Converged;
        }
        if st.active < best_active {
            best_active = st.active;
            since_progress = 0;
        } else {
            since_progress += 1;
        }
        if *sweeps >= cap {
            return LevelEnd::Cap(st.max_log2_corr);
        }
        if since_progress > 50 + d {
            return LevelEnd::Stalled(st.max_log2_corr);
        }
    }
}

/// Cheap start in double mantissa / wide exponent arithmetic.
fn dpe_presolve<R: Real>(p: &QPoly, prec: u32) -> Vec<Complex<R>> {
    let d = p.deg();
    let fp = lift_coeffs::<Dpe>(p, 53);
    let rho = cauchy_bound(&fp);
    let mut z: Vec<Complex<Dpe>> = initial_guesses(d, rho, 53);
    let mut sweeps = 0;
    let end = aberth_level(&fp, &mut z, 53, 200 * d.max(1), &mut sweeps);
    if let LevelEnd::Converged = end {
        debug!("aberth: double-exponent start converged in {sweeps} sweeps");
    } else {
        debug!("aberth: double-exponent start stopped after {sweeps} sweeps");
    }
    let lift = |x: &Dpe| R::from_f64_prec(x.mantissa(), prec) * R::pow2(x.exponent(), prec);
    z.iter().map(|c| Complex::new(lift(&c.re), lift(&c.im))).collect()
}

type AberthOutcome<R> = std::result::Result<(Vec<Complex<R>>, usize), (Vec<Complex<R>>, usize, f64)>;

/// Aberth iteration on a polynomial with nonzero constant term, with a
/// precision ladder from `start_bits` to `precision_bits`.
fn aberth<R: Real>(p: &QPoly, opts: &RootOptions) -> AberthOutcome<R> {
    let d = p.deg();
    let cap = 200 * d.max(1);
    let target = opts.precision_bits;
    let mut w = opts.start_bits.min(target).max(53);
    let mut fp = lift_coeffs::<R>(p, w);
    let mut z: Vec<Complex<R>> = if opts.presolve {
        dpe_presolve(p, w)
    } else {
        let rho = cauchy_bound(&fp);
        debug!("aberth: degree {d}, Cauchy bound {rho:.4e}, ladder {w}..{target} bits");
        initial_guesses(d, rho, w)
    };
    let mut sweeps = 0usize;
    loop {
        match aberth_level(&fp, &mut z, w, cap, &mut sweeps) {
            LevelEnd::Converged => {}
            LevelEnd::Cap(c) => return Err((z, sweeps, c)),
            LevelEnd::Stalled(c) => {
                if w >= target {
                    return Err((z, sweeps, c));
                }
                debug!("aberth: stalled at {w} bits");
            }
        }
        if w >= target {
            break;
        }
        w = (2 * w).min(target);
        fp = lift_coeffs::<R>(p, w);
        z = z.iter().map(|c| cplx::set_prec(c, w)).collect();
    }
    // Newton polish at full precision
    let dfp = fp.derivative();
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let pv = fp.eval(zi).value;
            let dv = dfp.eval(zi).value;
            if dv.re.is_zero() && dv.im.is_zero() {
                break;
            }
            let corr = pv / dv;
            let small = cplx::log2_abs(&corr) - cplx::log2_abs(zi).max(0.0) < -(target as f64) + 4.0;
            *zi = zi.clone() - corr;
            if small {
                break;
            }
        }
    }
    Ok((z, sweeps))
}

/// Roots of `p` at the options' precision, certified where possible.
pub fn find_roots_with<R: Real>(p: &QPoly, source: Factor, opts: &RootOptions) -> Result<RootSet<R>> {
    if p.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial has no root set".into()));
    }
    let degree = p.deg();
    let v = p.valuation().unwrap_or(0);
    let core = p.shift_down(v)?;
    let d = core.deg();
    let prec = opts.precision_bits;
    let zero = R::from_f64_prec(0.0, 64);
    if d == 0 {
        return Ok(RootSet {
            source,
            degree,
            origin_multiplicity: v,
            roots: Vec::new(),
            radii: Vec::new(),
            precision_bits: prec,
            residual_bound: zero,
            min_separation: R::from_f64_prec(f64::INFINITY, 64),
            certified_simple: true,
            sweeps: 0,
        });
    }
    let (mut z, sweeps) = match aberth::<R>(&core, opts) {
        Ok(ok) => ok,
        Err((z, sweeps, corr)) => {
            let partial = certify::<R>(&core, z, source, degree, v, prec, sweeps);
            return Err(Error::NonConvergence {
                sweeps,
                log2_correction: corr,
                partial: Box::new(partial.to_big()),
            });
        }
    };
    sort_points(&mut z);
    Ok(certify(&core, z, source, degree, v, prec, sweeps))
}

fn certify<R: Real>(
    core: &QPoly,
    mut z: Vec<Complex<R>>,
    source: Factor,
    degree: usize,
    v: usize,
    prec: u32,
    sweeps: usize,
) -> RootSet<R> {
    let d = core.deg();
    let fp = FloatPoly::<R>::from_exact(core, prec);
    let dfp = fp.derivative();
    let maxc = fp.max_abs_coeff().set_prec(64);
    let dd = R::from_f64_prec(d as f64, 64);
    let inf = R::from_f64_prec(f64::INFINITY, 64);
    let one = R::from_f64_prec(1.0, 64);
    let radius = |zi: &Complex<R>| {
        let pv = fp.eval(zi);
        let dv = dfp.eval(zi);
        let ap = cplx::abs(&pv.value).set_prec(64) + pv.err.clone();
        let ad = cplx::abs(&dv.value).set_prec(64) - dv.err.clone();
        let r = if ad > R::from_f64_prec(0.0, 64) { dd.clone() * ap.clone() / ad } else { inf.clone() };
        (r, ap)
    };
    // real polynomial: move roots whose disc meets the axis onto it; the
    // radius is recomputed at the new centre below
    if core.coeffs().iter().all(|c| num_traits::Zero::is_zero(&c.im)) {
        for zi in z.iter_mut() {
            let (r, _) = radius(zi);
            if zi.im.abs().set_prec(64) <= r {
                zi.im = R::from_f64_prec(0.0, prec);
            }
        }
    }
    sort_points(&mut z);
    let mut radii = Vec::with_capacity(d);
    let mut resid = R::from_f64_prec(0.0, 64);
    for zi in &z {
        let (r, ap) = radius(zi);
        radii.push(r);
        let az = cplx::abs(zi).set_prec(64);
        let scale = if az > one { az.ln() * dd.clone() } else { R::from_f64_prec(0.0, 64) };
        let rb = ap / (maxc.clone() * scale.exp());
        if rb > resid {
            resid = rb;
        }
    }
    let mut min_sep = inf.clone();
    for i in 0..z.len() {
        for j in i + 1..z.len() {
            let dz = z[i].clone() - z[j].clone();
            let s = cplx::abs(&dz).set_prec(64);
            if s < min_sep {
                min_sep = s;
            }
        }
    }
    let mut max_r = R::from_f64_prec(0.0, 64);
    for r in &radii {
        if *r > max_r {
            max_r = r.clone();
        }
    }
    let certified = max_r.is_finite() && min_sep > max_r.clone() * R::from_f64_prec(2.0, 64);
    debug!(
        "certify {}: {} roots, max radius 2^{:.1}, min separation 2^{:.1}, certified {}",
        source,
        d,
        max_r.log2_abs(),
        min_sep.log2_abs(),
        certified
    );
    RootSet {
        source,
        degree,
        origin_multiplicity: v,
        roots: z,
        radii,
        precision_bits: prec,
        residual_bound: resid,
        min_separation: min_sep,
        certified_simple: certified,
        sweeps,
    }
}

impl<R: Real> RootSet<R> {
    /// Same data in big floats.
    pub fn to_big(&self) -> RootSet<BigFloat> {
        let b = |x: &R| BigFloat::from_f64_prec(x.to_f64(), 64);
        let conv = |c: &Complex<R>| {
            // decimal round trip keeps full precision for either backend
            let p = self.precision_bits;
            Complex::new(big_from_real(&c.re, p), big_from_real(&c.im, p))
        };
        RootSet {
            source: self.source,
            degree: self.degree,
            origin_multiplicity: self.origin_multiplicity,
            roots: self.roots.iter().map(conv).collect(),
            radii: self.radii.iter().map(b).collect(),
            precision_bits: self.precision_bits,
            residual_bound: b(&self.residual_bound),
            min_separation: b(&self.min_separation),
            certified_simple: self.certified_simple,
            sweeps: self.sweeps,
        }
    }
}

fn big_from_real<R: Real>(x: &R, prec: u32) -> BigFloat {
    let s = x.to_decimal((prec as f64 * 0.30103) as usize + 3);
    match rug::Float::parse(&s) {
        Ok(v) => BigFloat(rug::Float::with_val(prec, v)),
        Err(_) => BigFloat::from_f64_prec(x.to_f64(), prec),
    }
}

/// Roots at the default precision `max(256, 4 deg)`.
pub fn find_roots(p: &QPoly, precision_bits: u32) -> Result<RootSet> {
    find_roots_with::<BigFloat>(p, Factor::Other, &RootOptions { precision_bits, start_bits: 128, presolve: true })
}

/// Union of root sets of coprime factors; certified when both are and the
/// discs of different sets are disjoint as well.
pub fn merge_root_sets(a: &RootSet, b: &RootSet, source: Factor) -> RootSet {
    let mut pairs: Vec<(BigComplex, BigFloat)> = a
        .roots
        .iter()
        .cloned()
        .zip(a.radii.iter().cloned())
        .chain(b.roots.iter().cloned().zip(b.radii.iter().cloned()))
        .collect();
    pairs.sort_by(|x, y| cmp_points(&x.0, &y.0));
    let mut min_sep = if a.min_separation < b.min_separation { a.min_separation.clone() } else { b.min_separation.clone() };
    let mut disjoint = true;
    for (x, rx) in a.roots.iter().zip(&a.radii) {
        for (y, ry) in b.roots.iter().zip(&b.radii) {
            let s = cplx::abs(&(x.clone() - y.clone())).set_prec(64);
            if s <= rx.clone() + ry.clone() {
                disjoint = false;
            }
            if s < min_sep {
                min_sep = s;
            }
        }
    }
    let resid = if a.residual_bound > b.residual_bound { a.residual_bound.clone() } else { b.residual_bound.clone() };
    let (roots, radii): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    RootSet {
        source,
        degree: a.degree + b.degree,
        origin_multiplicity: a.origin_multiplicity + b.origin_multiplicity,
        roots,
        radii,
        precision_bits: a.precision_bits.min(b.precision_bits),
        residual_bound: resid,
        min_separation: min_sep,
        certified_simple: a.certified_simple && b.certified_simple && disjoint,
        sweeps: a.sweeps + b.sweeps,
    }
}

/// Residues of `u` at the roots of its denominator.
#[derive(Clone, Debug)]
pub struct Residues {
    /// `(pole, residue)` for the nonzero poles, in root-set order.
    pub poles: Vec<(BigComplex, BigComplex)>,
    /// Exact residue at a simple pole at the origin.
    pub origin: Option<GaussianRational>,
    pub sum: BigComplex,
}

/// `num(r) / den'(r)` at every pole; requires a certified simple root set
/// of `u.den()`.
pub fn residues_at_poles(u: &RationalFunction, rs: &RootSet, precision_bits: u32) -> Result<Residues> {
    if !rs.certified_simple || rs.origin_multiplicity > 1 {
        return Err(Error::MultiplePole {
            log2_sep: rs.min_separation.log2_abs(),
            log2_radius: rs.max_radius().log2_abs(),
        });
    }
    let prec = precision_bits.max(rs.precision_bits);
    let np = FloatPoly::<BigFloat>::from_exact(u.num(), prec);
    let dp = FloatPoly::<BigFloat>::from_exact(&u.den().derivative(), prec);
    let mut sum = cplx::zero::<BigFloat>(prec);
    let mut poles = Vec::with_capacity(rs.roots.len());
    for r in &rs.roots {
        let r = cplx::set_prec(r, prec);
        let res = np.eval(&r).value / dp.eval(&r).value;
        sum = sum + res.clone();
        poles.push((r, res));
    }
    let origin = if rs.origin_multiplicity == 1 {
        let z = u.num().coeff(0) / u.den().derivative().coeff(0);
        sum = sum + to_complex::<BigFloat>(&z, prec);
        Some(z)
    } else {
        None
    };
    Ok(Residues { poles, origin, sum })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gint, gq};

    fn p(c: &[i64]) -> QPoly {
        QPoly::new(c.iter().map(|&v| gint(v)).collect())
    }

    #[test]
    fn linear_and_pure_power() {
        let rs = find_roots(&QPoly::linear(gq(1, 2, 0, 1), gint(2)), 128).unwrap();
        assert_eq!(rs.origin_multiplicity, 0);
        assert_eq!(rs.roots.len(), 1);
        assert!((rs.roots[0].re.to_f64() + 0.25).abs() < 1e-30);
        let rs = find_roots(&p(&[0, 0, 0, 1]), 128).unwrap();
        assert_eq!(rs.origin_multiplicity, 3);
        assert!(rs.roots.is_empty());
    }

    #[test]
    fn f64_backend_on_roots_of_unity() {
        let q = p(&[-1, 0, 0, 0, 0, 0, 0, 0, 1]);
        let opts = RootOptions { precision_bits: 53, start_bits: 53, presolve: false };
        let rs = find_roots_with::<f64>(&q, Factor::Other, &opts).unwrap();
        assert_eq!(rs.roots.len(), 8);
        for r in &rs.roots {
            assert!((r.norm() - 1.0).abs() < 1e-12);
        }
        assert!(rs.certified_simple);
    }

    #[test]
    fn wilkinson_like_certified() {
        let mut q = QPoly::one();
        for k in 1..=20 {
            q = &q * &p(&[-k, 1]);
        }
        let rs = find_roots(&q, 256).unwrap();
        assert!(rs.certified_simple);
        for (k, r) in rs.roots.iter().enumerate() {
            assert!((r.re.to_f64() - (k + 1) as f64).abs() < 1e-40);
        }
    }

    #[test]
    fn double_root_is_not_certified() {
        let q = &p(&[-1, 1]) * &p(&[-1, 1]);
        let rs = find_roots(&(&q * &p(&[3, 1])), 128).unwrap();
        assert!(!rs.certified_simple);
    }
}

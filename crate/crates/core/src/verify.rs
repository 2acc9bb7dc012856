//! Verification suites over `(n, m)` grids with a pass/fail report.

use std::fmt;

use log::info;
use num_traits::Zero;
use serde::Serialize;

use crate::backlund::{check_integral, check_system, gromak_chain, potential_chain, u_from_potentials};
use crate::error::Result;
use crate::exact::{format_gr, from_rational, gint, q, GaussianRational};
use crate::map::RootCache;
use crate::ratfunc::RationalFunction;
use crate::scalar::{cplx, BigComplex, BigFloat, Real};
use crate::umemura::{build_u_range, check_negm_symmetry, laurent_at_infinity, piii_residual, piii_residual_sampled, sample_points, Params};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: String,
    pub n: i64,
    pub m: String,
    pub passed: bool,
    /// `exact` or the tolerance used.
    pub mode: String,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:<10} n={:<3} m={:<8} [{}] {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.suite,
            self.n,
            self.m,
            self.mode,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, suite: &str, n: i64, m: &GaussianRational, passed: bool, mode: &str, detail: String) {
        let c = Check { suite: suite.into(), n, m: format_gr(m), passed, mode: mode.into(), detail };
        info!("{c}");
        self.checks.push(c);
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub n_max: usize,
    pub ms: Vec<GaussianRational>,
    /// Exact symbolic residual up to this `n`, sampled beyond it.
    pub exact_up_to: usize,
    pub sample_count: usize,
    pub seed: u64,
    /// Cross-oracle chains up to this `n`.
    pub chain_up_to: usize,
    /// Residue suite up to this `n` (0 disables it), for the parameters in
    /// `residue_ms`.
    pub residues_up_to: usize,
    pub residue_ms: Vec<GaussianRational>,
    pub precision_bits: u32,
    /// log2 of the residue tolerance
    pub residue_tol_log2: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_max: 8,
            ms: vec![gint(0), gint(1), from_rational(q(1, 2)), crate::exact::gq(0, 1, 4, 5)],
            exact_up_to: 8,
            sample_count: 20,
            seed: 1,
            chain_up_to: 8,
            residues_up_to: 0,
            residue_ms: vec![gint(0), gint(1), crate::exact::gq(0, 1, 4, 5)],
            precision_bits: 256,
            residue_tol_log2: 1e-20f64.log2(),
        }
    }
}

/// Exact PIII residual and the `u -> 1`, `a_1 = -n/2` Laurent check for
/// one candidate `u`.
pub fn check_candidate(report: &mut Report, u: &RationalFunction, n: i64, m: &GaussianRational, cfg: &VerifyConfig) {
    let par = Params::new(n, m.clone());
    if n.unsigned_abs() as usize <= cfg.exact_up_to {
        let r = piii_residual(u, &par);
        let detail = if r.is_zero() { "residual is the zero polynomial".into() } else { format!("residual has degree {}", r.deg()) };
        report.push("residual", n, m, r.is_zero(), "exact", detail);
    } else {
        let pts = sample_points(cfg.sample_count, cfg.seed ^ n as u64);
        match piii_residual_sampled(u, &par, &pts) {
            Ok(v) => {
                let bad = v.iter().filter(|z| !z.is_zero()).count();
                report.push(
                    "residual",
                    n,
                    m,
                    bad == 0,
                    "exact, sampled",
                    format!("{} points, {} nonzero", pts.len(), bad),
                );
            }
            Err(e) => report.push("residual", n, m, false, "exact, sampled", e.to_string()),
        }
    }
    match laurent_at_infinity(u, 2) {
        Ok(c) => {
            let want = from_rational(q(-n, 2));
            let ok = c[0] == gint(1) && c[1] == want;
            report.push("laurent", n, m, ok, "exact", format!("a0 = {}, a1 = {}", format_gr(&c[0]), format_gr(&c[1])));
        }
        Err(e) => report.push("laurent", n, m, false, "exact", e.to_string()),
    }
}

pub fn run(cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::default();
    let mut cache = RootCache::new(cfg.precision_bits);
    for m in &cfg.ms {
        let us = build_u_range(cfg.n_max, m)?;
        for (n, u) in us.iter().enumerate().skip(1) {
            check_candidate(&mut report, u, n as i64, m, cfg);
            let sym = check_negm_symmetry(n as i64, m)?;
            report.push("symmetry", n as i64, m, sym, "exact", "u_n(x;-m) u_n(-x;m) = 1".into());
        }
        let top = cfg.chain_up_to.min(cfg.n_max);
        if top > 0 {
            let gr = gromak_chain(m, top)?;
            let pc = potential_chain(m, top)?;
            for n in 1..=top {
                let via_potentials = u_from_potentials(&pc[n])?;
                let ok = gr[n] == us[n] && via_potentials == us[n];
                report.push("oracles", n as i64, m, ok, "exact", "recurrence = Gromak = potentials".into());
                let integral = check_integral(&pc[n])?;
                let want = Params::new(n as i64, m.clone()).theta0();
                let ok = integral.as_constant().as_ref() == Some(&want);
                report.push("integral", n as i64, m, ok, "exact", format!("I = Θ0 = {}", format_gr(&want)));
                let sys = check_system(&pc[n])?;
                report.push("system", n as i64, m, sys.is_zero(), "exact", "four first-order equations".into());
            }
        }
        let residue_top = if cfg.residue_ms.contains(m) { cfg.residues_up_to.min(cfg.n_max) } else { 0 };
        for n in 1..=residue_top {
            let mode = format!("2^{:.1}", cfg.residue_tol_log2);
            match residue_check(&mut cache, n, m, cfg.precision_bits, cfg.residue_tol_log2) {
                Ok((ok, detail)) => report.push("residues", n as i64, m, ok, &mode, detail),
                Err(e) => report.push("residues", n as i64, m, false, &mode, e.to_string()),
            }
        }
    }
    Ok(report)
}

/// Every nonzero pole has residue `+-1/2` and the finite residues sum to
/// `-n/2`, both within `2^tol_log2`.
pub fn residue_check(cache: &mut RootCache, n: usize, m: &GaussianRational, prec: u32, tol_log2: f64) -> Result<(bool, String)> {
    let (_, res) = cache.residues(n, m)?;
    let half: BigComplex = cplx::from_f64(0.5, 0.0, prec);
    let mut worst = f64::NEG_INFINITY;
    for (_, r) in &res.poles {
        let d1 = cplx::log2_abs(&(r.clone() - half.clone()));
        let d2 = cplx::log2_abs(&(r.clone() + half.clone()));
        worst = worst.max(d1.min(d2));
    }
    let target: BigComplex = cplx::from_f64(-(n as f64) / 2.0, 0.0, prec);
    let sum_err = cplx::log2_abs(&(res.sum.clone() - target));
    let ok = worst <= tol_log2 && sum_err <= tol_log2;
    Ok((
        ok,
        format!(
            "{} poles, max |res -+ 1/2| = 2^{:.1}, |sum + n/2| = 2^{:.1}, sum = {}",
            res.poles.len() + usize::from(res.origin.is_some()),
            worst,
            sum_err,
            BigFloat::to_decimal(&res.sum.re, 12)
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_passes() {
        let cfg = VerifyConfig { n_max: 3, chain_up_to: 3, residues_up_to: 3, precision_bits: 128, ..Default::default() };
        let r = run(&cfg).unwrap();
        for c in &r.checks {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn tampered_candidate_fails() {
        let cfg = VerifyConfig::default();
        let m = gint(0);
        let u = crate::umemura::build_u(3, &m).unwrap();
        let bad = RationalFunction::new(&u.num().clone() + &crate::ratfunc::QPoly::x(), u.den().clone()).unwrap();
        let mut r = Report::default();
        check_candidate(&mut r, &bad, 3, &m, &cfg);
        assert!(!r.all_passed());
    }
}

//! Backlund transformations: Gromak's map on `u` and the step on the Lax
//! potentials `(y, v, s, t)`.
//!
//! A potential is stored as a rational part times `e^{2 sigma x} x^{sigma m}`
//! with `sigma = +1` for `y, s` and `sigma = -1` for `v, t`, so the whole
//! chain stays in exact arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{gint, gq, imag_unit, GaussianRational};
use crate::io::{RationalJson, Tagged};
use crate::ratfunc::{QPoly, RationalFunction};
use crate::umemura::Params;

type RF = RationalFunction;

/// Exponential and power tags of `(y, v, s, t)`.
pub const TAGS: [i8; 4] = [1, -1, 1, -1];

#[derive(Clone, Debug, PartialEq)]
pub struct Potentials {
    pub ry: RF,
    pub rv: RF,
    pub rs: RF,
    pub rt: RF,
    pub exp_tag: [i8; 4],
    pub pow_tag: [i8; 4],
    pub theta_inf: GaussianRational,
    /// The exponent carried by the power tag.
    pub m: GaussianRational,
}

fn c(z: GaussianRational) -> RF {
    RF::constant(z)
}

fn x() -> RF {
    RF::x()
}

fn x_inv() -> RF {
    RF::new(QPoly::one(), QPoly::x()).expect("nonzero")
}

impl Potentials {
    fn check_tags(&self) -> Result<()> {
        if self.exp_tag != TAGS || self.pow_tag != TAGS {
            return Err(Error::TagMismatch(format!(
                "exp {:?}, pow {:?}, expected {:?}",
                self.exp_tag, self.pow_tag, TAGS
            )));
        }
        Ok(())
    }

    /// `x d/dx` of a tagged component, rational part only.
    fn x_deriv(&self, r: &RF, sigma: i64) -> RF {
        let s = gint(sigma);
        x().mul(&r.derivative())
            .add(&x().mul(r).scale(&(s.clone() * gint(2))))
            .add(&r.scale(&(s * self.m.clone())))
    }
}

/// Closed-form potentials for `n = 0` with the free constant `K`.
pub fn seed_potentials_scaled(m: &GaussianRational, k: &GaussianRational) -> Potentials {
    let th = m.clone() + gint(1);
    let one_m2 = gint(1) - th.clone() * gint(2);
    let quarter = gq(1, 4, 0, 1);
    let ry = x().scale(&(-quarter.clone() * k.clone()));
    let rs = x().scale(&(quarter.clone() * k.clone()));
    let kinv = gint(1) / k.clone();
    let rt = x_inv().scale(&(one_m2.clone() * kinv.clone()));
    let lin = RF::from_poly(QPoly::linear(gint(1) + th.clone() * gint(2), gint(4)));
    let rv = lin.mul(&x_inv()).scale(&(-quarter * one_m2 * kinv));
    Potentials { ry, rv, rs, rt, exp_tag: TAGS, pow_tag: TAGS, theta_inf: th, m: m.clone() }
}

/// Seed with `K = 1`.
pub fn seed_potentials(m: &GaussianRational) -> Potentials {
    seed_potentials_scaled(m, &gint(1))
}

/// One step `n -> n + 1`; `Θ∞` decreases by one.
pub fn backlund_step(p: &Potentials) -> Result<Potentials> {
    p.check_tags()?;
    let i = imag_unit();
    let th = p.theta_inf.clone();
    let (y, v, s, t) = (&p.ry, &p.rv, &p.rs, &p.rt);
    let yt = y.mul(t);
    let xx = x().mul(&x());
    let den = xx.add(&yt.mul(&yt)).sub(&yt.scale(&th)).sub(&v.mul(y));
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let v_hat = x().mul(t).scale(&(-i.clone()));
    let y_hat = x()
        .mul(s)
        .sub(&y.scale(&(th.clone() - gint(1))))
        .add(&y.mul(&yt))
        .mul(&x_inv())
        .scale(&i);
    let s_hat = y.mul(&den).div(&xx)?.scale(&i);
    let t_num = yt.mul(t).sub(&t.scale(&th)).sub(v);
    let t_hat = x().mul(&t_num).div(&den)?.scale(&i);
    Ok(Potentials {
        ry: y_hat,
        rv: v_hat,
        rs: s_hat,
        rt: t_hat,
        exp_tag: TAGS,
        pow_tag: TAGS,
        theta_inf: th - gint(1),
        m: p.m.clone(),
    })
}

/// `n` steps from the seed; entry `k` is the potential set for `u_k`.
pub fn potential_chain(m: &GaussianRational, n: usize) -> Result<Vec<Potentials>> {
    let mut out = vec![seed_potentials(m)];
    for _ in 0..n {
        let next = backlund_step(out.last().unwrap())?;
        out.push(next);
    }
    Ok(out)
}

/// `u = -y / s`; the tags cancel.
pub fn u_from_potentials(p: &Potentials) -> Result<RF> {
    p.ry.div(&p.rs).map(|u| u.neg())
}

/// Numerators of the four first-order equations after moving all terms to
/// one side.
#[derive(Clone, Debug, PartialEq)]
pub struct SystemResidual {
    pub eq_y: QPoly,
    pub eq_v: QPoly,
    pub eq_s: QPoly,
    pub eq_t: QPoly,
}

impl SystemResidual {
    pub fn is_zero(&self) -> bool {
        self.eq_y.is_zero() && self.eq_v.is_zero() && self.eq_s.is_zero() && self.eq_t.is_zero()
    }
}

pub fn check_system(p: &Potentials) -> Result<SystemResidual> {
    p.check_tags()?;
    let th = p.theta_inf.clone();
    let (y, v, s, t) = (&p.ry, &p.rv, &p.rs, &p.rt);
    let st = s.mul(t);
    // x y' = -2 x s + Θ∞ y
    let r_y = p.x_deriv(y, 1).add(&x().mul(s).scale(&gint(2))).sub(&y.scale(&th));
    // x v' = -2 x t (s t - x) - Θ∞ v
    let r_v = p
        .x_deriv(v, -1)
        .add(&x().mul(t).mul(&st.sub(&x())).scale(&gint(2)))
        .add(&v.scale(&th));
    // x s' = (1 - Θ∞) s - 2 x y + 4 y s t
    let r_s = p
        .x_deriv(s, 1)
        .sub(&s.scale(&(gint(1) - th.clone())))
        .add(&x().mul(y).scale(&gint(2)))
        .sub(&y.mul(&st).scale(&gint(4)));
    // x t' = Θ∞ t - 2 y t^2 + 2 v
    let r_t = p
        .x_deriv(t, -1)
        .sub(&t.scale(&th))
        .add(&y.mul(t).mul(t).scale(&gint(2)))
        .sub(&v.scale(&gint(2)));
    Ok(SystemResidual {
        eq_y: r_y.num().clone(),
        eq_v: r_v.num().clone(),
        eq_s: r_s.num().clone(),
        eq_t: r_t.num().clone(),
    })
}

/// The integral of motion
/// `(2Θ∞/x) s t - Θ∞ - (2/x) y t (s t - x) + (2/x) v s`, reduced.
pub fn check_integral(p: &Potentials) -> Result<RF> {
    p.check_tags()?;
    let th = p.theta_inf.clone();
    let (y, v, s, t) = (&p.ry, &p.rv, &p.rs, &p.rt);
    let st = s.mul(t);
    let two_over_x = x_inv().scale(&gint(2));
    let i = two_over_x
        .mul(&st)
        .scale(&th)
        .sub(&c(th))
        .sub(&two_over_x.mul(&y.mul(t)).mul(&st.sub(&x())))
        .add(&two_over_x.mul(&v.mul(s)));
    Ok(i)
}

/// Residual numerator of `x u' = 2x - (1 - 2Θ∞) u + 4 s t u^2 - 2 x u^2`.
pub fn first_order_identity(u: &RF, p: &Potentials, par: &Params) -> Result<QPoly> {
    p.check_tags()?;
    let th = par.theta_inf();
    let st = p.rs.mul(&p.rt);
    let u2 = u.mul(u);
    let r = x()
        .mul(&u.derivative())
        .sub(&x().scale(&gint(2)))
        .add(&u.scale(&(gint(1) - th * gint(2))))
        .sub(&st.mul(&u2).scale(&gint(4)))
        .add(&x().mul(&u2).scale(&gint(2)));
    Ok(r.num().clone())
}

/// Gromak's map `(Θ0, Θ∞) -> (Θ0 + 1, Θ∞ - 1)` on a solution `u`.
pub fn gromak_step(u: &RF, par: &Params) -> Result<RF> {
    let (p, q) = (u.num(), u.den());
    let wr = &(&p.derivative() * q) - &(p * &q.derivative());
    // x (p'q - pq') + 2x p^2 + 2x q^2
    let common = (&wr + &(&(p * p) + &(q * q)).scale(&gint(2))).shift_up(1);
    let pq = p * q;
    let a = gint(2) * (gint(1) - par.theta_inf()) + gint(1);
    let b = gint(2) * par.theta0() + gint(1);
    let n1 = &common - &pq.scale(&a);
    let n2 = &common + &pq.scale(&b);
    let den = p * &n2;
    if den.is_zero() {
        return Err(Error::DegenerateDenominator);
    }
    RF::new(q * &n1, den)
}

/// `n` Gromak steps from `u = 1` at parameter `m`.
pub fn gromak_chain(m: &GaussianRational, n: usize) -> Result<Vec<RF>> {
    let mut out = vec![RF::one()];
    for k in 0..n {
        let next = gromak_step(out.last().unwrap(), &Params::new(k as i64, m.clone()))?;
        out.push(next);
    }
    Ok(out)
}

/// JSON form of one chain step.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PotentialsJson {
    pub m: String,
    pub theta_inf: String,
    pub y: Tagged,
    pub v: Tagged,
    pub s: Tagged,
    pub t: Tagged,
}

impl Potentials {
    pub fn to_json(&self) -> PotentialsJson {
        let tag = |r: &RF, k: usize| Tagged {
            exp_tag: self.exp_tag[k],
            pow_tag: self.pow_tag[k],
            rational: RationalJson::from_rf(r),
        };
        PotentialsJson {
            m: crate::exact::format_gr(&self.m),
            theta_inf: crate::exact::format_gr(&self.theta_inf),
            y: tag(&self.ry, 0),
            v: tag(&self.rv, 1),
            s: tag(&self.rs, 2),
            t: tag(&self.rt, 3),
        }
    }

    pub fn from_json(j: &PotentialsJson) -> Result<Self> {
        let m = crate::exact::parse_gr(&j.m)?;
        let theta_inf = crate::exact::parse_gr(&j.theta_inf)?;
        Ok(Potentials {
            ry: j.y.rational.to_rf()?,
            rv: j.v.rational.to_rf()?,
            rs: j.s.rational.to_rf()?,
            rt: j.t.rational.to_rf()?,
            exp_tag: [j.y.exp_tag, j.v.exp_tag, j.s.exp_tag, j.t.exp_tag],
            pow_tag: [j.y.pow_tag, j.v.pow_tag, j.s.pow_tag, j.t.pow_tag],
            theta_inf,
            m,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_gr;
    use crate::umemura::build_u;

    #[test]
    fn seed_is_a_solution() {
        for m in ["0", "1/2", "4/5*i"] {
            let m = parse_gr(m).unwrap();
            let seed = seed_potentials(&m);
            assert_eq!(u_from_potentials(&seed).unwrap(), RF::one());
            assert!(check_system(&seed).unwrap().is_zero());
            assert_eq!(check_integral(&seed).unwrap(), c(m.clone()));
            let fo = first_order_identity(&RF::one(), &seed, &Params::new(0, m)).unwrap();
            assert!(fo.is_zero());
        }
    }

    #[test]
    fn chain_matches_umemura() {
        let m = parse_gr("1/3-1/2*i").unwrap();
        let chain = potential_chain(&m, 3).unwrap();
        let gromak = gromak_chain(&m, 3).unwrap();
        for n in 0..=3 {
            let u = build_u(n as i64, &m).unwrap();
            assert_eq!(u_from_potentials(&chain[n]).unwrap(), u, "potentials n={n}");
            assert_eq!(gromak[n], u, "gromak n={n}");
            assert!(check_system(&chain[n]).unwrap().is_zero());
            assert_eq!(check_integral(&chain[n]).unwrap(), c(m.clone() + gint(n as i64)));
        }
    }

    #[test]
    fn perturbation_is_detected() {
        let m = gint(0);
        let mut seed = seed_potentials(&m);
        seed.rv = seed.rv.add(&RF::one());
        assert!(!check_system(&seed).unwrap().is_zero());
        assert_ne!(check_integral(&seed).unwrap(), c(m.clone()));
        seed.rv = seed.rv.add(&x());
        assert!(check_integral(&seed).unwrap().as_constant().is_none());
        let mut bad = seed_potentials(&m);
        bad.exp_tag[0] = -1;
        assert!(matches!(backlund_step(&bad), Err(Error::TagMismatch(_))));
    }

    #[test]
    fn json_roundtrip() {
        let p = backlund_step(&seed_potentials(&parse_gr("3/4").unwrap())).unwrap();
        let j = p.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: PotentialsJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Potentials::from_json(&back).unwrap(), p);
    }
}

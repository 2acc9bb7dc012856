//! Multi-modular gcd of polynomials over Q(i).
//!
//! Both embeddings `i -> r` and `i -> -r` with `r^2 = -1 (mod p)` are used so
//! real and imaginary parts of each coefficient can be separated modulo `p`.
//! Images are combined by CRT, lifted by rational reconstruction, and the
//! candidate is accepted only after exact trial division of both inputs.

use num_traits::Zero;
use rug::Integer;

use crate::exact::GaussianRational;
use crate::poly::Polynomial;
use crate::zpoly::ZiPoly;

type QPoly = Polynomial<GaussianRational>;

#[derive(Clone, Copy, Debug)]
struct Prime {
    p: u64,
    r: u64,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

/// Descending sequence of primes `p = 1 (mod 4)` just below `2^62`.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream { next: (1u64 << 62) - 3 }
    }
}

impl Iterator for PrimeStream {
    type Item = Prime;
    fn next(&mut self) -> Option<Prime> {
        loop {
            let p = self.next;
            self.next -= 4;
            if Integer::from(p).is_probably_prime(30) == rug::integer::IsPrime::No {
                continue;
            }
            let mut g = 2u64;
            while powmod(g, (p - 1) / 2, p) != p - 1 {
                g += 1;
            }
            return Some(Prime { p, r: powmod(g, (p - 1) / 4, p) });
        }
    }
}

fn reduce(c: &Integer, p: u64) -> u64 {
    let r = Integer::from(c % p);
    let r = if r < 0 { r + p } else { r };
    r.to_u64().expect("residue fits")
}

/// Image of a Gaussian-integer polynomial under `i -> s` modulo `p`.
fn image(a: &ZiPoly, p: u64, s: u64) -> Vec<u64> {
    let n = a.re.len().max(a.im.len());
    let mut out: Vec<u64> = (0..n)
        .map(|k| {
            let re = a.re.get(k).map_or(0, |c| reduce(c, p));
            let im = a.im.get(k).map_or(0, |c| reduce(c, p));
            (re + mulmod(im, s, p)) % p
        })
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

fn monic_mod(a: &mut [u64], p: u64) {
    if let Some(&lc) = a.last() {
        let inv = invmod(lc, p);
        for c in a.iter_mut() {
            *c = mulmod(*c, inv, p);
        }
    }
}

fn rem_mod(a: &mut Vec<u64>, b: &[u64], p: u64) {
    // b is monic
    let db = b.len() - 1;
    while a.len() > db {
        let c = *a.last().unwrap();
        let shift = a.len() - 1 - db;
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                let t = mulmod(c, *bj, p);
                let v = &mut a[shift + j];
                *v = if *v >= t { *v - t } else { *v + p - t };
            }
        }
        a.pop();
        while a.last() == Some(&0) {
            a.pop();
        }
    }
}

fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    monic_mod(&mut a, p);
    monic_mod(&mut b, p);
    while !b.is_empty() {
        rem_mod(&mut a, &b, p);
        monic_mod(&mut a, p);
        std::mem::swap(&mut a, &mut b);
    }
    a
}

/// Smallest `n/d` with `n = u d (mod m)`, `|n|, d <= sqrt(m/2)`.
fn rational_reconstruct(u: &Integer, m: &Integer) -> Option<(Integer, Integer)> {
    let bound = Integer::from(m >> 1u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.clone());
    let (mut t0, mut t1) = (Integer::new(), Integer::from(1));
    while r1 > bound {
        let (q, r) = r0.div_rem_floor_ref(&r1).into();
        let q: Integer = q;
        let t = Integer::from(&t0 - &q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        t0 = std::mem::replace(&mut t1, t);
    }
    if t1.is_zero() || Integer::from(t1.abs_ref()) > bound {
        return None;
    }
    if t1 < 0 {
        r1 = -r1;
        t1 = -t1;
    }
    let g = Integer::from(r1.gcd_ref(&t1));
    if g != 1 {
        return None;
    }
    Some((r1, t1))
}

struct Accumulator {
    modulus: Integer,
    re: Vec<Integer>,
    im: Vec<Integer>,
}

impl Accumulator {
    fn absorb(&mut self, pr: Prime, gp: &[u64], gm: &[u64]) {
        let p = pr.p;
        let inv2 = invmod(2, p);
        let inv2r = invmod(mulmod(2, pr.r, p), p);
        let new_re: Vec<u64> = gp.iter().zip(gm).map(|(&a, &b)| mulmod((a + b) % p, inv2, p)).collect();
        let new_im: Vec<u64> = gp.iter().zip(gm).map(|(&a, &b)| mulmod((a + p - b) % p, inv2r, p)).collect();
        if self.modulus == 1 {
            self.re = new_re.into_iter().map(Integer::from).collect();
            self.im = new_im.into_iter().map(Integer::from).collect();
            self.modulus = Integer::from(p);
            return;
        }
        let minv = invmod(reduce(&self.modulus, p), p);
        for (acc, v) in self.re.iter_mut().zip(new_re).chain(self.im.iter_mut().zip(new_im)) {
            let cur = reduce(acc, p);
            let delta = mulmod((v + p - cur) % p, minv, p);
            *acc += Integer::from(&self.modulus * delta);
        }
        self.modulus *= p;
    }

    fn reconstruct(&self) -> Option<Vec<GaussianRational>> {
        let lift = |u: &Integer| -> Option<num_rational::BigRational> {
            if u.is_zero() {
                return Some(num_rational::BigRational::zero());
            }
            let (n, d) = rational_reconstruct(u, &self.modulus)?;
            Some(num_rational::BigRational::new(
                crate::scalar::integer_to_bigint(&n),
                crate::scalar::integer_to_bigint(&d),
            ))
        };
        self.re
            .iter()
            .zip(&self.im)
            .map(|(a, b)| Some(num_complex::Complex::new(lift(a)?, lift(b)?)))
            .collect()
    }
}

fn divides(g: &QPoly, a: &QPoly) -> bool {
    a.exact_div(g).is_ok()
}

/// Monic gcd over Q(i). Falls back to the Euclidean algorithm for tiny inputs.
pub fn gcd(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return QPoly::one();
    }
    // powers of x are split off exactly
    let va = a.valuation().unwrap_or(0);
    let vb = b.valuation().unwrap_or(0);
    let v = va.min(vb);
    let a = a.shift_down(va).expect("valuation");
    let b = b.shift_down(vb).expect("valuation");
    let core = gcd_nonzero_origin(&a, &b);
    core.shift_up(v)
}

fn gcd_nonzero_origin(a: &QPoly, b: &QPoly) -> QPoly {
    if a.is_constant() || b.is_constant() {
        return QPoly::one();
    }
    if a.deg().min(b.deg()) <= 2 {
        return a.gcd_euclid(b);
    }
    let za = ZiPoly::from_coeffs(a.coeffs());
    let zb = ZiPoly::from_coeffs(b.coeffs());
    let mut best_deg = usize::MAX;
    let mut acc = Accumulator { modulus: Integer::from(1), re: Vec::new(), im: Vec::new() };
    let mut used = 0usize;
    let mut next_check = 1usize;
    for pr in PrimeStream::new() {
        let (p, r) = (pr.p, pr.r);
        let ap = image(&za, p, r);
        let am = image(&za, p, p - r);
        let bp = image(&zb, p, r);
        let bm = image(&zb, p, p - r);
        // leading coefficients must survive reduction
        if ap.len() != za.re.len().max(za.im.len())
            || am.len() != ap.len()
            || bp.len() != zb.re.len().max(zb.im.len())
            || bm.len() != bp.len()
        {
            continue;
        }
        let gp = gcd_mod(ap, bp, p);
        let gm = gcd_mod(am, bm, p);
        if gp.len() != gm.len() {
            continue;
        }
        let d = gp.len() - 1;
        if d == 0 {
            return QPoly::one();
        }
        if d > best_deg {
            continue;
        }
        if d < best_deg {
            best_deg = d;
            acc = Accumulator { modulus: Integer::from(1), re: Vec::new(), im: Vec::new() };
            used = 0;
            next_check = 1;
        }
        acc.absorb(pr, &gp, &gm);
        used += 1;
        if used >= next_check {
            next_check = used + (used / 2).max(1);
            if let Some(c) = acc.reconstruct() {
                let g = QPoly::new(c);
                if g.deg() == best_deg && divides(&g, a) && divides(&g, b) {
                    return g;
                }
            }
        }
    }
    unreachable!("prime stream is infinite")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{gint, gq};

    fn p(c: &[GaussianRational]) -> QPoly {
        QPoly::new(c.to_vec())
    }

    #[test]
    fn matches_euclid_on_small_inputs() {
        let f = p(&[gq(1, 3, 2, 5), gint(1), gq(0, 1, 7, 2)]);
        let g1 = p(&[gq(-5, 2, 1, 1), gint(3), gint(1), gq(2, 9, -1, 4)]);
        let g2 = p(&[gq(1, 1, 1, 1), gint(0), gint(-4), gq(11, 3, 0, 1), gint(2)]);
        let a = &f * &g1;
        let b = &f * &g2;
        let want = a.gcd_euclid(&b);
        assert_eq!(want, f.monic());
        assert_eq!(gcd(&a, &b), want);
    }

    #[test]
    fn coprime_and_origin_factors() {
        let a = p(&[gint(0), gint(0), gint(1), gint(5)]);
        let b = p(&[gint(0), gint(3), gint(7), gq(0, 1, 1, 1)]);
        assert_eq!(gcd(&a, &b), p(&[gint(0), gint(1)]));
        let c = p(&[gint(1), gint(2), gint(3), gint(4)]);
        let d = p(&[gint(5), gint(1), gint(1), gint(1)]);
        assert_eq!(gcd(&c, &d), QPoly::one());
    }

    #[test]
    fn large_coefficients() {
        let mut f = QPoly::one();
        for k in 1..8i64 {
            f = &f * &p(&[gq(k * k + 17, 3 * k + 1, k, 7), gint(1 << k)]);
        }
        let a = &f * &p(&[gq(123456789, 1, -31, 1), gint(1), gint(1)]);
        let b = &f * &p(&[gq(-987654321, 13, 5, 1), gint(1)]);
        assert_eq!(gcd(&a, &b), f.monic());
    }

    #[test]
    fn reconstruction_roundtrip() {
        let m = Integer::from(1_000_003u64) * Integer::from(999_983u64);
        let target = (Integer::from(-355), Integer::from(113));
        let dinv = Integer::from(113).invert(&m).unwrap();
        let u = Integer::from(&target.0 * &dinv) % &m;
        let u = if u < 0 { u + &m } else { u };
        assert_eq!(rational_reconstruct(&u, &m), Some(target));
    }
}

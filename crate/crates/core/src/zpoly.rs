//! Integer and Gaussian-integer polynomial kernels on GMP integers.
//!
//! Products go through Kronecker substitution so a whole polynomial product
//! becomes one big-integer multiplication.

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Integer;

use crate::exact::GaussianRational;
use crate::scalar::{bigint_to_integer, integer_to_bigint};

fn max_bits(a: &[Integer]) -> u32 {
    a.iter().map(|c| c.significant_bits()).max().unwrap_or(0)
}

fn pack(a: &[Integer], k: u32) -> Integer {
    let mut acc = Integer::new();
    for c in a.iter().rev() {
        acc <<= k;
        acc += c;
    }
    acc
}

fn unpack(mut v: Integer, k: u32, len: usize) -> Vec<Integer> {
    let half = Integer::from(1) << (k - 1);
    let modulus = Integer::from(1) << k;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let mut low = v.clone().keep_bits(k);
        if low >= half {
            low -= &modulus;
        }
        v -= &low;
        v >>= k;
        out.push(low);
    }
    debug_assert!(v.is_zero());
    out
}

/// Product of integer polynomials (lowest degree first).
pub fn mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len().min(b.len()) < 8 {
        let mut out = vec![Integer::new(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += Integer::from(x * y);
            }
        }
        return out;
    }
    let n = a.len().min(b.len()) as u32;
    let k = max_bits(a) + max_bits(b) + 32 - n.leading_zeros() + 2;
    let pa = pack(a, k);
    let pb = pack(b, k);
    unpack(pa * pb, k, a.len() + b.len() - 1)
}

pub fn add(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let mut s = a.get(k).cloned().unwrap_or_default();
            if let Some(y) = b.get(k) {
                s += y;
            }
            s
        })
        .collect()
}

pub fn sub(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let mut s = a.get(k).cloned().unwrap_or_default();
            if let Some(y) = b.get(k) {
                s -= y;
            }
            s
        })
        .collect()
}

fn eval_at_pow2(a: &[Integer], k: u32) -> Integer {
    pack(a, k)
}

fn content(a: &[Integer]) -> Integer {
    let mut g = Integer::new();
    for c in a {
        g.gcd_mut(c);
        if g == 1 {
            break;
        }
    }
    g
}

/// Exact quotient `a / b` of integer polynomials when it has integer
/// coefficients; `None` otherwise.
pub fn div_exact(a: &[Integer], b: &[Integer]) -> Option<Vec<Integer>> {
    let la = trimmed_len(a);
    let lb = trimmed_len(b);
    assert!(lb > 0, "division by the zero polynomial");
    if la == 0 {
        return Some(Vec::new());
    }
    if la < lb {
        return None;
    }
    let (a, b) = (&a[..la], &b[..lb]);
    let lq = la - lb + 1;
    // Mignotte: a factor of `a` has coefficients below 2^(deg q) * |a|_2
    let k = max_bits(a) + lq as u32 + (64 - (la as u64).leading_zeros()) / 2 + 3;
    let va = eval_at_pow2(a, k);
    let vb = eval_at_pow2(b, k);
    if vb.is_zero() || !va.is_divisible(&vb) {
        return None;
    }
    let vq = va.div_exact(&vb);
    let q = unpack_checked(vq, k, lq)?;
    if mul(&q, b) == a {
        Some(q)
    } else {
        None
    }
}

fn trimmed_len(a: &[Integer]) -> usize {
    a.iter().rposition(|c| !c.is_zero()).map_or(0, |k| k + 1)
}

fn unpack_checked(mut v: Integer, k: u32, len: usize) -> Option<Vec<Integer>> {
    let half = Integer::from(1) << (k - 1);
    let modulus = Integer::from(1) << k;
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        let mut low = v.clone().keep_bits(k);
        if low >= half {
            low -= &modulus;
        }
        v -= &low;
        v >>= k;
        out.push(low);
    }
    v.is_zero().then_some(out)
}

fn reduced(x: &Integer, den: &Integer) -> BigRational {
    if x.is_zero() {
        return BigRational::zero();
    }
    let g = Integer::from(x.gcd_ref(den));
    let mut n = Integer::from(x.div_exact_ref(&g));
    let mut d = Integer::from(den.div_exact_ref(&g));
    if d < 0 {
        n = -n;
        d = -d;
    }
    BigRational::new_raw(integer_to_bigint(&n), integer_to_bigint(&d))
}

/// Gaussian-integer polynomial `(re + i im) / den` with a positive common
/// denominator.
#[derive(Clone, Debug)]
pub struct ZiPoly {
    pub re: Vec<Integer>,
    pub im: Vec<Integer>,
    pub den: Integer,
}

impl ZiPoly {
    pub fn from_coeffs(c: &[GaussianRational]) -> Self {
        let mut den = Integer::from(1);
        for z in c {
            for r in [&z.re, &z.im] {
                if !r.denom().is_one() {
                    let d = bigint_to_integer(r.denom());
                    den.lcm_mut(&d);
                }
            }
        }
        let conv = |r: &BigRational| -> Integer {
            let n = bigint_to_integer(r.numer());
            if r.denom().is_one() {
                n * &den
            } else {
                let d = bigint_to_integer(r.denom());
                n * Integer::from(den.div_exact_ref(&d))
            }
        };
        ZiPoly {
            re: c.iter().map(|z| conv(&z.re)).collect(),
            im: c.iter().map(|z| conv(&z.im)).collect(),
            den,
        }
    }

    pub fn to_coeffs(&self) -> Vec<GaussianRational> {
        let n = self.re.len().max(self.im.len());
        let part = |v: &Vec<Integer>, k: usize| -> BigRational {
            match v.get(k) {
                Some(x) => reduced(x, &self.den),
                None => BigRational::zero(),
            }
        };
        (0..n).map(|k| Complex::new(part(&self.re, k), part(&self.im, k))).collect()
    }

    pub fn is_real(&self) -> bool {
        self.im.iter().all(|c| c.is_zero())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let den = Integer::from(&self.den * &other.den);
        if self.is_real() && other.is_real() {
            return ZiPoly { re: mul(&self.re, &other.re), im: Vec::new(), den };
        }
        // three real products
        let rr = mul(&self.re, &other.re);
        let ii = mul(&self.im, &other.im);
        let s = mul(&add(&self.re, &self.im), &add(&other.re, &other.im));
        let re = sub(&rr, &ii);
        let im = sub(&sub(&s, &rr), &ii);
        ZiPoly { re, im, den }
    }

    /// Exact value at a Gaussian-rational point.
    pub fn eval_exact(&self, x: &GaussianRational) -> GaussianRational {
        let n = self.re.len().max(self.im.len());
        if n == 0 {
            return GaussianRational::zero();
        }
        let pt = ZiPoly::from_coeffs(std::slice::from_ref(x));
        let (a, b, d) = (&pt.re[0], &pt.im[0], &pt.den);
        let coeff = |k: usize| -> (Integer, Integer) {
            (self.re.get(k).cloned().unwrap_or_default(), self.im.get(k).cloned().unwrap_or_default())
        };
        let (mut ar, mut ai) = coeff(n - 1);
        let mut dk = Integer::from(1);
        for k in (0..n - 1).rev() {
            dk *= d;
            let nr = Integer::from(&ar * a) - Integer::from(&ai * b);
            let ni = Integer::from(&ar * b) + Integer::from(&ai * a);
            let (cr, ci) = coeff(k);
            ar = nr + cr * &dk;
            ai = ni + ci * &dk;
        }
        let den = Integer::from(&self.den * &dk);
        Complex::new(reduced(&ar, &den), reduced(&ai, &den))
    }

    /// Coefficient-wise complex conjugate.
    pub fn conj(&self) -> Self {
        ZiPoly {
            re: self.re.clone(),
            im: self.im.iter().map(|c| Integer::from(-c)).collect(),
            den: self.den.clone(),
        }
    }
}

/// Exact quotient of Gaussian-rational polynomials, `None` when the division
/// leaves a remainder.
///
/// The divisor is made real by multiplying through by its conjugate, after
/// which real and imaginary parts divide separately over the integers.
pub fn div_exact_gaussian(a: &[GaussianRational], b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
    let pa = ZiPoly::from_coeffs(a);
    let pb = ZiPoly::from_coeffs(b);
    let (num, e) = if pb.is_real() {
        (pa.clone(), pb.re.clone())
    } else {
        let bc = pb.conj();
        let e = pb.mul(&bc);
        debug_assert!(e.is_real());
        let mut num = pa.mul(&bc);
        num.den = pa.den.clone();
        (num, e.re)
    };
    let c = content(&e);
    let e: Vec<Integer> = e.iter().map(|x| Integer::from(x.div_exact_ref(&c))).collect();
    let qr = div_exact(&num.re, &e)?;
    let qi = if num.im.iter().all(|x| x.is_zero()) { Vec::new() } else { div_exact(&num.im, &e)? };
    // a/b = (num / e') * den_b / (c * den_a)
    let scale = pb.den.clone();
    let q = ZiPoly {
        re: qr.into_iter().map(|x| x * &scale).collect(),
        im: qi.into_iter().map(|x| x * &scale).collect(),
        den: Integer::from(&c * &num.den),
    };
    Some(q.to_coeffs())
}

/// Multiplies Gaussian-rational coefficient slices through [`ZiPoly`].
pub fn mul_gaussian(a: &[GaussianRational], b: &[GaussianRational]) -> Vec<GaussianRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let pa = ZiPoly::from_coeffs(a);
    let pb = ZiPoly::from_coeffs(b);
    pa.mul(&pb).to_coeffs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gq;

    fn naive(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
        let mut out = vec![Integer::new(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += Integer::from(x * y);
            }
        }
        out
    }

    #[test]
    fn kronecker_matches_schoolbook_with_signs() {
        let a: Vec<Integer> = (0..40).map(|k| Integer::from((k * 7919 % 113) - 56) << (k % 5 * 20)).collect();
        let b: Vec<Integer> = (0..30).map(|k| Integer::from(-(k * 31 % 17) + 8)).collect();
        assert_eq!(mul(&a, &b), naive(&a, &b));
    }

    #[test]
    fn gaussian_product() {
        let a = vec![gq(1, 2, 1, 3); 12];
        let b: Vec<_> = (0..10).map(|k| gq(k, 5, -1, 7)).collect();
        let mut want = vec![GaussianRational::zero(); 21];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                want[i + j] = want[i + j].clone() + x.clone() * y.clone();
            }
        }
        assert_eq!(mul_gaussian(&a, &b), want);
    }
}

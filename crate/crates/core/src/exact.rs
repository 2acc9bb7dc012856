//! Gaussian rationals `a + b i` with `a, b` in Q and their text form.
//!
//! The canonical string is `"a/b+c/d*i"`; the parser also accepts the
//! shorthand forms `"3/4"`, `"4/5*i"`, `"-1/2-2*i"` and `"i"`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type GaussianRational = Complex<BigRational>;

pub fn q(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `re_num/re_den + (im_num/im_den) i`
pub fn gq(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> GaussianRational {
    Complex::new(q(re_num, re_den), q(im_num, im_den))
}

pub fn gint(re: i64) -> GaussianRational {
    Complex::new(q(re, 1), BigRational::zero())
}

pub fn from_rational(r: BigRational) -> GaussianRational {
    Complex::new(r, BigRational::zero())
}

pub fn imag_unit() -> GaussianRational {
    Complex::new(BigRational::zero(), BigRational::one())
}

pub fn is_real(z: &GaussianRational) -> bool {
    z.im.is_zero()
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: the real part always, then `+c/d*i` or `-c/d*i`
/// when the imaginary part is nonzero.
pub fn format_gr(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        return fmt_rational(&z.re);
    }
    let sign = if z.im.is_negative() { '-' } else { '+' };
    format!("{}{}{}*i", fmt_rational(&z.re), sign, fmt_rational(&z.im.abs()))
}

/// A coefficient as the `["a/b","c/d"]` pair used in JSON dumps.
pub fn to_pair(z: &GaussianRational) -> [String; 2] {
    [fmt_rational(&z.re), fmt_rational(&z.im)]
}

pub fn from_pair(p: &[String; 2]) -> Result<GaussianRational> {
    Ok(Complex::new(parse_rational(&p[0])?, parse_rational(&p[1])?))
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if s.is_empty() {
        return Err(bad());
    }
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Parses `"a/b+c/d*i"` and its shorthands. Floats are rejected.
pub fn parse_gr(s: &str) -> Result<GaussianRational> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(Error::Parse("empty Gaussian rational".into()));
    }
    if t.contains('.') || t.contains('e') || t.contains('E') {
        return Err(Error::Parse(format!("floating-point literal not accepted: {s:?}")));
    }
    // split at a sign that is not the leading one
    let bytes = t.as_bytes();
    let mut split = None;
    for (k, &b) in bytes.iter().enumerate().skip(1) {
        if (b == b'+' || b == b'-') && bytes[k - 1] != b'/' {
            split = Some(k);
        }
    }
    let (a, b) = match split {
        Some(k) => (&t[..k], Some(&t[k..])),
        None => (t.as_str(), None),
    };
    let imag_part = |p: &str| -> Result<BigRational> {
        let body = p
            .strip_suffix("*i")
            .or_else(|| p.strip_suffix('i'))
            .ok_or_else(|| Error::Parse(format!("imaginary part must end in *i: {s:?}")))?;
        match body {
            "" | "+" => Ok(BigRational::one()),
            "-" => Ok(-BigRational::one()),
            _ => parse_rational(body.strip_prefix('+').unwrap_or(body)),
        }
    };
    match b {
        Some(b) => {
            if a.ends_with('i') {
                return Err(Error::Parse(format!("expected real part first: {s:?}")));
            }
            Ok(Complex::new(parse_rational(a)?, imag_part(b)?))
        }
        None if a.ends_with('i') => Ok(Complex::new(BigRational::zero(), imag_part(a)?)),
        None => Ok(Complex::new(parse_rational(a)?, BigRational::zero())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_shorthands() {
        assert_eq!(parse_gr("0").unwrap(), gint(0));
        assert_eq!(parse_gr("1/2").unwrap(), gq(1, 2, 0, 1));
        assert_eq!(parse_gr("4/5*i").unwrap(), gq(0, 1, 4, 5));
        assert_eq!(parse_gr("4i/5").is_err(), true);
        assert_eq!(parse_gr("-1/2-2*i").unwrap(), gq(-1, 2, -2, 1));
        assert_eq!(parse_gr("i").unwrap(), imag_unit());
        assert_eq!(parse_gr("-i").unwrap(), -imag_unit());
        assert_eq!(parse_gr("3/4 + 1/3*i").unwrap(), gq(3, 4, 1, 3));
        assert!(parse_gr("0.5").is_err());
        assert!(parse_gr("1/0").is_err());
        assert!(parse_gr("").is_err());
    }

    #[test]
    fn lowest_terms_positive_denominator() {
        let z = parse_gr("6/-8+10/4*i").unwrap();
        assert_eq!(format_gr(&z), "-3/4+5/2*i");
    }

    proptest! {
        #[test]
        fn text_roundtrip(a in -1000i64..1000, b in 1i64..500, c in -1000i64..1000, d in 1i64..500) {
            let z = gq(a, b, c, d);
            prop_assert_eq!(parse_gr(&format_gr(&z)).unwrap(), z.clone());
            prop_assert_eq!(from_pair(&to_pair(&z)).unwrap(), z);
        }
    }
}

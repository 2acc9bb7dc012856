//! JSON schemas for exact objects. Coefficients are `["a/b","c/d"]` pairs,
//! lowest degree first; no value is ever written as a float.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::exact::{format_gr, from_pair, parse_gr, to_pair, GaussianRational};
use crate::ratfunc::{QPoly, RationalFunction};
use crate::umemura::UmemuraTable;

pub type CoeffList = Vec<[String; 2]>;

pub fn poly_to_json(p: &QPoly) -> CoeffList {
    p.coeffs().iter().map(to_pair).collect()
}

pub fn poly_from_json(c: &CoeffList) -> Result<QPoly> {
    Ok(QPoly::new(c.iter().map(from_pair).collect::<Result<Vec<_>>>()?))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RationalJson {
    pub num: CoeffList,
    pub den: CoeffList,
}

impl RationalJson {
    pub fn from_rf(u: &RationalFunction) -> Self {
        RationalJson { num: poly_to_json(u.num()), den: poly_to_json(u.den()) }
    }

    pub fn to_rf(&self) -> Result<RationalFunction> {
        RationalFunction::new(poly_from_json(&self.num)?, poly_from_json(&self.den)?)
    }
}

/// `u_n(x; m)` in the exchange schema.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct UJson {
    pub m: String,
    pub n: i64,
    pub num: CoeffList,
    pub den: CoeffList,
}

impl UJson {
    pub fn new(n: i64, m: &GaussianRational, u: &RationalFunction) -> Self {
        UJson { m: format_gr(m), n, num: poly_to_json(u.num()), den: poly_to_json(u.den()) }
    }

    pub fn parse(&self) -> Result<(i64, GaussianRational, RationalFunction)> {
        let r = RationalJson { num: self.num.clone(), den: self.den.clone() }.to_rf()?;
        Ok((self.n, parse_gr(&self.m)?, r))
    }
}

/// Rational part of a tagged potential.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Tagged {
    pub exp_tag: i8,
    pub pow_tag: i8,
    pub rational: RationalJson,
}

/// One Umemura polynomial.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyEntry {
    pub n: i64,
    pub degree: usize,
    pub coeffs: CoeffList,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TableJson {
    pub m: String,
    pub polys: Vec<PolyEntry>,
}

impl TableJson {
    pub fn from_table(t: &UmemuraTable) -> Self {
        let polys = t
            .entries()
            .iter()
            .enumerate()
            .map(|(k, p)| PolyEntry { n: k as i64 - 1, degree: p.deg(), coeffs: poly_to_json(p) })
            .collect();
        TableJson { m: format_gr(t.m()), polys }
    }

    pub fn polys(&self) -> Result<Vec<QPoly>> {
        self.polys.iter().map(|e| poly_from_json(&e.coeffs)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gq;
    use crate::umemura::{build_u, umemura_table};

    #[test]
    fn u_roundtrip_is_bit_exact() {
        let m = gq(0, 1, 4, 5);
        let u = build_u(3, &m).unwrap();
        let j = UJson::new(3, &m, &u);
        let text = serde_json::to_string(&j).unwrap();
        let back: UJson = serde_json::from_str(&text).unwrap();
        let (n, m2, u2) = back.parse().unwrap();
        assert_eq!((n, m2, u2), (3, m, u));
    }

    #[test]
    fn table_roundtrip() {
        let t = umemura_table(&gq(1, 2, 0, 1), 4).unwrap();
        let j = TableJson::from_table(&t);
        assert_eq!(j.polys[0].n, -1);
        let text = serde_json::to_string(&j).unwrap();
        let back: TableJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.polys().unwrap(), t.entries().to_vec());
    }
}

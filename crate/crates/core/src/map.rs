//! Pole/zero maps of `u_n(x; m)`: roots of the four factors, transformed
//! to a plotting plane and written as CSV or SVG.

use std::collections::HashMap;
use std::fmt::Write as _;

use log::info;
use num_traits::Zero;

use crate::asymptotics::{plane_transform, Plane};
use crate::error::{Error, Result};
use crate::exact::{format_gr, gint, GaussianRational};
use crate::ratfunc::RationalFunction;
use crate::roots::{find_roots_with, merge_root_sets, residues_at_poles, Factor, Residues, RootOptions, RootSet};
use crate::scalar::{cplx, BigComplex, BigFloat, Real};
use crate::umemura::{umemura_extend, UFactors, UmemuraTable};

/// Umemura tables and root sets shared between maps and residue checks.
pub struct RootCache {
    pub precision_bits: u32,
    tables: HashMap<String, UmemuraTable>,
    roots: HashMap<(String, usize), RootSet>,
}

impl RootCache {
    pub fn new(precision_bits: u32) -> Self {
        RootCache { precision_bits, tables: HashMap::new(), roots: HashMap::new() }
    }

    pub fn table(&mut self, m: &GaussianRational, n_max: usize) -> Result<&UmemuraTable> {
        let key = format_gr(m);
        let t = self.tables.remove(&key).unwrap_or_else(|| UmemuraTable::new(m.clone()));
        let t = if t.max_n() < n_max { umemura_extend(t, n_max)? } else { t };
        Ok(self.tables.entry(key).or_insert(t))
    }

    pub fn factors(&mut self, n: usize, m: &GaussianRational) -> Result<UFactors> {
        let t_m = self.table(m, n)?.clone();
        let t_mm1 = self.table(&(m.clone() - gint(1)), n)?;
        Ok(UFactors::from_tables(n, &t_m, t_mm1))
    }

    /// Roots of `s_k(x; m)`, labelled with `source`.
    pub fn roots(&mut self, m: &GaussianRational, k: usize, source: Factor) -> Result<RootSet> {
        let key = (format_gr(m), k);
        if !self.roots.contains_key(&key) {
            let p = self.table(m, k)?.s(k as i64).clone();
            let opts = RootOptions { precision_bits: self.precision_bits, start_bits: 128, presolve: true };
            let rs = find_roots_with::<BigFloat>(&p, source, &opts)?;
            info!(
                "roots of s_{k}(x; {}): degree {}, origin {}, certified {}",
                format_gr(m),
                rs.degree,
                rs.origin_multiplicity,
                rs.certified_simple
            );
            self.roots.insert(key.clone(), rs);
        }
        let mut rs = self.roots[&key].clone();
        rs.source = source;
        Ok(rs)
    }

    /// Root sets for the four factors of `u_n`, in [`Factor::ALL`] order.
    pub fn factor_roots(&mut self, n: usize, m: &GaussianRational) -> Result<[RootSet; 4]> {
        let mm1 = m.clone() - gint(1);
        Ok([
            self.roots(m, n, Factor::SnM)?,
            self.roots(&mm1, n - 1, Factor::Snm1Mm1)?,
            self.roots(&mm1, n, Factor::SnMm1)?,
            self.roots(m, n - 1, Factor::Snm1M)?,
        ])
    }

    /// Residues of `u_n` at its poles, from the two pole factors.
    pub fn residues(&mut self, n: usize, m: &GaussianRational) -> Result<(RationalFunction, Residues)> {
        let u = self.factors(n, m)?.u()?;
        let [a, b, _, _] = self.factor_roots(n, m)?;
        if u.den().deg() != a.degree + b.degree {
            return Err(Error::InvalidArgument(format!(
                "pole factors of u_{n}(x; {}) share roots with the zero factors",
                format_gr(m)
            )));
        }
        let merged = merge_root_sets(&a, &b, Factor::Other);
        let r = residues_at_poles(&u, &merged, self.precision_bits)?;
        Ok((u, r))
    }
}

#[derive(Clone, Debug)]
pub struct MapPoint {
    pub z: BigComplex,
    pub factor: Factor,
}

impl MapPoint {
    pub fn class(&self) -> &'static str {
        if self.factor.is_pole() {
            "pole"
        } else {
            "zero"
        }
    }
}

#[derive(Clone, Debug)]
pub struct PoleZeroMap {
    pub n: usize,
    pub m: GaussianRational,
    pub plane: Plane,
    pub precision_bits: u32,
    /// Nonzero roots in the chosen plane, sorted.
    pub points: Vec<MapPoint>,
    /// Exact order of vanishing at `x = 0` per factor.
    pub origin: Vec<(Factor, usize)>,
    pub certified: bool,
}

/// Keys are rounded to doubles so that last-bit differences between builds
/// do not reorder points that print identically.
fn cmp_map_points(a: &MapPoint, b: &MapPoint) -> std::cmp::Ordering {
    let key = |p: &MapPoint| (cplx::abs(&p.z).to_f64(), cplx::arg(&p.z).to_f64());
    let (ma, pa) = key(a);
    let (mb, pb) = key(b);
    ma.partial_cmp(&mb)
        .unwrap_or(std::cmp::Ordering::Equal)
        .then(pa.partial_cmp(&pb).unwrap_or(std::cmp::Ordering::Equal))
        .then(a.factor.cmp(&b.factor))
}

pub fn build_map(cache: &mut RootCache, n: usize, m: &GaussianRational, plane: Plane, y0: Option<&BigComplex>) -> Result<PoleZeroMap> {
    if n == 0 {
        return Err(Error::InvalidArgument("u_0 = 1 has no poles or zeros".into()));
    }
    let sets = cache.factor_roots(n, m)?;
    let mut points = Vec::new();
    let mut origin = Vec::new();
    let mut certified = true;
    for rs in &sets {
        certified &= rs.certified_simple;
        if rs.origin_multiplicity > 0 {
            origin.push((rs.source, rs.origin_multiplicity));
        }
        for r in &rs.roots {
            points.push(MapPoint { z: plane_transform(r, plane, n as i64, y0)?, factor: rs.source });
        }
    }
    points.sort_by(cmp_map_points);
    Ok(PoleZeroMap { n, m: m.clone(), plane, precision_bits: cache.precision_bits, points, origin, certified })
}

pub const CSV_HEADER: &str = "plane,re,im,class,factor,n,m,prec";

fn class_of(f: Factor) -> &'static str {
    if f.is_pole() {
        "pole"
    } else {
        "zero"
    }
}

impl PoleZeroMap {
    /// One row per nonzero root; a root cluster at the origin is one row
    /// at `0,0` whose factor field carries `^multiplicity`.
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::new();
        let m = format_gr(&self.m);
        let _ = writeln!(out, "{CSV_HEADER}");
        for (f, k) in &self.origin {
            let _ = writeln!(out, "{},0,0,{},{}^{},{},{},{}", self.plane, class_of(*f), f.label(), k, self.n, m, self.precision_bits);
        }
        for p in &self.points {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                self.plane,
                fixed(&p.z.re, digits),
                fixed(&p.z.im, digits),
                p.class(),
                p.factor.label(),
                self.n,
                m,
                self.precision_bits
            );
        }
        out
    }

    /// Static scatter: poles red, zeros blue; filled for `s_n` factors and
    /// unfilled for `s_{n-1}` factors.
    pub fn to_svg(&self) -> String {
        let pts: Vec<(f64, f64, Factor)> =
            self.points.iter().map(|p| (p.z.re.to_f64(), p.z.im.to_f64(), p.factor)).collect();
        let ext = pts
            .iter()
            .map(|(x, y, _)| x.abs().max(y.abs()))
            .fold(0.0f64, f64::max)
            .max(1e-12)
            * 1.1;
        let size = 640.0;
        let map = |v: f64| (v / ext + 1.0) * size / 2.0;
        let mut s = String::new();
        let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#);
        let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let c = size / 2.0;
        let _ = writeln!(s, r##"<line x1="0" y1="{c}" x2="{size}" y2="{c}" stroke="#999" stroke-width="0.5"/>"##);
        let _ = writeln!(s, r##"<line x1="{c}" y1="0" x2="{c}" y2="{size}" stroke="#999" stroke-width="0.5"/>"##);
        let _ = writeln!(
            s,
            r#"<text x="6" y="16" font-family="sans-serif" font-size="12">n={} m={} plane={} half-width={:.4}</text>"#,
            self.n,
            format_gr(&self.m),
            self.plane,
            ext
        );
        let mut draw = |x: f64, y: f64, f: Factor, r: f64| {
            let color = if f.is_pole() { "#d62728" } else { "#1f77b4" };
            let filled = matches!(f, Factor::SnM | Factor::SnMm1);
            let fill = if filled { color } else { "none" };
            let _ = writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="{r}" fill="{fill}" stroke="{color}" stroke-width="1"/>"#,
                map(x),
                size - map(y)
            );
        };
        for (x, y, f) in &pts {
            draw(*x, *y, *f, 3.0);
        }
        for (f, _) in &self.origin {
            draw(0.0, 0.0, *f, 5.0);
        }
        s.push_str("</svg>\n");
        s
    }
}

/// Fixed significant-digit rendering; `0` for zero.
fn fixed(x: &BigFloat, digits: usize) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    x.to_decimal(digits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::gq;

    #[test]
    fn first_map_in_x_plane() {
        let mut cache = RootCache::new(128);
        let map = build_map(&mut cache, 1, &gint(0), Plane::X, None).unwrap();
        assert!(map.certified);
        assert_eq!(map.points.len(), 2);
        for p in &map.points {
            assert!((p.z.re.to_f64().abs() - 0.25).abs() < 1e-30);
        }
        let csv = map.to_csv(20);
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(csv.lines().count(), 3);
        assert!(map.to_svg().contains("<circle"));
    }

    #[test]
    fn origin_cluster_is_one_record() {
        let mut cache = RootCache::new(128);
        let map = build_map(&mut cache, 4, &gq(1, 2, 0, 1), Plane::Y, None).unwrap();
        assert!(!map.origin.is_empty());
        let csv = map.to_csv(20);
        assert!(csv.lines().any(|l| l.contains(",0,0,") && l.contains('^')));
    }
}

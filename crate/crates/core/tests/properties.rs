use num_traits::Pow;
use proptest::prelude::*;

use p3rat::asymptotics::{equilibrium_residual, plane_transform, Factorization, Plane, Quartic};
use p3rat::exact::{gint, gq, GaussianRational};
use p3rat::fpoly::to_complex;
use p3rat::halfint::{is_hankel, sph_hankel2, HankelMoments, Method, Sign};
use p3rat::io::UJson;
use p3rat::umemura::{build_u, check_negm_symmetry, piii_residual_sampled, umemura_table, Params};
use p3rat::{find_roots, BigFloat, QPoly, RationalFunction, Real};

fn small_gr() -> impl Strategy<Value = GaussianRational> {
    (-9i64..10, 1i64..8, -9i64..10, 1i64..8).prop_map(|(a, b, c, d)| gq(a, b, c, d))
}

fn nonzero_gr() -> impl Strategy<Value = GaussianRational> {
    small_gr().prop_filter("nonzero", |z| z != &gint(0))
}

fn poly(max_len: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(small_gr(), 1..max_len).prop_map(QPoly::new)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn json_round_trip_is_exact(num in poly(6), den in poly(5), n in 0i64..20, m in small_gr()) {
        prop_assume!(!den.is_zero());
        let u = RationalFunction::new(num, den).unwrap();
        let text = serde_json::to_string(&UJson::new(n, &m, &u)).unwrap();
        let back: UJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back.parse().unwrap(), (n, m, u));
    }

    #[test]
    fn quartic_is_palindromic(y0 in nonzero_gr(), c in small_gr()) {
        let q = Quartic::new(y0, c);
        prop_assert!(q.reversal_symmetric());
        let co = q.coeffs();
        prop_assert_eq!(&co[0], &co[4]);
        prop_assert_eq!(&co[1], &co[3]);
    }

    #[test]
    fn unit_equilibria_factor_exactly(y0 in nonzero_gr(), plus in any::<bool>()) {
        let p0 = if plus { gint(1) } else { gint(-1) };
        prop_assert!(equilibrium_residual(&y0, &p0) == gint(0));
        let f = Factorization::new(&y0, &p0).unwrap();
        prop_assert!(f.defect().is_zero());
    }

    #[test]
    fn spherical_hankel_terms(n in 0usize..30) {
        let h = sph_hankel2(n);
        prop_assert_eq!(h.term_count(), n + 1);
        prop_assert_eq!(h.poly_part.valuation(), Some(1));
        prop_assert_eq!(h.poly_part.deg(), n + 1);
    }

    #[test]
    fn residual_vanishes_at_random_points(n in 1i64..7, m in small_gr(), x in nonzero_gr()) {
        let u = build_u(n, &m).unwrap();
        match piii_residual_sampled(&u, &Params::new(n, m), &[x]) {
            Ok(v) => prop_assert!(v[0] == gint(0)),
            Err(p3rat::Error::PoleHit(_)) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn negm_symmetry(n in 1i64..7, m in small_gr()) {
        prop_assert!(check_negm_symmetry(n, &m).unwrap());
    }

    #[test]
    fn generic_degrees(m in small_gr(), n in 0i64..9) {
        let t = umemura_table(&m, n as usize).unwrap();
        let d = n * (n + 1) / 2;
        let s = t.s(n);
        prop_assert_eq!(s.deg() as i64, d);
        let lead = p3rat::exact::from_rational(num_rational::BigRational::from_integer(num_bigint::BigInt::from(2).pow(d as u32)));
        prop_assert_eq!(s.leading(), Some(&lead));
    }

    #[test]
    fn roots_of_known_products(rs in prop::collection::btree_set((-12i64..13, -12i64..13), 1..7)) {
        // distinct Gaussian integers scaled by 1/3
        let pts: Vec<GaussianRational> = rs.iter().map(|&(a, b)| gq(a, 3, b, 3)).collect();
        prop_assume!(pts.iter().all(|z| z != &gint(0)));
        let mut p = QPoly::new(vec![gint(1)]);
        for z in &pts {
            p = &p * &QPoly::new(vec![-z.clone(), gint(1)]);
        }
        let set = find_roots(&p, 128).unwrap();
        prop_assert!(set.certified_simple);
        prop_assert_eq!(set.roots.len(), pts.len());
        for z in &pts {
            let zc = to_complex::<BigFloat>(z, 128);
            let best = set
                .roots
                .iter()
                .map(|r| p3rat::scalar::cplx::log2_abs(&(r.clone() - zc.clone())))
                .fold(f64::INFINITY, f64::min);
            prop_assert!(best < -100.0, "root {:?} missed by 2^{}", z, best);
        }
    }

    #[test]
    fn y_plane_is_a_scaling(re in -50i64..50, im in -50i64..50, n in 1i64..30) {
        let x = to_complex::<BigFloat>(&gq(re, 7, im, 7), 96);
        let y = plane_transform(&x, Plane::Y, n, None).unwrap();
        let back = plane_transform(&y, Plane::Z, n, None).unwrap();
        // z = n x applied to y = x/n recovers x
        prop_assert!((back.re.to_f64() - x.re.to_f64()).abs() < 1e-20);
        prop_assert!((back.im.to_f64() - x.im.to_f64()).abs() < 1e-20);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn moment_matrices_are_hankel(n in 1i64..6, k in 0usize..3, plus in any::<bool>(), re in 1i64..5, im in -3i64..4) {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let x = to_complex::<BigFloat>(&gq(re, 2, im, 2), 96);
        let m = HankelMoments::compute(sign, n, k, &x, 96, Method::Closed).unwrap();
        prop_assert!(is_hankel(&m.matrix()));
    }
}

use geodesic_lab::arith::{is_fundamental, isqrt};
use geodesic_lab::lseries::dirichlet_l;
use geodesic_lab::quadforms::{
    conjugacy_oracle, narrow_class_number, psi_gamma, reduce_forms, trace_norm, trace_weight,
    GeodesicTable,
};
use num_bigint::BigUint;
use num_complex::Complex64;

const GOLDEN: f64 = 2.618_033_988_749_895; // (3 + sqrt 5)/2

#[test]
fn first_jump() {
    assert_eq!(psi_gamma(6.0).unwrap().psi, 0.0);
    assert_eq!(conjugacy_oracle(6.0).unwrap(), 0.0);
    let v = psi_gamma(7.0).unwrap();
    assert!((v.psi - 2.0 * GOLDEN.ln()).abs() < 1e-12);
    assert!((v.error - (v.psi - 7.0)).abs() < 1e-15);
    assert!((conjugacy_oracle(7.0).unwrap() - 2.0 * GOLDEN.ln()).abs() < 1e-12);
    assert!((trace_norm(3) - 6.854_101_966_249_685).abs() < 1e-12);
}

#[test]
fn psi_matches_conjugacy_enumeration() {
    for x in [7.0, 10.0, 20.0, 50.0, 100.0, 200.0, 350.0, 500.0] {
        let a = psi_gamma(x).unwrap().psi;
        let b = conjugacy_oracle(x).unwrap();
        assert!((a - b).abs() < 1e-9, "x={x}: {a} vs {b}");
    }
}

#[test]
fn oracle_refuses_large_x() {
    assert!(conjugacy_oracle(501.0).is_err());
    assert!(psi_gamma(1.0).is_err());
    assert!(psi_gamma(2e9).is_err());
}

#[test]
fn psi_is_monotone() {
    let table = GeodesicTable::build(1e5).unwrap();
    let mut last = 0.0;
    for k in 0..400 {
        let x = 2.0 * (5e4f64).powf(k as f64 / 399.0);
        let v = table.psi(x).unwrap().psi;
        assert!(v >= last);
        last = v;
    }
}

/// Brute-force least solution of t^2 - d u^2 = 4 with u below 10^6.
fn pell_brute(d: u64) -> Option<(u64, u64)> {
    (1..1_000_000u64).find_map(|u| {
        let t2 = d * u * u + 4;
        let t = isqrt(t2);
        (t * t == t2).then_some((t, u))
    })
}

#[test]
fn pell_units_are_least_solutions() {
    for d in 5..400i64 {
        if !matches!(d % 4, 0 | 1) || isqrt(d as u64).pow(2) == d as u64 {
            continue;
        }
        let set = reduce_forms(d).unwrap();
        let lhs = &set.pell_t * &set.pell_t;
        let rhs = BigUint::from(d as u64) * &set.pell_u * &set.pell_u + 4u32;
        assert_eq!(lhs, rhs, "d={d}");
        let Some((t, u)) = pell_brute(d as u64) else {
            continue;
        };
        assert_eq!(set.pell_t.to_string(), t.to_string(), "d={d}");
        assert_eq!(set.pell_u.to_string(), u.to_string(), "d={d}");
        let unit = (t as f64 + u as f64 * (d as f64).sqrt()) / 2.0;
        assert!((set.regulator - unit.ln()).abs() < 1e-9 * unit.ln(), "d={d}");
    }
}

#[test]
fn small_class_sets() {
    let five = reduce_forms(5).unwrap();
    assert_eq!(five.class_number, 1);
    assert!((five.fundamental_unit - GOLDEN).abs() < 1e-12);
    let twelve = reduce_forms(12).unwrap();
    assert_eq!(twelve.class_number, 2);
    assert!((twelve.fundamental_unit - (2.0 + 3f64.sqrt())).abs() < 1e-12);
    assert!(reduce_forms(221).unwrap().class_number >= 2);
    assert!(reduce_forms(16).is_err());
    assert!(reduce_forms(-3).is_err());
    assert!(reduce_forms(7).is_err());
}

#[test]
fn reduced_forms_satisfy_reduction_inequalities() {
    for d in [5i64, 8, 12, 13, 21, 60, 221, 1001, 4 * 1234 + 1] {
        let set = reduce_forms(d).unwrap();
        for f in &set.reduced_forms {
            assert_eq!(f.discriminant(), d);
            assert!(f.is_reduced() && f.is_primitive(), "{f:?}");
        }
    }
}

/// h+(d) log eps+(d) = sqrt(d) L(1, chi_d) for fundamental d > 0.
#[test]
fn class_number_formula() {
    let mut checked = 0;
    for d in 5..3000i64 {
        if !is_fundamental(d) {
            continue;
        }
        let set = reduce_forms(d).unwrap();
        let l1 = dirichlet_l(d, Complex64::new(1.0, 0.0)).unwrap().re;
        let h = (d as f64).sqrt() * l1 / set.regulator;
        assert!((h - set.class_number as f64).abs() < 1e-6, "d={d}: {h}");
        checked += 1;
    }
    assert!(checked > 800);
}

/// The total trace-t weight equals sqrt(t^2-4) L(1, t^2-4) times two.
#[test]
fn trace_weight_matches_zagier_value() {
    for t in 3..200u64 {
        let delta = (t * t - 4) as i64;
        let l = geodesic_lab::lseries::zagier_l(delta, Complex64::new(1.0, 0.0)).unwrap();
        let expect = 2.0 * (delta as f64).sqrt() * l.re;
        let w = trace_weight(t);
        assert!((w - expect).abs() < 1e-8 * expect, "t={t}: {w} vs {expect}");
    }
}

#[test]
fn narrow_class_number_of_nonfundamental_orders() {
    // discriminant 45 = 5 * 3^2 and 32 = 8 * 2^2
    assert_eq!(narrow_class_number(45), reduce_forms(45).unwrap().class_number);
    assert!(narrow_class_number(32) >= 1);
}

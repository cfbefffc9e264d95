//! Special functions against values frozen from a 30-digit multiprecision
//! evaluation, plus the classical identities.

use std::f64::consts::PI;

use geodesic_lab::special::{gamma, gamma_upper, hurwitz_zeta, zeta, zeta_prime_three_halves};
use num_complex::Complex64;

fn z(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn gamma_off_axis() {
    let v = gamma(z(0.5, 3.0)).unwrap();
    let expect = z(0.021_445_670_552_430_646, 0.006_865_364_837_261_678);
    assert!(rel(v, expect) < 1e-10, "{v}");
}

#[test]
fn gamma_recurrence() {
    for i in -20..=20 {
        for j in -20..=20 {
            let s = z(i as f64 * 0.7 + 0.13, j as f64 * 0.6);
            if s.norm() > 20.0 {
                continue;
            }
            let lhs = gamma(s + 1.0).unwrap();
            let rhs = s * gamma(s).unwrap();
            assert!(rel(lhs, rhs) < 1e-10, "s={s}");
        }
    }
}

#[test]
fn zeta_reference_values() {
    assert!(rel(zeta(z(1.5, 0.0)).unwrap(), z(2.612_375_348_685_488_3, 0.0)) < 1e-12);
    let v = zeta(z(0.5, 100.0)).unwrap();
    assert!(
        rel(v, z(2.692_619_885_681_324, -0.020_386_029_602_598_17)) < 1e-10,
        "{v}"
    );
    let v = zeta(z(-4.5, 3.0)).unwrap();
    assert!(
        rel(v, z(-0.097_018_739_480_072_61, 0.024_608_755_647_534_17)) < 1e-10,
        "{v}"
    );
}

#[test]
fn zeta_derivative_constant() {
    assert!((zeta_prime_three_halves() + 3.932_239_737_431_101_5).abs() < 1e-9);
}

#[test]
fn hurwitz_reference_value() {
    let v = hurwitz_zeta(z(0.5, 2.0), 1.0 / 3.0).unwrap();
    let expect = z(-0.975_871_150_840_234_8, 0.855_806_271_965_168_9);
    assert!(rel(v, expect) < 1e-10, "{v}");
    let s = z(0.3, -4.0);
    assert_eq!(hurwitz_zeta(s, 1.0).unwrap(), zeta(s).unwrap());
}

#[test]
fn zeta_functional_equation() {
    for i in 0..10 {
        for j in 0..10 {
            let s = z(0.05 + 0.1 * i as f64, -25.0 + 5.3 * j as f64);
            let rhs = Complex64::new(2.0, 0.0).powc(s)
                * Complex64::new(PI, 0.0).powc(s - 1.0)
                * (PI * s / 2.0).sin()
                * gamma(1.0 - s).unwrap()
                * zeta(1.0 - s).unwrap();
            let lhs = zeta(s).unwrap();
            assert!((lhs - rhs).norm() < 1e-8, "s={s} {lhs} {rhs}");
        }
    }
}

#[test]
fn hurwitz_distribution_relation() {
    for q in 1..=12u32 {
        for s in [z(2.0, 0.0), z(0.5, 3.0), z(-1.5, 1.0), z(3.0, -7.0)] {
            let lhs: Complex64 = (1..=q)
                .map(|a| hurwitz_zeta(s, a as f64 / q as f64).unwrap())
                .sum();
            let rhs = Complex64::new(q as f64, 0.0).powc(s) * zeta(s).unwrap();
            assert!(
                (lhs - rhs).norm() / rhs.norm().max(1.0) < 1e-8,
                "q={q} s={s}"
            );
        }
    }
}

#[test]
fn incomplete_gamma_reference_values() {
    let cases = [
        (
            z(0.25, 50.0),
            10.0,
            z(-1.534_189_527_221_730_8e-6, -4.198_648_366_526_474_6e-7),
        ),
        (
            z(0.25, 0.5),
            0.001,
            z(0.563_388_945_835_684_5, -1.621_712_794_263_311_8),
        ),
        (
            z(-0.5, 0.3),
            0.002,
            z(6.812_941_629_650_446, -37.273_983_557_157_83),
        ),
        (
            z(1.25, -1.0),
            35.0,
            z(-1.395_570_178_262_258e-15, 6.599_620_617_975_914e-16),
        ),
        (z(0.0, 0.0), 0.3, z(0.905_676_651_675_846_7, 0.0)),
        (z(-2.0, 0.0), 0.5, z(0.886_417_457_100_713_8, 0.0)),
    ];
    for (a, x, expect) in cases {
        let v = gamma_upper(a, x).unwrap();
        assert!(rel(v, expect) < 1e-10, "a={a} x={x}: {v} vs {expect}");
    }
}

use geodesic_lab::arith::{
    decompose_discriminant, divisor_count, gcd, is_fundamental, kronecker, mobius, tau_s, totient,
};
use geodesic_lab::counting::{
    kloosterman, lambda_q, rho_ca, rho_k_product, rho_q, verify_kloosterman_identity, CountingValue,
};
use num_complex::Complex64;
use proptest::prelude::*;

fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n % p == 0 {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Legendre symbol by listing the squares mod p.
fn legendre_brute(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if (1..p).any(|x| x * x % p == r) {
        1
    } else {
        -1
    }
}

fn jacobi_brute(a: i64, n: u64) -> i32 {
    trial_factor(n)
        .iter()
        .map(|&(p, k)| legendre_brute(a, p).pow(k))
        .product()
}

#[test]
fn kronecker_examples() {
    assert_eq!(kronecker(5, 5), 0);
    assert_eq!(kronecker(1, 7), 1);
    assert_eq!(kronecker(5, 3), -1);
}

#[test]
fn kronecker_is_multiplicative_in_both_arguments() {
    for a in -200i64..=200 {
        for m in 1i64..=200 {
            let am = kronecker(a, m);
            for n in 1i64..=200 {
                assert_eq!(kronecker(a, m * n), am * kronecker(a, n), "({a}|{m}*{n})");
            }
        }
    }
    for a in -200i64..=200 {
        for b in -200i64..=200 {
            for n in 1i64..=60 {
                assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
            }
        }
    }
}

#[test]
fn quadratic_reciprocity() {
    for m in (3u64..=500).step_by(2) {
        for n in (3u64..=500).step_by(2) {
            if gcd(m, n) != 1 {
                continue;
            }
            let sign = if (m % 4 == 3) && (n % 4 == 3) { -1 } else { 1 };
            let (mn, nm) = (kronecker(m as i64, n as i64), kronecker(n as i64, m as i64));
            assert_eq!(mn * nm, sign, "m={m} n={n}");
        }
    }
    for n in (3u64..=300).step_by(2) {
        for a in -60i64..=60 {
            assert_eq!(kronecker(a, n as i64), jacobi_brute(a, n), "({a}|{n})");
        }
    }
}

fn fundamental_brute(d: i64) -> bool {
    let sqfree = |m: u64| trial_factor(m).iter().all(|&(_, k)| k == 1);
    if d.rem_euclid(4) == 1 {
        // includes D = 1, the trivial character
        sqfree(d.unsigned_abs())
    } else if d % 4 == 0 {
        let m = d / 4;
        matches!(m.rem_euclid(4), 2 | 3) && sqfree(m.unsigned_abs())
    } else {
        false
    }
}

#[test]
fn decompose_round_trips() {
    for delta in -100_000i64..=100_000 {
        if delta == 0 || !matches!(delta.rem_euclid(4), 0 | 1) {
            assert!(decompose_discriminant(delta).is_err(), "{delta}");
            continue;
        }
        let d = decompose_discriminant(delta).unwrap();
        assert_eq!(d.d_fund * (d.ell * d.ell) as i64, delta);
        if delta.abs() <= 5_000 {
            assert!(fundamental_brute(d.d_fund), "{delta} -> {}", d.d_fund);
            assert_eq!(is_fundamental(delta), fundamental_brute(delta), "{delta}");
        }
    }
    let d = decompose_discriminant(20).unwrap();
    assert_eq!((d.d_fund, d.ell), (5, 2));
    let d = decompose_discriminant(32).unwrap();
    assert_eq!((d.d_fund, d.ell), (8, 2));
}

#[test]
fn multiplicative_functions_match_definitions() {
    for n in 1u64..=10_000 {
        let f = trial_factor(n);
        let mu = if f.iter().any(|&(_, k)| k > 1) {
            0
        } else if f.len() % 2 == 0 {
            1
        } else {
            -1
        };
        assert_eq!(mobius(n), mu, "mu({n})");
        let phi = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
        assert_eq!(totient(n), phi, "phi({n})");
        let tau = f.iter().map(|&(_, k)| k as u64 + 1).product::<u64>();
        assert_eq!(divisor_count(n), tau);
    }
    assert_eq!(totient(10), 4);
    assert_eq!(mobius(12), 0);
}

#[test]
fn tau_s_examples() {
    let s = Complex64::new(0.5, 0.0);
    assert!((tau_s(1, Complex64::new(0.3, 7.0)) - 1.0).norm() < 1e-15);
    assert!((tau_s(2, s) - 2.0).norm() < 1e-15);
    let expect = 6f64.powf(1.5) * (1.0 + 0.125 + 1.0 / 27.0 + 1.0 / 216.0);
    assert!((tau_s(6, Complex64::new(2.0, 0.0)).re - expect).abs() < 1e-12);
}

fn rho_q_brute(q: u64, delta: i64) -> u64 {
    let m = 4 * q as i64;
    (0..2 * q as i64).filter(|x| (x * x - delta).rem_euclid(m) == 0).count() as u64
}

#[test]
fn rho_q_examples_and_brute_force() {
    assert_eq!(rho_q(1, 5), 1);
    assert_eq!(rho_q(2, 17), 2);
    assert_eq!(rho_q(3, 13), 2);
    for q in 1u64..=120 {
        for delta in -150i64..=150 {
            assert_eq!(rho_q(q, delta), rho_q_brute(q, delta), "q={q} delta={delta}");
        }
    }
}

#[test]
fn rho_q_is_multiplicative() {
    for q1 in 1u64..=100 {
        for q2 in 1u64..=100 {
            if gcd(q1, q2) != 1 {
                continue;
            }
            for delta in -500i64..=500 {
                assert_eq!(rho_q(q1 * q2, delta), rho_q(q1, delta) * rho_q(q2, delta));
            }
        }
    }
}

/// lambda_q by enumerating every triple q1^2 q2 q3 = q.
fn lambda_brute(q: u64, delta: i64) -> i64 {
    let mut total = 0;
    for q1 in 1..=q {
        if q % (q1 * q1) != 0 {
            continue;
        }
        for q2 in 1..=q / (q1 * q1) {
            if (q / (q1 * q1)) % q2 == 0 {
                total += mobius(q2) * rho_q_brute(q / (q1 * q1 * q2), delta) as i64;
            }
        }
    }
    total
}

#[test]
fn inversion_pair() {
    for q in 1u64..=200 {
        for delta in -500i64..=500 {
            let rhs: i64 = (1..=q)
                .filter(|q1| q % q1 == 0)
                .map(|q1| mobius(q / q1).pow(2) * lambda_q(q1, delta))
                .sum();
            assert_eq!(rho_q(q, delta) as i64, rhs, "q={q} delta={delta}");
        }
    }
    for q in [4u64, 6, 12, 18, 36, 50] {
        for delta in [5i64, 13, -3, 20, 0, 8] {
            assert_eq!(lambda_q(q, delta), lambda_brute(q, delta));
        }
    }
}

fn rho_ca_brute(c: u64, a: i64) -> u64 {
    (0..c as i64)
        .filter(|d| (d * d - a * d + 1).rem_euclid(c as i64) == 0)
        .count() as u64
}

#[test]
fn rho_ca_examples() {
    assert_eq!(rho_ca(1, 17), 1);
    assert_eq!(rho_ca(5, 4), 0);
    assert_eq!(rho_ca(7, 3), 0);
    for c in 1u64..=150 {
        for a in -60i64..=60 {
            assert_eq!(rho_ca(c, a), rho_ca_brute(c, a), "c={c} a={a}");
        }
    }
}

#[test]
fn rho_k_product_agrees() {
    assert_eq!(rho_k_product(1, 9).unwrap(), 1);
    assert_eq!(rho_k_product(15, 4).unwrap(), 0);
    assert_eq!(rho_k_product(7, 5).unwrap(), 1);
    assert!(rho_k_product(9, 1).is_err());
    assert!(rho_k_product(6, 1).is_err());
    for k in (1u64..=300).step_by(2) {
        if trial_factor(k).iter().any(|&(_, e)| e > 1) {
            continue;
        }
        for a in -100i64..=100 {
            let p = rho_k_product(k, a).unwrap();
            assert_eq!(p, rho_ca(k, a), "k={k} a={a}");
            let divisor_sum: i64 = (1..=k as i64)
                .filter(|r| k as i64 % r == 0)
                .map(|r| kronecker(a * a - 4, r) as i64)
                .sum();
            assert_eq!(p as i64, divisor_sum);
        }
    }
}

#[test]
fn kloosterman_examples_and_weil_bound() {
    assert!((kloosterman(1, 1) - 1.0).norm() < 1e-15);
    assert!((kloosterman(1, 2) - 1.0).norm() < 1e-15);
    assert!((kloosterman(1, 3) + 1.0).norm() < 1e-15);
    for c in 1u64..=200 {
        for n in 1i64..=50 {
            let s = kloosterman(n, c);
            assert!(s.im.abs() < 1e-9);
            let bound = divisor_count(c) as f64 * (gcd(n as u64, c) as f64).sqrt() * (c as f64).sqrt();
            assert!(s.re.abs() <= bound + 1e-9, "S({n},{n};{c}) = {}", s.re);
        }
    }
}

#[test]
fn kloosterman_identity() {
    assert!(verify_kloosterman_identity(1, 3) < 1e-12);
    assert!(verify_kloosterman_identity(2, 4) < 1e-12);
    assert!((kloosterman(0, 5) - 4.0).norm() < 1e-12);
    for c in 1u64..=150 {
        for n in -50i64..=50 {
            assert!(verify_kloosterman_identity(n, c) < 1e-9, "n={n} c={c}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn counting_value_is_bounded(q in 1u64..5_000, delta in -100_000i64..100_000) {
        let v = CountingValue::new(q, delta);
        prop_assert!(v.value <= 2 * q);
        prop_assert_eq!(v.value, rho_q(q, delta));
    }

    #[test]
    fn rho_ca_is_multiplicative(c1 in 1u64..400, c2 in 1u64..400, a in -10_000i64..10_000) {
        prop_assume!(gcd(c1, c2) == 1);
        prop_assert_eq!(rho_ca(c1 * c2, a), rho_ca(c1, a) * rho_ca(c2, a));
    }

    #[test]
    fn rho_ca_depends_on_a_mod_c(c in 1u64..500, a in -10_000i64..10_000, k in -20i64..20) {
        prop_assert_eq!(rho_ca(c, a), rho_ca(c, a + k * c as i64));
    }
}

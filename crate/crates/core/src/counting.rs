//! Arithmetic counting functions attached to discriminants and to the
//! Kloosterman sums S(n, n; c).
//!
//! * `rho_q(q, delta)`  = #{x mod 2q : x^2 = delta (mod 4q)}
//! * `lambda_q(q, delta)` = sum over q1^2 q2 q3 = q of mu(q2) rho_{q3}(delta)
//! * `rho_ca(c, a)` = #{d mod c : d^2 - a d + 1 = 0 (mod c)}
//!
//! All three are multiplicative in the modulus. The prime-power values are
//! evaluated in closed form; the test suite checks them against exhaustive
//! enumeration.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::arith::{
    divisors, factorize, gcd, is_discriminant, is_squarefree, jacobi, kronecker, mobius,
    mod_inverse,
};
use crate::error::{LabError, Result};
use crate::par::Compensated;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct CountingValue {
    pub q: u64,
    pub delta: i64,
    pub value: u64,
}

impl CountingValue {
    pub fn new(q: u64, delta: i64) -> Self {
        CountingValue {
            q,
            delta,
            value: rho_q(q, delta),
        }
    }
}

/// Number of x mod p^k with x^2 = r (mod p^k), p an odd prime.
fn odd_prime_power_roots(p: u64, k: u32, r: i128) -> u64 {
    let pk = (p as i128).pow(k);
    let mut r = r.rem_euclid(pk);
    if r == 0 {
        return p.pow(k / 2);
    }
    let mut v = 0;
    while r % p as i128 == 0 {
        r /= p as i128;
        v += 1;
    }
    if v % 2 == 1 || jacobi((r % p as i128) as i64, p) != 1 {
        return 0;
    }
    2 * p.pow(v / 2)
}

/// Number of x mod 2^m with x^2 = r (mod 2^m).
fn two_power_roots(m: u32, r: i128) -> u64 {
    let modulus = 1i128 << m;
    let mut r = r.rem_euclid(modulus);
    if r == 0 {
        return 1 << (m / 2);
    }
    let v = r.trailing_zeros();
    if v % 2 == 1 {
        return 0;
    }
    r >>= v;
    let odd_count = match m - v {
        1 => 1,
        2 => {
            if r % 4 == 1 {
                2
            } else {
                0
            }
        }
        _ => {
            if r % 8 == 1 {
                4
            } else {
                0
            }
        }
    };
    odd_count << (v / 2)
}

/// `#{x mod 2q : x^2 = delta (mod 4q)}`; zero unless delta = 0, 1 (mod 4).
pub fn rho_q(q: u64, delta: i64) -> u64 {
    assert!(q >= 1, "rho_q needs q >= 1");
    if !is_discriminant(delta) {
        return 0;
    }
    let mut count = 1;
    for (p, k) in factorize(q) {
        let local = if p == 2 {
            // x mod 2^(k+1) against modulus 2^(k+2); x and x + 2^(k+1)
            // have the same square mod 2^(k+2).
            two_power_roots(k + 2, delta as i128) / 2
        } else {
            odd_prime_power_roots(p, k, delta as i128)
        };
        if local == 0 {
            return 0;
        }
        count *= local;
    }
    count
}

/// `sum_{q1^2 q2 q3 = q} mu(q2) rho_{q3}(delta)`.
pub fn lambda_q(q: u64, delta: i64) -> i64 {
    assert!(q >= 1, "lambda_q needs q >= 1");
    let mut total = 0i64;
    for q1 in divisors(q) {
        let sq = q1 * q1;
        if q % sq != 0 {
            continue;
        }
        let m = q / sq;
        for q2 in divisors(m) {
            let mu = mobius(q2);
            if mu != 0 {
                total += mu * rho_q(m / q2, delta) as i64;
            }
        }
    }
    total
}

fn rho_ca_prime_power(p: u64, k: u32, a: i64) -> u64 {
    let a = a as i128;
    if p == 2 {
        // d(d - a) + 1 is odd whenever a is odd.
        if a % 2 != 0 {
            return 0;
        }
        let b = a / 2;
        // (d - b)^2 = b^2 - 1 (mod 2^k)
        two_power_roots(k, b * b - 1)
    } else {
        // (2d - a)^2 = a^2 - 4 (mod p^k)
        odd_prime_power_roots(p, k, a * a - 4)
    }
}

/// `#{d mod c : d^2 - a d + 1 = 0 (mod c)}`.
pub fn rho_ca(c: u64, a: i64) -> u64 {
    assert!(c >= 1, "rho_ca needs c >= 1");
    rho_ca_factored(&factorize(c), a)
}

pub(crate) fn rho_ca_factored(factors: &[(u64, u32)], a: i64) -> u64 {
    let mut count = 1;
    for &(p, k) in factors {
        let local = rho_ca_prime_power(p, k, a);
        if local == 0 {
            return 0;
        }
        count *= local;
    }
    count
}

/// `rho(c, a)` for every residue `a mod c` at once, by counting the units
/// `d` with `d + d^-1 = a (mod c)`.
pub fn rho_ca_table(c: u64) -> Vec<u32> {
    assert!(c >= 1);
    let mut table = vec![0u32; c as usize];
    for d in 0..c {
        if gcd(d, c) != 1 {
            continue;
        }
        let inv = mod_inverse(d, c).expect("unit has an inverse");
        table[((d + inv) % c) as usize] += 1;
    }
    table
}

/// `prod_{p | k} (1 + ((a^2 - 4)/p))` for squarefree odd `k`.
pub fn rho_k_product(k: u64, a: i64) -> Result<u64> {
    if k == 0 || k % 2 == 0 || !is_squarefree(k) {
        return Err(LabError::pre(format!(
            "rho_k_product needs a squarefree odd k, got {k}"
        )));
    }
    let disc = a as i128 * a as i128 - 4;
    let mut prod = 1u64;
    for (p, _) in factorize(k) {
        let r = disc.rem_euclid(p as i128) as i64;
        prod *= (1 + kronecker(r, p as i64)) as u64;
    }
    Ok(prod)
}

/// `S(n, n; c) = sum over units a mod c of e((a + a^-1) n / c)`.
///
/// Phases are reduced mod c in integer arithmetic before taking cosines;
/// for c > 10^4 both components use compensated summation.
pub fn kloosterman(n: i64, c: u64) -> Complex64 {
    assert!(c >= 1);
    let n_mod = n.rem_euclid(c as i64) as u128;
    let compensate = c > 10_000;
    let (mut re, mut im) = (Compensated::default(), Compensated::default());
    let (mut re_plain, mut im_plain) = (0.0, 0.0);
    for a in 0..c {
        if gcd(a, c) != 1 {
            continue;
        }
        let inv = mod_inverse(a, c).expect("unit has an inverse") as u128;
        let k = ((a as u128 + inv) * n_mod % c as u128) as f64;
        let (s, co) = (TAU * k / c as f64).sin_cos();
        if compensate {
            re.add(co);
            im.add(s);
        } else {
            re_plain += co;
            im_plain += s;
        }
    }
    if compensate {
        Complex64::new(re.value(), im.value())
    } else {
        Complex64::new(re_plain, im_plain)
    }
}

/// `|S(n,n;c) - sum_{a mod c} rho(c,a) e(a n / c)|`, with `rho(c, a)` taken
/// from the multiplicative closed form.
pub fn verify_kloosterman_identity(n: i64, c: u64) -> f64 {
    let lhs = kloosterman(n, c);
    let factors = factorize(c);
    let n_mod = n.rem_euclid(c as i64) as u128;
    let mut re = Compensated::default();
    let mut im = Compensated::default();
    for a in 0..c {
        let weight = rho_ca_factored(&factors, a as i64);
        if weight == 0 {
            continue;
        }
        let k = (a as u128 * n_mod % c as u128) as f64;
        let (s, co) = (TAU * k / c as f64).sin_cos();
        re.add(weight as f64 * co);
        im.add(weight as f64 * s);
    }
    (lhs - Complex64::new(re.value(), im.value())).norm()
}

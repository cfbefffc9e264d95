//! Exact integer arithmetic: factorisation, multiplicative functions, the
//! Kronecker symbol and the decomposition of discriminants into fundamental
//! part and conductor.
//!
//! Inputs in this crate stay well below 10^12, so factorisation is plain
//! trial division over a 2-3-5 wheel.

use num_complex::Complex64;

use crate::error::{LabError, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> u64 {
    gcd(a.unsigned_abs(), b.unsigned_abs())
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Floor of the square root, exact for every `u64`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}

pub fn is_square(n: u64) -> bool {
    let r = isqrt(n);
    r * r == n
}

const WHEEL: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];

/// Prime factorisation as (prime, exponent) pairs in increasing order.
/// `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factorize(0) is undefined");
    let mut out = Vec::new();
    for p in [2u64, 3, 5] {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    }
    let mut p = 7u64;
    let mut w = 0;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += WHEEL[w];
        w = (w + 1) % WHEEL.len();
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    divisors_from_factors(&factorize(n))
}

pub fn divisors_from_factors(factors: &[(u64, u32)]) -> Vec<u64> {
    let mut divs = vec![1u64];
    for &(p, e) in factors {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

pub fn mobius(n: u64) -> i64 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn is_squarefree(n: u64) -> bool {
    factorize(n).iter().all(|&(_, e)| e == 1)
}

pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| e as u64 + 1).product()
}

/// Jacobi symbol (a|n) for odd positive `n`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1, "jacobi symbol needs an odd modulus");
    let mut a = (a as i128).rem_euclid(n as i128) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        let tz = a.trailing_zeros();
        a >>= tz;
        if tz % 2 == 1 && (n % 8 == 3 || n % 8 == 5) {
            result = -result;
        }
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        (a, n) = (n % a, a);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Kronecker symbol (a|n) for arbitrary integers.
///
/// The extension beyond odd positive `n` follows the usual conventions:
///
/// | case      | value                                          |
/// |-----------|------------------------------------------------|
/// | (a\|0)    | 1 if a = ±1, else 0                            |
/// | (a\|-1)   | -1 if a < 0, else 1                            |
/// | (a\|2)    | 0 if a even; 1 if a ≡ ±1 (mod 8); -1 if a ≡ ±3 |
///
/// With these, (D|·) is the primitive quadratic character of conductor |D|
/// for every fundamental discriminant D.
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1;
    let mut m = n.unsigned_abs();
    if n < 0 && a < 0 {
        result = -1;
    }
    let tz = m.trailing_zeros();
    if tz > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let r = a.rem_euclid(8);
        if tz % 2 == 1 && (r == 3 || r == 5) {
            result = -result;
        }
        m >>= tz;
    }
    if m == 1 {
        return result;
    }
    result * jacobi(a, m)
}

/// Square root of `a` modulo an odd prime `p` (Tonelli–Shanks).
pub fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// A nonzero discriminant written as `delta = d_fund * ell^2` with `d_fund`
/// fundamental.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Discriminant {
    pub delta: i64,
    pub d_fund: i64,
    pub ell: u64,
}

pub fn is_discriminant(delta: i64) -> bool {
    matches!(delta.rem_euclid(4), 0 | 1)
}

pub fn is_fundamental(d: i64) -> bool {
    if d == 0 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => is_squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

pub fn decompose_discriminant(delta: i64) -> Result<Discriminant> {
    if delta == 0 {
        return Err(LabError::pre("discriminant must be nonzero"));
    }
    if !is_discriminant(delta) {
        return Err(LabError::pre(format!(
            "{delta} is not a discriminant (must be 0 or 1 mod 4)"
        )));
    }
    let mut core: i64 = delta.signum();
    let mut square_root: u64 = 1;
    for (p, e) in factorize(delta.unsigned_abs()) {
        if e % 2 == 1 {
            core *= p as i64;
        }
        square_root *= p.pow(e / 2);
    }
    let (d_fund, ell) = if core.rem_euclid(4) == 1 {
        (core, square_root)
    } else {
        debug_assert!(square_root % 2 == 0);
        (4 * core, square_root / 2)
    };
    Ok(Discriminant { delta, d_fund, ell })
}

/// `tau_s(n) = n^(s-1/2) * sum_{d | n} d^(1-2s)`.
pub fn tau_s(n: u64, s: Complex64) -> Complex64 {
    assert!(n >= 1);
    let nf = n as f64;
    let sum: Complex64 = divisors(n)
        .into_iter()
        .map(|d| ((1.0 - 2.0 * s) * (d as f64).ln()).exp())
        .sum();
    ((s - 0.5) * nf.ln()).exp() * sum
}

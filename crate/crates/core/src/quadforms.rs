//! Indefinite binary quadratic forms, Pell units, and the geodesic
//! counting function Psi(x) of the modular surface.
//!
//! A hyperbolic class of PSL2(Z) with trace t corresponds to a proper
//! equivalence class of primitive forms of discriminant d = (t^2 - 4)/g^2
//! for some g with g^2 | t^2 - 4. Every class of discriminant d is a power
//! eps_d^k of a primitive class whose norm is eps_d^2, where
//! eps_d = (t0 + u0 sqrt d)/2 is the least unit of norm +1. Hence
//!
//! ```text
//! Psi(x) = sum_{t >= 3, eps_t^2 <= x}  sum_g  h+(d_g) * 2 log eps_{d_g},
//! ```
//!
//! with h+ the number of reduction cycles (the narrow class number). The
//! bookkeeping is certified against `conjugacy_oracle`, which never looks
//! at forms.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigUint;

use crate::arith::{divisors, gcd, gcd_i64, is_discriminant, is_square, isqrt, sqrt_mod_prime};
use crate::config::{ORACLE_X_MAX, PSI_X_MAX};
use crate::error::{LabError, Result};
use crate::par::{map_indexed, Compensated};

/// The form a x^2 + b xy + c y^2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `0 < b < sqrt d` and `sqrt d - b < 2|a| < sqrt d + b`.
    pub fn is_reduced(&self) -> bool {
        let d = self.discriminant();
        if d <= 0 || is_square(d as u64) {
            return false;
        }
        let s = isqrt(d as u64) as i64;
        let two_a = 2 * self.a.abs();
        self.b > 0 && self.b <= s && two_a + self.b > s && two_a - self.b <= s
    }

    pub fn is_primitive(&self) -> bool {
        gcd_i64(gcd_i64(self.a, self.b) as i64, self.c) == 1
    }

    /// Right neighbour in the reduction cycle of a reduced form:
    /// `(c, b', (b'^2 - d)/(4c))` with `b' = -b (mod 2|c|)` in `(sqrt d - 2|c|, sqrt d)`.
    pub fn rho(&self) -> Form {
        let d = self.discriminant();
        let s = isqrt(d as u64) as i64;
        let m = 2 * self.c.abs();
        let b = s - (s + self.b).rem_euclid(m);
        Form {
            a: self.c,
            b,
            c: (b * b - d) / (4 * self.c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct FormClassSet {
    pub delta: u64,
    pub reduced_forms: Vec<Form>,
    /// Number of reduction cycles (the narrow class number).
    pub class_number: u64,
    /// Least solution of t^2 - delta u^2 = 4 with u > 0.
    #[serde(serialize_with = "ser_big")]
    pub pell_t: BigUint,
    #[serde(serialize_with = "ser_big")]
    pub pell_u: BigUint,
    /// (t + u sqrt delta)/2; infinite if it overflows a double.
    pub fundamental_unit: f64,
    /// log of the fundamental unit.
    pub regulator: f64,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, ser: S) -> std::result::Result<S::Ok, S::Error> {
    ser.serialize_str(&v.to_string())
}

/// Largest discriminant whose form enumeration stays within the bundled
/// prime sieve.
pub const FORM_DISCRIMINANT_MAX: i64 = 16_000_000_000;

fn check_real_discriminant(delta: i64) -> Result<u64> {
    if delta <= 0 || !is_discriminant(delta) || is_square(delta as u64) {
        return Err(LabError::pre(format!(
            "{delta} is not a positive non-square discriminant"
        )));
    }
    if delta > FORM_DISCRIMINANT_MAX {
        return Err(LabError::pre(format!(
            "{delta} exceeds the form enumeration limit {FORM_DISCRIMINANT_MAX}"
        )));
    }
    Ok(delta as u64)
}

/// All reduced forms of discriminant `delta`, their cycles, and the Pell unit.
pub fn reduce_forms(delta: i64) -> Result<FormClassSet> {
    let d = check_real_discriminant(delta)?;
    let forms = reduced_forms(d);
    let class_number = count_cycles(&forms);
    let pell = pell_unit(d);
    Ok(FormClassSet {
        delta: d,
        reduced_forms: forms,
        class_number,
        fundamental_unit: pell.regulator.exp(),
        regulator: pell.regulator,
        pell_t: pell.t,
        pell_u: pell.u,
    })
}

/// Narrow class number of the order of discriminant `d` (cycle count).
pub fn narrow_class_number(d: u64) -> u64 {
    count_cycles(&reduced_forms(d))
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        // covers sqrt(PSI_X_MAX) as a trace bound and d/4 up to ~4e9
        let limit = 70_000usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u64);
                let mut j = i * i;
                while j <= limit {
                    composite[j] = true;
                    j += i;
                }
            }
        }
        primes
    })
}

#[derive(Clone, Copy)]
struct SmallFactorization {
    primes: [u32; 12],
    exps: [u8; 12],
    len: usize,
    rest: u64,
}

impl SmallFactorization {
    fn new(n: u64) -> Self {
        SmallFactorization {
            primes: [0; 12],
            exps: [0; 12],
            len: 0,
            rest: n,
        }
    }

    fn divide_out(&mut self, p: u64) {
        let mut e = 0u8;
        while self.rest % p == 0 {
            self.rest /= p;
            e += 1;
        }
        if e > 0 {
            self.primes[self.len] = p as u32;
            self.exps[self.len] = e;
            self.len += 1;
        }
    }

    fn factors(&self) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = (0..self.len)
            .map(|i| (self.primes[i] as u64, self.exps[i] as u32))
            .collect();
        if self.rest > 1 {
            out.push((self.rest, 1));
        }
        out
    }
}

/// Divisors of a factored number lying in `[lo, hi]`.
fn divisors_in_range(factors: &[(u64, u32)], lo: u64, hi: u64, out: &mut Vec<u64>) {
    fn go(factors: &[(u64, u32)], acc: u64, hi: u64, lo: u64, out: &mut Vec<u64>) {
        match factors.split_first() {
            None => {
                if acc >= lo {
                    out.push(acc);
                }
            }
            Some((&(p, e), rest)) => {
                let mut v = acc;
                for i in 0..=e {
                    if v > hi {
                        break;
                    }
                    go(rest, v, hi, lo, out);
                    if i < e {
                        v *= p;
                    }
                }
            }
        }
    }
    go(factors, 1, hi, lo, out);
}

/// Reduced primitive forms of discriminant d, sorted.
fn reduced_forms(d: u64) -> Vec<Form> {
    let s = isqrt(d);
    // b runs over 0 < b <= s with b = d (mod 2); N_b = (d - b^2)/4 = -ac.
    let first_b = if d % 2 == 0 { 2 } else { 1 };
    if first_b > s {
        return Vec::new();
    }
    let count = ((s - first_b) / 2 + 1) as usize;
    let b_at = |i: usize| first_b + 2 * i as u64;
    let mut facs: Vec<SmallFactorization> = (0..count)
        .map(|i| {
            let b = b_at(i);
            SmallFactorization::new((d - b * b) / 4)
        })
        .collect();
    for f in facs.iter_mut() {
        f.divide_out(2);
    }
    let bound = isqrt(d / 4) + 1;
    for &p in small_primes().iter().skip(1) {
        if p > bound {
            break;
        }
        let Some(r) = sqrt_mod_prime(d % p, p) else {
            continue;
        };
        let roots = if r == 0 { vec![0] } else { vec![r, p - r] };
        for r in roots {
            // b = r (mod p) and b = first_b (mod 2); the index is i = (b - first_b)/2
            let b0 = if r % 2 == first_b % 2 { r } else { r + p };
            let mut b = b0;
            while b < first_b {
                b += 2 * p;
            }
            while b <= s {
                facs[((b - first_b) / 2) as usize].divide_out(p);
                b += 2 * p;
            }
        }
    }
    let mut forms = Vec::new();
    let mut divs = Vec::new();
    for (i, fac) in facs.iter().enumerate() {
        let b = b_at(i);
        let n = (d - b * b) / 4;
        // s - b < 2a <= s + b, i.e. (s - b)/2 < a <= (s + b)/2
        let lo = (s - b) / 2 + 1;
        let hi = (s + b) / 2;
        divs.clear();
        divisors_in_range(&fac.factors(), lo, hi, &mut divs);
        for &a in &divs {
            let c = n / a;
            if gcd(gcd(a, b), c) != 1 {
                continue;
            }
            let (a, b, c) = (a as i64, b as i64, c as i64);
            forms.push(Form { a, b, c: -c });
            forms.push(Form { a: -a, b, c });
        }
    }
    forms.sort_unstable();
    forms
}

fn count_cycles(forms: &[Form]) -> u64 {
    let mut seen = vec![false; forms.len()];
    let mut cycles = 0;
    for start in 0..forms.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        loop {
            seen[i] = true;
            let next = forms[i].rho();
            i = forms
                .binary_search(&next)
                .expect("the neighbour of a reduced form is reduced");
            if i == start {
                break;
            }
        }
    }
    cycles
}

struct PellUnit {
    t: BigUint,
    u: BigUint,
    regulator: f64,
}

/// Least solution of t^2 - d u^2 = 4 from the purely periodic continued
/// fraction of theta = (b0 + sqrt d)/2, b0 the largest integer below sqrt d
/// with b0 = d (mod 2). Over one period, q_{L-1} theta + q_{L-2} is the
/// fundamental unit of the order; an odd period means norm -1, and the
/// unit is squared.
fn pell_unit(d: u64) -> PellUnit {
    let s = isqrt(d) as i64;
    let d_i = d as i64;
    let b0 = if (s - d_i) % 2 == 0 { s } else { s - 1 };
    let sqrt_d = (d as f64).sqrt();
    let (mut p, mut q) = (b0, 2i64);
    let (mut q_prev2, mut q_prev1) = (BigUint::from(1u32), BigUint::from(0u32));
    let mut regulator = 0.0;
    let mut period = 0usize;
    loop {
        let a = (p + s) / q;
        regulator += ((p as f64 + sqrt_d) / q as f64).ln();
        let q_next = BigUint::from(a as u64) * &q_prev1 + &q_prev2;
        q_prev2 = std::mem::replace(&mut q_prev1, q_next);
        period += 1;
        p = a * q - p;
        q = (d_i - p * p) / q;
        if p == b0 && q == 2 {
            break;
        }
    }
    // unit = q_{L-1} (b0 + sqrt d)/2 + q_{L-2}
    let mut t = &q_prev1 * BigUint::from(b0 as u64) + BigUint::from(2u32) * &q_prev2;
    let mut u = q_prev1;
    if period % 2 == 1 {
        // ((t + u sqrt d)/2)^2 = ((t^2 + d u^2)/2 + t u sqrt d)/2
        let t2 = (&t * &t + BigUint::from(d) * &u * &u) / BigUint::from(2u32);
        u = &t * &u;
        t = t2;
        regulator *= 2.0;
    }
    PellUnit { t, u, regulator }
}

/// Psi(x) with its error term E(x) = Psi(x) - x.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct GeodesicCount {
    pub x: f64,
    pub psi: f64,
    pub error: f64,
}

/// eps_t = (t + sqrt(t^2 - 4))/2.
fn trace_unit(t: u64) -> f64 {
    let tf = t as f64;
    (tf + (tf * tf - 4.0).sqrt()) / 2.0
}

/// Norm eps_t^2 of a hyperbolic class of trace t.
pub fn trace_norm(t: u64) -> f64 {
    trace_unit(t).powi(2)
}

/// Largest trace whose norm is at most x (2 if none).
fn max_trace(x: f64) -> u64 {
    let mut t = (x.sqrt() + 2.0).floor() as u64;
    while t >= 3 && trace_norm(t) > x {
        t -= 1;
    }
    t.max(2)
}

/// log eps_d for d = (t^2 - 4)/g^2: the least u0 with d u0^2 + 4 a square
/// divides g, since the trace-t unit is a power of the fundamental one.
fn log_fundamental_unit(t: u64, g: u64, d: u64) -> f64 {
    for u0 in divisors(g) {
        let t0_sq = d * u0 * u0 + 4;
        if is_square(t0_sq) {
            let t0 = isqrt(t0_sq) as f64;
            let u0 = u0 as f64;
            return ((t0 + u0 * (d as f64).sqrt()) / 2.0).ln();
        }
    }
    unreachable!("(t, g) solves the Pell equation for d = (t^2 - 4)/g^2 (t = {t})")
}

/// Total Lambda-weight of all hyperbolic classes of trace t.
pub fn trace_weight(t: u64) -> f64 {
    assert!(t >= 3);
    let disc = t * t - 4;
    let mut total = 0.0;
    for g in divisors(disc) {
        if disc % (g * g) != 0 {
            continue;
        }
        let d = disc / (g * g);
        if !matches!(d % 4, 0 | 1) {
            continue;
        }
        let h = narrow_class_number(d);
        total += h as f64 * 2.0 * log_fundamental_unit(t, g, d);
    }
    total
}

/// Per-trace weights and norms with prefix sums, for evaluating Psi at many
/// points up to a common maximum.
#[derive(Debug, Clone)]
pub struct GeodesicTable {
    x_max: f64,
    norms: Vec<f64>,
    cumulative: Vec<f64>,
}

impl GeodesicTable {
    pub fn build(x_max: f64) -> Result<Self> {
        check_psi_range(x_max)?;
        let t_max = max_trace(x_max);
        let n = t_max.saturating_sub(2) as usize;
        let weights = map_indexed(n, |i| trace_weight(i as u64 + 3));
        let norms = (0..n).map(|i| trace_norm(i as u64 + 3)).collect();
        let mut acc = Compensated::default();
        let cumulative = weights
            .iter()
            .map(|&w| {
                acc.add(w);
                acc.value()
            })
            .collect();
        Ok(GeodesicTable {
            x_max,
            norms,
            cumulative,
        })
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn psi(&self, x: f64) -> Result<GeodesicCount> {
        check_psi_range(x)?;
        if x > self.x_max {
            return Err(LabError::pre(format!(
                "x = {x} is beyond the table limit {}",
                self.x_max
            )));
        }
        let k = self.norms.partition_point(|&nrm| nrm <= x);
        let psi = if k == 0 { 0.0 } else { self.cumulative[k - 1] };
        Ok(GeodesicCount {
            x,
            psi,
            error: psi - x,
        })
    }

    /// Norms of the trace families (t = 3, 4, ...) up to x_max; Psi jumps
    /// exactly at these points.
    pub fn jump_points(&self) -> &[f64] {
        &self.norms
    }
}

fn check_psi_range(x: f64) -> Result<()> {
    if !(x >= 2.0) || x > PSI_X_MAX {
        return Err(LabError::pre(format!(
            "x must lie in [2, {PSI_X_MAX:e}], got {x}"
        )));
    }
    Ok(())
}

/// Psi(x) = sum over hyperbolic classes of norm at most x of Lambda(P).
pub fn psi_gamma(x: f64) -> Result<GeodesicCount> {
    GeodesicTable::build(x)?.psi(x)
}

/// Psi(x) by direct enumeration of matrices in SL2(Z) with positive
/// entries, grouped into conjugacy classes.
///
/// Every hyperbolic class of PSL2(Z) contains matrices with all entries
/// positive; these are exactly the cyclic rotations of one word in
/// R = [[1,1],[0,1]] and L = [[1,0],[1,1]]. Classes are identified by the
/// least rotation of that word, and a class that is the k-th power of a
/// primitive word contributes the log-norm of the primitive word.
pub fn conjugacy_oracle(x: f64) -> Result<f64> {
    if !(x >= 2.0) || x > ORACLE_X_MAX {
        return Err(LabError::pre(format!(
            "the conjugacy oracle is limited to 2 <= x <= {ORACLE_X_MAX}, got {x}"
        )));
    }
    let t_max = max_trace(x);
    let mut classes: HashMap<Vec<u8>, (f64, usize, usize)> = HashMap::new();
    for t in 3..=t_max {
        for a in 1..t {
            let dd = t - a;
            let bc = a * dd - 1;
            for b in divisors(bc) {
                let c = bc / b;
                let word = rl_word([a, b, c, dd]);
                let (canon, period) = least_rotation(&word);
                let root_trace = word_trace(&word[..period]);
                let lambda = 2.0 * trace_unit(root_trace).ln();
                let entry = classes.entry(canon).or_insert((lambda, period, 0));
                entry.2 += 1;
            }
        }
    }
    let mut total = Compensated::default();
    let mut keys: Vec<_> = classes.into_iter().collect();
    keys.sort_by(|a, b| a.0.cmp(&b.0));
    for (word, (lambda, period, reps)) in keys {
        // one positive representative per distinct rotation
        if reps != period {
            return Err(LabError::Numerical(format!(
                "class {word:?} has {reps} positive representatives, expected {period}"
            )));
        }
        total.add(lambda);
    }
    Ok(total.value())
}

/// Word in R (0) and L (1) of a matrix with nonnegative entries and
/// determinant 1.
fn rl_word(m: [u64; 4]) -> Vec<u8> {
    let [mut a, mut b, mut c, mut d] = m;
    let mut word = Vec::new();
    while !(a == 1 && b == 0 && c == 0 && d == 1) {
        if a >= c && b >= d {
            word.push(0);
            a -= c;
            b -= d;
        } else {
            word.push(1);
            c -= a;
            d -= b;
        }
    }
    word
}

fn word_trace(word: &[u8]) -> u64 {
    let mut m = [1u64, 0, 0, 1];
    for &letter in word {
        let [a, b, c, d] = m;
        m = if letter == 0 {
            [a, a + b, c, c + d]
        } else {
            [a + b, b, c + d, d]
        };
    }
    m[0] + m[3]
}

/// Lexicographically least rotation and the primitive period of a word.
fn least_rotation(word: &[u8]) -> (Vec<u8>, usize) {
    let n = word.len();
    let rotation = |k: usize| -> Vec<u8> { word[k..].iter().chain(&word[..k]).copied().collect() };
    let best = (0..n).map(rotation).min().expect("nonempty word");
    let period = (1..=n)
        .find(|&p| n % p == 0 && (0..n).all(|i| word[i] == word[(i + p) % n]))
        .unwrap_or(n);
    (best, period)
}

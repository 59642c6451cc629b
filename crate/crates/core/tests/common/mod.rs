//! Independent reference implementations used as test oracles. Nothing here
//! calls into the library's predicates: values are computed with machine
//! integers or plain big-integer formulas and factored by trial division.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer;

/// True when every prime factor of n divides into the list `primes`
/// (n = ±1 included), by trial division.
pub fn trial_s_unit(n: i128, primes: &[u64]) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n.unsigned_abs();
    let mut d: u128 = 2;
    while d * d <= n {
        while n % d == 0 {
            if !primes.contains(&(d as u64)) {
                return false;
            }
            n /= d;
        }
        d += 1;
    }
    n == 1 || primes.contains(&(n as u64))
}

/// Canonical points of P² with coordinates in [-b, b] on which every
/// polynomial in `factors` takes a nonzero S-unit value. Plain triple loop.
pub fn naive_enumerate(factors: &[fn(i128, i128, i128) -> i128], primes: &[u64], b: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    for x in -b..=b {
        for y in -b..=b {
            for z in -b..=b {
                let first = if x != 0 { x } else if y != 0 { y } else { z };
                if first <= 0 {
                    continue;
                }
                if x.gcd(&y).gcd(&z) != 1 {
                    continue;
                }
                let (xi, yi, zi) = (x as i128, y as i128, z as i128);
                if factors.iter().all(|f| trial_s_unit(f(xi, yi, zi), primes)) {
                    out.push([x, y, z]);
                }
            }
        }
    }
    out.sort();
    out
}

/// u = ±N/M in lowest terms as an i128 pair with positive denominator.
pub type Frac = (i128, i128);

fn reduce(n: i128, d: i128) -> Frac {
    let g = n.gcd(&d);
    let (n, d) = (n / g, d / g);
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

fn exps_within(n: i128, primes: &[u64], e: u32) -> bool {
    let mut n = n.unsigned_abs();
    for &p in primes {
        let mut k = 0;
        while n % p as u128 == 0 {
            n /= p as u128;
            k += 1;
        }
        if k > e {
            return false;
        }
    }
    n == 1
}

/// Solutions of u + v = 1 with u, v S-units whose exponents are bounded by
/// e, by enumerating numerator/denominator pairs directly.
pub fn naive_unit_equation(primes: &[u64], e: u32) -> Vec<(Frac, Frac)> {
    let mut smooth = vec![1i128];
    for &p in primes {
        let mut next = Vec::new();
        for &m in &smooth {
            let mut v = m;
            for _ in 0..=e {
                next.push(v);
                v *= p as i128;
            }
        }
        smooth = next;
    }
    let mut out = Vec::new();
    for &n in &smooth {
        for &m in &smooth {
            if n.gcd(&m) != 1 {
                continue;
            }
            for sign in [1i128, -1] {
                let u = reduce(sign * n, m);
                let v = reduce(m - sign * n, m);
                if v.0 != 0 && exps_within(v.0, primes, e) && exps_within(v.1, primes, e) {
                    out.push((u, v));
                }
            }
        }
    }
    out.sort_by(|a, b| cmp_frac(a.0, b.0).then(cmp_frac(a.1, b.1)));
    out.dedup();
    out
}

pub fn cmp_frac(a: Frac, b: Frac) -> std::cmp::Ordering {
    (a.0 * b.1).cmp(&(b.0 * a.1))
}

/// Y^{2α+1} + X(XZ + Y²)^α at an integer point.
pub fn third_type_value(alpha: u32, p: &[BigInt; 3]) -> BigInt {
    let [x, y, z] = p;
    y.pow(2 * alpha + 1) + x * (x * z + y * y).pow(alpha)
}

/// Y^{3b+1} + X(X²Z + aXY² + Y³)^b at an integer point.
pub fn congruence_value(a: u32, b: u32, p: &[BigInt; 3]) -> BigInt {
    let [x, y, z] = p;
    let inner = x * x * z + BigInt::from(a) * x * y * y + y.pow(3);
    y.pow(3 * b + 1) + x * inner.pow(b)
}

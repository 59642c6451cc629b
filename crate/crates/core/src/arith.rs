//! Exact rational arithmetic helpers: p-adic valuations, S-part removal and
//! a small integer factorizer used for height reports.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::places::PlaceSet;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin over the first twelve prime bases. Deterministic below
/// 3.3e24, a strong probable-prime test above.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for &a in &MR_BASES {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Exponent of the prime `p` in the nonzero integer `n`.
///
/// Divides by p^(2^i) from the top down so huge inputs (orbit coordinates
/// with millions of bits) cost a logarithmic number of divisions.
pub fn valuation_uint(n: &BigUint, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    if p == 2 {
        return n.trailing_zeros().unwrap_or(0);
    }
    if !(n % p).is_zero() {
        return 0;
    }
    let mut powers = vec![BigUint::from(p)];
    loop {
        let last = powers.last().unwrap();
        if last.bits() * 2 > n.bits() + 1 {
            break;
        }
        let sq = last * last;
        if &sq > n {
            break;
        }
        powers.push(sq);
    }
    let mut rest = n.clone();
    let mut v = 0u64;
    for (i, pw) in powers.iter().enumerate().rev() {
        if &rest < pw {
            continue;
        }
        let (q, r) = rest.div_rem(pw);
        if r.is_zero() {
            rest = q;
            v += 1u64 << i;
        }
    }
    v
}

pub fn valuation_int(n: &BigInt, p: u64) -> Result<u64> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    Ok(valuation_uint(n.magnitude(), p))
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rat, p: u64) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroArgument);
    }
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let num = valuation_uint(x.numer().magnitude(), p) as i64;
    let den = valuation_uint(x.denom().magnitude(), p) as i64;
    Ok(num - den)
}

/// Splits |n| into its S-part and the residual coprime to every prime of S.
pub fn remove_s_part(n: &BigInt, s: &PlaceSet) -> Result<(BigUint, BTreeMap<u64, u64>)> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut residual = n.magnitude().clone();
    let mut exps = BTreeMap::new();
    for p in s.primes() {
        let e = valuation_uint(&residual, p);
        if e > 0 {
            residual /= BigUint::from(p).pow(e as u32);
        }
        exps.insert(p, e);
    }
    Ok((residual, exps))
}

/// True when every prime factor of the nonzero integer `n` lies in S.
pub fn is_s_unit_int(n: &BigInt, s: &PlaceSet) -> bool {
    if n.is_zero() {
        return false;
    }
    if n.magnitude().is_one() {
        return true;
    }
    let mut rest = n.magnitude().clone();
    for p in s.primes() {
        let e = valuation_uint(&rest, p);
        if e > 0 {
            rest /= BigUint::from(p).pow(e as u32);
            if rest.is_one() {
                return true;
            }
        }
    }
    rest.is_one()
}

/// Same predicate for nonzero rationals: numerator and denominator both S-units.
pub fn is_s_unit(x: &Rat, s: &PlaceSet) -> bool {
    !x.is_zero() && is_s_unit_int(x.numer(), s) && is_s_unit_int(x.denom(), s)
}

/// Nonnegative gcd of a list, scanning smallest magnitudes first so a unit
/// coordinate short-circuits without touching the large ones.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a BigInt>>(values: I) -> BigInt {
    let mut mags: Vec<&BigUint> = values
        .into_iter()
        .map(|v| v.magnitude())
        .filter(|m| !m.is_zero())
        .collect();
    mags.sort_by_key(|m| m.bits());
    let mut g = BigUint::zero();
    for m in mags {
        g = if g.is_zero() { m.clone() } else { g.gcd(m) };
        if g.is_one() {
            break;
        }
    }
    BigInt::from_biguint(Sign::Plus, g)
}

/// Prime factorization with an explicit work budget.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    pub primes: BTreeMap<BigUint, u64>,
    /// Composite part the rho budget did not split, if any.
    pub cofactor: Option<BigUint>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }
}

const TRIAL_LIMIT: u64 = 10_000;
const RHO_BUDGET: u64 = 200_000;

/// Factor a positive integer: trial division, then Miller-Rabin and
/// Pollard-Brent under a fixed iteration budget.
pub fn factorize(n: &BigUint) -> Factorization {
    let mut out = Factorization::default();
    if n.is_zero() {
        return out;
    }
    let mut rest = n.clone();
    let tz = rest.trailing_zeros().unwrap_or(0);
    if tz > 0 {
        out.primes.insert(BigUint::from(2u32), tz);
        rest >>= tz;
    }
    let mut d = 3u64;
    while d <= TRIAL_LIMIT && !rest.is_one() {
        if (&rest % d).is_zero() {
            let e = valuation_uint(&rest, d);
            rest /= BigUint::from(d).pow(e as u32);
            out.primes.insert(BigUint::from(d), e);
        }
        if BigUint::from(d * d) > rest {
            break;
        }
        d += 2;
    }
    if rest.is_one() {
        return out;
    }
    let mut stack = vec![rest];
    let mut stuck = BigUint::one();
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if m.bits() <= 26 || is_probable_prime(&m) {
            // no factor below TRIAL_LIMIT, so anything under TRIAL_LIMIT^2 is prime
            *out.primes.entry(m).or_insert(0) += 1;
            continue;
        }
        match pollard_brent(&m, RHO_BUDGET) {
            Some(f) => {
                let g = &m / &f;
                stack.push(f);
                stack.push(g);
            }
            None => stuck *= m,
        }
    }
    if !stuck.is_one() {
        out.cofactor = Some(stuck);
    }
    out
}

fn pollard_brent(n: &BigUint, budget: u64) -> Option<BigUint> {
    if (n % 2u32).is_zero() {
        return Some(BigUint::from(2u32));
    }
    if let Some(small) = n.to_u64() {
        return pollard_brent_u64(small, budget).map(BigUint::from);
    }
    let one = BigUint::one();
    for c in 1u64..=8 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut spent = 0u64;
        let m = 64u64;
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            spent += r;
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                spent += m.min(r - k);
                k += m;
            }
            r *= 2;
            if spent > budget {
                break;
            }
        }
        if g == one {
            // out of budget: another constant will not do better
            return None;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if g != *n {
            return Some(g);
        }
    }
    None
}

fn mulmod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

fn pollard_brent_u64(n: u64, budget: u64) -> Option<u64> {
    for c in 1u64..=8 {
        let f = |x: u64| (mulmod(x, x, n) + c) % n;
        let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
        let (mut r, mut q, mut g) = (1u64, 1u64, 1u64);
        let mut spent = 0u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            spent += r;
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..128.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                spent += 128.min(r - k);
                k += 128;
            }
            r *= 2;
            if spent > budget {
                break;
            }
        }
        if g == 1 {
            return None;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = x.abs_diff(ys).gcd(&n);
                if g != 1 {
                    break;
                }
            }
        }
        if g != n {
            return Some(g);
        }
    }
    None
}

/// Exact rational 5th (or general k-th) root when it exists.
pub fn rational_root(x: &Rat, k: u32) -> Option<Rat> {
    if x.is_zero() {
        return Some(Rat::zero());
    }
    if x.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let num = int_root(x.numer().magnitude(), k)?;
    let den = int_root(x.denom().magnitude(), k)?;
    let mut r = Rat::new(BigInt::from(num), BigInt::from(den));
    if x.is_negative() {
        r = -r;
    }
    Some(r)
}

fn int_root(n: &BigUint, k: u32) -> Option<BigUint> {
    let r = n.nth_root(k);
    if r.pow(k) == *n {
        Some(r)
    } else {
        None
    }
}

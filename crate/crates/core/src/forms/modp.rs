//! Certificates computed on restrictions to lines modulo a prime. A positive
//! answer is a proof; a negative one only means "not certified".

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::Form;

const PRIME: u64 = 2_147_483_629;
const ATTEMPTS: u64 = 4;

fn mulm(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn powm(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, a);
        }
        a = mulm(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    powm(a, PRIME - 2)
}

fn reduce(c: &BigInt) -> u64 {
    let m = BigInt::from(PRIME);
    let r = ((c % &m) + &m) % &m;
    r.to_u64().expect("reduced below the prime")
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    (z ^ (z >> 31)) % PRIME
}

type Poly = Vec<u64>;

fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y)) % PRIME;
        }
    }
    out
}

fn prem_monic(a: &Poly, b: &Poly) -> Poly {
    let mut r = a.clone();
    let db = b.len() - 1;
    let lb_inv = inv(*b.last().unwrap());
    while r.len() > db {
        let q = mulm(*r.last().unwrap(), lb_inv);
        let shift = r.len() - 1 - db;
        for (j, &c) in b.iter().enumerate() {
            r[j + shift] = (r[j + shift] + PRIME - mulm(q, c)) % PRIME;
        }
        trim(&mut r);
    }
    r
}

fn pgcd_degree(a: &Poly, b: &Poly) -> usize {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = prem_monic(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

fn derivative(p: &Poly) -> Poly {
    let mut d: Poly = p.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, i as u64 % PRIME)).collect();
    trim(&mut d);
    d
}

// f(P + tQ) mod p, for f with integer coefficients.
fn restrict(f: &Form, p: [u64; 3], q: [u64; 3]) -> Poly {
    let d = f.degree() as usize;
    let lines: Vec<Vec<Poly>> = (0..3)
        .map(|v| {
            let base = vec![p[v], q[v]];
            let mut pows = vec![vec![1u64]];
            for k in 1..=d {
                let next = pmul(&pows[k - 1], &base);
                pows.push(next);
            }
            pows
        })
        .collect();
    let mut out = vec![0u64; d + 1];
    for (e, c) in f.terms() {
        let c = reduce(&c.to_integer());
        if c == 0 {
            continue;
        }
        let m = pmul(&pmul(&lines[0][e[0] as usize], &lines[1][e[1] as usize]), &lines[2][e[2] as usize]);
        for (i, x) in m.iter().enumerate() {
            out[i] = (out[i] + mulm(c, *x)) % PRIME;
        }
    }
    trim(&mut out);
    out
}

fn lines(seed: u64) -> impl Iterator<Item = ([u64; 3], [u64; 3])> {
    let mut state = seed;
    (0..ATTEMPTS).map(move |_| {
        let mut pt = || [splitmix(&mut state), splitmix(&mut state), splitmix(&mut state)];
        (pt(), pt())
    })
}

/// True only if f is proven square-free: some line restriction keeps full
/// degree and is square-free modulo the prime.
pub(crate) fn certify_squarefree(f: &Form) -> bool {
    let f = &f.primitive_integer();
    let d = f.degree() as usize;
    if d as u64 >= PRIME {
        return false;
    }
    lines(0x5eed ^ d as u64).any(|(p, q)| {
        let r = restrict(f, p, q);
        r.len() == d + 1 && pgcd_degree(&r, &derivative(&r)) == 0
    })
}

/// True only if f and g are proven coprime.
pub(crate) fn certify_coprime(f: &Form, g: &Form) -> bool {
    if f.is_zero() || g.is_zero() {
        return false;
    }
    let (f, g) = (&f.primitive_integer(), &g.primitive_integer());
    let (df, dg) = (f.degree() as usize, g.degree() as usize);
    lines(0xc0de ^ (df as u64) << 16 ^ dg as u64).any(|(p, q)| {
        let (a, b) = (restrict(f, p, q), restrict(g, p, q));
        a.len() == df + 1 && b.len() == dg + 1 && pgcd_degree(&a, &b) == 0
    })
}

//! Small integer helpers shared by the group and character code.

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serializer;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// All primes strictly below `limit`, increasing.
pub fn primes_below(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..n).filter(|&k| sieve[k]).map(|k| k as u64).collect()
}

/// Prime factorization as `(prime, exponent)` pairs, primes increasing.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
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

/// Combines `x = r_i mod m_i` for pairwise coprime moduli whose product fits `u64`.
pub fn crt(congruences: &[(u64, u64)]) -> (u64, u64) {
    let mut x: u64 = 0;
    let mut m: u64 = 1;
    for &(r, mi) in congruences {
        // x + m*t = r (mod mi)  =>  t = (r - x) * m^{-1} (mod mi)
        let inv = mod_inverse(m % mi, mi).expect("moduli must be coprime");
        let diff = (r % mi + mi - x % mi) % mi;
        let t = mul_mod(diff, inv, mi);
        x += m * t;
        m *= mi;
    }
    (x, m)
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// `(p_0 p_1 ... p_{n-1})^n`, the scale of the n-th block.
pub fn block_scale(primes: &[u64], n: usize) -> BigInt {
    let base: BigInt = primes[..n].iter().map(|&p| BigInt::from(p)).product();
    num_traits::pow(base, n)
}

pub(crate) fn serialize_big<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

//! Integer factorization for square-class reduction over Q.
//!
//! Trial division by primes up to a bound (default 10^6, overridable with
//! `A1DEG_FACTOR_LIMIT`), then Miller-Rabin and Brent's variant of
//! Pollard rho on the cofactor. A cofactor that rho cannot split within its
//! iteration budget is reported as [`Error::FactorizationLimit`] rather
//! than guessed at.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_TRIAL_LIMIT: u64 = 1_000_000;
const RHO_ITERATIONS: u64 = 1 << 22;
const QUICK_RHO_ITERATIONS: u64 = 1 << 13;

/// Trial-division bound in effect for this process.
pub fn trial_limit() -> u64 {
    static LIMIT: OnceLock<u64> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("A1DEG_FACTOR_LIMIT")
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&n| n >= 3)
            .unwrap_or(DEFAULT_TRIAL_LIMIT)
    })
}

fn small_primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(trial_limit()))
}

fn sieve(limit: u64) -> Vec<u64> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Deterministic primality for `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let big = BigUint::from(n);
    miller_rabin(&big, &[2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37])
}

fn miller_rabin(n: &BigUint, bases: &[u64]) -> bool {
    let one = BigUint::one();
    let n_minus_one = n - &one;
    let mut d = n_minus_one.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'outer: for &b in bases {
        let a = BigUint::from(b) % n;
        if a.is_zero() {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_one {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n_minus_one {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Probable-prime test (deterministic below 3.3e24, error < 4^-20 above).
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    if n.is_even() {
        return false;
    }
    miller_rabin(
        n,
        &[
            2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
        ],
    )
}

fn pollard_brent(n: &BigUint, seed: u64, budget: u64) -> Option<BigUint> {
    let one = BigUint::one();
    let c = BigUint::from(seed);
    let f = |x: &BigUint| (x * x + &c) % n;
    let mut y = BigUint::from(2u64 + seed);
    let m = 128u64;
    let mut g = one.clone();
    let mut r = 1u64;
    let mut q = one.clone();
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut steps = 0u64;
    while g == one {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g == one {
            ys = y.clone();
            for _ in 0..m.min(r - k) {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += m;
            steps += m;
            if steps > budget {
                return None;
            }
        }
        r *= 2;
    }
    if &g == n {
        loop {
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if g != one {
                break;
            }
        }
    }
    if &g == n {
        None
    } else {
        Some(g)
    }
}

/// Splits `n` into primes; `false` if rho gave up within `budget` on some
/// composite part, which is then pushed unsplit.
fn split_composite(n: &BigUint, out: &mut Vec<BigUint>, budget: u64, seeds: u64) -> bool {
    if n.is_one() {
        return true;
    }
    if is_probable_prime(n) {
        out.push(n.clone());
        return true;
    }
    for seed in 1..=seeds {
        if let Some(d) = pollard_brent(n, seed, budget) {
            let other = n / &d;
            let left = split_composite(&d, out, budget, seeds);
            return split_composite(&other, out, budget, seeds) && left;
        }
    }
    out.push(n.clone());
    false
}

/// Removes the primes below the trial bound; returns them with the cofactor.
fn trial_divide(n: &BigUint) -> (Vec<(BigUint, u32)>, BigUint) {
    let mut rest = n.clone();
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    for &p in small_primes() {
        if rest.is_one() {
            break;
        }
        if let Some(r) = rest.to_u64() {
            if p.saturating_mul(p) > r {
                break;
            }
        }
        let pb = BigUint::from(p);
        let mut e = 0u32;
        loop {
            let (q, rem) = rest.div_rem(&pb);
            if !rem.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            factors.push((pb, e));
        }
    }
    (factors, rest)
}

fn merge(factors: &mut Vec<(BigUint, u32)>, mut primes: Vec<BigUint>) {
    primes.sort();
    for p in primes {
        match factors.iter_mut().find(|(q, _)| *q == p) {
            Some(entry) => entry.1 += 1,
            None => factors.push((p, 1)),
        }
    }
    factors.sort();
}

/// Prime factorization of `n > 0` as sorted `(prime, exponent)` pairs.
pub fn factorize(n: &BigUint) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    let (mut factors, rest) = trial_divide(n);
    let mut primes = Vec::new();
    if !split_composite(&rest, &mut primes, RHO_ITERATIONS, 8) {
        return Err(Error::FactorizationLimit(rest.to_string()));
    }
    merge(&mut factors, primes);
    Ok(factors)
}

/// A representative of the square class of `n > 0` found with a short
/// rho budget. The flag is `true` when it is the exact squarefree part;
/// otherwise an unsplit composite cofactor is kept as is, so the value is
/// still `n` times a square.
pub fn squarefree_part_bounded(n: &BigUint) -> Result<(BigUint, bool)> {
    if n.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    let (mut factors, rest) = trial_divide(n);
    let root = rest.sqrt();
    let mut primes = Vec::new();
    let exact = if &root * &root == rest {
        true
    } else {
        split_composite(&rest, &mut primes, QUICK_RHO_ITERATIONS, 2)
    };
    merge(&mut factors, primes);
    let part = factors
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p);
    Ok((part, exact))
}

/// Product of the primes dividing `n` to an odd power.
pub fn squarefree_part(n: &BigUint) -> Result<BigUint> {
    Ok(factorize(n)?
        .into_iter()
        .filter(|(_, e)| e % 2 == 1)
        .fold(BigUint::one(), |acc, (p, _)| acc * p))
}

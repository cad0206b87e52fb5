//! Integer and rational primitives shared by the rest of the crate.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{CensusError, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type ExactRational = BigRational;

/// Builds `num/den` as an [`ExactRational`]. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(n.into())
}

/// Returns the value as `u64` when it is a positive integer.
pub fn positive_integer(x: &ExactRational) -> Option<u64> {
    if x.is_integer() && x.is_positive() {
        x.to_integer().to_u64()
    } else {
        None
    }
}

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
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

/// Deterministic Miller-Rabin. The witness set (first twelve primes) is
/// exact for every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
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

/// All primes in `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Kronecker symbol `(a/n)`.
pub fn kronecker(a: i64, n: i64) -> Result<i32> {
    if a == 0 && n == 0 {
        return Err(CensusError::InvalidArgument(
            "kronecker symbol (0/0) is undefined".into(),
        ));
    }
    let mut a = a as i128;
    let mut n = n as i128;
    if n == 0 {
        return Ok(if a.abs() == 1 { 1 } else { 0 });
    }
    if a % 2 == 0 && n % 2 == 0 {
        return Ok(0);
    }

    let mut sign = 1i32;
    let v = n.trailing_zeros();
    n >>= v;
    // (a/2) = 0 for even a, otherwise +1 for a = ±1 mod 8 and -1 for a = ±3 mod 8
    if v % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
        sign = -sign;
    }
    if n < 0 {
        n = -n;
        if a < 0 {
            sign = -sign;
        }
    }

    // n odd and positive: Jacobi symbol
    a = a.rem_euclid(n);
    while a != 0 {
        let t = a.trailing_zeros();
        a >>= t;
        if t % 2 == 1 && matches!(n % 8, 3 | 5) {
            sign = -sign;
        }
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    n.sqrt()
}

/// `⌊√n⌋` for nonnegative big integers.
pub fn isqrt_big(n: &BigInt) -> BigInt {
    debug_assert!(!n.is_negative());
    n.sqrt()
}

/// Exact square root of a rational, if it is the square of a rational.
pub fn rational_sqrt(q: &ExactRational) -> Option<ExactRational> {
    if q.is_negative() {
        return None;
    }
    if q.is_zero() {
        return Some(ExactRational::zero());
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    if &(&rn * &rn) != n {
        return None;
    }
    let rd = d.sqrt();
    if &(&rd * &rd) != d {
        return None;
    }
    Some(BigRational::new(rn, rd))
}

/// Squarefree part of `n`, sign preserved: `n / s²` for the largest `s`
/// with `s² | n`.
pub fn squarefree_part(n: i64) -> i64 {
    assert!(n != 0, "squarefree part of zero");
    let sign = n.signum();
    let mut m = n.unsigned_abs();
    let mut core = 1u64;
    let mut f = 2u64;
    while f * f <= m {
        let mut e = 0;
        while m.is_multiple_of(f) {
            m /= f;
            e += 1;
        }
        if e % 2 == 1 {
            core *= f;
        }
        f += 1;
    }
    core *= m;
    sign * core as i64
}

/// Positive divisors of `n`, unordered.
pub(crate) fn divisors(n: u64) -> impl Iterator<Item = u64> {
    let r = isqrt(n);
    (1..=r).filter(move |d| n.is_multiple_of(*d)).flat_map(move |d| {
        let e = n / d;
        if e == d {
            vec![d]
        } else {
            vec![d, e]
        }
    })
}

pub(crate) fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

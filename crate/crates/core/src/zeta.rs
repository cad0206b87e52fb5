//! `ζ_F(-1)` for `F = Q(√p)` by Siegel's finite sum
//! `ζ_F(-1) = (1/60) Σ a` over `b² + 4ac = d_F`, `a, c > 0`.

use num_bigint::BigInt;

use crate::arith::{divisors, isqrt, ExactRational};
use crate::error::Result;
use crate::quadratic::field_discriminant;

/// `Σ a` over all `(a, b, c)` with `a, c > 0` and `b² + 4ac = d`, taking
/// `b` from `|b| ≤ b_max`.
fn siegel_sum(d: u64, b_max: u64) -> u64 {
    let mut total = 0u64;
    let mut b = d % 2;
    while b <= b_max {
        if b * b < d && (d - b * b).is_multiple_of(4) {
            let m = (d - b * b) / 4;
            let sigma: u64 = divisors(m).sum();
            total += if b == 0 { sigma } else { 2 * sigma };
        }
        b += 2;
    }
    total
}

/// `ζ_F(-1)` exactly.
pub fn zeta_minus_one(p: u64) -> Result<ExactRational> {
    let d = field_discriminant(p)?;
    Ok(ExactRational::new(
        BigInt::from(siegel_sum(d, isqrt(d))),
        BigInt::from(60),
    ))
}

/// Recomputes the sum with the `b`-range widened by 2 and reports whether
/// the result is unchanged.
pub fn enumeration_is_complete(p: u64) -> Result<bool> {
    let d = field_discriminant(p)?;
    let b_max = isqrt(d);
    Ok(siegel_sum(d, b_max) == siegel_sum(d, b_max + 2))
}

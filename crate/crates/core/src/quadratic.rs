//! Invariants of `F = Q(√p)` and of imaginary quadratic fields.
//!
//! Class numbers come from binary quadratic forms: reduced positive definite
//! forms for negative discriminants, cycles of reduced indefinite forms for
//! `d_F`. Fundamental units come from continued fractions.

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{gcd3, is_prime, isqrt, squarefree_part};
use crate::error::{CensusError, Result};

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CensusError::NotPrime(p))
    }
}

/// Residue class of `p` modulo 8, the tag that selects every case split
/// downstream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResidueClass {
    Two,
    One,
    Three,
    Five,
    Seven,
}

impl ResidueClass {
    pub fn of(p: u64) -> Self {
        match p % 8 {
            1 => ResidueClass::One,
            3 => ResidueClass::Three,
            5 => ResidueClass::Five,
            7 => ResidueClass::Seven,
            _ => ResidueClass::Two,
        }
    }

    /// `p ≡ 1 (mod 4)`.
    pub fn is_one_mod_four(self) -> bool {
        matches!(self, ResidueClass::One | ResidueClass::Five)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadFieldInfo {
    pub p: u64,
    pub disc: u64,
    pub residue_class: ResidueClass,
}

impl QuadFieldInfo {
    pub fn new(p: u64) -> Result<Self> {
        Ok(QuadFieldInfo {
            p,
            disc: field_discriminant(p)?,
            residue_class: ResidueClass::of(p),
        })
    }
}

/// Discriminant `d_F` of `Q(√p)`.
pub fn field_discriminant(p: u64) -> Result<u64> {
    require_prime(p)?;
    Ok(if p % 4 == 1 { p } else { 4 * p })
}

/// Fundamental discriminant of `Q(√m)` for a non-square integer `m`.
pub fn fundamental_discriminant(m: i64) -> Result<i64> {
    if m == 0 {
        return Err(CensusError::InvalidArgument(
            "Q(√0) is not a quadratic field".into(),
        ));
    }
    let core = squarefree_part(m);
    if core == 1 {
        return Err(CensusError::InvalidArgument(format!(
            "{m} is a square; Q(√{m}) = Q"
        )));
    }
    Ok(if core.rem_euclid(4) == 1 {
        core
    } else {
        4 * core
    })
}

/// Whether `d` is a fundamental discriminant (`d ≠ 0, 1`).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree_part(d) == d,
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree_part(m) == m
        }
        _ => false,
    }
}

/// The fundamental unit `ε = (a + b√p)/denom > 1` of the maximal order of
/// `Q(√p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FundamentalUnit {
    pub p: u64,
    pub a: BigInt,
    pub b: BigInt,
    pub denom: u8,
    pub norm: i8,
}

impl FundamentalUnit {
    /// `a² - p·b²`, which equals `norm · denom²`.
    pub fn scaled_norm(&self) -> BigInt {
        &self.a * &self.a - BigInt::from(self.p) * &self.b * &self.b
    }
}

impl fmt::Display for FundamentalUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.p)
        } else {
            write!(
                f,
                "({} + {}*sqrt({}))/{}",
                self.a, self.b, self.p, self.denom
            )
        }
    }
}

/// Fundamental unit via continued fractions.
///
/// For `p ≢ 1 (mod 4)` this expands `√p`; for `p ≡ 1 (mod 4)` it expands
/// `ω = (1+√p)/2`, so the unit of `O_F = Z[ω]` is found directly. The first
/// convergent `A/B` whose norm form is `±1` gives the unit: `A + B√p`, resp.
/// `A - B·ω̄`.
pub fn fundamental_unit(p: u64) -> Result<FundamentalUnit> {
    require_prime(p)?;
    let d = p as i64;
    let s = isqrt(p) as i64;
    let omega = p % 4 == 1;

    // quadratic irrational (P + √d)/Q with Q | d - P²
    let (mut big_p, mut big_q) = if omega { (1i64, 2i64) } else { (0, 1) };
    let (mut h, mut h_prev) = (BigInt::one(), BigInt::zero());
    let (mut k, mut k_prev) = (BigInt::zero(), BigInt::one());
    let quarter = BigInt::from((d - 1) / 4);
    let pb = BigInt::from(p);

    loop {
        let q = (big_p + s).div_euclid(big_q);
        let qb = BigInt::from(q);
        let h_next = &qb * &h + &h_prev;
        let k_next = &qb * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);

        let norm = if omega {
            // N(A - Bω) = A² - AB - B²(p-1)/4
            &h * &h - &h * &k - &quarter * &k * &k
        } else {
            &h * &h - &pb * &k * &k
        };
        if norm.abs().is_one() {
            let sign: i8 = if norm.is_positive() { 1 } else { -1 };
            return Ok(if omega {
                let a = BigInt::from(2) * &h - &k;
                let b = k.clone();
                let two = BigInt::from(2);
                if (&a % &two).is_zero() && (&b % &two).is_zero() {
                    FundamentalUnit {
                        p,
                        a: a / &two,
                        b: b / &two,
                        denom: 1,
                        norm: sign,
                    }
                } else {
                    FundamentalUnit {
                        p,
                        a,
                        b,
                        denom: 2,
                        norm: sign,
                    }
                }
            } else {
                FundamentalUnit {
                    p,
                    a: h,
                    b: k,
                    denom: 1,
                    norm: sign,
                }
            });
        }

        big_p = q * big_q - big_p;
        big_q = (d - big_p * big_p) / big_q;
    }
}

/// `ϖ = [O_F^× : Z[√p]^×]` for `p ≡ 1 (mod 4)`: 3 when `ε ∉ Z[√p]`, else 1.
pub fn varpi(p: u64) -> Result<u32> {
    require_prime(p)?;
    if p % 4 != 1 {
        return Err(CensusError::InvalidArgument(format!(
            "varpi is defined only for p ≡ 1 (mod 4), got p = {p}"
        )));
    }
    Ok(if fundamental_unit(p)?.denom == 2 {
        3
    } else {
        1
    })
}

/// Reduced primitive positive definite forms `(a, b, c)` of discriminant
/// `d < 0`: `|b| ≤ a ≤ c`, `b ≥ 0` when `|b| = a` or `a = c`.
pub fn reduced_definite_forms(d: i64) -> Vec<(i64, i64, i64)> {
    assert!(d < 0 && d.rem_euclid(4) <= 1);
    let n = -d;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= n {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (b < 0 && a == c) {
                continue;
            }
            if gcd3(a, b, c) == 1 {
                out.push((a, b, c));
            }
        }
        a += 1;
    }
    out
}

/// `h(d)` for a negative fundamental discriminant `d`.
pub fn class_number_imag(d: i64) -> Result<u64> {
    if d >= 0 {
        return Err(CensusError::InvalidArgument(format!(
            "class_number_imag needs d < 0, got {d}"
        )));
    }
    if !is_fundamental_discriminant(d) {
        return Err(CensusError::InvalidArgument(format!(
            "{d} is not a fundamental discriminant"
        )));
    }
    Ok(reduced_definite_forms(d).len() as u64)
}

/// An indefinite binary quadratic form `ax² + bxy + cy²`.
pub type IndefiniteForm = (i64, i64, i64);

/// All reduced indefinite forms of discriminant `d > 0` (non-square):
/// `0 < b < √d` and `√d - b < 2|a| < √d + b`.
pub fn reduced_indefinite_forms(d: i64) -> Vec<IndefiniteForm> {
    let s = isqrt(d as u64) as i64;
    let mut out = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= s {
        let m = ((d - b * b) / 4) as u64;
        for a in crate::arith::divisors(m) {
            let a = a as i64;
            // s - b < 2|a| <= s + b, using irrationality of √d
            if 2 * a > s - b && 2 * a <= s + b {
                let c = m as i64 / a;
                out.push((a, b, -c));
                out.push((-a, b, c));
            }
        }
        b += 2;
    }
    out
}

/// One reduction step `ρ(a, b, c) = (c, b', (b'² - d)/4c)` with `b'` the
/// unique integer `≡ -b (mod 2c)` in `(√d - 2|c|, √d)`.
pub fn rho(form: IndefiniteForm, d: i64) -> IndefiniteForm {
    let (_, b, c) = form;
    let s = isqrt(d as u64) as i64;
    let m = 2 * c.abs();
    let b_next = s - (s + b).rem_euclid(m);
    let a_next = (b_next * b_next - d) / (4 * c);
    (c, b_next, a_next)
}

/// Number of `ρ`-cycles among the reduced forms of discriminant `d`, which is
/// the narrow class number `h⁺(d)`.
pub fn narrow_class_number(d: i64) -> u64 {
    let forms = reduced_indefinite_forms(d);
    let mut seen: HashSet<IndefiniteForm> = HashSet::with_capacity(forms.len());
    let mut cycles = 0;
    for &start in &forms {
        if seen.contains(&start) {
            continue;
        }
        cycles += 1;
        let mut f = start;
        loop {
            seen.insert(f);
            f = rho(f, d);
            if f == start {
                break;
            }
            debug_assert!(!seen.contains(&f), "rho left the cycle through {start:?}");
        }
    }
    cycles
}

/// `h(F)` for `F = Q(√p)`: `h⁺(d_F)`, halved when `N(ε) = +1`.
pub fn class_number_real(p: u64) -> Result<u64> {
    let d = field_discriminant(p)? as i64;
    let narrow = narrow_class_number(d);
    let unit = fundamental_unit(p)?;
    if unit.norm == 1 {
        if !narrow.is_multiple_of(2) {
            return Err(CensusError::integrality(
                p,
                "h+(d_F)/2",
                num_rational::BigRational::new(narrow.into(), 2.into()),
            ));
        }
        Ok(narrow / 2)
    } else {
        Ok(narrow)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in;

    /// Smallest `b ≥ 1` with `p·b² ± 1` a square (or `p·b² ± 4` over 2 for
    /// the half-integral case), found by exhaustive search.
    fn brute_unit(p: u64, b_max: u64) -> Option<(u64, u64, u8)> {
        let p = p as u128;
        for b in 1..=b_max as u128 {
            if p % 4 == 1 {
                for t in [-4i128, 4] {
                    let sq = (p * b * b) as i128 + t;
                    if sq >= 0 {
                        let a = (sq as u128).isqrt();
                        if a * a == sq as u128 && a % 2 == 1 && b % 2 == 1 {
                            return Some((a as u64, b as u64, 2));
                        }
                    }
                }
            }
            for t in [-1i128, 1] {
                let sq = (p * b * b) as i128 + t;
                let a = (sq as u128).isqrt();
                if a * a == sq as u128 {
                    return Some((a as u64, b as u64, 1));
                }
            }
        }
        None
    }

    #[test]
    fn discriminants() {
        assert_eq!(field_discriminant(13).unwrap(), 13);
        assert_eq!(field_discriminant(7).unwrap(), 28);
        assert_eq!(field_discriminant(2).unwrap(), 8);
        assert_eq!(field_discriminant(15), Err(CensusError::NotPrime(15)));
        let info = QuadFieldInfo::new(29).unwrap();
        assert_eq!(info.disc, 29);
        assert_eq!(info.residue_class, ResidueClass::Five);
    }

    #[test]
    fn fundamental_discriminant_normalizer() {
        assert_eq!(fundamental_discriminant(-1).unwrap(), -4);
        assert_eq!(fundamental_discriminant(-2).unwrap(), -8);
        assert_eq!(fundamental_discriminant(-3).unwrap(), -3);
        assert_eq!(fundamental_discriminant(-7).unwrap(), -7);
        assert_eq!(fundamental_discriminant(-13).unwrap(), -52);
        assert_eq!(fundamental_discriminant(-14).unwrap(), -56);
        assert_eq!(fundamental_discriminant(-39).unwrap(), -39);
        assert_eq!(fundamental_discriminant(-21).unwrap(), -84);
        assert_eq!(fundamental_discriminant(-9).unwrap(), -4);
        assert_eq!(fundamental_discriminant(-12).unwrap(), -3);
        assert_eq!(fundamental_discriminant(13).unwrap(), 13);
        assert!(fundamental_discriminant(0).is_err());
        assert!(fundamental_discriminant(4).is_err());
    }

    #[test]
    fn fundamental_discriminant_predicate() {
        for d in [-3, -4, -7, -8, -15, -20, -56, -84, 5, 8, 12, 13] {
            assert!(is_fundamental_discriminant(d), "{d}");
        }
        for d in [-1, -12, -16, -27, -2, 0, 1, 4, 9, 17 * 4] {
            assert!(!is_fundamental_discriminant(d), "{d}");
        }
    }

    #[test]
    fn unit_examples() {
        let e = fundamental_unit(13).unwrap();
        assert_eq!(
            (e.a.clone(), e.b.clone(), e.denom, e.norm),
            (3.into(), 1.into(), 2, -1)
        );
        assert_eq!(e.scaled_norm(), BigInt::from(-4));

        let e = fundamental_unit(2).unwrap();
        assert_eq!((e.a, e.b, e.denom, e.norm), (1.into(), 1.into(), 1, -1));

        let e = fundamental_unit(7).unwrap();
        assert_eq!((e.a, e.b, e.denom, e.norm), (8.into(), 3.into(), 1, 1));
        assert_eq!(brute_unit(7, 3), Some((8, 3, 1)));

        let e = fundamental_unit(5).unwrap();
        assert_eq!((e.a, e.b, e.denom, e.norm), (1.into(), 1.into(), 2, -1));
        let e = fundamental_unit(3).unwrap();
        assert_eq!((e.a, e.b, e.denom, e.norm), (2.into(), 1.into(), 1, 1));
    }

    #[test]
    fn unit_matches_exhaustive_search() {
        // the search is quadratic in b, so only units with small b are checked
        for p in primes_in(2, 400) {
            let e = fundamental_unit(p).unwrap();
            let b: u64 = e.b.clone().try_into().unwrap_or(u64::MAX);
            if b > 20_000 {
                continue;
            }
            let (a, bb, den) = brute_unit(p, b).expect("search bound covers b");
            assert_eq!(
                (BigInt::from(a), BigInt::from(bb), den),
                (e.a, e.b, e.denom),
                "p = {p}"
            );
        }
    }

    #[test]
    fn unit_invariants_large_primes() {
        for p in primes_in(2, 2000) {
            let e = fundamental_unit(p).unwrap();
            let scale = BigInt::from((e.denom as i64) * (e.denom as i64));
            assert_eq!(e.scaled_norm(), scale * e.norm as i64, "p = {p}");
            assert!(e.b.is_positive() && e.a.is_positive());
            if e.denom == 2 {
                assert_eq!(p % 4, 1);
            }
        }
    }

    #[test]
    fn varpi_examples() {
        assert_eq!(varpi(13).unwrap(), 3);
        assert_eq!(varpi(17).unwrap(), 1);
        assert_eq!(varpi(5).unwrap(), 3);
        assert!(varpi(7).is_err());
        assert!(varpi(21).is_err());
    }

    #[test]
    fn imaginary_class_numbers() {
        assert_eq!(class_number_imag(-4).unwrap(), 1);
        assert_eq!(class_number_imag(-3).unwrap(), 1);
        assert_eq!(class_number_imag(-56).unwrap(), 4);
        assert_eq!(class_number_imag(-84).unwrap(), 4);
        assert_eq!(class_number_imag(-23).unwrap(), 3);
        assert_eq!(class_number_imag(-163).unwrap(), 1);
        assert!(class_number_imag(-12).is_err());
        assert!(class_number_imag(5).is_err());
        assert!(class_number_imag(-1).is_err());
    }

    /// Reduce an arbitrary positive definite form to its reduced
    /// representative.
    fn reduce_definite(mut f: (i64, i64, i64)) -> (i64, i64, i64) {
        loop {
            let (a, b, c) = f;
            if b.abs() > a {
                // translate b into (-a, a]
                let k = (a - b).div_euclid(2 * a);
                let nb = b + 2 * a * k;
                let nc = a * k * k + b * k + c;
                f = (a, nb, nc);
                continue;
            }
            if a > c {
                f = (c, -b, a);
                continue;
            }
            if b == -a || (a == c && b < 0) {
                f = (a, -b, c);
                continue;
            }
            return f;
        }
    }

    #[test]
    fn imaginary_class_number_matches_reduction_oracle() {
        for n in 3..3000i64 {
            let d = -n;
            if !is_fundamental_discriminant(d) {
                continue;
            }
            let mut classes = HashSet::new();
            let bound = ((n / 3) as f64).sqrt() as i64 + 2;
            for a in 1..=bound {
                for b in -2 * a..=2 * a {
                    let num = b * b - d;
                    if num % (4 * a) != 0 {
                        continue;
                    }
                    let c = num / (4 * a);
                    if gcd3(a, b, c) == 1 {
                        classes.insert(reduce_definite((a, b, c)));
                    }
                }
            }
            assert_eq!(
                class_number_imag(d).unwrap(),
                classes.len() as u64,
                "d = {d}"
            );
        }
    }

    #[test]
    fn rho_preserves_discriminant_and_reducedness() {
        for p in primes_in(2, 500) {
            let d = field_discriminant(p).unwrap() as i64;
            let forms: HashSet<_> = reduced_indefinite_forms(d).into_iter().collect();
            for &f in &forms {
                let g = rho(f, d);
                assert_eq!(g.1 * g.1 - 4 * g.0 * g.2, d);
                assert!(forms.contains(&g), "rho{f:?} = {g:?} not reduced, d = {d}");
            }
        }
    }

    #[test]
    fn real_class_numbers() {
        assert_eq!(class_number_real(79).unwrap(), 3);
        assert_eq!(class_number_real(13).unwrap(), 1);
        assert_eq!(class_number_real(2).unwrap(), 1);
        assert_eq!(class_number_real(3).unwrap(), 1);
        assert_eq!(class_number_real(5).unwrap(), 1);
        assert_eq!(class_number_real(229).unwrap(), 3);
        assert_eq!(narrow_class_number(12), 2);
        assert_eq!(narrow_class_number(13), 1);
    }

    #[test]
    fn unit_norm_theorem_small() {
        for p in primes_in(3, 1000) {
            let e = fundamental_unit(p).unwrap();
            if p % 4 == 1 {
                assert_eq!(e.norm, -1, "p = {p}");
            } else {
                assert_eq!(e.norm, 1, "p = {p}");
                assert_eq!(narrow_class_number(4 * p as i64) % 2, 0);
            }
        }
    }

    #[test]
    fn varpi_one_mod_eight() {
        for p in primes_in(2, 2000).into_iter().filter(|p| p % 8 == 1) {
            assert_eq!(varpi(p).unwrap(), 1, "p = {p}");
        }
    }
}

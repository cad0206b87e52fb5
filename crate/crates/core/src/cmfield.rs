//! Class numbers of the CM fields `K_j = Q(√p, √-j)`, `j ∈ {1, 2, 3}`.
//!
//! `h(K_j) = (Q/2) · h(F) · h(Q(√-j)) · h(Q(√-pj))` where `Q` is the Hasse
//! unit index `[O_K^× : μ(K)·O_F^×]`. `Q = 2` exactly when `ζ·ε` is a square
//! in `K_j` for some root of unity `ζ`, which is decided here by exact
//! arithmetic in `F`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{is_prime, rat, rational_sqrt, ExactRational};
use crate::error::{CensusError, Result};
use crate::quadratic::{
    class_number_imag, class_number_real, fundamental_discriminant, FundamentalUnit,
};

/// `x + y√p` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealQuadElem {
    pub x: ExactRational,
    pub y: ExactRational,
}

impl RealQuadElem {
    pub fn new(x: ExactRational, y: ExactRational) -> Self {
        RealQuadElem { x, y }
    }

    pub fn rational(x: ExactRational) -> Self {
        RealQuadElem {
            x,
            y: ExactRational::zero(),
        }
    }

    pub fn zero() -> Self {
        Self::rational(ExactRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn from_unit(unit: &FundamentalUnit) -> Self {
        let den = BigInt::from(unit.denom);
        RealQuadElem {
            x: ExactRational::new(unit.a.clone(), den.clone()),
            y: ExactRational::new(unit.b.clone(), den),
        }
    }

    pub fn conjugate(&self) -> Self {
        RealQuadElem {
            x: self.x.clone(),
            y: -&self.y,
        }
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        RealQuadElem {
            x: &self.x * c,
            y: &self.y * c,
        }
    }

    pub fn mul(&self, other: &Self, p: u64) -> Self {
        let pr = ExactRational::from_integer(BigInt::from(p));
        RealQuadElem {
            x: &self.x * &other.x + pr * &self.y * &other.y,
            y: &self.x * &other.y + &self.y * &other.x,
        }
    }

    pub fn square(&self, p: u64) -> Self {
        self.mul(self, p)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self, p: u64) -> Option<Self> {
        let norm =
            &self.x * &self.x - ExactRational::from_integer(BigInt::from(p)) * &self.y * &self.y;
        if norm.is_zero() {
            return None;
        }
        Some(self.conjugate().scale(&norm.recip()))
    }
}

impl Add for &RealQuadElem {
    type Output = RealQuadElem;
    fn add(self, rhs: Self) -> RealQuadElem {
        RealQuadElem {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl Sub for &RealQuadElem {
    type Output = RealQuadElem;
    fn sub(self, rhs: Self) -> RealQuadElem {
        RealQuadElem {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl Neg for &RealQuadElem {
    type Output = RealQuadElem;
    fn neg(self) -> RealQuadElem {
        RealQuadElem {
            x: -&self.x,
            y: -&self.y,
        }
    }
}

impl Mul<&ExactRational> for &RealQuadElem {
    type Output = RealQuadElem;
    fn mul(self, rhs: &ExactRational) -> RealQuadElem {
        self.scale(rhs)
    }
}

/// A square root of `u` in `F = Q(√p)`, if one exists.
///
/// Writing `v = s + t√p`, `v² = u` means `s² + p·t² = x` and `2st = y`.
/// For `y ≠ 0` this gives `4p·t⁴ - 4x·t² + y² = 0`, so `t²` is rational only
/// if `x² - p·y²` is a rational square.
pub fn sqrt_in_f(u: &RealQuadElem, p: u64) -> Option<RealQuadElem> {
    let pr = ExactRational::from_integer(BigInt::from(p));
    if u.y.is_zero() {
        if let Some(s) = rational_sqrt(&u.x) {
            return Some(RealQuadElem::rational(s));
        }
        return rational_sqrt(&(&u.x / &pr)).map(|t| RealQuadElem::new(ExactRational::zero(), t));
    }
    let disc = &u.x * &u.x - &pr * &u.y * &u.y;
    let r = rational_sqrt(&disc)?;
    let two_p = &pr * rat(2, 1);
    for root in [r.clone(), -r] {
        let t_sq = (&u.x + &root) / &two_p;
        if let Some(t) = rational_sqrt(&t_sq) {
            if t.is_zero() {
                continue;
            }
            let s = &u.y / (&t * rat(2, 1));
            let v = RealQuadElem::new(s, t);
            debug_assert_eq!(&v.square(p), u);
            return Some(v);
        }
    }
    None
}

/// `u₀ + u₁√-j` with `u₀, u₁ ∈ F`: an element of `K_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CmElem {
    pub re: RealQuadElem,
    pub im: RealQuadElem,
}

impl CmElem {
    pub fn mul(&self, other: &Self, p: u64, j: u64) -> Self {
        let j = rat(j as i64, 1);
        let re = &self.re.mul(&other.re, p) - &(&self.im.mul(&other.im, p) * &j);
        let im = &self.re.mul(&other.im, p) + &self.im.mul(&other.re, p);
        CmElem { re, im }
    }
}

/// Whether `u` is a square in `K_j`.
///
/// With a candidate root `α + β√-j`: `α² - jβ² = u₀`, `2αβ = u₁`.
/// If `u₁ = 0` the root is pure (`β = 0` or `α = 0`). Otherwise
/// `β = u₁/2α` and `α² = (u₀ ± √(u₀² + j·u₁²))/2`.
pub fn is_square_in_cm(u: &CmElem, p: u64, j: u64) -> bool {
    let jr = rat(j as i64, 1);
    if u.im.is_zero() {
        if sqrt_in_f(&u.re, p).is_some() {
            return true;
        }
        // α = 0: -jβ² = u₀
        let beta_sq = &u.re * &(-jr.recip());
        return sqrt_in_f(&beta_sq, p).is_some();
    }
    let disc = &u.re.square(p) + &(&u.im.square(p) * &jr);
    let Some(s) = sqrt_in_f(&disc, p) else {
        return false;
    };
    let half = rat(1, 2);
    for root in [s.clone(), -&s] {
        let alpha_sq = &(&u.re + &root) * &half;
        if alpha_sq.is_zero() {
            continue;
        }
        if let Some(alpha) = sqrt_in_f(&alpha_sq, p) {
            if cfg!(debug_assertions) {
                let beta =
                    u.im.mul(&alpha.inverse(p).expect("alpha ≠ 0"), p)
                        .scale(&half);
                let root = CmElem {
                    re: alpha,
                    im: beta,
                };
                debug_assert_eq!(&root.mul(&root, p, j), u);
            }
            return true;
        }
    }
    false
}

/// Roots of unity of `K_j` for `p ≥ 5`, as elements `a + b√-j` with rational
/// `a, b`.
fn roots_of_unity(j: u64) -> Vec<(ExactRational, ExactRational)> {
    let z = || rat(0, 1);
    match j {
        1 => vec![
            (rat(1, 1), z()),
            (z(), rat(1, 1)),
            (rat(-1, 1), z()),
            (z(), rat(-1, 1)),
        ],
        2 => vec![(rat(1, 1), z()), (rat(-1, 1), z())],
        _ => vec![
            (rat(1, 1), z()),
            (rat(1, 2), rat(1, 2)),
            (rat(-1, 2), rat(1, 2)),
            (rat(-1, 1), z()),
            (rat(-1, 2), rat(-1, 2)),
            (rat(1, 2), rat(-1, 2)),
        ],
    }
}

fn check_j(j: u64) -> Result<()> {
    if (1..=3).contains(&j) {
        Ok(())
    } else {
        Err(CensusError::InvalidArgument(format!(
            "j must be 1, 2 or 3, got {j}"
        )))
    }
}

fn check_cm_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(CensusError::NotPrime(p));
    }
    if p < 5 {
        return Err(CensusError::InvalidArgument(format!(
            "K_j for p = {p} has extra roots of unity; use the special-prime values"
        )));
    }
    Ok(())
}

/// Hasse unit index `Q ∈ {1, 2}` of `K_j / F`.
pub fn unit_index_q(p: u64, j: u64) -> Result<u32> {
    check_j(j)?;
    check_cm_prime(p)?;
    let unit = crate::quadratic::fundamental_unit(p)?;
    let eps = RealQuadElem::from_unit(&unit);
    let twisted_square = roots_of_unity(j).into_iter().any(|(a, b)| {
        let u = CmElem {
            re: eps.scale(&a),
            im: eps.scale(&b),
        };
        is_square_in_cm(&u, p, j)
    });
    Ok(if twisted_square { 2 } else { 1 })
}

/// `h(Q(√-j))` for `j ∈ {1, 2, 3}` via its fundamental discriminant.
fn class_number_of_minus_j(j: u64) -> Result<u64> {
    class_number_imag(fundamental_discriminant(-(j as i64))?)
}

/// `h(𝕜_j)` for `𝕜_j = Q(√-pj)`.
pub fn class_number_kj(p: u64, j: u64) -> Result<u64> {
    check_j(j)?;
    class_number_imag(fundamental_discriminant(-((p * j) as i64))?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CmFieldInvariant {
    pub p: u64,
    pub j: u64,
    pub unit_index_q: u32,
    pub h: u64,
}

/// Unit index and class number of `K_j`; `h(F)` may be passed in to avoid
/// recomputing it.
pub fn cm_field_invariant(p: u64, j: u64, h_f: Option<u64>) -> Result<CmFieldInvariant> {
    check_j(j)?;
    check_cm_prime(p)?;
    let q = unit_index_q(p, j)?;
    let h_f = match h_f {
        Some(h) => h,
        None => class_number_real(p)?,
    };
    let product = q as u64 * h_f * class_number_of_minus_j(j)? * class_number_kj(p, j)?;
    if !product.is_multiple_of(2) {
        return Err(CensusError::integrality(
            p,
            format!("h(K_{j})"),
            ExactRational::new(product.into(), 2.into()),
        ));
    }
    Ok(CmFieldInvariant {
        p,
        j,
        unit_index_q: q,
        h: product / 2,
    })
}

/// `h(K_j)` for `p ≥ 5`.
pub fn cm_class_number(p: u64, j: u64) -> Result<u64> {
    Ok(cm_field_invariant(p, j, None)?.h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_in;
    use proptest::prelude::*;

    fn elem(x: i64, y: i64) -> RealQuadElem {
        RealQuadElem::new(rat(x, 1), rat(y, 1))
    }

    #[test]
    fn sqrt_examples() {
        assert_eq!(sqrt_in_f(&elem(9, 0), 13), Some(elem(3, 0)));
        let eps = RealQuadElem::new(rat(3, 2), rat(1, 2));
        assert_eq!(sqrt_in_f(&eps, 13), None);
        let r = sqrt_in_f(&elem(9, 4), 5).unwrap();
        assert!(r == elem(2, 1) || r == elem(-2, -1));
        // pure √p component
        assert_eq!(sqrt_in_f(&elem(7, 0), 7), Some(elem(0, 1)));
        assert_eq!(sqrt_in_f(&elem(-1, 0), 7), None);
    }

    #[test]
    fn fundamental_unit_is_never_a_square() {
        for p in primes_in(2, 500) {
            let eps = RealQuadElem::from_unit(&crate::quadratic::fundamental_unit(p).unwrap());
            assert_eq!(sqrt_in_f(&eps, p), None, "p = {p}");
        }
    }

    #[test]
    fn two_eps_is_square_for_three_mod_four() {
        for p in primes_in(7, 500).into_iter().filter(|p| p % 4 == 3) {
            let eps = RealQuadElem::from_unit(&crate::quadratic::fundamental_unit(p).unwrap());
            assert!(sqrt_in_f(&eps.scale(&rat(2, 1)), p).is_some(), "p = {p}");
        }
    }

    #[test]
    fn unit_index_examples() {
        assert_eq!(unit_index_q(7, 1).unwrap(), 2);
        assert_eq!(unit_index_q(7, 3).unwrap(), 1);
        assert_eq!(unit_index_q(7, 2).unwrap(), 2);
        assert!(unit_index_q(7, 4).is_err());
        assert!(unit_index_q(3, 1).is_err());
    }

    #[test]
    fn unit_index_one_when_norm_negative() {
        // a unit of norm -1 is never totally positive, so ζε is never a square
        for p in primes_in(5, 800).into_iter().filter(|p| p % 4 == 1) {
            for j in 1..=3 {
                assert_eq!(unit_index_q(p, j).unwrap(), 1, "p = {p}, j = {j}");
            }
        }
    }

    #[test]
    fn cm_class_number_examples() {
        assert_eq!(cm_class_number(7, 2).unwrap(), 4);
        assert_eq!(cm_class_number(13, 3).unwrap(), 2);
        assert_eq!(cm_class_number(79, 1).unwrap(), 15);
        assert_eq!(cm_class_number(5, 1).unwrap(), 1);
        assert_eq!(cm_class_number(5, 3).unwrap(), 1);
    }

    #[test]
    fn square_test_accepts_constructed_squares() {
        let p = 7;
        for j in 1..=3u64 {
            for (a, b, c, d) in [
                (1, 2, 3, 1),
                (0, 0, 1, 1),
                (2, 1, 0, 0),
                (0, 1, 0, 0),
                (1, 1, 1, 1),
            ] {
                let root = CmElem {
                    re: elem(a, b),
                    im: elem(c, d),
                };
                let sq = root.mul(&root, p, j);
                assert!(is_square_in_cm(&sq, p, j), "({a},{b},{c},{d}) j = {j}");
            }
        }
        assert!(!is_square_in_cm(
            &CmElem {
                re: elem(2, 0),
                im: elem(0, 0)
            },
            13,
            3
        ));
    }

    #[test]
    fn kj_discriminants() {
        assert_eq!(class_number_kj(7, 2).unwrap(), 4);
        assert_eq!(class_number_kj(13, 1).unwrap(), 2);
        assert_eq!(class_number_kj(13, 3).unwrap(), 4);
    }

    proptest! {
        #[test]
        fn squares_are_recognised(
            s in -200i64..200, t in -200i64..200, den in 1i64..20,
            pi in 0usize..20,
        ) {
            let p = primes_in(2, 100)[pi];
            let v = RealQuadElem::new(rat(s, den), rat(t, den));
            let u = v.square(p);
            let r = sqrt_in_f(&u, p);
            prop_assert!(r.is_some());
            prop_assert_eq!(r.unwrap().square(p), u.clone());
            prop_assert!(sqrt_in_f(&u.conjugate(), p).is_some());
        }

        #[test]
        fn sqrt_existence_respects_conjugation(
            x in -500i64..500, y in -500i64..500, den in 1i64..10,
            pi in 0usize..20,
        ) {
            let p = primes_in(2, 100)[pi];
            let u = RealQuadElem::new(rat(x, den), rat(y, den));
            prop_assert_eq!(
                sqrt_in_f(&u, p).is_some(),
                sqrt_in_f(&u.conjugate(), p).is_some()
            );
        }
    }
}

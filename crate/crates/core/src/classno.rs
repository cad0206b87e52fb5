//! Masses, elliptic parts and class numbers of the quaternion orders
//! `O_1 ⊃ O_8, O_16` in the definite quaternion algebra over `Q(√p)`
//! ramified exactly at the two real places, and their assembly into the
//! number `H(p)` of `F_p`-isomorphism classes of abelian surfaces in the
//! isogeny class of `√p`.
//!
//! `h(O) = Mass(O) + Ell(O)` with
//! `Ell(O) = ½ Σ_B (2 - δ(B)) h(B) (1 - 1/w(B)) m(B)` over quadratic orders
//! `B` with extra units. The contributing orders and their invariants are
//! fixed tables ([`embedding_rows`]); `p = 2, 3, 5` use their own constants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{is_prime, kronecker, positive_integer, rat, rat_int, ExactRational};
use crate::cmfield::cm_field_invariant;
use crate::error::{CensusError, Result};
use crate::quadratic::{class_number_real, fundamental_unit, FundamentalUnit};
use crate::zeta::zeta_minus_one;

/// One of the three genera of orders `O_r`, `r = [O_1 : O_r]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrderKind {
    O1,
    O8,
    O16,
}

impl OrderKind {
    pub const ALL: [OrderKind; 3] = [OrderKind::O1, OrderKind::O8, OrderKind::O16];

    pub fn index(self) -> u32 {
        match self {
            OrderKind::O1 => 1,
            OrderKind::O8 => 8,
            OrderKind::O16 => 16,
        }
    }

    pub fn from_index(r: u32) -> Result<Self> {
        match r {
            1 => Ok(OrderKind::O1),
            8 => Ok(OrderKind::O8),
            16 => Ok(OrderKind::O16),
            _ => Err(CensusError::InvalidArgument(format!(
                "order index must be 1, 8 or 16, got {r}"
            ))),
        }
    }

    /// Kinds present for `p`: all three when `p ≡ 1 (mod 4)`, else `O_1`.
    pub fn applicable(p: u64) -> &'static [OrderKind] {
        if p % 4 == 1 {
            &Self::ALL
        } else {
            &Self::ALL[..1]
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O{}", self.index())
    }
}

/// Quadratic orders with `w(B) > 1`: maximal orders of `K_j` and the
/// proper `Z[√p]`-orders `B_{j,k}` of index `k` in `O_{K_j}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadOrderLabel {
    OK1,
    OK2,
    OK3,
    B12,
    B14,
    B34,
    B32,
}

impl fmt::Display for QuadOrderLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            QuadOrderLabel::OK1 => "O_{K_1}",
            QuadOrderLabel::OK2 => "O_{K_2}",
            QuadOrderLabel::OK3 => "O_{K_3}",
            QuadOrderLabel::B12 => "B_{1,2}",
            QuadOrderLabel::B14 => "B_{1,4}",
            QuadOrderLabel::B34 => "B_{3,4}",
            QuadOrderLabel::B32 => "B_{3,2}",
        };
        f.write_str(s)
    }
}

/// Invariants of one quadratic order `B` entering an elliptic part.
///
/// `m2_8`, `m2_16` are the numbers of conjugacy classes of 2-adic optimal
/// embeddings into `O_8`, `O_16`; every row embeds optimally into the
/// maximal order `O_1` exactly once when it is listed for `O_1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EmbeddingRow {
    pub label: QuadOrderLabel,
    pub h_b: u64,
    pub w_b: u64,
    pub m2_8: u8,
    pub m2_16: u8,
    pub delta_b: u8,
}

impl EmbeddingRow {
    fn maximal(label: QuadOrderLabel, h_b: u64, w_b: u64) -> Self {
        EmbeddingRow {
            label,
            h_b,
            w_b,
            m2_8: 0,
            m2_16: 0,
            delta_b: 1,
        }
    }

    fn local_factor(&self, kind: OrderKind) -> u8 {
        match kind {
            OrderKind::O1 => 1,
            OrderKind::O8 => self.m2_8,
            OrderKind::O16 => self.m2_16,
        }
    }

    /// `½ (2 - δ) h(B) (1 - 1/w) m`.
    pub fn contribution(&self, kind: OrderKind) -> ExactRational {
        let m = self.local_factor(kind) as i64;
        let w = self.w_b as i64;
        rat_int(BigInt::from(self.h_b)) * rat((2 - self.delta_b as i64) * m * (w - 1), 2 * w)
    }
}

/// Invariants of `F = Q(√p)` and of `K_1, K_2, K_3` needed by every order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldData {
    pub p: u64,
    pub zeta_minus1: ExactRational,
    pub h_f: u64,
    pub unit: FundamentalUnit,
    pub varpi: Option<u32>,
    pub h_k1: u64,
    pub h_k2: Option<u64>,
    pub h_k3: u64,
}

impl FieldData {
    pub fn compute(p: u64) -> Result<Self> {
        require_prime(p)?;
        let zeta_minus1 = zeta_minus_one(p)?;
        let h_f = class_number_real(p)?;
        let unit = fundamental_unit(p)?;
        let varpi = (p % 4 == 1).then_some(if unit.denom == 2 { 3 } else { 1 });
        let (h_k1, h_k2, h_k3) = match p {
            // Q(√2, √-1) = Q(ζ_8); Q(√3, √-1) = Q(√3, √-3) = Q(ζ_12)
            2 => (1, None, 1),
            3 => (1, Some(2), 1),
            _ => {
                let h = |j| cm_field_invariant(p, j, Some(h_f)).map(|c| c.h);
                let h_k2 = if p % 4 == 3 { Some(h(2)?) } else { None };
                (h(1)?, h_k2, h(3)?)
            }
        };
        Ok(FieldData {
            p,
            zeta_minus1,
            h_f,
            unit,
            varpi,
            h_k1,
            h_k2,
            h_k3,
        })
    }

    fn zeta_h(&self) -> ExactRational {
        &self.zeta_minus1 * rat_int(self.h_f)
    }

    /// `(2/p)`.
    fn two_symbol(&self) -> i64 {
        kronecker(2, self.p as i64).expect("p ≠ 0") as i64
    }

    fn varpi_or_err(&self) -> Result<u64> {
        self.varpi.map(u64::from).ok_or_else(|| {
            CensusError::InvalidArgument(format!("varpi undefined for p = {}", self.p))
        })
    }

    fn h_k2_or_err(&self) -> Result<u64> {
        self.h_k2.ok_or_else(|| {
            CensusError::InvalidArgument(format!("h(K_2) not computed for p = {}", self.p))
        })
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(CensusError::NotPrime(p))
    }
}

fn check_kind(p: u64, kind: OrderKind) -> Result<()> {
    require_prime(p)?;
    if kind != OrderKind::O1 && p % 4 != 1 {
        return Err(CensusError::InvalidArgument(format!(
            "{kind} exists only for p ≡ 1 (mod 4), got p = {p}"
        )));
    }
    Ok(())
}

fn exact_div(p: u64, what: &str, num: u64, den: u64) -> Result<u64> {
    if num.is_multiple_of(den) {
        Ok(num / den)
    } else {
        Err(CensusError::integrality(
            p,
            what,
            rat(num as i64, den as i64),
        ))
    }
}

/// Contributing quadratic orders for `kind` at a prime `p ≥ 7`.
///
/// `B_{3,2}` is a proper `Z[√p]`-order only for `p ≡ 5 (mod 8)` with
/// `ϖ = 3`, and is the only row not closed under complex conjugation.
pub fn embedding_rows(fd: &FieldData, kind: OrderKind) -> Result<Vec<EmbeddingRow>> {
    use QuadOrderLabel::*;
    let p = fd.p;
    check_kind(p, kind)?;
    let two = fd.two_symbol();
    let c = (2 - two) as u64;
    match kind {
        OrderKind::O1 if p % 4 == 3 => Ok(vec![
            EmbeddingRow::maximal(OK1, fd.h_k1, 4),
            EmbeddingRow::maximal(B12, c * fd.h_k1, 4),
            EmbeddingRow::maximal(B14, c * fd.h_k1, 2),
            EmbeddingRow::maximal(OK2, fd.h_k2_or_err()?, 2),
            EmbeddingRow::maximal(OK3, fd.h_k3, 3),
        ]),
        OrderKind::O1 => Ok(vec![
            EmbeddingRow::maximal(OK1, fd.h_k1, 2),
            EmbeddingRow::maximal(OK3, fd.h_k3, 3),
        ]),
        OrderKind::O8 | OrderKind::O16 => {
            let varpi = fd.varpi_or_err()?;
            let mut rows = vec![
                EmbeddingRow {
                    label: B12,
                    h_b: exact_div(p, "h(B_{1,2})", c * fd.h_k1, varpi)?,
                    w_b: 2,
                    m2_8: 1,
                    m2_16: 0,
                    delta_b: 1,
                },
                EmbeddingRow {
                    label: B14,
                    h_b: exact_div(p, "h(B_{1,4})", 2 * c * fd.h_k1, varpi)?,
                    w_b: 2,
                    m2_8: 0,
                    m2_16: 1,
                    delta_b: 1,
                },
                EmbeddingRow {
                    label: B34,
                    h_b: exact_div(p, "h(B_{3,4})", 3 * fd.h_k3, varpi)?,
                    w_b: 3,
                    m2_8: 0,
                    m2_16: 1,
                    delta_b: 1,
                },
            ];
            if p % 8 == 5 && varpi == 3 {
                rows.push(EmbeddingRow {
                    label: B32,
                    h_b: fd.h_k3,
                    w_b: 3,
                    m2_8: 1,
                    m2_16: 0,
                    delta_b: 0,
                });
            }
            Ok(rows)
        }
    }
}

/// Published values for the primes where extra roots of unity (`ζ_8`,
/// `ζ_12`, `ζ_10`) and extra orders enter: `(mass, ell)`.
fn special_mass_ell(p: u64, kind: OrderKind) -> Option<(ExactRational, ExactRational)> {
    match (p, kind) {
        (2, OrderKind::O1) => Some((rat(1, 24), rat(23, 24))),
        (3, OrderKind::O1) => Some((rat(1, 12), rat(23, 12))),
        (5, OrderKind::O1) => Some((rat(1, 60), rat(59, 60))),
        // ϖ = 3 at p = 5
        (5, OrderKind::O8) => Some((rat(1, 12), rat(11, 12))),
        (5, OrderKind::O16) => Some((rat(1, 6), rat(5, 6))),
        _ => None,
    }
}

fn mass_from(fd: &FieldData, kind: OrderKind) -> Result<ExactRational> {
    check_kind(fd.p, kind)?;
    if let Some((mass, _)) = special_mass_ell(fd.p, kind) {
        return Ok(mass);
    }
    let coeff = match kind {
        OrderKind::O1 => rat(1, 2),
        OrderKind::O8 if fd.p % 8 == 1 => rat(9, 2),
        OrderKind::O8 => rat(15, 2 * fd.varpi_or_err()? as i64),
        OrderKind::O16 if fd.p % 8 == 1 => rat(3, 1),
        OrderKind::O16 => rat(15, fd.varpi_or_err()? as i64),
    };
    Ok(coeff * fd.zeta_h())
}

fn elliptic_part_from(fd: &FieldData, kind: OrderKind) -> Result<ExactRational> {
    check_kind(fd.p, kind)?;
    if let Some((_, ell)) = special_mass_ell(fd.p, kind) {
        return Ok(ell);
    }
    Ok(embedding_rows(fd, kind)?
        .iter()
        .map(|row| row.contribution(kind))
        .fold(ExactRational::zero(), |acc, x| acc + x))
}

/// `Mass(O_r)`.
pub fn mass(p: u64, kind: OrderKind) -> Result<ExactRational> {
    check_kind(p, kind)?;
    mass_from(&FieldData::compute(p)?, kind)
}

/// `Ell(O_r)`.
pub fn elliptic_part(p: u64, kind: OrderKind) -> Result<ExactRational> {
    check_kind(p, kind)?;
    elliptic_part_from(&FieldData::compute(p)?, kind)
}

/// Mass, elliptic part and class number of one order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderReport {
    pub kind: OrderKind,
    pub mass: ExactRational,
    pub ell: ExactRational,
    pub h: u64,
}

impl OrderReport {
    pub fn from_field_data(fd: &FieldData, kind: OrderKind) -> Result<Self> {
        let mass = mass_from(fd, kind)?;
        let ell = elliptic_part_from(fd, kind)?;
        let total = &mass + &ell;
        let h = positive_integer(&total)
            .ok_or_else(|| CensusError::integrality(fd.p, format!("h({kind})"), total))?;
        Ok(OrderReport { kind, mass, ell, h })
    }

    /// `Ell/Mass`.
    pub fn ell_mass_ratio(&self) -> ExactRational {
        &self.ell / &self.mass
    }
}

/// `h(O_r)`.
pub fn class_number(p: u64, kind: OrderKind) -> Result<u64> {
    check_kind(p, kind)?;
    Ok(OrderReport::from_field_data(&FieldData::compute(p)?, kind)?.h)
}

fn to_positive(p: u64, what: &str, x: ExactRational) -> Result<u64> {
    positive_integer(&x).ok_or_else(|| CensusError::integrality(p, what, x))
}

/// `H(p)` assembled from the class numbers of the applicable orders.
pub fn surface_count(p: u64) -> Result<u64> {
    require_prime(p)?;
    match p {
        2 => Ok(1),
        3 => Ok(2),
        5 => Ok(3),
        _ => {
            let fd = FieldData::compute(p)?;
            OrderKind::applicable(p)
                .iter()
                .map(|&k| OrderReport::from_field_data(&fd, k).map(|r| r.h))
                .sum()
        }
    }
}

fn closed_form_from(fd: &FieldData) -> Result<u64> {
    let p = fd.p;
    let zh = fd.zeta_h();
    let k1 = rat_int(fd.h_k1);
    let k3 = rat_int(fd.h_k3);
    let value = if p % 4 == 3 {
        let two = fd.two_symbol();
        rat(1, 2) * zh
            + (rat(3, 8) + rat(5, 8) * rat(2 - two, 1)) * k1
            + rat(1, 4) * rat_int(fd.h_k2_or_err()?)
            + rat(1, 3) * k3
    } else if p % 8 == 1 {
        rat(8, 1) * zh + k1 + rat(4, 3) * k3
    } else {
        let w = fd.varpi_or_err()? as i64;
        rat(45 + w, 2 * w) * zh + rat(9 + w, 4 * w) * k1 + rat(4, 3) * k3
    };
    to_positive(p, "H(p) closed form", value)
}

/// `H(p)` evaluated from the closed-form expressions in `ζ_F(-1)`, `h(F)`,
/// `h(K_j)` and `ϖ`.
pub fn surface_count_closed_form(p: u64) -> Result<u64> {
    require_prime(p)?;
    match p {
        2 => Ok(1),
        3 => Ok(2),
        5 => Ok(3),
        _ => closed_form_from(&FieldData::compute(p)?),
    }
}

fn quaternion_class_number_from(fd: &FieldData) -> Result<u64> {
    match fd.p {
        2 => Ok(1),
        3 => Ok(2),
        5 => Ok(1),
        p if p % 4 == 1 => to_positive(
            p,
            "h(D)",
            rat(1, 2) * fd.zeta_h() + rat(1, 4) * rat_int(fd.h_k1) + rat(1, 3) * rat_int(fd.h_k3),
        ),
        _ => Ok(OrderReport::from_field_data(fd, OrderKind::O1)?.h),
    }
}

/// `h(D)`, the class number of a maximal order of the quaternion algebra.
pub fn quaternion_class_number(p: u64) -> Result<u64> {
    require_prime(p)?;
    quaternion_class_number_from(&FieldData::compute(p)?)
}

/// Number of supersingular `j`-invariants in characteristic `p`:
/// `(p-1)/12 + (1 - (-3/p))/3 + (1 - (-4/p))/4`.
pub fn deuring_count(p: u64) -> Result<u64> {
    require_prime(p)?;
    if p < 5 {
        return Ok(1);
    }
    let pi = p as i64;
    let value = rat(pi - 1, 12)
        + rat(1 - kronecker(-3, pi)? as i64, 3)
        + rat(1 - kronecker(-4, pi)? as i64, 4);
    to_positive(p, "supersingular count", value)
}

/// `h(D)/h(F)`, an integer for every prime `p > 5`.
pub fn peters_ratio(p: u64) -> Result<ExactRational> {
    require_prime(p)?;
    if p <= 5 {
        return Err(CensusError::InvalidArgument(format!(
            "h(D)/h(F) is considered only for p > 5, got p = {p}"
        )));
    }
    let fd = FieldData::compute(p)?;
    Ok(rat_int(quaternion_class_number_from(&fd)?) / rat_int(fd.h_f))
}

/// Every invariant computed for one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsogenyCensus {
    pub p: u64,
    pub zeta_minus1: ExactRational,
    pub h_f: u64,
    pub eps_norm: i8,
    pub varpi: Option<u32>,
    pub h_k1: u64,
    pub h_k2: Option<u64>,
    pub h_k3: u64,
    pub orders: Vec<OrderReport>,
    pub surface_count: u64,
    pub h_d: u64,
    pub deuring: u64,
}

impl IsogenyCensus {
    /// `p = 2, 3, 5` take published values instead of the general formulas.
    pub fn is_special(&self) -> bool {
        self.p <= 5
    }

    pub fn order(&self, kind: OrderKind) -> Option<&OrderReport> {
        self.orders.iter().find(|r| r.kind == kind)
    }
}

/// Full census for `p`, including the cross-check that the assembled `H(p)`
/// equals the closed form.
pub fn census(p: u64) -> Result<IsogenyCensus> {
    require_prime(p)?;
    let fd = FieldData::compute(p)?;
    census_from(&fd)
}

pub fn census_from(fd: &FieldData) -> Result<IsogenyCensus> {
    let p = fd.p;
    let orders = OrderKind::applicable(p)
        .iter()
        .map(|&k| OrderReport::from_field_data(fd, k))
        .collect::<Result<Vec<_>>>()?;
    let surface_count: u64 = orders.iter().map(|r| r.h).sum();
    let closed = if p <= 5 {
        surface_count_closed_form(p)?
    } else {
        closed_form_from(fd)?
    };
    if closed != surface_count {
        return Err(CensusError::integrality(
            p,
            format!("H(p) assembled = {surface_count} but closed form"),
            rat_int(closed),
        ));
    }
    Ok(IsogenyCensus {
        p,
        zeta_minus1: fd.zeta_minus1.clone(),
        h_f: fd.h_f,
        eps_norm: fd.unit.norm,
        varpi: fd.varpi,
        h_k1: fd.h_k1,
        h_k2: fd.h_k2,
        h_k3: fd.h_k3,
        orders,
        surface_count,
        h_d: quaternion_class_number_from(fd)?,
        deuring: deuring_count(p)?,
    })
}

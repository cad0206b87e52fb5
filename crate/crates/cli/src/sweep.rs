//! Parallel evaluation of [`census`] over a range of primes.

use census_core::arith::{primes_in, rat_int, ExactRational};
use census_core::{census, IsogenyCensus, OrderKind};
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::CliError;

/// Census of every prime in `[pmin, pmax]`, ascending. Fails on the first
/// (smallest) prime whose census fails.
pub fn sweep(pmin: u64, pmax: u64) -> Result<Vec<IsogenyCensus>, CliError> {
    if pmin < 2 || pmin > pmax {
        return Err(CliError::Usage(format!(
            "need 2 <= pmin <= pmax, got {pmin} {pmax}"
        )));
    }
    let results: Vec<_> = primes_in(pmin, pmax).into_par_iter().map(census).collect();
    results
        .into_iter()
        .map(|r| r.map_err(CliError::from))
        .collect()
}

/// `Ell/Mass` statistics for one order kind over a sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioSummary {
    pub kind: OrderKind,
    pub count: usize,
    pub max: ExactRational,
    pub argmax: u64,
    pub mean: ExactRational,
}

pub fn ratio_summary(rows: &[IsogenyCensus], kind: OrderKind) -> Option<RatioSummary> {
    let mut count = 0usize;
    let mut total = ExactRational::zero();
    let mut best: Option<(ExactRational, u64)> = None;
    for c in rows {
        let Some(r) = c.order(kind) else { continue };
        let ratio = r.ell_mass_ratio();
        count += 1;
        total += &ratio;
        if best.as_ref().is_none_or(|(m, _)| ratio > *m) {
            best = Some((ratio, c.p));
        }
    }
    let (max, argmax) = best?;
    Some(RatioSummary {
        kind,
        count,
        max,
        argmax,
        mean: total / rat_int(count as u64),
    })
}

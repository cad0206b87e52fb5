//! Cell-by-cell comparison of the reference tables against the census.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use census_core::arith::ExactRational;
use census_core::{census, IsogenyCensus};

use crate::error::CliError;
use crate::golden::{computed_cell, GoldenTables};
use crate::render::rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub table_id: u8,
    pub p: u64,
    pub column: String,
    pub expected: ExactRational,
    pub computed: Option<ExactRational>,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let computed = self.computed.as_ref().map_or("(none)".into(), rational);
        write!(
            f,
            "table {} p={} {}: expected {}, computed {}",
            self.table_id,
            self.p,
            self.column,
            rational(&self.expected),
            computed
        )
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub rows_checked: usize,
    pub mismatches: Vec<Mismatch>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn is_success(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// Deterministic summary; `elapsed` is left out.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for m in &self.mismatches {
            s.push_str(&format!("MISMATCH {m}\n"));
        }
        s.push_str(&format!(
            "rows checked: {}, mismatches: {}\n",
            self.rows_checked,
            self.mismatches.len()
        ));
        s
    }
}

/// Recomputes every non-blank cell. Blank cells are skipped.
pub fn verify(tables: &GoldenTables) -> Result<VerificationReport, CliError> {
    let start = Instant::now();
    let mut cache: BTreeMap<u64, IsogenyCensus> = BTreeMap::new();
    for row in &tables.rows {
        if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(row.p) {
            e.insert(census(row.p)?);
        }
    }
    let mut mismatches = Vec::new();
    for row in &tables.rows {
        let c = &cache[&row.p];
        for (column, expected) in &row.cells {
            let Some(expected) = expected else { continue };
            let computed = computed_cell(c, column);
            if computed.as_ref() != Some(expected) {
                mismatches.push(Mismatch {
                    table_id: row.table_id,
                    p: row.p,
                    column: column.clone(),
                    expected: expected.clone(),
                    computed,
                });
            }
        }
    }
    Ok(VerificationReport {
        rows_checked: tables.rows.len(),
        mismatches,
        elapsed: start.elapsed(),
    })
}

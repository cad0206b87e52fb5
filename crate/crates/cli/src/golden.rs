//! Reference tables of class numbers for primes below 200, one CSV file per
//! table. The files ship with the crate and are embedded in the binary;
//! `--golden <dir>` swaps in another copy.

use std::fs;
use std::path::Path;
use std::str::FromStr;

use census_core::arith::{is_prime, rat_int, ExactRational};
use census_core::{IsogenyCensus, OrderKind};

use crate::error::CliError;

pub const TABLE_FILES: [&str; 3] = ["table1.csv", "table2.csv", "table3.csv"];

const EMBEDDED: [&str; 3] = [
    include_str!("../golden/table1.csv"),
    include_str!("../golden/table2.csv"),
    include_str!("../golden/table3.csv"),
];

const TABLE1_HEADER: [&str; 9] = [
    "p",
    "h(O_1)",
    "Mass(O_1)",
    "Ell(O_1)",
    "zeta_F(-1)",
    "h(F)",
    "h(K_1)",
    "h(K_2)",
    "h(K_3)",
];

fn expected_header(table_id: u8) -> Vec<String> {
    match table_id {
        1 => TABLE1_HEADER.iter().map(|s| s.to_string()).collect(),
        _ => {
            let r = if table_id == 2 { 8 } else { 16 };
            vec![
                "p".into(),
                format!("h(O_{r})"),
                format!("Mass(O_{r})"),
                format!("Ell(O_{r})"),
            ]
        }
    }
}

/// One row of a reference table. Blank cells are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenRow {
    pub table_id: u8,
    pub p: u64,
    pub cells: Vec<(String, Option<ExactRational>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenTables {
    pub rows: Vec<GoldenRow>,
}

impl GoldenTables {
    pub fn embedded() -> Result<Self, CliError> {
        let mut rows = Vec::new();
        for (i, text) in EMBEDDED.iter().enumerate() {
            rows.extend(parse_table(i as u8 + 1, text, TABLE_FILES[i])?);
        }
        Ok(GoldenTables { rows })
    }

    /// Loads `table1.csv`, `table2.csv`, `table3.csv` from `dir`.
    pub fn load_dir(dir: &Path) -> Result<Self, CliError> {
        let mut rows = Vec::new();
        for (i, name) in TABLE_FILES.iter().enumerate() {
            let path = dir.join(name);
            let text = fs::read_to_string(&path)
                .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            rows.extend(parse_table(i as u8 + 1, &text, name)?);
        }
        Ok(GoldenTables { rows })
    }
}

fn parse_cell(text: &str) -> Result<Option<ExactRational>, String> {
    let t = text.trim();
    if t.is_empty() {
        return Ok(None);
    }
    ExactRational::from_str(t)
        .map(Some)
        .map_err(|e| format!("bad rational {t:?}: {e}"))
}

/// Parses one table and checks the row invariants: prime `p` in range,
/// `p ≡ 1 (mod 4)` for the `O_8`/`O_16` tables, and `h(K_2)` present
/// exactly when `p ≡ 3 (mod 4)`.
pub fn parse_table(table_id: u8, text: &str, name: &str) -> Result<Vec<GoldenRow>, CliError> {
    let bad = |line: usize, msg: String| CliError::Golden(format!("{name} line {line}: {msg}"));
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| bad(1, e.to_string()))?
        .iter()
        .map(|s| s.trim().to_string())
        .collect();
    if header != expected_header(table_id) {
        return Err(bad(1, format!("unexpected header {header:?}")));
    }

    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2;
        let record = record.map_err(|e| bad(line, e.to_string()))?;
        let p: u64 = record[0]
            .trim()
            .parse()
            .map_err(|e| bad(line, format!("bad prime: {e}")))?;
        if !is_prime(p) {
            return Err(bad(line, format!("{p} is not prime")));
        }
        let in_range = match table_id {
            1 => (7..200).contains(&p),
            _ => p % 4 == 1 && p > 5 && p < 200,
        };
        if !in_range {
            return Err(bad(
                line,
                format!("p = {p} out of range for table {table_id}"),
            ));
        }
        let mut cells = Vec::with_capacity(header.len() - 1);
        for (col, field) in header.iter().zip(record.iter()).skip(1) {
            let value = parse_cell(field).map_err(|m| bad(line, m))?;
            let optional = col == "h(K_2)";
            match (&value, optional) {
                (None, false) => return Err(bad(line, format!("missing {col}"))),
                (Some(_), true) if p % 4 == 1 => {
                    return Err(bad(line, "h(K_2) must be blank for p ≡ 1 (mod 4)".into()))
                }
                (None, true) if p % 4 == 3 => {
                    return Err(bad(line, "h(K_2) required for p ≡ 3 (mod 4)".into()))
                }
                _ => {}
            }
            cells.push((col.clone(), value));
        }
        rows.push(GoldenRow { table_id, p, cells });
    }
    Ok(rows)
}

/// The value the census gives for a reference-table column.
pub fn computed_cell(c: &IsogenyCensus, column: &str) -> Option<ExactRational> {
    let order = |kind: OrderKind| c.order(kind);
    let kind_of = |s: &str| match s {
        "O_1" => Some(OrderKind::O1),
        "O_8" => Some(OrderKind::O8),
        "O_16" => Some(OrderKind::O16),
        _ => None,
    };
    let inner = |prefix: &str| {
        column
            .strip_prefix(prefix)
            .and_then(|rest| rest.strip_suffix(')'))
    };
    match column {
        "zeta_F(-1)" => return Some(c.zeta_minus1.clone()),
        "h(F)" => return Some(rat_int(c.h_f)),
        "h(K_1)" => return Some(rat_int(c.h_k1)),
        "h(K_2)" => return c.h_k2.map(rat_int),
        "h(K_3)" => return Some(rat_int(c.h_k3)),
        _ => {}
    }
    if let Some(k) = inner("h(").and_then(kind_of) {
        return order(k).map(|r| rat_int(r.h));
    }
    if let Some(k) = inner("Mass(").and_then(kind_of) {
        return order(k).map(|r| r.mass.clone());
    }
    if let Some(k) = inner("Ell(").and_then(kind_of) {
        return order(k).map(|r| r.ell.clone());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_tables_have_expected_shape() {
        let t = GoldenTables::embedded().unwrap();
        let count = |id| t.rows.iter().filter(|r| r.table_id == id).count();
        assert_eq!((count(1), count(2), count(3)), (43, 20, 20));
    }

    #[test]
    fn rejects_bad_rows() {
        let header = "p,h(O_8),Mass(O_8),Ell(O_8)\n";
        assert!(parse_table(2, &format!("{header}7,1,1,0\n"), "t").is_err());
        assert!(parse_table(2, &format!("{header}15,1,1,0\n"), "t").is_err());
        assert!(parse_table(2, &format!("{header}13,2,5/12,\n"), "t").is_err());
        assert!(parse_table(2, &format!("{header}13,2,5/x,1\n"), "t").is_err());
        assert!(parse_table(2, "p,h,Mass,Ell\n13,2,5/12,19/12\n", "t").is_err());
        assert!(parse_table(2, &format!("{header}13,2,5/12,19/12\n"), "t").is_ok());
    }

    #[test]
    fn k2_blank_iff_one_mod_four() {
        let h = TABLE1_HEADER.join(",");
        assert!(parse_table(1, &format!("{h}\n13,1,1/12,11/12,1/6,1,1,,2\n"), "t").is_ok());
        assert!(parse_table(1, &format!("{h}\n13,1,1/12,11/12,1/6,1,1,3,2\n"), "t").is_err());
        assert!(parse_table(1, &format!("{h}\n7,3,1/3,8/3,2/3,1,1,,2\n"), "t").is_err());
    }

    #[test]
    fn computed_cells_for_thirteen() {
        let c = census_core::census(13).unwrap();
        assert_eq!(computed_cell(&c, "h(O_8)"), Some(rat_int(2u64)));
        assert_eq!(
            computed_cell(&c, "Mass(O_16)"),
            Some(ExactRational::from_str("5/6").unwrap())
        );
        assert_eq!(computed_cell(&c, "h(K_2)"), None);
        assert_eq!(computed_cell(&c, "nonsense"), None);
    }
}

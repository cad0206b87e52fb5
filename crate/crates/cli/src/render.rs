//! Text, CSV and JSON renderings of an [`IsogenyCensus`], and the CSV
//! parser used for round-tripping sweep output.

use std::fmt::Write as _;
use std::str::FromStr;

use census_core::arith::ExactRational;
use census_core::quadratic::FundamentalUnit;
use census_core::{IsogenyCensus, OrderKind, OrderReport};
use serde_json::{json, Map, Value};

use crate::error::CliError;

/// Sweep columns. The three `ratio_*` columns are `Ell/Mass` per order and
/// are derived, so the parser ignores them.
pub const CSV_COLUMNS: [&str; 23] = [
    "p",
    "H",
    "h_O1",
    "mass_O1",
    "ell_O1",
    "h_O8",
    "mass_O8",
    "ell_O8",
    "h_O16",
    "mass_O16",
    "ell_O16",
    "h_D",
    "deuring",
    "zeta_minus1",
    "h_F",
    "h_K1",
    "h_K2",
    "h_K3",
    "varpi",
    "eps_norm",
    "ratio_O1",
    "ratio_O8",
    "ratio_O16",
];

const DATA_COLUMNS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// `num/den`, or just `num` when the denominator is 1.
pub fn rational(x: &ExactRational) -> String {
    x.to_string()
}

pub fn rational_json(x: &ExactRational) -> Value {
    json!({ "num": x.numer().to_string(), "den": x.denom().to_string() })
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn order_fields(r: Option<&OrderReport>) -> [String; 3] {
    match r {
        Some(r) => [r.h.to_string(), rational(&r.mass), rational(&r.ell)],
        None => Default::default(),
    }
}

pub fn csv_fields(c: &IsogenyCensus) -> Vec<String> {
    let mut out = vec![c.p.to_string(), c.surface_count.to_string()];
    for kind in OrderKind::ALL {
        out.extend(order_fields(c.order(kind)));
    }
    out.extend([
        c.h_d.to_string(),
        c.deuring.to_string(),
        rational(&c.zeta_minus1),
        c.h_f.to_string(),
        c.h_k1.to_string(),
        opt(c.h_k2),
        c.h_k3.to_string(),
        opt(c.varpi),
        c.eps_norm.to_string(),
    ]);
    for kind in OrderKind::ALL {
        out.push(opt(c.order(kind).map(|r| rational(&r.ell_mass_ratio()))));
    }
    out
}

fn csv_line(fields: &[String]) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
    w.write_record(fields)
        .map_err(|e| CliError::Io(e.to_string()))?;
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

/// Header plus one line per census.
pub fn csv_document(rows: &[IsogenyCensus]) -> Result<String, CliError> {
    let header: Vec<String> = CSV_COLUMNS.iter().map(|s| s.to_string()).collect();
    let mut out = csv_line(&header)?;
    for c in rows {
        out.push_str(&csv_line(&csv_fields(c))?);
    }
    Ok(out)
}

fn parse_err(col: &str, v: &str) -> CliError {
    CliError::Usage(format!("bad value {v:?} in column {col}"))
}

fn field<T: FromStr>(fields: &[&str], i: usize) -> Result<T, CliError> {
    fields[i]
        .parse()
        .map_err(|_| parse_err(CSV_COLUMNS[i], fields[i]))
}

fn opt_field<T: FromStr>(fields: &[&str], i: usize) -> Result<Option<T>, CliError> {
    if fields[i].is_empty() {
        Ok(None)
    } else {
        field(fields, i).map(Some)
    }
}

/// Inverse of [`csv_fields`].
pub fn parse_csv_fields(fields: &[&str]) -> Result<IsogenyCensus, CliError> {
    if fields.len() < DATA_COLUMNS {
        return Err(CliError::Usage(format!(
            "expected at least {DATA_COLUMNS} fields, got {}",
            fields.len()
        )));
    }
    let mut orders = Vec::new();
    for (k, kind) in OrderKind::ALL.into_iter().enumerate() {
        let base = 2 + 3 * k;
        let h: Option<u64> = opt_field(fields, base)?;
        let mass: Option<ExactRational> = opt_field(fields, base + 1)?;
        let ell: Option<ExactRational> = opt_field(fields, base + 2)?;
        match (h, mass, ell) {
            (Some(h), Some(mass), Some(ell)) => orders.push(OrderReport { kind, mass, ell, h }),
            (None, None, None) => {}
            _ => return Err(CliError::Usage(format!("incomplete {kind} columns"))),
        }
    }
    Ok(IsogenyCensus {
        p: field(fields, 0)?,
        surface_count: field(fields, 1)?,
        orders,
        h_d: field(fields, 11)?,
        deuring: field(fields, 12)?,
        zeta_minus1: field(fields, 13)?,
        h_f: field(fields, 14)?,
        h_k1: field(fields, 15)?,
        h_k2: opt_field(fields, 16)?,
        h_k3: field(fields, 17)?,
        varpi: opt_field(fields, 18)?,
        eps_norm: field(fields, 19)?,
    })
}

/// Parses a document produced by [`csv_document`].
pub fn parse_csv_document(text: &str) -> Result<Vec<IsogenyCensus>, CliError> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| CliError::Usage(e.to_string()))?;
        let fields: Vec<&str> = record.iter().collect();
        rows.push(parse_csv_fields(&fields)?);
    }
    Ok(rows)
}

pub fn census_json(c: &IsogenyCensus) -> Value {
    let mut m = Map::new();
    let mut put = |k: &str, v: Value| {
        m.insert(k.to_string(), v);
    };
    put("p", json!(c.p));
    put("H", json!(c.surface_count));
    for kind in OrderKind::ALL {
        let r = c.order(kind);
        let suffix = format!("O{}", kind.index());
        put(
            &format!("h_{suffix}"),
            r.map_or(Value::Null, |r| json!(r.h)),
        );
        put(
            &format!("mass_{suffix}"),
            r.map_or(Value::Null, |r| rational_json(&r.mass)),
        );
        put(
            &format!("ell_{suffix}"),
            r.map_or(Value::Null, |r| rational_json(&r.ell)),
        );
    }
    put("h_D", json!(c.h_d));
    put("deuring", json!(c.deuring));
    put("zeta_minus1", rational_json(&c.zeta_minus1));
    put("h_F", json!(c.h_f));
    put("h_K1", json!(c.h_k1));
    put("h_K2", json!(c.h_k2));
    put("h_K3", json!(c.h_k3));
    put("varpi", json!(c.varpi));
    put("eps_norm", json!(c.eps_norm));
    for kind in OrderKind::ALL {
        let r = c.order(kind);
        put(
            &format!("ratio_O{}", kind.index()),
            r.map_or(Value::Null, |r| rational_json(&r.ell_mass_ratio())),
        );
    }
    put("special_case", json!(c.is_special()));
    Value::Object(m)
}

/// Single-prime JSON report: the sweep object plus the fundamental unit.
pub fn info_json(c: &IsogenyCensus, unit: &FundamentalUnit) -> Value {
    let mut v = census_json(c);
    v["fundamental_unit"] = json!({
        "a": unit.a.to_string(),
        "b": unit.b.to_string(),
        "denom": unit.denom,
    });
    v
}

pub fn json_document(rows: &[IsogenyCensus]) -> String {
    let arr = Value::Array(rows.iter().map(census_json).collect());
    let mut s = serde_json::to_string_pretty(&arr).expect("json values serialize");
    s.push('\n');
    s
}

/// Human-readable report for one prime.
pub fn info_table(c: &IsogenyCensus, unit: &FundamentalUnit) -> String {
    let mut s = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(s, "{k:<14} {v}");
    };
    line("p", c.p.to_string());
    if c.is_special() {
        line(
            "special case",
            "yes (published constants for p = 2, 3, 5)".into(),
        );
    }
    line("H", c.surface_count.to_string());
    for r in &c.orders {
        line(
            &format!("h({})", r.kind),
            format!(
                "{}  (mass {}, ell {}, ell/mass {})",
                r.h,
                rational(&r.mass),
                rational(&r.ell),
                rational(&r.ell_mass_ratio())
            ),
        );
    }
    line("h(D)", c.h_d.to_string());
    line("deuring", c.deuring.to_string());
    line("zeta_F(-1)", rational(&c.zeta_minus1));
    line("h(F)", c.h_f.to_string());
    line("epsilon", unit.to_string());
    line("N(epsilon)", c.eps_norm.to_string());
    let dash = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    line("varpi", dash(c.varpi.map(|v| v.to_string())));
    line("h(K_1)", c.h_k1.to_string());
    line("h(K_2)", dash(c.h_k2.map(|v| v.to_string())));
    line("h(K_3)", c.h_k3.to_string());
    s
}

pub fn info(c: &IsogenyCensus, unit: &FundamentalUnit, format: Format) -> Result<String, CliError> {
    match format {
        Format::Table => Ok(info_table(c, unit)),
        Format::Csv => csv_document(std::slice::from_ref(c)),
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&info_json(c, unit)).expect("json values serialize");
            s.push('\n');
            Ok(s)
        }
    }
}

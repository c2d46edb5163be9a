//! Deterministic CSV emission and strict parsing.
//!
//! Output format: header row mandatory, `\n` newlines, no trailing
//! delimiter, floats printed with the shortest decimal that round-trips.

use gcm_core::info::InfoRecord;
use gcm_core::nonmarkov::{PhaseDiagram, MARKOVIAN_D_TOL};

use crate::{CliError, CliResult};

pub const SERIES_HEADER: &str = "L,I2_AB,I2_AC,I2_ABC,I3,S_A,S_B,S_C,S_AB,S_AC,S_ABC";

/// Shortest round-trip decimal form of `v`.
pub fn fmt_f64(v: f64) -> String {
    format!("{v}")
}

/// Series CSV with the fixed column set.
pub fn series_csv(records: &[InfoRecord]) -> String {
    let mut out = String::from(SERIES_HEADER);
    out.push('\n');
    for r in records {
        let fields = [
            r.l.to_string(),
            fmt_f64(r.i2_ab),
            fmt_f64(r.i2_ac),
            fmt_f64(r.i2_abc),
            fmt_f64(r.i3),
            fmt_f64(r.s_a),
            fmt_f64(r.s_b),
            fmt_f64(r.s_c),
            fmt_f64(r.s_ab),
            fmt_f64(r.s_ac),
            fmt_f64(r.s_abc),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Phase-diagram CSV, row-major with `theta_se` as the outer axis; the
/// angle columns carry radians.
pub fn phase_csv(diagram: &PhaseDiagram) -> String {
    let mut out = String::from("theta_se,theta_ee,D,markovian");
    out.push('\n');
    for (i, &se) in diagram.theta_se.iter().enumerate() {
        for (k, &ee) in diagram.theta_ee.iter().enumerate() {
            let d = diagram.d_at(i, k);
            let markovian = if d <= MARKOVIAN_D_TOL { 1 } else { 0 };
            out.push_str(&format!("{},{},{},{}\n", fmt_f64(se), fmt_f64(ee), fmt_f64(d), markovian));
        }
    }
    out
}

/// A parsed numeric CSV table.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<String>,
    /// Row-major values, `rows[r][c]`.
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn column_index(&self, name: &str) -> CliResult<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| {
                CliError::Config(format!(
                    "column `{name}` not found (have: {})",
                    self.columns.join(", ")
                ))
            })
    }

    pub fn column(&self, idx: usize) -> Vec<f64> {
        self.rows.iter().map(|r| r[idx]).collect()
    }
}

/// Strict parse of the CSVs this tool emits.
pub fn parse_csv(text: &str) -> CliResult<Table> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::Config("empty CSV: missing header row".into()))?;
    let columns: Vec<String> = header.split(',').map(|s| s.to_string()).collect();
    if columns.iter().any(|c| c.is_empty()) {
        return Err(CliError::Config("malformed CSV header".into()));
    }
    let mut rows = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(CliError::Config(format!(
                "line {}: {} fields, header has {}",
                lineno + 2,
                fields.len(),
                columns.len()
            )));
        }
        let row: Vec<f64> = fields
            .iter()
            .map(|f| {
                f.parse::<f64>().map_err(|_| {
                    CliError::Config(format!("line {}: `{f}` is not a number", lineno + 2))
                })
            })
            .collect::<CliResult<_>>()?;
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn series_csv_shape() {
        let rec = InfoRecord {
            l: 1,
            i2_ab: 1.5,
            i2_ac: 0.0,
            i2_abc: 1.5,
            i3: 0.0,
            s_a: 0.75,
            s_b: 0.75,
            s_c: 0.0,
            s_ab: 0.0,
            s_ac: 0.75,
            s_abc: 0.0,
            s_bc: 0.75,
        };
        let csv = series_csv(&[rec]);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), SERIES_HEADER);
        assert_eq!(lines.next().unwrap(), "1,1.5,0,1.5,0,0.75,0.75,0,0,0.75,0");
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains(",\n"));
    }

    #[test]
    fn round_trip_parse() {
        let text = "a,b\n1,2.5\n-3,0.1\n";
        let table = parse_csv(text).unwrap();
        assert_eq!(table.columns, vec!["a", "b"]);
        assert_eq!(table.rows.len(), 2);
        assert_eq!(table.column(table.column_index("b").unwrap()), vec![2.5, 0.1]);
        assert!(table.column_index("c").is_err());
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        assert!(parse_csv("a,b\n1\n").is_err());
        assert!(parse_csv("a,b\n1,x\n").is_err());
        assert!(parse_csv("").is_err());
    }

    #[test]
    fn shortest_round_trip_formatting() {
        assert_eq!(fmt_f64(0.1), "0.1");
        assert_eq!(fmt_f64(1.0), "1");
        let v = 0.659_452_959_168_036_7;
        assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
    }
}

//! The triangle `w(n,k)`: compositions of `n` into 1s and 2s with exactly `k`
//! water cells.
//!
//! A [`WaterTable`] can be filled three independent ways (see [`Method`]):
//! brute-force enumeration, the column recurrences, or coefficient extraction
//! from the bivariate generating function. Outside the triangle
//! (`k > n - 4` for `k >= 1`) every entry is zero.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::compositions::{enumerate, is_increasable, water_cells, FamilyKind};
use crate::genfunc::bivariate_expand;

#[derive(Debug, Error)]
pub enum TableError {
    #[error("unknown table method {0:?}; expected bruteforce, recurrence or series")]
    UnknownMethod(String),
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("entry ({n},{k}) lies outside a table with max_n = {max_n}")]
    OutOfShape { n: usize, k: usize, max_n: usize },
}

/// How a [`WaterTable`] was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    BruteForce,
    Recurrence,
    Series,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::BruteForce, Method::Recurrence, Method::Series];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::BruteForce => "bruteforce",
            Method::Recurrence => "recurrence",
            Method::Series => "series",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = TableError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "bruteforce" => Ok(Method::BruteForce),
            "recurrence" => Ok(Method::Recurrence),
            "series" => Ok(Method::Series),
            other => Err(TableError::UnknownMethod(other.to_string())),
        }
    }
}

/// Number of stored columns in row `n`: `k = 0 ..= n - 4`, at least one.
pub fn row_len(n: usize) -> usize {
    n.saturating_sub(3).max(1)
}

/// Rows `0 ..= max_n` of the triangle, each of length [`row_len`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaterTable {
    max_n: usize,
    rows: Vec<Vec<BigUint>>,
    method: Method,
}

impl WaterTable {
    fn from_rows(rows: Vec<Vec<BigUint>>, method: Method) -> Self {
        debug_assert!(rows.iter().enumerate().all(|(n, r)| r.len() == row_len(n)));
        WaterTable {
            max_n: rows.len() - 1,
            rows,
            method,
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.rows
    }

    pub fn row(&self, n: usize) -> &[BigUint] {
        &self.rows[n]
    }

    /// `w(n,k)`, zero outside the triangle and beyond `max_n`.
    pub fn get(&self, n: usize, k: usize) -> BigUint {
        at(&self.rows, n, k)
    }

    pub fn row_sum(&self, n: usize) -> BigUint {
        self.rows[n].iter().sum()
    }

    /// Column `k` for `n = 0 ..= max_n`.
    pub fn column(&self, k: usize) -> Vec<BigUint> {
        (0..=self.max_n).map(|n| self.get(n, k)).collect()
    }

    /// Entries that differ from `other`, as `(n, k)`, in row-major order.
    pub fn differences(&self, other: &WaterTable) -> Vec<(usize, usize)> {
        let max_n = self.max_n.max(other.max_n);
        let mut out = Vec::new();
        for n in 0..=max_n {
            for k in 0..row_len(n) {
                if self.get(n, k) != other.get(n, k) {
                    out.push((n, k));
                }
            }
        }
        out
    }

    /// Same numbers, ignoring provenance.
    pub fn same_values(&self, other: &WaterTable) -> bool {
        self.max_n == other.max_n && self.rows == other.rows
    }

    /// One line per entry under the header `n,k,w`.
    pub fn to_csv(&self) -> String {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(["n", "k", "w"])
            .expect("in-memory write");
        for (n, row) in self.rows.iter().enumerate() {
            for (k, w) in row.iter().enumerate() {
                writer
                    .write_record([n.to_string(), k.to_string(), w.to_string()])
                    .expect("in-memory write");
            }
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("ascii output")
    }

    pub fn from_csv(text: &str, method: Method) -> Result<Self, TableError> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| TableError::Csv(e.to_string()))?;
        if headers != vec!["n", "k", "w"] {
            return Err(TableError::Csv(format!("unexpected header {headers:?}")));
        }
        let mut entries = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| TableError::Csv(e.to_string()))?;
            let field = |i: usize| record.get(i).unwrap_or_default();
            let n: usize = field(0)
                .parse()
                .map_err(|_| TableError::Csv(format!("bad n in {record:?}")))?;
            let k: usize = field(1)
                .parse()
                .map_err(|_| TableError::Csv(format!("bad k in {record:?}")))?;
            let w: BigUint = field(2)
                .parse()
                .map_err(|_| TableError::Csv(format!("bad w in {record:?}")))?;
            entries.push((n, k, w));
        }
        let max_n = entries
            .iter()
            .map(|e| e.0)
            .max()
            .ok_or_else(|| TableError::Csv("no entries".into()))?;
        let mut rows: Vec<Vec<BigUint>> = (0..=max_n)
            .map(|n| vec![BigUint::zero(); row_len(n)])
            .collect();
        let mut seen = 0usize;
        for (n, k, w) in entries {
            if k >= row_len(n) {
                return Err(TableError::OutOfShape { n, k, max_n });
            }
            rows[n][k] = w;
            seen += 1;
        }
        let expected: usize = (0..=max_n).map(row_len).sum();
        if seen != expected {
            return Err(TableError::Csv(format!(
                "expected {expected} entries, found {seen}"
            )));
        }
        Ok(WaterTable::from_rows(rows, method))
    }

    /// `{ "max_n": .., "rows": [[..], ..], "method": ".." }`; counts are
    /// written as exact JSON integers of any size.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| Value::Array(row.iter().map(big_to_json).collect()))
            .collect();
        json!({
            "max_n": self.max_n,
            "rows": rows,
            "method": self.method.as_str(),
        })
        .to_string()
    }

    pub fn from_json(text: &str) -> Result<Self, TableError> {
        let bad = |msg: &str| TableError::Json(msg.to_string());
        let value: Value =
            serde_json::from_str(text).map_err(|e| TableError::Json(e.to_string()))?;
        let max_n = value["max_n"]
            .as_u64()
            .ok_or_else(|| bad("missing max_n"))? as usize;
        let method: Method = value["method"]
            .as_str()
            .ok_or_else(|| bad("missing method"))?
            .parse()?;
        let rows_json = value["rows"]
            .as_array()
            .ok_or_else(|| bad("missing rows"))?;
        if rows_json.len() != max_n + 1 {
            return Err(bad("row count does not match max_n"));
        }
        let mut rows = Vec::with_capacity(rows_json.len());
        for (n, row) in rows_json.iter().enumerate() {
            let row = row.as_array().ok_or_else(|| bad("row is not an array"))?;
            if row.len() != row_len(n) {
                return Err(bad(&format!(
                    "row {n} has {} entries, expected {}",
                    row.len(),
                    row_len(n)
                )));
            }
            rows.push(
                row.iter()
                    .map(|v| match v {
                        Value::Number(num) => num.to_string().parse::<BigUint>().ok(),
                        _ => None,
                    })
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| bad("entries must be nonnegative integers"))?,
            );
        }
        Ok(WaterTable::from_rows(rows, method))
    }
}

fn big_to_json(x: &BigUint) -> Value {
    Value::Number(
        x.to_string()
            .parse()
            .expect("decimal digits form a JSON number"),
    )
}

fn at(rows: &[Vec<BigUint>], n: usize, k: usize) -> BigUint {
    rows.get(n)
        .and_then(|r| r.get(k))
        .cloned()
        .unwrap_or_default()
}

/// Histogram of water-cell counts over `C_12(n)`, truncated to [`row_len`].
pub fn brute_force_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::zero(); row_len(n)];
    for c in enumerate(FamilyKind::Parts12, n as u32) {
        let k = water_cells(&c) as usize;
        // k <= n - 4 always holds in C_12(n); the slot exists.
        row[k] += 1u32;
    }
    row
}

/// `|{c in C_12(n) : water_cells(c) = k}|`.
pub fn w_bruteforce(n: usize, k: usize) -> BigUint {
    let mut total = BigUint::zero();
    for c in enumerate(FamilyKind::Parts12, n as u32) {
        if water_cells(&c) == k as u64 {
            total += 1u32;
        }
    }
    total
}

/// `w(n,0) = floor(n^2 / 4) + 1`.
pub fn w0_closed(n: u64) -> BigUint {
    let n = BigUint::from(n);
    (&n * &n) / 4u32 + 1u32
}

/// The two recurrences for the zero-water column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum W0Recurrence {
    /// `w(n,0) = w(n-2,0) + n - 1` for `n >= 2`, from `w(0,0) = w(1,0) = 1`.
    StepTwo,
    /// `w(n,0) = 2w(n-1,0) - 2w(n-3,0) + w(n-4,0)` for `n >= 4`, from `1, 1, 2, 3`.
    Linear,
}

/// Column 0 for `n = 0 ..= max_n` by the chosen recurrence.
pub fn w0_recurrence_column(max_n: usize, variant: W0Recurrence) -> Vec<BigUint> {
    let seeds: &[u32] = match variant {
        W0Recurrence::StepTwo => &[1, 1],
        W0Recurrence::Linear => &[1, 1, 2, 3],
    };
    let mut col: Vec<BigUint> = seeds.iter().map(|&s| BigUint::from(s)).collect();
    for n in col.len()..=max_n {
        let next = match variant {
            W0Recurrence::StepTwo => &col[n - 2] + (n - 1),
            W0Recurrence::Linear => (&col[n - 1] * 2u32 + &col[n - 4]) - &col[n - 3] * 2u32,
        };
        col.push(next);
    }
    col.truncate(max_n + 1);
    col
}

pub fn w0_recurrence(n: usize, variant: W0Recurrence) -> BigUint {
    w0_recurrence_column(n, variant).swap_remove(n)
}

/// One recurrence step for each kind of column, reading already-filled rows.
/// Swapping a step is how the verifier's fault injection works.
#[derive(Clone, Copy)]
pub struct RecurrenceSteps {
    pub column0: fn(&[Vec<BigUint>], usize) -> BigUint,
    pub column1: fn(&[Vec<BigUint>], usize) -> BigUint,
    pub column_k: fn(&[Vec<BigUint>], usize, usize) -> BigUint,
}

impl Default for RecurrenceSteps {
    fn default() -> Self {
        RecurrenceSteps {
            column0: step_w0,
            column1: step_w1,
            column_k: step_wk,
        }
    }
}

/// `2w(n-1,0) - 2w(n-3,0) + w(n-4,0)`.
pub fn step_w0(rows: &[Vec<BigUint>], n: usize) -> BigUint {
    (at(rows, n - 1, 0) * 2u32 + at(rows, n - 4, 0)) - at(rows, n - 3, 0) * 2u32
}

/// `w(n-2,1) + w(n-3,0) - 1`.
pub fn step_w1(rows: &[Vec<BigUint>], n: usize) -> BigUint {
    at(rows, n - 2, 1) + at(rows, n - 3, 0) - 1u32
}

/// `w(n-1,k-1) + w(n-2,k)`.
pub fn step_wk(rows: &[Vec<BigUint>], n: usize, k: usize) -> BigUint {
    at(rows, n - 1, k - 1) + at(rows, n - 2, k)
}

/// Rows 0..=5 come from enumeration; everything else from the three
/// recurrences. The apex `w(k+4,k)` needs no seed: `w(k+2,k)` lies outside
/// the staircase, so the `k >= 2` step gives `w(k+3,k-1) = 1`.
pub fn build_recurrence_table_with(max_n: usize, steps: &RecurrenceSteps) -> WaterTable {
    let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        if n <= 5 {
            rows.push(brute_force_row(n));
            continue;
        }
        let mut row = vec![BigUint::zero(); row_len(n)];
        row[0] = (steps.column0)(&rows, n);
        row[1] = (steps.column1)(&rows, n);
        for (k, cell) in row.iter_mut().enumerate().skip(2) {
            *cell = (steps.column_k)(&rows, n, k);
        }
        rows.push(row);
    }
    WaterTable::from_rows(rows, Method::Recurrence)
}

/// `w(n,1)` by the recurrence table.
pub fn w1_recurrence(n: usize) -> BigUint {
    build_recurrence_table_with(n, &RecurrenceSteps::default()).get(n, 1)
}

/// `w(n,k)` by the recurrence table.
pub fn wk_recurrence(n: usize, k: usize) -> BigUint {
    build_recurrence_table_with(n, &RecurrenceSteps::default()).get(n, k)
}

pub fn build_table(max_n: usize, method: Method) -> WaterTable {
    match method {
        Method::BruteForce => WaterTable::from_rows(
            (0..=max_n).map(brute_force_row).collect(),
            Method::BruteForce,
        ),
        Method::Recurrence => build_recurrence_table_with(max_n, &RecurrenceSteps::default()),
        Method::Series => {
            let series = bivariate_expand(max_n);
            let rows = (0..=max_n)
                .map(|n| {
                    (0..row_len(n))
                        .map(|k| {
                            series
                                .coefficient(n, k)
                                .to_biguint()
                                .expect("water-cell counts are nonnegative")
                        })
                        .collect()
                })
                .collect();
            WaterTable::from_rows(rows, Method::Series)
        }
    }
}

/// Parses the method tag and builds the table.
pub fn build_table_named(max_n: usize, method: &str) -> Result<WaterTable, TableError> {
    Ok(build_table(max_n, method.parse()?))
}

/// `d(n) = w(n,0) + w(n-1,1) + w(n-2,2) + ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSums {
    values: Vec<BigUint>,
}

impl DiagonalSums {
    pub fn from_table(table: &WaterTable) -> Self {
        let values = (0..=table.max_n())
            .map(|n| (0..=n / 2).map(|k| table.get(n - k, k)).sum())
            .collect();
        DiagonalSums { values }
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub fn get(&self, n: usize) -> &BigUint {
        &self.values[n]
    }
}

/// Diagonal sums through `max_n` from a brute-force table.
pub fn diagonal_sums(max_n: usize) -> DiagonalSums {
    DiagonalSums::from_table(&build_table(max_n, Method::BruteForce))
}

/// `d(n) = 2^m - 1` for `n = 2m - 1` and `3 * 2^(m-1) - 1` for `n = 2m`; `d(0) = 1`.
pub fn d_closed(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let one = BigUint::one();
    if n.is_odd() {
        let m = n.div_ceil(2);
        (&one << m) - 1u32
    } else {
        let m = n / 2;
        (BigUint::from(3u32) << (m - 1)) - 1u32
    }
}

/// `|W^i(n,0)|`: zero-water members of `C_12(n)` that are `(1^n)` or end in
/// `(2,1)`, counted by enumeration.
pub fn increasable_count(n: usize) -> BigUint {
    let count = enumerate(FamilyKind::Parts12, n as u32)
        .filter(|c| water_cells(c) == 0 && is_increasable(c))
        .count();
    BigUint::from(count)
}

/// `|W^j(n,0)| = w(n,0) - |W^i(n,0)|`, by enumeration.
pub fn non_increasable_count(n: usize) -> BigUint {
    let count = enumerate(FamilyKind::Parts12, n as u32)
        .filter(|c| water_cells(c) == 0 && !is_increasable(c))
        .count();
    BigUint::from(count)
}

/// Small helper for tests and reports.
pub fn to_u64s(values: &[BigUint]) -> Vec<u64> {
    values
        .iter()
        .map(|v| v.to_u64().expect("fits u64"))
        .collect()
}

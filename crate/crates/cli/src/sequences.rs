//! Named integer sequences for export, one term per line or in b-file form.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use watercells::compositions::{count, FamilyKind};
use watercells::genfunc::RiordanArray;
use watercells::watertable::{
    build_table, increasable_count, non_increasable_count, DiagonalSums, Method,
};

use crate::CliError;

pub const NAMES: [&str; 8] = [
    "w-column:K",
    "diagonal",
    "row-sums",
    "riordan-row-sums",
    "riordan-diag-sums",
    "cie",
    "increasable",
    "w0-complement",
];

/// Terms of a sequence together with the index of the first term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    pub offset: usize,
    pub terms: Vec<BigInt>,
}

impl Sequence {
    /// One value per line, or `<index> <value>` lines when `b_file` is set.
    pub fn render(&self, b_file: bool) -> String {
        let mut out = String::new();
        for (i, term) in self.terms.iter().enumerate() {
            if b_file {
                out.push_str(&format!("{} {term}\n", self.offset + i));
            } else {
                out.push_str(&format!("{term}\n"));
            }
        }
        out
    }
}

fn from_unsigned<T: Into<num_bigint::BigUint>>(values: impl IntoIterator<Item = T>) -> Vec<BigInt> {
    values.into_iter().map(|v| BigInt::from(v.into())).collect()
}

/// The first `count` terms of the named sequence. The enumerative sequences
/// (`cie`, `increasable`, `w0-complement`) count members one by one.
pub fn sequence(name: &str, terms: usize) -> Result<Sequence, CliError> {
    let last = terms.saturating_sub(1);
    let table = || build_table(last, Method::Recurrence);
    let (offset, values) = match name {
        "diagonal" => (
            0,
            from_unsigned(DiagonalSums::from_table(&table()).values().to_vec()),
        ),
        "row-sums" => {
            let t = table();
            (0, from_unsigned((0..=last).map(|n| t.row_sum(n))))
        }
        "riordan-row-sums" => (
            0,
            riordan_series(RiordanArray::positive_water().row_sums(), last),
        ),
        "riordan-diag-sums" => (
            0,
            riordan_series(RiordanArray::positive_water().diagonal_sums(), last),
        ),
        "cie" => (
            0,
            from_unsigned((0..terms).map(|n| count(FamilyKind::InternalEven, n as u32))),
        ),
        "increasable" => (1, from_unsigned((1..=terms).map(increasable_count))),
        "w0-complement" => (1, from_unsigned((1..=terms).map(non_increasable_count))),
        other => match other.strip_prefix("w-column:").map(str::parse::<usize>) {
            Some(Ok(k)) => (0, from_unsigned(table().column(k))),
            _ => {
                return Err(CliError::Usage(format!(
                    "unknown sequence {other:?}; expected one of {}",
                    NAMES.join(", ")
                )))
            }
        },
    };
    let mut values = values;
    values.truncate(terms);
    Ok(Sequence {
        offset,
        terms: values,
    })
}

fn riordan_series(gf: watercells::RationalGF, last: usize) -> Vec<BigInt> {
    gf.series(last)
        .expect("Riordan sums have unit constant term")
}

/// Convenience for tests: the terms as `u64`.
pub fn as_u64s(seq: &Sequence) -> Vec<u64> {
    seq.terms
        .iter()
        .map(|t| t.to_u64().expect("fits u64"))
        .collect()
}

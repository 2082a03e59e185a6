//! Text renderings of the table and the bijection demos.

use std::fmt::Write as _;

use watercells::bijections::{
    mapping_table, AppendOrTrim, Bijection, ColoredPartition, ColoredPartitionMap,
    DecreaseLastPart, DiagonalToInternalEven, DoublingToInternalEven, ManyWaterCells, OneWaterCell,
    TaggedComposition,
};
use watercells::compositions::Composition;
use watercells::watertable::{row_len, WaterTable};

use crate::{BijectionName, CliError};

/// The triangle with a header row of `k` values. Cells above the staircase are
/// left blank; cells inside it are printed even when zero.
pub fn table_text(table: &WaterTable) -> String {
    let columns = row_len(table.max_n());
    let cells: Vec<Vec<String>> = table
        .rows()
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .chain((0..columns).map(|k| k.to_string().len()))
        .max()
        .unwrap_or(1);
    let label = table.max_n().to_string().len().max(4);

    let mut out = String::new();
    let _ = write!(out, "{:>label$} |", "n\\k");
    for k in 0..columns {
        let _ = write!(out, " {k:>width$}");
    }
    out.push('\n');
    let _ = writeln!(
        out,
        "{}-+{}",
        "-".repeat(label),
        "-".repeat(columns * (width + 1))
    );
    for (n, row) in cells.iter().enumerate() {
        let mut line = format!("{n:>label$} |");
        for value in row {
            let _ = write!(line, " {value:>width$}");
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// How an element appears in a demo table: the bare composition or partition,
/// with copy membership shown by the set label instead of a tag.
pub trait Plain {
    fn plain(&self) -> String;
}

impl Plain for Composition {
    fn plain(&self) -> String {
        self.to_string()
    }
}

impl Plain for TaggedComposition {
    fn plain(&self) -> String {
        self.composition.to_string()
    }
}

impl Plain for ColoredPartition {
    fn plain(&self) -> String {
        self.to_string()
    }
}

/// One block per map: a `# title` line, then `x [set] <-> y [set]` per pair.
pub fn mapping_block<B>(map: &B) -> Result<String, CliError>
where
    B: Bijection,
    B::Domain: Plain,
    B::Codomain: Plain,
{
    let mut out = format!("# {}\n", map.title());
    for (x, y) in mapping_table(map)? {
        let _ = writeln!(
            out,
            "{} [{}] <-> {} [{}]",
            x.plain(),
            map.domain_label(&x),
            y.plain(),
            map.codomain_label(&y)
        );
    }
    Ok(out)
}

fn need_k(k: Option<usize>, name: &str) -> Result<usize, CliError> {
    k.ok_or_else(|| CliError::Usage(format!("bijection {name} needs --k")))
}

/// Demo table for the named bijection.
pub fn bijection_text(name: BijectionName, n: usize, k: Option<usize>) -> Result<String, CliError> {
    match name {
        BijectionName::Thm1d => {
            let first = mapping_block(&DecreaseLastPart::new(n)?)?;
            let second = mapping_block(&AppendOrTrim::new(n)?)?;
            Ok(format!("{first}\n{second}"))
        }
        BijectionName::Wc1 => mapping_block(&OneWaterCell::new(n)?),
        BijectionName::Wck => mapping_block(&ManyWaterCells::new(n, need_k(k, "wck")?)?),
        BijectionName::ColoredPartition => mapping_block(&ColoredPartitionMap::new(
            n,
            need_k(k, "colored-partition")?,
        )),
        BijectionName::DiagonalCie => mapping_block(&DiagonalToInternalEven::new(n)),
        BijectionName::CiePowerof2 => mapping_block(&DoublingToInternalEven::new(n)?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use watercells::watertable::{build_table, Method};

    #[test]
    fn tiny_table() {
        let text = table_text(&build_table(0, Method::BruteForce));
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[2].split('|').nth(1).unwrap().trim(), "1");
    }

    #[test]
    fn staircase_is_blank_above() {
        let text = table_text(&build_table(6, Method::BruteForce));
        let row4 = text.lines().nth(2 + 4).unwrap();
        assert_eq!(
            row4.split('|').nth(1).unwrap().split_whitespace().count(),
            1
        );
    }

    #[test]
    fn wck_needs_k() {
        assert!(matches!(
            bijection_text(BijectionName::Wck, 9, None),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn smallest_wc1_demo() {
        let text = bijection_text(BijectionName::Wc1, 5, None).unwrap();
        let pairs: Vec<_> = text.lines().skip(1).collect();
        assert_eq!(pairs.len(), 1);
        assert!(
            pairs[0].starts_with("(2,1,2) [W(5,1)] <-> (2) "),
            "{}",
            pairs[0]
        );
    }
}

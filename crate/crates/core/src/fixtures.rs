//! Pinned reference values: the reference `w(n,k)` table for `n <= 14` and
//! integer-sequence prefixes used to cross-check computed columns and sums.

/// `w(n,k)` for `0 <= n <= 14`, rows truncated at the last nonzero entry.
pub const W_TABLE: [&[u64]; 15] = [
    &[1],
    &[1],
    &[2],
    &[3],
    &[5],
    &[7, 1],
    &[10, 2, 1],
    &[13, 5, 2, 1],
    &[17, 8, 6, 2, 1],
    &[21, 14, 10, 7, 2, 1],
    &[26, 20, 20, 12, 8, 2, 1],
    &[31, 30, 30, 27, 14, 9, 2, 1],
    &[37, 40, 50, 42, 35, 16, 10, 2, 1],
    &[43, 55, 70, 77, 56, 44, 18, 11, 2, 1],
    &[50, 70, 105, 112, 112, 72, 54, 20, 12, 2, 1],
];

/// Entry of [`W_TABLE`], zero outside the stored rows.
pub fn w_table(n: usize, k: usize) -> u64 {
    W_TABLE
        .get(n)
        .and_then(|row| row.get(k))
        .copied()
        .unwrap_or(0)
}

/// OEIS identifiers of the columns `k = 0..=5`.
pub const COLUMN_IDS: [&str; 6] = [
    "A033638", "A006918", "A096338", "A177747", "A299337", "A178440",
];

/// Column `k` of [`W_TABLE`] for `n = 0..=14`.
pub fn column_prefix(k: usize) -> Vec<u64> {
    (0..W_TABLE.len()).map(|n| w_table(n, k)).collect()
}

/// Diagonal sums `d(0..=9)`.
pub const DIAGONAL_SUMS: [u64; 10] = [1, 1, 2, 3, 5, 7, 11, 15, 23, 31];

/// Row sums of the positive-water Riordan array (A344004).
pub const RIORDAN_ROW_SUMS: [u64; 9] = [1, 3, 8, 17, 34, 63, 113, 196, 334];

/// Diagonal sums of the positive-water Riordan array.
pub const RIORDAN_DIAGONAL_SUMS: [u64; 9] = [1, 2, 6, 10, 21, 32, 58, 84, 141];

/// A004652, `ceil(n^2 / 4)`, from offset 0. `|W^j(n,0)|` is term `n - 1`.
pub const A004652: [u64; 20] = [
    0, 1, 1, 3, 4, 7, 9, 13, 16, 21, 25, 31, 36, 43, 49, 57, 64, 73, 81, 91,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_shape() {
        for (n, row) in W_TABLE.iter().enumerate() {
            let expected = if n < 5 { 1 } else { n - 3 };
            assert_eq!(row.len(), expected, "row {n}");
        }
        assert_eq!(w_table(14, 10), 1);
        assert_eq!(w_table(4, 1), 0);
    }

    #[test]
    fn a004652_is_ceiling_of_quarter_squares() {
        for (n, &v) in A004652.iter().enumerate() {
            let n = n as u64;
            assert_eq!(v, (n * n).div_ceil(4));
        }
    }
}

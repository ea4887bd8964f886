//! Dellac configurations: `2n` boxes in an `n × 2n` grid, two per column,
//! one per row, with every box `(l, j)` inside the band `l ≤ j ≤ n + l`.

use std::fmt;

use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_dellac`]; rows are tracked in a `u64`.
pub const MAX_ENUM_N: usize = 31;

/// A valid Dellac configuration.
///
/// Boxes are stored column-major as a sorted pair of rows per column, with a
/// derived row → column index. Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DellacConfig {
    n: usize,
    columns: Vec<[usize; 2]>,
    row_owner: Vec<usize>,
}

/// One violated Dellac constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DellacViolation {
    /// Column `col` holds `count != 2` boxes.
    ColumnCount { col: usize, count: usize },
    /// Row `row` holds `count != 1` boxes.
    RowCount { row: usize, count: usize },
    /// Box `(col, row)` breaks `col ≤ row ≤ n + col`.
    OutsideBand { col: usize, row: usize },
}

impl fmt::Display for DellacViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DellacViolation::ColumnCount { col, count } => {
                write!(f, "column {col} contains {count} boxes, expected 2")
            }
            DellacViolation::RowCount { row, count } => {
                write!(f, "row {row} contains {count} boxes, expected 1")
            }
            DellacViolation::OutsideBand { col, row } => {
                write!(f, "box ({col},{row}) lies outside the band {col} <= j <= n+{col}")
            }
        }
    }
}

/// Checks a set of boxes against the Dellac constraints.
///
/// Returns the list of violated constraints (empty means valid). Coordinates
/// outside the `n × 2n` grid, duplicate boxes and `n = 0` are structural
/// errors rather than violations.
pub fn validate_dellac(n: usize, boxes: &[(usize, usize)]) -> Result<Vec<DellacViolation>> {
    if n == 0 {
        return Err(Error::structural("n must be at least 1"));
    }
    let mut seen = vec![false; n * 2 * n];
    let mut col_count = vec![0usize; n + 1];
    let mut row_count = vec![0usize; 2 * n + 1];
    for &(col, row) in boxes {
        if !(1..=n).contains(&col) || !(1..=2 * n).contains(&row) {
            return Err(Error::structural(format!(
                "box ({col},{row}) is outside the {n}x{} grid",
                2 * n
            )));
        }
        let slot = (col - 1) * 2 * n + (row - 1);
        if seen[slot] {
            return Err(Error::structural(format!("box ({col},{row}) listed twice")));
        }
        seen[slot] = true;
        col_count[col] += 1;
        row_count[row] += 1;
    }

    let mut violations = Vec::new();
    for (col, &count) in col_count.iter().enumerate().skip(1) {
        if count != 2 {
            violations.push(DellacViolation::ColumnCount { col, count });
        }
    }
    for (row, &count) in row_count.iter().enumerate().skip(1) {
        if count != 1 {
            violations.push(DellacViolation::RowCount { row, count });
        }
    }
    let mut sorted: Vec<_> = boxes.to_vec();
    sorted.sort_unstable();
    for (col, row) in sorted {
        if row < col || row > n + col {
            violations.push(DellacViolation::OutsideBand { col, row });
        }
    }
    Ok(violations)
}

impl DellacConfig {
    /// Builds a configuration from an unordered box list, rejecting anything
    /// that is not a valid Dellac configuration.
    pub fn new(n: usize, boxes: &[(usize, usize)]) -> Result<Self> {
        let violations = validate_dellac(n, boxes)?;
        if !violations.is_empty() {
            let msg: Vec<String> = violations.iter().map(ToString::to_string).collect();
            return Err(Error::precondition(format!(
                "not a Dellac configuration: {}",
                msg.join("; ")
            )));
        }
        let mut columns = vec![[0usize; 2]; n];
        let mut filled = vec![0usize; n];
        for &(col, row) in boxes {
            columns[col - 1][filled[col - 1]] = row;
            filled[col - 1] += 1;
        }
        for pair in &mut columns {
            pair.sort_unstable();
        }
        Ok(Self::from_sorted_columns(n, columns))
    }

    /// Caller guarantees validity and per-column ordering.
    pub(crate) fn from_sorted_columns(n: usize, columns: Vec<[usize; 2]>) -> Self {
        let mut row_owner = vec![0usize; 2 * n + 1];
        for (i, pair) in columns.iter().enumerate() {
            row_owner[pair[0]] = i + 1;
            row_owner[pair[1]] = i + 1;
        }
        Self {
            n,
            columns,
            row_owner,
        }
    }

    /// Like [`DellacConfig::new`] but takes one (unordered) pair of rows per
    /// column.
    pub fn from_columns(n: usize, columns: &[[usize; 2]]) -> Result<Self> {
        if columns.len() != n {
            return Err(Error::structural(format!(
                "expected {n} columns, got {}",
                columns.len()
            )));
        }
        let boxes: Vec<(usize, usize)> = columns
            .iter()
            .enumerate()
            .flat_map(|(i, pair)| [(i + 1, pair[0]), (i + 1, pair[1])])
            .collect();
        Self::new(n, &boxes)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rows of column `col` (1-based), lower row first.
    pub fn column(&self, col: usize) -> [usize; 2] {
        self.columns[col - 1]
    }

    pub fn columns(&self) -> &[[usize; 2]] {
        &self.columns
    }

    /// Column holding the unique box of row `row`.
    pub fn column_of_row(&self, row: usize) -> usize {
        self.row_owner[row]
    }

    pub fn contains(&self, col: usize, row: usize) -> bool {
        (1..=2 * self.n).contains(&row) && self.row_owner[row] == col
    }

    /// All boxes as `(col, row)`, sorted lexicographically.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(i, pair)| [(i + 1, pair[0]), (i + 1, pair[1])])
            .collect()
    }

    /// Number of disorders: pairs of boxes `(l1, j1)`, `(l2, j2)` with
    /// `l1 < l2` and `j1 > j2`.
    pub fn length(&self) -> usize {
        let boxes = self.boxes();
        let mut count = 0;
        for (i, &(l1, j1)) in boxes.iter().enumerate() {
            for &(l2, j2) in &boxes[i + 1..] {
                if l1 < l2 && j1 > j2 {
                    count += 1;
                }
            }
        }
        count
    }

    /// The column of the box in row `n + 1`.
    pub fn refinement_stat(&self) -> usize {
        self.row_owner[self.n + 1]
    }

    /// The configuration `{(l, 2l-1), (l, 2l)}`, the unique one of length 0.
    pub fn staircase(n: usize) -> Self {
        let columns = (1..=n).map(|l| [2 * l - 1, 2 * l]).collect();
        Self::from_sorted_columns(n, columns)
    }

    /// Plain-text grid, top row first, `#` for a box.
    pub fn to_grid_string(&self) -> String {
        let mut out = String::new();
        for row in (1..=2 * self.n).rev() {
            out.push_str(&format!("{row:>3} |"));
            for col in 1..=self.n {
                out.push(if self.row_owner[row] == col { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for DellacConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .boxes()
            .into_iter()
            .map(|(c, r)| format!("({c},{r})"))
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for DellacConfig {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let boxes: Vec<[usize; 2]> = self.boxes().into_iter().map(|(c, r)| [c, r]).collect();
        let mut st = s.serialize_struct("DellacConfig", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("boxes", &boxes)?;
        st.end()
    }
}

/// Enumerates `DC_n` in lexicographic order of the sorted box lists.
///
/// Backtracks column by column over the still-free rows inside the column's
/// band. The first column always holds row 1, and the branches for its second
/// box are explored in parallel and concatenated in order.
pub fn enumerate_dellac(n: usize) -> Result<Vec<DellacConfig>> {
    if n == 0 {
        return Err(Error::precondition("n must be at least 1"));
    }
    if n > MAX_ENUM_N {
        return Err(Error::range(format!("n = {n} exceeds {MAX_ENUM_N}")));
    }
    let branches: Vec<Vec<DellacConfig>> = (2..=n + 1)
        .into_par_iter()
        .map(|second| {
            let mut out = Vec::new();
            let mut columns = vec![[1, second]];
            let used = bit(1) | bit(second);
            extend_columns(n, used, &mut columns, &mut out);
            out
        })
        .collect();
    Ok(branches.into_iter().flatten().collect())
}

fn bit(row: usize) -> u64 {
    1u64 << row
}

fn extend_columns(n: usize, used: u64, columns: &mut Vec<[usize; 2]>, out: &mut Vec<DellacConfig>) {
    let done = columns.len();
    // Row `done` can only be covered by columns up to `done`.
    if done >= 1 && used & bit(done) == 0 {
        return;
    }
    if done == n {
        out.push(DellacConfig::from_sorted_columns(n, columns.clone()));
        return;
    }
    let col = done + 1;
    let free: Vec<usize> = (col..=n + col).filter(|&r| used & bit(r) == 0).collect();
    for (i, &a) in free.iter().enumerate() {
        for &b in &free[i + 1..] {
            columns.push([a, b]);
            extend_columns(n, used | bit(a) | bit(b), columns, out);
            columns.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_examples() {
        assert!(validate_dellac(2, &[(1, 1), (1, 2), (2, 3), (2, 4)])
            .unwrap()
            .is_empty());
        assert!(validate_dellac(1, &[(1, 1), (1, 2)]).unwrap().is_empty());

        let v = validate_dellac(2, &[(1, 1), (1, 4), (2, 2), (2, 3)]).unwrap();
        assert_eq!(v, vec![DellacViolation::OutsideBand { col: 1, row: 4 }]);
    }

    #[test]
    fn validate_reports_counts() {
        let v = validate_dellac(2, &[(1, 1), (1, 2), (1, 3), (2, 4)]).unwrap();
        assert!(v.contains(&DellacViolation::ColumnCount { col: 1, count: 3 }));
        assert!(v.contains(&DellacViolation::ColumnCount { col: 2, count: 1 }));

        let v = validate_dellac(2, &[(1, 1), (1, 2), (2, 2), (2, 3)]).unwrap();
        assert!(v.contains(&DellacViolation::RowCount { row: 2, count: 2 }));
        assert!(v.contains(&DellacViolation::RowCount { row: 4, count: 0 }));
    }

    #[test]
    fn structural_errors_are_not_violations() {
        assert!(matches!(
            validate_dellac(2, &[(3, 1)]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            validate_dellac(2, &[(1, 5)]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            validate_dellac(2, &[(1, 0)]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            validate_dellac(2, &[(1, 1), (1, 1)]),
            Err(Error::Structural(_))
        ));
        assert!(matches!(validate_dellac(0, &[]), Err(Error::Structural(_))));
    }

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| enumerate_dellac(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 38, 295, 3098]);
        assert!(enumerate_dellac(0).is_err());
    }

    #[test]
    fn length_examples() {
        let d = DellacConfig::new(2, &[(1, 1), (1, 2), (2, 3), (2, 4)]).unwrap();
        assert_eq!(d.length(), 0);
        let d = DellacConfig::new(2, &[(1, 1), (1, 3), (2, 2), (2, 4)]).unwrap();
        assert_eq!(d.length(), 1);
        let d = DellacConfig::new(3, &[(1, 1), (1, 4), (2, 2), (2, 5), (3, 3), (3, 6)]).unwrap();
        assert_eq!(d.length(), 3);
    }

    #[test]
    fn refinement_examples() {
        let d = DellacConfig::new(3, &[(1, 1), (1, 2), (2, 3), (2, 4), (3, 5), (3, 6)]).unwrap();
        assert_eq!(d.refinement_stat(), 2);
        let d = DellacConfig::new(2, &[(1, 1), (1, 3), (2, 2), (2, 4)]).unwrap();
        assert_eq!(d.refinement_stat(), 1);
        let d = DellacConfig::new(1, &[(1, 1), (1, 2)]).unwrap();
        assert_eq!(d.refinement_stat(), 1);
    }

    #[test]
    fn staircase_is_unique_minimum() {
        for n in 1..=6 {
            let all = enumerate_dellac(n).unwrap();
            let zeros: Vec<_> = all.iter().filter(|d| d.length() == 0).collect();
            assert_eq!(zeros, vec![&DellacConfig::staircase(n)]);
            let bound = n * (2 * n - 1);
            assert!(all.iter().all(|d| d.length() <= bound));
        }
    }

    #[test]
    fn serializes_sorted_pairs() {
        let d = DellacConfig::new(2, &[(2, 4), (1, 3), (2, 2), (1, 1)]).unwrap();
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"n":2,"boxes":[[1,1],[1,3],[2,2],[2,4]]}"#);
    }

    #[test]
    fn grid_dump() {
        let d = DellacConfig::new(2, &[(1, 1), (1, 3), (2, 2), (2, 4)]).unwrap();
        assert_eq!(d.to_grid_string(), "  4 |.#\n  3 |#.\n  2 |.#\n  1 |#.\n");
    }
}

//! The convex polyomino value type.
//!
//! A polyomino is stored as one inclusive column interval per row, listed
//! bottom to top and translated so that the leftmost occupied column is 0.
//! Only convex polyominoes can be represented: construction rejects interval
//! lists whose columns are not contiguous or whose consecutive rows do not
//! overlap.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyominoError {
    #[error("a polyomino needs at least one row")]
    Empty,
    #[error("row {row} is empty (left endpoint exceeds right endpoint)")]
    EmptyRow { row: usize },
    #[error("rows {row} and {} do not overlap", row + 1)]
    Disconnected { row: usize },
    #[error("column {column} is not a contiguous run of rows")]
    NotConvex { column: u32 },
    #[error("malformed encoding: {0}")]
    Malformed(String),
}

/// A unit cell, addressed by integer column and row indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub col: u32,
    pub row: u32,
}

impl Cell {
    pub fn new(col: u32, row: u32) -> Self {
        Cell { col, row }
    }
}

/// A normalized convex polyomino.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polyomino {
    rows: Vec<(u32, u32)>,
    width: u32,
}

impl Polyomino {
    /// Builds a polyomino from row intervals listed bottom to top.
    ///
    /// The intervals may be given in any horizontal translation; the result
    /// is shifted so that the minimum left endpoint is 0.
    pub fn from_rows(intervals: &[(i64, i64)]) -> Result<Self, PolyominoError> {
        if intervals.is_empty() {
            return Err(PolyominoError::Empty);
        }
        for (row, &(l, r)) in intervals.iter().enumerate() {
            if l > r {
                return Err(PolyominoError::EmptyRow { row });
            }
        }
        for (row, pair) in intervals.windows(2).enumerate() {
            let ((l0, r0), (l1, r1)) = (pair[0], pair[1]);
            if l1 > r0 || l0 > r1 {
                return Err(PolyominoError::Disconnected { row });
            }
        }
        let min_left = intervals.iter().map(|&(l, _)| l).min().unwrap_or(0);
        let max_right = intervals.iter().map(|&(_, r)| r).max().unwrap_or(0);
        let span = max_right - min_left;
        if span >= i64::from(u32::MAX) {
            return Err(PolyominoError::Malformed("polyomino is too wide".into()));
        }
        let rows: Vec<(u32, u32)> = intervals
            .iter()
            .map(|&(l, r)| ((l - min_left) as u32, (r - min_left) as u32))
            .collect();
        let width = span as u32 + 1;
        check_columns(&rows, width)?;
        Ok(Polyomino { rows, width })
    }

    /// Wraps rows that are already known to be normalized and convex.
    pub(crate) fn from_normalized(rows: Vec<(u32, u32)>) -> Self {
        let width = rows.iter().map(|&(_, r)| r).max().unwrap_or(0) + 1;
        debug_assert!(rows.iter().any(|&(l, _)| l == 0));
        debug_assert!(check_columns(&rows, width).is_ok());
        Polyomino { rows, width }
    }

    /// The one-cell polyomino.
    pub fn unit() -> Self {
        Polyomino { rows: vec![(0, 0)], width: 1 }
    }

    pub fn rows(&self) -> &[(u32, u32)] {
        &self.rows
    }

    pub fn row(&self, index: usize) -> (u32, u32) {
        self.rows[index]
    }

    pub fn height(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    /// Semi-perimeter: number of rows plus number of columns.
    pub fn size(&self) -> usize {
        self.rows.len() + self.width as usize
    }

    pub fn area(&self) -> usize {
        self.rows.iter().map(|&(l, r)| (r - l + 1) as usize).sum()
    }

    pub fn contains(&self, cell: Cell) -> bool {
        self.rows
            .get(cell.row as usize)
            .is_some_and(|&(l, r)| l <= cell.col && cell.col <= r)
    }

    /// All cells, row by row from the bottom, left to right within a row.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(row, &(l, r))| (l..=r).map(move |col| Cell::new(col, row as u32)))
    }

    /// Lowest and highest occupied row of a column, or `None` outside the
    /// bounding box.
    pub fn column_extent(&self, col: u32) -> Option<(usize, usize)> {
        let mut found = None;
        for (i, &(l, r)) in self.rows.iter().enumerate() {
            if l <= col && col <= r {
                found = match found {
                    None => Some((i, i)),
                    Some((lo, _)) => Some((lo, i)),
                };
            }
        }
        found
    }

    /// Number of cells in a column.
    pub fn column_len(&self, col: u32) -> usize {
        self.column_extent(col).map_or(0, |(lo, hi)| hi - lo + 1)
    }

    /// Horizontal reflection.
    pub fn mirror(&self) -> Self {
        let last = self.width - 1;
        Polyomino {
            rows: self.rows.iter().map(|&(l, r)| (last - r, last - l)).collect(),
            width: self.width,
        }
    }

    /// Canonical text form: rows bottom to top as `L-R`, joined by `;`.
    pub fn encode(&self) -> String {
        self.to_string()
    }

    pub fn decode(s: &str) -> Result<Self, PolyominoError> {
        s.parse()
    }

    /// ASCII picture, top row first, `#` for cells and `.` for empty squares.
    pub fn render_ascii(&self) -> String {
        let mut out = String::with_capacity(self.rows.len() * (self.width as usize + 1));
        for (i, &(l, r)) in self.rows.iter().enumerate().rev() {
            for col in 0..self.width {
                out.push(if l <= col && col <= r { '#' } else { '.' });
            }
            if i > 0 {
                out.push('\n');
            }
        }
        out
    }

    /// Row `i` as a bitmask of columns. Only valid when `width <= 128`.
    pub(crate) fn row_mask(&self, i: usize) -> u128 {
        let (l, r) = self.rows[i];
        interval_mask(l, r)
    }
}

pub(crate) fn interval_mask(l: u32, r: u32) -> u128 {
    let upper = if r >= 127 { u128::MAX } else { (1u128 << (r + 1)) - 1 };
    upper & !((1u128 << l) - 1)
}

fn check_columns(rows: &[(u32, u32)], width: u32) -> Result<(), PolyominoError> {
    for column in 0..width {
        let mut state = 0u8; // 0: not yet seen, 1: inside the run, 2: run finished
        for &(l, r) in rows {
            let inside = l <= column && column <= r;
            state = match (state, inside) {
                (0, true) => 1,
                (1, false) => 2,
                (2, true) => return Err(PolyominoError::NotConvex { column }),
                (s, _) => s,
            };
        }
    }
    Ok(())
}

impl fmt::Display for Polyomino {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(l, r)) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{l}-{r}")?;
        }
        Ok(())
    }
}

impl FromStr for Polyomino {
    type Err = PolyominoError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PolyominoError::Empty);
        }
        let mut rows = Vec::new();
        for part in s.split(';') {
            let (l, r) = part
                .split_once('-')
                .ok_or_else(|| PolyominoError::Malformed(format!("row `{part}` has no `-`")))?;
            let parse = |x: &str| {
                if x.is_empty() || !x.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(PolyominoError::Malformed(format!("bad column `{x}` in `{part}`")));
                }
                x.parse::<i64>()
                    .map_err(|e| PolyominoError::Malformed(format!("bad column `{x}`: {e}")))
            };
            rows.push((parse(l)?, parse(r)?));
        }
        Polyomino::from_rows(&rows)
    }
}

impl Ord for Polyomino {
    /// Lexicographic order of the canonical encodings.
    fn cmp(&self, other: &Self) -> Ordering {
        self.encode().cmp(&other.encode())
    }
}

impl PartialOrd for Polyomino {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_cell() {
        let p = Polyomino::from_rows(&[(0, 0)]).unwrap();
        assert_eq!(p.size(), 2);
        assert_eq!(p.encode(), "0-0");
        assert_eq!(p, Polyomino::unit());
        assert_eq!(p.mirror(), p);
    }

    #[test]
    fn shifted_pair_is_valid_and_normalized() {
        let p = Polyomino::from_rows(&[(1, 2), (0, 1)]).unwrap();
        assert_eq!(p.rows(), &[(1, 2), (0, 1)]);
        assert_eq!(p.size(), 5);
        assert_eq!(p.encode(), "1-2;0-1");
        assert_eq!(p.mirror().rows(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn translation_is_removed() {
        let p = Polyomino::from_rows(&[(3, 5), (4, 4)]).unwrap();
        assert_eq!(p.rows(), &[(0, 2), (1, 1)]);
        let q = Polyomino::from_rows(&[(-2, 0)]).unwrap();
        assert_eq!(q.rows(), &[(0, 2)]);
    }

    #[test]
    fn rectangle_size() {
        let p = Polyomino::from_rows(&[(0, 2), (0, 2)]).unwrap();
        assert_eq!(p.size(), 5);
        assert_eq!(p.area(), 6);
    }

    #[test]
    fn rejects_invalid_rows() {
        assert_eq!(
            Polyomino::from_rows(&[(0, 0), (2, 2)]),
            Err(PolyominoError::Disconnected { row: 0 })
        );
        assert_eq!(
            Polyomino::from_rows(&[(1, 0)]),
            Err(PolyominoError::EmptyRow { row: 0 })
        );
        assert_eq!(Polyomino::from_rows(&[]), Err(PolyominoError::Empty));
        // column 0 occupied in rows 0 and 2 but not row 1
        assert_eq!(
            Polyomino::from_rows(&[(0, 1), (1, 1), (0, 1)]),
            Err(PolyominoError::NotConvex { column: 0 })
        );
    }

    #[test]
    fn decode_examples() {
        let p = Polyomino::decode("0-1").unwrap();
        assert_eq!(p.height(), 1);
        assert_eq!(p.width(), 2);
        assert!(matches!(Polyomino::decode(""), Err(PolyominoError::Empty)));
        assert!(matches!(Polyomino::decode("0-"), Err(PolyominoError::Malformed(_))));
        assert!(matches!(Polyomino::decode("a-1"), Err(PolyominoError::Malformed(_))));
        assert!(matches!(Polyomino::decode("0-1;;0-1"), Err(PolyominoError::Malformed(_))));
        assert!(matches!(Polyomino::decode("0-0;2-2"), Err(PolyominoError::Disconnected { .. })));
        assert!(matches!(Polyomino::decode("-1-0"), Err(PolyominoError::Malformed(_))));
    }

    #[test]
    fn ascii_rendering() {
        let p = Polyomino::decode("1-2;0-1").unwrap();
        assert_eq!(p.render_ascii(), "##.\n.##");
    }

    #[test]
    fn column_accessors() {
        let p = Polyomino::decode("1-2;0-1;1-1").unwrap();
        assert_eq!(p.column_extent(0), Some((1, 1)));
        assert_eq!(p.column_extent(1), Some((0, 2)));
        assert_eq!(p.column_extent(2), Some((0, 0)));
        assert_eq!(p.column_extent(3), None);
        assert_eq!(p.column_len(1), 3);
        assert!(p.contains(Cell::new(2, 0)));
        assert!(!p.contains(Cell::new(0, 0)));
        assert_eq!(p.cells().count(), p.area());
    }

    #[test]
    fn masks() {
        assert_eq!(interval_mask(0, 0), 1);
        assert_eq!(interval_mask(1, 3), 0b1110);
        assert_eq!(interval_mask(0, 127), u128::MAX);
        assert_eq!(interval_mask(127, 127), 1u128 << 127);
    }

    #[test]
    fn order_follows_encoding() {
        let a = Polyomino::decode("0-10").unwrap();
        let b = Polyomino::decode("0-9").unwrap();
        assert!(a < b, "string order puts \"0-10\" before \"0-9\"");
    }
}

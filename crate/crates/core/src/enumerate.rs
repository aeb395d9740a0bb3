//! Exhaustive generation of the convex polyominoes of a given size.
//!
//! Polyominoes are produced block by block: a block fixes the number of rows
//! `h` and the number of columns `n - h`. Within a block the rows are chosen
//! bottom to top by depth-first search. Left endpoints must form a valley
//! (non-increasing, then non-decreasing) and right endpoints a mountain, with
//! consecutive rows overlapping. Candidates at each depth are tried in the
//! order of their encoded text, so the stream comes out sorted by canonical
//! encoding inside each block.
//!
//! A block splits further into partitions by the choice of its first row.
//! Partitions are independent, which is what the parallel folds use.

use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::polyomino::Polyomino;

/// One independent slice of the search space: fixed row count and first row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub rows: usize,
    pub cols: u32,
    pub first_row: (u32, u32),
}

#[derive(Debug, Clone, Copy)]
struct Frame {
    row: (u32, u32),
    min_left: u32,
    max_right: u32,
    left_rising: bool,
    right_falling: bool,
}

/// Candidate intervals for a block, in encoding order.
struct Candidates {
    /// For rows followed by `;` in the encoding.
    inner: Vec<(u32, u32)>,
    /// For the topmost row, which ends the string.
    last: Vec<(u32, u32)>,
}

impl Candidates {
    fn new(cols: u32) -> Self {
        let mut all = Vec::new();
        for l in 0..cols {
            for r in l..cols {
                all.push((l, r));
            }
        }
        let mut inner = all.clone();
        inner.sort_by_cached_key(|&(l, r)| format!("{l}-{r};"));
        let mut last = all;
        last.sort_by_cached_key(|&(l, r)| format!("{l}-{r}"));
        Candidates { inner, last }
    }

    fn at_depth(&self, depth: usize, rows: usize) -> &[(u32, u32)] {
        if depth + 1 == rows {
            &self.last
        } else {
            &self.inner
        }
    }
}

/// Streams the convex polyominoes of one block, optionally restricted to a
/// fixed first row.
struct BlockIter {
    rows: usize,
    cols: u32,
    first_row: Option<(u32, u32)>,
    candidates: Arc<Candidates>,
    frames: Vec<Frame>,
    cursors: Vec<usize>,
    exhausted: bool,
}

impl BlockIter {
    fn new(rows: usize, cols: u32, first_row: Option<(u32, u32)>, candidates: Arc<Candidates>) -> Self {
        BlockIter {
            rows,
            cols,
            first_row,
            candidates,
            frames: Vec::with_capacity(rows),
            cursors: vec![0; rows],
            exhausted: rows == 0 || cols == 0,
        }
    }

    fn accept(&self, depth: usize, row: (u32, u32)) -> Option<Frame> {
        let full = self.cols - 1;
        let (l, r) = row;
        let frame = match self.frames.last() {
            None => Frame {
                row,
                min_left: l,
                max_right: r,
                left_rising: false,
                right_falling: false,
            },
            Some(prev) => {
                let (pl, pr) = prev.row;
                if l > pr || pl > r {
                    return None;
                }
                if prev.left_rising && l < pl {
                    return None;
                }
                if prev.right_falling && r > pr {
                    return None;
                }
                Frame {
                    row,
                    min_left: prev.min_left.min(l),
                    max_right: prev.max_right.max(r),
                    left_rising: prev.left_rising || l > pl,
                    right_falling: prev.right_falling || r < pr,
                }
            }
        };
        // once the left side rises it can no longer reach column 0, and
        // symmetrically for the right side
        if frame.left_rising && frame.min_left > 0 {
            return None;
        }
        if frame.right_falling && frame.max_right < full {
            return None;
        }
        if depth + 1 == self.rows && (frame.min_left != 0 || frame.max_right != full) {
            return None;
        }
        Some(frame)
    }
}

impl Iterator for BlockIter {
    type Item = Polyomino;

    fn next(&mut self) -> Option<Polyomino> {
        if self.exhausted {
            return None;
        }
        loop {
            let depth = self.frames.len();
            if depth == self.rows {
                let rows: Vec<(i64, i64)> =
                    self.frames.iter().map(|f| (i64::from(f.row.0), i64::from(f.row.1))).collect();
                self.frames.pop();
                match Polyomino::from_rows(&rows) {
                    Ok(p) => return Some(p),
                    Err(e) => {
                        debug_assert!(false, "generator produced a non-convex shape: {e}");
                        continue;
                    }
                }
            }
            let candidates = Arc::clone(&self.candidates);
            let list: &[(u32, u32)] = match (depth, self.first_row.as_ref()) {
                (0, Some(first)) => std::slice::from_ref(first),
                _ => candidates.at_depth(depth, self.rows),
            };
            let mut pushed = false;
            while self.cursors[depth] < list.len() {
                let row = list[self.cursors[depth]];
                self.cursors[depth] += 1;
                if let Some(frame) = self.accept(depth, row) {
                    self.frames.push(frame);
                    if depth + 1 < self.rows {
                        self.cursors[depth + 1] = 0;
                    }
                    pushed = true;
                    break;
                }
            }
            if !pushed {
                if depth == 0 {
                    self.exhausted = true;
                    return None;
                }
                self.frames.pop();
            }
        }
    }
}

/// Stream of every convex polyomino of a given size, each exactly once.
pub struct ConvexPolyominoes {
    size: usize,
    next_rows: usize,
    current: Option<BlockIter>,
}

impl Iterator for ConvexPolyominoes {
    type Item = Polyomino;

    fn next(&mut self) -> Option<Polyomino> {
        loop {
            if let Some(block) = self.current.as_mut() {
                if let Some(p) = block.next() {
                    return Some(p);
                }
            }
            if self.next_rows >= self.size {
                self.current = None;
                return None;
            }
            let rows = self.next_rows;
            let cols = (self.size - rows) as u32;
            self.current = Some(BlockIter::new(rows, cols, None, Arc::new(Candidates::new(cols))));
            self.next_rows += 1;
        }
    }
}

/// All convex polyominoes of semi-perimeter `size`.
///
/// Blocks are ordered by row count; within a block the order is that of the
/// canonical encodings. Sizes below 2 yield nothing.
pub fn all_convex(size: usize) -> ConvexPolyominoes {
    ConvexPolyominoes { size, next_rows: 1, current: None }
}

/// The partitions of the size-`size` search space, in stream order.
pub fn partitions(size: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    for rows in 1..size {
        let cols = (size - rows) as u32;
        let candidates = Candidates::new(cols);
        for &first_row in candidates.at_depth(0, rows) {
            out.push(Partition { rows, cols, first_row });
        }
    }
    out
}

impl Partition {
    pub fn iter(&self) -> impl Iterator<Item = Polyomino> {
        BlockIter::new(self.rows, self.cols, Some(self.first_row), Arc::new(Candidates::new(self.cols)))
    }
}

/// Folds every convex polyomino of a size in parallel.
///
/// Each partition is folded sequentially from `init()`, then the partial
/// results are merged left to right in partition order, so the outcome does
/// not depend on the number of worker threads as long as `merge` is
/// associative.
pub fn par_fold<T, I, F, M>(size: usize, init: I, fold: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(T, Polyomino) -> T + Sync + Send,
    M: Fn(T, T) -> T,
{
    let parts: Vec<T> = partitions(size)
        .into_par_iter()
        .map(|part| part.iter().fold(init(), &fold))
        .collect();
    parts.into_iter().fold(init(), merge)
}

/// Number of convex polyominoes of semi-perimeter `size`.
pub fn count_convex(size: usize) -> BigUint {
    BigUint::from(par_fold(size, || 0u64, |acc, _| acc + 1, |a, b| a + b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn small_sizes() {
        let two: Vec<_> = all_convex(2).map(|p| p.encode()).collect();
        assert_eq!(two, vec!["0-0"]);
        assert_eq!(all_convex(3).count(), 2);
        assert_eq!(all_convex(4).count(), 7);
        assert_eq!(all_convex(5).count(), 28);
        assert_eq!(all_convex(1).count(), 0);
        assert_eq!(all_convex(0).count(), 0);
    }

    #[test]
    fn count_matches_stream() {
        for n in 2..=9 {
            assert_eq!(count_convex(n), BigUint::from(all_convex(n).count()));
        }
    }

    #[test]
    fn every_output_has_requested_size_and_is_unique() {
        for n in 2..=10 {
            let mut seen = HashSet::new();
            for p in all_convex(n) {
                assert_eq!(p.size(), n);
                assert!(seen.insert(p.encode()), "duplicate {p} at size {n}");
            }
        }
    }

    #[test]
    fn sorted_within_blocks() {
        // size 12 has blocks of width 11, so two-digit columns appear
        for n in [6, 12] {
            let mut prev: Option<Polyomino> = None;
            for b in all_convex(n) {
                if let Some(a) = prev {
                    if a.height() == b.height() {
                        assert!(a.encode() < b.encode(), "{a} !< {b}");
                    } else {
                        assert!(a.height() < b.height());
                    }
                }
                prev = Some(b);
            }
        }
    }

    #[test]
    fn partitions_concatenate_to_stream() {
        let n = 8;
        let joined: Vec<String> =
            partitions(n).iter().flat_map(|p| p.iter()).map(|p| p.encode()).collect();
        let direct: Vec<String> = all_convex(n).map(|p| p.encode()).collect();
        assert_eq!(joined, direct);
    }
}

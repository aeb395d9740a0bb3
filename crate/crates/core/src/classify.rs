//! Convexity degrees, class predicates and the per-size census.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::enumerate::par_fold;
use crate::polyomino::{Cell, Polyomino};

/// NE- and NW-degree of convexity of a polyomino.
///
/// `ne` is the largest, over ordered cell pairs joined by an internal path of
/// North and East steps, of the fewest direction changes such a path needs.
/// `nw` is the same with North and West steps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreePair {
    pub ne: u32,
    pub nw: u32,
}

impl DegreePair {
    pub fn new(ne: u32, nw: u32) -> Self {
        DegreePair { ne, nw }
    }

    /// Global degree of convexity.
    pub fn global(&self) -> u32 {
        self.ne.max(self.nw)
    }

    pub fn swapped(&self) -> Self {
        DegreePair { ne: self.nw, nw: self.ne }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Horizontal {
    East,
    West,
}

/// Closure of `seed` under horizontal steps inside the row interval `row`.
#[inline]
fn sweep_row(row: u128, seed: u128, dir: Horizontal) -> u128 {
    let seed = seed & row;
    if seed == 0 {
        return 0;
    }
    match dir {
        Horizontal::East => {
            let lowest = seed & seed.wrapping_neg();
            row & !(lowest - 1)
        }
        Horizontal::West => {
            let top = 127 - seed.leading_zeros();
            let upto = if top == 127 { u128::MAX } else { (1u128 << (top + 1)) - 1 };
            row & upto
        }
    }
}

/// Largest number of turns needed from `source` to any cell reachable from it.
fn turns_from(masks: &[u128], source: Cell, dir: Horizontal, north: &mut [u128], side: &mut [u128], reach: &mut [u128]) -> u32 {
    let h = masks.len();
    let start = source.row as usize;
    north.iter_mut().for_each(|m| *m = 0);
    side.iter_mut().for_each(|m| *m = 0);
    let bit = 1u128 << source.col;
    // zero turns: straight up, or straight along the row
    let mut carry = 0u128;
    for i in start..h {
        let seed = if i == start { bit } else { 0 };
        carry = (carry | seed) & masks[i];
        north[i] = carry;
    }
    side[start] = sweep_row(masks[start], bit, dir);
    for i in start..h {
        reach[i] = north[i] | side[i];
    }
    let mut turns = 0;
    loop {
        // one more turn: north-closure and row-closure of everything reached
        let mut carry = 0u128;
        let mut changed = false;
        for i in start..h {
            carry = (carry | reach[i]) & masks[i];
            north[i] = carry;
            side[i] = sweep_row(masks[i], reach[i], dir);
        }
        for i in start..h {
            let next = north[i] | side[i];
            if next != reach[i] {
                changed = true;
            }
            reach[i] = next;
        }
        if !changed {
            return turns;
        }
        turns += 1;
    }
}

fn degree_masks(masks: &[u128], p: &Polyomino, dir: Horizontal) -> u32 {
    let h = masks.len();
    let mut north = vec![0u128; h];
    let mut side = vec![0u128; h];
    let mut reach = vec![0u128; h];
    let mut best = 0;
    for cell in p.cells() {
        best = best.max(turns_from(masks, cell, dir, &mut north, &mut side, &mut reach));
    }
    best
}

/// Convexity degrees of `p`.
pub fn degree_pair(p: &Polyomino) -> DegreePair {
    if p.width() > 128 {
        return degree_pair_bfs(p);
    }
    let masks: Vec<u128> = (0..p.height()).map(|i| p.row_mask(i)).collect();
    DegreePair {
        ne: degree_masks(&masks, p, Horizontal::East),
        nw: degree_masks(&masks, p, Horizontal::West),
    }
}

/// Convexity degrees by 0-1 breadth-first search over (cell, heading) states.
///
/// This is the reference route; [`degree_pair`] uses row bitmasks instead and
/// falls back to this one for polyominoes wider than 128 columns.
pub fn degree_pair_bfs(p: &Polyomino) -> DegreePair {
    DegreePair {
        ne: degree_bfs(p, 1),
        nw: degree_bfs(p, -1),
    }
}

fn degree_bfs(p: &Polyomino, dx: i64) -> u32 {
    let width = p.width() as usize;
    let height = p.height();
    let index = |c: Cell| c.row as usize * width + c.col as usize;
    let mut best = 0;
    // state = cell index * 2 + heading (0 vertical, 1 horizontal)
    let mut dist = vec![u32::MAX; width * height * 2];
    let mut queue = VecDeque::new();
    for source in p.cells() {
        dist.iter_mut().for_each(|d| *d = u32::MAX);
        for heading in 0..2 {
            dist[index(source) * 2 + heading] = 0;
            queue.push_back((source, heading));
        }
        while let Some((cell, heading)) = queue.pop_front() {
            let d = dist[index(cell) * 2 + heading];
            let up = Cell::new(cell.col, cell.row + 1);
            let col = cell.col as i64 + dx;
            let side = (col >= 0).then(|| Cell::new(col as u32, cell.row));
            for (next_heading, next) in [(0, Some(up)), (1, side)] {
                let Some(next) = next else { continue };
                if !p.contains(next) {
                    continue;
                }
                let cost = d + u32::from(next_heading != heading);
                let slot = &mut dist[index(next) * 2 + next_heading];
                if cost < *slot {
                    *slot = cost;
                    if cost == d {
                        queue.push_front((next, next_heading));
                    } else {
                        queue.push_back((next, next_heading));
                    }
                }
            }
        }
        for cell in p.cells() {
            let i = index(cell) * 2;
            let d = dist[i].min(dist[i + 1]);
            if d != u32::MAX {
                best = best.max(d);
            }
        }
    }
    best
}

/// Some row touches both the left and the right side of the bounding box.
pub fn is_centered(p: &Polyomino) -> bool {
    let full = p.width() - 1;
    p.rows().iter().any(|&(l, r)| l == 0 && r == full)
}

/// Decomposes into a supporting rectangle with a stack on each side.
///
/// For a column range `[a, b]`, the rows containing it form an interval, and
/// taking the whole interval as the rectangle's row range is always the
/// weakest requirement on the rest of the shape. What remains is that every
/// other row lies within `[a, b]`.
pub fn is_four_stack(p: &Polyomino) -> bool {
    let width = p.width();
    let rows = p.rows();
    for a in 0..width {
        for b in a..width {
            let mut any_inside = false;
            let ok = rows.iter().all(|&(l, r)| {
                if l <= a && b <= r {
                    any_inside = true;
                    true
                } else {
                    a <= l && r <= b
                }
            });
            if ok && any_inside {
                return true;
            }
        }
    }
    false
}

/// No pair of rows, one above the other, with the upper one strictly shifted
/// to the north-west of the lower one.
pub fn is_ascending(p: &Polyomino) -> bool {
    let rows = p.rows();
    for (i, &(l1, r1)) in rows.iter().enumerate() {
        for &(l2, r2) in &rows[i + 1..] {
            if l2 < l1 && r2 < r1 {
                return false;
            }
        }
    }
    true
}

/// Mirror image of an ascending polyomino.
pub fn is_descending(p: &Polyomino) -> bool {
    let rows = p.rows();
    for (i, &(l1, r1)) in rows.iter().enumerate() {
        for &(l2, r2) in &rows[i + 1..] {
            if l2 > l1 && r2 > r1 {
                return false;
            }
        }
    }
    true
}

/// The topmost cell of the last column lies in the top row.
pub fn is_rectangular(p: &Polyomino) -> bool {
    p.column_extent(p.width() - 1).is_some_and(|(_, hi)| hi + 1 == p.height())
}

/// Every cell is reachable from the bottom-left corner by North/East steps.
pub fn is_directed_convex(p: &Polyomino) -> bool {
    let origin = Cell::new(0, 0);
    if !p.contains(origin) {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![origin];
    seen.insert(origin);
    while let Some(c) = stack.pop() {
        for next in [Cell::new(c.col + 1, c.row), Cell::new(c.col, c.row + 1)] {
            if p.contains(next) && seen.insert(next) {
                stack.push(next);
            }
        }
    }
    seen.len() == p.area()
}

/// Per-size counts of every class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub size: usize,
    pub total_convex: BigUint,
    pub by_degree_pair: BTreeMap<(u32, u32), BigUint>,
    pub l_convex: BigUint,
    pub z_convex: BigUint,
    pub centered: BigUint,
    pub four_stack: BigUint,
    pub ascending: BigUint,
    pub descending: BigUint,
    pub ascending_and_descending: BigUint,
    /// `ne == 2` and `nw <= 1`.
    pub c21: BigUint,
    /// `nw == 2` and `ne <= 1`.
    pub c12: BigUint,
    pub c22: BigUint,
    pub directed_convex: BigUint,
}

impl CensusRow {
    pub fn degree_count(&self, ne: u32, nw: u32) -> BigUint {
        self.by_degree_pair.get(&(ne, nw)).cloned().unwrap_or_default()
    }

    /// Violated internal consistency conditions, as human-readable strings.
    pub fn invariant_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let sum: BigUint = self.by_degree_pair.values().sum();
        if sum != self.total_convex {
            out.push(format!("degree histogram sums to {sum}, total is {}", self.total_convex));
        }
        let bucket = |pred: &dyn Fn(u32, u32) -> bool| -> BigUint {
            self.by_degree_pair
                .iter()
                .filter(|(&(ne, nw), _)| pred(ne, nw))
                .map(|(_, v)| v.clone())
                .sum()
        };
        let checks = [
            ("c22", &self.c22, bucket(&|ne, nw| ne == 2 && nw == 2)),
            ("c21", &self.c21, bucket(&|ne, nw| ne == 2 && nw <= 1)),
            ("c12", &self.c12, bucket(&|ne, nw| nw == 2 && ne <= 1)),
            ("l_convex", &self.l_convex, bucket(&|ne, nw| ne.max(nw) <= 1)),
            ("z_convex", &self.z_convex, bucket(&|ne, nw| ne.max(nw) <= 2)),
        ];
        for (name, stored, expected) in checks {
            if *stored != expected {
                out.push(format!("{name} is {stored}, histogram gives {expected}"));
            }
        }
        out
    }
}

#[derive(Default)]
struct Tally {
    total: u64,
    by_pair: BTreeMap<(u32, u32), u64>,
    l_convex: u64,
    z_convex: u64,
    centered: u64,
    four_stack: u64,
    ascending: u64,
    descending: u64,
    both: u64,
    c21: u64,
    c12: u64,
    c22: u64,
    directed: u64,
}

impl Tally {
    fn add(mut self, p: &Polyomino) -> Self {
        let d = degree_pair(p);
        let asc = is_ascending(p);
        let desc = is_descending(p);
        self.total += 1;
        *self.by_pair.entry((d.ne, d.nw)).or_default() += 1;
        self.l_convex += u64::from(d.global() <= 1);
        self.z_convex += u64::from(d.global() <= 2);
        self.centered += u64::from(is_centered(p));
        self.four_stack += u64::from(is_four_stack(p));
        self.ascending += u64::from(asc);
        self.descending += u64::from(desc);
        self.both += u64::from(asc && desc);
        self.c21 += u64::from(d.ne == 2 && d.nw <= 1);
        self.c12 += u64::from(d.nw == 2 && d.ne <= 1);
        self.c22 += u64::from(d.ne == 2 && d.nw == 2);
        self.directed += u64::from(is_directed_convex(p));
        self
    }

    fn merge(mut self, other: Tally) -> Self {
        self.total += other.total;
        for (k, v) in other.by_pair {
            *self.by_pair.entry(k).or_default() += v;
        }
        self.l_convex += other.l_convex;
        self.z_convex += other.z_convex;
        self.centered += other.centered;
        self.four_stack += other.four_stack;
        self.ascending += other.ascending;
        self.descending += other.descending;
        self.both += other.both;
        self.c21 += other.c21;
        self.c12 += other.c12;
        self.c22 += other.c22;
        self.directed += other.directed;
        self
    }

    fn into_row(self, size: usize) -> CensusRow {
        let big = BigUint::from;
        CensusRow {
            size,
            total_convex: big(self.total),
            by_degree_pair: self.by_pair.into_iter().map(|(k, v)| (k, big(v))).collect(),
            l_convex: big(self.l_convex),
            z_convex: big(self.z_convex),
            centered: big(self.centered),
            four_stack: big(self.four_stack),
            ascending: big(self.ascending),
            descending: big(self.descending),
            ascending_and_descending: big(self.both),
            c21: big(self.c21),
            c12: big(self.c12),
            c22: big(self.c22),
            directed_convex: big(self.directed),
        }
    }
}

/// Classifies every convex polyomino of a size.
pub fn census(size: usize) -> CensusRow {
    par_fold(size, Tally::default, |t, p| t.add(&p), Tally::merge).into_row(size)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Polyomino {
        Polyomino::decode(s).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(degree_pair(&Polyomino::unit()), DegreePair::new(0, 0));
        assert_eq!(degree_pair(&poly("0-1;0-1")), DegreePair::new(1, 1));
        assert_eq!(degree_pair(&poly("1-2;0-1")), DegreePair::new(0, 2));
        assert_eq!(degree_pair(&poly("0-1;1-2")), DegreePair::new(2, 0));
        assert_eq!(degree_pair(&poly("0-4")), DegreePair::new(0, 0));
    }

    #[test]
    fn bfs_agrees_on_examples() {
        for s in ["0-0", "0-1;0-1", "1-2;0-1", "0-0;0-2;2-2", "2-3;1-3;0-2;0-1"] {
            let p = poly(s);
            assert_eq!(degree_pair(&p), degree_pair_bfs(&p), "{s}");
        }
    }

    #[test]
    fn wide_polyomino_uses_fallback() {
        let p = Polyomino::from_rows(&[(0, 140), (139, 200)]).unwrap();
        // east along the bottom row, north, east again
        assert_eq!(degree_pair(&p), DegreePair::new(2, 1));
    }

    #[test]
    fn predicates_on_examples() {
        let unit = Polyomino::unit();
        let nw = poly("1-2;0-1");
        let ne = poly("0-1;1-2");
        assert!(is_centered(&unit));
        assert!(!is_centered(&nw));
        assert!(is_centered(&poly("0-2;0-2")));

        assert!(is_ascending(&unit));
        assert!(!is_ascending(&nw));
        assert!(is_ascending(&ne));
        assert!(is_descending(&unit));
        assert!(is_descending(&nw));
        assert!(!is_descending(&ne));

        assert!(is_directed_convex(&unit));
        assert!(!is_directed_convex(&nw));
        assert!(is_directed_convex(&ne));

        assert!(is_rectangular(&ne));
        assert!(!is_rectangular(&poly("0-1;0-0")));

        assert!(is_four_stack(&poly("0-3;0-3;0-3")));
        assert!(is_four_stack(&unit));
        // a Z-shaped staircase has no supporting rectangle
        assert!(!is_four_stack(&poly("0-1;1-2;2-3")));
    }

    #[test]
    fn census_small() {
        let row = census(5);
        assert_eq!(row.total_convex, BigUint::from(28u32));
        assert_eq!(row.c21, BigUint::from(2u32));
        assert_eq!(row.c12, BigUint::from(2u32));
        assert_eq!(row.c22, BigUint::from(0u32));
        assert_eq!(row.l_convex, BigUint::from(24u32));
        assert_eq!(row.ascending, BigUint::from(26u32));
        assert!(row.invariant_violations().is_empty());
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::label::{Family, TreeLabel};
use super::GentreeError;
use crate::classify::is_ascending;
use crate::polyomino::Polyomino;

/// The growth operations of the tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GrowthOp {
    LeftCell,
    RightCell,
    Row,
    Shift,
    Nc,
    NcStar,
}

impl GrowthOp {
    pub fn name(self) -> &'static str {
        match self {
            GrowthOp::LeftCell => "left-cell",
            GrowthOp::RightCell => "right-cell",
            GrowthOp::Row => "row",
            GrowthOp::Shift => "shift",
            GrowthOp::Nc => "nc",
            GrowthOp::NcStar => "nc*",
        }
    }
}

impl fmt::Display for GrowthOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Shape facts shared by labelling, growth and parent lookup.
struct Anatomy {
    width: u32,
    height: usize,
    /// Full-width rows, bottom to top; empty when not centered.
    base: Vec<usize>,
    single_first_column: bool,
    last_column: (usize, usize),
}

impl Anatomy {
    fn of(p: &Polyomino) -> Self {
        let width = p.width();
        let full = width - 1;
        let base = p
            .rows()
            .iter()
            .enumerate()
            .filter(|(_, &(l, r))| l == 0 && r == full)
            .map(|(i, _)| i)
            .collect();
        let first = p.column_extent(0).expect("column 0 is occupied");
        Anatomy {
            width,
            height: p.height(),
            base,
            single_first_column: first.0 == first.1,
            last_column: p.column_extent(full).expect("last column is occupied"),
        }
    }

    fn centered(&self) -> bool {
        !self.base.is_empty()
    }

    fn top(&self) -> usize {
        *self.base.last().expect("centered")
    }

    fn rect(&self) -> bool {
        self.last_column.1 == self.height - 1
    }
}

fn label_from(p: &Polyomino, a: &Anatomy) -> TreeLabel {
    let rect = a.rect();
    if !a.centered() {
        let (lo, hi) = a.last_column;
        return TreeLabel::raw(Family::NC, 1, 0, (hi - lo + 1) as u32, rect);
    }
    let b = a.base.len() as u32;
    let top = a.top();
    let flipped = top == a.height - 1;
    let w = if flipped { a.width } else { p.row(top + 1).0 };
    let r = (a.last_column.1 - top) as u32;
    let family = if b > 1 {
        if flipped {
            Family::C0
        } else if w == 0 {
            Family::C1
        } else {
            Family::C
        }
    } else if a.single_first_column {
        if flipped {
            Family::L0
        } else {
            Family::L
        }
    } else if w == 0 {
        Family::R
    } else if flipped {
        Family::S0
    } else {
        Family::S
    };
    TreeLabel::raw(family, b, w, r, rect)
}

fn check_ascending(p: &Polyomino) -> Result<(), GentreeError> {
    if is_ascending(p) {
        Ok(())
    } else {
        Err(GentreeError::NotAscending(p.encode()))
    }
}

/// Tree label of an ascending polyomino.
pub fn label_of(p: &Polyomino) -> Result<TreeLabel, GentreeError> {
    check_ascending(p)?;
    Ok(label_from(p, &Anatomy::of(p)))
}

/// Extends rows `from..from + len` to reach the new column `width`.
fn attach_column(p: &Polyomino, from: usize, len: usize) -> Polyomino {
    let width = p.width();
    let mut rows = p.rows().to_vec();
    for row in &mut rows[from..from + len] {
        row.1 = width;
    }
    Polyomino::from_normalized(rows)
}

fn insert_row(p: &Polyomino, at: usize, row: (u32, u32)) -> Polyomino {
    let mut rows = p.rows().to_vec();
    rows.insert(at, row);
    Polyomino::from_normalized(rows)
}

/// Every child of `p` one size up, tagged with the operation producing it.
///
/// `p` must be ascending; the result is then ascending too.
pub fn children(p: &Polyomino) -> Vec<(GrowthOp, Polyomino)> {
    let a = Anatomy::of(p);
    let width = a.width;
    let mut out = Vec::new();
    if a.centered() {
        let label = label_from(p, &a);
        let top = a.top();
        for &i in &a.base {
            let mut rows: Vec<(u32, u32)> = p.rows().iter().map(|&(l, r)| (l + 1, r + 1)).collect();
            rows[i] = (0, width);
            out.push((GrowthOp::LeftCell, Polyomino::from_normalized(rows)));
        }
        if !a.single_first_column {
            for &i in &a.base {
                let mut rows = p.rows().to_vec();
                rows[i] = (0, width);
                out.push((GrowthOp::RightCell, Polyomino::from_normalized(rows)));
            }
        }
        out.push((GrowthOp::Row, insert_row(p, top + 1, (0, width - 1))));
        if label.w > 0 && label.b == 1 && !a.single_first_column {
            for start in 1..=label.w.min(width - 1) {
                out.push((GrowthOp::Shift, insert_row(p, top + 1, (start, width - 1))));
            }
        }
        let r = label.r as usize;
        for len in 1..=r {
            for from in top + 1..=top + r - len + 1 {
                out.push((GrowthOp::Nc, attach_column(p, from, len)));
            }
        }
    } else {
        let (lo, hi) = a.last_column;
        let r = hi - lo + 1;
        for len in 1..=r {
            for from in lo..=hi + 1 - len {
                out.push((GrowthOp::NcStar, attach_column(p, from, len)));
            }
        }
        if a.rect() {
            out.push((GrowthOp::NcStar, insert_row(p, a.height, (width - 1, width - 1))));
        }
    }
    out
}

/// The unique node that produces `p`, with the operation used.
///
/// Returns `Ok(None)` for the size-2 root.
pub fn parent(p: &Polyomino) -> Result<Option<(GrowthOp, Polyomino)>, GentreeError> {
    check_ascending(p)?;
    if p.size() == 2 {
        return Ok(None);
    }
    let a = Anatomy::of(p);
    let width = a.width;
    let rows = p.rows();
    let drop_last_column = || {
        let kept: Vec<(u32, u32)> = rows
            .iter()
            .filter(|&&(l, _)| l != width - 1)
            .map(|&(l, r)| (l, r.min(width - 2)))
            .collect();
        Polyomino::from_normalized(kept)
    };
    let found = if a.centered() {
        let top = a.top();
        if a.base.len() > 1 {
            let mut kept = rows.to_vec();
            kept.remove(top);
            (GrowthOp::Row, Polyomino::from_normalized(kept))
        } else if a.single_first_column {
            let kept = rows
                .iter()
                .filter(|&&row| row != (0, 0))
                .map(|&(l, r)| (l.max(1) - 1, r - 1))
                .collect();
            (GrowthOp::LeftCell, Polyomino::from_normalized(kept))
        } else if a.last_column.0 == a.last_column.1 {
            (GrowthOp::RightCell, drop_last_column())
        } else {
            let mut kept = rows.to_vec();
            kept.remove(top + 1);
            (GrowthOp::Shift, Polyomino::from_normalized(kept))
        }
    } else {
        let h = a.height;
        let lone_top = rows[h - 1] == (width - 1, width - 1) && h >= 2 && rows[h - 2].1 == width - 1;
        if lone_top {
            (GrowthOp::NcStar, Polyomino::from_normalized(rows[..h - 1].to_vec()))
        } else {
            let q = drop_last_column();
            let op = if Anatomy::of(&q).centered() { GrowthOp::Nc } else { GrowthOp::NcStar };
            (op, q)
        }
    };
    Ok(Some(found))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> Polyomino {
        Polyomino::decode(s).unwrap()
    }

    #[test]
    fn labels_of_small_shapes() {
        assert_eq!(label_of(&Polyomino::unit()).unwrap(), TreeLabel::root());
        assert_eq!(label_of(&poly("0-1")).unwrap(), TreeLabel::raw(Family::L0, 1, 2, 0, true));
        assert_eq!(label_of(&poly("0-0;0-0")).unwrap(), TreeLabel::raw(Family::C0, 2, 1, 0, true));
        assert!(matches!(label_of(&poly("1-2;0-1")), Err(GentreeError::NotAscending(_))));
    }

    #[test]
    fn root_children() {
        let kids = children(&Polyomino::unit());
        let got: Vec<(GrowthOp, String)> = kids.into_iter().map(|(op, q)| (op, q.encode())).collect();
        assert_eq!(
            got,
            vec![(GrowthOp::LeftCell, "0-1".to_string()), (GrowthOp::Row, "0-0;0-0".to_string())]
        );
    }

    #[test]
    fn parents_of_dominoes() {
        let unit = Polyomino::unit();
        assert_eq!(parent(&poly("0-1")).unwrap(), Some((GrowthOp::LeftCell, unit.clone())));
        assert_eq!(parent(&poly("0-0;0-0")).unwrap(), Some((GrowthOp::Row, unit.clone())));
        assert_eq!(parent(&unit).unwrap(), None);
    }

    #[test]
    fn nc_child_count() {
        // centered, r = 2: two cells of the last column above the base
        let p = poly("0-1;1-1;1-1");
        let label = label_of(&p).unwrap();
        assert_eq!(label.r, 2);
        let nc = children(&p).iter().filter(|(op, _)| *op == GrowthOp::Nc).count();
        assert_eq!(nc, 3);
    }
}
